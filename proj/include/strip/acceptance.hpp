#pragma once

#include <cstdint>
#include <iosfwd>

#include <json.hpp>

namespace strip {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    nlohmann::json detail = nlohmann::json::object();  // deterministic for a fixed seed
    double seconds = 0;     // wall time, kept out of the JSON report
};

// Runs the twelve acceptance criteria. When `progress` is set, one line per criterion is
// written there as soon as it finishes.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed, std::ostream* progress = nullptr);

nlohmann::json acceptance_report(const std::vector<CriterionResult>& results, std::uint64_t seed);

}  // namespace strip
