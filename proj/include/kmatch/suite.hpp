// The reference verification suite: one entry per acceptance criterion,
// each building its instances, running the Morse/homology pipelines and
// comparing against the predicted descriptors at fixed tolerances.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kmatch/complex.hpp"
#include "kmatch/json_io.hpp"

namespace kmatch {

struct SuiteOptions {
    std::uint64_t budget = kDefaultBudget;
    std::uint64_t seed = 20240817;
    std::vector<int> only;  // criterion numbers to run; empty means all
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double seconds = 0.0;
    OrderedJson details;
};

std::vector<CriterionResult> run_verification_suite(const SuiteOptions& options = {});

OrderedJson suite_report(const std::vector<CriterionResult>& results,
                         const SuiteOptions& options);

}  // namespace kmatch
