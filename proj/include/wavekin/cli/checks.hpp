#pragma once

#include <string>
#include <vector>

namespace wavekin {

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<CheckResult> parts;
    double seconds = 0.0;

    bool passed() const;
    /// One line: PASS/FAIL, id, title and the parts' measured values.
    std::string summary() const;
};

/// Acceptance criteria 1-10 at their pinned settings.
CriterionResult criterion_symbol_oracle();        // 1
CriterionResult criterion_symbol_asymptotics();   // 2
CriterionResult criterion_operator_equivalence(); // 3
CriterionResult criterion_homogeneity();          // 4
CriterionResult criterion_semigroup();            // 5
CriterionResult criterion_duhamel();              // 6
CriterionResult criterion_norm_suite();           // 7
CriterionResult criterion_smoothing_sweep();      // 8
CriterionResult criterion_scaling();              // 9
CriterionResult criterion_appendix();             // 10

CriterionResult run_criterion(int id);

/// Criteria run by `verify`: 1-7 and 10.
std::vector<int> verify_criteria();

}  // namespace wavekin
