#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eigensum::accept {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs one acceptance criterion (1..10). `scale` in (0, 1] shrinks the
/// instance counts and sample sizes for the quick selftest; 1.0 is the
/// full suite with the pinned tolerances.
CriterionResult run_criterion(int id, double scale, int workers);

std::vector<CriterionResult> run_all(double scale, int workers,
                                     std::ostream* log = nullptr);

/// Test hook: forces the given criterion to evaluate with a zeroed
/// tolerance so a failure path can be exercised deliberately. Pass 0 to
/// clear.
void set_forced_failure(int criterion_id);

int criterion_count();

}  // namespace eigensum::accept
