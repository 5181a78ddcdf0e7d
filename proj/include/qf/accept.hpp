#pragma once

#include <string>
#include <vector>

namespace qf {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double ms = 0.0;
};

// The ten go/no-go checks.  Each runner throws nothing: failures are reported
// through pass = false with a diagnostic detail.
CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_all_criteria();

}  // namespace qf
