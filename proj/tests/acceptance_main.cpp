#include "qf/accept.hpp"

#include <cstdio>

int main() {
    bool all = true;
    for (const qf::CriterionResult& r : qf::run_all_criteria()) {
        all = all && r.pass;
        std::printf("%s  criterion %2d: %s (%.0f ms)%s%s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.ms, r.detail.empty() ? "" : " -- ", r.detail.c_str());
    }
    std::printf("%s\n", all ? "acceptance: all 10 criteria pass" : "acceptance: FAILURES present");
    return all ? 0 : 1;
}
