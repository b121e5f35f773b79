#ifndef SUBRAD_ACCEPTANCE_HPP
#define SUBRAD_ACCEPTANCE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace subrad::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string details;
    double seconds = 0.0;
};

std::vector<int> all_ids();

CriterionResult run_criterion(int id);

// Runs the listed criteria (all when empty), printing one PASS/FAIL line
// each; returns true when every criterion passed.
bool run(const std::vector<int>& ids, std::ostream& out);

} // namespace subrad::acceptance

#endif // SUBRAD_ACCEPTANCE_HPP
