#ifndef TRISHLAB_SUITES_HPP
#define TRISHLAB_SUITES_HPP

#include <string>
#include <vector>

namespace trishlab {

struct CriterionResult {
    std::string id;
    std::string name;
    bool passed = false;
    std::string detail;
};

std::vector<std::string> suite_names();

/// Runs a named verification suite ("oracles", "theorem6", "heavyball",
/// "rates", "lyapunov", "oscillation", or "all"). Member trajectories are
/// integrated in parallel up to `threads` workers (<=1 for serial).
std::vector<CriterionResult> run_suite(const std::string& suite, int threads = 1);

}  // namespace trishlab

#endif
