#ifndef ECFUSE_SELFTEST_HPP
#define ECFUSE_SELFTEST_HPP

#include <string>
#include <vector>

/* The acceptance checks behind the `selftest` CLI subcommand: every claim
 * the library makes about exact operation counts, model formulas, fixture
 * replays and pairing behavior, runnable against the committed fixtures. */

namespace ecfuse::selftest {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

std::vector<CriterionResult> run_all(const std::string& fixtures_dir);

}  // namespace ecfuse::selftest

#endif
