#pragma once
/**
 * @file suites.hpp
 * @brief Verification suites and the run configuration that drives them.
 */

#include <string>
#include <vector>

#include "tlcat/concrete_rep.hpp"
#include "tlcat/report.hpp"

namespace tlcat {

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::string algebra;              // empty: each suite uses its default
    std::vector<std::string> suites;  // may contain "all"
    int K = 3;
    double tol = 1e-9;
    unsigned seed = 1;
    long budget = kDefaultBudget;
    std::string output;
    int workers = 1;
};

/// qarith, diagrams, tl, jw, rho, decomp, bounds, rd, spectral
const std::vector<std::string>& suite_names();
/// expand "all", drop duplicates, keep the canonical order; throws ConfigError on unknown names
std::vector<std::string> expand_suites(const std::vector<std::string>& names);
/// "2,2" for bounds, "1,1,1,1,1" otherwise
std::string default_algebra(const std::string& suite);

/// throws ConfigError for bad values and ResourceError when the budget cannot hold B (x) B
void validate(const RunConfig& cfg);

std::vector<CheckRecord> run_suite(const std::string& name, const RunConfig& cfg);
/// all requested suites, cfg.workers at a time; records keep suite order
VerificationReport run(const RunConfig& cfg);

}  // namespace tlcat
