#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nonext/axioms.hpp"

namespace nonext::cli {

/// Everything a command needs, resolved from flags, environment, and
/// per-command defaults.
struct RunConfig {
    std::string command;
    std::string input_path;        // "-" reads stdin
    std::string phi_name = "tsallis";
    std::vector<double> phi_poly;  // ascending P coefficients; overrides phi_name
    double q = 2.0;
    bool has_q_range = false;
    double q_lo = 0.0;
    double q_hi = 0.0;
    double q_step = 0.0;
    double tol = kIdentityTol;
    std::uint64_t seed = kDefaultSeed;
    std::string format = "json";  // json | csv
    std::string suite = "all";
    std::uint64_t denominator = 10000;  // reconstruct only
};

/// Parses args (program name excluded), runs the command, writes the
/// report to `out` and diagnostics to `err`. Returns the exit status:
/// 0 success with all checks passed, 1 at least one check failed,
/// 2 unusable input or configuration.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nonext::cli
