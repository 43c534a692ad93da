#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "willmore/profile.hpp"

namespace willmore {

/// Settings shared by all subcommands. Precedence: flags, then the --config
/// file, then WILLMORE_* environment variables, then these defaults.
struct RunConfig {
    double tol = 1e-12;          // relative quadrature tolerance
    std::string grid;            // lambda grid: "a:b:step", "a,b,c" or empty
    std::uint64_t seed = 1;      // corpus generation
    std::string out;             // output directory; empty prints to stdout where possible
    std::string format;          // csv, json, or empty for the command's default

    /// Throws ParameterError for tol <= 0 or an unknown format.
    void validate() const;
};

/// "a:b:step" (inclusive, step > 0), "a,b,c", or empty for an empty grid.
std::vector<double> parse_grid(const std::string& spec);

/// Write to path.tmp, then rename over path. Creates parent directories.
void write_atomic(const std::string& path, const std::string& content);

/// Curves shipped in the data directory: sphere, catenary, j_model,
/// bb_model, ab_model, triple_bubble.
ProfileCurve builtin_curve(const std::string& name);
std::vector<std::string> builtin_curve_names();

/// Directory of the bundled curves: $WILLMORE_DATA, else the source tree.
std::string data_dir();

/// Exit codes: 0 success, 1 a check failed, 2 invalid input or usage.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace willmore
