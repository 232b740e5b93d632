#ifndef QSERIES_CLI_HPP
#define QSERIES_CLI_HPP

#include "qseries/identities.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qseries {

inline constexpr const char* tool_version = "0.1.0";
inline constexpr const char* report_schema_version = "1";

enum class Command { List, Verify, Sweep, Report };

struct RunConfig {
    Command command = Command::List;
    std::optional<std::string> identity_id;
    ParamMap params;
    std::optional<long> n;
    std::optional<std::pair<long, long>> n_range;
    std::optional<std::string> mode; // exact or approx; unset picks the identity's natural mode
    long precision_bits = default_precision;
    std::optional<double> eps;       // unset picks the per-mode default
    std::uint64_t seed = 0;
    long trials = 10;
    std::optional<Gauss> sigma;
    std::optional<Gauss> f;
    std::string output_path;         // empty writes to stdout
    std::string format = "json";
    std::string input_path;          // report only
};

// Thrown by parse_config for --help; text is the rendered help.
struct HelpRequested {
    std::string text;
};

// "k=v,k=v" with exact rational or Gaussian literals.
ParamMap parse_params(const std::string& text);

// "a..b" with a <= b.
std::pair<long, long> parse_n_range(const std::string& text);

// Throws Error(ParseError) for malformed arguments and HelpRequested for
// --help.  args excludes the program name.
RunConfig parse_config(const std::vector<std::string>& args);

// Re-renders a stored JSON report as RFC-4180 CSV, one row per entry.
std::string render_csv(const std::string& json_text);

// Exit codes: 0 every report passes, 1 some report fails, 2 configuration
// or domain error, 3 numerical non-convergence.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qseries

#endif
