#ifndef SEXTIC_CLI_HPP
#define SEXTIC_CLI_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sextic::cli {

inline constexpr const char* kToolName = "sextic";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kCsvSchema = "v1";
inline constexpr const char* kDigitsEnv = "SEXTIC_DIGITS";

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kInvalidArguments = 2,
  kQuadratureFailed = 3,
  kPrecisionExhausted = 4,
};

enum class Format { csv, json };

/// Resolved settings for one invocation. Parameters stay decimal strings
/// until they are parsed at working precision.
struct RunConfig {
  std::string command;
  std::string t1 = "0";
  std::string t2 = "0";
  unsigned target_digits = 50;
  std::optional<unsigned> guard_digits;
  Format format = Format::csv;
  std::optional<std::string> output_path;

  std::size_t n = 20;                 // recurrence, verify, sweep
  std::size_t max_order = 20;         // moments
  std::vector<std::size_t> n_list;    // asympt
  std::string check = "all";          // verify
  std::optional<std::string> tol;     // verify
  std::string quantity = "beta";      // asympt
  std::string t1_range;               // sweep, "start:stop:count"
  std::string t2_range;               // sweep
  std::string scalar = "beta";        // sweep

  /// Echo for the report envelope; every value rendered as a string.
  std::map<std::string, std::string> echo() const;
};

/// One command's output before serialization.
struct Report {
  RunConfig config;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  /// Verification summary; empty for table commands.
  std::optional<bool> all_pass;
  std::string summary_note;
};

std::string to_csv(const Report& report);
/// One top-level JSON object: tool, version, command, config, timestamp,
/// columns, rows (objects keyed by column), and summary when present.
std::string to_json(const Report& report, const std::string& timestamp);

/// SOURCE_DATE_EPOCH when set (reproducible output), otherwise the current
/// UTC time, formatted as ISO-8601.
std::string report_timestamp();

/// Executes the command described by cfg and returns the unserialized report.
/// Library errors propagate as exceptions.
Report execute(const RunConfig& cfg);

/// Full CLI entry point: parses argv-style arguments (without the program
/// name), runs, writes output, and maps failures onto ExitCode values.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Reads `key = value` lines; '#' starts a comment. Keys mirror long flags.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

}  // namespace sextic::cli

#endif  // SEXTIC_CLI_HPP
