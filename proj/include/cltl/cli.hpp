// Front-end logic of the `cltl` command, kept out of main() for testing.

#ifndef CLTL_CLI_HPP
#define CLTL_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace cltl {

enum class Mode { Sup, Inf, Value };
enum class Format { Text, Json };

struct RunConfig {
  std::optional<std::string> formula;       // inline text
  std::optional<std::string> formula_file;
  std::optional<std::string> model_path;
  Mode mode = Mode::Sup;
  std::optional<std::string> word;          // value mode
  std::optional<std::uint64_t> cutoff;
  bool witness = false;
  std::optional<std::string> dot_path;
  bool oracle_check = false;
  bool trace = false;
  bool maximize = false;
  Format format = Format::Text;
};

struct ReportTraceEntry {
  std::uint64_t n = 0;
  std::optional<std::string> candidate;
  bool nonempty = false;
  std::uint64_t automaton_states = 0;
  std::uint64_t product_states = 0;

  bool operator==(const ReportTraceEntry&) const = default;
};

struct Report {
  std::string mode;                  // sup | inf | value
  std::string formula;               // printed back
  std::string fragment;              // LTL | LTL<= | LTL>
  std::string outcome;               // finite | unbounded | infinite-inf | above-cap
  std::optional<std::uint64_t> bound;
  std::optional<std::string> witness;
  std::optional<std::string> last_candidate;
  std::uint64_t cutoff = 0;
  std::uint64_t iterations = 0;
  std::uint64_t extra_checks = 0;
  std::optional<std::vector<ReportTraceEntry>> trace;
  std::uint64_t formula_automaton_states = 0;
  std::uint64_t model_states = 0;
  std::optional<bool> oracle_agrees;
  double elapsed_ms = 0;

  bool operator==(const Report&) const = default;
};

nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);
std::string render_text(const Report& r);

/// Process exit codes.
constexpr int kExitFinite = 0;
constexpr int kExitUsage = 1;
constexpr int kExitUnbounded = 2;
constexpr int kExitInfiniteInf = 3;
constexpr int kExitOracleMismatch = 4;

/// Runs one query.  The report goes to `out`, diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses the command line and calls run().
int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace cltl

#endif  // CLTL_CLI_HPP
