#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qentropy/errors.hpp"
#include "qentropy/json_io.hpp"

namespace qentropy::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitViolation = 2;

/// Missing or inconsistent flags, or inputs that break a hypothesis.
class UsageError : public Error {
 public:
  using Error::Error;
};

enum class Command { compute, bounds, verify, echo };
enum class OutputFormat { json, table };

struct CliConfig {
  Command command = Command::compute;
  std::vector<std::string> inputs;
  std::vector<std::string> entropies;
  std::vector<std::string> divergences;
  std::optional<double> q;
  std::string psi_label;
  std::string f_label;
  OutputFormat output = OutputFormat::json;

  // bounds
  std::string case_id;
  std::string xs_path;
  std::optional<double> m;
  std::optional<double> M;

  // verify
  bool all_cases = false;
  std::vector<std::string> case_ids;
  std::vector<double> q_grid;
  std::uint64_t seed = 42;
  std::size_t trials = 10000;
  std::size_t n_min = 2;
  std::size_t n_max = 16;
  unsigned threads = 0;
  bool stress = false;
  bool override_hypothesis = false;

  std::optional<double> check_tol;  // from QENTROPY_CHECK_TOL
};

/// Throws UsageError when a command is missing a required flag or q < 0.
void validate(const CliConfig& config);

Json cmd_compute(const CliConfig& config);
Json cmd_bounds(const CliConfig& config);

/// Writes one line per case to `out`; returns the exit status.
int cmd_verify(const CliConfig& config, std::ostream& out);

/// Renders a compute or bounds document as aligned text.
std::string render_table(const Json& doc);

/// Full entry point; never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qentropy::cli
