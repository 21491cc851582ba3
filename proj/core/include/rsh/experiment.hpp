#pragma once

#include "rsh/closed_forms.hpp"
#include "rsh/simulator.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rsh {

// Bad flags or config: the CLI maps this to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Method { Oracle, Spectral, ClosedForm, Bounds, MonteCarlo };
std::string_view to_string(Method m);
Method parse_method(std::string_view text);
// Comma separated list; duplicates are dropped.
std::vector<Method> parse_methods(std::string_view text);

inline constexpr std::string_view kVerifySuites[] = {
    "chains", "lemma1", "monotone", "semigroup", "oracle-spectral", "biorthogonality",
    "reconstruction", "block", "dominance", "appendix", "theorems", "bounds"};

struct ExperimentSpec {
  ProblemKind problem = ProblemKind::OneMax;
  AlgorithmKind algorithm = AlgorithmKind::RLS;
  std::vector<int> n_values;
  std::optional<Rational> alpha;
  // Explicit schedule; when empty the schedule is 0, t_step, ... up to
  // t_max, and t_max defaults to 100*n.
  std::vector<std::uint64_t> t_values;
  std::optional<std::int64_t> t_max;
  std::int64_t t_step = 1;
  bool t_values_given = false;
  std::int64_t runs = 1000;
  std::uint64_t seed = 0;
  std::vector<Method> methods;
  NumericMode numeric_mode = NumericMode::Float64;
  std::string out_path;
  std::optional<std::string> model_path;
  std::vector<std::string> suites;
  bool oracle_fallback = false;
  unsigned threads = 0;
};

// "10", "4..12" or "10,20,30"; appends to `out`.
void parse_n_list(std::string_view text, std::vector<int>& out);

// Fills a spec from a JSON config file (same field names as the long flags,
// with '-' replaced by '_'). Throws UsageError on malformed input.
ExperimentSpec load_spec_file(const std::string& path);
ExperimentSpec spec_from_json_text(const std::string& text);

std::vector<std::uint64_t> t_schedule(const ExperimentSpec& spec, int n);

// One-line JSON echo of the spec, used in CSV headers.
std::string spec_echo(const ExperimentSpec& spec);

struct CommandOutput {
  int exit_code = 0;
  std::string text;     // CSV or JSON payload
  std::string summary;  // short human-readable note for stderr
};

CommandOutput cmd_analyze(const ExperimentSpec& spec);
CommandOutput cmd_simulate(const ExperimentSpec& spec);
CommandOutput cmd_compare(const ExperimentSpec& spec);
CommandOutput cmd_verify(const ExperimentSpec& spec);

// Small matplotlib script that plots CSV files written by analyze/compare.
std::string plot_script_text();

std::string_view version();

}  // namespace rsh
