#include "rsh/experiment.hpp"

#include "rsh/model_json.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <tuple>

#ifndef RSH_VERSION
#define RSH_VERSION "0.0.0"
#endif

namespace rsh {

using nlohmann::json;

std::string_view version() { return RSH_VERSION; }

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Oracle: return "oracle";
    case Method::Spectral: return "spectral";
    case Method::ClosedForm: return "closed-form";
    case Method::Bounds: return "bounds";
    case Method::MonteCarlo: return "monte-carlo";
  }
  return "?";
}

Method parse_method(std::string_view text) {
  if (text == "oracle") return Method::Oracle;
  if (text == "spectral") return Method::Spectral;
  if (text == "closed-form" || text == "closed_form") return Method::ClosedForm;
  if (text == "bounds" || text == "bound") return Method::Bounds;
  if (text == "monte-carlo" || text == "monte_carlo" || text == "mc") return Method::MonteCarlo;
  throw UsageError("unknown method '" + std::string(text) +
                   "' (expected oracle, spectral, closed-form, bounds, monte-carlo)");
}

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

long parse_int(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("invalid ") + what + " '" + s + "'");
  }
}

}  // namespace

std::vector<Method> parse_methods(std::string_view text) {
  std::vector<Method> out;
  for (const auto& part : split(text, ',')) {
    if (part.empty()) continue;
    const Method m = parse_method(part);
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  return out;
}

void parse_n_list(std::string_view text, std::vector<int>& out) {
  for (const auto& part : split(text, ',')) {
    if (part.empty()) continue;
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(static_cast<int>(parse_int(part, "n")));
      continue;
    }
    const long lo = parse_int(part.substr(0, dots), "n range");
    const long hi = parse_int(part.substr(dots + 2), "n range");
    if (hi < lo) throw UsageError("empty n range '" + part + "'");
    for (long n = lo; n <= hi; ++n) out.push_back(static_cast<int>(n));
  }
}

// ---- config files ----

namespace {

std::string json_scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return v.dump();
  throw UsageError("expected a string or number, got " + v.dump());
}

}  // namespace

ExperimentSpec spec_from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw UsageError("config must be a JSON object");
  ExperimentSpec spec;
  try {
    for (const auto& [key, v] : doc.items()) {
      if (key == "problem") {
        spec.problem = parse_problem_kind(v.get<std::string>());
      } else if (key == "algorithm") {
        spec.algorithm = parse_algorithm_kind(v.get<std::string>());
      } else if (key == "n") {
        if (v.is_array()) {
          for (const auto& x : v) parse_n_list(json_scalar_text(x), spec.n_values);
        } else {
          parse_n_list(json_scalar_text(v), spec.n_values);
        }
      } else if (key == "alpha") {
        spec.alpha = parse_rational(json_scalar_text(v));
      } else if (key == "t") {
        spec.t_values_given = true;
        for (const auto& x : v) spec.t_values.push_back(x.get<std::uint64_t>());
      } else if (key == "t_max") {
        spec.t_max = v.get<std::int64_t>();
      } else if (key == "t_step") {
        spec.t_step = v.get<std::int64_t>();
      } else if (key == "runs") {
        spec.runs = v.get<std::int64_t>();
      } else if (key == "seed") {
        spec.seed = v.get<std::uint64_t>();
      } else if (key == "methods") {
        if (v.is_array()) {
          for (const auto& x : v) {
            const Method m = parse_method(x.get<std::string>());
            if (std::find(spec.methods.begin(), spec.methods.end(), m) == spec.methods.end()) spec.methods.push_back(m);
          }
        } else {
          spec.methods = parse_methods(v.get<std::string>());
        }
      } else if (key == "numeric_mode") {
        spec.numeric_mode = parse_numeric_mode(v.get<std::string>());
      } else if (key == "out") {
        spec.out_path = v.get<std::string>();
      } else if (key == "model") {
        spec.model_path = v.get<std::string>();
      } else if (key == "suite" || key == "suites") {
        if (v.is_array()) {
          for (const auto& x : v) spec.suites.push_back(x.get<std::string>());
        } else {
          for (const auto& s : split(v.get<std::string>(), ',')) {
            if (!s.empty()) spec.suites.push_back(s);
          }
        }
      } else if (key == "oracle_fallback") {
        spec.oracle_fallback = v.get<bool>();
      } else if (key == "threads") {
        spec.threads = v.get<unsigned>();
      } else {
        throw UsageError("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad value in config: ") + e.what());
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return spec;
}

ExperimentSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return spec_from_json_text(ss.str());
}

std::vector<std::uint64_t> t_schedule(const ExperimentSpec& spec, int n) {
  if (spec.t_values_given) {
    for (std::size_t i = 1; i < spec.t_values.size(); ++i) {
      if (spec.t_values[i] <= spec.t_values[i - 1]) throw UsageError("t schedule must be strictly increasing");
    }
    if (spec.t_values.empty()) throw UsageError("t schedule is empty");
    return spec.t_values;
  }
  const std::int64_t t_max = spec.t_max.value_or(100 * static_cast<std::int64_t>(n));
  if (t_max < 0) throw UsageError("t schedule is empty (t_max < 0)");
  if (spec.t_step < 1) throw UsageError("t_step must be at least 1");
  std::vector<std::uint64_t> out;
  for (std::int64_t t = 0; t <= t_max; t += spec.t_step) out.push_back(static_cast<std::uint64_t>(t));
  if (out.back() != static_cast<std::uint64_t>(t_max)) out.push_back(static_cast<std::uint64_t>(t_max));
  return out;
}

std::string spec_echo(const ExperimentSpec& spec) {
  json j;
  j["problem"] = to_string(spec.problem);
  j["algorithm"] = to_string(spec.algorithm);
  j["n"] = spec.n_values;
  if (spec.alpha) j["alpha"] = format_rational(*spec.alpha);
  if (spec.t_values_given) {
    j["t"] = spec.t_values;
  } else {
    j["t_max"] = spec.t_max ? json(*spec.t_max) : json("100*n");
    j["t_step"] = spec.t_step;
  }
  j["runs"] = spec.runs;
  j["seed"] = spec.seed;
  std::vector<std::string> methods;
  for (auto m : spec.methods) methods.emplace_back(to_string(m));
  j["methods"] = methods;
  j["numeric_mode"] = to_string(spec.numeric_mode);
  if (spec.model_path) j["model"] = *spec.model_path;
  if (!spec.suites.empty()) j["suites"] = spec.suites;
  if (spec.oracle_fallback) j["oracle_fallback"] = true;
  return j.dump();
}

// ---- shared helpers ----

namespace {

struct Row {
  std::string method;
  std::string theorem;
  int n = 0;
  std::string alpha;
  std::uint64_t t = 0;
  std::string value;
  double value_d = 0;
  std::string kind;
};

ProblemInstance instance(const ExperimentSpec& spec, int n) {
  try {
    return ProblemInstance::make(spec.problem, n, spec.alpha);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string alpha_text(const ExperimentSpec& spec) { return spec.alpha ? format_rational(*spec.alpha) : ""; }

StatusModel<Rational> exact_chain(const ProblemInstance& p, AlgorithmKind a) {
  try {
    return build_exact_chain(p, a);
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
}

template <Scalar T>
StatusModel<T> in_mode(const StatusModel<Rational>& m) {
  if constexpr (is_exact<T>) {
    return m;
  } else {
    return to_float(m);
  }
}

template <Scalar T>
Row make_row(std::string method, std::string theorem, int n, std::string alpha, std::uint64_t t, const T& v,
             std::string kind) {
  return Row{std::move(method), std::move(theorem), n, std::move(alpha), t, format_scalar(v), to_double(v),
             std::move(kind)};
}

// The chain's error curve through the closed-form eigenvectors: directly for
// bidiagonal chains, via the last-status partition otherwise. Empty when neither
// applies.
template <Scalar T>
std::optional<std::function<T(std::uint64_t)>> spectral_curve(const StatusModel<T>& model) {
  const auto reduced = reduce_to_nonoptimal(model);
  if (reduced.transition.dim() > 0 && admits_closed_form(reduced.transition)) {
    auto curve = std::make_shared<SpectralErrorCurve<T>>(reduced.errors, reduced.transition, reduced.initial);
    return [curve](std::uint64_t t) { return (*curve)(t); };
  }
  if (model.num_statuses() >= 3) {
    auto block = std::make_shared<BlockErrorCurve<T>>(partition_last_status(model));
    if (block->uses_spectral()) return [block](std::uint64_t t) { return (*block)(t); };
  }
  return std::nullopt;
}

bool has_auxiliary(const ProblemInstance& p, AlgorithmKind a) {
  return a == AlgorithmKind::OnePlusOneEA && p.kind() != ProblemKind::Peak;
}

// Certifies the auxiliary chain against the exact one in exact arithmetic.
DominanceReport<Rational> certify_auxiliary(const ProblemInstance& p) {
  const auto bounded = build_bounded_chain(p);
  const auto aux = build_auxiliary_chain(p, AlgorithmKind::OnePlusOneEA);
  const std::size_t L = auxiliary_block_size(p);
  return dominance_check(bounded.transition.block(0, L), aux.transition.block(0, L));
}

// Error curve of the auxiliary chain; an upper bound once certified.
template <Scalar T>
std::function<T(std::uint64_t)> auxiliary_curve(const ProblemInstance& p) {
  const auto aux = in_mode<T>(build_auxiliary_chain(p, AlgorithmKind::OnePlusOneEA));
  auto curve = spectral_curve(aux);
  if (!curve) throw std::logic_error("auxiliary chain has no closed form");
  return *curve;
}

void sort_rows(std::vector<Row>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.n, a.t, a.method, a.theorem, a.kind) < std::tie(b.n, b.t, b.method, b.theorem, b.kind);
  });
}

std::string header_line(std::string_view command, const ExperimentSpec& spec) {
  return "# rsh-error-lab " + std::string(version()) + " command=" + std::string(command) +
         " seed=" + std::to_string(spec.seed) + " spec=" + spec_echo(spec) + "\n";
}

struct AnalyticResult {
  std::vector<Row> rows;
  std::vector<std::string> notes;
};

template <Scalar T>
void analytic_rows_for_model(const StatusModel<T>& model, int n, const std::string& alpha,
                             const std::vector<std::uint64_t>& ts, const ExperimentSpec& spec, AnalyticResult& out) {
  const bool want_oracle = std::count(spec.methods.begin(), spec.methods.end(), Method::Oracle) > 0;
  const bool want_spectral = std::count(spec.methods.begin(), spec.methods.end(), Method::Spectral) > 0;
  if (want_oracle) {
    const auto curve = expected_error_power_curve(model, ts.back());
    for (auto t : ts) out.rows.push_back(make_row<T>("oracle", "", n, alpha, t, curve[t], "exact"));
  }
  if (want_spectral) {
    std::optional<std::function<T(std::uint64_t)>> curve;
    std::string why;
    try {
      curve = spectral_curve(model);
      if (!curve) why = "the chain is neither bidiagonal nor bidiagonal after removing its last status";
    } catch (const DuplicateDiagonal& e) {
      why = e.what();
    }
    if (curve) {
      for (auto t : ts) out.rows.push_back(make_row<T>("spectral", "", n, alpha, t, (*curve)(t), "exact"));
    } else if (spec.oracle_fallback) {
      out.notes.push_back("n=" + std::to_string(n) + ": spectral path unavailable (" + why +
                          "); values come from the matrix-power oracle");
      const auto oracle = expected_error_power_curve(model, ts.back());
      for (auto t : ts) out.rows.push_back(make_row<T>("spectral", "oracle-fallback", n, alpha, t, oracle[t], "exact"));
    } else {
      throw UsageError("n=" + std::to_string(n) + ": spectral method unavailable: " + why +
                       " (pass --oracle-fallback to use the matrix-power oracle instead)");
    }
  }
}

template <Scalar T>
void theorem_rows(const ProblemInstance& p, const ExperimentSpec& spec, const std::vector<std::uint64_t>& ts,
                  bool want_exact, bool want_bounds, AnalyticResult& out) {
  const TheoremId id = theorem_for(p.kind(), spec.algorithm);
  const BoundShape shape = bound_shape(id);
  const bool is_exact_shape = shape == BoundShape::Exact;
  if ((is_exact_shape && !want_exact) || (!is_exact_shape && !want_bounds)) return;
  const std::string method = is_exact_shape ? "closed-form" : "bounds";
  const std::string th(to_string(id));
  const std::string alpha = alpha_text(spec);
  const bool exact_eval = is_exact<T> && has_rational_form(id);
  for (auto t : ts) {
    if (id == TheoremId::T10_RLS_Knapsack && t == 0) continue;
    if (exact_eval) {
      const auto r = closed_form_error_exact(id, p.n(), p.alpha(), t);
      if (r.lower) out.rows.push_back(make_row<Rational>(method, th, p.n(), alpha, t, *r.lower, "lower"));
      if (r.exact) out.rows.push_back(make_row<Rational>(method, th, p.n(), alpha, t, *r.exact, "exact"));
      if (r.upper) out.rows.push_back(make_row<Rational>(method, th, p.n(), alpha, t, *r.upper, "upper"));
    } else {
      const auto r = closed_form_error(id, p.n(), p.alpha(), t);
      if (r.lower) out.rows.push_back(make_row<double>(method, th, p.n(), alpha, t, *r.lower, "lower"));
      if (r.exact) out.rows.push_back(make_row<double>(method, th, p.n(), alpha, t, *r.exact, "exact"));
      if (r.upper) out.rows.push_back(make_row<double>(method, th, p.n(), alpha, t, *r.upper, "upper"));
    }
  }
  if (id == TheoremId::T10_RLS_Knapsack && ts.front() == 0) {
    out.notes.push_back("T10 is stated for t >= 1; t=0 omitted");
  }
}

template <Scalar T>
void bound_chain_rows(const ProblemInstance& p, const ExperimentSpec& spec, const std::vector<std::uint64_t>& ts,
                      AnalyticResult& out) {
  if (!has_auxiliary(p, spec.algorithm)) return;
  const auto report = certify_auxiliary(p);
  if (!report.passed) {
    out.notes.push_back("n=" + std::to_string(p.n()) + ": auxiliary chain not certified (" +
                        report.first_violation->message + "); aux-chain bound omitted");
    return;
  }
  const auto curve = auxiliary_curve<T>(p);
  for (auto t : ts) out.rows.push_back(make_row<T>("bounds", "aux-chain", p.n(), alpha_text(spec), t, curve(t), "upper"));
}

template <Scalar T>
AnalyticResult analytic_rows(const ExperimentSpec& spec) {
  AnalyticResult out;
  const bool want_exact = std::count(spec.methods.begin(), spec.methods.end(), Method::ClosedForm) > 0;
  const bool want_bounds = std::count(spec.methods.begin(), spec.methods.end(), Method::Bounds) > 0;
  if (spec.model_path) {
    if (want_exact || want_bounds) out.notes.push_back("closed-form and bounds need a built-in problem; skipped for --model");
    AnyStatusModel any;
    try {
      any = load_status_model(*spec.model_path);
    } catch (const std::exception& e) {
      throw UsageError(std::string("cannot load model: ") + e.what());
    }
    StatusModel<T> model;
    if (const auto* exact = std::get_if<StatusModel<Rational>>(&any)) {
      model = in_mode<T>(*exact);
    } else if constexpr (is_exact<T>) {
      throw UsageError("model file is float64 but rational mode was requested");
    } else {
      model = std::get<StatusModel<double>>(any);
    }
    try {
      require_valid(model);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const int n = static_cast<int>(model.num_statuses()) - 1;
    analytic_rows_for_model(model, n, "", t_schedule(spec, n), spec, out);
    return out;
  }
  for (int n : spec.n_values) {
    const auto p = instance(spec, n);
    const auto ts = t_schedule(spec, n);
    if (std::count(spec.methods.begin(), spec.methods.end(), Method::Oracle) ||
        std::count(spec.methods.begin(), spec.methods.end(), Method::Spectral)) {
      analytic_rows_for_model(in_mode<T>(exact_chain(p, spec.algorithm)), n, alpha_text(spec), ts, spec, out);
    }
    theorem_rows<T>(p, spec, ts, want_exact, want_bounds, out);
    if (want_bounds) bound_chain_rows<T>(p, spec, ts, out);
  }
  return out;
}

void require_common(const ExperimentSpec& spec) {
  if (spec.n_values.empty() && !spec.model_path) throw UsageError("no problem size given (--n)");
  if (spec.problem == ProblemKind::Knapsack && !spec.alpha && !spec.model_path) {
    throw UsageError("knapsack requires --alpha");
  }
}

bool has_analytic(const std::vector<Method>& methods) {
  return std::any_of(methods.begin(), methods.end(), [](Method m) { return m != Method::MonteCarlo; });
}

std::string rows_csv(const std::vector<Row>& rows) {
  std::string s = "method,theorem_id,n,alpha,t,value,bound_kind\n";
  for (const auto& r : rows) {
    s += r.method + "," + r.theorem + "," + std::to_string(r.n) + "," + r.alpha + "," + std::to_string(r.t) + "," +
         r.value + "," + r.kind + "\n";
  }
  return s;
}

AnalyticResult run_analytic(const ExperimentSpec& spec) {
  return spec.numeric_mode == NumericMode::ExactRational ? analytic_rows<Rational>(spec) : analytic_rows<double>(spec);
}

}  // namespace

CommandOutput cmd_analyze(const ExperimentSpec& spec_in) {
  ExperimentSpec spec = spec_in;
  if (spec.methods.empty()) spec.methods = {Method::ClosedForm, Method::Bounds};
  if (!has_analytic(spec.methods)) throw UsageError("analyze needs at least one analytic method");
  require_common(spec);
  auto result = run_analytic(spec);
  sort_rows(result.rows);
  CommandOutput out;
  out.text = header_line("analyze", spec);
  for (const auto& note : result.notes) out.text += "# note: " + note + "\n";
  out.text += rows_csv(result.rows);
  out.summary = std::to_string(result.rows.size()) + " rows";
  return out;
}

namespace {

SimConfig sim_config(const ExperimentSpec& spec, const ProblemInstance& p, std::uint64_t t_max) {
  if (spec.runs < 1) throw UsageError("runs must be at least 1");
  return SimConfig{p, spec.algorithm, t_max, static_cast<std::uint64_t>(spec.runs), spec.seed, spec.threads};
}

}  // namespace

CommandOutput cmd_simulate(const ExperimentSpec& spec) {
  if (spec.model_path) throw UsageError("simulate needs a built-in problem, not --model");
  require_common(spec);
  if (spec.runs < 1) throw UsageError("runs must be at least 1");
  CommandOutput out;
  out.text = header_line("simulate", spec);
  out.text += "n,t,mean_error,std_error,runs,seed\n";
  std::size_t rows = 0;
  for (int n : spec.n_values) {
    const auto p = instance(spec, n);
    const auto ts = t_schedule(spec, n);
    const auto curve = monte_carlo_curve(sim_config(spec, p, ts.back()));
    for (auto t : ts) {
      const auto& pt = curve.values[static_cast<std::size_t>(t)];
      out.text += std::to_string(n) + "," + std::to_string(t) + "," + format_double(pt.mean_error) + "," +
                  format_double(pt.std_error) + "," + std::to_string(spec.runs) + "," + std::to_string(spec.seed) +
                  "\n";
      ++rows;
    }
  }
  out.summary = std::to_string(rows) + " rows";
  return out;
}

CommandOutput cmd_compare(const ExperimentSpec& spec_in) {
  ExperimentSpec spec = spec_in;
  if (spec.model_path) throw UsageError("compare needs a built-in problem, not --model");
  if (spec.methods.empty()) spec.methods = {Method::MonteCarlo, Method::Bounds};
  if (std::count(spec.methods.begin(), spec.methods.end(), Method::MonteCarlo) == 0) {
    throw UsageError("compare needs monte-carlo among the methods");
  }
  if (!has_analytic(spec.methods)) throw UsageError("compare needs at least one analytic method besides monte-carlo");
  require_common(spec);
  if (spec.runs < 1) throw UsageError("runs must be at least 1");

  ExperimentSpec analytic = spec;
  analytic.numeric_mode = NumericMode::Float64;
  auto result = run_analytic(analytic);
  sort_rows(result.rows);

  std::map<int, ErrorCurve> sims;
  for (int n : spec.n_values) {
    const auto ts = t_schedule(spec, n);
    sims.emplace(n, monte_carlo_curve(sim_config(spec, instance(spec, n), ts.back())));
  }

  CommandOutput out;
  out.text = header_line("compare", spec);
  for (const auto& note : result.notes) out.text += "# note: " + note + "\n";
  out.text += "method,theorem_id,n,alpha,t,value,bound_kind,mean_error,std_error,gap,flagged\n";
  std::size_t flagged = 0;
  double worst = std::numeric_limits<double>::infinity();
  std::string worst_at;
  for (const auto& r : result.rows) {
    const auto& pt = sims.at(r.n).values[static_cast<std::size_t>(r.t)];
    // Distance on the side the analytic value promises: bound - mean for
    // upper/exact values, mean - bound for lower bounds.
    const double gap = r.kind == "lower" ? pt.mean_error - r.value_d : r.value_d - pt.mean_error;
    const bool flag = gap < -4.0 * pt.std_error - 1e-12;
    if (flag) ++flagged;
    const double scaled = pt.std_error > 0 ? gap / pt.std_error : gap;
    if (scaled < worst) {
      worst = scaled;
      worst_at = r.method + "/" + r.theorem + "/" + r.kind + " n=" + std::to_string(r.n) + " t=" + std::to_string(r.t);
    }
    out.text += r.method + "," + r.theorem + "," + std::to_string(r.n) + "," + r.alpha + "," + std::to_string(r.t) +
                "," + r.value + "," + r.kind + "," + format_double(pt.mean_error) + "," +
                format_double(pt.std_error) + "," + format_double(gap) + "," + (flag ? "1" : "0") + "\n";
  }
  std::string summary = "points=" + std::to_string(result.rows.size()) + " flagged=" + std::to_string(flagged);
  if (!result.rows.empty()) summary += " worst_gap_in_std_errors=" + format_double(worst) + " at " + worst_at;
  out.text += "# summary: " + summary + "\n";
  out.summary = summary;
  out.exit_code = flagged > 0 ? 1 : 0;
  return out;
}

// ---- verify ----

namespace {

struct Check {
  std::string suite;
  std::string name;
  int n = 0;
  double tolerance = 0;
  double worst_residual = 0;
  std::string status;
  std::string detail;
};

class Verifier {
 public:
  explicit Verifier(const ExperimentSpec& spec) : spec_(spec) {}

  void record(const std::string& suite, const std::string& name, int n, double tol, double worst, bool ok,
              std::string detail = {}) {
    checks_.push_back({suite, name, n, tol, worst, ok ? "pass" : "fail", std::move(detail)});
  }
  void skip(const std::string& suite, const std::string& name, int n, std::string reason) {
    checks_.push_back({suite, name, n, 0, 0, "skipped", std::move(reason)});
  }
  // Runs fn, turning an unexpected exception into a failed check.
  void guarded(const std::string& suite, const std::string& name, int n, const std::function<void()>& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      record(suite, name, n, 0, 0, false, std::string("exception: ") + e.what());
    }
  }

  const std::vector<Check>& checks() const { return checks_; }
  const ExperimentSpec& spec() const { return spec_; }

 private:
  const ExperimentSpec& spec_;
  std::vector<Check> checks_;
};

double absd(const Rational& q) { return std::abs(to_double(q)); }

Rational max_abs(const Rational& a, const Rational& b) { return abs(a) > abs(b) ? Rational(abs(a)) : Rational(abs(b)); }

Rational max_abs_diff(const UpperTriMatrix<Rational>& a, const UpperTriMatrix<Rational>& b) {
  Rational worst = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = i; j < a.dim(); ++j) worst = max_abs(worst, a(i, j) - b(i, j));
  }
  return worst;
}

struct NamedProblem {
  std::string name;
  ProblemInstance problem;
  AlgorithmKind algorithm;
};

std::optional<Rational> verify_alpha(const ExperimentSpec& spec) {
  return spec.alpha ? spec.alpha : std::optional<Rational>(ratio(1, 2));
}

std::optional<ProblemInstance> knapsack_or_skip(Verifier& v, const std::string& suite, int n) {
  try {
    return ProblemInstance::knapsack(n, *verify_alpha(v.spec()));
  } catch (const std::invalid_argument& e) {
    v.skip(suite, "knapsack", n, e.what());
    return std::nullopt;
  }
}

std::vector<NamedProblem> problems_for(Verifier& v, const std::string& suite, int n) {
  std::vector<NamedProblem> out;
  const std::pair<AlgorithmKind, const char*> algs[] = {{AlgorithmKind::RLS, "rls"},
                                                        {AlgorithmKind::OnePlusOneEA, "ea"}};
  for (auto [a, an] : algs) {
    if (a == AlgorithmKind::OnePlusOneEA && n > kMaxEnumerationN) {
      v.skip(suite, std::string("ea"), n, "exact EA chains need n <= " + std::to_string(kMaxEnumerationN));
      continue;
    }
    out.push_back({std::string("onemax-") + an, ProblemInstance::onemax(n), a});
    out.push_back({std::string("peak-") + an, ProblemInstance::peak(n), a});
    out.push_back({std::string("deceptive-") + an, ProblemInstance::deceptive(n), a});
  }
  if (auto k = knapsack_or_skip(v, suite, n)) {
    out.push_back({"knapsack-rls", *k, AlgorithmKind::RLS});
    if (n <= kMaxEnumerationN) out.push_back({"knapsack-ea", *k, AlgorithmKind::OnePlusOneEA});
  }
  return out;
}

// Bidiagonal matrices the closed-form eigenvectors are applied to.
std::vector<std::pair<std::string, UpperTriMatrix<Rational>>> bidiagonal_matrices(Verifier& v,
                                                                                   const std::string& suite, int n) {
  std::vector<std::pair<std::string, UpperTriMatrix<Rational>>> out;
  out.emplace_back("peak-rls", reduce_to_nonoptimal(build_exact_chain(ProblemInstance::peak(n), AlgorithmKind::RLS)).transition);
  out.emplace_back("peak-ea", reduce_to_nonoptimal(build_exact_chain(ProblemInstance::peak(n), AlgorithmKind::OnePlusOneEA)).transition);
  const AppendixChain plain[] = {AppendixChain::OneMaxRls, AppendixChain::OneMaxEaAuxiliary, AppendixChain::DeceptiveRls,
                                 AppendixChain::DeceptiveEaAuxiliary};
  for (auto c : plain) out.emplace_back(std::string(to_string(c)), appendix_block(c, n).transition);
  if (knapsack_or_skip(v, suite, n)) {
    for (auto c : {AppendixChain::KnapsackRls, AppendixChain::KnapsackEaAuxiliary}) {
      out.emplace_back(std::string(to_string(c)), appendix_block(c, n, verify_alpha(v.spec())).transition);
    }
  }
  return out;
}

std::vector<std::uint64_t> verify_schedule(const ExperimentSpec& spec, int n) {
  if (spec.t_values_given || spec.t_max) return t_schedule(spec, n);
  std::vector<std::uint64_t> ts;
  for (std::uint64_t t = 0; t <= 50; ++t) ts.push_back(t);
  return ts;
}

std::string first_points(const std::vector<std::string>& pts) {
  std::string s;
  for (std::size_t i = 0; i < pts.size() && i < 6; ++i) s += (i ? "; " : "") + pts[i];
  if (pts.size() > 6) s += "; ... (" + std::to_string(pts.size()) + " total)";
  return s;
}

// ---- suites on a single model ----

void model_suites(Verifier& v, const std::set<std::string>& suites, const std::string& name, int n,
                  const StatusModel<Rational>& model, const std::vector<std::uint64_t>& ts) {
  const std::uint64_t t_max = ts.back();
  std::optional<Vector<Rational>> oracle;
  auto curve = [&]() -> const Vector<Rational>& {
    if (!oracle) oracle = expected_error_power_curve(model, t_max);
    return *oracle;
  };
  if (suites.count("lemma1")) {
    v.guarded("lemma1", name, n, [&] {
      const auto red = reduce_to_nonoptimal(model);
      Rational worst = 0;
      for (auto t : ts) worst = max_abs(worst, curve()[t] - error_power(red.errors, red.transition, red.initial, t));
      v.record("lemma1", name, n, 0, absd(worst), worst == 0);
    });
  }
  if (suites.count("monotone")) {
    v.guarded("monotone", name, n, [&] {
      Rational worst = 0;
      std::string where;
      for (std::uint64_t t = 1; t <= t_max; ++t) {
        const Rational rise = curve()[t] - curve()[t - 1];
        if (rise > worst) {
          worst = rise;
          where = "t=" + std::to_string(t);
        }
      }
      v.record("monotone", name, n, 0, absd(worst), worst <= 0, where);
    });
  }
  if (suites.count("semigroup")) {
    v.guarded("semigroup", name, n, [&] {
      const auto& R = model.transition;
      Rational worst = 0;
      for (auto [s, t] : {std::pair<std::uint64_t, std::uint64_t>{1, 1}, {2, 3}, {5, 7}}) {
        worst = max_abs(worst, max_abs_diff(matrix_power(R, s + t), matrix_power(R, s) * matrix_power(R, t)));
      }
      v.record("semigroup", name, n, 0, absd(worst), worst == 0);
    });
  }
}

void spectral_suites(Verifier& v, const std::set<std::string>& suites, const std::string& name, int n,
                     const UpperTriMatrix<Rational>& R, const std::vector<std::uint64_t>& ts) {
  const bool any = suites.count("biorthogonality") || suites.count("reconstruction") || suites.count("oracle-spectral");
  if (!any) return;
  if (classify_search(R) == SearchClass::Elitist) {
    for (const char* s : {"biorthogonality", "reconstruction", "oracle-spectral"}) {
      if (suites.count(s)) v.skip(s, name, n, "matrix is not bidiagonal");
    }
    return;
  }
  std::optional<SpectralDecomposition<Rational>> d;
  try {
    d = bidiagonal_decompose(R);
  } catch (const DuplicateDiagonal& e) {
    for (const char* s : {"biorthogonality", "reconstruction", "oracle-spectral"}) {
      if (suites.count(s)) v.skip(s, name, n, std::string("hypothesis not met: ") + e.what());
    }
    return;
  }
  const std::size_t L = d->dim();
  if (suites.count("biorthogonality")) {
    v.guarded("biorthogonality", name, n, [&] {
      Rational worst = 0;
      for (std::size_t i = 0; i < L; ++i) {
        for (std::size_t j = 0; j < L; ++j) {
          const Rational want = i == j ? 1 : 0;
          worst = max_abs(worst, dot(d->left_vectors[i], d->right_vectors[j]) - want);
        }
        const auto Rp = R.apply(d->right_vectors[i]);
        const auto qR = R.apply_left(d->left_vectors[i]);
        for (std::size_t k = 0; k < L; ++k) {
          worst = max_abs(worst, Rp[k] - d->eigenvalues[i] * d->right_vectors[i][k]);
          worst = max_abs(worst, qR[k] - d->eigenvalues[i] * d->left_vectors[i][k]);
        }
      }
      v.record("biorthogonality", name, n, 0, absd(worst), worst == 0);
    });
  }
  if (suites.count("reconstruction")) {
    v.guarded("reconstruction", name, n, [&] {
      const Rational worst = max_abs_diff(spectral_power(*d, 1), R);
      v.record("reconstruction", name, n, 0, absd(worst), worst == 0);
    });
  }
  if (suites.count("oracle-spectral")) {
    v.guarded("oracle-spectral", name, n, [&] {
      Rational worst = 0;
      auto P = UpperTriMatrix<Rational>::identity(L);
      std::uint64_t at = 0;
      for (auto t : ts) {
        while (at < t) {
          P = P * R;
          ++at;
        }
        worst = max_abs(worst, max_abs_diff(P, spectral_power(*d, t)));
      }
      v.record("oracle-spectral", name, n, 0, absd(worst), worst == 0);
    });
  }
}

// ---- suites on the built-in problems ----

void chains_suite(Verifier& v, int n) {
  for (const auto& np : problems_for(v, "chains", n)) {
    v.guarded("chains", np.name, n, [&] {
      const auto built = build_exact_chain(np.problem, np.algorithm);
      const auto problems = validate_model(built);
      const auto enumerated = enumerate_chain(np.problem, np.algorithm);
      const Rational diff = max_abs_diff(built.transition, enumerated.transition);
      std::string detail = problems.empty() ? "" : problems.front().message;
      if (diff != 0) detail += (detail.empty() ? "" : "; ") + std::string("closed-form builder differs from enumeration");
      v.record("chains", np.name, n, 0, absd(diff), problems.empty() && diff == 0, detail);
    });
  }
  if (auto k = knapsack_or_skip(v, "chains", n); k && n <= kMaxEnumerationN) {
    v.guarded("chains", "knapsack-ea-merged", n, [&] {
      const auto merged = build_bounded_chain(*k);
      const auto problems = validate_model(merged);
      v.record("chains", "knapsack-ea-merged", n, 0, 0, problems.empty(),
               problems.empty() ? "statuses an and an+1 lumpable" : problems.front().message);
    });
  }
}

void block_suite(Verifier& v, int n, const std::vector<std::uint64_t>& ts) {
  std::vector<std::pair<std::string, StatusModel<Rational>>> models;
  models.emplace_back("deceptive-ea", build_exact_chain(ProblemInstance::deceptive(n), AlgorithmKind::OnePlusOneEA));
  models.emplace_back("deceptive-ea-auxiliary",
                      build_auxiliary_chain(ProblemInstance::deceptive(n), AlgorithmKind::OnePlusOneEA));
  if (auto k = knapsack_or_skip(v, "block", n)) {
    models.emplace_back("knapsack-rls", build_exact_chain(*k, AlgorithmKind::RLS));
    models.emplace_back("knapsack-ea-merged", build_bounded_chain(*k));
    models.emplace_back("knapsack-ea-auxiliary", build_auxiliary_chain(*k, AlgorithmKind::OnePlusOneEA));
  }
  for (const auto& [name, model] : models) {
    v.guarded("block", name, n, [&] {
      const BlockErrorCurve<Rational> block(partition_last_status(model));
      const auto oracle = expected_error_power_curve(model, ts.back());
      Rational worst = 0;
      for (auto t : ts) worst = max_abs(worst, block(t) - oracle[t]);
      v.record("block", name, n, 0, absd(worst), worst == 0,
               block.uses_spectral() ? "closed-form eigenvectors on the leading block" : "repeated multiplication");
    });
  }
}

void dominance_suite(Verifier& v, int n) {
  std::vector<ProblemInstance> ps{ProblemInstance::onemax(n), ProblemInstance::deceptive(n)};
  if (auto k = knapsack_or_skip(v, "dominance", n)) ps.push_back(*k);
  for (const auto& p : ps) {
    const std::string name = std::string(to_string(p.kind())) + "-ea";
    if (n > kMaxEnumerationN) {
      v.skip("dominance", name, n, "exact EA chain needs n <= " + std::to_string(kMaxEnumerationN));
      continue;
    }
    v.guarded("dominance", name, n, [&] {
      const auto report = certify_auxiliary(p);
      const double slack = to_double(report.worst_slack);
      v.record("dominance", name, n, 0, slack, report.passed,
               report.passed ? "worst slack reported as residual"
                             : report.first_violation->message + ", " + std::to_string(report.violation_count) +
                                   " violations");
    });
  }
}

void appendix_suite(Verifier& v, int n) {
  std::vector<AppendixChain> chains{AppendixChain::OneMaxRls, AppendixChain::OneMaxEaAuxiliary,
                                    AppendixChain::DeceptiveRls, AppendixChain::DeceptiveEaAuxiliary};
  if (knapsack_or_skip(v, "appendix", n)) {
    chains.push_back(AppendixChain::KnapsackRls);
    chains.push_back(AppendixChain::KnapsackEaAuxiliary);
  }
  for (auto c : chains) {
    const std::string base(to_string(c));
    v.guarded("appendix", base, n, [&] {
      const std::optional<Rational> alpha = (c == AppendixChain::KnapsackRls || c == AppendixChain::KnapsackEaAuxiliary)
                                                ? verify_alpha(v.spec())
                                                : std::nullopt;
      const auto block = appendix_block(c, n, alpha);
      const auto d = bidiagonal_decompose(block.transition);
      struct Acc {
        Rational worst = 0;
        std::vector<std::string> bad;
        bool used = false;
      };
      std::map<std::string, Acc> acc;
      auto note = [&](const std::string& what, std::size_t j, const Rational& residual, bool ok) {
        auto& a = acc[what];
        a.used = true;
        a.worst = max_abs(a.worst, residual);
        if (!ok) a.bad.push_back("j=" + std::to_string(j));
      };
      for (std::size_t j = 1; j <= d.dim(); ++j) {
        const auto closed = appendix_inner_products(c, n, alpha, j);
        const auto direct = direct_inner_products(block, d, j);
        if (closed.error_projection) {
          const Rational r = *closed.error_projection - direct.error_projection;
          note("e'p_j", j, r, r == 0);
        }
        if (closed.initial_projection) {
          const Rational r = *closed.initial_projection - direct.initial_projection;
          note("q_j'p0", j, r, r == 0);
        }
        if (closed.residual_exact && direct.residual) {
          const Rational r = *closed.residual_exact - *direct.residual;
          note("q_j'r1", j, r, r == 0);
        }
        if (closed.residual_upper && direct.residual) {
          const Rational excess = *direct.residual - *closed.residual_upper;
          note("q_j'r1 upper bound", j, excess > 0 ? excess : Rational(0), excess <= 0);
        }
        if (closed.residual_lower && direct.residual) {
          const Rational excess = *closed.residual_lower - *direct.residual;
          note("q_j'r1 lower bound", j, excess > 0 ? excess : Rational(0), excess <= 0);
        }
      }
      for (const auto& [what, a] : acc) {
        v.record("appendix", base + " " + what, n, 0, absd(a.worst), a.bad.empty(),
                 a.bad.empty() ? "" : "mismatch at " + first_points(a.bad));
      }
    });
  }
}

void theorems_suite(Verifier& v, int n, const std::vector<std::uint64_t>& ts) {
  const std::pair<TheoremId, ProblemInstance> exact[] = {
      {TheoremId::T4_RLS_OneMax, ProblemInstance::onemax(n)},
      {TheoremId::T6_RLS_Peak, ProblemInstance::peak(n)},
      {TheoremId::T7_EA_Peak, ProblemInstance::peak(n)},
      {TheoremId::T8_RLS_Deceptive, ProblemInstance::deceptive(n)}};
  for (const auto& [id, p] : exact) {
    const std::string name(to_string(id));
    v.guarded("theorems", name, n, [&] {
      const AlgorithmKind a = id == TheoremId::T7_EA_Peak ? AlgorithmKind::OnePlusOneEA : AlgorithmKind::RLS;
      const auto oracle = expected_error_power_curve(build_exact_chain(p, a), ts.back());
      Rational worst = 0;
      std::vector<std::string> bad;
      for (auto t : ts) {
        const Rational diff = *closed_form_error_exact(id, n, std::nullopt, t).exact - oracle[t];
        worst = max_abs(worst, diff);
        if (diff != 0) bad.push_back("t=" + std::to_string(t));
      }
      v.record("theorems", name, n, 0, absd(worst), bad.empty(), bad.empty() ? "" : "mismatch at " + first_points(bad));
    });
  }
}

void bounds_suite(Verifier& v, int n, const std::vector<std::uint64_t>& ts) {
  if (n > kMaxEnumerationN) {
    v.skip("bounds", "ea", n, "exact EA chains need n <= " + std::to_string(kMaxEnumerationN));
  }
  std::vector<std::pair<TheoremId, ProblemInstance>> items;
  if (n <= kMaxEnumerationN) {
    items.emplace_back(TheoremId::T5_EA_OneMax, ProblemInstance::onemax(n));
    items.emplace_back(TheoremId::T9_EA_Deceptive, ProblemInstance::deceptive(n));
  }
  if (auto k = knapsack_or_skip(v, "bounds", n)) {
    items.emplace_back(TheoremId::T10_RLS_Knapsack, *k);
    if (n <= kMaxEnumerationN) items.emplace_back(TheoremId::T11_EA_Knapsack, *k);
  }
  for (const auto& [id, p] : items) {
    const std::string name(to_string(id));
    const AlgorithmKind a = id == TheoremId::T10_RLS_Knapsack ? AlgorithmKind::RLS : AlgorithmKind::OnePlusOneEA;
    v.guarded("bounds", name, n, [&] {
      const auto oracle = expected_error_power_curve(build_exact_chain(p, a), ts.back());
      double worst = 0;
      std::vector<std::string> bad;
      const double tol = has_rational_form(id) ? 0.0 : 1e-12;
      for (auto t : ts) {
        if (id == TheoremId::T10_RLS_Knapsack && t == 0) continue;
        if (has_rational_form(id)) {
          const auto r = closed_form_error_exact(id, n, p.alpha(), t);
          Rational excess = 0;
          if (r.upper && oracle[t] > *r.upper) excess = oracle[t] - *r.upper;
          if (r.lower && *r.lower > oracle[t]) excess = max_abs(excess, *r.lower - oracle[t]);
          if (excess != 0) bad.push_back("t=" + std::to_string(t));
          worst = std::max(worst, to_double(excess));
        } else {
          const double upper = *closed_form_error(id, n, std::nullopt, t).upper;
          const double o = to_double(oracle[t]);
          const double excess = o - upper;
          if (excess > tol * std::max(1.0, std::abs(upper))) bad.push_back("t=" + std::to_string(t));
          worst = std::max(worst, excess);
        }
      }
      v.record("bounds", name, n, tol, worst, bad.empty(), bad.empty() ? "" : "violated at " + first_points(bad));
    });
    if (a == AlgorithmKind::OnePlusOneEA) {
      v.guarded("bounds", name + " aux-chain", n, [&] {
        const auto report = certify_auxiliary(p);
        if (!report.passed) {
          v.record("bounds", name + " aux-chain", n, 0, 0, false, "auxiliary chain not certified");
          return;
        }
        const auto bound = auxiliary_curve<Rational>(p);
        const auto oracle = expected_error_power_curve(build_bounded_chain(p), ts.back());
        Rational worst = 0;
        for (auto t : ts) {
          const Rational excess = oracle[t] - bound(t);
          if (excess > worst) worst = excess;
        }
        v.record("bounds", name + " aux-chain", n, 0, absd(worst), worst == 0);
      });
    }
  }
}

}  // namespace

CommandOutput cmd_verify(const ExperimentSpec& spec_in) {
  ExperimentSpec spec = spec_in;
  std::set<std::string> suites;
  for (const auto& s : spec.suites) {
    if (s == "all") {
      suites.insert(std::begin(kVerifySuites), std::end(kVerifySuites));
      continue;
    }
    if (std::find(std::begin(kVerifySuites), std::end(kVerifySuites), s) == std::end(kVerifySuites)) {
      throw UsageError("unknown verify suite '" + s + "'");
    }
    suites.insert(s);
  }
  if (suites.empty()) suites.insert(std::begin(kVerifySuites), std::end(kVerifySuites));

  Verifier v(spec);
  if (spec.model_path) {
    AnyStatusModel any;
    try {
      any = load_status_model(*spec.model_path);
    } catch (const std::exception& e) {
      throw UsageError(std::string("cannot load model: ") + e.what());
    }
    const auto* model = std::get_if<StatusModel<Rational>>(&any);
    if (!model) throw UsageError("verify needs an exact (rational) model file");
    const int n = static_cast<int>(model->num_statuses()) - 1;
    const auto ts = verify_schedule(spec, n);
    if (suites.count("chains")) {
      const auto problems = validate_model(*model);
      v.record("chains", "model", n, 0, 0, problems.empty(), problems.empty() ? "" : problems.front().message);
    }
    if (validate_model(*model).empty()) {
      model_suites(v, suites, "model", n, *model, ts);
      spectral_suites(v, suites, "model", n, reduce_to_nonoptimal(*model).transition, ts);
      if (suites.count("block")) {
        v.guarded("block", "model", n, [&] {
          const BlockErrorCurve<Rational> block(partition_last_status(*model));
          const auto oracle = expected_error_power_curve(*model, ts.back());
          Rational worst = 0;
          for (auto t : ts) worst = max_abs(worst, block(t) - oracle[t]);
          v.record("block", "model", n, 0, absd(worst), worst == 0);
        });
      }
    }
    for (const char* s : {"dominance", "appendix", "theorems", "bounds"}) {
      if (suites.count(s)) v.skip(s, "model", n, "needs the built-in problems");
    }
  } else {
    std::vector<int> ns = spec.n_values;
    if (ns.empty()) {
      for (int n = 4; n <= 10; ++n) ns.push_back(n);
    }
    for (int n : ns) {
      if (n < 2) throw UsageError("verify needs n >= 2");
      const auto ts = verify_schedule(spec, n);
      if (suites.count("chains")) chains_suite(v, n);
      if (suites.count("lemma1") || suites.count("monotone") || suites.count("semigroup")) {
        for (const auto& np : problems_for(v, "lemma1", n)) {
          model_suites(v, suites, np.name, n, build_exact_chain(np.problem, np.algorithm), ts);
        }
      }
      for (const auto& [name, R] : bidiagonal_matrices(v, "spectral", n)) spectral_suites(v, suites, name, n, R, ts);
      if (suites.count("block")) block_suite(v, n, ts);
      if (suites.count("dominance")) dominance_suite(v, n);
      if (suites.count("appendix")) appendix_suite(v, n);
      if (suites.count("theorems")) theorems_suite(v, n, ts);
      if (suites.count("bounds")) bounds_suite(v, n, ts);
    }
  }

  json report;
  report["tool"] = "rsh-error-lab";
  report["version"] = version();
  report["spec"] = json::parse(spec_echo(spec));
  std::size_t passed = 0, failed = 0, skipped = 0;
  json checks = json::array();
  std::vector<std::string> failing;
  for (const auto& c : v.checks()) {
    checks.push_back({{"suite", c.suite},
                      {"name", c.name},
                      {"n", c.n},
                      {"tolerance", c.tolerance},
                      {"worst_residual", c.worst_residual},
                      {"status", c.status},
                      {"detail", c.detail}});
    if (c.status == "pass") ++passed;
    if (c.status == "skipped") ++skipped;
    if (c.status == "fail") {
      ++failed;
      failing.push_back(c.suite + "/" + c.name + " n=" + std::to_string(c.n));
    }
  }
  report["checks"] = checks;
  report["counts"] = {{"pass", passed}, {"fail", failed}, {"skipped", skipped}};
  report["passed"] = failed == 0;

  CommandOutput out;
  out.text = report.dump(2) + "\n";
  out.exit_code = failed == 0 ? 0 : 1;
  out.summary = std::to_string(passed) + " passed, " + std::to_string(failed) + " failed, " + std::to_string(skipped) +
                " skipped";
  if (!failing.empty()) out.summary += "; failing: " + first_points(failing);
  return out;
}

std::string plot_script_text() {
  return R"(#!/usr/bin/env python3
"""Plot CSV output of `rsh-error-lab analyze` or `compare`.

usage: plot_curves.py results.csv [out.png]
"""
import csv
import sys
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def to_float(text):
    if "/" in text:
        p, q = text.split("/")
        return int(p) / int(q)
    return float(text)


def main():
    src = sys.argv[1]
    dst = sys.argv[2] if len(sys.argv) > 2 else src.rsplit(".", 1)[0] + ".png"
    with open(src) as fh:
        rows = list(csv.DictReader(line for line in fh if not line.startswith("#")))
    series = defaultdict(list)
    sim = defaultdict(list)
    for r in rows:
        key = (r["n"], r["method"], r["theorem_id"], r["bound_kind"])
        series[key].append((int(r["t"]), to_float(r["value"])))
        if "mean_error" in r:
            sim[r["n"]].append((int(r["t"]), float(r["mean_error"])))
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for (n, method, th, kind), pts in sorted(series.items()):
        pts.sort()
        label = f"n={n} {method} {th} {kind}".replace("  ", " ")
        ax.plot([p[0] for p in pts], [p[1] for p in pts], label=label)
    for n, pts in sorted(sim.items()):
        pts = sorted(set(pts))
        ax.plot([p[0] for p in pts], [p[1] for p in pts], "k.", markersize=2, label=f"n={n} simulation")
    ax.set_xlabel("t")
    ax.set_ylabel("expected approximation error")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(dst, dpi=150)
    print(dst)


if __name__ == "__main__":
    main()
)";
}

}  // namespace rsh
