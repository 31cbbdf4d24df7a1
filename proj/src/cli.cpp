// Copyright 2026 The srlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "srlab/cli.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "srlab/dist_opt.hpp"
#include "srlab/experiments.hpp"
#include "srlab/io.hpp"
#include "srlab/rounding.hpp"
#include "srlab/stats.hpp"

namespace srlab {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr const char* kModeList =
    "floor, ceil, half-up, half-down, half-even, half-odd, cr, sr, table, d1, d2";

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::optional<DeterministicMode> parse_deterministic(std::string_view name) {
  for (auto m : {DeterministicMode::Floor, DeterministicMode::Ceiling, DeterministicMode::HalfUp,
                 DeterministicMode::HalfDown, DeterministicMode::HalfEven,
                 DeterministicMode::HalfOdd}) {
    if (to_string(m) == name) return m;
  }
  if (name == "cr") return DeterministicMode::HalfEven;
  return std::nullopt;
}

// Turns mode names into rounding modes. Table modes come from --table files
// (matched by label or the generic name "table"); d1/d2 without a matching
// file are optimized with the default swarm settings.
class ModeResolver {
 public:
  explicit ModeResolver(const std::vector<std::string>& table_paths) {
    for (const auto& path : table_paths) tables_.push_back(read_distribution(path).table);
  }

  NamedMode resolve(const std::string& raw) {
    const std::string name = lower(raw);
    if (auto d = parse_deterministic(name)) return {name, *d};
    if (name == "sr") return {name, StochasticSR{}};
    if (name == "table") {
      if (tables_.size() != 1)
        throw UsageError("mode 'table' needs exactly one --table file");
      return {lower(tables_.front().label()), StochasticTable{tables_.front()}};
    }
    for (const auto& t : tables_) {
      if (lower(t.label()) == name) return {name, StochasticTable{t}};
    }
    if (name == "d1" || name == "d2") {
      auto it = optimized_.find(name);
      if (it == optimized_.end()) {
        const Preset preset = name == "d1" ? Preset::D1 : Preset::D2;
        it = optimized_.emplace(name, optimize_table(preset, kDefaultGridSize, PsoConfig{}))
                 .first;
      }
      return {name, StochasticTable{it->second}};
    }
    throw UsageError("unknown mode '" + raw + "'; expected one of: " + kModeList);
  }

  std::vector<NamedMode> resolve_all(const std::vector<std::string>& names) {
    std::vector<NamedMode> modes;
    for (const auto& n : names) modes.push_back(resolve(n));
    return modes;
  }

 private:
  std::vector<ProbabilityTable> tables_;
  std::map<std::string, ProbabilityTable> optimized_;
};

std::string optional_field(const std::optional<double>& v) {
  return v ? csv_number(*v) : std::string("NA");
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
  } else {
    write_text(out_path, text);
  }
}

RoundingSpec make_spec(int digits, const std::string& base) {
  if (base == "binary" || base == "2") return RoundingSpec::binary(digits);
  if (base == "decimal" || base == "10") return RoundingSpec::decimal(digits);
  throw UsageError("unknown base '" + base + "'; expected binary or decimal");
}

void require_positive(std::size_t v, const char* what) {
  if (v == 0) throw UsageError(std::string(what) + " must be >= 1");
}

struct PsoFlags {
  PsoConfig cfg;
  void add_to(CLI::App& app) {
    app.add_option("--swarm", cfg.swarm_size, "Swarm size")->capture_default_str();
    app.add_option("--iterations", cfg.iterations, "Iterations per node")
        ->capture_default_str();
    app.add_option("--inertia", cfg.inertia, "Inertia weight w")->capture_default_str();
    app.add_option("--cognitive", cfg.cognitive, "Cognitive coefficient c1")
        ->capture_default_str();
    app.add_option("--social", cfg.social, "Social coefficient c2")->capture_default_str();
    app.add_option("--vclamp", cfg.velocity_clamp, "Velocity clamp")->capture_default_str();
    app.add_option("--seed", cfg.seed, "Base seed")->capture_default_str();
  }
};

struct OptimizeArgs {
  std::string preset;
  std::string config_path;
  std::string label;
  std::size_t grid = kDefaultGridSize;
  PsoFlags pso;
  std::string out;
};

MopConfig mop_from_config_file(const std::string& path) {
  const auto j = nlohmann::json::parse(read_text(path), nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw FormatError("malformed config file " + path);
  MopConfig m;
  m.theta1 = j.value("theta1", m.theta1);
  m.theta2 = j.value("theta2", m.theta2);
  if (j.contains("v_max") && !j["v_max"].is_null()) {
    m.v_max = j["v_max"].get<double>();
    m.k1 = kDefaultPenalty;
  }
  if (j.contains("b_max") && !j["b_max"].is_null()) {
    m.b_max = j["b_max"].get<double>();
    m.k2 = kDefaultPenalty;
  }
  m.k1 = j.value("k1", m.k1);
  m.k2 = j.value("k2", m.k2);
  m.delta = j.value("delta", m.delta);
  return m;
}

int cmd_optimize(const OptimizeArgs& a, std::ostream& out) {
  if (a.preset.empty() == a.config_path.empty())
    throw UsageError("give exactly one of --preset or --config");
  if (a.grid < 2) throw UsageError("--grid must be >= 2");
  try {
    a.pso.cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  MopConfig mop;
  std::string label = a.label;
  EndpointPreference pref = EndpointPreference::None;
  if (!a.preset.empty()) {
    const auto preset = parse_preset(lower(a.preset));
    if (!preset)
      throw UsageError("unknown preset '" + a.preset +
                       "'; expected bias-min, var-min-floor, var-min-ceil, nearest-like, d1, d2");
    mop = preset_config(*preset);
    pref = preset_preference(*preset);
    if (label.empty()) label = std::string(to_string(*preset));
  } else {
    mop = mop_from_config_file(a.config_path);
    if (label.empty()) label = "custom";
  }
  try {
    mop.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  DistributionFile file{kDistributionFormatVersion,
                        optimize_table(mop, a.grid, a.pso.cfg, label, pref), mop.delta, mop,
                        a.pso.cfg};
  write_distribution(a.out, file);

  const auto& grid = file.table.grid();
  const auto& p = file.table.p();
  double b_min = 0.0, b_max = 0.0, v_min = 0.0, v_max = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double b = bias_of_p(p[j], grid[j], mop.delta);
    const double v = variance_of_p(p[j], mop.delta);
    if (j == 0 || b < b_min) b_min = b;
    if (j == 0 || b > b_max) b_max = b;
    if (j == 0 || v < v_min) v_min = v;
    if (j == 0 || v > v_max) v_max = v;
  }
  out << "label " << label << "\n"
      << "nodes " << grid.size() << "\n"
      << "bias min " << csv_number(b_min) << " max " << csv_number(b_max) << "\n"
      << "variance min " << csv_number(v_min) << " max " << csv_number(v_max) << "\n";
  return kExitOk;
}

struct RoundArgs {
  double x = 0.0;
  std::string mode;
  int digits = 0;
  std::string base = "binary";
  std::uint64_t seed = 0;
  std::size_t count = 1;
  std::vector<std::string> tables;
};

int cmd_round(const RoundArgs& a, std::ostream& out) {
  require_positive(a.count, "--count");
  if (a.digits < 0) throw UsageError("--n must be >= 0");
  ModeResolver resolver(a.tables);
  const NamedMode mode = resolver.resolve(a.mode);
  const RoundingSpec spec = make_spec(a.digits, a.base);
  RandomStream rng(a.seed);
  const std::size_t count = is_stochastic(mode.mode) ? a.count : 1;
  for (std::size_t i = 0; i < count; ++i)
    out << csv_number(round_value(a.x, mode.mode, spec, rng)) << "\n";
  return kExitOk;
}

struct ExperimentArgs {
  std::vector<std::string> modes{"sr", "cr", "d1", "d2"};
  std::vector<std::string> tables;
  std::uint64_t seed = 0;
  std::size_t reps = kDefaultRepetitions;
  std::string out;
  // sum
  std::vector<std::string> cases{"I", "II", "III", "IV"};
  // sqrt
  std::vector<double> a_values{std::begin(kSqrtTestValues), std::end(kSqrtTestValues)};
  int digits = 3;
  // dot
  std::vector<std::size_t> sizes{std::begin(kDotSizes), std::end(kDotSizes)};
  int dot_digits = 0;
  // varbound
  VarianceBoundConfig varbound;
  // contour
  std::size_t res = 200;
  double x1_max = 5.0;
};

int cmd_sum(const ExperimentArgs& a, std::ostream& out) {
  require_positive(a.reps, "--reps");
  std::vector<CaseId> cases;
  for (const auto& c : a.cases) {
    const auto id = parse_case(c);
    if (!id) throw UsageError("unknown case '" + c + "'; expected I, II, III or IV");
    cases.push_back(*id);
  }
  ModeResolver resolver(a.tables);
  const auto modes = resolver.resolve_all(a.modes);
  std::string csv = csv_row({"case", "mode", "abs_bias", "variance", "rel_err", "n"});
  for (CaseId id : cases) {
    for (const auto& m : modes) {
      const auto r = run_summation_experiment(id, m, a.reps, a.seed);
      const auto& s = *r.summary;
      csv += csv_row({to_string(id), m.label, csv_number(s.abs_bias), csv_number(s.variance),
                      optional_field(s.mean_abs_rel_err), std::to_string(r.repetitions)});
    }
  }
  emit(csv, a.out, out);
  return kExitOk;
}

int cmd_sqrt(const ExperimentArgs& a, std::ostream& out) {
  require_positive(a.reps, "--reps");
  if (a.digits < 0) throw UsageError("--digits must be >= 0");
  for (double v : a.a_values) {
    if (!(v > 0.0)) throw UsageError("--a values must be > 0");
  }
  NewtonConfig cfg;
  cfg.spec = RoundingSpec::decimal(a.digits);
  ModeResolver resolver(a.tables);
  const auto modes = resolver.resolve_all(a.modes);
  std::string csv = csv_row({"a", "mode", "delta", "mu", "abs_bias", "variance", "rel_err",
                             "n_it_mean", "breakdowns", "nonconverged"});
  for (double v : a.a_values) {
    for (const auto& m : modes) {
      const auto r = run_sqrt_experiment(v, m, cfg, a.reps, a.seed);
      std::string mu = "NA", bias = "NA", var = "NA", rel = "NA", nit = "NA";
      if (r.summary) {
        mu = csv_number(r.summary->mu);
        bias = csv_number(r.summary->abs_bias);
        var = csv_number(r.summary->variance);
        rel = optional_field(r.summary->mean_abs_rel_err);
        nit = optional_field(r.summary->n_it_mean);
      }
      csv += csv_row({csv_number(v), m.label, csv_number(cfg.spec.delta()), mu, bias, var, rel,
                      nit, std::to_string(r.breakdowns), std::to_string(r.nonconverged)});
    }
  }
  emit(csv, a.out, out);
  return kExitOk;
}

int cmd_dot(const ExperimentArgs& a, std::ostream& out) {
  require_positive(a.reps, "--reps");
  for (auto n : a.sizes) {
    if (n < 2) throw UsageError("--sizes entries must be >= 2");
  }
  if (a.dot_digits < 0) throw UsageError("--digits must be >= 0");
  const RoundingSpec spec = RoundingSpec::decimal(a.dot_digits);
  ModeResolver resolver(a.tables);
  const auto modes = resolver.resolve_all(a.modes);
  std::string csv = csv_row({"n", "mode", "abs_bias", "variance", "rel_err"});
  for (auto n : a.sizes) {
    for (const auto& m : modes) {
      const auto r = run_inner_product_experiment(n, m, a.reps, a.seed, spec);
      const auto& s = *r.summary;
      csv += csv_row({std::to_string(n), m.label, csv_number(s.abs_bias),
                      csv_number(s.variance), optional_field(s.mean_abs_rel_err)});
    }
  }
  emit(csv, a.out, out);
  return kExitOk;
}

int cmd_varbound(const ExperimentArgs& a, std::ostream& out) {
  VarianceBoundConfig cfg = a.varbound;
  cfg.seed = a.seed;
  if (cfg.n_bits < 0) throw UsageError("--bits must be >= 0");
  if (!(cfg.step > 0.0) || !(cfg.x_max >= 0.0)) throw UsageError("invalid --step or --x-max");
  require_positive(cfg.draws, "--draws");
  require_positive(cfg.stride, "--stride");
  std::string csv = csv_row({"x", "empirical_v", "theoretical_v", "bound"});
  for (const auto& row : validate_variance_bound(cfg)) {
    csv += csv_row({csv_number(row.x), csv_number(row.empirical), csv_number(row.theoretical),
                    csv_number(row.bound)});
  }
  emit(csv, a.out, out);
  return kExitOk;
}

int cmd_contour(const ExperimentArgs& a, std::ostream& out) {
  require_positive(a.res, "--res");
  if (!(a.x1_max > 0.0)) throw UsageError("--x1-max must be > 0");
  std::string csv = csv_row({"x1", "x2", "e_down", "e_up", "p"});
  for (const auto& c : contour_grid({0.0, a.x1_max}, {0.0, 1.0}, a.res, a.res)) {
    csv += csv_row({csv_number(c.x1), csv_number(c.x2), csv_number(c.branches.e_down),
                    csv_number(c.branches.e_up), csv_number(c.branches.p)});
  }
  emit(csv, a.out, out);
  return kExitOk;
}

void add_common(CLI::App& sub, ExperimentArgs& a, bool with_modes) {
  if (with_modes) {
    sub.add_option("--modes", a.modes, "Comma-separated rounding modes (" +
                                           std::string(kModeList) + ")")
        ->delimiter(',')
        ->capture_default_str();
    sub.add_option("--table", a.tables, "Distribution file usable as a table mode")
        ->check(CLI::ExistingFile);
    sub.add_option("--reps", a.reps, "Repetitions per stochastic mode")->capture_default_str();
  }
  sub.add_option("--seed", a.seed, "Seed for every random draw")->capture_default_str();
  sub.add_option("--out", a.out, "Output CSV path (stdout if omitted)");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deterministic and stochastic rounding experiments", "srlab"};
  app.require_subcommand(1);

  OptimizeArgs opt;
  auto* optimize = app.add_subcommand("optimize", "Optimize a rounding probability table");
  optimize->add_option("--preset", opt.preset,
                       "bias-min, var-min-floor, var-min-ceil, nearest-like, d1 or d2");
  optimize->add_option("--config", opt.config_path, "JSON file with MOP settings")
      ->check(CLI::ExistingFile);
  optimize->add_option("--label", opt.label, "Table label (defaults to the preset name)");
  optimize->add_option("--grid", opt.grid, "Number of fractional-part nodes")
      ->capture_default_str();
  opt.pso.add_to(*optimize);
  optimize->add_option("--out", opt.out, "Output distribution file")->required();

  RoundArgs rnd;
  auto* round = app.add_subcommand("round", "Round a value");
  round->add_option("x", rnd.x, "Value to round")->required();
  round->add_option("--mode", rnd.mode, std::string("Rounding mode: ") + kModeList)
      ->required();
  round->add_option("--n", rnd.digits, "Fractional digits")->capture_default_str();
  round->add_option("--base", rnd.base, "binary or decimal")->capture_default_str();
  round->add_option("--seed", rnd.seed, "Seed")->capture_default_str();
  round->add_option("--count", rnd.count, "Draws for stochastic modes")->capture_default_str();
  round->add_option("--table", rnd.tables, "Distribution file")->check(CLI::ExistingFile);

  ExperimentArgs ex;
  auto* experiment = app.add_subcommand("experiment", "Run a numerical study");
  experiment->require_subcommand(1);

  auto* sum = experiment->add_subcommand("sum", "Rounded summation over input cases");
  add_common(*sum, ex, true);
  sum->add_option("--case", ex.cases, "Cases I, II, III, IV")
      ->delimiter(',')
      ->capture_default_str();

  auto* sqrt_cmd = experiment->add_subcommand("sqrt", "Newton square root under rounding");
  add_common(*sqrt_cmd, ex, true);
  sqrt_cmd->add_option("--a", ex.a_values, "Comma-separated inputs")
      ->delimiter(',')
      ->capture_default_str();
  sqrt_cmd->add_option("--digits", ex.digits, "Decimal digits of the grid")
      ->capture_default_str();

  auto* dot = experiment->add_subcommand("dot", "Rounded inner products of sine vectors");
  add_common(*dot, ex, true);
  dot->add_option("--sizes", ex.sizes, "Comma-separated vector lengths")
      ->delimiter(',')
      ->capture_default_str();
  dot->add_option("--digits", ex.dot_digits, "Decimal digits of the grid")
      ->capture_default_str();

  auto* varbound = experiment->add_subcommand("varbound", "Empirical SR variance vs. bound");
  add_common(*varbound, ex, false);
  varbound->add_option("--bits", ex.varbound.n_bits, "Fractional bits")->capture_default_str();
  varbound->add_option("--x-max", ex.varbound.x_max, "Upper end of x")->capture_default_str();
  varbound->add_option("--step", ex.varbound.step, "Spacing of x")->capture_default_str();
  varbound->add_option("--draws", ex.varbound.draws, "Draws per x")->capture_default_str();
  varbound->add_option("--stride", ex.varbound.stride, "Keep every stride-th x")
      ->capture_default_str();

  auto* contour = experiment->add_subcommand("contour", "Worst-case product error grid");
  add_common(*contour, ex, false);
  contour->add_option("--res", ex.res, "Cells per axis")->capture_default_str();
  contour->add_option("--x1-max", ex.x1_max, "Upper end of x1")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*optimize) return cmd_optimize(opt, out);
    if (*round) return cmd_round(rnd, out);
    if (*sum) return cmd_sum(ex, out);
    if (*sqrt_cmd) return cmd_sqrt(ex, out);
    if (*dot) return cmd_dot(ex, out);
    if (*varbound) return cmd_varbound(ex, out);
    if (*contour) return cmd_contour(ex, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace srlab
