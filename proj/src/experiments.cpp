// Copyright 2026 The srlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "srlab/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

#include "srlab/parallel.hpp"

namespace srlab {
namespace {

// Top-level substream tags; inputs and repetitions never share a stream.
constexpr std::uint64_t kInputsTag = 1;
constexpr std::uint64_t kRepetitionsTag = 2;

RandomStream repetition_stream(std::uint64_t seed, std::size_t r) {
  return RandomStream(seed).substream(kRepetitionsTag).substream(r);
}

// Runs body once for deterministic modes, once per repetition otherwise.
std::vector<double> repeat_outcomes(const RoundingMode& mode, std::size_t repetitions,
                                    std::uint64_t seed,
                                    const std::function<double(RandomStream&)>& body) {
  if (!is_stochastic(mode)) {
    RandomStream rng = repetition_stream(seed, 0);
    return {body(rng)};
  }
  std::vector<double> out(repetitions);
  parallel_for(repetitions, [&](std::size_t r) {
    RandomStream rng = repetition_stream(seed, r);
    out[r] = body(rng);
  });
  return out;
}

void require_repetitions(std::size_t repetitions) {
  if (repetitions == 0) throw std::invalid_argument("repetition count must be >= 1");
}

}  // namespace

std::string_view to_string(CaseId id) {
  switch (id) {
    case CaseId::I: return "I";
    case CaseId::II: return "II";
    case CaseId::III: return "III";
    case CaseId::IV: return "IV";
  }
  return "?";
}

std::optional<CaseId> parse_case(std::string_view name) {
  for (CaseId id : {CaseId::I, CaseId::II, CaseId::III, CaseId::IV}) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

std::uint64_t digest(std::span<const double> values) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (double v : values) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) {
      h ^= bits & 0xffu;
      h *= 0x100000001b3ull;
      bits >>= 8;
    }
  }
  return h;
}

std::vector<double> gen_case_inputs(CaseId id, std::uint64_t seed) {
  RandomStream rng =
      RandomStream(seed).substream(kInputsTag).substream(static_cast<std::uint64_t>(id));
  const bool wide = id == CaseId::II || id == CaseId::IV;
  const double span = wide ? 2.0 : 1.0;

  std::vector<double> xs;
  switch (id) {
    case CaseId::I:
    case CaseId::II:
      xs.resize(10'000);
      // One decimal digit: the tie value 0.5 appears about 1,000 times.
      for (double& v : xs) v = std::nearbyint(10.0 * span * rng.uniform()) / 10.0;
      break;
    case CaseId::III:
    case CaseId::IV: {
      const std::size_t n = id == CaseId::III ? 10 : 20;
      std::unordered_set<double> seen;
      while (xs.size() < n) {
        const double v = span * rng.uniform();
        if (seen.insert(v).second) xs.push_back(v);
      }
      break;
    }
  }
  return xs;
}

double rounded_sum(std::span<const double> xs, const RoundingMode& mode,
                   const RoundingSpec& spec, RandomStream& rng) {
  CompensatedSum acc;
  for (double v : xs) acc.add(round_value(v, mode, spec, rng));
  return acc.value();
}

ExperimentReport run_summation_experiment(CaseId id, const NamedMode& mode,
                                          std::size_t repetitions, std::uint64_t seed) {
  require_repetitions(repetitions);
  const auto inputs = gen_case_inputs(id, seed);
  const RoundingSpec spec = RoundingSpec::integer();

  ExperimentReport report;
  report.mode_label = mode.label;
  report.exact = compensated_sum(inputs);
  report.seed = seed;
  report.repetitions = repetitions;
  report.inputs_digest = digest(inputs);
  const auto outcomes = repeat_outcomes(mode.mode, repetitions, seed, [&](RandomStream& rng) {
    return rounded_sum(inputs, mode.mode, spec, rng);
  });
  report.summary = summarize(outcomes, report.exact);
  return report;
}

NewtonResult newton_sqrt_rounded(double a, const RoundingMode& mode, const NewtonConfig& cfg,
                                 RandomStream& rng) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::domain_error("sqrt input must be > 0");
  if (!(cfg.tol > 0.0) || cfg.n_max == 0) throw std::invalid_argument("invalid Newton config");
  const auto fl = [&](double v) { return round_value(v, mode, cfg.spec, rng); };

  const double fa = fl(a);
  if (fa == 0.0) return {0.0, 0, NewtonStatus::Breakdown};
  double x = fl(cfg.x0);
  for (std::size_t k = 1; k <= cfg.n_max; ++k) {
    if (x == 0.0) return {x, k - 1, NewtonStatus::Breakdown};
    const double quotient = fl(fa / x);
    const double next = fl(0.5 * (x + quotient));
    if (std::abs(next - x) <= cfg.tol) return {next, k, NewtonStatus::Converged};
    x = next;
  }
  return {x, cfg.n_max, NewtonStatus::NotConverged};
}

ExperimentReport run_sqrt_experiment(double a, const NamedMode& mode, const NewtonConfig& cfg,
                                     std::size_t repetitions, std::uint64_t seed) {
  require_repetitions(repetitions);
  ExperimentReport report;
  report.mode_label = mode.label;
  report.exact = std::sqrt(a);
  report.seed = seed;
  report.repetitions = repetitions;
  report.inputs_digest = digest(std::span<const double>(&a, 1));

  const std::size_t runs = is_stochastic(mode.mode) ? repetitions : 1;
  std::vector<NewtonResult> results(runs);
  parallel_for(runs, [&](std::size_t r) {
    RandomStream rng = repetition_stream(seed, r);
    results[r] = newton_sqrt_rounded(a, mode.mode, cfg, rng);
  });

  // A deterministic run stands for every repetition.
  const std::size_t weight = repetitions / runs;
  std::vector<double> values;
  CompensatedSum iterations;
  for (const auto& res : results) {
    if (res.status == NewtonStatus::Breakdown) {
      report.breakdowns += weight;
      continue;
    }
    if (res.status == NewtonStatus::NotConverged) report.nonconverged += weight;
    values.push_back(res.value);
    iterations.add(static_cast<double>(res.n_it));
  }
  if (!values.empty()) {
    auto summary = summarize(values, report.exact);
    summary.n_it_mean = iterations.value() / static_cast<double>(values.size());
    report.summary = summary;
  }
  return report;
}

SineVectors gen_sine_vectors(std::size_t n) {
  if (n < 2) throw std::invalid_argument("sine vectors need n >= 2");
  SineVectors v;
  v.x.resize(n);
  v.y.resize(n);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    v.y[i] = static_cast<double>(i) * step;
    v.x[i] = std::sin(v.y[i]);
  }
  v.y.back() = 2.0 * std::numbers::pi;
  return v;
}

double rounded_inner_product(std::span<const double> x, std::span<const double> y,
                             const RoundingMode& mode, const RoundingSpec& spec,
                             RandomStream& rng) {
  if (x.size() != y.size()) throw std::domain_error("inner product length mismatch");
  const bool integer_grid = spec.theta() == 1.0;
  CompensatedSum acc;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = round_value(x[i], mode, spec, rng);
    const double yi = round_value(y[i], mode, spec, rng);
    // Products of integers are already on the integer grid.
    acc.add(integer_grid ? xi * yi : round_value(xi * yi, mode, spec, rng));
  }
  return acc.value();
}

ExperimentReport run_inner_product_experiment(std::size_t n, const NamedMode& mode,
                                              std::size_t repetitions, std::uint64_t seed,
                                              const RoundingSpec& spec) {
  require_repetitions(repetitions);
  const auto vectors = gen_sine_vectors(n);

  ExperimentReport report;
  report.mode_label = mode.label;
  CompensatedSum exact;
  for (std::size_t i = 0; i < n; ++i) {
    // Two-product: the rounding error of x*y is recovered exactly by fma.
    const double prod = vectors.x[i] * vectors.y[i];
    exact.add(prod);
    exact.add(std::fma(vectors.x[i], vectors.y[i], -prod));
  }
  report.exact = exact.value();
  report.seed = seed;
  report.repetitions = repetitions;
  report.inputs_digest = digest(vectors.x) ^ digest(vectors.y);
  const auto outcomes = repeat_outcomes(mode.mode, repetitions, seed, [&](RandomStream& rng) {
    return rounded_inner_product(vectors.x, vectors.y, mode.mode, spec, rng);
  });
  report.summary = summarize(outcomes, report.exact);
  return report;
}

std::vector<VarianceBoundRow> validate_variance_bound(const VarianceBoundConfig& cfg) {
  if (!(cfg.step > 0.0) || !(cfg.x_max >= 0.0) || cfg.draws == 0 || cfg.stride == 0)
    throw std::invalid_argument("invalid variance-bound configuration");
  const RoundingSpec spec = RoundingSpec::binary(cfg.n_bits);
  const double bound = variance_bound(spec);
  const auto points = static_cast<std::size_t>(std::floor(cfg.x_max / cfg.step + 0.5)) + 1;
  const std::size_t kept = (points + cfg.stride - 1) / cfg.stride;
  const RandomStream root(cfg.seed);

  std::vector<VarianceBoundRow> rows(kept);
  parallel_for(kept, [&](std::size_t idx) {
    const std::size_t k = idx * cfg.stride;
    const double x = static_cast<double>(k) * cfg.step;
    RandomStream rng = root.substream(k);
    std::vector<double> samples(cfg.draws);
    for (double& s : samples) s = round_stochastic(x, StochasticSR{}, spec, rng);

    const double n = static_cast<double>(cfg.draws);
    const double mu = compensated_sum(samples) / n;
    CompensatedSum m2, m4;
    for (double s : samples) {
      const double d2 = (s - mu) * (s - mu);
      m2.add(d2);
      m4.add(d2 * d2);
    }
    const double var = m2.value() / n;
    const double fourth = m4.value() / n;
    rows[idx] = {x, var, sr_variance_theoretical(x, spec), bound,
                 std::sqrt(std::max(fourth - var * var, 0.0) / n)};
  });
  return rows;
}

}  // namespace srlab
