// Copyright 2026 The srlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "srlab/dist_opt.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "srlab/parallel.hpp"

namespace srlab {
namespace {

void require_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("probability outside [0, 1]");
}

struct PresetName {
  Preset preset;
  std::string_view name;
};

constexpr std::array<PresetName, 6> kPresetNames{{
    {Preset::BiasMin, "bias-min"},
    {Preset::VarMinFloor, "var-min-floor"},
    {Preset::VarMinCeil, "var-min-ceil"},
    {Preset::NearestLike, "nearest-like"},
    {Preset::D1, "d1"},
    {Preset::D2, "d2"},
}};

}  // namespace

void MopConfig::validate() const {
  if (theta1 < 0.0 || theta2 < 0.0) throw std::invalid_argument("weights must be >= 0");
  if (std::abs(theta1 + theta2 - 1.0) > 1e-12)
    throw std::invalid_argument("weights theta1 + theta2 must equal 1");
  if (k1 < 0.0 || k2 < 0.0) throw std::invalid_argument("penalties must be >= 0");
  if (v_max.has_value() != (k1 > 0.0))
    throw std::invalid_argument("k1 must be positive iff v_max is set");
  if (b_max.has_value() != (k2 > 0.0))
    throw std::invalid_argument("k2 must be positive iff b_max is set");
  if (v_max && !(*v_max > 0.0)) throw std::invalid_argument("v_max must be > 0");
  if (b_max && !(*b_max > 0.0)) throw std::invalid_argument("b_max must be > 0");
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");
}

void PsoConfig::validate() const {
  if (swarm_size < 2) throw std::invalid_argument("swarm size must be >= 2");
  if (!(velocity_clamp > 0.0)) throw std::invalid_argument("velocity clamp must be > 0");
}

std::string_view to_string(Preset preset) {
  for (const auto& [p, name] : kPresetNames) {
    if (p == preset) return name;
  }
  return "?";
}

std::optional<Preset> parse_preset(std::string_view name) {
  for (const auto& [p, n] : kPresetNames) {
    if (n == name) return p;
  }
  return std::nullopt;
}

MopConfig preset_config(Preset preset) {
  MopConfig cfg;
  switch (preset) {
    case Preset::BiasMin:
      cfg.theta1 = 0.0;
      cfg.theta2 = 1.0;
      break;
    case Preset::VarMinFloor:
    case Preset::VarMinCeil:
      cfg.theta1 = 1.0;
      cfg.theta2 = 0.0;
      break;
    case Preset::NearestLike:
      cfg.theta1 = 0.98;
      cfg.theta2 = 0.02;
      break;
    case Preset::D1:
      break;
    case Preset::D2:
      cfg.b_max = 0.05;
      cfg.k2 = kDefaultPenalty;
      break;
  }
  return cfg;
}

EndpointPreference preset_preference(Preset preset) noexcept {
  switch (preset) {
    case Preset::VarMinFloor: return EndpointPreference::Floor;
    case Preset::VarMinCeil: return EndpointPreference::Ceiling;
    default: return EndpointPreference::None;
  }
}

double variance_of_p(double p, double delta) {
  require_probability(p);
  return delta * delta * (p - p * p);
}

double bias_of_p(double p, double f, double delta) {
  require_probability(p);
  if (!(f >= 0.0 && f <= 1.0)) throw std::domain_error("fractional part outside [0, 1]");
  return delta * ((1.0 - p) - f);
}

double objective(double p, double f, const MopConfig& cfg) {
  const double v = variance_of_p(p, cfg.delta);
  const double b = bias_of_p(p, f, cfg.delta);
  double value = cfg.theta1 * v * v + cfg.theta2 * b * b;
  // The indicator is closed: a constraint at equality is already penalized.
  if (cfg.v_max && v >= *cfg.v_max) value += cfg.k1;
  if (cfg.b_max && std::abs(b) >= *cfg.b_max) value += cfg.k2;
  return value;
}

PsoResult pso_minimize(const std::function<double(double)>& fitness,
                       const PsoConfig& cfg, RandomStream rng) {
  cfg.validate();
  const std::size_t n = cfg.swarm_size;
  const double vmax = cfg.velocity_clamp;
  std::vector<double> x(n), v(n, 0.0), best_x(n), best_f(n);

  std::size_t g = 0;
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = rng.uniform();
    best_x[i] = x[i];
    best_f[i] = fitness(x[i]);
    if (best_f[i] < best_f[g]) g = i;
  }

  // Guaranteed-convergence step for the global-best particle: it samples
  // uniformly within rho of the best position, and rho doubles after a run
  // of successes and halves after a run of failures.
  constexpr int kSuccessRun = 15;
  constexpr int kFailureRun = 5;
  double rho = 0.1;
  int successes = 0;
  int failures = 0;

  for (std::size_t it = 0; it < cfg.iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      const double r1 = rng.uniform();
      const double r2 = rng.uniform();
      const double r3 = rng.uniform();
      const bool leader = i == g;
      const double leader_f = best_f[g];

      if (leader) {
        v[i] = best_x[g] - x[i] + cfg.inertia * v[i] + rho * (1.0 - 2.0 * r3);
      } else {
        // Ring neighbourhood {i - 1, i, i + 1}.
        const std::size_t left = (i + n - 1) % n;
        const std::size_t right = (i + 1) % n;
        std::size_t local = i;
        if (best_f[left] < best_f[local]) local = left;
        if (best_f[right] < best_f[local]) local = right;
        v[i] = cfg.inertia * v[i] + cfg.cognitive * r1 * (best_x[i] - x[i]) +
               cfg.social * r2 * (best_x[local] - x[i]);
      }
      v[i] = std::clamp(v[i], -vmax, vmax);
      x[i] += v[i];
      if (x[i] < 0.0 || x[i] > 1.0) {
        x[i] = std::clamp(x[i], 0.0, 1.0);
        v[i] = 0.0;
      }

      const double f = fitness(x[i]);
      if (f < best_f[i]) {
        best_f[i] = f;
        best_x[i] = x[i];
        if (f < best_f[g]) g = i;
      }
      if (leader) {
        if (best_f[g] < leader_f) {
          ++successes;
          failures = 0;
        } else {
          ++failures;
          successes = 0;
        }
        if (successes > kSuccessRun) rho *= 2.0;
        if (failures > kFailureRun) rho *= 0.5;
      }
    }
  }
  return {best_x[g], best_f[g]};
}

ProbabilityTable optimize_table(const MopConfig& cfg, std::size_t grid_size,
                                const PsoConfig& pso, std::string label,
                                EndpointPreference preference) {
  cfg.validate();
  pso.validate();
  if (grid_size < 2) throw std::invalid_argument("grid size must be >= 2");

  std::vector<double> grid(grid_size), p(grid_size);
  const double last = static_cast<double>(grid_size - 1);
  for (std::size_t j = 0; j < grid_size; ++j) grid[j] = static_cast<double>(j) / last;

  const RandomStream root(pso.seed);
  parallel_for(grid_size, [&](std::size_t j) {
    const double f = grid[j];
    const auto result =
        pso_minimize([&](double q) { return objective(q, f, cfg); }, pso, root.substream(j));
    double best = result.position;
    if (preference != EndpointPreference::None) {
      const double end = preference == EndpointPreference::Floor ? 1.0 : 0.0;
      if (objective(end, f, cfg) <= result.fitness) best = end;
    }
    p[j] = best;
  });
  return {std::move(grid), std::move(p), std::move(label)};
}

ProbabilityTable optimize_table(Preset preset, std::size_t grid_size, const PsoConfig& pso) {
  return optimize_table(preset_config(preset), grid_size, pso, std::string(to_string(preset)),
                        preset_preference(preset));
}

}  // namespace srlab
