// Copyright 2026 The srlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "srlab/random_stream.hpp"
#include "srlab/rounding.hpp"

namespace srlab {

/// Scalarized variance/bias problem for the probability p of rounding down:
///
///   theta1 * V(p)^2 + theta2 * B(p)^2 + k1 [V(p) >= v_max] + k2 [|B(p)| >= b_max]
///
/// with V(p) = delta^2 (p - p^2) and B(p) = delta ((1 - p) - f).
struct MopConfig {
  double theta1 = 0.5;
  double theta2 = 0.5;
  std::optional<double> v_max;
  std::optional<double> b_max;
  double k1 = 0.0;
  double k2 = 0.0;
  double delta = 1.0;

  /// Throws std::invalid_argument when the weights do not sum to one, a
  /// penalty is set without its limit (or vice versa), or a value is out
  /// of range.
  void validate() const;
};

inline constexpr double kDefaultPenalty = 1e10;

struct PsoConfig {
  std::size_t swarm_size = 50;
  std::size_t iterations = 200;
  double inertia = 0.729;
  double cognitive = 1.49445;
  double social = 1.49445;
  double velocity_clamp = 0.5;
  std::uint64_t seed = 0;

  void validate() const;
};

enum class Preset { BiasMin, VarMinFloor, VarMinCeil, NearestLike, D1, D2 };

std::string_view to_string(Preset preset);
std::optional<Preset> parse_preset(std::string_view name);

[[nodiscard]] MopConfig preset_config(Preset preset);

/// Endpoint chosen when p = 0 or p = 1 is as good as the swarm optimum.
/// Variance-only objectives are minimized by both endpoints.
enum class EndpointPreference { None, Floor, Ceiling };

[[nodiscard]] EndpointPreference preset_preference(Preset preset) noexcept;

[[nodiscard]] double variance_of_p(double p, double delta);
[[nodiscard]] double bias_of_p(double p, double f, double delta);
[[nodiscard]] double objective(double p, double f, const MopConfig& cfg);

struct PsoResult {
  double position = 0.0;
  double fitness = 0.0;
};

/// Particle swarm minimization over [0, 1].
///
/// Particles follow the constriction-factor update towards their own best
/// and the best of a ring neighbourhood {i - 1, i, i + 1}; the particle
/// holding the swarm best instead searches uniformly around it with an
/// adaptive radius.
/// Velocities are clamped to +/- velocity_clamp; a particle leaving [0, 1]
/// is put back on the bound with zero velocity. Deterministic given the
/// stream.
PsoResult pso_minimize(const std::function<double(double)>& fitness,
                       const PsoConfig& cfg, RandomStream rng);

inline PsoResult pso_minimize(const std::function<double(double)>& fitness,
                              const PsoConfig& cfg) {
  return pso_minimize(fitness, cfg, RandomStream(cfg.seed));
}

/// Solves the scalarized problem independently at each fractional-part node
/// f_j = j / (grid_size - 1). Node j uses RandomStream(pso.seed).substream(j),
/// so results do not depend on how nodes are scheduled.
[[nodiscard]] ProbabilityTable optimize_table(const MopConfig& cfg,
                                              std::size_t grid_size,
                                              const PsoConfig& pso,
                                              std::string label,
                                              EndpointPreference preference =
                                                  EndpointPreference::None);

[[nodiscard]] ProbabilityTable optimize_table(Preset preset, std::size_t grid_size,
                                              const PsoConfig& pso);

inline constexpr std::size_t kDefaultGridSize = 1001;

}  // namespace srlab
