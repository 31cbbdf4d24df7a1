// Copyright 2026 The srlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "srlab/random_stream.hpp"

namespace srlab {

enum class Base { Binary, Decimal };

/// Grid of representable values: multiples of delta = 1 / theta with
/// theta = base^digits.
class RoundingSpec {
 public:
  /// Integer rounding (delta = 1).
  RoundingSpec() = default;
  RoundingSpec(int digits, Base base);

  static RoundingSpec integer() { return {}; }
  static RoundingSpec binary(int bits) { return {bits, Base::Binary}; }
  static RoundingSpec decimal(int digits) { return {digits, Base::Decimal}; }

  [[nodiscard]] int digits() const noexcept { return digits_; }
  [[nodiscard]] Base base() const noexcept { return base_; }
  [[nodiscard]] double theta() const noexcept { return theta_; }
  [[nodiscard]] double delta() const noexcept { return delta_; }

 private:
  int digits_ = 0;
  Base base_ = Base::Binary;
  double theta_ = 1.0;
  double delta_ = 1.0;
};

enum class DeterministicMode { Floor, Ceiling, HalfUp, HalfDown, HalfEven, HalfOdd };

std::string_view to_string(DeterministicMode mode);

/// Tabulated probability of rounding down as a function of the fractional
/// part f in [0, 1], evaluated by linear interpolation.
class ProbabilityTable {
 public:
  ProbabilityTable(std::vector<double> grid, std::vector<double> p,
                   std::string label);

  [[nodiscard]] const std::vector<double>& grid() const noexcept { return grid_; }
  [[nodiscard]] const std::vector<double>& p() const noexcept { return p_; }
  [[nodiscard]] const std::string& label() const noexcept { return label_; }
  [[nodiscard]] std::size_t size() const noexcept { return grid_.size(); }

  /// Probability of rounding down at fractional part f. Throws
  /// std::domain_error for f outside [0, 1].
  [[nodiscard]] double probability(double f) const;

  friend bool operator==(const ProbabilityTable&, const ProbabilityTable&) = default;

 private:
  std::vector<double> grid_;
  std::vector<double> p_;
  std::string label_;
};

/// Closed-form stochastic rounding: p_down = 1 - frac.
struct StochasticSR {
  friend bool operator==(StochasticSR, StochasticSR) = default;
};

struct StochasticTable {
  ProbabilityTable table;
  friend bool operator==(const StochasticTable&, const StochasticTable&) = default;
};

using RoundingMode = std::variant<DeterministicMode, StochasticSR, StochasticTable>;

[[nodiscard]] bool is_stochastic(const RoundingMode& mode) noexcept;

/// Value scaled onto the integer grid: theta * x = floor + frac with
/// frac in [0, 1). Scaled values within one ulp of an integer or a
/// half-integer are snapped onto it, so grid values report frac == 0 and
/// decimal ties such as 7.1535 at delta = 1e-3 report frac == 0.5.
struct ScaledValue {
  double floor;
  double frac;
};

[[nodiscard]] ScaledValue scale_to_grid(double x, const RoundingSpec& spec);

[[nodiscard]] double floor_to_grid(double x, const RoundingSpec& spec);

[[nodiscard]] double round_deterministic(double x, DeterministicMode mode,
                                         const RoundingSpec& spec);

struct SrProbabilities {
  double p_down;
  double p_up;
};

[[nodiscard]] SrProbabilities sr_probabilities(double x, const RoundingSpec& spec);

[[nodiscard]] double table_probability(double f, const ProbabilityTable& table);

/// Stochastic rounding of x. Consumes exactly one uniform draw from rng,
/// including for inputs already on the grid (which are returned unchanged).
/// Throws std::invalid_argument for deterministic modes.
double round_stochastic(double x, const RoundingMode& mode,
                        const RoundingSpec& spec, RandomStream& rng);

/// Dispatches on the mode; deterministic modes leave rng untouched.
double round_value(double x, const RoundingMode& mode, const RoundingSpec& spec,
                   RandomStream& rng);

}  // namespace srlab
