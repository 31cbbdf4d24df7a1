// Copyright 2026 The srlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "srlab/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace srlab {
namespace {

void require_finite(double x) {
  if (!std::isfinite(x)) throw std::domain_error("rounding input is not finite");
}

double ulp_of(double v) {
  const double a = std::abs(v);
  return std::nextafter(a, std::numeric_limits<double>::infinity()) - a;
}

bool is_even_integer(double v) { return std::fmod(v, 2.0) == 0.0; }

// Normalizes -0.0 so results print as 0.
double unscale(double scaled, const RoundingSpec& spec) {
  return scaled / spec.theta() + 0.0;
}

}  // namespace

RoundingSpec::RoundingSpec(int digits, Base base) : digits_(digits), base_(base) {
  if (digits < 0) throw std::invalid_argument("fractional digit count must be >= 0");
  if (base == Base::Decimal && digits > 22)
    throw std::invalid_argument("decimal digit count must be <= 22");
  if (base == Base::Binary && digits > 1000)
    throw std::invalid_argument("binary digit count must be <= 1000");
  // Both loops are exact: 10^22 and 2^1000 are representable doubles.
  const double b = base == Base::Binary ? 2.0 : 10.0;
  theta_ = 1.0;
  for (int i = 0; i < digits; ++i) theta_ *= b;
  delta_ = 1.0 / theta_;
}

std::string_view to_string(DeterministicMode mode) {
  switch (mode) {
    case DeterministicMode::Floor: return "floor";
    case DeterministicMode::Ceiling: return "ceil";
    case DeterministicMode::HalfUp: return "half-up";
    case DeterministicMode::HalfDown: return "half-down";
    case DeterministicMode::HalfEven: return "half-even";
    case DeterministicMode::HalfOdd: return "half-odd";
  }
  return "?";
}

ProbabilityTable::ProbabilityTable(std::vector<double> grid, std::vector<double> p,
                                   std::string label)
    : grid_(std::move(grid)), p_(std::move(p)), label_(std::move(label)) {
  if (grid_.size() < 2) throw std::invalid_argument("probability table needs >= 2 nodes");
  if (grid_.size() != p_.size())
    throw std::invalid_argument("probability table grid and p differ in length");
  if (grid_.front() != 0.0 || grid_.back() != 1.0)
    throw std::invalid_argument("probability table grid must span [0, 1]");
  for (std::size_t j = 1; j < grid_.size(); ++j) {
    if (!(grid_[j] > grid_[j - 1]))
      throw std::invalid_argument("probability table grid must be strictly increasing");
  }
  for (double v : p_) {
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument("probability table entries must lie in [0, 1]");
  }
}

double ProbabilityTable::probability(double f) const {
  if (!(f >= 0.0 && f <= 1.0)) throw std::domain_error("fractional part outside [0, 1]");
  const auto hi = std::upper_bound(grid_.begin(), grid_.end(), f);
  if (hi == grid_.end()) return p_.back();
  const auto j = static_cast<std::size_t>(hi - grid_.begin());
  // grid_[j-1] <= f < grid_[j]
  const double g0 = grid_[j - 1];
  if (f == g0) return p_[j - 1];
  const double t = (f - g0) / (grid_[j] - g0);
  return std::clamp(p_[j - 1] + t * (p_[j] - p_[j - 1]), 0.0, 1.0);
}

double table_probability(double f, const ProbabilityTable& table) {
  return table.probability(f);
}

bool is_stochastic(const RoundingMode& mode) noexcept {
  return !std::holds_alternative<DeterministicMode>(mode);
}

ScaledValue scale_to_grid(double x, const RoundingSpec& spec) {
  require_finite(x);
  double s = x * spec.theta();
  // Snap onto the nearest integer or half-integer.
  const double r = std::nearbyint(2.0 * s) / 2.0;
  if (std::abs(s - r) <= ulp_of(s)) s = r;
  const double fl = std::floor(s);
  return {fl, s - fl};
}

double floor_to_grid(double x, const RoundingSpec& spec) {
  return unscale(scale_to_grid(x, spec).floor, spec);
}

double round_deterministic(double x, DeterministicMode mode, const RoundingSpec& spec) {
  const auto [fl, frac] = scale_to_grid(x, spec);
  if (frac == 0.0) return unscale(fl, spec);
  const double up = fl + 1.0;
  double r = fl;
  switch (mode) {
    case DeterministicMode::Floor: r = fl; break;
    case DeterministicMode::Ceiling: r = up; break;
    default:
      if (frac < 0.5) {
        r = fl;
      } else if (frac > 0.5) {
        r = up;
      } else {
        switch (mode) {
          case DeterministicMode::HalfUp: r = up; break;
          case DeterministicMode::HalfDown: r = fl; break;
          case DeterministicMode::HalfEven: r = is_even_integer(fl) ? fl : up; break;
          case DeterministicMode::HalfOdd: r = is_even_integer(fl) ? up : fl; break;
          default: break;
        }
      }
  }
  return unscale(r, spec);
}

SrProbabilities sr_probabilities(double x, const RoundingSpec& spec) {
  const double up = scale_to_grid(x, spec).frac;
  return {1.0 - up, up};
}

double round_stochastic(double x, const RoundingMode& mode, const RoundingSpec& spec,
                        RandomStream& rng) {
  const auto [fl, frac] = scale_to_grid(x, spec);
  const double u = rng.uniform();
  if (frac == 0.0) return unscale(fl, spec);

  double p_down = 0.0;
  if (std::holds_alternative<StochasticSR>(mode)) {
    p_down = 1.0 - frac;
  } else if (const auto* t = std::get_if<StochasticTable>(&mode)) {
    p_down = t->table.probability(frac);
  } else {
    throw std::invalid_argument("round_stochastic called with a deterministic mode");
  }
  return unscale(u < p_down ? fl : fl + 1.0, spec);
}

double round_value(double x, const RoundingMode& mode, const RoundingSpec& spec,
                   RandomStream& rng) {
  if (const auto* d = std::get_if<DeterministicMode>(&mode))
    return round_deterministic(x, *d, spec);
  return round_stochastic(x, mode, spec, rng);
}

}  // namespace srlab
