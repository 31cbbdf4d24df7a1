// Copyright 2026 The srlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "srlab/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace srlab {

void CompensatedSum::add(double v) noexcept {
  const double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v)) {
    comp_ += (sum_ - t) + v;
  } else {
    comp_ += (v - t) + sum_;
  }
  sum_ = t;
}

double compensated_sum(std::span<const double> xs) noexcept {
  CompensatedSum acc;
  for (double v : xs) acc.add(v);
  return acc.value();
}

namespace {

double mean_of(std::span<const double> xs) {
  return compensated_sum(xs) / static_cast<double>(xs.size());
}

}  // namespace

double population_variance(std::span<const double> samples) {
  if (samples.empty()) throw std::domain_error("variance of an empty sample");
  const double mu = mean_of(samples);
  CompensatedSum acc;
  for (double v : samples) {
    const double d = v - mu;
    acc.add(d * d);
  }
  return acc.value() / static_cast<double>(samples.size());
}

double sr_variance_theoretical(double x, const RoundingSpec& spec) {
  const double frac = scale_to_grid(x, spec).frac;
  return (frac - frac * frac) / (spec.theta() * spec.theta());
}

double variance_bound(const RoundingSpec& spec) noexcept {
  const double half_step = 1.0 / (2.0 * spec.theta());
  return half_step * half_step;
}

StatsSummary summarize(std::span<const double> rounded_outcomes, double exact) {
  if (rounded_outcomes.empty()) throw std::domain_error("summary of an empty sample");
  StatsSummary s;
  s.n_samples = rounded_outcomes.size();
  s.mu = mean_of(rounded_outcomes);
  s.abs_bias = std::abs(s.mu - exact);
  s.variance = population_variance(rounded_outcomes);
  if (exact != 0.0) {
    CompensatedSum acc;
    for (double v : rounded_outcomes) acc.add(std::abs(v - exact));
    s.mean_abs_rel_err =
        acc.value() / static_cast<double>(s.n_samples) / std::abs(exact);
  }
  return s;
}

WorstCaseBranches worst_case_rel_error(double x1, double x2) {
  if (!(x1 > 0.0) || !std::isfinite(x1))
    throw std::invalid_argument("worst-case error needs x1 > 0");
  if (!(x2 > 0.0 && x2 < 1.0))
    throw std::invalid_argument("worst-case error needs x2 in (0, 1)");
  const double i = std::floor(x1);
  if (i == x1) throw std::invalid_argument("worst-case error needs non-integer x1");
  const double prod = x1 * x2;
  return {std::abs(1.0 - i / prod), std::abs(1.0 - (i + 1.0) / prod), 1.0 - (x1 - i)};
}

std::vector<ContourCell> contour_grid(Range x1_range, Range x2_range,
                                      std::size_t x1_cells, std::size_t x2_cells) {
  if (x1_cells == 0 || x2_cells == 0)
    throw std::invalid_argument("contour grid needs at least one cell per axis");
  if (!(x1_range.hi > x1_range.lo) || !(x2_range.hi > x2_range.lo))
    throw std::invalid_argument("contour ranges must be non-empty");
  const double h1 = (x1_range.hi - x1_range.lo) / static_cast<double>(x1_cells);
  const double h2 = (x2_range.hi - x2_range.lo) / static_cast<double>(x2_cells);
  std::vector<ContourCell> cells;
  cells.reserve(x1_cells * x2_cells);
  for (std::size_t a = 0; a < x1_cells; ++a) {
    const double x1 = x1_range.lo + (static_cast<double>(a) + 0.5) * h1;
    for (std::size_t b = 0; b < x2_cells; ++b) {
      const double x2 = x2_range.lo + (static_cast<double>(b) + 0.5) * h2;
      cells.push_back({x1, x2, worst_case_rel_error(x1, x2)});
    }
  }
  return cells;
}

}  // namespace srlab
