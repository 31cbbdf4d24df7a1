// Copyright 2026 The srlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "srlab/rounding.hpp"

namespace srlab {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) noexcept;
  [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

[[nodiscard]] double compensated_sum(std::span<const double> xs) noexcept;

struct StatsSummary {
  double mu = 0.0;
  double abs_bias = 0.0;
  double variance = 0.0;
  // Absent when the exact value is zero.
  std::optional<double> mean_abs_rel_err;
  std::size_t n_samples = 0;
  std::optional<double> n_it_mean;
};

/// (1/N) sum (x_i - mean)^2. Throws std::domain_error on empty input.
[[nodiscard]] double population_variance(std::span<const double> samples);

/// Exact variance of SR rounding of x onto the grid: (frac - frac^2) / theta^2.
[[nodiscard]] double sr_variance_theoretical(double x, const RoundingSpec& spec);

/// Upper bound (1 / (2 theta))^2 of sr_variance_theoretical.
[[nodiscard]] double variance_bound(const RoundingSpec& spec) noexcept;

/// Mean, |bias|, population variance and mean absolute relative error of
/// rounded outcomes against the exact value.
[[nodiscard]] StatsSummary summarize(std::span<const double> rounded_outcomes,
                                     double exact);

/// Relative errors of the two branches of a stochastically rounded product
/// fl(x1) * fl(x2) in the worst case fl(x2) = 1, with x1 in (i, i + 1).
struct WorstCaseBranches {
  double e_down = 0.0;  // fl(x1) = i, probability p
  double e_up = 0.0;    // fl(x1) = i + 1, probability 1 - p
  double p = 0.0;
};

/// Throws std::invalid_argument if x1 <= 0, x1 is an integer, or x2 is not
/// in the open interval (0, 1).
[[nodiscard]] WorstCaseBranches worst_case_rel_error(double x1, double x2);

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct ContourCell {
  double x1 = 0.0;
  double x2 = 0.0;
  WorstCaseBranches branches;
};

/// Cell-centred grid of worst_case_rel_error, x1-major. Cell centres sit at
/// half-cell offsets from the range bounds.
[[nodiscard]] std::vector<ContourCell> contour_grid(Range x1_range, Range x2_range,
                                                    std::size_t x1_cells,
                                                    std::size_t x2_cells);

}  // namespace srlab
