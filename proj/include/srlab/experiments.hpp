// Copyright 2026 The srlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "srlab/random_stream.hpp"
#include "srlab/rounding.hpp"
#include "srlab/stats.hpp"

namespace srlab {

/// A rounding mode together with the name it is reported under.
struct NamedMode {
  std::string label;
  RoundingMode mode;
};

/// Summation input families:
///   I   10,000 repeated values in [0, 1]
///   II  10,000 repeated values in [0, 2]
///   III 10 distinct values in [0, 1]
///   IV  20 distinct values in [0, 2]
enum class CaseId { I, II, III, IV };

std::string_view to_string(CaseId id);
std::optional<CaseId> parse_case(std::string_view name);

struct ExperimentReport {
  std::string mode_label;
  double exact = 0.0;
  // Absent when no repetition produced a value (every run broke down).
  std::optional<StatsSummary> summary;
  std::uint64_t seed = 0;
  std::size_t repetitions = 0;
  std::uint64_t inputs_digest = 0;
  std::size_t breakdowns = 0;
  std::size_t nonconverged = 0;

  [[nodiscard]] bool solvable() const noexcept { return summary.has_value(); }
};

/// FNV-1a over the bit patterns of the values.
[[nodiscard]] std::uint64_t digest(std::span<const double> values) noexcept;

/// Inputs of a summation case. Cases I/II are uniform draws quantized to one
/// decimal digit so values repeat; cases III/IV keep full precision and are
/// redrawn until pairwise distinct. Depends only on (case, seed).
[[nodiscard]] std::vector<double> gen_case_inputs(CaseId id, std::uint64_t seed);

/// Sum of the individually rounded terms; stochastic modes draw once per term.
double rounded_sum(std::span<const double> xs, const RoundingMode& mode,
                   const RoundingSpec& spec, RandomStream& rng);

inline constexpr std::size_t kDefaultRepetitions = 10'000;

/// Repeats rounded_sum over the case inputs with integer rounding.
/// Repetition r of a stochastic mode uses its own substream, so the result
/// does not depend on scheduling; deterministic modes are evaluated once.
[[nodiscard]] ExperimentReport run_summation_experiment(
    CaseId id, const NamedMode& mode, std::size_t repetitions = kDefaultRepetitions,
    std::uint64_t seed = 0);

struct NewtonConfig {
  double x0 = 1.0;
  double tol = 1e-5;
  std::size_t n_max = 100;
  RoundingSpec spec = RoundingSpec::decimal(3);
};

enum class NewtonStatus { Converged, NotConverged, Breakdown };

struct NewtonResult {
  double value = 0.0;
  std::size_t n_it = 0;
  NewtonStatus status = NewtonStatus::Converged;
};

/// Newton iteration for sqrt(a) with every intermediate rounded:
///   x_{k+1} = fl((fl(x_k) + fl(fl(a) / fl(x_k))) / 2)
/// a is rounded once up front. Stops when |x_{k+1} - x_k| <= tol; a zero
/// rounded a or iterate is reported as a breakdown.
NewtonResult newton_sqrt_rounded(double a, const RoundingMode& mode,
                                 const NewtonConfig& cfg, RandomStream& rng);

/// Breakdowns are counted and left out of the value statistics;
/// non-converged runs keep their last iterate.
[[nodiscard]] ExperimentReport run_sqrt_experiment(double a, const NamedMode& mode,
                                                   const NewtonConfig& cfg,
                                                   std::size_t repetitions = kDefaultRepetitions,
                                                   std::uint64_t seed = 0);

/// Test values of the square-root study, one per magnitude band
/// (0,1), (1,10), (10,100), (100,1000), (1000,10000).
inline constexpr double kSqrtTestValues[] = {0.30146, 6.55501, 51.16904, 357.00272,
                                             8133.27762};

struct SineVectors {
  std::vector<double> x;  // sin(y)
  std::vector<double> y;  // n points equidistant over [0, 2 pi], endpoints included
};

[[nodiscard]] SineVectors gen_sine_vectors(std::size_t n);

/// Integer grids sum fl(x_i) fl(y_i); finer grids additionally round each
/// product. Throws std::domain_error on a length mismatch.
double rounded_inner_product(std::span<const double> x, std::span<const double> y,
                             const RoundingMode& mode, const RoundingSpec& spec,
                             RandomStream& rng);

inline constexpr std::size_t kDotSizes[] = {50, 200, 400, 600, 800, 1000};

[[nodiscard]] ExperimentReport run_inner_product_experiment(
    std::size_t n, const NamedMode& mode, std::size_t repetitions = kDefaultRepetitions,
    std::uint64_t seed = 0, const RoundingSpec& spec = RoundingSpec::integer());

struct VarianceBoundRow {
  double x = 0.0;
  double empirical = 0.0;
  double theoretical = 0.0;
  double bound = 0.0;
  // Standard error of the empirical variance, from the sample fourth moment.
  double stderr_empirical = 0.0;
};

struct VarianceBoundConfig {
  int n_bits = 4;
  double x_max = 2.0;
  double step = 1e-4;
  std::size_t draws = 10'000;
  std::uint64_t seed = 0;
  // Keep every stride-th x of the full grid.
  std::size_t stride = 1;
};

/// Empirical vs. theoretical SR variance over x = k * step in [0, x_max].
/// Point k uses substream k, so subsampled runs reproduce the full grid's
/// rows exactly.
[[nodiscard]] std::vector<VarianceBoundRow> validate_variance_bound(
    const VarianceBoundConfig& cfg);

}  // namespace srlab
