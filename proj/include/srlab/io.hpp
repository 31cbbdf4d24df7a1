// Copyright 2026 The srlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>

#include "srlab/dist_opt.hpp"
#include "srlab/rounding.hpp"

namespace srlab {

inline constexpr int kDistributionFormatVersion = 1;

/// An optimized probability table together with the configuration that
/// produced it.
struct DistributionFile {
  int format_version = kDistributionFormatVersion;
  ProbabilityTable table;
  double delta = 1.0;
  MopConfig mop;
  PsoConfig pso;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File content is malformed or fails validation.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pretty-printed JSON; doubles are written in shortest round-trip form so
/// reading the text back yields bit-identical values.
[[nodiscard]] std::string to_json(const DistributionFile& file);
[[nodiscard]] DistributionFile distribution_from_json(std::string_view text);

void write_distribution(const std::filesystem::path& path, const DistributionFile& file);
[[nodiscard]] DistributionFile read_distribution(const std::filesystem::path& path);

[[nodiscard]] std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

/// %.17g, which round-trips every double.
[[nodiscard]] std::string csv_number(double v);

/// Comma-joined fields terminated by a newline.
[[nodiscard]] std::string csv_row(std::initializer_list<std::string_view> fields);

}  // namespace srlab
