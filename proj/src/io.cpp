// Copyright 2026 The srlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "srlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

namespace srlab {
namespace {

using nlohmann::json;

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

std::optional<double> read_optional(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

json mop_to_json(const MopConfig& m) {
  json j;
  j["theta1"] = m.theta1;
  j["theta2"] = m.theta2;
  j["v_max"] = optional_number(m.v_max);
  j["b_max"] = optional_number(m.b_max);
  j["k1"] = m.k1;
  j["k2"] = m.k2;
  j["delta"] = m.delta;
  return j;
}

MopConfig mop_from_json(const json& j) {
  MopConfig m;
  m.theta1 = j.at("theta1").get<double>();
  m.theta2 = j.at("theta2").get<double>();
  m.v_max = read_optional(j, "v_max");
  m.b_max = read_optional(j, "b_max");
  m.k1 = j.at("k1").get<double>();
  m.k2 = j.at("k2").get<double>();
  m.delta = j.at("delta").get<double>();
  return m;
}

json pso_to_json(const PsoConfig& p) {
  json j;
  j["swarm_size"] = p.swarm_size;
  j["iterations"] = p.iterations;
  j["inertia"] = p.inertia;
  j["cognitive"] = p.cognitive;
  j["social"] = p.social;
  j["velocity_clamp"] = p.velocity_clamp;
  return j;
}

PsoConfig pso_from_json(const json& j, std::uint64_t seed) {
  PsoConfig p;
  p.swarm_size = j.at("swarm_size").get<std::size_t>();
  p.iterations = j.at("iterations").get<std::size_t>();
  p.inertia = j.at("inertia").get<double>();
  p.cognitive = j.at("cognitive").get<double>();
  p.social = j.at("social").get<double>();
  p.velocity_clamp = j.at("velocity_clamp").get<double>();
  p.seed = seed;
  return p;
}

}  // namespace

std::string to_json(const DistributionFile& file) {
  json j;
  j["format_version"] = file.format_version;
  j["label"] = file.table.label();
  j["delta"] = file.delta;
  j["grid"] = file.table.grid();
  j["p"] = file.table.p();
  j["provenance"] = {{"mop", mop_to_json(file.mop)},
                     {"pso", pso_to_json(file.pso)},
                     {"seed", file.pso.seed}};
  return j.dump(2) + "\n";
}

DistributionFile distribution_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    const int version = j.at("format_version").get<int>();
    if (version != kDistributionFormatVersion)
      throw FormatError("unsupported distribution format_version " + std::to_string(version));
    const auto& prov = j.at("provenance");
    DistributionFile file{
        version,
        ProbabilityTable(j.at("grid").get<std::vector<double>>(),
                         j.at("p").get<std::vector<double>>(), j.at("label").get<std::string>()),
        j.at("delta").get<double>(),
        mop_from_json(prov.at("mop")),
        pso_from_json(prov.at("pso"), prov.at("seed").get<std::uint64_t>()),
    };
    if (!(file.delta > 0.0)) throw FormatError("distribution delta must be > 0");
    return file;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed distribution file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("invalid distribution table: ") + e.what());
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError("cannot write " + path.string());
}

void write_distribution(const std::filesystem::path& path, const DistributionFile& file) {
  write_text(path, to_json(file));
}

DistributionFile read_distribution(const std::filesystem::path& path) {
  return distribution_from_json(read_text(path));
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_row(std::initializer_list<std::string_view> fields) {
  std::string row;
  bool first = true;
  for (auto f : fields) {
    if (!first) row += ',';
    row += f;
    first = false;
  }
  row += '\n';
  return row;
}

}  // namespace srlab
