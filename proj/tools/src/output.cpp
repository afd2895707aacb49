// Copyright 2026 The holonomy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "holonomy/cli/output.hpp"

#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

namespace holo::cli {

std::string fnv1a64_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return fmt::format("{:016x}", h);
}

std::string format_double(double value) { return fmt::format("{:.17g}", value); }

RunMeta RunMeta::make(std::string command, std::uint64_t seed, const nlohmann::json& params) {
  RunMeta meta;
  meta.command = std::move(command);
  meta.seed = seed;
  meta.config_hash = fnv1a64_hex(params.dump());
  meta.tool_version = HOLONOMY_VERSION;
  return meta;
}

nlohmann::json RunMeta::to_json() const {
  return {{"command", command},
          {"seed", seed},
          {"config_hash", config_hash},
          {"tool_version", tool_version}};
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw std::logic_error("CSV row width mismatch");
  rows_.push_back(std::move(cells));
}

void CsvTable::add_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  add_row(std::move(cells));
}

std::string CsvTable::render(const RunMeta& meta) const {
  std::string out;
  out += fmt::format("# tool: holo {}\n", meta.tool_version);
  out += fmt::format("# command: {}\n", meta.command);
  out += fmt::format("# seed: {}\n", meta.seed);
  out += fmt::format("# config_hash: {}\n", meta.config_hash);
  out += fmt::format("{}\n", fmt::join(header_, ","));
  for (const auto& row : rows_) out += fmt::format("{}\n", fmt::join(row, ","));
  return out;
}

void CsvTable::write(const std::filesystem::path& path, const RunMeta& meta) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << render(meta);
}

void write_summary(const std::filesystem::path& path, const RunMeta& meta,
                   const nlohmann::json& params, const nlohmann::json& results) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  const nlohmann::json doc = {{"meta", meta.to_json()}, {"params", params}, {"results", results}};
  os << doc.dump(2) << '\n';
}

}  // namespace holo::cli
