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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace holo::cli {

/// 64-bit FNV-1a, printed as 16 lowercase hex digits.
std::string fnv1a64_hex(std::string_view data);

/// Shortest text that is exact under round trip: 17 significant digits.
std::string format_double(double value);

struct RunMeta {
  std::string command;
  std::uint64_t seed = 0;
  std::string config_hash;
  std::string tool_version;

  /// Hash of the canonical (key-sorted, compact) dump of `params`.
  static RunMeta make(std::string command, std::uint64_t seed, const nlohmann::json& params);
  nlohmann::json to_json() const;
};

/// Comma-separated table preceded by '#' metadata lines.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  void add_row(const std::vector<double>& values);
  std::size_t rows() const { return rows_.size(); }

  std::string render(const RunMeta& meta) const;
  void write(const std::filesystem::path& path, const RunMeta& meta) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// {"meta": ..., "params": ..., "results": ...}, pretty-printed.
void write_summary(const std::filesystem::path& path, const RunMeta& meta,
                   const nlohmann::json& params, const nlohmann::json& results);

}  // namespace holo::cli
