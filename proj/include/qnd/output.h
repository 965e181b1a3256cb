// Copyright 2026 The diamond-qnd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QND_OUTPUT_H
#define QND_OUTPUT_H

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qnd/config.h"

namespace qnd {

inline constexpr const char *kToolName = "qndread";
inline constexpr const char *kToolVersion = "0.1.0";

struct Provenance {
    std::string command;
    std::string config_hash;
    std::vector<std::pair<std::string, std::string>> units;  // column -> unit
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Shortest decimal text that parses back to the same double.
std::string format_number(double x);

/// CSV with '#' provenance lines ahead of the header row.
std::string render_csv(const Table &table, const Provenance &prov);
/// {"provenance": {...}, "columns": [...], "rows": [[...], ...]}
std::string render_json(const Table &table, const Provenance &prov);
std::string render_table(const Table &table, const Provenance &prov, OutputFormat format);

nlohmann::json provenance_json(const Provenance &prov);
/// Pretty-printed JSON object with a "provenance" member added.
std::string render_document(nlohmann::json body, const Provenance &prov);

const char *extension(OutputFormat format);

/// Creates parent directories as needed. Throws std::runtime_error on failure.
void write_text(const std::filesystem::path &path, const std::string &content);

}  // namespace qnd

#endif
