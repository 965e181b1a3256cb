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

#include "qnd/output.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace qnd {

std::string format_number(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

nlohmann::json provenance_json(const Provenance &prov) {
    nlohmann::json units = nlohmann::json::object();
    for (const auto &[k, v] : prov.units) {
        units[k] = v;
    }
    return {
        {"tool", kToolName},
        {"version", kToolVersion},
        {"command", prov.command},
        {"config_hash", prov.config_hash},
        {"units", units},
    };
}

std::string render_csv(const Table &table, const Provenance &prov) {
    std::string out;
    out += "# tool=" + std::string(kToolName) + " " + kToolVersion + "\n";
    out += "# command=" + prov.command + "\n";
    out += "# config_hash=" + prov.config_hash + "\n";
    if (!prov.units.empty()) {
        out += "# units=";
        for (size_t i = 0; i < prov.units.size(); i++) {
            out += (i ? ";" : "") + prov.units[i].first + ":" + prov.units[i].second;
        }
        out += "\n";
    }
    for (size_t i = 0; i < table.columns.size(); i++) {
        out += (i ? "," : "") + table.columns[i];
    }
    out += "\n";
    for (const auto &row : table.rows) {
        for (size_t i = 0; i < row.size(); i++) {
            if (i) {
                out += ',';
            }
            out += format_number(row[i]);
        }
        out += "\n";
    }
    return out;
}

namespace {

nlohmann::json number_json(double x) {
    if (!std::isfinite(x)) {
        return nullptr;
    }
    return x;
}

}  // namespace

std::string render_json(const Table &table, const Provenance &prov) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &row : table.rows) {
        nlohmann::json r = nlohmann::json::array();
        for (double v : row) {
            r.push_back(number_json(v));
        }
        rows.push_back(std::move(r));
    }
    nlohmann::json doc = {
        {"provenance", provenance_json(prov)},
        {"columns", table.columns},
        {"rows", rows},
    };
    return doc.dump(1) + "\n";
}

std::string render_table(const Table &table, const Provenance &prov, OutputFormat format) {
    return format == OutputFormat::Json ? render_json(table, prov) : render_csv(table, prov);
}

std::string render_document(nlohmann::json body, const Provenance &prov) {
    body["provenance"] = provenance_json(prov);
    return body.dump(2) + "\n";
}

const char *extension(OutputFormat format) { return format == OutputFormat::Json ? ".json" : ".csv"; }

void write_text(const std::filesystem::path &path, const std::string &content) {
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) {
            throw std::runtime_error("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
        }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    out << content;
    out.flush();
    if (!out) {
        throw std::runtime_error("write to '" + path.string() + "' failed");
    }
}

}  // namespace qnd
