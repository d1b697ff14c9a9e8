/*
   Copyright 2026 The hyperl Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Tabular output. Every cell renders deterministically (%.17g, NaN as NA) so
// identical runs give byte-identical files.

#ifndef HYPERL_REPORT_HPP
#define HYPERL_REPORT_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hyperl/ensemble.hpp"
#include "hyperl/numeric.hpp"

namespace hyperl {

struct NA {};
using Cell = std::variant<NA, std::int64_t, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row) {
        if (row.size() != columns.size()) throw std::logic_error("table row width mismatch");
        rows.push_back(std::move(row));
    }
    std::size_t col(const std::string& name) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name) return i;
        throw std::out_of_range("no column " + name);
    }
};

inline std::string render_cell(const Cell& c) {
    struct V {
        std::string operator()(NA) const { return "NA"; }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(double v) const { return std::isnan(v) ? "NA" : format_double(v); }
        std::string operator()(const std::string& s) const { return s; }
    };
    return std::visit(V{}, c);
}

namespace detail {
inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}
}  // namespace detail

inline std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + detail::csv_quote(t.columns[i]);
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + detail::csv_quote(render_cell(row[i]));
        out += '\n';
    }
    return out;
}

/// Array of objects keyed by column; NA and non-finite doubles become null.
inline std::string to_json(const Table& t) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            struct V {
                nlohmann::ordered_json operator()(NA) const { return nullptr; }
                nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
                nlohmann::ordered_json operator()(double v) const {
                    if (!std::isfinite(v)) return nullptr;
                    return v;
                }
                nlohmann::ordered_json operator()(const std::string& s) const { return s; }
            };
            obj[t.columns[i]] = std::visit(V{}, row[i]);
        }
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

inline const std::vector<std::string>& report_columns() {
    static const std::vector<std::string> cols = {
        "statistic", "q",           "g",       "params",   "empirical_re", "empirical_im", "predicted_re",          "predicted_im",
        "abs_err",   "rel_err",     "predicted_error_scale", "n_excluded", "mode",         "seed",         "runtime_s", "stderr_re",
        "stderr_im"};
    return cols;
}

/// Report columns followed by `extra` (caller fills the extra cells).
inline Table report_table(const std::vector<std::string>& extra = {}) {
    Table t;
    t.columns = report_columns();
    t.columns.insert(t.columns.end(), extra.begin(), extra.end());
    return t;
}

/// runtime_s is NA unless timing is requested; the stderr columns are NA in exhaustive mode.
inline std::vector<Cell> report_row(const EnsembleReport& r, bool timing) {
    const bool sampled = r.mode == SampleMode::sampled;
    return {r.statistic,
            static_cast<std::int64_t>(r.q),
            static_cast<std::int64_t>(r.g),
            r.params,
            r.empirical.real(),
            r.empirical.imag(),
            r.predicted.real(),
            r.predicted.imag(),
            r.abs_err,
            r.rel_err,
            r.predicted_error_scale,
            static_cast<std::int64_t>(r.n_excluded),
            std::string(mode_name(r.mode)),
            sampled ? Cell(static_cast<std::int64_t>(r.seed)) : Cell(NA{}),
            timing ? Cell(r.runtime_s) : Cell(NA{}),
            sampled ? Cell(r.stderr_re) : Cell(NA{}),
            sampled ? Cell(r.stderr_im) : Cell(NA{})};
}

}  // namespace hyperl

#endif  // HYPERL_REPORT_HPP
