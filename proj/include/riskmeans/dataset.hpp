/*
 * Copyright (c) 2026, riskmeans contributors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "riskmeans/matrix.hpp"

namespace riskmeans::ingest {

enum class ColumnKind { Numeric, Categorical };

const char* to_string(ColumnKind kind);

struct ColumnSpec {
    std::string name;
    ColumnKind kind = ColumnKind::Numeric;
    std::string missing_token = "?";

    friend bool operator==(const ColumnSpec&, const ColumnSpec&) = default;
};

/// Column layout of a delimited file. `columns` are the feature columns in file order; the
/// label column sits at `label_position` in the header.
struct Schema {
    std::vector<ColumnSpec> columns;
    std::string label_column;
    std::string positive_label;
    std::string negative_label;  // empty: any single other value
    std::size_t label_position = 0;
    bool whitespace_delimited = false;
    char delimiter = ',';

    /// Header names in file order, label included.
    std::vector<std::string> header() const;
};

/// Schema grammar, one directive per line, `#` starts a comment:
///
///     delimiter comma | whitespace | <char>
///     missing <token>                         default missing token for later columns
///     column <name> numeric|categorical [missing=<token>]
///     label <name> positive=<token> [negative=<token>]
///
/// `column` and `label` lines appear in file-header order. Double quotes group a token
/// that contains spaces, e.g. positive="Charged Off".
Schema parse_schema(const std::string& text, const std::string& source = "<schema>");
Schema load_schema(const std::filesystem::path& path);

/// A cell is missing (monostate), numeric, or a raw category token.
using Cell = std::variant<std::monostate, double, std::string>;

inline bool is_missing(const Cell& c) { return std::holds_alternative<std::monostate>(c); }

/// Column-major table of cells plus binary labels (1 = positive / default class).
struct Dataset {
    std::string name;
    std::vector<ColumnSpec> schema;
    std::vector<std::vector<Cell>> columns;
    std::vector<int> labels;

    std::size_t n() const noexcept { return labels.size(); }
    std::size_t d() const noexcept { return columns.size(); }
    std::size_t positives() const;
    std::size_t negatives() const { return n() - positives(); }

    bool has_missing() const;
    Dataset select_rows(std::span<const std::size_t> idx) const;
    std::vector<std::string> feature_names() const;

    /// Numeric view; throws if any cell is missing or still a category token.
    Matrix features() const;

    friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Reads a delimited file. Missing tokens are kept as missing cells; row order preserved.
Dataset load_csv(const std::filesystem::path& path, const Schema& schema);
Dataset parse_csv(const std::string& text, const Schema& schema, const std::string& source = "<csv>");

struct ColumnReport {
    std::string name;
    ColumnKind kind = ColumnKind::Numeric;
    double impute_number = 0.0;
    std::string impute_category;
    std::vector<std::string> codes;  // codes[i] is the category encoded as i
    double mean = 0.0;
    double stddev = 1.0;

    friend bool operator==(const ColumnReport&, const ColumnReport&) = default;
};

/// Everything needed to replay preprocessing on raw rows.
struct PreprocessReport {
    bool imputed = false;
    bool encoded = false;
    bool standardized = false;
    std::vector<ColumnReport> columns;

    /// Stable hex digest of the report contents.
    std::string fingerprint() const;

    friend bool operator==(const PreprocessReport&, const PreprocessReport&) = default;
};

struct Imputed {
    Dataset dataset;
    PreprocessReport report;
};

/// Numeric gaps take the observed mean, categorical gaps the mode (ties: smallest token).
Imputed impute(const Dataset& ds);

/// Categories become 0,1,2,... in order of first appearance. Codes are written into `report`
/// when given.
Dataset encode_categories(const Dataset& ds, PreprocessReport* report = nullptr);

/// (x - mean) / stddev with population stddev; constant columns become zero.
Imputed standardize(const Dataset& ds);

struct PreprocessOptions {
    bool impute = true;
    bool standardize = true;
};

/// Runs the enabled stages on `raw` and returns the merged report.
PreprocessReport fit_preprocess(const Dataset& raw, const PreprocessOptions& opts = {});

/// Replays a report on raw rows. Unseen categories map to the imputation category's code.
Matrix apply_preprocess(const PreprocessReport& report, const Dataset& raw);

/// Draws `per_class` rows of each class without replacement, then shuffles the union.
Dataset balanced_subsample(const Dataset& ds, std::size_t per_class, std::uint64_t seed);

void write_matrix_csv(const std::filesystem::path& path, const std::vector<std::string>& names,
                      const Matrix& x, std::span<const int> labels, const std::string& preamble = {});

}  // namespace riskmeans::ingest
