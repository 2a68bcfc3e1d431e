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

#include "riskmeans/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "riskmeans/random.hpp"
#include "riskmeans/serialize.hpp"

namespace riskmeans::ingest {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        out.emplace_back(line.substr(start, i - start));
    }
    return out;
}

// Splits one record. Double-quoted fields may contain the delimiter; "" is a literal quote.
std::vector<std::string> split_delimited(std::string_view line, char delim) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == delim) {
            out.push_back(trim(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    out.push_back(trim(field));
    return out;
}

std::vector<std::string> split_record(std::string_view line, const Schema& schema) {
    return schema.whitespace_delimited ? split_ws(line) : split_delimited(line, schema.delimiter);
}

std::optional<double> parse_number(const std::string& s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::string location(const std::string& source, std::size_t line) {
    return source + ":" + std::to_string(line);
}

// Whitespace split where double quotes group characters; the quotes themselves are dropped.
std::vector<std::string> split_directive(std::string_view line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false, any = false;
    for (char ch : line) {
        if (ch == '"') {
            quoted = !quoted;
            any = true;
        } else if (!quoted && std::isspace(static_cast<unsigned char>(ch))) {
            if (any) out.push_back(std::move(cur));
            cur.clear();
            any = false;
        } else {
            cur += ch;
            any = true;
        }
    }
    if (any) out.push_back(std::move(cur));
    return out;
}

}  // namespace

const char* to_string(ColumnKind kind) {
    return kind == ColumnKind::Numeric ? "numeric" : "categorical";
}

std::vector<std::string> Schema::header() const {
    std::vector<std::string> names;
    names.reserve(columns.size() + 1);
    for (std::size_t i = 0; i <= columns.size(); ++i) {
        if (i == label_position) names.push_back(label_column);
        if (i < columns.size()) names.push_back(columns[i].name);
    }
    return names;
}

Schema parse_schema(const std::string& text, const std::string& source) {
    Schema schema;
    std::string default_missing = "?";
    bool have_label = false;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const auto tok = split_directive(raw);
        if (tok.empty()) continue;
        const std::string where = location(source, lineno);
        const std::string& directive = tok[0];
        if (directive == "delimiter") {
            require(tok.size() == 2, ErrorCode::Parse, where + ": delimiter takes one value");
            if (tok[1] == "comma") {
                schema.delimiter = ',';
            } else if (tok[1] == "whitespace") {
                schema.whitespace_delimited = true;
            } else if (tok[1] == "semicolon") {
                schema.delimiter = ';';
            } else if (tok[1] == "tab") {
                schema.delimiter = '\t';
            } else {
                require(tok[1].size() == 1, ErrorCode::Parse, where + ": unknown delimiter '" + tok[1] + "'");
                schema.delimiter = tok[1][0];
            }
        } else if (directive == "missing") {
            require(tok.size() == 2, ErrorCode::Parse, where + ": missing takes one token");
            default_missing = tok[1];
        } else if (directive == "column") {
            require(tok.size() == 3 || tok.size() == 4, ErrorCode::Parse,
                    where + ": expected 'column <name> numeric|categorical [missing=<token>]'");
            ColumnSpec spec;
            spec.name = tok[1];
            if (tok[2] == "numeric") {
                spec.kind = ColumnKind::Numeric;
            } else if (tok[2] == "categorical") {
                spec.kind = ColumnKind::Categorical;
            } else {
                fail(ErrorCode::Parse, where + ": unknown column kind '" + tok[2] + "'");
            }
            spec.missing_token = default_missing;
            if (tok.size() == 4) {
                require(tok[3].rfind("missing=", 0) == 0, ErrorCode::Parse, where + ": unknown option '" + tok[3] + "'");
                spec.missing_token = tok[3].substr(8);
            }
            for (const auto& c : schema.columns)
                require(c.name != spec.name, ErrorCode::Parse, where + ": duplicate column '" + spec.name + "'");
            require(!have_label || schema.label_column != spec.name, ErrorCode::Parse,
                    where + ": duplicate column '" + spec.name + "'");
            schema.columns.push_back(std::move(spec));
        } else if (directive == "label") {
            require(!have_label, ErrorCode::Parse, where + ": second label directive");
            require(tok.size() >= 3, ErrorCode::Parse, where + ": expected 'label <name> positive=<token>'");
            schema.label_column = tok[1];
            for (std::size_t i = 2; i < tok.size(); ++i) {
                if (tok[i].rfind("positive=", 0) == 0) {
                    schema.positive_label = tok[i].substr(9);
                } else if (tok[i].rfind("negative=", 0) == 0) {
                    schema.negative_label = tok[i].substr(9);
                } else {
                    fail(ErrorCode::Parse, where + ": unknown label option '" + tok[i] + "'");
                }
            }
            require(!schema.positive_label.empty(), ErrorCode::Parse, where + ": label needs positive=<token>");
            for (const auto& c : schema.columns)
                require(c.name != schema.label_column, ErrorCode::Parse,
                        where + ": duplicate column '" + schema.label_column + "'");
            schema.label_position = schema.columns.size();
            have_label = true;
        } else {
            fail(ErrorCode::Parse, where + ": unknown directive '" + directive + "'");
        }
    }
    require(have_label, ErrorCode::Parse, source + ": schema has no label directive");
    require(!schema.columns.empty(), ErrorCode::Parse, source + ": schema has no feature columns");
    return schema;
}

Schema load_schema(const std::filesystem::path& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorCode::Io, "cannot open schema file: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_schema(buf.str(), path.string());
}

std::size_t Dataset::positives() const {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
}

bool Dataset::has_missing() const {
    for (const auto& col : columns)
        for (const auto& c : col)
            if (is_missing(c)) return true;
    return false;
}

Dataset Dataset::select_rows(std::span<const std::size_t> idx) const {
    Dataset out;
    out.name = name;
    out.schema = schema;
    out.columns.resize(columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        out.columns[j].reserve(idx.size());
        for (auto i : idx) out.columns[j].push_back(columns[j][i]);
    }
    out.labels.reserve(idx.size());
    for (auto i : idx) out.labels.push_back(labels[i]);
    return out;
}

std::vector<std::string> Dataset::feature_names() const {
    std::vector<std::string> names;
    for (const auto& s : schema) names.push_back(s.name);
    return names;
}

Matrix Dataset::features() const {
    Matrix x(n(), d());
    for (std::size_t j = 0; j < d(); ++j) {
        for (std::size_t i = 0; i < n(); ++i) {
            const double* v = std::get_if<double>(&columns[j][i]);
            require(v != nullptr, ErrorCode::State,
                    "column '" + schema[j].name + "' row " + std::to_string(i) + " is not numeric; preprocess first");
            x(i, j) = *v;
        }
    }
    return x;
}

Dataset parse_csv(const std::string& text, const Schema& schema, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    while (!have_header && std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        have_header = true;
    }
    require(have_header, ErrorCode::Data, source + ": no data rows");

    const auto header = split_record(line, schema);
    const auto expected = schema.header();
    require(header.size() == expected.size(), ErrorCode::Schema,
            location(source, lineno) + ": header has " + std::to_string(header.size()) + " columns, schema expects " +
                std::to_string(expected.size()));
    for (std::size_t i = 0; i < header.size(); ++i)
        require(header[i] == expected[i], ErrorCode::Schema,
                location(source, lineno) + ": header column " + std::to_string(i + 1) + " is '" + header[i] +
                    "', schema expects '" + expected[i] + "'");

    Dataset ds;
    ds.name = source;
    ds.schema = schema.columns;
    ds.columns.resize(schema.columns.size());
    std::string other_label = schema.negative_label;

    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto fields = split_record(line, schema);
        require(fields.size() == header.size(), ErrorCode::Data,
                location(source, lineno) + ": row has " + std::to_string(fields.size()) + " fields, expected " +
                    std::to_string(header.size()));
        std::size_t feature = 0;
        for (std::size_t f = 0; f < fields.size(); ++f) {
            if (f == schema.label_position) {
                const std::string& tok = fields[f];
                if (tok == schema.positive_label) {
                    ds.labels.push_back(1);
                    continue;
                }
                if (other_label.empty() && !tok.empty()) other_label = tok;
                require(tok == other_label, ErrorCode::Data,
                        location(source, lineno) + ": column '" + schema.label_column + "' value '" + tok +
                            "' is not binary (positive '" + schema.positive_label + "', negative '" + other_label +
                            "')");
                ds.labels.push_back(0);
                continue;
            }
            const ColumnSpec& spec = schema.columns[feature];
            const std::string& tok = fields[f];
            if (tok == spec.missing_token || tok.empty()) {
                ds.columns[feature].emplace_back(std::monostate{});
            } else if (spec.kind == ColumnKind::Numeric) {
                auto v = parse_number(tok);
                require(v.has_value(), ErrorCode::Data,
                        location(source, lineno) + ": column '" + spec.name + "' value '" + tok + "' is not numeric");
                ds.columns[feature].emplace_back(*v);
            } else {
                ds.columns[feature].emplace_back(tok);
            }
            ++feature;
        }
    }
    require(!ds.labels.empty(), ErrorCode::Data, source + ": no data rows");
    return ds;
}

Dataset load_csv(const std::filesystem::path& path, const Schema& schema) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), ErrorCode::Io, "cannot open data file: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    Dataset ds = parse_csv(buf.str(), schema, path.string());
    ds.name = path.stem().string();
    return ds;
}

namespace {

ColumnReport fit_impute_column(const ColumnSpec& spec, const std::vector<Cell>& col) {
    ColumnReport rep;
    rep.name = spec.name;
    rep.kind = spec.kind;
    if (spec.kind == ColumnKind::Numeric) {
        double sum = 0.0;
        std::size_t count = 0;
        for (const auto& c : col) {
            if (const double* v = std::get_if<double>(&c)) {
                sum += *v;
                ++count;
            }
        }
        require(count > 0, ErrorCode::Data, "column '" + spec.name + "' is entirely missing");
        rep.impute_number = sum / static_cast<double>(count);
    } else {
        std::map<std::string, std::size_t> freq;  // ordered: ties go to the smallest token
        for (const auto& c : col)
            if (const auto* s = std::get_if<std::string>(&c)) ++freq[*s];
        require(!freq.empty(), ErrorCode::Data, "column '" + spec.name + "' is entirely missing");
        std::size_t best = 0;
        for (const auto& [tok, cnt] : freq) {
            if (cnt > best) {
                best = cnt;
                rep.impute_category = tok;
            }
        }
    }
    return rep;
}

Cell impute_cell(const ColumnReport& rep, const Cell& c) {
    if (!is_missing(c)) return c;
    if (rep.kind == ColumnKind::Numeric) return rep.impute_number;
    return rep.impute_category;
}

void fit_codes(ColumnReport& rep, const std::vector<Cell>& col) {
    rep.codes.clear();
    std::unordered_map<std::string, std::size_t> seen;
    for (const auto& c : col) {
        if (const auto* s = std::get_if<std::string>(&c)) {
            if (seen.emplace(*s, rep.codes.size()).second) rep.codes.push_back(*s);
        }
    }
}

double encode_cell(const ColumnReport& rep, const Cell& c) {
    if (const double* v = std::get_if<double>(&c)) return *v;
    const auto* s = std::get_if<std::string>(&c);
    require(s != nullptr, ErrorCode::State, "column '" + rep.name + "' still has missing cells; impute first");
    auto it = std::find(rep.codes.begin(), rep.codes.end(), *s);
    if (it == rep.codes.end()) it = std::find(rep.codes.begin(), rep.codes.end(), rep.impute_category);
    require(it != rep.codes.end(), ErrorCode::Data, "column '" + rep.name + "' has unseen category '" + *s + "'");
    return static_cast<double>(it - rep.codes.begin());
}

void fit_moments(ColumnReport& rep, const std::vector<Cell>& col) {
    const double first = std::get<double>(col.front());
    if (std::all_of(col.begin(), col.end(), [&](const Cell& c) { return std::get<double>(c) == first; })) {
        rep.mean = first;
        rep.stddev = 0.0;
        return;
    }
    double sum = 0.0;
    for (const auto& c : col) sum += std::get<double>(c);
    const double mean = sum / static_cast<double>(col.size());
    double ss = 0.0;
    for (const auto& c : col) {
        const double dv = std::get<double>(c) - mean;
        ss += dv * dv;
    }
    rep.mean = mean;
    rep.stddev = std::sqrt(ss / static_cast<double>(col.size()));
}

double standardize_value(const ColumnReport& rep, double v) {
    if (rep.stddev == 0.0) return 0.0;
    return (v - rep.mean) / rep.stddev;
}

std::vector<ColumnReport> blank_reports(const Dataset& ds) {
    std::vector<ColumnReport> reps(ds.d());
    for (std::size_t j = 0; j < ds.d(); ++j) {
        reps[j].name = ds.schema[j].name;
        reps[j].kind = ds.schema[j].kind;
    }
    return reps;
}

}  // namespace

Imputed impute(const Dataset& ds) {
    Imputed out{ds, {}};
    out.report.imputed = true;
    for (std::size_t j = 0; j < ds.d(); ++j) {
        auto rep = fit_impute_column(ds.schema[j], ds.columns[j]);
        for (auto& c : out.dataset.columns[j]) c = impute_cell(rep, c);
        out.report.columns.push_back(std::move(rep));
    }
    return out;
}

Dataset encode_categories(const Dataset& ds, PreprocessReport* report) {
    Dataset out = ds;
    if (report != nullptr && report->columns.size() != ds.d()) report->columns = blank_reports(ds);
    for (std::size_t j = 0; j < ds.d(); ++j) {
        if (ds.schema[j].kind != ColumnKind::Categorical) continue;
        ColumnReport rep;
        rep.name = ds.schema[j].name;
        rep.kind = ColumnKind::Categorical;
        if (report != nullptr) rep.impute_category = report->columns[j].impute_category;
        fit_codes(rep, ds.columns[j]);
        for (auto& c : out.columns[j]) c = encode_cell(rep, c);
        if (report != nullptr) report->columns[j].codes = rep.codes;
    }
    if (report != nullptr) report->encoded = true;
    return out;
}

Imputed standardize(const Dataset& ds) {
    require(ds.n() > 0, ErrorCode::Argument, "cannot standardize an empty dataset");
    Imputed out{ds, {}};
    out.report.standardized = true;
    out.report.columns = blank_reports(ds);
    for (std::size_t j = 0; j < ds.d(); ++j) {
        for (const auto& c : ds.columns[j])
            require(std::holds_alternative<double>(c), ErrorCode::State,
                    "column '" + ds.schema[j].name + "' is not numeric; impute and encode first");
        fit_moments(out.report.columns[j], ds.columns[j]);
        for (auto& c : out.dataset.columns[j]) c = standardize_value(out.report.columns[j], std::get<double>(c));
    }
    return out;
}

PreprocessReport fit_preprocess(const Dataset& raw, const PreprocessOptions& opts) {
    PreprocessReport report;
    report.columns = blank_reports(raw);
    Dataset ds = raw;
    if (opts.impute) {
        auto imp = impute(ds);
        ds = std::move(imp.dataset);
        report.columns = std::move(imp.report.columns);
        report.imputed = true;
    }
    ds = encode_categories(ds, &report);
    if (opts.standardize) {
        auto st = standardize(ds);
        for (std::size_t j = 0; j < raw.d(); ++j) {
            report.columns[j].mean = st.report.columns[j].mean;
            report.columns[j].stddev = st.report.columns[j].stddev;
        }
        report.standardized = true;
    }
    return report;
}

Matrix apply_preprocess(const PreprocessReport& report, const Dataset& raw) {
    require(report.columns.size() == raw.d(), ErrorCode::Schema,
            "preprocess report has " + std::to_string(report.columns.size()) + " columns, dataset has " +
                std::to_string(raw.d()));
    Matrix x(raw.n(), raw.d());
    for (std::size_t j = 0; j < raw.d(); ++j) {
        const ColumnReport& rep = report.columns[j];
        require(rep.name == raw.schema[j].name, ErrorCode::Schema,
                "preprocess report column '" + rep.name + "' does not match '" + raw.schema[j].name + "'");
        for (std::size_t i = 0; i < raw.n(); ++i) {
            Cell c = report.imputed ? impute_cell(rep, raw.columns[j][i]) : raw.columns[j][i];
            double v = encode_cell(rep, c);
            if (report.standardized) v = standardize_value(rep, v);
            x(i, j) = v;
        }
    }
    return x;
}

std::string PreprocessReport::fingerprint() const {
    return serialize::digest(serialize::to_json(*this).dump());
}

Dataset balanced_subsample(const Dataset& ds, std::size_t per_class, std::uint64_t seed) {
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < ds.n(); ++i) (ds.labels[i] == 1 ? pos : neg).push_back(i);
    require(per_class <= pos.size() && per_class <= neg.size(), ErrorCode::Argument,
            "per_class " + std::to_string(per_class) + " exceeds class sizes (" + std::to_string(pos.size()) +
                " positive, " + std::to_string(neg.size()) + " negative)");
    Rng rng(seed);
    rng.shuffle(std::span(pos));
    rng.shuffle(std::span(neg));
    std::vector<std::size_t> pick(pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(per_class));
    pick.insert(pick.end(), neg.begin(), neg.begin() + static_cast<std::ptrdiff_t>(per_class));
    rng.shuffle(std::span(pick));
    return ds.select_rows(pick);
}

void write_matrix_csv(const std::filesystem::path& path, const std::vector<std::string>& names, const Matrix& x,
                      std::span<const int> labels, const std::string& preamble) {
    std::ofstream out(path);
    require(static_cast<bool>(out), ErrorCode::Io, "cannot write " + path.string());
    out << preamble;
    for (const auto& n : names) out << n << ',';
    out << "label\n";
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < x.cols(); ++j) out << serialize::format_double(x(i, j)) << ',';
        out << labels[i] << '\n';
    }
}

}  // namespace riskmeans::ingest
