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

#include "riskmeans/serialize.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "riskmeans/harness.hpp"
#include "riskmeans/random.hpp"

namespace riskmeans::serialize {

namespace {

Json matrix_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(std::vector<double>(m.row(r).begin(), m.row(r).end()));
    return rows;
}

Json config_json(const config::ExperimentConfig& cfg) {
    Json j = Json::object();
    for (const auto& [section, kv] : cfg.echo()) {
        Json s = Json::object();
        for (const auto& [k, v] : kv) s[k] = v;
        j[section] = s;
    }
    return j;
}

Json fold_json(const bench::CvReport& r, const bench::FoldResult& f) {
    const auto& a = f.artifacts;
    Json j;
    j["fold"] = f.fold;
    j["train_size"] = f.train_size;
    j["test_size"] = f.test_indices.size();
    std::size_t pos = 0;
    for (int y : f.test_labels) pos += y == 1 ? 1 : 0;
    j["test_positives"] = pos;
    j["metrics"] = to_json(f.metrics);
    j["preprocess_fingerprint"] = a.preprocess.fingerprint();
    j["selected_features"] = a.selected_names;
    if (!a.target_candidates.empty()) {
        j["rfe_target_candidates"] = a.target_candidates;
        j["rfe_target_scores"] = a.target_scores;
    }
    if (r.method == bench::Method::KMeans) {
        j["k"] = a.k;
        if (!a.k_candidates.empty()) {
            j["k_candidates"] = a.k_candidates;
            j["silhouettes"] = a.silhouettes;
        }
        j["posteriors"] = a.posteriors;
        j["bandwidth"] = a.bandwidth;
    } else {
        j["weights"] = a.weights;
        j["bias"] = a.bias;
    }
    return j;
}

template <class T>
T field(const Json& j, const char* key) {
    if (!j.contains(key)) fail(ErrorCode::Parse, std::string("model document lacks '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::Parse, std::string("model field '") + key + "': " + e.what());
    }
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

std::string digest(std::string_view text) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(text)));
    return buf;
}

Json to_json(const ingest::PreprocessReport& r) {
    Json j;
    j["imputed"] = r.imputed;
    j["encoded"] = r.encoded;
    j["standardized"] = r.standardized;
    Json cols = Json::array();
    for (const auto& c : r.columns) {
        Json cj;
        cj["name"] = c.name;
        cj["kind"] = ingest::to_string(c.kind);
        if (c.kind == ingest::ColumnKind::Numeric) {
            cj["impute"] = c.impute_number;
        } else {
            cj["impute"] = c.impute_category;
            cj["codes"] = c.codes;
        }
        cj["mean"] = c.mean;
        cj["stddev"] = c.stddev;
        cols.push_back(cj);
    }
    j["columns"] = cols;
    return j;
}

ingest::PreprocessReport preprocess_from_json(const Json& j) {
    ingest::PreprocessReport r;
    try {
        r.imputed = j.at("imputed").get<bool>();
        r.encoded = j.at("encoded").get<bool>();
        r.standardized = j.at("standardized").get<bool>();
        for (const auto& cj : j.at("columns")) {
            ingest::ColumnReport c;
            c.name = cj.at("name").get<std::string>();
            const auto kind = cj.at("kind").get<std::string>();
            require(kind == "numeric" || kind == "categorical", ErrorCode::Parse, "unknown column kind '" + kind + "'");
            c.kind = kind == "numeric" ? ingest::ColumnKind::Numeric : ingest::ColumnKind::Categorical;
            if (c.kind == ingest::ColumnKind::Numeric) {
                c.impute_number = cj.at("impute").get<double>();
            } else {
                c.impute_category = cj.at("impute").get<std::string>();
                c.codes = cj.at("codes").get<std::vector<std::string>>();
            }
            c.mean = cj.at("mean").get<double>();
            c.stddev = cj.at("stddev").get<double>();
            r.columns.push_back(std::move(c));
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::Parse, std::string("malformed preprocess report: ") + e.what());
    }
    return r;
}

Json to_json(const kmeans::ClusterClassifier& clf) {
    Json j;
    j["format"] = "riskmeans-model";
    j["version"] = 1;
    j["k"] = clf.model.k();
    j["d"] = clf.model.d();
    j["centroids"] = matrix_json(clf.model.centroids);
    j["posteriors"] = clf.posteriors;
    j["bandwidth"] = clf.bandwidth;
    j["threshold"] = clf.threshold;
    j["seed"] = clf.seed;
    j["preprocess_fingerprint"] = clf.preprocess_fingerprint;
    j["wcss"] = clf.model.wcss;
    j["iterations_run"] = clf.model.iterations_run;
    j["converged"] = clf.model.converged;
    return j;
}

kmeans::ClusterClassifier classifier_from_json(const Json& j) {
    require(j.is_object() && j.value("format", "") == "riskmeans-model", ErrorCode::Parse,
            "not a riskmeans model document");
    kmeans::ClusterClassifier clf;
    const auto k = field<std::size_t>(j, "k");
    const auto d = field<std::size_t>(j, "d");
    const auto rows = field<std::vector<std::vector<double>>>(j, "centroids");
    require(rows.size() == k, ErrorCode::Parse, "model centroid count does not match k");
    for (const auto& r : rows) require(r.size() == d, ErrorCode::Parse, "model centroid width does not match d");
    clf.model.centroids = rows.empty() ? Matrix(0, d) : Matrix::from_rows(rows);
    clf.posteriors = field<std::vector<double>>(j, "posteriors");
    require(clf.posteriors.size() == k, ErrorCode::Parse, "model posterior count does not match k");
    for (double p : clf.posteriors) require(p >= 0.0 && p <= 1.0, ErrorCode::Parse, "model posterior outside [0, 1]");
    clf.bandwidth = field<double>(j, "bandwidth");
    require(clf.bandwidth > 0.0, ErrorCode::Parse, "model bandwidth must be positive");
    clf.threshold = field<double>(j, "threshold");
    clf.seed = field<std::uint64_t>(j, "seed");
    clf.preprocess_fingerprint = field<std::string>(j, "preprocess_fingerprint");
    clf.model.wcss = field<double>(j, "wcss");
    clf.model.iterations_run = field<std::size_t>(j, "iterations_run");
    clf.model.converged = field<bool>(j, "converged");
    return clf;
}

Json to_json(const select::RfeResult& r, const std::vector<std::string>& names) {
    Json j;
    Json sel = Json::array();
    for (auto c : r.selected) sel.push_back({{"index", c}, {"name", names.at(c)}});
    j["selected"] = sel;
    Json tr = Json::array();
    for (const auto& s : r.trace)
        tr.push_back({{"round", s.round}, {"dropped", s.dropped}, {"name", names.at(s.dropped)}, {"score", s.score}});
    j["elimination_trace"] = tr;
    return j;
}

Json to_json(const metrics::MetricBundle& m) {
    Json j;
    j["auc"] = m.auc;
    j["acc"] = m.acc;
    j["f1"] = m.f1;
    j["brier"] = m.brier;
    j["tpr"] = m.tpr;
    return j;
}

Json to_json(const bench::CvReport& r) {
    Json j;
    j["format"] = "riskmeans-cv-report";
    j["dataset"] = r.dataset;
    j["method"] = bench::to_string(r.method);
    j["n"] = r.n;
    j["positives"] = r.positives;
    j["features"] = r.features;
    j["seed"] = r.config.cv.seed;
    j["config_fingerprint"] = r.config.fingerprint();
    j["config"] = config_json(r.config);
    j["brier_form"] = "binary";
    Json folds = Json::array();
    for (const auto& f : r.folds) folds.push_back(fold_json(r, f));
    j["folds"] = folds;
    j["mean"] = to_json(r.mean);
    if (auto ref = bench::published_counterpart(r.method)) {
        j["published"] = {{"row", ref->name}, {"metrics", to_json(ref->metrics)}};
        j["delta"] = to_json(metrics::MetricBundle{r.mean.auc - ref->metrics.auc, r.mean.acc - ref->metrics.acc,
                                                   r.mean.f1 - ref->metrics.f1, r.mean.brier - ref->metrics.brier,
                                                   r.mean.tpr - ref->metrics.tpr});
    }
    j["timing"] = {{"wall_seconds", r.wall_seconds}, {"wall_minutes", r.wall_seconds / 60.0}};
    return j;
}

Json to_json(const bench::Comparison& c) {
    Json j;
    j["format"] = "riskmeans-comparison";
    Json reports = Json::array();
    for (const auto& r : c.reports) {
        auto rj = to_json(r);
        rj.erase("timing");
        reports.push_back(rj);
    }
    j["computed"] = reports;
    Json ranking = Json::array();
    for (auto i : c.ranking) ranking.push_back(bench::to_string(c.reports[i].method));
    j["ranking_by_auc"] = ranking;
    Json refs = Json::array();
    for (const auto& r : c.references)
        refs.push_back({{"name", r.name}, {"metrics", to_json(r.metrics)}, {"source", "published reference, not reproduced"}});
    j["reference_rows"] = refs;
    j["annotations"] = {
        {"published_average_accuracy", {{"kmeans", 0.9461}, {"other_algorithms", 0.8377}}},
        {"published_efficiency_minutes", {{"kmeans", 3}, {"other_algorithms", 8}}},
        {"note", "published claims, shown for reference only; not reproduction targets"}};
    Json timing = Json::object();
    for (const auto& r : c.reports)
        timing[bench::to_string(r.method)] = {{"wall_seconds", r.wall_seconds}, {"wall_minutes", r.wall_seconds / 60.0}};
    j["timing"] = timing;
    return j;
}

std::string roc_csv(const metrics::RocCurve& curve) {
    std::ostringstream out;
    out << "fpr,tpr,threshold\n";
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        out << format_double(curve.points[i].fpr) << ',' << format_double(curve.points[i].tpr) << ',';
        if (i > 0) out << format_double(curve.thresholds[i - 1]);
        out << '\n';
    }
    return out.str();
}

Json parse(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::Parse, source + ": " + e.what());
    }
}

}  // namespace riskmeans::serialize
