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

#include "riskmeans/riskmeans.h"

#include <cmath>
#include <filesystem>
#include <memory>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "riskmeans/config.hpp"
#include "riskmeans/dataset.hpp"
#include "riskmeans/feature_select.hpp"
#include "riskmeans/harness.hpp"
#include "riskmeans/kmeans.hpp"
#include "riskmeans/metrics.hpp"
#include "riskmeans/random.hpp"
#include "riskmeans/scanner.hpp"
#include "riskmeans/serialize.hpp"

namespace fs = std::filesystem;
using namespace riskmeans;

struct rm_config {
    config::ExperimentConfig cfg;
    mutable std::string scratch;
    mutable std::string fingerprint;
};

struct rm_dataset {
    ingest::Dataset ds;
};

struct rm_model {
    kmeans::ClusterClassifier clf;
    ingest::PreprocessReport preprocess;
    std::vector<std::size_t> selected;
    std::vector<std::string> selected_names;
    std::string config_fingerprint;
    std::uint64_t config_seed = 0;
    std::string json;
};

struct rm_report {
    std::string stem;
    std::string json;
    std::string text;
    std::vector<std::pair<std::string, std::string>> files;       // always written
    std::vector<std::pair<std::string, std::string>> plot_files;  // only with emit_plot_data
};

namespace {

thread_local std::string g_last_error;

rm_status to_status(ErrorCode c) {
    switch (c) {
        case ErrorCode::Io: return RM_ERR_IO;
        case ErrorCode::Parse: return RM_ERR_PARSE;
        case ErrorCode::Schema: return RM_ERR_SCHEMA;
        case ErrorCode::Data: return RM_ERR_DATA;
        case ErrorCode::Argument: return RM_ERR_ARGUMENT;
        case ErrorCode::State: return RM_ERR_STATE;
        case ErrorCode::Numeric: return RM_ERR_NUMERIC;
    }
    return RM_ERR_INTERNAL;
}

template <class F>
rm_status guarded(F&& f) {
    try {
        f();
        g_last_error.clear();
        return RM_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::exception& e) {
        g_last_error = std::string("internal error: ") + e.what();
        return RM_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "internal error";
        return RM_ERR_INTERNAL;
    }
}

void need(const void* p, const char* what) {
    require(p != nullptr, ErrorCode::Argument, std::string(what) + " must not be null");
}

std::string dump(const serialize::Json& j) { return j.dump(2) + "\n"; }

std::string stamp(const config::ExperimentConfig& c) {
    return "# config=" + c.fingerprint() + " seed=" + std::to_string(c.cv.seed) + "\n";
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    require(static_cast<bool>(out), ErrorCode::Io, "cannot write " + p.string());
    out << content;
    require(static_cast<bool>(out), ErrorCode::Io, "failed writing " + p.string());
}

struct FittedFeatures {
    ingest::PreprocessReport preprocess;
    Matrix x;
    std::vector<std::size_t> selected;
    select::RfeResult rfe;
    select::TargetSelection target;
};

// Whole-dataset preprocessing plus optional RFE, seeded from the given stage seed.
FittedFeatures fit_features(const ingest::Dataset& ds, const config::ExperimentConfig& cfg, std::uint64_t seed,
                            bool force_rfe) {
    FittedFeatures out;
    out.preprocess = ingest::fit_preprocess(ds, cfg.preprocess);
    out.x = ingest::apply_preprocess(out.preprocess, ds);
    std::size_t target = out.x.cols();
    if (cfg.rfe.enabled || force_rfe) {
        if (cfg.rfe.target_k) {
            target = std::min(*cfg.rfe.target_k, out.x.cols());
        } else {
            const auto scorer = select::kmeans_cv_accuracy(cfg.rfe.inner_folds, cfg.rfe.inner_k, cfg.rfe.inner_restarts,
                                                           derive_seed(seed, "rfe"));
            out.target = select::select_target_k(out.x, ds.labels, select::default_candidates(out.x.cols()), scorer,
                                                 cfg.rfe.step, cfg.logistic);
            target = out.target.target_k;
        }
    }
    out.rfe = select::rfe(out.x, ds.labels, target, cfg.rfe.step, cfg.logistic);
    out.selected = out.rfe.selected;
    out.x = out.x.select_cols(out.selected);
    return out;
}

serialize::Json model_json(const rm_model& m) {
    auto j = serialize::to_json(m.clf);
    j["config_fingerprint"] = m.config_fingerprint;
    j["config_seed"] = m.config_seed;
    j["selected_features"] = m.selected_names;
    j["selected_indices"] = m.selected;
    j["preprocess"] = serialize::to_json(m.preprocess);
    return j;
}

std::string config_value(const config::ExperimentConfig& cfg, const std::string& section, const std::string& key) {
    if (section == "data" && key == "path") return cfg.data_path.string();
    if (section == "data" && key == "schema") return cfg.schema_path.string();
    if (section == "output" && key == "dir") return cfg.output_dir.string();
    if (section == "output" && key == "emit_plot_data") return cfg.emit_plot_data ? "true" : "false";
    for (const auto& [s, kv] : cfg.echo()) {
        if (s != section) continue;
        for (const auto& [k, v] : kv)
            if (k == key) return v;
    }
    fail(ErrorCode::Argument, "unknown config key [" + section + "] " + key);
}

}  // namespace

extern "C" {

const char* rm_version(void) { return "1.0.0"; }

const char* rm_last_error(void) { return g_last_error.c_str(); }

const char* rm_status_name(rm_status status) {
    switch (status) {
        case RM_OK: return "ok";
        case RM_ERR_IO: return "io error";
        case RM_ERR_PARSE: return "parse error";
        case RM_ERR_SCHEMA: return "schema error";
        case RM_ERR_DATA: return "data error";
        case RM_ERR_ARGUMENT: return "invalid argument";
        case RM_ERR_STATE: return "invalid state";
        case RM_ERR_NUMERIC: return "numeric error";
        case RM_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

rm_status rm_config_new(rm_config** out) {
    return guarded([&] {
        need(out, "out");
        *out = new rm_config{};
    });
}

rm_status rm_config_load(const char* path, rm_config** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        auto cfg = config::load_config(path);
        *out = new rm_config{std::move(cfg), {}, {}};
    });
}

rm_status rm_config_set(rm_config* cfg, const char* section, const char* key, const char* value) {
    return guarded([&] {
        need(cfg, "config");
        need(section, "section");
        need(key, "key");
        need(value, "value");
        cfg->cfg.set(section, key, value);
    });
}

rm_status rm_config_get(const rm_config* cfg, const char* section, const char* key, const char** value) {
    return guarded([&] {
        need(cfg, "config");
        need(section, "section");
        need(key, "key");
        need(value, "value");
        cfg->scratch = config_value(cfg->cfg, section, key);
        *value = cfg->scratch.c_str();
    });
}

const char* rm_config_fingerprint(const rm_config* cfg) {
    if (cfg == nullptr) return "";
    cfg->fingerprint = cfg->cfg.fingerprint();
    return cfg->fingerprint.c_str();
}

void rm_config_free(rm_config* cfg) { delete cfg; }

rm_status rm_dataset_load(const char* data_path, const char* schema_path, rm_dataset** out) {
    return guarded([&] {
        need(data_path, "data path");
        need(schema_path, "schema path");
        need(out, "out");
        const auto schema = ingest::load_schema(schema_path);
        *out = new rm_dataset{ingest::load_csv(data_path, schema)};
    });
}

rm_status rm_dataset_load_config(const rm_config* cfg, rm_dataset** out) {
    return guarded([&] {
        need(cfg, "config");
        need(out, "out");
        require(!cfg->cfg.data_path.empty(), ErrorCode::Parse, "[data] path is not set");
        require(!cfg->cfg.schema_path.empty(), ErrorCode::Parse, "[data] schema is not set");
        const auto schema = ingest::load_schema(cfg->cfg.schema_path);
        auto ds = ingest::load_csv(cfg->cfg.data_path, schema);
        if (!cfg->cfg.dataset_name.empty()) ds.name = cfg->cfg.dataset_name;
        *out = new rm_dataset{std::move(ds)};
    });
}

rm_status rm_dataset_info(const rm_dataset* ds, size_t* n, size_t* d, size_t* positives) {
    return guarded([&] {
        need(ds, "dataset");
        if (n) *n = ds->ds.n();
        if (d) *d = ds->ds.d();
        if (positives) *positives = ds->ds.positives();
    });
}

rm_status rm_dataset_subsample(const rm_dataset* ds, size_t per_class, uint64_t seed, rm_dataset** out) {
    return guarded([&] {
        need(ds, "dataset");
        need(out, "out");
        *out = new rm_dataset{ingest::balanced_subsample(ds->ds, per_class, derive_seed(seed, "subsample"))};
    });
}

rm_status rm_dataset_preprocess(const rm_dataset* ds, const rm_config* cfg, const char* matrix_path,
                                const char* report_path) {
    return guarded([&] {
        need(ds, "dataset");
        need(cfg, "config");
        need(matrix_path, "matrix path");
        need(report_path, "report path");
        const auto report = ingest::fit_preprocess(ds->ds, cfg->cfg.preprocess);
        const auto x = ingest::apply_preprocess(report, ds->ds);
        for (const auto* p : {matrix_path, report_path}) {
            const fs::path parent = fs::path(p).parent_path();
            if (!parent.empty()) fs::create_directories(parent);
        }
        ingest::write_matrix_csv(matrix_path, ds->ds.feature_names(), x, ds->ds.labels, stamp(cfg->cfg));
        auto j = serialize::to_json(report);
        j["format"] = "riskmeans-preprocess-report";
        j["config_fingerprint"] = cfg->cfg.fingerprint();
        j["seed"] = cfg->cfg.cv.seed;
        j["dataset"] = ds->ds.name;
        j["n"] = ds->ds.n();
        j["d"] = ds->ds.d();
        j["positives"] = ds->ds.positives();
        j["fingerprint"] = report.fingerprint();
        write_file(report_path, dump(j));
    });
}

void rm_dataset_free(rm_dataset* ds) { delete ds; }

rm_status rm_train(const rm_dataset* ds, const rm_config* cfg, rm_model** out) {
    return guarded([&] {
        need(ds, "dataset");
        need(cfg, "config");
        need(out, "out");
        const auto& c = cfg->cfg;
        const std::uint64_t seed = derive_seed(c.cv.seed, "train");
        auto feats = fit_features(ds->ds, c, seed, false);
        kmeans::KMeansParams p;
        p.restarts = c.kmeans.restarts;
        p.max_iters = c.kmeans.max_iters;
        p.tol = c.kmeans.tol;
        p.init = c.kmeans.init;
        p.seed = derive_seed(seed, "kmeans");
        auto m = std::make_unique<rm_model>();
        if (c.kmeans.k) {
            p.k = *c.kmeans.k;
            m->clf = kmeans::fit_classifier(feats.x, ds->ds.labels, p);
        } else {
            auto sel = kmeans::choose_k(feats.x, c.kmeans.k_min, std::min(c.kmeans.k_max, feats.x.rows() - 1), p);
            m->clf = kmeans::make_classifier(std::move(sel.model), feats.x, ds->ds.labels);
            m->clf.seed = p.seed;
        }
        m->clf.threshold = c.kmeans.threshold;
        m->clf.preprocess_fingerprint = feats.preprocess.fingerprint();
        m->preprocess = std::move(feats.preprocess);
        m->selected = feats.selected;
        m->config_fingerprint = c.fingerprint();
        m->config_seed = c.cv.seed;
        for (auto i : m->selected) m->selected_names.push_back(ds->ds.schema[i].name);
        m->json = dump(model_json(*m));
        *out = m.release();
    });
}

rm_status rm_model_save(const rm_model* model, const char* path) {
    return guarded([&] {
        need(model, "model");
        need(path, "path");
        const fs::path p(path);
        if (p.has_parent_path()) fs::create_directories(p.parent_path());
        write_file(p, model->json);
    });
}

rm_status rm_model_load(const char* path, rm_model** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        std::ifstream in(path);
        require(static_cast<bool>(in), ErrorCode::Io, std::string("cannot open model file: ") + path);
        std::stringstream buf;
        buf << in.rdbuf();
        const auto j = serialize::parse(buf.str(), path);
        auto m = std::make_unique<rm_model>();
        m->clf = serialize::classifier_from_json(j);
        if (j.contains("preprocess")) m->preprocess = serialize::preprocess_from_json(j.at("preprocess"));
        try {
            if (j.contains("selected_indices")) m->selected = j.at("selected_indices").get<std::vector<std::size_t>>();
            if (j.contains("config_fingerprint")) m->config_fingerprint = j.at("config_fingerprint").get<std::string>();
            if (j.contains("config_seed")) m->config_seed = j.at("config_seed").get<std::uint64_t>();
            if (j.contains("selected_features"))
                m->selected_names = j.at("selected_features").get<std::vector<std::string>>();
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorCode::Parse, std::string("malformed model feature list: ") + e.what());
        }
        m->json = dump(model_json(*m));
        *out = m.release();
    });
}

rm_status rm_model_info(const rm_model* model, size_t* k, size_t* d) {
    return guarded([&] {
        need(model, "model");
        if (k) *k = model->clf.model.k();
        if (d) *d = model->clf.model.d();
    });
}

rm_status rm_model_predict(const rm_model* model, const double* x, size_t d, double* score, int* label) {
    return guarded([&] {
        need(model, "model");
        need(x, "x");
        const std::span<const double> v(x, d);
        for (double e : v) require(std::isfinite(e), ErrorCode::Numeric, "input point has non-finite values");
        const double s = kmeans::predict_score(model->clf, v);
        if (score) *score = s;
        if (label) *label = s >= model->clf.threshold ? 1 : 0;
    });
}

rm_status rm_model_score_dataset(const rm_model* model, const rm_dataset* ds, double* scores, size_t n) {
    return guarded([&] {
        need(model, "model");
        need(ds, "dataset");
        need(scores, "scores");
        require(n == ds->ds.n(), ErrorCode::Argument, "score buffer length does not match dataset rows");
        const auto x = ingest::apply_preprocess(model->preprocess, ds->ds).select_cols(model->selected);
        for (std::size_t i = 0; i < x.rows(); ++i) scores[i] = kmeans::predict_score(model->clf, x.row(i));
    });
}

const char* rm_model_json(const rm_model* model) { return model ? model->json.c_str() : ""; }

void rm_model_free(rm_model* model) { delete model; }

const char* rm_method_names(void) { return "kmeans,lr"; }

rm_status rm_check_method(const char* method) {
    return guarded([&] {
        need(method, "method");
        (void)bench::parse_method(method);
    });
}

rm_status rm_run(const rm_dataset* ds, const rm_config* cfg, const char* method, rm_report** out) {
    return guarded([&] {
        need(ds, "dataset");
        need(cfg, "config");
        need(method, "method");
        need(out, "out");
        const auto m = bench::parse_method(method);
        const auto rep = bench::run_pipeline(ds->ds, cfg->cfg, m);
        auto r = std::make_unique<rm_report>();
        r->stem = std::string("run_") + bench::to_string(m);
        r->json = dump(serialize::to_json(rep));
        r->text = bench::render_text(rep);
        r->plot_files.emplace_back(r->stem + "_roc.csv", stamp(cfg->cfg) + serialize::roc_csv(bench::pooled_roc(rep)));
        *out = r.release();
    });
}

rm_status rm_compare(const rm_dataset* ds, const rm_config* cfg, const char* const* methods, size_t count,
                     rm_report** out) {
    return guarded([&] {
        need(ds, "dataset");
        need(cfg, "config");
        need(out, "out");
        require(count > 0 && methods != nullptr, ErrorCode::Argument, "compare needs at least one method");
        std::vector<bench::Method> ms;
        for (std::size_t i = 0; i < count; ++i) {
            need(methods[i], "method name");
            ms.push_back(bench::parse_method(methods[i]));
        }
        const auto cmp = bench::compare_methods(ds->ds, ms, cfg->cfg);
        auto r = std::make_unique<rm_report>();
        r->stem = "compare";
        r->json = dump(serialize::to_json(cmp));
        r->text = bench::render_text(cmp);
        for (const auto& rep : cmp.reports)
            r->plot_files.emplace_back(std::string("roc_") + bench::to_string(rep.method) + ".csv",
                                       stamp(cfg->cfg) + serialize::roc_csv(bench::pooled_roc(rep)));
        *out = r.release();
    });
}

rm_status rm_select_features(const rm_dataset* ds, const rm_config* cfg, rm_report** out) {
    return guarded([&] {
        need(ds, "dataset");
        need(cfg, "config");
        need(out, "out");
        const auto& c = cfg->cfg;
        const auto feats = fit_features(ds->ds, c, derive_seed(c.cv.seed, "select"), true);
        const auto names = ds->ds.feature_names();
        serialize::Json j;
        j["format"] = "riskmeans-feature-selection";
        j["dataset"] = ds->ds.name;
        j["seed"] = c.cv.seed;
        j["config_fingerprint"] = c.fingerprint();
        j["preprocess_fingerprint"] = feats.preprocess.fingerprint();
        j["target_k"] = feats.selected.size();
        if (!feats.target.candidates.empty()) {
            j["target_candidates"] = feats.target.candidates;
            j["target_scores"] = feats.target.scores;
        }
        j["rfe"] = serialize::to_json(feats.rfe, names);
        std::ostringstream text;
        text << "dataset: " << ds->ds.name << "  features=" << names.size() << "  selected=" << feats.selected.size()
             << "  seed=" << c.cv.seed << "  config=" << c.fingerprint() << "\n\nselected:\n";
        for (auto i : feats.selected) text << "  [" << i << "] " << names[i] << '\n';
        text << "\nelimination order:\n";
        for (const auto& s : feats.rfe.trace)
            text << "  round " << s.round << ": drop [" << s.dropped << "] " << names[s.dropped]
                 << "  |w|=" << serialize::format_double(s.score) << '\n';
        auto r = std::make_unique<rm_report>();
        r->stem = "features";
        r->json = dump(j);
        r->text = text.str();
        *out = r.release();
    });
}

rm_status rm_scan(const rm_dataset* ds, const rm_config* cfg, rm_report** out) {
    return guarded([&] {
        need(ds, "dataset");
        need(cfg, "config");
        need(out, "out");
        const auto& c = cfg->cfg;
        const auto report = ingest::fit_preprocess(ds->ds, c.preprocess);
        Matrix x = ingest::apply_preprocess(report, ds->ds);
        const auto& sc = c.scanner.scan;
        if (c.scanner.zero_pad && x.cols() < sc.input_dim) x = scan::zero_pad(x, sc.input_dim);
        kmeans::KMeansParams base;
        base.k = c.scanner.k;
        base.restarts = c.scanner.restarts;
        base.max_iters = c.kmeans.max_iters;
        base.tol = c.kmeans.tol;
        base.init = c.kmeans.init;
        const auto scanner = scan::fit_window_estimators(
            x, ds->ds.labels, sc, scan::prototype_factory(base, derive_seed(c.cv.seed, "scanner")));

        auto r = std::make_unique<rm_report>();
        r->stem = "scan";
        serialize::Json j;
        j["format"] = "riskmeans-scan";
        j["dataset"] = ds->ds.name;
        j["seed"] = c.cv.seed;
        j["config_fingerprint"] = c.fingerprint();
        j["input_dim"] = sc.input_dim;
        j["stride"] = sc.stride;
        j["estimators"] = sc.estimators;
        j["classes"] = sc.classes;
        serialize::Json outs = serialize::Json::array();
        std::ostringstream text;
        text << "dataset: " << ds->ds.name << "  rows=" << x.rows() << "  L=" << sc.input_dim << "  s=" << sc.stride
             << "  m=" << sc.estimators << "  c=" << sc.classes << "  seed=" << c.cv.seed << "\n\n";
        std::vector<std::vector<scan::ScanFeatures>> rows(x.rows());
        for (std::size_t i = 0; i < x.rows(); ++i) rows[i] = scan::transform_vector(x.row(i), scanner);
        for (std::size_t w = 0; w < sc.windows.size(); ++w) {
            const std::size_t win = sc.windows[w];
            scan::ScanConfig one = sc;
            one.windows = {win};
            const auto names = scan::feature_names(one);
            std::ostringstream csv;
            csv << stamp(c);
            for (const auto& n : names) csv << n << ',';
            csv << "label\n";
            for (std::size_t i = 0; i < x.rows(); ++i) {
                for (double v : rows[i][w].values) csv << serialize::format_double(v) << ',';
                csv << ds->ds.labels[i] << '\n';
            }
            const std::string file = "scan_w" + std::to_string(win) + ".csv";
            r->files.emplace_back(file, csv.str());
            outs.push_back({{"window", win},
                            {"window_count", scan::window_count(sc.input_dim, win, sc.stride)},
                            {"dim", names.size()},
                            {"file", file}});
            text << "w=" << win << "  windows=" << scan::window_count(sc.input_dim, win, sc.stride)
                 << "  dim=" << names.size() << "  -> " << file << '\n';
        }
        j["outputs"] = outs;
        r->json = dump(j);
        r->text = text.str();
        *out = r.release();
    });
}

const char* rm_report_json(const rm_report* report) { return report ? report->json.c_str() : ""; }
const char* rm_report_text(const rm_report* report) { return report ? report->text.c_str() : ""; }

rm_status rm_report_write(const rm_report* report, const char* dir, int emit_plot_data) {
    return guarded([&] {
        need(report, "report");
        need(dir, "dir");
        const fs::path base(dir);
        std::error_code ec;
        fs::create_directories(base, ec);
        require(!ec, ErrorCode::Io, "cannot create output directory " + base.string() + ": " + ec.message());
        write_file(base / (report->stem + ".json"), report->json);
        if (!report->text.empty()) write_file(base / (report->stem + ".txt"), report->text);
        for (const auto& [name, content] : report->files) write_file(base / name, content);
        if (emit_plot_data)
            for (const auto& [name, content] : report->plot_files) write_file(base / name, content);
    });
}

size_t rm_report_file_count(const rm_report* report) {
    return report ? report->files.size() + report->plot_files.size() : 0;
}

const char* rm_report_file_name(const rm_report* report, size_t index) {
    if (report == nullptr) return "";
    if (index < report->files.size()) return report->files[index].first.c_str();
    index -= report->files.size();
    if (index < report->plot_files.size()) return report->plot_files[index].first.c_str();
    return "";
}

void rm_report_free(rm_report* report) { delete report; }

rm_status rm_window_count(size_t length, size_t window, size_t stride, size_t* out) {
    return guarded([&] {
        need(out, "out");
        *out = scan::window_count(length, window, stride);
    });
}

rm_status rm_auc(const double* scores, const int* labels, size_t n, double* out) {
    return guarded([&] {
        need(scores, "scores");
        need(labels, "labels");
        need(out, "out");
        *out = metrics::auc(metrics::roc_curve(std::span(scores, n), std::span(labels, n)));
    });
}

rm_status rm_brier_binary(const double* p, const int* labels, size_t n, double* out) {
    return guarded([&] {
        need(p, "p");
        need(labels, "labels");
        need(out, "out");
        *out = metrics::brier_binary(std::span(p, n), std::span(labels, n));
    });
}

rm_status rm_kmeans_fit(const double* points, size_t n, size_t d, size_t k, size_t restarts, uint64_t seed,
                        double* centroids_out, double* wcss_out) {
    return guarded([&] {
        need(points, "points");
        need(centroids_out, "centroids_out");
        Matrix x(n, d);
        std::copy(points, points + n * d, x.row(0).data());
        kmeans::KMeansParams p;
        p.k = k;
        p.restarts = restarts;
        p.seed = seed;
        const auto model = kmeans::lloyd_fit(x, p);
        std::copy(model.centroids.data().begin(), model.centroids.data().end(), centroids_out);
        if (wcss_out) *wcss_out = model.wcss;
    });
}

}  // extern "C"
