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

// Batch front end. Links only the C API.
//
// Exit status: 0 success, 2 usage / config / missing input, 1 any other runtime failure.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "riskmeans/riskmeans.h"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct Failure {
    int code;
    std::string message;
};

int exit_code_for(rm_status s) {
    switch (s) {
        case RM_ERR_IO:
        case RM_ERR_PARSE:
        case RM_ERR_ARGUMENT: return kExitUsage;
        default: return kExitRuntime;
    }
}

void check(rm_status s) {
    if (s != RM_OK) throw Failure{exit_code_for(s), rm_last_error()};
}

template <class T, void (*Free)(T*)>
struct Handle {
    T* p = nullptr;
    Handle() = default;
    Handle(const Handle&) = delete;
    Handle& operator=(const Handle&) = delete;
    ~Handle() { Free(p); }
    T** out() { return &p; }
    T* get() const { return p; }
};

using Config = Handle<rm_config, rm_config_free>;
using Dataset = Handle<rm_dataset, rm_dataset_free>;
using Model = Handle<rm_model, rm_model_free>;
using Report = Handle<rm_report, rm_report_free>;

struct CommonOptions {
    std::string config;
    std::string data;
    std::string schema;
    std::optional<std::uint64_t> seed;
    std::string output;
    bool emit_plot_data = false;
    std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--config", o.config, "experiment config file");
    cmd->add_option("--data", o.data, "data file (overrides [data] path)");
    cmd->add_option("--schema", o.schema, "schema file (overrides [data] schema)");
    cmd->add_option("--output", o.output, "output directory (overrides [output] dir)");
    cmd->add_option("--set", o.sets, "override one config value, section.key=value (repeatable)");
}

void set(rm_config* cfg, const std::string& section, const std::string& key, const std::string& value) {
    check(rm_config_set(cfg, section.c_str(), key.c_str(), value.c_str()));
}

// File values first, then --set overrides, then dedicated flags.
void build_config(Config& cfg, const CommonOptions& o) {
    if (!o.config.empty())
        check(rm_config_load(o.config.c_str(), cfg.out()));
    else
        check(rm_config_new(cfg.out()));
    for (const auto& s : o.sets) {
        const auto eq = s.find('=');
        const auto dot = s.find('.');
        if (eq == std::string::npos || dot == std::string::npos || dot > eq)
            throw Failure{kExitUsage, "--set expects section.key=value, got '" + s + "'"};
        set(cfg.get(), s.substr(0, dot), s.substr(dot + 1, eq - dot - 1), s.substr(eq + 1));
    }
    if (!o.data.empty()) set(cfg.get(), "data", "path", o.data);
    if (!o.schema.empty()) set(cfg.get(), "data", "schema", o.schema);
    if (o.seed) set(cfg.get(), "cv", "seed", std::to_string(*o.seed));
    if (!o.output.empty()) set(cfg.get(), "output", "dir", o.output);
    if (o.emit_plot_data) set(cfg.get(), "output", "emit_plot_data", "true");
}

std::string get(const rm_config* cfg, const char* section, const char* key) {
    const char* v = nullptr;
    check(rm_config_get(cfg, section, key, &v));
    return v;
}

void load_dataset(Dataset& ds, const Config& cfg) {
    if (get(cfg.get(), "data", "path").empty())
        throw Failure{kExitUsage, "no data file given (use --data or [data] path)"};
    if (get(cfg.get(), "data", "schema").empty())
        throw Failure{kExitUsage, "no schema file given (use --schema or [data] schema)"};
    check(rm_dataset_load_config(cfg.get(), ds.out()));
}

void emit(const Report& r, const Config& cfg) {
    const std::string dir = get(cfg.get(), "output", "dir");
    const bool plots = get(cfg.get(), "output", "emit_plot_data") == "true";
    check(rm_report_write(r.get(), dir.c_str(), plots ? 1 : 0));
    std::fputs(rm_report_text(r.get()), stdout);
    std::printf("\nwrote report to %s\n", dir.c_str());
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

void check_method(const std::string& m) {
    if (rm_check_method(m.c_str()) != RM_OK)
        throw Failure{kExitUsage, "unknown method '" + m + "' (valid methods: " + rm_method_names() + ")"};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"riskmeans: K-means credit-risk experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", rm_version());

    CommonOptions o;
    std::uint64_t seed = 0;
    std::optional<std::size_t> subsample;
    std::string method = "kmeans";
    std::string methods = "kmeans,lr";
    std::string model_path;

    auto* ingest = app.add_subcommand("ingest", "impute, encode and standardize a dataset; write matrix + report");
    add_common(ingest, o);
    ingest->add_option("--subsample", subsample, "draw this many rows per class before preprocessing");
    ingest->add_option("--seed", o.seed, "root seed");

    auto* select = app.add_subcommand("select-features", "RFE on the whole dataset; write the selected subset");
    add_common(select, o);
    select->add_option("--seed", o.seed, "root seed");

    auto* train = app.add_subcommand("train", "fit the cluster classifier on the whole dataset and save it");
    add_common(train, o);
    train->add_option("--seed", o.seed, "root seed");
    train->add_option("--model", model_path, "model file (default <output>/model.json)");

    auto* run = app.add_subcommand("run", "stratified cross-validation of one method");
    add_common(run, o);
    run->add_option("--seed", seed, "root seed")->required();
    run->add_option("--method", method, "kmeans or lr");
    run->add_flag("--emit-plot-data", o.emit_plot_data, "write pooled ROC points");

    auto* compare = app.add_subcommand("compare", "cross-validate several methods and tabulate them");
    add_common(compare, o);
    compare->add_option("--seed", o.seed, "root seed");
    compare->add_option("--methods", methods, "comma-separated method list");
    compare->add_flag("--emit-plot-data", o.emit_plot_data, "write pooled ROC points per method");

    auto* scan = app.add_subcommand("scan", "multi-granularity window scan; one feature file per window size");
    add_common(scan, o);
    scan->add_option("--seed", o.seed, "root seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (run->parsed()) {
            o.seed = seed;
            check_method(method);
        }
        if (compare->parsed()) {
            const auto list = split_list(methods);
            if (list.empty()) throw Failure{kExitUsage, "--methods must name at least one method"};
            for (const auto& m : list) check_method(m);
        }

        Config cfg;
        build_config(cfg, o);
        if (subsample) set(cfg.get(), "data", "subsample", std::to_string(*subsample));
        Dataset raw;
        load_dataset(raw, cfg);

        // Subsampling happens once here so every subcommand sees the same rows.
        Dataset sub;
        const rm_dataset* ds = raw.get();
        const std::string per_class = get(cfg.get(), "data", "subsample");
        if (!per_class.empty() && per_class != "none" && !run->parsed() && !compare->parsed()) {
            const std::uint64_t root = std::stoull(get(cfg.get(), "cv", "seed"));
            check(rm_dataset_subsample(raw.get(), std::stoull(per_class), root, sub.out()));
            ds = sub.get();
        }

        if (ingest->parsed()) {
            const std::string dir = get(cfg.get(), "output", "dir");
            const std::string matrix = dir + "/matrix.csv";
            const std::string report = dir + "/preprocess.json";
            check(rm_dataset_preprocess(ds, cfg.get(), matrix.c_str(), report.c_str()));
            std::size_t n = 0, d = 0, pos = 0;
            check(rm_dataset_info(ds, &n, &d, &pos));
            std::printf("rows=%zu features=%zu positives=%zu\nwrote %s\nwrote %s\n", n, d, pos, matrix.c_str(),
                        report.c_str());
        } else if (select->parsed()) {
            Report r;
            check(rm_select_features(ds, cfg.get(), r.out()));
            emit(r, cfg);
        } else if (train->parsed()) {
            Model m;
            check(rm_train(ds, cfg.get(), m.out()));
            if (model_path.empty()) model_path = get(cfg.get(), "output", "dir") + "/model.json";
            check(rm_model_save(m.get(), model_path.c_str()));
            std::size_t k = 0, d = 0;
            check(rm_model_info(m.get(), &k, &d));
            std::printf("k=%zu dims=%zu\nwrote %s\n", k, d, model_path.c_str());
        } else if (run->parsed()) {
            Report r;
            check(rm_run(ds, cfg.get(), method.c_str(), r.out()));
            emit(r, cfg);
        } else if (compare->parsed()) {
            const auto list = split_list(methods);
            std::vector<const char*> names;
            for (const auto& m : list) names.push_back(m.c_str());
            Report r;
            check(rm_compare(ds, cfg.get(), names.data(), names.size(), r.out()));
            emit(r, cfg);
        } else if (scan->parsed()) {
            Report r;
            check(rm_scan(ds, cfg.get(), r.out()));
            emit(r, cfg);
        }
    } catch (const Failure& f) {
        std::fprintf(stderr, "error: %s\n", f.message.c_str());
        return f.code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRuntime;
    }
    return 0;
}
