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

// Exercises the library through the public C header only.
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "riskmeans/riskmeans.h"

namespace fs = std::filesystem;

namespace {

struct Fixture {
    fs::path dir;
    fs::path csv;
    fs::path schema;

    Fixture() {
        dir = fs::temp_directory_path() / ("riskmeans_capi_" + std::to_string(std::random_device{}()));
        fs::create_directories(dir);
        csv = dir / "toy.csv";
        schema = dir / "toy.schema";
        std::ofstream s(schema);
        s << "delimiter comma\ncolumn x numeric\ncolumn y numeric\ncolumn tier categorical\n"
             "label status positive=bad negative=good\n";
        std::ofstream c(csv);
        c << "x,y,tier,status\n";
        std::mt19937_64 rng(5);
        std::normal_distribution<double> z;
        for (int i = 0; i < 90; ++i) {
            const bool bad = i % 3 == 0;
            c << (bad ? 1.5 : -0.5) + z(rng) << ',' << z(rng) << ',' << (bad ? "low" : (i % 2 ? "mid" : "high")) << ','
              << (bad ? "bad" : "good") << '\n';
        }
    }
    ~Fixture() {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }

    rm_dataset* load() const {
        rm_dataset* ds = nullptr;
        REQUIRE(rm_dataset_load(csv.c_str(), schema.c_str(), &ds) == RM_OK);
        return ds;
    }

    rm_config* quick_config() const {
        rm_config* cfg = nullptr;
        REQUIRE(rm_config_new(&cfg) == RM_OK);
        REQUIRE(rm_config_set(cfg, "kmeans", "k_max", "4") == RM_OK);
        REQUIRE(rm_config_set(cfg, "kmeans", "restarts", "2") == RM_OK);
        REQUIRE(rm_config_set(cfg, "cv", "folds", "3") == RM_OK);
        REQUIRE(rm_config_set(cfg, "rfe", "target_k", "2") == RM_OK);
        return cfg;
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("version and status names") {
    CHECK(std::string(rm_version()) == "1.0.0");
    CHECK(std::string(rm_status_name(RM_OK)) != std::string(rm_status_name(RM_ERR_IO)));
    CHECK(std::string(rm_method_names()) == "kmeans,lr");
}

TEST_CASE("null arguments are argument errors") {
    CHECK(rm_config_new(nullptr) == RM_ERR_ARGUMENT);
    CHECK(std::strlen(rm_last_error()) > 0);
    CHECK(rm_dataset_load(nullptr, nullptr, nullptr) == RM_ERR_ARGUMENT);
    CHECK(rm_dataset_info(nullptr, nullptr, nullptr, nullptr) == RM_ERR_ARGUMENT);
    CHECK(rm_train(nullptr, nullptr, nullptr) == RM_ERR_ARGUMENT);
    CHECK(rm_check_method(nullptr) == RM_ERR_ARGUMENT);
    CHECK(rm_auc(nullptr, nullptr, 3, nullptr) == RM_ERR_ARGUMENT);
    rm_config_free(nullptr);
    rm_dataset_free(nullptr);
    rm_model_free(nullptr);
    rm_report_free(nullptr);
}

TEST_CASE("config set and get") {
    rm_config* cfg = nullptr;
    REQUIRE(rm_config_new(&cfg) == RM_OK);
    const char* v = nullptr;
    REQUIRE(rm_config_get(cfg, "cv", "seed", &v) == RM_OK);
    CHECK(std::string(v) == "42");
    const std::string before = rm_config_fingerprint(cfg);
    REQUIRE(rm_config_set(cfg, "cv", "seed", "7") == RM_OK);
    REQUIRE(rm_config_get(cfg, "cv", "seed", &v) == RM_OK);
    CHECK(std::string(v) == "7");
    CHECK(before != rm_config_fingerprint(cfg));
    CHECK(rm_config_set(cfg, "cv", "seed", "x") == RM_ERR_PARSE);
    CHECK(std::string(rm_last_error()).find("[cv] seed") != std::string::npos);
    CHECK(rm_config_set(cfg, "nope", "a", "1") == RM_ERR_PARSE);
    CHECK(rm_config_get(cfg, "cv", "nope", &v) != RM_OK);
    rm_config_free(cfg);

    rm_config* missing = nullptr;
    CHECK(rm_config_load("/nonexistent/x.toml", &missing) == RM_ERR_IO);
    CHECK(missing == nullptr);
}

TEST_CASE("dataset load, info and subsample") {
    Fixture fx;
    rm_dataset* ds = fx.load();
    size_t n = 0, d = 0, pos = 0;
    REQUIRE(rm_dataset_info(ds, &n, &d, &pos) == RM_OK);
    CHECK(n == 90);
    CHECK(d == 3);
    CHECK(pos == 30);
    rm_dataset* sub = nullptr;
    REQUIRE(rm_dataset_subsample(ds, 10, 1, &sub) == RM_OK);
    REQUIRE(rm_dataset_info(sub, &n, &d, &pos) == RM_OK);
    CHECK(n == 20);
    CHECK(pos == 10);
    rm_dataset_free(sub);
    CHECK(rm_dataset_subsample(ds, 31, 1, &sub) != RM_OK);
    rm_dataset_free(ds);

    rm_dataset* none = nullptr;
    CHECK(rm_dataset_load((fx.dir / "absent.csv").c_str(), fx.schema.c_str(), &none) == RM_ERR_IO);
    CHECK(std::string(rm_last_error()).find("absent.csv") != std::string::npos);
}

TEST_CASE("preprocess writes stamped outputs") {
    Fixture fx;
    rm_dataset* ds = fx.load();
    rm_config* cfg = fx.quick_config();
    const auto m = fx.dir / "out" / "matrix.csv";
    const auto r = fx.dir / "out" / "preprocess.json";
    REQUIRE(rm_dataset_preprocess(ds, cfg, m.c_str(), r.c_str()) == RM_OK);
    const auto matrix = slurp(m);
    CHECK(matrix.rfind(std::string("# config=") + rm_config_fingerprint(cfg) + " seed=42\n", 0) == 0);
    const auto report = slurp(r);
    CHECK(report.find("riskmeans-preprocess-report") != std::string::npos);
    CHECK(report.find(rm_config_fingerprint(cfg)) != std::string::npos);
    rm_config_free(cfg);
    rm_dataset_free(ds);
}

TEST_CASE("train, save, load, predict and score") {
    Fixture fx;
    rm_dataset* ds = fx.load();
    rm_config* cfg = fx.quick_config();
    rm_model* model = nullptr;
    REQUIRE(rm_train(ds, cfg, &model) == RM_OK);
    size_t k = 0, d = 0;
    REQUIRE(rm_model_info(model, &k, &d) == RM_OK);
    CHECK(k >= 2);
    CHECK(d == 2);
    std::vector<double> scores(90);
    REQUIRE(rm_model_score_dataset(model, ds, scores.data(), scores.size()) == RM_OK);
    for (double s : scores) {
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
    }
    CHECK(rm_model_score_dataset(model, ds, scores.data(), 10) == RM_ERR_ARGUMENT);

    const auto path = fx.dir / "model.json";
    REQUIRE(rm_model_save(model, path.c_str()) == RM_OK);
    rm_model* back = nullptr;
    REQUIRE(rm_model_load(path.c_str(), &back) == RM_OK);
    CHECK(std::string(rm_model_json(back)) == rm_model_json(model));
    std::vector<double> again(90);
    REQUIRE(rm_model_score_dataset(back, ds, again.data(), again.size()) == RM_OK);
    CHECK(again == scores);

    const double x[2] = {0.3, -0.2};
    double s1 = 0, s2 = 0;
    int l1 = -1, l2 = -1;
    REQUIRE(rm_model_predict(model, x, 2, &s1, &l1) == RM_OK);
    REQUIRE(rm_model_predict(back, x, 2, &s2, &l2) == RM_OK);
    CHECK(s1 == s2);
    CHECK(l1 == l2);
    CHECK(l1 == (s1 >= 0.5 ? 1 : 0));
    CHECK(rm_model_predict(model, x, 3, &s1, &l1) == RM_ERR_ARGUMENT);

    std::ofstream(fx.dir / "junk.json") << "{ not json";
    rm_model* junk = nullptr;
    CHECK(rm_model_load((fx.dir / "junk.json").c_str(), &junk) == RM_ERR_PARSE);
    rm_model_free(back);
    rm_model_free(model);
    rm_config_free(cfg);
    rm_dataset_free(ds);
}

TEST_CASE("run and compare reports") {
    Fixture fx;
    rm_dataset* ds = fx.load();
    rm_config* cfg = fx.quick_config();
    CHECK(rm_check_method("kmeans") == RM_OK);
    CHECK(rm_check_method("svm") == RM_ERR_ARGUMENT);
    CHECK(std::string(rm_last_error()).find("kmeans") != std::string::npos);

    rm_report* run = nullptr;
    CHECK(rm_run(ds, cfg, "svm", &run) == RM_ERR_ARGUMENT);
    REQUIRE(rm_run(ds, cfg, "kmeans", &run) == RM_OK);
    CHECK(std::string(rm_report_json(run)).find("riskmeans-cv-report") != std::string::npos);
    CHECK(std::string(rm_report_text(run)).find("== timing ==") != std::string::npos);
    const auto out = fx.dir / "run";
    REQUIRE(rm_report_write(run, out.c_str(), 0) == RM_OK);
    CHECK(fs::exists(out / "run_kmeans.json"));
    CHECK(fs::exists(out / "run_kmeans.txt"));
    CHECK_FALSE(fs::exists(out / "run_kmeans_roc.csv"));
    REQUIRE(rm_report_write(run, out.c_str(), 1) == RM_OK);
    CHECK(slurp(out / "run_kmeans_roc.csv").rfind("# config=", 0) == 0);
    rm_report_free(run);

    const char* methods[] = {"kmeans", "lr"};
    rm_report* cmp = nullptr;
    CHECK(rm_compare(ds, cfg, methods, 0, &cmp) == RM_ERR_ARGUMENT);
    REQUIRE(rm_compare(ds, cfg, methods, 2, &cmp) == RM_OK);
    std::vector<std::string> names;
    for (size_t i = 0; i < rm_report_file_count(cmp); ++i) names.push_back(rm_report_file_name(cmp, i));
    CHECK(std::find(names.begin(), names.end(), "roc_kmeans.csv") != names.end());
    CHECK(std::find(names.begin(), names.end(), "roc_lr.csv") != names.end());
    CHECK(std::string(rm_report_file_name(cmp, 99)).empty());
    rm_report_free(cmp);
    rm_config_free(cfg);
    rm_dataset_free(ds);
}

TEST_CASE("feature selection report") {
    Fixture fx;
    rm_dataset* ds = fx.load();
    rm_config* cfg = fx.quick_config();
    rm_report* rep = nullptr;
    REQUIRE(rm_select_features(ds, cfg, &rep) == RM_OK);
    const std::string j = rm_report_json(rep);
    CHECK(j.find("\"x\"") != std::string::npos);
    const auto out = fx.dir / "sel";
    REQUIRE(rm_report_write(rep, out.c_str(), 0) == RM_OK);
    CHECK(fs::exists(out / "features.json"));
    rm_report_free(rep);
    rm_config_free(cfg);
    rm_dataset_free(ds);
}

TEST_CASE("primitives") {
    size_t w = 0;
    REQUIRE(rm_window_count(400, 100, 1, &w) == RM_OK);
    CHECK(w == 301);
    CHECK(rm_window_count(10, 11, 1, &w) == RM_ERR_ARGUMENT);

    const double s[] = {0.9, 0.8, 0.7, 0.6};
    const int y[] = {1, 0, 1, 0};
    double a = 0;
    REQUIRE(rm_auc(s, y, 4, &a) == RM_OK);
    CHECK(a == doctest::Approx(0.75));
    const double half[] = {0.5, 0.5, 0.5, 0.5};
    double b = 0;
    REQUIRE(rm_brier_binary(half, y, 4, &b) == RM_OK);
    CHECK(b == 0.25);

    const double pts[] = {0, 0, 0, 1, 10, 10, 10, 11};
    double c[4];
    double wcss = 0;
    REQUIRE(rm_kmeans_fit(pts, 4, 2, 2, 5, 1, c, &wcss) == RM_OK);
    CHECK(wcss == doctest::Approx(1.0));
    CHECK(std::abs(c[0] - c[2]) == doctest::Approx(10.0));
    CHECK(rm_kmeans_fit(pts, 4, 2, 5, 5, 1, c, &wcss) == RM_ERR_ARGUMENT);
}
