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

#include <doctest.h>

#include <filesystem>
#include <string>

#include "riskmeans/config.hpp"
#include "riskmeans/error.hpp"

using namespace riskmeans;
using namespace riskmeans::config;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_config(text, "exp.toml");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Parse);
        return e.what();
    }
    return {};
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_SUITE("config") {

TEST_CASE("defaults") {
    const ExperimentConfig cfg;
    CHECK(cfg.cv.folds == 5);
    CHECK(cfg.cv.seed == 42);
    CHECK_FALSE(cfg.kmeans.k.has_value());
    CHECK(cfg.kmeans.k_min == 2);
    CHECK(cfg.kmeans.k_max == 10);
    CHECK(cfg.rfe.enabled);
    CHECK_FALSE(cfg.rfe.target_k.has_value());
    CHECK_FALSE(cfg.scanner.enabled);
}

TEST_CASE("sections, comments and quotes") {
    const auto cfg = parse_config(R"(
# leading comment
[kmeans]
k = 4            # trailing comment
restarts = "7"
init = uniform
tol = 1e-4

[rfe]
enabled = false
target_k = 3

[scanner]
windows = [2, 4]
input_dim = 8

[cv]
seed = 123
)");
    CHECK(cfg.kmeans.k == std::optional<std::size_t>(4));
    CHECK(cfg.kmeans.restarts == 7);
    CHECK(cfg.kmeans.init == kmeans::InitMethod::Uniform);
    CHECK(cfg.kmeans.tol == 1e-4);
    CHECK_FALSE(cfg.rfe.enabled);
    CHECK(cfg.rfe.target_k == std::optional<std::size_t>(3));
    CHECK(cfg.scanner.scan.windows == std::vector<std::size_t>{2, 4});
    CHECK(cfg.scanner.scan.input_dim == 8);
    CHECK(cfg.cv.seed == 123);
}

TEST_CASE("auto and none keywords") {
    auto cfg = parse_config("[kmeans]\nk = 3\n[data]\nsubsample = 50\n");
    CHECK(cfg.kmeans.k == std::optional<std::size_t>(3));
    CHECK(cfg.subsample_per_class == std::optional<std::size_t>(50));
    cfg.set("kmeans", "k", "auto");
    cfg.set("data", "subsample", "none");
    CHECK_FALSE(cfg.kmeans.k.has_value());
    CHECK_FALSE(cfg.subsample_per_class.has_value());
}

TEST_CASE("errors name the source line and the key") {
    const auto bad_value = error_of("[cv]\n\nfolds = many\n");
    CHECK(contains(bad_value, "exp.toml:3"));
    CHECK(contains(bad_value, "[cv] folds"));
    CHECK(contains(bad_value, "'many'"));
    CHECK(contains(error_of("[nope]\n"), "unknown section [nope]"));
    CHECK(contains(error_of("[cv]\nfoldz = 3\n"), "unknown key 'foldz' in section [cv]"));
    CHECK(contains(error_of("k = 3\n"), "outside of any section"));
    CHECK(contains(error_of("[cv]\nfolds\n"), "expected 'key = value'"));
    CHECK(contains(error_of("[cv\n"), "unterminated section header"));
    CHECK(contains(error_of("[kmeans]\ninit = random\n"), "[kmeans] init"));
    CHECK(contains(error_of("[rfe]\nenabled = maybe\n"), "[rfe] enabled"));
    CHECK(contains(error_of("[logistic]\nlr = fast\n"), "[logistic] lr"));
    CHECK(contains(error_of("[kmeans]\nk = -2\n"), "[kmeans] k"));
}

TEST_CASE("relative paths resolve against the config directory") {
    const auto cfg = parse_config("[data]\npath = d/x.csv\nschema = /abs/x.schema\n", "c", "/base/dir");
    CHECK(cfg.data_path == std::filesystem::path("/base/dir/d/x.csv"));
    CHECK(cfg.schema_path == std::filesystem::path("/abs/x.schema"));
}

TEST_CASE("echo covers every accepted key except output, fingerprint follows values") {
    const ExperimentConfig a;
    const auto echo = a.echo();
    const auto& k = keys();
    REQUIRE(echo.size() + 1 == k.size());
    for (std::size_t s = 0; s < echo.size(); ++s) {
        CHECK(echo[s].first == k[s].first);
        REQUIRE(echo[s].second.size() == k[s].second.size());
        for (std::size_t j = 0; j < k[s].second.size(); ++j) CHECK(echo[s].second[j].first == k[s].second[j]);
    }
    ExperimentConfig b;
    CHECK(a.fingerprint() == b.fingerprint());
    CHECK(a.fingerprint().size() == 16);
    b.set("output", "dir", "elsewhere");
    CHECK(a.fingerprint() == b.fingerprint());
    b.set("cv", "seed", "43");
    CHECK(a.fingerprint() != b.fingerprint());
}

TEST_CASE("echo values parse back to the same config") {
    ExperimentConfig a;
    a.set("kmeans", "tol", "0.000125");
    a.set("scanner", "windows", "3,5,7");
    a.set("logistic", "l2", "0.3");
    ExperimentConfig b;
    for (const auto& [section, kv] : a.echo())
        for (const auto& [key, value] : kv)
            if (section != "data" || (key != "path" && key != "schema")) b.set(section, key, value);
    CHECK(a.fingerprint() == b.fingerprint());
    CHECK(b.kmeans.tol == 0.000125);
}

TEST_CASE("shipped config loads") {
    const auto path = std::filesystem::path(RM_CONFIG_DIR) / "german.toml";
    const auto cfg = load_config(path);
    CHECK(cfg.dataset_name == "german");
    CHECK(cfg.data_path.filename() == "german.csv");
    CHECK(std::filesystem::exists(cfg.data_path));
    CHECK(std::filesystem::exists(cfg.schema_path));
    CHECK(cfg.cv.folds == 5);
    CHECK(cfg.kmeans.restarts == 10);
    CHECK_THROWS_AS(load_config("/nonexistent/x.toml"), Error);
}

}  // TEST_SUITE
