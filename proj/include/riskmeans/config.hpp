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
#include <string>
#include <utility>
#include <vector>

#include "riskmeans/dataset.hpp"
#include "riskmeans/feature_select.hpp"
#include "riskmeans/kmeans.hpp"
#include "riskmeans/scanner.hpp"

namespace riskmeans::config {

/// Experiment settings. The file form is sectioned key = value text:
///
///     # comment
///     [section]
///     key = value        ; quotes around value are optional
///
/// Sections and keys are listed by `keys()`. Unknown sections or keys are errors. Relative
/// paths resolve against the config file's directory.
struct ExperimentConfig {
    std::filesystem::path data_path;
    std::filesystem::path schema_path;
    std::string dataset_name;
    std::optional<std::size_t> subsample_per_class;

    ingest::PreprocessOptions preprocess;

    struct Rfe {
        bool enabled = true;
        std::optional<std::size_t> target_k;  // empty: chosen by inner CV
        std::size_t step = 1;
        std::size_t inner_folds = 3;
        std::size_t inner_k = 4;
        std::size_t inner_restarts = 3;
    } rfe;

    struct Scanner {
        bool enabled = false;
        scan::ScanConfig scan;
        bool zero_pad = false;
        std::size_t k = 4;
        std::size_t restarts = 2;
    } scanner;

    struct KMeans {
        std::optional<std::size_t> k;  // empty: silhouette sweep over [k_min, k_max]
        std::size_t k_min = 2;
        std::size_t k_max = 10;
        std::size_t restarts = 10;
        std::size_t max_iters = 300;
        double tol = 1e-6;
        kmeans::InitMethod init = kmeans::InitMethod::KMeansPlusPlus;
        double threshold = 0.5;
    } kmeans;

    select::LogisticParams logistic;

    struct Cv {
        std::size_t folds = 5;
        std::uint64_t seed = 42;
    } cv;

    std::filesystem::path output_dir = "out";
    bool emit_plot_data = false;

    /// Sets one field from text. Throws Error(Parse) naming [section] key on bad values.
    void set(const std::string& section, const std::string& key, const std::string& value,
             const std::filesystem::path& base_dir = {});

    /// Canonical (section, key, value) listing of every field, in a fixed order.
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> echo() const;

    std::string fingerprint() const;
};

/// Accepted keys per section, in echo order.
const std::vector<std::pair<std::string, std::vector<std::string>>>& keys();

ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>",
                              const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace riskmeans::config
