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

#include <optional>
#include <string>
#include <vector>

#include "riskmeans/config.hpp"
#include "riskmeans/dataset.hpp"
#include "riskmeans/folds.hpp"
#include "riskmeans/metrics.hpp"

namespace riskmeans::bench {

enum class Method { KMeans, Logistic };

const char* to_string(Method m);
/// "kmeans" or "lr"; anything else throws Error(Argument) listing the valid names.
Method parse_method(const std::string& s);
std::vector<std::string> method_names();

/// Everything a fold fitted on its training rows.
struct FoldArtifacts {
    ingest::PreprocessReport preprocess;
    std::vector<std::size_t> selected;  // original column indices
    std::vector<std::string> selected_names;
    std::vector<select::EliminationStep> rfe_trace;
    std::vector<std::size_t> target_candidates;
    std::vector<double> target_scores;

    // kmeans
    std::size_t k = 0;
    std::vector<std::size_t> k_candidates;
    std::vector<double> silhouettes;
    Matrix centroids;
    std::vector<double> posteriors;
    double bandwidth = 0.0;

    // logistic
    std::vector<double> weights;
    double bias = 0.0;
};

struct FoldResult {
    std::size_t fold = 0;
    std::size_t train_size = 0;
    std::vector<std::size_t> test_indices;
    std::vector<int> test_labels;
    std::vector<double> scores;
    metrics::MetricBundle metrics;
    FoldArtifacts artifacts;
};

struct CvReport {
    std::string dataset;
    Method method = Method::KMeans;
    std::size_t n = 0;
    std::size_t positives = 0;
    std::size_t features = 0;
    config::ExperimentConfig config;
    std::vector<FoldResult> folds;
    metrics::MetricBundle mean;
    double wall_seconds = 0.0;
};

/// Stratified CV; every fitted quantity comes from the training rows of its fold.
CvReport run_pipeline(const ingest::Dataset& raw, const config::ExperimentConfig& cfg, Method method);

/// Fits one fold. Exposed for leakage checks.
FoldResult run_fold(const ingest::Dataset& raw, const config::ExperimentConfig& cfg, Method method,
                    const FoldPlan& plan, std::size_t fold);

FoldPlan plan_folds(const ingest::Dataset& raw, const config::ExperimentConfig& cfg);

struct ReferenceRow {
    std::string name;
    metrics::MetricBundle metrics;
};

/// Published per-method results used only as side-by-side references: RF, LR, XGBoost, LightGBM.
const std::vector<ReferenceRow>& reference_rows();
/// Published results for the method a computed row corresponds to, if any.
std::optional<ReferenceRow> published_counterpart(Method m);

struct Comparison {
    std::vector<CvReport> reports;
    std::vector<std::size_t> ranking;  // indices into reports, best mean AUC first
    std::vector<ReferenceRow> references;
};

Comparison compare_methods(const ingest::Dataset& raw, const std::vector<Method>& methods,
                           const config::ExperimentConfig& cfg);

/// Pooled out-of-fold ROC curve.
metrics::RocCurve pooled_roc(const CvReport& report);

/// Aligned-text tables. Timing lines sit after the "== timing ==" marker.
std::string render_text(const CvReport& report);
std::string render_text(const Comparison& cmp);

/// Worker cap from RISKMEANS_THREADS: 0 = sequential, unset = hardware concurrency.
std::size_t worker_limit();

}  // namespace riskmeans::bench
