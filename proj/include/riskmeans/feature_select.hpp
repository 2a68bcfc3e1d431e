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
#include <functional>
#include <span>
#include <vector>

#include "riskmeans/matrix.hpp"

namespace riskmeans::select {

struct LogisticParams {
    double lr = 0.1;
    std::size_t epochs = 500;
    double l2 = 1e-4;
    std::uint64_t seed = 0;  // unused by the zero-initialised solver; kept in reports
};

struct LogisticModel {
    std::vector<double> weights;
    double bias = 0.0;
    std::size_t iterations = 0;
    double final_loss = 0.0;
    std::vector<double> loss_trace;  // loss before each epoch, then the final loss
};

/// Mean log-loss plus (l2 / 2) |w|^2; the bias is not penalised.
double logistic_loss(const Matrix& x, std::span<const int> y, std::span<const double> w, double b, double l2);

/// Gradient of logistic_loss: (d/dw_0 .. d/dw_{d-1}, d/db).
std::vector<double> logistic_gradient(const Matrix& x, std::span<const int> y, std::span<const double> w, double b,
                                      double l2);

/// Full-batch gradient descent from zero weights.
LogisticModel fit_logistic(const Matrix& x, std::span<const int> y, const LogisticParams& params = {});

double predict_proba(const LogisticModel& m, std::span<const double> x);
std::vector<double> predict_proba(const LogisticModel& m, const Matrix& x);

struct EliminationStep {
    std::size_t round = 0;
    std::size_t dropped = 0;  // original column index
    double score = 0.0;       // |weight| at the time it was dropped

    friend bool operator==(const EliminationStep&, const EliminationStep&) = default;
};

struct RfeResult {
    std::vector<std::size_t> selected;  // original column indices, ascending
    std::vector<EliminationStep> trace;

    friend bool operator==(const RfeResult&, const RfeResult&) = default;
};

/// Recursive elimination ranked by |logistic weight|. Each round drops the `step` weakest
/// survivors; ties drop the highest column index first.
RfeResult rfe(const Matrix& x, std::span<const int> y, std::size_t target_k, std::size_t step = 1,
              const LogisticParams& params = {});

/// Scores one candidate feature subset (columns already selected); higher is better.
using SubsetScorer = std::function<double(const Matrix& x_selected, std::span<const int> y)>;

struct TargetSelection {
    std::size_t target_k = 0;
    std::vector<std::size_t> candidates;
    std::vector<double> scores;
};

/// Runs rfe for every candidate and keeps the best scorer result (smaller count on ties).
TargetSelection select_target_k(const Matrix& x, std::span<const int> y, std::span<const std::size_t> candidates,
                                const SubsetScorer& scorer, std::size_t step = 1, const LogisticParams& params = {});

/// Default scorer: stratified cv_folds-fold accuracy of a K-means cluster classifier with k
/// clusters and the given restarts.
SubsetScorer kmeans_cv_accuracy(std::size_t cv_folds, std::size_t k, std::size_t restarts, std::uint64_t seed);

/// {d, ceil(3d/4), ceil(d/2), ceil(d/4)}, deduplicated, descending.
std::vector<std::size_t> default_candidates(std::size_t d);

}  // namespace riskmeans::select
