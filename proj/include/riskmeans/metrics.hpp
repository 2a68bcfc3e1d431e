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

#include <cstddef>
#include <span>
#include <vector>

#include "riskmeans/matrix.hpp"

namespace riskmeans::metrics {

struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t tn = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;

    std::size_t total() const noexcept { return tp + tn + fp + fn; }
    friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

ConfusionCounts confusion(std::span<const int> labels, std::span<const int> predicted);

// Every 0/0 denominator yields 0.
double accuracy(const ConfusionCounts& cc);
double precision(const ConfusionCounts& cc);
double recall(const ConfusionCounts& cc);
double f1(const ConfusionCounts& cc);
double tpr(const ConfusionCounts& cc);
double fpr(const ConfusionCounts& cc);

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
};

/// points[0] = (0,0), points.back() = (1,1). thresholds[i] is the score cut that produces
/// points[i + 1], descending.
struct RocCurve {
    std::vector<RocPoint> points;
    std::vector<double> thresholds;
};

RocCurve roc_curve(std::span<const double> scores, std::span<const int> labels);

/// Trapezoidal area under the curve.
double auc(const RocCurve& curve);

/// Brier input in the multi-class form: n x r forecast matrix f and one-hot outcomes o.
struct BrierInput {
    Matrix forecast;
    Matrix outcome;
};

/// (1/n) sum_t sum_i (f_ti - o_ti)^2.
double brier(const BrierInput& in);

/// (1/n) sum_t (p_t - y_t)^2. Equals half of the two-class form of brier().
double brier_binary(std::span<const double> p, std::span<const int> y);

BrierInput two_class_input(std::span<const double> p, std::span<const int> y);

/// Report column order: auc, acc, f1, brier, tpr.
struct MetricBundle {
    double auc = 0.0;
    double acc = 0.0;
    double f1 = 0.0;
    double brier = 0.0;
    double tpr = 0.0;

    friend bool operator==(const MetricBundle&, const MetricBundle&) = default;
};

/// All five metrics from scores; hard labels use score >= threshold. Brier is the binary form.
MetricBundle evaluate(std::span<const double> scores, std::span<const int> labels, double threshold = 0.5);

}  // namespace riskmeans::metrics
