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

#include "riskmeans/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace riskmeans::metrics {

namespace {

double ratio(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

void check_binary(std::span<const int> v, const char* what) {
    for (int x : v) require(x == 0 || x == 1, ErrorCode::Argument, std::string(what) + " must be 0 or 1");
}

}  // namespace

ConfusionCounts confusion(std::span<const int> labels, std::span<const int> predicted) {
    require(labels.size() == predicted.size(), ErrorCode::Argument, "labels and predictions differ in length");
    require(!labels.empty(), ErrorCode::Argument, "confusion needs at least one sample");
    check_binary(labels, "labels");
    check_binary(predicted, "predictions");
    ConfusionCounts cc;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == 1) {
            predicted[i] == 1 ? ++cc.tp : ++cc.fn;
        } else {
            predicted[i] == 1 ? ++cc.fp : ++cc.tn;
        }
    }
    return cc;
}

double accuracy(const ConfusionCounts& cc) { return ratio(cc.tp + cc.tn, cc.total()); }
double precision(const ConfusionCounts& cc) { return ratio(cc.tp, cc.tp + cc.fp); }
double recall(const ConfusionCounts& cc) { return ratio(cc.tp, cc.tp + cc.fn); }
double tpr(const ConfusionCounts& cc) { return ratio(cc.tp, cc.tp + cc.fn); }
double fpr(const ConfusionCounts& cc) { return ratio(cc.fp, cc.fp + cc.tn); }

double f1(const ConfusionCounts& cc) {
    const double p = precision(cc);
    const double r = recall(cc);
    if (p == 0.0 || r == 0.0) return 0.0;
    return 2.0 / (1.0 / p + 1.0 / r);
}

RocCurve roc_curve(std::span<const double> scores, std::span<const int> labels) {
    require(scores.size() == labels.size(), ErrorCode::Argument, "scores and labels differ in length");
    check_binary(labels, "labels");
    const auto pos = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
    const std::size_t neg = labels.size() - pos;
    require(pos > 0 && neg > 0, ErrorCode::Argument, "ROC needs both classes");

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    RocCurve curve;
    curve.points.push_back({0.0, 0.0});
    std::size_t tp = 0, fp = 0;
    for (std::size_t i = 0; i < order.size();) {
        const double cut = scores[order[i]];
        while (i < order.size() && scores[order[i]] == cut) {
            labels[order[i]] == 1 ? ++tp : ++fp;
            ++i;
        }
        curve.points.push_back({ratio(fp, neg), ratio(tp, pos)});
        curve.thresholds.push_back(cut);
    }
    // The last group always reaches (1,1); keep the endpoint exact.
    curve.points.back() = {1.0, 1.0};
    return curve;
}

double auc(const RocCurve& curve) {
    double area = 0.0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const auto& a = curve.points[i - 1];
        const auto& b = curve.points[i];
        area += (b.fpr - a.fpr) * (a.tpr + b.tpr) * 0.5;
    }
    return area;
}

double brier(const BrierInput& in) {
    const Matrix& f = in.forecast;
    const Matrix& o = in.outcome;
    require(f.rows() == o.rows() && f.cols() == o.cols(), ErrorCode::Argument,
            "forecast and outcome matrices differ in shape");
    require(f.rows() > 0 && f.cols() > 0, ErrorCode::Argument, "Brier input is empty");
    for (std::size_t t = 0; t < f.rows(); ++t) {
        double fsum = 0.0;
        int ones = 0;
        for (std::size_t i = 0; i < f.cols(); ++i) {
            fsum += f(t, i);
            require(o(t, i) == 0.0 || o(t, i) == 1.0, ErrorCode::Argument, "outcome rows must be one-hot");
            ones += o(t, i) == 1.0 ? 1 : 0;
        }
        require(std::abs(fsum - 1.0) <= 1e-9, ErrorCode::Argument,
                "forecast row " + std::to_string(t) + " does not sum to 1");
        require(ones == 1, ErrorCode::Argument, "outcome rows must be one-hot");
    }
    double s = 0.0;
    for (std::size_t t = 0; t < f.rows(); ++t)
        for (std::size_t i = 0; i < f.cols(); ++i) {
            const double d = f(t, i) - o(t, i);
            s += d * d;
        }
    return s / static_cast<double>(f.rows());
}

double brier_binary(std::span<const double> p, std::span<const int> y) {
    require(p.size() == y.size(), ErrorCode::Argument, "probabilities and labels differ in length");
    require(!p.empty(), ErrorCode::Argument, "Brier input is empty");
    check_binary(y, "labels");
    double s = 0.0;
    for (std::size_t t = 0; t < p.size(); ++t) {
        const double d = p[t] - static_cast<double>(y[t]);
        s += d * d;
    }
    return s / static_cast<double>(p.size());
}

BrierInput two_class_input(std::span<const double> p, std::span<const int> y) {
    require(p.size() == y.size(), ErrorCode::Argument, "probabilities and labels differ in length");
    BrierInput in{Matrix(p.size(), 2), Matrix(p.size(), 2)};
    for (std::size_t t = 0; t < p.size(); ++t) {
        in.forecast(t, 0) = 1.0 - p[t];
        in.forecast(t, 1) = p[t];
        in.outcome(t, y[t] == 1 ? 1 : 0) = 1.0;
    }
    return in;
}

MetricBundle evaluate(std::span<const double> scores, std::span<const int> labels, double threshold) {
    std::vector<int> hard(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) hard[i] = scores[i] >= threshold ? 1 : 0;
    const auto cc = confusion(labels, hard);
    MetricBundle m;
    m.auc = auc(roc_curve(scores, labels));
    m.acc = accuracy(cc);
    m.f1 = f1(cc);
    m.brier = brier_binary(scores, labels);
    m.tpr = tpr(cc);
    return m;
}

}  // namespace riskmeans::metrics
