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

#include "riskmeans/feature_select.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "riskmeans/folds.hpp"
#include "riskmeans/kmeans.hpp"
#include "riskmeans/metrics.hpp"

namespace riskmeans::select {

namespace {

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// log(1 + e^z) without overflow.
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double linear(std::span<const double> row, std::span<const double> w, double b) {
    double z = b;
    for (std::size_t j = 0; j < w.size(); ++j) z += w[j] * row[j];
    return z;
}

void check_problem(const Matrix& x, std::span<const int> y) {
    require(y.size() == x.rows(), ErrorCode::Argument, "label count does not match row count");
    const auto pos = std::count(y.begin(), y.end(), 1);
    require(pos > 0 && static_cast<std::size_t>(pos) < y.size(), ErrorCode::Argument,
            "logistic regression needs both classes");
}

}  // namespace

double logistic_loss(const Matrix& x, std::span<const int> y, std::span<const double> w, double b, double l2) {
    double loss = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const double z = linear(x.row(i), w, b);
        loss += softplus(z) - static_cast<double>(y[i]) * z;
    }
    loss /= static_cast<double>(x.rows());
    double ww = 0.0;
    for (double v : w) ww += v * v;
    return loss + 0.5 * l2 * ww;
}

std::vector<double> logistic_gradient(const Matrix& x, std::span<const int> y, std::span<const double> w, double b,
                                      double l2) {
    const std::size_t d = x.cols();
    std::vector<double> g(d + 1, 0.0);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const auto row = x.row(i);
        const double r = sigmoid(linear(row, w, b)) - static_cast<double>(y[i]);
        for (std::size_t j = 0; j < d; ++j) g[j] += r * row[j];
        g[d] += r;
    }
    const double inv_n = 1.0 / static_cast<double>(x.rows());
    for (std::size_t j = 0; j < d; ++j) g[j] = g[j] * inv_n + l2 * w[j];
    g[d] *= inv_n;
    return g;
}

LogisticModel fit_logistic(const Matrix& x, std::span<const int> y, const LogisticParams& params) {
    check_problem(x, y);
    require(params.lr > 0.0, ErrorCode::Argument, "learning rate must be positive");
    require(params.l2 >= 0.0, ErrorCode::Argument, "l2 must be non-negative");
    require(x.all_finite(), ErrorCode::Numeric, "logistic input contains non-finite values");
    LogisticModel m;
    m.weights.assign(x.cols(), 0.0);
    for (std::size_t e = 0; e < params.epochs; ++e) {
        m.loss_trace.push_back(logistic_loss(x, y, m.weights, m.bias, params.l2));
        const auto g = logistic_gradient(x, y, m.weights, m.bias, params.l2);
        for (std::size_t j = 0; j < x.cols(); ++j) m.weights[j] -= params.lr * g[j];
        m.bias -= params.lr * g[x.cols()];
        m.iterations = e + 1;
    }
    m.final_loss = logistic_loss(x, y, m.weights, m.bias, params.l2);
    m.loss_trace.push_back(m.final_loss);
    return m;
}

double predict_proba(const LogisticModel& m, std::span<const double> x) {
    require(x.size() == m.weights.size(), ErrorCode::Argument, "dimension mismatch in logistic prediction");
    return sigmoid(linear(x, m.weights, m.bias));
}

std::vector<double> predict_proba(const LogisticModel& m, const Matrix& x) {
    std::vector<double> p(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) p[i] = predict_proba(m, x.row(i));
    return p;
}

RfeResult rfe(const Matrix& x, std::span<const int> y, std::size_t target_k, std::size_t step,
              const LogisticParams& params) {
    require(target_k >= 1 && target_k <= x.cols(), ErrorCode::Argument,
            "target_k " + std::to_string(target_k) + " outside [1, " + std::to_string(x.cols()) + "]");
    require(step >= 1, ErrorCode::Argument, "step must be at least 1");
    std::vector<std::size_t> alive(x.cols());
    std::iota(alive.begin(), alive.end(), 0);
    RfeResult res;
    std::size_t round = 0;
    while (alive.size() > target_k) {
        const auto model = fit_logistic(x.select_cols(alive), y, params);
        std::vector<std::size_t> order(alive.size());
        std::iota(order.begin(), order.end(), 0);
        // Weakest first; among equal weights the highest column index goes first.
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const double wa = std::abs(model.weights[a]);
            const double wb = std::abs(model.weights[b]);
            if (wa != wb) return wa < wb;
            return alive[a] > alive[b];
        });
        const std::size_t drop = std::min(step, alive.size() - target_k);
        std::vector<std::size_t> gone;
        for (std::size_t i = 0; i < drop; ++i) {
            res.trace.push_back({round, alive[order[i]], std::abs(model.weights[order[i]])});
            gone.push_back(alive[order[i]]);
        }
        std::erase_if(alive, [&](std::size_t c) { return std::find(gone.begin(), gone.end(), c) != gone.end(); });
        ++round;
    }
    res.selected = alive;
    return res;
}

TargetSelection select_target_k(const Matrix& x, std::span<const int> y, std::span<const std::size_t> candidates,
                                const SubsetScorer& scorer, std::size_t step, const LogisticParams& params) {
    require(!candidates.empty(), ErrorCode::Argument, "no target_k candidates");
    for (auto c : candidates)
        require(c >= 1 && c <= x.cols(), ErrorCode::Argument,
                "target_k candidate " + std::to_string(c) + " outside [1, " + std::to_string(x.cols()) + "]");
    TargetSelection sel;
    double best = 0.0;
    bool have = false;
    for (auto c : candidates) {
        const auto r = rfe(x, y, c, step, params);
        const double s = scorer(x.select_cols(r.selected), y);
        sel.candidates.push_back(c);
        sel.scores.push_back(s);
        if (!have || s > best || (s == best && c < sel.target_k)) {
            best = s;
            sel.target_k = c;
            have = true;
        }
    }
    return sel;
}

SubsetScorer kmeans_cv_accuracy(std::size_t cv_folds, std::size_t k, std::size_t restarts, std::uint64_t seed) {
    return [=](const Matrix& xs, std::span<const int> y) {
        const auto plan = bench::stratified_kfold(y, cv_folds, seed);
        double total = 0.0;
        for (std::size_t f = 0; f < plan.k(); ++f) {
            const auto train = plan.train_indices(f);
            const auto& test = plan.test[f];
            std::vector<int> ytr, yte;
            for (auto i : train) ytr.push_back(y[i]);
            for (auto i : test) yte.push_back(y[i]);
            const Matrix xtr = xs.select_rows(train);
            kmeans::KMeansParams p;
            p.k = std::min(k, xtr.rows());
            p.restarts = restarts;
            p.seed = derive_seed(seed, static_cast<std::uint64_t>(f));
            const auto clf = kmeans::fit_classifier(xtr, ytr, p);
            std::vector<int> pred;
            for (auto i : test) pred.push_back(kmeans::predict_label(clf, xs.row(i)));
            total += metrics::accuracy(metrics::confusion(yte, pred));
        }
        return total / static_cast<double>(plan.k());
    };
}

std::vector<std::size_t> default_candidates(std::size_t d) {
    auto ceil_div = [](std::size_t a, std::size_t b) { return (a + b - 1) / b; };
    std::vector<std::size_t> c{d, ceil_div(3 * d, 4), ceil_div(d, 2), ceil_div(d, 4)};
    std::sort(c.begin(), c.end(), std::greater<>());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    std::erase(c, 0);
    return c;
}

}  // namespace riskmeans::select
