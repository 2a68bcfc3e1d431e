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

#include "riskmeans/scanner.hpp"

#include <cmath>
#include <numeric>

namespace riskmeans::scan {

void ScanConfig::validate() const {
    require(stride >= 1, ErrorCode::Argument, "scanner stride must be at least 1");
    require(estimators >= 1, ErrorCode::Argument, "scanner needs at least one estimator per window");
    require(classes >= 1, ErrorCode::Argument, "scanner needs at least one class");
    require(!windows.empty(), ErrorCode::Argument, "scanner needs at least one window size");
    for (auto w : windows)
        require(w >= 1 && w <= input_dim, ErrorCode::Argument,
                "window " + std::to_string(w) + " outside [1, " + std::to_string(input_dim) + "]");
}

std::size_t window_count(std::size_t length, std::size_t window, std::size_t stride) {
    require(stride >= 1, ErrorCode::Argument, "stride must be at least 1");
    require(window >= 1 && window <= length, ErrorCode::Argument,
            "window " + std::to_string(window) + " does not fit input of length " + std::to_string(length));
    return (length - window) / stride + 1;
}

std::size_t output_dim(const ScanConfig& cfg, std::size_t window) {
    return window_count(cfg.input_dim, window, cfg.stride) * cfg.estimators * cfg.classes;
}

std::vector<std::vector<double>> scan(std::span<const double> x, std::size_t window, std::size_t stride) {
    const std::size_t count = window_count(x.size(), window, stride);
    std::vector<std::vector<double>> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto first = x.begin() + static_cast<std::ptrdiff_t>(i * stride);
        out.emplace_back(first, first + static_cast<std::ptrdiff_t>(window));
    }
    return out;
}

ConstantEstimator::ConstantEstimator(std::vector<double> probs) : probs_(std::move(probs)) {
    const double s = std::accumulate(probs_.begin(), probs_.end(), 0.0);
    require(!probs_.empty() && std::abs(s - 1.0) <= 1e-9, ErrorCode::Argument,
            "constant estimator probabilities must sum to 1");
}

void ConstantEstimator::fit(const Matrix&, std::span<const int>) { fitted_ = true; }

std::vector<double> ConstantEstimator::transform(std::span<const double>) const {
    require(fitted_, ErrorCode::State, "window estimator used before fit");
    return probs_;
}

PrototypeEstimator::PrototypeEstimator(kmeans::KMeansParams params) : params_(params) {}

void PrototypeEstimator::fit(const Matrix& windows, std::span<const int> labels) {
    auto p = params_;
    p.k = std::min(p.k, windows.rows());
    classifier_ = std::make_shared<const kmeans::ClusterClassifier>(kmeans::fit_classifier(windows, labels, p));
}

std::vector<double> PrototypeEstimator::transform(std::span<const double> window) const {
    require(classifier_ != nullptr, ErrorCode::State, "window estimator used before fit");
    const double s = kmeans::predict_score(*classifier_, window);
    return {1.0 - s, s};
}

const kmeans::ClusterClassifier& PrototypeEstimator::classifier() const {
    require(classifier_ != nullptr, ErrorCode::State, "window estimator used before fit");
    return *classifier_;
}

EstimatorFactory prototype_factory(kmeans::KMeansParams base, std::uint64_t seed) {
    return [base, seed](std::size_t window, std::size_t slot) {
        auto p = base;
        p.seed = derive_seed(derive_seed(seed, static_cast<std::uint64_t>(window)), static_cast<std::uint64_t>(slot));
        return std::make_shared<PrototypeEstimator>(p);
    };
}

FittedScanner fit_window_estimators(const Matrix& train, std::span<const int> labels, const ScanConfig& cfg,
                                    const EstimatorFactory& factory) {
    cfg.validate();
    require(train.cols() == cfg.input_dim, ErrorCode::Argument,
            "scanner input_dim " + std::to_string(cfg.input_dim) + " does not match training width " +
                std::to_string(train.cols()));
    require(labels.size() == train.rows(), ErrorCode::Argument, "label count does not match row count");
    FittedScanner fs;
    fs.config = cfg;
    for (auto w : cfg.windows) {
        const std::size_t per_row = window_count(cfg.input_dim, w, cfg.stride);
        Matrix pool(train.rows() * per_row, w);
        std::vector<int> pool_labels(pool.rows());
        for (std::size_t r = 0; r < train.rows(); ++r) {
            const auto row = train.row(r);
            for (std::size_t i = 0; i < per_row; ++i) {
                auto dst = pool.row(r * per_row + i);
                std::copy_n(row.begin() + static_cast<std::ptrdiff_t>(i * cfg.stride), w, dst.begin());
                pool_labels[r * per_row + i] = labels[r];
            }
        }
        WindowLayer layer;
        layer.window = w;
        for (std::size_t m = 0; m < cfg.estimators; ++m) {
            auto est = factory(w, m);
            est->fit(pool, pool_labels);
            layer.estimators.push_back(std::move(est));
        }
        fs.layers.push_back(std::move(layer));
    }
    return fs;
}

std::vector<ScanFeatures> transform_vector(std::span<const double> x, const FittedScanner& scanner) {
    const ScanConfig& cfg = scanner.config;
    require(x.size() == cfg.input_dim, ErrorCode::Argument,
            "scanner expects length " + std::to_string(cfg.input_dim) + ", got " + std::to_string(x.size()));
    require(scanner.layers.size() == cfg.windows.size(), ErrorCode::State, "scanner is not fitted");
    std::vector<ScanFeatures> out;
    for (const auto& layer : scanner.layers) {
        require(layer.estimators.size() == cfg.estimators, ErrorCode::State,
                "scanner layer for window " + std::to_string(layer.window) + " is missing estimators");
        for (const auto& e : layer.estimators)
            require(e && e->fitted(), ErrorCode::State, "window estimator used before fit");
        ScanFeatures f;
        f.window = layer.window;
        const std::size_t count = window_count(cfg.input_dim, layer.window, cfg.stride);
        f.values.reserve(count * cfg.estimators * cfg.classes);
        for (std::size_t i = 0; i < count; ++i) {
            const auto slice = x.subspan(i * cfg.stride, layer.window);
            for (const auto& e : layer.estimators) {
                const auto probs = e->transform(slice);
                require(probs.size() == cfg.classes, ErrorCode::State,
                        "estimator '" + e->name() + "' returned " + std::to_string(probs.size()) + " probabilities");
                f.values.insert(f.values.end(), probs.begin(), probs.end());
            }
        }
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<double> transform_concat(std::span<const double> x, const FittedScanner& scanner) {
    std::vector<double> out;
    for (auto& f : transform_vector(x, scanner)) out.insert(out.end(), f.values.begin(), f.values.end());
    return out;
}

Matrix transform_matrix(const Matrix& x, const FittedScanner& scanner) {
    std::size_t width = 0;
    for (auto w : scanner.config.windows) width += output_dim(scanner.config, w);
    Matrix out(x.rows(), width);
    for (std::size_t r = 0; r < x.rows(); ++r) {
        const auto v = transform_concat(x.row(r), scanner);
        std::copy(v.begin(), v.end(), out.row(r).begin());
    }
    return out;
}

std::vector<std::string> feature_names(const ScanConfig& cfg) {
    std::vector<std::string> names;
    for (auto w : cfg.windows) {
        const std::size_t count = window_count(cfg.input_dim, w, cfg.stride);
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t m = 0; m < cfg.estimators; ++m)
                for (std::size_t c = 0; c < cfg.classes; ++c)
                    names.push_back("w" + std::to_string(w) + "_win" + std::to_string(i) + "_est" + std::to_string(m) +
                                    "_c" + std::to_string(c));
    }
    return names;
}

Matrix zero_pad(const Matrix& x, std::size_t length) {
    require(length >= x.cols(), ErrorCode::Argument,
            "cannot pad " + std::to_string(x.cols()) + " columns down to " + std::to_string(length));
    Matrix out(x.rows(), length, 0.0);
    for (std::size_t r = 0; r < x.rows(); ++r) std::copy(x.row(r).begin(), x.row(r).end(), out.row(r).begin());
    return out;
}

}  // namespace riskmeans::scan
