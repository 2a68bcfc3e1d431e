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
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "riskmeans/kmeans.hpp"
#include "riskmeans/matrix.hpp"

namespace riskmeans::scan {

struct ScanConfig {
    std::size_t input_dim = 400;
    std::vector<std::size_t> windows{100, 200, 300};
    std::size_t stride = 1;
    std::size_t estimators = 2;
    std::size_t classes = 2;

    void validate() const;
};

/// floor((L - w) / s) + 1.
std::size_t window_count(std::size_t length, std::size_t window, std::size_t stride = 1);

/// Output width for one window size: window_count * estimators * classes.
std::size_t output_dim(const ScanConfig& cfg, std::size_t window);

/// Contiguous slices [i*s, i*s + w) in order.
std::vector<std::vector<double>> scan(std::span<const double> x, std::size_t window, std::size_t stride = 1);

/// Per-window probability model. transform() returns `classes` probabilities summing to 1.
class WindowEstimator {
public:
    virtual ~WindowEstimator() = default;
    virtual void fit(const Matrix& windows, std::span<const int> labels) = 0;
    virtual std::vector<double> transform(std::span<const double> window) const = 0;
    virtual bool fitted() const = 0;
    virtual std::string name() const = 0;
};

/// Always returns the same distribution. Used for dimension checks.
class ConstantEstimator final : public WindowEstimator {
public:
    explicit ConstantEstimator(std::vector<double> probs = {0.5, 0.5});
    void fit(const Matrix& windows, std::span<const int> labels) override;
    std::vector<double> transform(std::span<const double> window) const override;
    bool fitted() const override { return fitted_; }
    std::string name() const override { return "constant"; }

private:
    std::vector<double> probs_;
    bool fitted_ = false;
};

/// Cluster-posterior classifier over window vectors; transform gives (1 - score, score).
class PrototypeEstimator final : public WindowEstimator {
public:
    explicit PrototypeEstimator(kmeans::KMeansParams params);
    void fit(const Matrix& windows, std::span<const int> labels) override;
    std::vector<double> transform(std::span<const double> window) const override;
    bool fitted() const override { return classifier_ != nullptr; }
    std::string name() const override { return "kmeans-prototype"; }

    const kmeans::ClusterClassifier& classifier() const;

private:
    kmeans::KMeansParams params_;
    std::shared_ptr<const kmeans::ClusterClassifier> classifier_;
};

/// Estimators for one window size, indexed by estimator slot.
struct WindowLayer {
    std::size_t window = 0;
    std::vector<std::shared_ptr<WindowEstimator>> estimators;
};

struct FittedScanner {
    ScanConfig config;
    std::vector<WindowLayer> layers;  // parallel to config.windows
};

/// Scanner output for one window size.
struct ScanFeatures {
    std::size_t window = 0;
    std::vector<double> values;  // window-major, then estimator, then class
};

/// Builds one estimator per (window size, slot); defaults to PrototypeEstimator with the slot's
/// seed derived from `seed`.
using EstimatorFactory = std::function<std::shared_ptr<WindowEstimator>(std::size_t window, std::size_t slot)>;

EstimatorFactory prototype_factory(kmeans::KMeansParams base, std::uint64_t seed);

/// Pools every window position of every training row (label = row label) and fits each slot.
FittedScanner fit_window_estimators(const Matrix& train, std::span<const int> labels, const ScanConfig& cfg,
                                    const EstimatorFactory& factory);

std::vector<ScanFeatures> transform_vector(std::span<const double> x, const FittedScanner& scanner);

/// Concatenation of all window sizes, in config order.
std::vector<double> transform_concat(std::span<const double> x, const FittedScanner& scanner);
Matrix transform_matrix(const Matrix& x, const FittedScanner& scanner);

/// Column names "w<w>_win<i>_est<m>_c<c>" matching transform_concat order.
std::vector<std::string> feature_names(const ScanConfig& cfg);

/// Right-pads each row with zeros up to `length` columns.
Matrix zero_pad(const Matrix& x, std::size_t length);

}  // namespace riskmeans::scan
