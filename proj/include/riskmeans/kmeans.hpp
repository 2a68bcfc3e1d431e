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
#include <span>
#include <string>
#include <vector>

#include "riskmeans/matrix.hpp"
#include "riskmeans/random.hpp"

namespace riskmeans::kmeans {

enum class InitMethod { KMeansPlusPlus, Uniform };

const char* to_string(InitMethod m);
InitMethod parse_init(const std::string& s);

struct KMeansParams {
    std::size_t k = 2;
    std::size_t max_iters = 300;
    double tol = 1e-6;  // on max relative centroid shift, shift / (1 + |old centroid|)
    std::size_t restarts = 10;
    std::uint64_t seed = 0;
    InitMethod init = InitMethod::KMeansPlusPlus;
};

struct KMeansModel {
    Matrix centroids;
    double wcss = 0.0;
    std::size_t iterations_run = 0;
    bool converged = false;
    /// WCSS after each assignment step, then the final WCSS. Non-increasing.
    std::vector<double> wcss_trace;

    std::size_t k() const noexcept { return centroids.rows(); }
    std::size_t d() const noexcept { return centroids.cols(); }
};

/// D^2-weighted seeding. Every centre is a row of `points`; centres are distinct whenever at
/// least k distinct rows exist.
Matrix kmeanspp_init(const Matrix& points, std::size_t k, Rng& rng);

/// k row indices drawn uniformly without replacement.
Matrix uniform_init(const Matrix& points, std::size_t k, Rng& rng);

Matrix init_centers(const Matrix& points, std::size_t k, Rng& rng, InitMethod method);

/// One Lloyd run from the given centres.
KMeansModel lloyd_run(const Matrix& points, Matrix centers, std::size_t max_iters, double tol);

/// Best of `params.restarts` runs (minimal WCSS, earliest restart on ties).
KMeansModel lloyd_fit(const Matrix& points, const KMeansParams& params);

/// Index of the nearest centroid; exact ties go to the lowest index.
std::size_t nearest(const Matrix& centroids, std::span<const double> x);
std::size_t assign(const KMeansModel& model, std::span<const double> x);
std::vector<std::size_t> assign_all(const KMeansModel& model, const Matrix& points);

double wcss(const Matrix& points, const Matrix& centroids, std::span<const std::size_t> assignment);

/// Mean silhouette over all points; singleton members contribute 0.
double silhouette_score(const Matrix& points, std::span<const std::size_t> assignment);

struct KSelection {
    std::size_t k = 0;
    std::vector<std::size_t> candidates;
    std::vector<double> silhouettes;  // parallel to candidates
    KMeansModel model;                // fitted model for the chosen k
};

/// Fits every k in [k_min, k_max] and keeps the silhouette maximum (smallest k on ties).
/// A fit that leaves fewer than two non-empty clusters scores -1.
KSelection choose_k(const Matrix& points, std::size_t k_min, std::size_t k_max, const KMeansParams& params);

/// K-means model plus per-cluster P(positive); scores via a Gaussian soft assignment.
struct ClusterClassifier {
    KMeansModel model;
    std::vector<double> posteriors;
    double bandwidth = 1.0;
    double threshold = 0.5;
    std::uint64_t seed = 0;
    std::string preprocess_fingerprint;
};

/// Laplace-smoothed posteriors (pos + 1) / (members + 2) under the model's assignment, and
/// bandwidth = mean distance to the assigned centroid (1 when that is 0).
ClusterClassifier make_classifier(KMeansModel model, const Matrix& x, std::span<const int> labels);

ClusterClassifier fit_classifier(const Matrix& x, std::span<const int> labels, const KMeansParams& params);

double predict_score(const ClusterClassifier& clf, std::span<const double> x);
int predict_label(const ClusterClassifier& clf, std::span<const double> x);
std::vector<double> predict_scores(const ClusterClassifier& clf, const Matrix& x);

}  // namespace riskmeans::kmeans
