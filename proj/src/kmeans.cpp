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

#include "riskmeans/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace riskmeans::kmeans {

namespace {

void check_points(const Matrix& points, std::size_t k) {
    require(points.rows() >= 1, ErrorCode::Argument, "k-means needs at least one point");
    require(k >= 1, ErrorCode::Argument, "k must be at least 1");
    require(k <= points.rows(), ErrorCode::Argument,
            "k = " + std::to_string(k) + " exceeds point count " + std::to_string(points.rows()));
}

void copy_row(const Matrix& from, std::size_t r, Matrix& to, std::size_t dst) {
    auto src = from.row(r);
    std::copy(src.begin(), src.end(), to.row(dst).begin());
}

double norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

const char* to_string(InitMethod m) { return m == InitMethod::KMeansPlusPlus ? "kmeanspp" : "uniform"; }

InitMethod parse_init(const std::string& s) {
    if (s == "kmeanspp" || s == "k-means++") return InitMethod::KMeansPlusPlus;
    if (s == "uniform") return InitMethod::Uniform;
    fail(ErrorCode::Argument, "unknown init method '" + s + "' (expected kmeanspp or uniform)");
}

Matrix kmeanspp_init(const Matrix& points, std::size_t k, Rng& rng) {
    check_points(points, k);
    const std::size_t n = points.rows();
    Matrix centers(k, points.cols());
    std::vector<bool> chosen(n, false);

    std::size_t first = static_cast<std::size_t>(rng.below(n));
    copy_row(points, first, centers, 0);
    chosen[first] = true;

    std::vector<double> d2(n);
    for (std::size_t i = 0; i < n; ++i) d2[i] = squared_distance(points.row(i), centers.row(0));

    for (std::size_t c = 1; c < k; ++c) {
        const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
        std::size_t pick = n;
        if (total > 0.0) {
            const double target = rng.uniform() * total;
            double cum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (d2[i] <= 0.0) continue;
                cum += d2[i];
                pick = i;
                if (cum > target) break;
            }
        } else {
            // Fewer distinct rows than k: fall back to the first unused row.
            for (std::size_t i = 0; i < n && pick == n; ++i)
                if (!chosen[i]) pick = i;
        }
        copy_row(points, pick, centers, c);
        chosen[pick] = true;
        for (std::size_t i = 0; i < n; ++i) d2[i] = std::min(d2[i], squared_distance(points.row(i), centers.row(c)));
    }
    return centers;
}

Matrix uniform_init(const Matrix& points, std::size_t k, Rng& rng) {
    check_points(points, k);
    std::vector<std::size_t> idx(points.rows());
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < k; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(idx.size() - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return points.select_rows(idx);
}

Matrix init_centers(const Matrix& points, std::size_t k, Rng& rng, InitMethod method) {
    return method == InitMethod::KMeansPlusPlus ? kmeanspp_init(points, k, rng) : uniform_init(points, k, rng);
}

std::size_t nearest(const Matrix& centroids, std::span<const double> x) {
    require(x.size() == centroids.cols(), ErrorCode::Argument,
            "dimension mismatch: point has " + std::to_string(x.size()) + " features, model expects " +
                std::to_string(centroids.cols()));
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < centroids.rows(); ++j) {
        const double d = squared_distance(x, centroids.row(j));
        if (d < best_d) {
            best_d = d;
            best = j;
        }
    }
    return best;
}

std::size_t assign(const KMeansModel& model, std::span<const double> x) { return nearest(model.centroids, x); }

std::vector<std::size_t> assign_all(const KMeansModel& model, const Matrix& points) {
    std::vector<std::size_t> out(points.rows());
    for (std::size_t i = 0; i < points.rows(); ++i) out[i] = nearest(model.centroids, points.row(i));
    return out;
}

double wcss(const Matrix& points, const Matrix& centroids, std::span<const std::size_t> assignment) {
    double s = 0.0;
    for (std::size_t i = 0; i < points.rows(); ++i) s += squared_distance(points.row(i), centroids.row(assignment[i]));
    return s;
}

KMeansModel lloyd_run(const Matrix& points, Matrix centers, std::size_t max_iters, double tol) {
    const std::size_t n = points.rows();
    const std::size_t k = centers.rows();
    const std::size_t d = points.cols();
    check_points(points, k);
    require(centers.cols() == d, ErrorCode::Argument, "initial centres have the wrong dimension");
    require(tol >= 0.0, ErrorCode::Argument, "tol must be non-negative");

    KMeansModel model;
    std::vector<std::size_t> assignment(n);
    std::vector<std::size_t> counts(k);
    std::vector<double> dist(n);

    for (std::size_t it = 1; it <= max_iters; ++it) {
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            assignment[i] = nearest(centers, points.row(i));
            dist[i] = squared_distance(points.row(i), centers.row(assignment[i]));
            ++counts[assignment[i]];
        }
        // Empty clusters take the point farthest from its centroid, drawn from clusters
        // that can spare a member.
        for (std::size_t j = 0; j < k; ++j) {
            if (counts[j] != 0) continue;
            std::size_t far = n;
            for (std::size_t i = 0; i < n; ++i) {
                if (counts[assignment[i]] < 2) continue;
                if (far == n || dist[i] > dist[far]) far = i;
            }
            copy_row(points, far, centers, j);
            --counts[assignment[far]];
            assignment[far] = j;
            dist[far] = 0.0;
            counts[j] = 1;
        }
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) total += dist[i];
        model.wcss_trace.push_back(total);

        Matrix next(k, d);
        for (std::size_t i = 0; i < n; ++i) {
            auto dst = next.row(assignment[i]);
            auto src = points.row(i);
            for (std::size_t c = 0; c < d; ++c) dst[c] += src[c];
        }
        double shift = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            auto row = next.row(j);
            for (double& v : row) v /= static_cast<double>(counts[j]);
            shift = std::max(shift, distance(row, centers.row(j)) / (1.0 + norm(centers.row(j))));
        }
        centers = std::move(next);
        model.iterations_run = it;
        if (shift < tol || shift == 0.0) {
            model.converged = true;
            break;
        }
    }

    model.centroids = std::move(centers);
    const auto final_assignment = assign_all(model, points);
    model.wcss = wcss(points, model.centroids, final_assignment);
    model.wcss_trace.push_back(model.wcss);
    return model;
}

KMeansModel lloyd_fit(const Matrix& points, const KMeansParams& params) {
    check_points(points, params.k);
    require(points.all_finite(), ErrorCode::Numeric, "k-means input contains non-finite values");
    require(params.restarts >= 1, ErrorCode::Argument, "restarts must be at least 1");
    KMeansModel best;
    bool have = false;
    for (std::size_t r = 0; r < params.restarts; ++r) {
        Rng rng(derive_seed(params.seed, static_cast<std::uint64_t>(r)));
        auto model = lloyd_run(points, init_centers(points, params.k, rng, params.init), params.max_iters, params.tol);
        if (!have || model.wcss < best.wcss) {
            best = std::move(model);
            have = true;
        }
    }
    return best;
}

double silhouette_score(const Matrix& points, std::span<const std::size_t> assignment) {
    const std::size_t n = points.rows();
    require(assignment.size() == n, ErrorCode::Argument, "assignment length does not match point count");
    require(n >= 3, ErrorCode::Argument, "silhouette undefined for fewer than 3 points");
    const std::size_t k = *std::max_element(assignment.begin(), assignment.end()) + 1;
    std::vector<std::size_t> sizes(k, 0);
    for (auto a : assignment) ++sizes[a];
    const auto nonempty = std::count_if(sizes.begin(), sizes.end(), [](std::size_t s) { return s > 0; });
    require(nonempty >= 2, ErrorCode::Argument, "silhouette undefined: fewer than two non-empty clusters");

    double total = 0.0;
    std::vector<double> sums(k);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t own = assignment[i];
        if (sizes[own] < 2) continue;
        std::fill(sums.begin(), sums.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) sums[assignment[j]] += distance(points.row(i), points.row(j));
        const double a = sums[own] / static_cast<double>(sizes[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c)
            if (c != own && sizes[c] > 0) b = std::min(b, sums[c] / static_cast<double>(sizes[c]));
        const double m = std::max(a, b);
        if (m > 0.0) total += (b - a) / m;
    }
    return total / static_cast<double>(n);
}

KSelection choose_k(const Matrix& points, std::size_t k_min, std::size_t k_max, const KMeansParams& params) {
    require(k_min <= k_max, ErrorCode::Argument, "empty k range");
    require(k_min >= 2, ErrorCode::Argument, "k range must start at 2 or above");
    require(k_max + 1 <= points.rows(), ErrorCode::Argument,
            "k range upper bound " + std::to_string(k_max) + " must be below point count " +
                std::to_string(points.rows()));
    KSelection sel;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = k_min; k <= k_max; ++k) {
        KMeansParams p = params;
        p.k = k;
        auto model = lloyd_fit(points, p);
        const auto assignment = assign_all(model, points);
        double score = -1.0;
        std::vector<bool> used(k, false);
        for (auto a : assignment) used[a] = true;
        if (std::count(used.begin(), used.end(), true) >= 2) score = silhouette_score(points, assignment);
        sel.candidates.push_back(k);
        sel.silhouettes.push_back(score);
        if (score > best) {
            best = score;
            sel.k = k;
            sel.model = std::move(model);
        }
    }
    return sel;
}

ClusterClassifier make_classifier(KMeansModel model, const Matrix& x, std::span<const int> labels) {
    require(labels.size() == x.rows(), ErrorCode::Argument, "label count does not match row count");
    const auto pos = std::count(labels.begin(), labels.end(), 1);
    require(pos > 0 && static_cast<std::size_t>(pos) < labels.size(), ErrorCode::Argument,
            "training set must contain both classes");
    const auto assignment = assign_all(model, x);
    std::vector<double> members(model.k(), 0.0), positives(model.k(), 0.0);
    double dist_sum = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        members[assignment[i]] += 1.0;
        positives[assignment[i]] += labels[i] == 1 ? 1.0 : 0.0;
        dist_sum += distance(x.row(i), model.centroids.row(assignment[i]));
    }
    ClusterClassifier clf;
    clf.posteriors.resize(model.k());
    for (std::size_t j = 0; j < model.k(); ++j) clf.posteriors[j] = (positives[j] + 1.0) / (members[j] + 2.0);
    const double sigma = dist_sum / static_cast<double>(x.rows());
    clf.bandwidth = sigma > 0.0 ? sigma : 1.0;
    clf.model = std::move(model);
    return clf;
}

ClusterClassifier fit_classifier(const Matrix& x, std::span<const int> labels, const KMeansParams& params) {
    const auto pos = std::count(labels.begin(), labels.end(), 1);
    require(pos > 0 && static_cast<std::size_t>(pos) < labels.size(), ErrorCode::Argument,
            "training set must contain both classes");
    auto clf = make_classifier(lloyd_fit(x, params), x, labels);
    clf.seed = params.seed;
    return clf;
}

double predict_score(const ClusterClassifier& clf, std::span<const double> x) {
    const Matrix& c = clf.model.centroids;
    require(x.size() == c.cols(), ErrorCode::Argument,
            "dimension mismatch: point has " + std::to_string(x.size()) + " features, model expects " +
                std::to_string(c.cols()));
    require(clf.posteriors.size() == c.rows(), ErrorCode::State, "classifier posteriors do not match centroids");
    const double denom = 2.0 * clf.bandwidth * clf.bandwidth;
    std::vector<double> logits(c.rows());
    for (std::size_t j = 0; j < c.rows(); ++j) logits[j] = -squared_distance(x, c.row(j)) / denom;
    const double top = *std::max_element(logits.begin(), logits.end());
    double wsum = 0.0, score = 0.0;
    for (std::size_t j = 0; j < c.rows(); ++j) {
        const double w = std::exp(logits[j] - top);
        wsum += w;
        score += w * clf.posteriors[j];
    }
    return std::clamp(score / wsum, 0.0, 1.0);
}

int predict_label(const ClusterClassifier& clf, std::span<const double> x) {
    return predict_score(clf, x) >= clf.threshold ? 1 : 0;
}

std::vector<double> predict_scores(const ClusterClassifier& clf, const Matrix& x) {
    std::vector<double> out(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) out[i] = predict_score(clf, x.row(i));
    return out;
}

}  // namespace riskmeans::kmeans
