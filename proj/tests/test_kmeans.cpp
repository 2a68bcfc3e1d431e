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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "oracles.hpp"
#include "riskmeans/error.hpp"
#include "riskmeans/kmeans.hpp"

using namespace riskmeans;
using namespace riskmeans::kmeans;

namespace {

std::vector<std::vector<double>> rows_of(const Matrix& m) {
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < m.rows(); ++i) out.emplace_back(m.row(i).begin(), m.row(i).end());
    std::sort(out.begin(), out.end());
    return out;
}

bool is_row_of(const Matrix& points, std::span<const double> c) {
    for (std::size_t i = 0; i < points.rows(); ++i)
        if (std::equal(c.begin(), c.end(), points.row(i).begin())) return true;
    return false;
}

double recomputed_wcss(const Matrix& x, const KMeansModel& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i)
        s += oracle::sq(oracle::euclid(x.row(i), m.centroids.row(oracle::brute_nearest(m.centroids, x.row(i)))));
    return s;
}

KMeansParams params(std::size_t k, std::uint64_t seed, std::size_t restarts = 10) {
    KMeansParams p;
    p.k = k;
    p.seed = seed;
    p.restarts = restarts;
    return p;
}

KMeansModel fixed_model(const std::vector<std::vector<double>>& centroids) {
    KMeansModel m;
    m.centroids = Matrix::from_rows(centroids);
    return m;
}

}  // namespace

TEST_SUITE("kmeans") {

TEST_CASE("seeding picks rows of the input") {
    Rng rng(1);
    const Matrix x = oracle::random_matrix(6, 3, rng);
    Rng a(9);
    const Matrix all = kmeanspp_init(x, 6, a);
    CHECK(rows_of(all) == rows_of(x));
    Rng b(9);
    const Matrix one = kmeanspp_init(x, 1, b);
    REQUIRE(one.rows() == 1);
    CHECK(is_row_of(x, one.row(0)));
    Rng u(9);
    CHECK(rows_of(uniform_init(x, 6, u)) == rows_of(x));
}

TEST_CASE("seeding is deterministic and distinct") {
    Rng rng(2);
    const Matrix x = oracle::random_matrix(100, 2, rng);
    Rng a(5), b(5);
    const Matrix c1 = kmeanspp_init(x, 3, a);
    CHECK(c1 == kmeanspp_init(x, 3, b));
    const auto rows = rows_of(c1);
    CHECK(std::set(rows.begin(), rows.end()).size() == 3);
}

TEST_CASE("seeding with more centres than distinct rows still returns rows") {
    const Matrix x = Matrix::from_rows({{1, 1}, {1, 1}, {2, 2}});
    Rng rng(4);
    const Matrix c = kmeanspp_init(x, 3, rng);
    for (std::size_t j = 0; j < 3; ++j) CHECK(is_row_of(x, c.row(j)));
}

TEST_CASE("k larger than n is rejected") {
    Rng rng(1);
    const Matrix x = oracle::random_matrix(3, 2, rng);
    CHECK_THROWS_AS(kmeanspp_init(x, 4, rng), Error);
    CHECK_THROWS_AS(lloyd_fit(x, params(4, 1)), Error);
}

TEST_CASE("two separated blobs") {
    Rng rng(7);
    const Matrix x = oracle::blobs({{-10, 0}, {10, 0}}, 50, 1.0, rng);
    const auto m = lloyd_fit(x, params(2, 3));
    for (int b = 0; b < 2; ++b) {
        double mx = 0.0, my = 0.0;
        for (int i = 0; i < 50; ++i) {
            mx += x(b * 50 + i, 0) / 50.0;
            my += x(b * 50 + i, 1) / 50.0;
        }
        const std::size_t j = nearest(m.centroids, std::vector<double>{mx, my});
        CHECK(std::abs(m.centroids(j, 0) - mx) < 0.5);
        CHECK(std::abs(m.centroids(j, 1) - my) < 0.5);
    }
    CHECK(std::abs(m.wcss - oracle::partition_cost(x, [&] {
        std::vector<int> g(100);
        for (int i = 0; i < 100; ++i) g[i] = i < 50 ? 0 : 1;
        return g;
    }(), 2)) < 1e-9);
    CHECK(std::abs(m.wcss - recomputed_wcss(x, m)) < 1e-9);
}

TEST_CASE("identical points converge at once with zero cost") {
    const Matrix x(10, 3, 4.5);
    for (std::size_t k : {1, 2, 5, 10}) {
        const auto m = lloyd_fit(x, params(k, 1, 2));
        CHECK(m.wcss == 0.0);
        CHECK(m.converged);
        CHECK(m.iterations_run == 1);
    }
}

TEST_CASE("never beats the exhaustive 2-partition optimum") {
    Rng rng(123);
    int equal = 0;
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 3 + rng.below(6);
        const Matrix x = oracle::random_matrix(n, 2, rng);
        const double best = oracle::best_two_partition(x);
        const auto m = lloyd_fit(x, params(2, static_cast<std::uint64_t>(t)));
        CHECK(m.wcss >= best - 1e-9);
        if (std::abs(m.wcss - best) <= 1e-9) ++equal;
    }
    CHECK(equal >= 36);
}

TEST_CASE("non-finite input is rejected") {
    Matrix x(5, 2, 1.0);
    x(3, 1) = std::nan("");
    CHECK_THROWS_AS(lloyd_fit(x, params(2, 0)), Error);
    try {
        lloyd_fit(x, params(2, 0));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Numeric);
    }
}

TEST_CASE("assign: exact hits, tie rule, dimension check") {
    const auto m = fixed_model({{0, 0}, {2, 0}, {5, 5}});
    CHECK(assign(m, std::vector<double>{5, 5}) == 2);
    CHECK(assign(m, std::vector<double>{1, 0}) == 0);
    CHECK_THROWS_AS(assign(m, std::vector<double>{1, 0, 0}), Error);
}

TEST_CASE("assign agrees with a brute-force scan and is idempotent") {
    Rng rng(17);
    const Matrix x = oracle::random_matrix(20, 3, rng);
    const auto m = lloyd_fit(x, params(4, 2));
    const auto a = assign_all(m, x);
    CHECK(assign_all(m, x) == a);
    for (std::size_t i = 0; i < x.rows(); ++i) CHECK(a[i] == oracle::brute_nearest(m.centroids, x.row(i)));
}

TEST_CASE("reported WCSS matches recomputation and traces never rise") {
    Rng rng(99);
    for (int t = 0; t < 25; ++t) {
        const std::size_t n = 20 + rng.below(200);
        const std::size_t d = 1 + rng.below(6);
        const std::size_t k = 1 + rng.below(6);
        const Matrix x = oracle::random_matrix(n, d, rng);
        const auto m = lloyd_fit(x, params(k, static_cast<std::uint64_t>(t), 3));
        CHECK(std::abs(m.wcss - recomputed_wcss(x, m)) <= 1e-9 * (1.0 + m.wcss));
        CHECK(std::abs(m.wcss - wcss(x, m.centroids, assign_all(m, x))) <= 1e-9 * (1.0 + m.wcss));
        for (std::size_t i = 1; i < m.wcss_trace.size(); ++i)
            CHECK(m.wcss_trace[i] <= m.wcss_trace[i - 1] * (1.0 + 1e-12) + 1e-12);
    }
}

TEST_CASE("translation equivariance") {
    Rng rng(31);
    const Matrix x = oracle::random_matrix(60, 3, rng);
    Matrix shifted = x;
    const double c[3] = {3.0, -7.5, 0.25};
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < 3; ++j) shifted(i, j) += c[j];
    const auto a = lloyd_fit(x, params(3, 8));
    const auto b = lloyd_fit(shifted, params(3, 8));
    CHECK(assign_all(a, x) == assign_all(b, shifted));
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t j = 0; j < 3; ++j) CHECK(b.centroids(r, j) == doctest::Approx(a.centroids(r, j) + c[j]).epsilon(1e-9));
}

TEST_CASE("silhouette: tight far pairs") {
    const Matrix x = Matrix::from_rows({{0, 0}, {0.1, 0}, {50, 50}, {50.1, 50}});
    CHECK(silhouette_score(x, std::vector<std::size_t>{0, 0, 1, 1}) > 0.95);
}

TEST_CASE("silhouette: points on a line against the hand value") {
    const Matrix x = Matrix::from_rows({{0}, {1}, {10}, {11}});
    const std::vector<std::size_t> a{0, 0, 1, 1};
    const double hand = (9.5 / 10.5 + 8.5 / 9.5) / 2.0;
    CHECK(std::abs(silhouette_score(x, a) - hand) < 1e-9);
    CHECK(std::abs(silhouette_score(x, a) - oracle::silhouette(x, a)) < 1e-9);
}

TEST_CASE("silhouette matches the textbook formula on random clusterings") {
    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
        const Matrix x = oracle::random_matrix(15, 2, rng);
        std::vector<std::size_t> a(15);
        for (std::size_t i = 0; i < 15; ++i) a[i] = i < 3 ? i : rng.below(4);
        CHECK(std::abs(silhouette_score(x, a) - oracle::silhouette(x, a)) < 1e-12);
    }
}

TEST_CASE("silhouette undefined for one cluster") {
    const Matrix x = Matrix::from_rows({{0}, {1}, {2}});
    CHECK_THROWS_WITH_AS(silhouette_score(x, std::vector<std::size_t>{0, 0, 0}),
                         doctest::Contains("silhouette undefined"), Error);
}

TEST_CASE("choose_k finds the blob count") {
    Rng rng(12);
    const Matrix three = oracle::blobs({{0, 0}, {20, 0}, {0, 20}}, 30, 1.0, rng);
    const auto s = choose_k(three, 2, 6, params(2, 4, 5));
    CHECK(s.k == 3);
    CHECK(s.candidates == std::vector<std::size_t>{2, 3, 4, 5, 6});
    CHECK(s.silhouettes.size() == 5);
    CHECK(s.model.k() == 3);
    CHECK(choose_k(three, 2, 2, params(2, 4, 5)).k == 2);
    const Matrix two = oracle::blobs({{-10, 0}, {10, 0}}, 30, 1.0, rng);
    CHECK(choose_k(two, 2, 4, params(2, 4, 5)).k == 2);
}

TEST_CASE("choose_k ties go to the smallest k") {
    const Matrix same(12, 2, 1.0);
    const auto s = choose_k(same, 3, 5, params(2, 0, 2));
    CHECK(s.silhouettes == std::vector<double>{-1.0, -1.0, -1.0});
    CHECK(s.k == 3);
}

TEST_CASE("choose_k rejects bad ranges") {
    const Matrix x(5, 1, 0.0);
    CHECK_THROWS_AS(choose_k(x, 4, 3, params(2, 0)), Error);
    CHECK_THROWS_AS(choose_k(x, 2, 5, params(2, 0)), Error);
}

TEST_CASE("classifier posteriors use Laplace smoothing") {
    const Matrix x = Matrix::from_rows({{0}, {0.1}, {0.2}, {0.3}, {0.4}, {10}, {10.1}});
    const std::vector<int> y{1, 1, 1, 1, 1, 0, 0};
    const auto clf = make_classifier(fixed_model({{0.2}, {10.05}, {1000}}), x, y);
    CHECK(clf.posteriors[0] == doctest::Approx(6.0 / 7.0));
    CHECK(clf.posteriors[1] == doctest::Approx(1.0 / 4.0));
    CHECK(clf.posteriors[2] == 0.5);
}

TEST_CASE("classifier bandwidth is the mean distance, or 1 when zero") {
    const Matrix x = Matrix::from_rows({{0}, {2}, {10}, {14}});
    const std::vector<int> y{1, 0, 1, 0};
    CHECK(make_classifier(fixed_model({{1}, {12}}), x, y).bandwidth == doctest::Approx(1.5));
    CHECK(make_classifier(fixed_model({{0}, {2}, {10}, {14}}), x, y).bandwidth == 1.0);
}

TEST_CASE("classifier on class-aligned blobs") {
    Rng rng(44);
    const Matrix x = oracle::blobs({{-5, 0}, {5, 0}}, 40, 1.0, rng);
    std::vector<int> y(80, 0);
    for (int i = 0; i < 40; ++i) y[i] = 1;
    const auto clf = fit_classifier(x, y, params(2, 1));
    const double hi = std::max(clf.posteriors[0], clf.posteriors[1]);
    const double lo = std::min(clf.posteriors[0], clf.posteriors[1]);
    CHECK(hi > 0.8);
    CHECK(lo < 0.2);
    CHECK(predict_label(clf, std::vector<double>{-5, 0}) == 1);
    CHECK(predict_label(clf, std::vector<double>{5, 0}) == 0);
    CHECK_THROWS_AS(fit_classifier(x, std::vector<int>(80, 1), params(2, 1)), Error);
}

TEST_CASE("score: one cluster, symmetry, and the small-bandwidth limit") {
    ClusterClassifier one;
    one.model = fixed_model({{0, 0}});
    one.posteriors = {0.3};
    CHECK(predict_score(one, std::vector<double>{5, -2}) == doctest::Approx(0.3));

    ClusterClassifier two;
    two.model = fixed_model({{-1, 0}, {1, 0}});
    two.posteriors = {0.2, 0.9};
    two.bandwidth = 0.7;
    CHECK(predict_score(two, std::vector<double>{0, 3}) == doctest::Approx(0.55));
    two.bandwidth = 1e-3;
    CHECK(predict_score(two, std::vector<double>{1, 0}) == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(predict_score(two, std::vector<double>{-1, 0}) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK_THROWS_AS(predict_score(two, std::vector<double>{1}), Error);
}

TEST_CASE("score stays in [0,1] and rises with a posterior when k = 2") {
    Rng rng(8);
    ClusterClassifier c;
    c.model = fixed_model({{0, 0}, {3, 1}});
    c.bandwidth = 0.4;
    for (int t = 0; t < 200; ++t) {
        std::vector<double> x{10 * oracle::normal(rng), 10 * oracle::normal(rng)};
        c.posteriors = {rng.uniform(), rng.uniform()};
        const double s = predict_score(c, x);
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
        auto higher = c;
        higher.posteriors[1] = std::min(1.0, c.posteriors[1] + 0.1);
        CHECK(predict_score(higher, x) >= s);
    }
}

TEST_CASE("init method names") {
    CHECK(parse_init("kmeanspp") == InitMethod::KMeansPlusPlus);
    CHECK(parse_init("uniform") == InitMethod::Uniform);
    CHECK(std::string(to_string(InitMethod::Uniform)) == "uniform");
    CHECK_THROWS_AS(parse_init("random"), Error);
}

TEST_CASE("uniform initialisation also fits") {
    Rng rng(71);
    const Matrix x = oracle::blobs({{-10, 0}, {10, 0}}, 20, 1.0, rng);
    auto p = params(2, 5);
    p.init = InitMethod::Uniform;
    const auto m = lloyd_fit(x, p);
    std::vector<int> truth(40, 0);
    for (int i = 20; i < 40; ++i) truth[i] = 1;
    CHECK(std::abs(m.wcss - oracle::partition_cost(x, truth, 2)) < 1e-9);
}

}  // TEST_SUITE
