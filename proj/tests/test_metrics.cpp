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

#include <cmath>

#include "oracles.hpp"
#include "riskmeans/error.hpp"
#include "riskmeans/metrics.hpp"

using namespace riskmeans;
using namespace riskmeans::metrics;

namespace {

// Random instance with deliberately coarse scores so ties are common; both classes present.
void random_instance(Rng& rng, std::vector<double>& s, std::vector<int>& y) {
    const std::size_t n = 2 + rng.below(49);
    s.resize(n);
    y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = static_cast<double>(rng.below(8)) / 8.0;
        y[i] = static_cast<int>(rng.below(2));
    }
    y[0] = 1;
    y[1] = 0;
}

ConfusionCounts cc(std::size_t tp, std::size_t tn, std::size_t fp, std::size_t fn) { return {tp, tn, fp, fn}; }

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("confusion tallies") {
    const std::vector<int> labels{1, 1, 0, 0};
    CHECK(confusion(labels, std::vector<int>{1, 0, 0, 1}) == cc(1, 1, 1, 1));
    const auto same = confusion(labels, labels);
    CHECK(same.fp == 0);
    CHECK(same.fn == 0);
    const auto flipped = confusion(labels, std::vector<int>{0, 0, 1, 1});
    CHECK(flipped.tp == 0);
    CHECK(flipped.tn == 0);
    CHECK_THROWS_AS(confusion(labels, std::vector<int>{1, 0}), Error);
    CHECK_THROWS_AS(confusion(std::vector<int>{}, std::vector<int>{}), Error);
    CHECK_THROWS_AS(confusion(labels, std::vector<int>{2, 0, 0, 0}), Error);
}

TEST_CASE("rates on a worked example") {
    const auto c = cc(2, 2, 1, 0);
    CHECK(accuracy(c) == doctest::Approx(0.8));
    CHECK(precision(c) == doctest::Approx(2.0 / 3.0));
    CHECK(recall(c) == 1.0);
    CHECK(f1(c) == doctest::Approx(0.8));
    CHECK(fpr(c) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("all correct") {
    const auto c = cc(3, 4, 0, 0);
    CHECK(accuracy(c) == 1.0);
    CHECK(f1(c) == 1.0);
    CHECK(fpr(c) == 0.0);
}

TEST_CASE("zero denominators give zero") {
    const auto none_predicted = cc(0, 5, 0, 3);
    CHECK(precision(none_predicted) == 0.0);
    CHECK(f1(none_predicted) == 0.0);
    const auto no_positives = cc(0, 5, 2, 0);
    CHECK(recall(no_positives) == 0.0);
    CHECK(tpr(no_positives) == 0.0);
    CHECK(fpr(cc(3, 0, 0, 1)) == 0.0);
}

TEST_CASE("recall equals TPR and F1 is the harmonic mean") {
    Rng rng(3);
    for (int t = 0; t < 500; ++t) {
        const auto c = cc(rng.below(20), rng.below(20), rng.below(20), rng.below(20) + 1);
        CHECK(recall(c) == tpr(c));
        const double p = precision(c), r = recall(c);
        if (p + r > 0.0) CHECK(f1(c) == doctest::Approx(2 * p * r / (p + r)).epsilon(1e-14));
    }
}

TEST_CASE("ROC by hand") {
    const auto roc = roc_curve(std::vector<double>{0.9, 0.8, 0.7, 0.6}, std::vector<int>{1, 0, 1, 0});
    const std::vector<RocPoint> want{{0, 0}, {0, 0.5}, {0.5, 0.5}, {0.5, 1}, {1, 1}};
    REQUIRE(roc.points.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
        CHECK(roc.points[i].fpr == want[i].fpr);
        CHECK(roc.points[i].tpr == want[i].tpr);
    }
    CHECK(roc.thresholds == std::vector<double>{0.9, 0.8, 0.7, 0.6});
    CHECK(auc(roc) == doctest::Approx(0.75));
}

TEST_CASE("ROC extremes") {
    const auto perfect = roc_curve(std::vector<double>{0.9, 0.8, 0.2, 0.1}, std::vector<int>{1, 1, 0, 0});
    bool corner = false;
    for (const auto& p : perfect.points) corner |= (p.fpr == 0.0 && p.tpr == 1.0);
    CHECK(corner);
    CHECK(auc(perfect) == 1.0);
    const auto flat = roc_curve(std::vector<double>{0.4, 0.4, 0.4}, std::vector<int>{1, 0, 1});
    REQUIRE(flat.points.size() == 2);
    CHECK(flat.points[0].fpr == 0.0);
    CHECK(flat.points[1].tpr == 1.0);
    CHECK(auc(flat) == 0.5);
    CHECK_THROWS_AS(roc_curve(std::vector<double>{0.1, 0.2}, std::vector<int>{1, 1}), Error);
    CHECK_THROWS_AS(roc_curve(std::vector<double>{0.1}, std::vector<int>{1, 0}), Error);
}

TEST_CASE("AUC equals the pair-count oracle") {
    Rng rng(2024);
    std::vector<double> s;
    std::vector<int> y;
    for (int t = 0; t < 300; ++t) {
        random_instance(rng, s, y);
        CHECK(std::abs(auc(roc_curve(s, y)) - oracle::pair_count_auc(s, y)) < 1e-9);
    }
}

TEST_CASE("ROC is monotone with exact endpoints") {
    Rng rng(5);
    std::vector<double> s;
    std::vector<int> y;
    for (int t = 0; t < 100; ++t) {
        random_instance(rng, s, y);
        const auto roc = roc_curve(s, y);
        CHECK(roc.points.front().fpr == 0.0);
        CHECK(roc.points.front().tpr == 0.0);
        CHECK(roc.points.back().fpr == 1.0);
        CHECK(roc.points.back().tpr == 1.0);
        CHECK(roc.thresholds.size() + 1 == roc.points.size());
        for (std::size_t i = 1; i < roc.points.size(); ++i) {
            CHECK(roc.points[i].fpr >= roc.points[i - 1].fpr);
            CHECK(roc.points[i].tpr >= roc.points[i - 1].tpr);
        }
        for (std::size_t i = 1; i < roc.thresholds.size(); ++i) CHECK(roc.thresholds[i] < roc.thresholds[i - 1]);
    }
}

TEST_CASE("AUC ignores monotone transforms and flips with the score sign") {
    Rng rng(6);
    std::vector<double> s;
    std::vector<int> y;
    for (int t = 0; t < 100; ++t) {
        random_instance(rng, s, y);
        const double a = auc(roc_curve(s, y));
        std::vector<double> warped, negated;
        for (double v : s) {
            warped.push_back(std::exp(3.0 * v) - 7.0);
            negated.push_back(-v);
        }
        CHECK(auc(roc_curve(warped, y)) == doctest::Approx(a).epsilon(1e-12));
        CHECK(auc(roc_curve(negated, y)) == doctest::Approx(1.0 - a).epsilon(1e-12));
    }
}

TEST_CASE("Brier forms") {
    const std::vector<double> half(4, 0.5);
    const std::vector<int> y{1, 0, 1, 1};
    CHECK(brier_binary(half, y) == 0.25);
    CHECK(brier(two_class_input(half, y)) == 0.5);
    const std::vector<double> sure{1, 0, 1, 1};
    CHECK(brier_binary(sure, y) == 0.0);
    CHECK(brier(two_class_input(sure, y)) == 0.0);
}

TEST_CASE("two-class Brier is twice the binary form") {
    Rng rng(8);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 1 + rng.below(50);
        std::vector<double> p(n);
        std::vector<int> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = rng.uniform();
            y[i] = static_cast<int>(rng.below(2));
        }
        CHECK(std::abs(brier(two_class_input(p, y)) - 2.0 * brier_binary(p, y)) < 1e-12);
    }
}

TEST_CASE("Brier input validation") {
    BrierInput bad_sum{Matrix::from_rows({{0.5, 0.6}}), Matrix::from_rows({{1, 0}})};
    CHECK_THROWS_AS(brier(bad_sum), Error);
    BrierInput not_one_hot{Matrix::from_rows({{0.5, 0.5}}), Matrix::from_rows({{1, 1}})};
    CHECK_THROWS_AS(brier(not_one_hot), Error);
    BrierInput shape{Matrix::from_rows({{0.5, 0.5}}), Matrix::from_rows({{1, 0}, {0, 1}})};
    CHECK_THROWS_AS(brier(shape), Error);
    CHECK_THROWS_AS(brier_binary(std::vector<double>{0.5}, std::vector<int>{1, 0}), Error);
}

TEST_CASE("evaluate bundles the five metrics") {
    const std::vector<double> s{0.9, 0.8, 0.7, 0.6};
    const std::vector<int> y{1, 0, 1, 0};
    const auto m = evaluate(s, y, 0.75);
    CHECK(m.auc == doctest::Approx(0.75));
    const auto c = confusion(y, std::vector<int>{1, 1, 0, 0});
    CHECK(m.acc == accuracy(c));
    CHECK(m.f1 == f1(c));
    CHECK(m.tpr == tpr(c));
    CHECK(m.brier == brier_binary(s, y));
}

}  // TEST_SUITE
