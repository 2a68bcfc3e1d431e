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

#include "riskmeans/folds.hpp"

#include <algorithm>
#include <string>

#include "riskmeans/error.hpp"
#include "riskmeans/random.hpp"

namespace riskmeans::bench {

std::vector<std::size_t> FoldPlan::train_indices(std::size_t fold) const {
    std::vector<std::size_t> out;
    out.reserve(n - test[fold].size());
    const auto& t = test[fold];
    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (j < t.size() && t[j] == i) {
            ++j;
            continue;
        }
        out.push_back(i);
    }
    return out;
}

FoldPlan stratified_kfold(std::span<const int> labels, std::size_t k, std::uint64_t seed) {
    require(k >= 2, ErrorCode::Argument, "fold count must be at least 2");
    std::vector<std::size_t> cls[2];
    for (std::size_t i = 0; i < labels.size(); ++i) {
        require(labels[i] == 0 || labels[i] == 1, ErrorCode::Argument, "labels must be 0 or 1");
        cls[labels[i]].push_back(i);
    }
    for (int c = 0; c < 2; ++c)
        require(cls[c].size() >= k, ErrorCode::Argument,
                "class " + std::to_string(c) + " has " + std::to_string(cls[c].size()) + " members, fewer than " +
                    std::to_string(k) + " folds");
    FoldPlan plan;
    plan.n = labels.size();
    plan.seed = seed;
    plan.test.resize(k);
    Rng rng(seed);
    std::size_t slot = 0;
    for (int c = 0; c < 2; ++c) {
        rng.shuffle(std::span(cls[c]));
        for (auto i : cls[c]) {
            plan.test[slot].push_back(i);
            slot = (slot + 1) % k;
        }
    }
    for (auto& t : plan.test) std::sort(t.begin(), t.end());
    return plan;
}

}  // namespace riskmeans::bench
