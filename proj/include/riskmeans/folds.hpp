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
#include <vector>

namespace riskmeans::bench {

/// Test-index lists of a k-fold partition; fold f trains on every index outside test[f].
struct FoldPlan {
    std::vector<std::vector<std::size_t>> test;  // each ascending
    std::size_t n = 0;
    std::uint64_t seed = 0;

    std::size_t k() const noexcept { return test.size(); }
    std::vector<std::size_t> train_indices(std::size_t fold) const;
};

/// Shuffles each class with the seed and deals its members round-robin across the folds.
/// The dealing position carries over from one class to the next so fold sizes stay within 1.
FoldPlan stratified_kfold(std::span<const int> labels, std::size_t k, std::uint64_t seed);

}  // namespace riskmeans::bench
