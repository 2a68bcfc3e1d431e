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

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "riskmeans/dataset.hpp"
#include "riskmeans/feature_select.hpp"
#include "riskmeans/kmeans.hpp"
#include "riskmeans/metrics.hpp"

namespace riskmeans::bench {
struct CvReport;
struct Comparison;
}  // namespace riskmeans::bench

namespace riskmeans::serialize {

using Json = nlohmann::ordered_json;

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

/// 64-bit FNV-1a of `text` as 16 hex digits.
std::string digest(std::string_view text);

Json to_json(const ingest::PreprocessReport& r);
ingest::PreprocessReport preprocess_from_json(const Json& j);

/// Model document: k, d, centroids, posteriors, bandwidth, threshold, seed and the
/// preprocessing fingerprint. Round-trips exactly.
Json to_json(const kmeans::ClusterClassifier& clf);
kmeans::ClusterClassifier classifier_from_json(const Json& j);

Json to_json(const select::RfeResult& r, const std::vector<std::string>& names);
Json to_json(const metrics::MetricBundle& m);

/// Everything except "timing" is deterministic for a fixed config and seed.
Json to_json(const bench::CvReport& r);
Json to_json(const bench::Comparison& c);

/// "fpr,tpr,threshold" rows; the (0,0) start has an empty threshold.
std::string roc_csv(const metrics::RocCurve& curve);

Json parse(const std::string& text, const std::string& source);

}  // namespace riskmeans::serialize
