// Copyright 2026 The Egosum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "egosum/informativeness.hpp"
#include "egosum/types.hpp"

namespace egosum {

/// The three relevance criteria, plus the tag for their weighted combination.
enum class Criterion { saliency = 0, objects = 1, faces = 2, fused = 3 };

inline constexpr std::array<Criterion, 3> kRelevanceCriteria{Criterion::saliency,
                                                             Criterion::objects,
                                                             Criterion::faces};

std::string_view to_string(Criterion c);
std::optional<Criterion> criterion_from_string(std::string_view name);

struct RankedEntry {
    std::string frame_id;
    std::int64_t timestamp = 0;  // carried for deterministic tie-breaking downstream
    double raw_score = 0.0;
    int rank = 0;                // 1-based position
    double normalized = 0.0;     // (M - rank) / (M - 1); 1.0 when M == 1
};

/// Frames of one event ordered by a relevance criterion, highest first.
/// Ties in raw score break by earlier timestamp, then frame_id.
struct RankedList {
    std::string event_id;
    Criterion criterion = Criterion::fused;
    std::vector<RankedEntry> entries;
};

/// Convex per-criterion weights; sum to 1 within 1e-9.
struct FusionWeights {
    std::array<double, 3> values{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};

    double weight(Criterion c) const { return values[static_cast<std::size_t>(c)]; }
    void check() const;  // throws std::invalid_argument when invalid
};

/// Sum over the saliency map, passed through as ingested.
double saliency_relevance(const FrameRecord& f);

/// Sum of object detection confidences; 0 for no detections.
double object_relevance(const FrameRecord& f);

/// Exponential sum of face detection confidences: sum(exp(score)). Handles
/// negative scores and rewards multiple faces; 0 for no detections. Throws on
/// non-finite scores or scores above 700, where exp overflows double.
double face_relevance(const FrameRecord& f);

/// Raw criterion score for every kept frame, in kept order.
std::vector<std::pair<std::string, double>> criterion_scores(const FilteredEvent& e, Criterion c);

/// Builds the ranked list for one criterion: sorts by raw score descending
/// (ties by timestamp, then frame_id) and normalizes ranks linearly so the
/// top entry maps to 1 and the bottom to 0. Scores must cover the kept
/// frames exactly; throws on missing or duplicate frame ids.
RankedList rank_normalize(const std::vector<std::pair<std::string, double>>& scores,
                          const FilteredEvent& frames, Criterion criterion);

/// criterion_scores + rank_normalize in one step.
RankedList rank_event(const FilteredEvent& e, Criterion c);

/// Weighted sum of the three normalized score lists, re-ranked and
/// re-normalized by the same rule. The fused raw score is the final relevance
/// r(x) in [0, 1]. The lists must cover identical frame sets.
RankedList fuse_relevance(const std::array<RankedList, 3>& lists, const FusionWeights& weights);

/// Turns a single-criterion list into a relevance list usable by greedy
/// selection: raw score := normalized score. Equivalent to fusing with a
/// one-hot weight on that criterion.
RankedList standalone_relevance(const RankedList& list);

/// CSV with header: frame_id,criterion,raw_score,rank,normalized
std::string ranked_csv(const std::vector<RankedList>& lists);

}  // namespace egosum
