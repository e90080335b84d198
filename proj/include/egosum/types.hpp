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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace egosum {

/// One lifelog frame: identity, time, appearance features and the precomputed
/// detector outputs consumed by the relevance criteria.
struct FrameRecord {
    std::string frame_id;
    std::string event_id;
    std::int64_t timestamp = 0;          // seconds since epoch
    std::vector<double> features;        // fixed length D across a dataset
    double informativeness = 0.0;        // in [0, 1]
    double saliency = 0.0;               // sum over the saliency map, >= 0
    std::vector<double> object_scores;   // per-detection confidences
    std::vector<double> face_scores;     // per-detection confidences, may be negative

    bool operator==(const FrameRecord&) const = default;
};

/// Expert annotations for one event. Level 1 labels every frame informative or
/// not, level 2 groups the informative frames into similarity clusters, and
/// the summary lists the expert-chosen frames in their intended order.
struct GroundTruth {
    std::map<std::string, bool> informative_labels;
    std::map<std::string, int> group_ids;    // defined exactly for informative frames
    std::vector<std::string> summary_ids;

    bool operator==(const GroundTruth&) const = default;
};

/// A temporally contiguous segment of the photo stream; the summarization unit.
struct Event {
    std::string event_id;
    std::vector<FrameRecord> frames;     // sorted by (timestamp, frame_id)
    std::optional<GroundTruth> ground_truth;

    bool operator==(const Event&) const = default;
};

struct Dataset {
    std::vector<Event> events;           // sorted by event_id
    std::size_t feature_dim = 0;
    std::map<std::string, std::string> metadata;  // in-memory only, not serialized

    const Event* find_event(const std::string& event_id) const {
        for (const Event& e : events)
            if (e.event_id == event_id) return &e;
        return nullptr;
    }

    bool operator==(const Dataset&) const = default;
};

/// Relevance and novelty of a frame at the moment it was selected.
struct SelectionScore {
    double relevance = 0.0;
    double novelty = 0.0;

    bool operator==(const SelectionScore&) const = default;
};

/// The output of greedy selection: frame ids in selection order plus the same
/// ids in timestamp order for presentation.
struct Summary {
    std::string event_id;
    std::vector<std::string> selected;          // selection order
    std::vector<SelectionScore> scores;         // parallel to selected
    std::vector<std::string> presentation_order;

    bool operator==(const Summary&) const = default;
};

}  // namespace egosum
