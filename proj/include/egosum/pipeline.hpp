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
#include <vector>

#include "egosum/diversity.hpp"
#include "egosum/informativeness.hpp"
#include "egosum/msms.hpp"
#include "egosum/relevance.hpp"
#include "egosum/types.hpp"

namespace egosum {

struct PipelineConfig {
    double informativeness_threshold = 0.025;

    // Exactly one of the two must be set. A fraction derives T = ceil(f * M)
    // from the post-filter event size; an explicit length is capped at M.
    std::optional<double> summary_fraction;  // in (0, 1]
    std::optional<int> summary_length;

    bool estimate_fusion_weights = false;
    FusionWeights fixed_weights{};               // used when not estimating
    std::vector<std::string> estimation_events;  // empty = every event with a GT summary

    int grid_size = 101;
    std::uint64_t random_seed = 0;  // carried in reports; the pipeline itself is deterministic
    bool use_novelty = true;        // false = plain relevance ranking, no re-rank
    int jobs = 1;                   // worker pool size; 0 = hardware concurrency

    void check() const;  // throws std::invalid_argument on inconsistent settings
};

/// Everything the pipeline derived for one event, stage by stage.
struct EventResult {
    std::string event_id;
    std::size_t n_frames = 0;
    FilteredEvent filtered;
    double kernel_sigma = 1.0;
    std::array<RankedList, 3> criterion_lists;
    RankedList fused;
    std::vector<std::string> full_ranking;  // all M kept ids in final order
    Summary summary;                        // truncation at T
    SelectionTrace trace;                   // steps that produced the summary
};

struct WeightEstimate {
    FusionWeights weights;
    std::array<double, 3> auc{};  // stand-alone MSMS AUC per criterion
    std::vector<std::string> events_used;
    std::vector<std::string> events_skipped;
};

struct PipelineResult {
    FusionWeights weights;
    std::optional<WeightEstimate> estimate;
    std::vector<EventResult> events;
};

/// Runs filter -> per-criterion ranking -> fusion -> novelty re-ranking ->
/// truncation over every event. Deterministic for fixed inputs and config;
/// events run on a worker pool but results keep dataset order. Events left
/// empty by the filter yield flagged empty summaries.
PipelineResult run_pipeline(const Dataset& d, const PipelineConfig& cfg);

/// Stand-alone MSMS weight estimation: each criterion is run alone through
/// filter -> rank -> novelty re-rank on the given events, its full-ranking
/// SMS curve against the GT summary is averaged into an MSMS curve, and the
/// weights are the normalized AUCs. Events without a GT summary are an
/// error; events with no kept frames are skipped (error if none remain).
WeightEstimate estimate_fusion_weights_msms(const Dataset& d,
                                            const std::vector<std::string>& event_ids,
                                            double informativeness_threshold, int grid_size,
                                            int jobs = 1);

/// Lower-bound baseline: T frames at evenly spaced temporal positions,
/// index_i = round((i + 0.5) * N / T - 0.5) for i = 0..T-1.
Summary baseline_uniform(const Event& e, int T);

/// Fraction of GT similarity groups represented among the first T selected
/// frames. Frames without a group id (non-informative) count for nothing.
double cluster_recall(const Summary& summary, const GroundTruth& gt, int T);

struct EventEvaluation {
    std::string event_id;
    std::size_t n = 0, m = 0;
    double fused_auc = 0.0;    // AUC of this event's pipeline SMS curve on the grid
    double uniform_auc = 0.0;  // AUC of the uniform-sampling SMS curve on the grid
    SmsCurve fused_curve;
    SmsCurve uniform_curve;
};

struct EvaluationReport {
    std::array<double, 3> per_criterion_auc{};
    FusionWeights weights;
    double fused_auc = 0.0;    // MSMS AUC of the full pipeline
    double uniform_auc = 0.0;  // MSMS AUC of the uniform baseline
    std::vector<EventEvaluation> per_event;
    std::vector<std::string> events_skipped;  // missing GT summary or nothing kept
};

/// Runs the pipeline and scores it against ground truth: per-event SMS curves
/// of the final ordering, their MSMS average and AUC, the same for uniform
/// sampling, and stand-alone per-criterion AUCs.
EvaluationReport evaluate_pipeline(const Dataset& d, const PipelineConfig& cfg);

// JSON report builders. Output is byte-deterministic for identical inputs.
std::string summarize_report_json(const PipelineResult& result);
std::string evaluation_report_json(const EvaluationReport& report);
std::string filter_report_json(const std::vector<FilteredEvent>& filtered);
std::string weights_report_json(const WeightEstimate& estimate);

/// Per-event fused and uniform curves plus the MSMS means, for CSV export.
std::vector<LabeledCurve> evaluation_curves(const EvaluationReport& report, int grid_size);

}  // namespace egosum
