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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "egosum/informativeness.hpp"
#include "egosum/relevance.hpp"
#include "egosum/types.hpp"

namespace egosum {

enum class KernelKind { gaussian };

/// Normalized visual similarity over feature vectors:
///   s(a, b) = exp(-d(a, b)^2 / (2 sigma^2)),  d = Euclidean distance.
/// s(a, a) = 1, 0 < s <= 1, symmetric.
struct SimilarityKernel {
    KernelKind kind = KernelKind::gaussian;
    double sigma = 1.0;
};

struct SelectionStep {
    std::string frame_id;
    double relevance = 0.0;
    double novelty = 0.0;
    double objective = 0.0;  // relevance + novelty
    std::optional<double> runner_up_objective;  // empty on the last candidate
};

/// Audit trail of the greedy selection, one step per chosen frame.
struct SelectionTrace {
    std::vector<SelectionStep> steps;
};

struct GreedyResult {
    Summary summary;
    SelectionTrace trace;
};

double squared_distance(const std::vector<double>& a, const std::vector<double>& b);
double euclidean_distance(const std::vector<double>& a, const std::vector<double>& b);

/// Fits the kernel bandwidth to one event: sigma = median pairwise Euclidean
/// distance among kept frames, falling back to 1 when all frames are
/// identical or fewer than two frames exist.
SimilarityKernel fit_kernel(const FilteredEvent& frames);

double similarity(const FrameRecord& a, const FrameRecord& b, const SimilarityKernel& k);

/// 1 - max similarity of the candidate to the selected set; 1 over an empty
/// set, so an unconstrained first pick is decided by relevance alone.
double novelty(const FrameRecord& candidate, std::span<const FrameRecord> selected,
               const SimilarityKernel& k);

/// Greedy relevance+novelty selection. Seeds with the top of the relevance
/// list and then repeatedly picks the unselected frame maximizing
/// r(x) + n(x, selected), with ties broken by better relevance rank, then
/// earlier timestamp. r(x) is the list's raw score, expected to be a fused
/// (or standalone_relevance) list with values in [0, 1], held fixed during
/// selection. Requires 1 <= T <= M and the list covering the kept frames.
GreedyResult greedy_select(const FilteredEvent& frames, const RankedList& relevance, int T,
                           const SimilarityKernel& k);

}  // namespace egosum
