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
#include <utility>

#include "egosum/types.hpp"

namespace egosum {

/// Parameters for the synthetic clustered-event generator.
struct SynthParams {
    int events = 10;
    std::pair<int, int> frames_per_event{30, 60};   // inclusive range
    std::pair<int, int> clusters_per_event{3, 6};   // inclusive range, capped at frame count
    int feature_dim = 16;
    double noise_scale = 0.35;        // within-cluster feature spread
    double noninformative_rate = 0.25;
    std::uint64_t seed = 0;
};

/// Deterministic synthetic dataset: each event plants temporally contiguous
/// feature clusters with one ground-truth summary frame per cluster, marks a
/// share of frames non-informative, and synthesizes saliency, object and face
/// scores positively correlated with informativeness and unevenly spread
/// across clusters. Identical params produce bit-identical datasets.
Dataset synth_dataset(const SynthParams& p);

}  // namespace egosum
