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

#include <map>
#include <string>
#include <vector>

#include "egosum/types.hpp"

namespace egosum {

/// An event after informativeness thresholding. Frames with a score below the
/// threshold are discarded; kept frames preserve the event's timestamp order.
struct FilteredEvent {
    std::string event_id;
    std::vector<FrameRecord> kept;        // M frames, M <= N
    std::vector<std::string> discarded;
    double threshold = 0.0;
    bool all_discarded = false;           // warning: M == 0
};

struct ClassificationMetrics {
    double threshold = 0.0;
    std::int64_t tp = 0, fp = 0, fn = 0, tn = 0;
    double accuracy = 0.0;
    double precision = 0.0;  // 1 when tp+fp == 0
    double recall = 0.0;     // 1 when tp+fn == 0
    double f_measure = 0.0;  // harmonic mean, 0 when precision+recall == 0
};

/// Keeps frames with informativeness >= threshold. Boundary scores are kept:
/// only frames strictly below the threshold are non-informative for certain.
FilteredEvent filter_informative(const Event& e, double threshold);

/// Confusion counts and derived metrics for the binary informativeness filter.
/// Positive class = informative; prediction positive iff score >= threshold.
/// Throws on empty input or mismatched key sets.
ClassificationMetrics classification_metrics(const std::map<std::string, bool>& labels,
                                             const std::map<std::string, double>& scores,
                                             double threshold);

/// One metrics record per threshold. Thresholds must be strictly increasing.
/// Uses a sort-and-scan pass rather than per-threshold recounting.
std::vector<ClassificationMetrics> threshold_sweep(const std::map<std::string, bool>& labels,
                                                   const std::map<std::string, double>& scores,
                                                   const std::vector<double>& thresholds);

/// CSV with header: threshold,tp,fp,fn,tn,accuracy,precision,recall,f_measure
std::string sweep_csv(const std::vector<ClassificationMetrics>& sweep);

}  // namespace egosum
