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
#include <span>
#include <string>
#include <vector>

#include "egosum/diversity.hpp"
#include "egosum/informativeness.hpp"
#include "egosum/relevance.hpp"
#include "egosum/types.hpp"

namespace egosum {

/// SMS of a growing summary prefix: point t holds (t/M, SMS at prefix t).
/// Values are non-decreasing in t, and reach 1 at t = M whenever the
/// validation frames all appear among the ranked frames.
struct SmsCurve {
    std::string event_id;
    struct Point {
        double fraction = 0.0;  // t / M, in (0, 1]
        double value = 0.0;     // in [0, 1]
    };
    std::vector<Point> points;
};

/// Per-event SMS curves interpolated onto a common fraction grid and
/// averaged, with the trapezoidal area under the mean curve attached.
struct MsmsCurve {
    std::vector<double> grid;    // ascending fractions spanning [0, 1]
    std::vector<double> values;  // mean of interpolated curves
    double auc = 0.0;
};

/// Sum of Maximal Similarities: mean over validation frames of their best
/// similarity to any summary frame. Soft match score in (0, 1]; summaries
/// close to the validation set score high without exact coincidence.
/// Throws on an empty validation or summary set.
double sms(std::span<const FrameRecord> validation, std::span<const FrameRecord> summary_frames,
           const SimilarityKernel& k);

/// SMS over every prefix of a full-event ranking. `ranking` must be a
/// permutation of the kept frame ids.
SmsCurve sms_curve(const FilteredEvent& event, const std::vector<std::string>& ranking,
                   std::span<const FrameRecord> validation, const SimilarityKernel& k);

/// Piecewise-linear interpolation of the curve over the fraction axis, with
/// constant extrapolation outside the curve's span.
std::vector<double> interpolate_curve(const SmsCurve& c, const std::vector<double>& grid);

/// The standard evaluation grid: `size` evenly spaced fractions over [0, 1].
std::vector<double> msms_grid(int size = 101);

/// Mean of the interpolated curves on the standard grid, AUC attached.
MsmsCurve msms(const std::vector<SmsCurve>& curves, int grid_size = 101);

/// Trapezoidal area under (fractions, values). Fractions must be strictly
/// ascending with at least two points.
double auc(const std::vector<double>& fractions, const std::vector<double>& values);

/// Fusion weights proportional to each criterion's stand-alone MSMS AUC:
/// w(k) = AUC(k) / sum(AUC). AUCs must be non-negative with a positive sum.
FusionWeights estimate_weights(const std::array<double, 3>& per_criterion_auc);

/// Long-format CSV with header id,fraction,value.
struct LabeledCurve {
    std::string id;
    std::vector<double> fractions;
    std::vector<double> values;
};
std::string curves_csv(const std::vector<LabeledCurve>& curves);

}  // namespace egosum
