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

#include "egosum/msms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "numfmt.hpp"

namespace egosum {

double sms(std::span<const FrameRecord> validation, std::span<const FrameRecord> summary_frames,
           const SimilarityKernel& k) {
    if (validation.empty()) throw std::invalid_argument("sms: empty validation set");
    if (summary_frames.empty()) throw std::invalid_argument("sms: empty summary");
    double sum = 0.0;
    for (const FrameRecord& v : validation) {
        double best = 0.0;
        for (const FrameRecord& y : summary_frames) best = std::max(best, similarity(v, y, k));
        sum += best;
    }
    return sum / static_cast<double>(validation.size());
}

SmsCurve sms_curve(const FilteredEvent& event, const std::vector<std::string>& ranking,
                   std::span<const FrameRecord> validation, const SimilarityKernel& k) {
    if (validation.empty()) throw std::invalid_argument("sms_curve: empty validation set");

    std::map<std::string, const FrameRecord*> by_id;
    for (const FrameRecord& f : event.kept) by_id[f.frame_id] = &f;
    if (ranking.size() != event.kept.size())
        throw std::invalid_argument("sms_curve: ranking does not cover the kept frames");
    std::set<std::string> seen;
    for (const auto& fid : ranking) {
        if (!by_id.count(fid) || !seen.insert(fid).second)
            throw std::invalid_argument("sms_curve: ranking does not cover the kept frames");
    }

    const std::size_t m = ranking.size();
    SmsCurve curve;
    curve.event_id = event.event_id;
    curve.points.reserve(m);

    // running best similarity per validation frame over the growing prefix;
    // equals a fresh SMS at every prefix and is non-decreasing by construction
    std::vector<double> best(validation.size(), 0.0);
    for (std::size_t t = 0; t < m; ++t) {
        const FrameRecord* y = by_id[ranking[t]];
        double sum = 0.0;
        for (std::size_t i = 0; i < validation.size(); ++i) {
            best[i] = std::max(best[i], similarity(validation[i], *y, k));
            sum += best[i];
        }
        SmsCurve::Point p;
        p.fraction = static_cast<double>(t + 1) / static_cast<double>(m);
        p.value = sum / static_cast<double>(validation.size());
        curve.points.push_back(p);
    }
    return curve;
}

std::vector<double> interpolate_curve(const SmsCurve& c, const std::vector<double>& grid) {
    if (c.points.empty()) throw std::invalid_argument("interpolate_curve: empty curve");
    std::vector<double> out;
    out.reserve(grid.size());
    for (double q : grid) {
        if (q <= c.points.front().fraction) {
            out.push_back(c.points.front().value);
            continue;
        }
        if (q >= c.points.back().fraction) {
            out.push_back(c.points.back().value);
            continue;
        }
        // find the segment [i, i+1] with fraction_i <= q < fraction_{i+1}
        std::size_t lo = 0;
        std::size_t hi = c.points.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            if (c.points[mid].fraction <= q)
                lo = mid;
            else
                hi = mid;
        }
        const auto& a = c.points[lo];
        const auto& b = c.points[hi];
        const double w = (q - a.fraction) / (b.fraction - a.fraction);
        out.push_back(a.value + w * (b.value - a.value));
    }
    return out;
}

std::vector<double> msms_grid(int size) {
    if (size < 2) throw std::invalid_argument("msms_grid: need at least 2 points");
    std::vector<double> grid(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i)
        grid[static_cast<std::size_t>(i)] = static_cast<double>(i) / static_cast<double>(size - 1);
    return grid;
}

MsmsCurve msms(const std::vector<SmsCurve>& curves, int grid_size) {
    if (curves.empty()) throw std::invalid_argument("msms: no curves to average");
    MsmsCurve out;
    out.grid = msms_grid(grid_size);
    out.values.assign(out.grid.size(), 0.0);
    for (const SmsCurve& c : curves) {
        const std::vector<double> v = interpolate_curve(c, out.grid);
        for (std::size_t i = 0; i < v.size(); ++i) out.values[i] += v[i];
    }
    for (double& v : out.values) v /= static_cast<double>(curves.size());
    out.auc = auc(out.grid, out.values);
    return out;
}

double auc(const std::vector<double>& fractions, const std::vector<double>& values) {
    if (fractions.size() < 2) throw std::invalid_argument("auc: need at least 2 points");
    if (fractions.size() != values.size())
        throw std::invalid_argument("auc: fraction/value size mismatch");
    double area = 0.0;
    for (std::size_t i = 1; i < fractions.size(); ++i) {
        const double dx = fractions[i] - fractions[i - 1];
        if (!(dx > 0.0)) throw std::invalid_argument("auc: fractions must be strictly ascending");
        area += dx * 0.5 * (values[i] + values[i - 1]);
    }
    return area;
}

FusionWeights estimate_weights(const std::array<double, 3>& per_criterion_auc) {
    double sum = 0.0;
    for (double a : per_criterion_auc) {
        if (!(std::isfinite(a) && a >= 0.0))
            throw std::invalid_argument("estimate_weights: AUCs must be finite and >= 0");
        sum += a;
    }
    if (sum <= 0.0) throw std::invalid_argument("estimate_weights: all AUCs are zero");
    FusionWeights w;
    for (std::size_t i = 0; i < 3; ++i) w.values[i] = per_criterion_auc[i] / sum;
    return w;
}

std::string curves_csv(const std::vector<LabeledCurve>& curves) {
    std::string out = "id,fraction,value\n";
    for (const LabeledCurve& c : curves) {
        for (std::size_t i = 0; i < c.fractions.size() && i < c.values.size(); ++i) {
            out += c.id;
            out += ',' + detail::fmt(c.fractions[i]) + ',' + detail::fmt(c.values[i]) + '\n';
        }
    }
    return out;
}

}  // namespace egosum
