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

#include "egosum/diversity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace egosum {

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("feature dimension mismatch: " + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()));
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

double euclidean_distance(const std::vector<double>& a, const std::vector<double>& b) {
    return std::sqrt(squared_distance(a, b));
}

SimilarityKernel fit_kernel(const FilteredEvent& frames) {
    SimilarityKernel k;
    const std::size_t m = frames.kept.size();
    if (m < 2) return k;  // never evaluated for M < 2; sigma 1 is a valid kernel

    std::vector<double> dists;
    dists.reserve(m * (m - 1) / 2);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            dists.push_back(euclidean_distance(frames.kept[i].features, frames.kept[j].features));

    std::sort(dists.begin(), dists.end());
    const std::size_t n = dists.size();
    const double median =
        (n % 2 == 1) ? dists[n / 2] : 0.5 * (dists[n / 2 - 1] + dists[n / 2]);
    k.sigma = (median > 0.0) ? median : 1.0;
    return k;
}

double similarity(const FrameRecord& a, const FrameRecord& b, const SimilarityKernel& k) {
    const double d2 = squared_distance(a.features, b.features);
    return std::exp(-d2 / (2.0 * k.sigma * k.sigma));
}

double novelty(const FrameRecord& candidate, std::span<const FrameRecord> selected,
               const SimilarityKernel& k) {
    double max_sim = 0.0;
    for (const FrameRecord& s : selected) max_sim = std::max(max_sim, similarity(candidate, s, k));
    return 1.0 - max_sim;
}

GreedyResult greedy_select(const FilteredEvent& frames, const RankedList& relevance, int T,
                           const SimilarityKernel& k) {
    const std::size_t m = frames.kept.size();
    if (T < 1 || static_cast<std::size_t>(T) > m)
        throw std::invalid_argument("greedy_select: T out of range (T=" + std::to_string(T) +
                                    ", M=" + std::to_string(m) + ")");

    // relevance list must cover the kept frames exactly
    std::map<std::string, const RankedEntry*> by_id;
    for (const RankedEntry& e : relevance.entries) by_id.emplace(e.frame_id, &e);
    if (by_id.size() != relevance.entries.size() || by_id.size() != m)
        throw std::invalid_argument("greedy_select: relevance list does not cover kept frames");

    struct Candidate {
        const FrameRecord* frame;
        double r;
        int rank;
        double max_sim = 0.0;  // to the selected set; 0 while nothing is selected
        bool taken = false;
    };
    std::vector<Candidate> cands;
    cands.reserve(m);
    for (const FrameRecord& f : frames.kept) {
        auto it = by_id.find(f.frame_id);
        if (it == by_id.end())
            throw std::invalid_argument("greedy_select: kept frame " + f.frame_id +
                                        " missing from relevance list");
        cands.push_back({&f, it->second->raw_score, it->second->rank});
    }

    GreedyResult result;
    result.summary.event_id = frames.event_id;

    auto better = [&](const Candidate& a, const Candidate& b) {
        const double oa = a.r + (1.0 - a.max_sim);
        const double ob = b.r + (1.0 - b.max_sim);
        if (oa != ob) return oa > ob;
        if (a.rank != b.rank) return a.rank < b.rank;
        if (a.frame->timestamp != b.frame->timestamp)
            return a.frame->timestamp < b.frame->timestamp;
        return a.frame->frame_id < b.frame->frame_id;
    };

    for (int t = 0; t < T; ++t) {
        Candidate* best = nullptr;
        Candidate* runner_up = nullptr;
        for (Candidate& c : cands) {
            if (c.taken) continue;
            if (!best || better(c, *best)) {
                runner_up = best;
                best = &c;
            } else if (!runner_up || better(c, *runner_up)) {
                runner_up = &c;
            }
        }

        best->taken = true;
        const double n = 1.0 - best->max_sim;
        SelectionStep step;
        step.frame_id = best->frame->frame_id;
        step.relevance = best->r;
        step.novelty = n;
        step.objective = best->r + n;
        if (runner_up) step.runner_up_objective = runner_up->r + (1.0 - runner_up->max_sim);
        result.trace.steps.push_back(std::move(step));

        result.summary.selected.push_back(best->frame->frame_id);
        result.summary.scores.push_back({best->r, n});

        for (Candidate& c : cands) {
            if (c.taken) continue;
            c.max_sim = std::max(c.max_sim, similarity(*c.frame, *best->frame, k));
        }
    }

    result.summary.presentation_order = result.summary.selected;
    std::map<std::string, const FrameRecord*> frame_by_id;
    for (const FrameRecord& f : frames.kept) frame_by_id[f.frame_id] = &f;
    std::sort(result.summary.presentation_order.begin(), result.summary.presentation_order.end(),
              [&](const std::string& a, const std::string& b) {
                  const FrameRecord* fa = frame_by_id[a];
                  const FrameRecord* fb = frame_by_id[b];
                  if (fa->timestamp != fb->timestamp) return fa->timestamp < fb->timestamp;
                  return fa->frame_id < fb->frame_id;
              });
    return result;
}

}  // namespace egosum
