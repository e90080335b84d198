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

// Test helpers and independent brute-force oracles. Everything here
// re-derives results from first principles and must stay decoupled from the
// library's implementation paths.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "egosum/informativeness.hpp"
#include "egosum/rng.hpp"
#include "egosum/types.hpp"

namespace egotest {

inline egosum::FrameRecord make_frame(std::string frame_id, std::string event_id,
                                      std::int64_t timestamp, std::vector<double> features,
                                      double informativeness = 0.5, double saliency = 1.0,
                                      std::vector<double> object_scores = {},
                                      std::vector<double> face_scores = {}) {
    egosum::FrameRecord f;
    f.frame_id = std::move(frame_id);
    f.event_id = std::move(event_id);
    f.timestamp = timestamp;
    f.features = std::move(features);
    f.informativeness = informativeness;
    f.saliency = saliency;
    f.object_scores = std::move(object_scores);
    f.face_scores = std::move(face_scores);
    return f;
}

inline egosum::Event make_event(std::string event_id, std::vector<egosum::FrameRecord> frames) {
    egosum::Event e;
    e.event_id = std::move(event_id);
    e.frames = std::move(frames);
    return e;
}

inline egosum::FilteredEvent keep_all(const egosum::Event& e) {
    return egosum::filter_informative(e, 0.0);
}

// ---------------------------------------------------------------------------
// brute-force oracles

inline double oracle_euclidean(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

inline double oracle_gaussian(const std::vector<double>& a, const std::vector<double>& b,
                              double sigma) {
    const double d = oracle_euclidean(a, b);
    return std::exp(-(d * d) / (2.0 * sigma * sigma));
}

// median of all pairwise distances via a plain double loop
inline double oracle_median_pairwise(const std::vector<egosum::FrameRecord>& frames) {
    std::vector<double> d;
    for (std::size_t i = 0; i < frames.size(); ++i)
        for (std::size_t j = i + 1; j < frames.size(); ++j)
            d.push_back(oracle_euclidean(frames[i].features, frames[j].features));
    std::sort(d.begin(), d.end());
    if (d.empty()) return 1.0;
    return d.size() % 2 == 1 ? d[d.size() / 2] : 0.5 * (d[d.size() / 2 - 1] + d[d.size() / 2]);
}

// Quadratic-time reference for greedy relevance+novelty selection. Works
// straight from the raw inputs, recomputing every candidate's novelty at
// every step by scanning the whole selected set.
struct OracleGreedyInput {
    // per frame: id, timestamp, features, relevance r, rank (1-based tie order)
    struct Item {
        std::string id;
        std::int64_t timestamp;
        std::vector<double> features;
        double r;
        int rank;
    };
    std::vector<Item> items;
    double sigma = 1.0;
};

inline std::vector<std::string> oracle_greedy(const OracleGreedyInput& in, int T) {
    std::vector<std::string> selected;
    std::vector<bool> taken(in.items.size(), false);
    for (int t = 0; t < T; ++t) {
        int best = -1;
        double best_obj = 0.0;
        for (std::size_t i = 0; i < in.items.size(); ++i) {
            if (taken[i]) continue;
            double max_sim = 0.0;
            for (std::size_t s = 0; s < in.items.size(); ++s) {
                if (!taken[s]) continue;
                max_sim = std::max(max_sim, oracle_gaussian(in.items[i].features,
                                                            in.items[s].features, in.sigma));
            }
            const double obj = in.items[i].r + (1.0 - max_sim);
            bool wins = best < 0;
            if (!wins && obj != best_obj) wins = obj > best_obj;
            if (!wins && obj == best_obj) {
                const auto& a = in.items[i];
                const auto& b = in.items[static_cast<std::size_t>(best)];
                if (a.rank != b.rank)
                    wins = a.rank < b.rank;
                else if (a.timestamp != b.timestamp)
                    wins = a.timestamp < b.timestamp;
                else
                    wins = a.id < b.id;
            }
            if (wins) {
                best = static_cast<int>(i);
                best_obj = obj;
            }
        }
        taken[static_cast<std::size_t>(best)] = true;
        selected.push_back(in.items[static_cast<std::size_t>(best)].id);
    }
    return selected;
}

// full T x P similarity matrix, mean of per-validation-row maxima
inline double oracle_sms(const std::vector<egosum::FrameRecord>& validation,
                         const std::vector<egosum::FrameRecord>& summary, double sigma) {
    double sum = 0.0;
    for (const auto& v : validation) {
        double best = 0.0;
        for (const auto& y : summary) best = std::max(best, oracle_gaussian(v.features, y.features, sigma));
        sum += best;
    }
    return sum / static_cast<double>(validation.size());
}

// trapezoid over a 10x-refined sampling of the piecewise-linear interpolant
inline double oracle_refined_auc(const std::vector<double>& fractions,
                                 const std::vector<double>& values, int refine = 10) {
    auto interp = [&](double q) {
        if (q <= fractions.front()) return values.front();
        if (q >= fractions.back()) return values.back();
        for (std::size_t i = 1; i < fractions.size(); ++i) {
            if (q <= fractions[i]) {
                const double w = (q - fractions[i - 1]) / (fractions[i] - fractions[i - 1]);
                return values[i - 1] + w * (values[i] - values[i - 1]);
            }
        }
        return values.back();
    };
    std::vector<double> fine_x, fine_y;
    for (std::size_t i = 0; i + 1 < fractions.size(); ++i) {
        for (int k = 0; k < refine; ++k) {
            const double q = fractions[i] + (fractions[i + 1] - fractions[i]) *
                                                (static_cast<double>(k) / refine);
            fine_x.push_back(q);
            fine_y.push_back(interp(q));
        }
    }
    fine_x.push_back(fractions.back());
    fine_y.push_back(values.back());
    double area = 0.0;
    for (std::size_t i = 1; i < fine_x.size(); ++i)
        area += (fine_x[i] - fine_x[i - 1]) * 0.5 * (fine_y[i] + fine_y[i - 1]);
    return area;
}

// hand counting of the confusion matrix, one comparison at a time
struct OracleConfusion {
    long long tp = 0, fp = 0, fn = 0, tn = 0;
};

inline OracleConfusion oracle_confusion(const std::map<std::string, bool>& labels,
                                        const std::map<std::string, double>& scores,
                                        double threshold) {
    OracleConfusion c;
    for (const auto& [id, label] : labels) {
        const bool pred = scores.at(id) >= threshold;
        if (label && pred) c.tp++;
        if (!label && pred) c.fp++;
        if (label && !pred) c.fn++;
        if (!label && !pred) c.tn++;
    }
    return c;
}

// random event with clustered features, all frames informative
inline egosum::Event random_event(egosum::Rng& rng, const std::string& id, int n, int dim) {
    std::vector<egosum::FrameRecord> frames;
    for (int i = 0; i < n; ++i) {
        std::vector<double> feat(static_cast<std::size_t>(dim));
        for (double& x : feat) x = rng.uniform(-3.0, 3.0);
        std::string fid = id + "_f" + std::to_string(i);
        auto f = make_frame(fid, id, 1000 + i * 30, feat, rng.uniform(0.3, 1.0),
                            rng.uniform(0.0, 10.0));
        const int n_obj = static_cast<int>(rng.uniform_int(0, 3));
        for (int k = 0; k < n_obj; ++k) f.object_scores.push_back(rng.uniform(0.0, 1.0));
        const int n_face = static_cast<int>(rng.uniform_int(0, 2));
        for (int k = 0; k < n_face; ++k) f.face_scores.push_back(rng.uniform(-1.0, 1.5));
        frames.push_back(std::move(f));
    }
    return make_event(id, std::move(frames));
}

}  // namespace egotest
