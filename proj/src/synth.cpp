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

#include "egosum/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "egosum/rng.hpp"

namespace egosum {

namespace {

std::string zero_pad(int value, int width) {
    std::string s = std::to_string(value);
    while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
    return s;
}

void check_params(const SynthParams& p) {
    if (p.events < 1) throw std::invalid_argument("synth: events must be positive");
    if (p.frames_per_event.first < 1 || p.frames_per_event.second < p.frames_per_event.first)
        throw std::invalid_argument("synth: bad frames_per_event range");
    if (p.clusters_per_event.first < 1 || p.clusters_per_event.second < p.clusters_per_event.first)
        throw std::invalid_argument("synth: bad clusters_per_event range");
    if (p.feature_dim < 1) throw std::invalid_argument("synth: feature_dim must be positive");
    if (p.noise_scale < 0.0) throw std::invalid_argument("synth: noise_scale must be >= 0");
    if (!(p.noninformative_rate >= 0.0 && p.noninformative_rate <= 1.0))
        throw std::invalid_argument("synth: noninformative_rate must be in [0, 1]");
}

}  // namespace

Dataset synth_dataset(const SynthParams& p) {
    check_params(p);
    Rng rng(p.seed);

    Dataset ds;
    ds.feature_dim = static_cast<std::size_t>(p.feature_dim);
    ds.metadata["generator"] = "synth";
    ds.metadata["seed"] = std::to_string(p.seed);

    for (int e = 0; e < p.events; ++e) {
        Event ev;
        ev.event_id = "e" + zero_pad(e, 4);

        const int n = static_cast<int>(
            rng.uniform_int(p.frames_per_event.first, p.frames_per_event.second));
        const int c = std::min(
            static_cast<int>(rng.uniform_int(p.clusters_per_event.first,
                                             p.clusters_per_event.second)),
            n);

        // temporally contiguous clusters: c segments split by c-1 distinct cuts
        std::vector<int> positions(static_cast<std::size_t>(n - 1));
        for (int i = 0; i < n - 1; ++i) positions[static_cast<std::size_t>(i)] = i + 1;
        for (std::size_t i = 0; i + 1 < positions.size(); ++i) {
            const auto j = static_cast<std::size_t>(
                rng.uniform_int(static_cast<std::int64_t>(i),
                                static_cast<std::int64_t>(positions.size()) - 1));
            std::swap(positions[i], positions[j]);
        }
        std::vector<int> cuts(positions.begin(),
                              positions.begin() + std::min<std::size_t>(positions.size(),
                                                                        static_cast<std::size_t>(c - 1)));
        std::sort(cuts.begin(), cuts.end());

        std::vector<int> cluster_of(static_cast<std::size_t>(n), 0);
        {
            int cluster = 0;
            std::size_t next_cut = 0;
            for (int i = 0; i < n; ++i) {
                if (next_cut < cuts.size() && i == cuts[next_cut]) {
                    ++cluster;
                    ++next_cut;
                }
                cluster_of[static_cast<std::size_t>(i)] = cluster;
            }
        }
        const int clusters = cuts.empty() ? 1 : static_cast<int>(cuts.size()) + 1;

        std::vector<std::vector<double>> centers(static_cast<std::size_t>(clusters));
        std::vector<double> hotness(static_cast<std::size_t>(clusters));
        for (int j = 0; j < clusters; ++j) {
            auto& center = centers[static_cast<std::size_t>(j)];
            center.resize(static_cast<std::size_t>(p.feature_dim));
            for (double& x : center) x = rng.normal(0.0, 2.0);
            // uneven per-cluster relevance mass; concentrates detector scores
            hotness[static_cast<std::size_t>(j)] = rng.uniform(0.5, 1.0);
        }

        std::vector<bool> is_summary_frame(static_cast<std::size_t>(n), false);
        {
            int prev_cluster = -1;
            for (int i = 0; i < n; ++i) {
                if (cluster_of[static_cast<std::size_t>(i)] != prev_cluster) {
                    is_summary_frame[static_cast<std::size_t>(i)] = true;
                    prev_cluster = cluster_of[static_cast<std::size_t>(i)];
                }
            }
        }

        GroundTruth gt;
        const std::int64_t base_ts = 1700000000LL + static_cast<std::int64_t>(e) * 100000LL;
        for (int i = 0; i < n; ++i) {
            const int j = cluster_of[static_cast<std::size_t>(i)];
            const double hot = hotness[static_cast<std::size_t>(j)];

            FrameRecord f;
            f.frame_id = ev.event_id + "_f" + zero_pad(i, 4);
            f.event_id = ev.event_id;
            f.timestamp = base_ts + static_cast<std::int64_t>(i) * 30;  // 2 fpm

            const bool informative = is_summary_frame[static_cast<std::size_t>(i)] ||
                                     rng.uniform() >= p.noninformative_rate;
            // score ranges overlap in [0.1, 0.3] so threshold sweeps stay non-trivial
            f.informativeness = informative ? rng.uniform(0.1, 1.0) : rng.uniform(0.0, 0.3);

            f.features.resize(static_cast<std::size_t>(p.feature_dim));
            const double spread = informative ? p.noise_scale : p.noise_scale * 1.5;
            for (int d = 0; d < p.feature_dim; ++d)
                f.features[static_cast<std::size_t>(d)] =
                    centers[static_cast<std::size_t>(j)][static_cast<std::size_t>(d)] +
                    rng.normal(0.0, spread);

            f.saliency = std::max(0.0, 40.0 * f.informativeness + 25.0 * hot + rng.normal(0.0, 8.0));

            const int n_objects = static_cast<int>(
                std::floor(rng.uniform() * (1.0 + 2.0 * f.informativeness + 2.0 * hot)));
            for (int o = 0; o < n_objects; ++o)
                f.object_scores.push_back(rng.uniform(0.2, 1.0) * (0.5 + 0.5 * hot));

            const int n_faces = static_cast<int>(
                std::floor(rng.uniform() * (0.6 + f.informativeness + hot)));
            for (int o = 0; o < n_faces; ++o) f.face_scores.push_back(rng.uniform(-1.0, 1.5));

            gt.informative_labels[f.frame_id] = informative;
            if (informative) gt.group_ids[f.frame_id] = j;
            if (is_summary_frame[static_cast<std::size_t>(i)])
                gt.summary_ids.push_back(f.frame_id);

            ev.frames.push_back(std::move(f));
        }

        ev.ground_truth = std::move(gt);
        ds.events.push_back(std::move(ev));
    }
    return ds;
}

}  // namespace egosum
