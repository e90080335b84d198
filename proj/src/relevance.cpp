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

#include "egosum/relevance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "numfmt.hpp"

namespace egosum {

namespace {

// above this, exp(score) overflows double
constexpr double kExpGuard = 700.0;

void sort_entries(std::vector<RankedEntry>& entries) {
    std::sort(entries.begin(), entries.end(), [](const RankedEntry& a, const RankedEntry& b) {
        if (a.raw_score != b.raw_score) return a.raw_score > b.raw_score;
        if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
        return a.frame_id < b.frame_id;
    });
}

void assign_ranks(std::vector<RankedEntry>& entries) {
    const std::size_t m = entries.size();
    for (std::size_t i = 0; i < m; ++i) {
        entries[i].rank = static_cast<int>(i + 1);
        entries[i].normalized =
            (m <= 1) ? 1.0
                     : static_cast<double>(m - (i + 1)) / static_cast<double>(m - 1);
    }
}

}  // namespace

std::string_view to_string(Criterion c) {
    switch (c) {
        case Criterion::saliency: return "saliency";
        case Criterion::objects: return "objects";
        case Criterion::faces: return "faces";
        case Criterion::fused: return "fused";
    }
    return "unknown";
}

std::optional<Criterion> criterion_from_string(std::string_view name) {
    if (name == "saliency") return Criterion::saliency;
    if (name == "objects") return Criterion::objects;
    if (name == "faces") return Criterion::faces;
    if (name == "fused") return Criterion::fused;
    return std::nullopt;
}

void FusionWeights::check() const {
    double sum = 0.0;
    for (double w : values) {
        if (!(std::isfinite(w) && w >= 0.0))
            throw std::invalid_argument("fusion weights must be finite and >= 0");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("fusion weights must sum to 1");
}

double saliency_relevance(const FrameRecord& f) { return f.saliency; }

double object_relevance(const FrameRecord& f) {
    double sum = 0.0;
    for (double s : f.object_scores) {
        if (!std::isfinite(s))
            throw std::invalid_argument("non-finite object score on frame " + f.frame_id);
        sum += s;
    }
    return sum;
}

double face_relevance(const FrameRecord& f) {
    double sum = 0.0;
    for (double s : f.face_scores) {
        if (!std::isfinite(s))
            throw std::invalid_argument("non-finite face score on frame " + f.frame_id);
        if (s > kExpGuard)
            throw std::invalid_argument("face score above exp overflow guard on frame " +
                                        f.frame_id);
        sum += std::exp(s);
    }
    return sum;
}

std::vector<std::pair<std::string, double>> criterion_scores(const FilteredEvent& e, Criterion c) {
    std::vector<std::pair<std::string, double>> out;
    out.reserve(e.kept.size());
    for (const FrameRecord& f : e.kept) {
        double score = 0.0;
        switch (c) {
            case Criterion::saliency: score = saliency_relevance(f); break;
            case Criterion::objects: score = object_relevance(f); break;
            case Criterion::faces: score = face_relevance(f); break;
            case Criterion::fused:
                throw std::invalid_argument("fused is not a raw relevance criterion");
        }
        out.emplace_back(f.frame_id, score);
    }
    return out;
}

RankedList rank_normalize(const std::vector<std::pair<std::string, double>>& scores,
                          const FilteredEvent& frames, Criterion criterion) {
    std::map<std::string, std::int64_t> timestamps;
    for (const FrameRecord& f : frames.kept) timestamps[f.frame_id] = f.timestamp;

    RankedList list;
    list.event_id = frames.event_id;
    list.criterion = criterion;
    list.entries.reserve(scores.size());

    std::map<std::string, bool> seen;
    for (const auto& [fid, raw] : scores) {
        auto ts = timestamps.find(fid);
        if (ts == timestamps.end())
            throw std::invalid_argument("score for frame " + fid + " not among kept frames");
        if (seen[fid])
            throw std::invalid_argument("duplicate score for frame " + fid);
        seen[fid] = true;
        RankedEntry e;
        e.frame_id = fid;
        e.timestamp = ts->second;
        e.raw_score = raw;
        list.entries.push_back(std::move(e));
    }
    if (list.entries.size() != frames.kept.size())
        throw std::invalid_argument("scores must cover every kept frame of event " +
                                    frames.event_id);

    sort_entries(list.entries);
    assign_ranks(list.entries);
    return list;
}

RankedList rank_event(const FilteredEvent& e, Criterion c) {
    return rank_normalize(criterion_scores(e, c), e, c);
}

RankedList fuse_relevance(const std::array<RankedList, 3>& lists, const FusionWeights& weights) {
    weights.check();

    const RankedList* by_criterion[3] = {nullptr, nullptr, nullptr};
    for (const RankedList& list : lists) {
        const auto idx = static_cast<std::size_t>(list.criterion);
        if (idx >= 3 || by_criterion[idx])
            throw std::invalid_argument("fuse_relevance needs each relevance criterion exactly once");
        by_criterion[idx] = &list;
    }

    const RankedList& first = *by_criterion[0];
    std::map<std::string, RankedEntry> fused_entries;
    for (const RankedEntry& e : first.entries) {
        RankedEntry n;
        n.frame_id = e.frame_id;
        n.timestamp = e.timestamp;
        n.raw_score = 0.0;
        fused_entries.emplace(e.frame_id, std::move(n));
    }

    for (Criterion c : kRelevanceCriteria) {
        const RankedList& list = *by_criterion[static_cast<std::size_t>(c)];
        if (list.event_id != first.event_id)
            throw std::invalid_argument("fuse_relevance: lists from different events");
        if (list.entries.size() != fused_entries.size())
            throw std::invalid_argument("fuse_relevance: frame-set mismatch between criteria");
        const double w = weights.weight(c);
        for (const RankedEntry& e : list.entries) {
            auto it = fused_entries.find(e.frame_id);
            if (it == fused_entries.end())
                throw std::invalid_argument("fuse_relevance: frame-set mismatch at " + e.frame_id);
            it->second.raw_score += w * e.normalized;
        }
    }

    RankedList fused;
    fused.event_id = first.event_id;
    fused.criterion = Criterion::fused;
    fused.entries.reserve(fused_entries.size());
    for (auto& [fid, e] : fused_entries) {
        (void)fid;
        fused.entries.push_back(std::move(e));
    }
    sort_entries(fused.entries);
    assign_ranks(fused.entries);
    return fused;
}

RankedList standalone_relevance(const RankedList& list) {
    RankedList out = list;
    for (RankedEntry& e : out.entries) e.raw_score = e.normalized;
    // normalized scores decrease with rank, so the order is already correct
    return out;
}

std::string ranked_csv(const std::vector<RankedList>& lists) {
    std::string out = "frame_id,criterion,raw_score,rank,normalized\n";
    for (const RankedList& list : lists) {
        for (const RankedEntry& e : list.entries) {
            out += e.frame_id;
            out += ',';
            out += to_string(list.criterion);
            out += ',' + detail::fmt(e.raw_score) + ',' + std::to_string(e.rank) + ',' +
                   detail::fmt(e.normalized) + '\n';
        }
    }
    return out;
}

}  // namespace egosum
