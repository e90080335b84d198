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

#include "egosum/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace egosum {

using nlohmann::json;

namespace {

// Indexed worker pool: deterministic output placement regardless of scheduling.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
    int workers = jobs <= 0 ? static_cast<int>(std::thread::hardware_concurrency()) : jobs;
    workers = std::max(1, std::min<int>(workers, static_cast<int>(count)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

int derive_summary_length(const PipelineConfig& cfg, std::size_t m) {
    if (cfg.summary_fraction) {
        const int t = static_cast<int>(std::ceil(*cfg.summary_fraction * static_cast<double>(m)));
        return std::clamp(t, 1, static_cast<int>(m));
    }
    return std::min(*cfg.summary_length, static_cast<int>(m));
}

const FrameRecord& frame_in_event(const Event& ev, const std::string& frame_id) {
    for (const FrameRecord& f : ev.frames)
        if (f.frame_id == frame_id) return f;
    throw std::invalid_argument("frame " + frame_id + " not found in event " + ev.event_id);
}

std::vector<FrameRecord> gt_summary_frames(const Event& ev) {
    if (!ev.ground_truth || ev.ground_truth->summary_ids.empty())
        throw std::invalid_argument("event " + ev.event_id + " has no ground-truth summary");
    std::vector<FrameRecord> out;
    out.reserve(ev.ground_truth->summary_ids.size());
    for (const auto& fid : ev.ground_truth->summary_ids)
        out.push_back(frame_in_event(ev, fid));
    return out;
}

Summary truncate_selection(const FilteredEvent& filtered, const GreedyResult& full, int t) {
    Summary s;
    s.event_id = full.summary.event_id;
    s.selected.assign(full.summary.selected.begin(), full.summary.selected.begin() + t);
    s.scores.assign(full.summary.scores.begin(), full.summary.scores.begin() + t);
    s.presentation_order = s.selected;
    std::map<std::string, const FrameRecord*> by_id;
    for (const FrameRecord& f : filtered.kept) by_id[f.frame_id] = &f;
    std::sort(s.presentation_order.begin(), s.presentation_order.end(),
              [&](const std::string& a, const std::string& b) {
                  const FrameRecord* fa = by_id[a];
                  const FrameRecord* fb = by_id[b];
                  if (fa->timestamp != fb->timestamp) return fa->timestamp < fb->timestamp;
                  return fa->frame_id < fb->frame_id;
              });
    return s;
}

EventResult process_event(const Event& ev, const PipelineConfig& cfg,
                          const FusionWeights& weights) {
    EventResult r;
    r.event_id = ev.event_id;
    r.n_frames = ev.frames.size();
    r.filtered = filter_informative(ev, cfg.informativeness_threshold);
    const std::size_t m = r.filtered.kept.size();
    if (m == 0) {
        r.summary.event_id = ev.event_id;
        return r;
    }

    for (Criterion c : kRelevanceCriteria)
        r.criterion_lists[static_cast<std::size_t>(c)] = rank_event(r.filtered, c);
    r.fused = fuse_relevance(r.criterion_lists, weights);

    const SimilarityKernel kernel = fit_kernel(r.filtered);
    r.kernel_sigma = kernel.sigma;
    const int t = derive_summary_length(cfg, m);

    if (cfg.use_novelty) {
        const GreedyResult full = greedy_select(r.filtered, r.fused, static_cast<int>(m), kernel);
        r.full_ranking = full.summary.selected;
        r.summary = truncate_selection(r.filtered, full, t);
        r.trace.steps.assign(full.trace.steps.begin(), full.trace.steps.begin() + t);
    } else {
        // relevance-only ranking: the fused list is the final order
        GreedyResult flat;
        flat.summary.event_id = ev.event_id;
        for (std::size_t i = 0; i < r.fused.entries.size(); ++i) {
            const RankedEntry& e = r.fused.entries[i];
            flat.summary.selected.push_back(e.frame_id);
            flat.summary.scores.push_back({e.raw_score, 0.0});
            SelectionStep step;
            step.frame_id = e.frame_id;
            step.relevance = e.raw_score;
            step.novelty = 0.0;
            step.objective = e.raw_score;
            if (i + 1 < r.fused.entries.size())
                step.runner_up_objective = r.fused.entries[i + 1].raw_score;
            flat.trace.steps.push_back(std::move(step));
        }
        r.full_ranking = flat.summary.selected;
        r.summary = truncate_selection(r.filtered, flat, t);
        r.trace.steps.assign(flat.trace.steps.begin(), flat.trace.steps.begin() + t);
    }
    return r;
}

json weights_json(const FusionWeights& w) {
    json j;
    for (Criterion c : kRelevanceCriteria) j[std::string(to_string(c))] = w.weight(c);
    return j;
}

json auc_json(const std::array<double, 3>& auc) {
    json j;
    for (Criterion c : kRelevanceCriteria)
        j[std::string(to_string(c))] = auc[static_cast<std::size_t>(c)];
    return j;
}

}  // namespace

void PipelineConfig::check() const {
    if (!(informativeness_threshold >= 0.0 && informativeness_threshold <= 1.0))
        throw std::invalid_argument("config: informativeness threshold must be in [0, 1]");
    if (summary_fraction.has_value() == summary_length.has_value())
        throw std::invalid_argument("config: set exactly one of summary fraction and length");
    if (summary_fraction && !(*summary_fraction > 0.0 && *summary_fraction <= 1.0))
        throw std::invalid_argument("config: summary fraction must be in (0, 1]");
    if (summary_length && *summary_length < 1)
        throw std::invalid_argument("config: summary length must be positive");
    if (grid_size < 2) throw std::invalid_argument("config: grid size must be at least 2");
    if (jobs < 0) throw std::invalid_argument("config: jobs must be >= 0");
    if (!estimate_fusion_weights) fixed_weights.check();
}

PipelineResult run_pipeline(const Dataset& d, const PipelineConfig& cfg) {
    cfg.check();
    PipelineResult result;
    if (cfg.estimate_fusion_weights) {
        result.estimate = estimate_fusion_weights_msms(
            d, cfg.estimation_events, cfg.informativeness_threshold, cfg.grid_size, cfg.jobs);
        result.weights = result.estimate->weights;
    } else {
        result.weights = cfg.fixed_weights;
    }

    result.events.resize(d.events.size());
    parallel_for(d.events.size(), cfg.jobs, [&](std::size_t i) {
        result.events[i] = process_event(d.events[i], cfg, result.weights);
    });
    return result;
}

WeightEstimate estimate_fusion_weights_msms(const Dataset& d,
                                            const std::vector<std::string>& event_ids,
                                            double informativeness_threshold, int grid_size,
                                            int jobs) {
    std::vector<const Event*> targets;
    if (event_ids.empty()) {
        for (const Event& ev : d.events)
            if (ev.ground_truth && !ev.ground_truth->summary_ids.empty()) targets.push_back(&ev);
        if (targets.empty())
            throw std::invalid_argument(
                "weight estimation requires events with ground-truth summaries");
    } else {
        for (const auto& id : event_ids) {
            const Event* ev = d.find_event(id);
            if (!ev) throw std::invalid_argument("estimation event " + id + " not in dataset");
            if (!ev->ground_truth || ev->ground_truth->summary_ids.empty())
                throw std::invalid_argument("estimation event " + id +
                                            " has no ground-truth summary");
            targets.push_back(ev);
        }
    }

    WeightEstimate est;
    std::vector<std::array<SmsCurve, 3>> curves(targets.size());
    std::vector<char> usable(targets.size(), 0);

    parallel_for(targets.size(), jobs, [&](std::size_t i) {
        const Event& ev = *targets[i];
        const FilteredEvent filtered = filter_informative(ev, informativeness_threshold);
        if (filtered.kept.empty()) return;  // skipped, flagged below
        const SimilarityKernel kernel = fit_kernel(filtered);
        const std::vector<FrameRecord> validation = gt_summary_frames(ev);
        const int m = static_cast<int>(filtered.kept.size());
        for (Criterion c : kRelevanceCriteria) {
            const RankedList ranked = rank_event(filtered, c);
            const GreedyResult full =
                greedy_select(filtered, standalone_relevance(ranked), m, kernel);
            curves[i][static_cast<std::size_t>(c)] =
                sms_curve(filtered, full.summary.selected, validation, kernel);
        }
        usable[i] = 1;
    });

    std::array<std::vector<SmsCurve>, 3> per_criterion;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (!usable[i]) {
            est.events_skipped.push_back(targets[i]->event_id);
            continue;
        }
        est.events_used.push_back(targets[i]->event_id);
        for (std::size_t c = 0; c < 3; ++c) per_criterion[c].push_back(std::move(curves[i][c]));
    }
    if (est.events_used.empty())
        throw std::invalid_argument("weight estimation: no event kept any informative frame");

    for (std::size_t c = 0; c < 3; ++c) est.auc[c] = msms(per_criterion[c], grid_size).auc;
    est.weights = estimate_weights(est.auc);
    return est;
}

Summary baseline_uniform(const Event& e, int T) {
    const auto n = static_cast<std::int64_t>(e.frames.size());
    if (T < 1 || static_cast<std::int64_t>(T) > n)
        throw std::invalid_argument("baseline_uniform: T out of range (T=" + std::to_string(T) +
                                    ", N=" + std::to_string(n) + ")");
    Summary s;
    s.event_id = e.event_id;
    std::int64_t prev = -1;
    for (int i = 0; i < T; ++i) {
        // midpoint of slot i mapped to the nearest frame index
        const double pos = (static_cast<double>(i) + 0.5) * static_cast<double>(n) /
                               static_cast<double>(T) -
                           0.5;
        std::int64_t idx = std::lround(pos);
        if (idx <= prev) idx = prev + 1;  // dedup by advancing
        idx = std::min(idx, n - 1);
        prev = idx;
        s.selected.push_back(e.frames[static_cast<std::size_t>(idx)].frame_id);
    }
    s.presentation_order = s.selected;  // indices ascend, so already temporal
    return s;
}

double cluster_recall(const Summary& summary, const GroundTruth& gt, int T) {
    if (gt.group_ids.empty())
        throw std::invalid_argument("cluster_recall: ground truth has no groups");
    if (T < 1) throw std::invalid_argument("cluster_recall: T must be positive");

    std::set<int> all_groups;
    for (const auto& [fid, gid] : gt.group_ids) {
        (void)fid;
        all_groups.insert(gid);
    }
    std::set<int> covered;
    const std::size_t limit = std::min<std::size_t>(static_cast<std::size_t>(T),
                                                    summary.selected.size());
    for (std::size_t i = 0; i < limit; ++i) {
        auto it = gt.group_ids.find(summary.selected[i]);
        if (it != gt.group_ids.end()) covered.insert(it->second);
    }
    return static_cast<double>(covered.size()) / static_cast<double>(all_groups.size());
}

EvaluationReport evaluate_pipeline(const Dataset& d, const PipelineConfig& cfg) {
    const PipelineResult run = run_pipeline(d, cfg);

    EvaluationReport report;
    report.weights = run.weights;
    if (run.estimate) {
        report.per_criterion_auc = run.estimate->auc;
    } else {
        report.per_criterion_auc =
            estimate_fusion_weights_msms(d, cfg.estimation_events, cfg.informativeness_threshold,
                                         cfg.grid_size, cfg.jobs)
                .auc;
    }

    std::vector<std::size_t> targets;
    for (std::size_t i = 0; i < d.events.size(); ++i) {
        const Event& ev = d.events[i];
        const bool has_gt = ev.ground_truth && !ev.ground_truth->summary_ids.empty();
        if (!has_gt || run.events[i].filtered.kept.empty()) {
            report.events_skipped.push_back(ev.event_id);
            continue;
        }
        targets.push_back(i);
    }
    if (targets.empty()) throw std::invalid_argument("evaluation requires ground-truth summaries");

    std::vector<EventEvaluation> evals(targets.size());
    parallel_for(targets.size(), cfg.jobs, [&](std::size_t ti) {
        const std::size_t i = targets[ti];
        const Event& ev = d.events[i];
        const EventResult& er = run.events[i];
        const std::vector<FrameRecord> validation = gt_summary_frames(ev);
        SimilarityKernel kernel;
        kernel.sigma = er.kernel_sigma;

        EventEvaluation e;
        e.event_id = ev.event_id;
        e.n = ev.frames.size();
        e.m = er.filtered.kept.size();
        e.fused_curve = sms_curve(er.filtered, er.full_ranking, validation, kernel);
        e.fused_auc = msms({e.fused_curve}, cfg.grid_size).auc;

        // uniform sampling scored on its own axis: summaries of every size
        // t = 1..N drawn from the unfiltered event
        e.uniform_curve.event_id = ev.event_id;
        const auto n = static_cast<int>(ev.frames.size());
        for (int t = 1; t <= n; ++t) {
            const Summary u = baseline_uniform(ev, t);
            std::vector<FrameRecord> frames;
            frames.reserve(u.selected.size());
            for (const auto& fid : u.selected) frames.push_back(frame_in_event(ev, fid));
            SmsCurve::Point p;
            p.fraction = static_cast<double>(t) / static_cast<double>(n);
            p.value = sms(validation, frames, kernel);
            e.uniform_curve.points.push_back(p);
        }
        e.uniform_auc = msms({e.uniform_curve}, cfg.grid_size).auc;
        evals[ti] = std::move(e);
    });
    report.per_event = std::move(evals);

    std::vector<SmsCurve> fused_curves, uniform_curves;
    for (const auto& e : report.per_event) {
        fused_curves.push_back(e.fused_curve);
        uniform_curves.push_back(e.uniform_curve);
    }
    report.fused_auc = msms(fused_curves, cfg.grid_size).auc;
    report.uniform_auc = msms(uniform_curves, cfg.grid_size).auc;
    return report;
}

std::string summarize_report_json(const PipelineResult& result) {
    json j;
    j["weights"] = weights_json(result.weights);
    if (result.estimate) {
        json est;
        est["per_criterion_auc"] = auc_json(result.estimate->auc);
        est["events_used"] = result.estimate->events_used;
        est["events_skipped"] = result.estimate->events_skipped;
        j["estimation"] = est;
    }
    json skipped = json::array();
    json summaries = json::array();
    for (const EventResult& er : result.events) {
        if (er.filtered.all_discarded) {
            skipped.push_back(er.event_id);
            continue;
        }
        json s;
        s["event_id"] = er.summary.event_id;
        s["selected"] = er.summary.selected;
        s["presentation_order"] = er.summary.presentation_order;
        json trace = json::array();
        for (const SelectionStep& step : er.trace.steps) {
            json ts;
            ts["frame_id"] = step.frame_id;
            ts["r"] = step.relevance;
            ts["n"] = step.novelty;
            ts["objective"] = step.objective;
            trace.push_back(ts);
        }
        s["trace"] = trace;
        summaries.push_back(s);
    }
    j["summaries"] = summaries;
    j["skipped_events"] = skipped;
    return j.dump(2) + "\n";
}

std::string evaluation_report_json(const EvaluationReport& report) {
    json j;
    j["per_criterion_auc"] = auc_json(report.per_criterion_auc);
    j["weights"] = weights_json(report.weights);
    j["fused_auc"] = report.fused_auc;
    j["uniform_auc"] = report.uniform_auc;
    json per_event = json::array();
    for (const EventEvaluation& e : report.per_event) {
        json je;
        je["event_id"] = e.event_id;
        je["n"] = e.n;
        je["m"] = e.m;
        je["fused_auc"] = e.fused_auc;
        je["uniform_auc"] = e.uniform_auc;
        per_event.push_back(je);
    }
    j["per_event"] = per_event;
    j["events_skipped"] = report.events_skipped;
    return j.dump(2) + "\n";
}

std::string filter_report_json(const std::vector<FilteredEvent>& filtered) {
    std::string out;
    for (const FilteredEvent& f : filtered) {
        json j;
        j["event_id"] = f.event_id;
        j["threshold"] = f.threshold;
        json kept = json::array();
        for (const FrameRecord& k : f.kept) kept.push_back(k.frame_id);
        j["kept"] = kept;
        j["discarded"] = f.discarded;
        j["all_discarded"] = f.all_discarded;
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::string weights_report_json(const WeightEstimate& estimate) {
    json j;
    j["weights"] = weights_json(estimate.weights);
    j["per_criterion_auc"] = auc_json(estimate.auc);
    j["events_used"] = estimate.events_used;
    j["events_skipped"] = estimate.events_skipped;
    return j.dump(2) + "\n";
}

std::vector<LabeledCurve> evaluation_curves(const EvaluationReport& report, int grid_size) {
    std::vector<LabeledCurve> out;
    auto add_points = [&](const std::string& id, const SmsCurve& c) {
        LabeledCurve lc;
        lc.id = id;
        for (const auto& p : c.points) {
            lc.fractions.push_back(p.fraction);
            lc.values.push_back(p.value);
        }
        out.push_back(std::move(lc));
    };
    std::vector<SmsCurve> fused_curves, uniform_curves;
    for (const EventEvaluation& e : report.per_event) {
        add_points(e.event_id + ":fused", e.fused_curve);
        add_points(e.event_id + ":uniform", e.uniform_curve);
        fused_curves.push_back(e.fused_curve);
        uniform_curves.push_back(e.uniform_curve);
    }
    auto add_mean = [&](const std::string& id, const std::vector<SmsCurve>& curves) {
        if (curves.empty()) return;
        const MsmsCurve m = msms(curves, grid_size);
        out.push_back({id, m.grid, m.values});
    };
    add_mean("msms:fused", fused_curves);
    add_mean("msms:uniform", uniform_curves);
    return out;
}

}  // namespace egosum
