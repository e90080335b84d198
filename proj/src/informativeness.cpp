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

#include "egosum/informativeness.hpp"

#include <algorithm>
#include <stdexcept>

#include "numfmt.hpp"

namespace egosum {

namespace {

using detail::fmt;

ClassificationMetrics derive(double threshold, std::int64_t tp, std::int64_t fp, std::int64_t fn,
                             std::int64_t tn) {
    ClassificationMetrics m;
    m.threshold = threshold;
    m.tp = tp;
    m.fp = fp;
    m.fn = fn;
    m.tn = tn;
    m.precision = (tp + fp == 0) ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
    m.recall = (tp + fn == 0) ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
    m.f_measure = (m.precision + m.recall == 0.0)
                      ? 0.0
                      : 2.0 * m.precision * m.recall / (m.precision + m.recall);
    m.accuracy = static_cast<double>(tp + tn) / static_cast<double>(tp + fp + fn + tn);
    return m;
}

void check_inputs(const std::map<std::string, bool>& labels,
                  const std::map<std::string, double>& scores) {
    if (labels.empty()) throw std::invalid_argument("classification_metrics: empty input");
    if (labels.size() != scores.size())
        throw std::invalid_argument("classification_metrics: label/score key sets differ");
    auto li = labels.begin();
    auto si = scores.begin();
    for (; li != labels.end(); ++li, ++si) {
        if (li->first != si->first)
            throw std::invalid_argument("classification_metrics: label/score key sets differ at " +
                                        li->first);
    }
}

}  // namespace

FilteredEvent filter_informative(const Event& e, double threshold) {
    FilteredEvent out;
    out.event_id = e.event_id;
    out.threshold = threshold;
    for (const FrameRecord& f : e.frames) {
        if (f.informativeness >= threshold)
            out.kept.push_back(f);
        else
            out.discarded.push_back(f.frame_id);
    }
    out.all_discarded = out.kept.empty();
    return out;
}

ClassificationMetrics classification_metrics(const std::map<std::string, bool>& labels,
                                             const std::map<std::string, double>& scores,
                                             double threshold) {
    check_inputs(labels, scores);
    std::int64_t tp = 0, fp = 0, fn = 0, tn = 0;
    for (const auto& [id, label] : labels) {
        const bool predicted = scores.at(id) >= threshold;
        if (label)
            (predicted ? tp : fn)++;
        else
            (predicted ? fp : tn)++;
    }
    return derive(threshold, tp, fp, fn, tn);
}

std::vector<ClassificationMetrics> threshold_sweep(const std::map<std::string, bool>& labels,
                                                   const std::map<std::string, double>& scores,
                                                   const std::vector<double>& thresholds) {
    check_inputs(labels, scores);
    for (std::size_t i = 1; i < thresholds.size(); ++i)
        if (!(thresholds[i - 1] < thresholds[i]))
            throw std::invalid_argument("threshold_sweep: thresholds must be strictly increasing");

    // One sorted pass: for any threshold, the predicted positives are a score
    // suffix. Suffix positive counts give tp and fp directly.
    std::vector<std::pair<double, bool>> items;
    items.reserve(labels.size());
    std::int64_t total_pos = 0;
    for (const auto& [id, label] : labels) {
        items.emplace_back(scores.at(id), label);
        total_pos += label ? 1 : 0;
    }
    std::sort(items.begin(), items.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    // suffix_pos[i] = positives among items[i..]
    std::vector<std::int64_t> suffix_pos(items.size() + 1, 0);
    for (std::size_t i = items.size(); i-- > 0;)
        suffix_pos[i] = suffix_pos[i + 1] + (items[i].second ? 1 : 0);

    const std::int64_t total = static_cast<std::int64_t>(items.size());
    std::vector<ClassificationMetrics> out;
    out.reserve(thresholds.size());
    for (double t : thresholds) {
        const auto it = std::lower_bound(
            items.begin(), items.end(), t,
            [](const auto& item, double value) { return item.first < value; });
        const std::size_t idx = static_cast<std::size_t>(it - items.begin());
        const std::int64_t predicted_pos = total - static_cast<std::int64_t>(idx);
        const std::int64_t tp = suffix_pos[idx];
        const std::int64_t fp = predicted_pos - tp;
        const std::int64_t fn = total_pos - tp;
        const std::int64_t tn = total - predicted_pos - fn;
        out.push_back(derive(t, tp, fp, fn, tn));
    }
    return out;
}

std::string sweep_csv(const std::vector<ClassificationMetrics>& sweep) {
    std::string out = "threshold,tp,fp,fn,tn,accuracy,precision,recall,f_measure\n";
    for (const auto& m : sweep) {
        out += fmt(m.threshold);
        out += ',' + std::to_string(m.tp) + ',' + std::to_string(m.fp) + ',' +
               std::to_string(m.fn) + ',' + std::to_string(m.tn);
        out += ',' + fmt(m.accuracy) + ',' + fmt(m.precision) + ',' + fmt(m.recall) + ',' +
               fmt(m.f_measure) + '\n';
    }
    return out;
}

}  // namespace egosum
