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

#include "egosum/dataset_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace egosum {

using nlohmann::json;

namespace {

std::string location(const std::string& source, std::size_t line) {
    return source + ":" + std::to_string(line);
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& msg) {
    throw ParseError(location(source, line), msg);
}

double require_number(const json& j, const char* key, const std::string& src, std::size_t line) {
    const auto& v = j.at(key);
    if (!v.is_number())
        fail(src, line, std::string("key \"") + key + "\" must be a number");
    return v.get<double>();
}

std::vector<double> require_number_array(const json& j, const char* key, const std::string& src,
                                         std::size_t line) {
    const auto& v = j.at(key);
    if (!v.is_array())
        fail(src, line, std::string("key \"") + key + "\" must be an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) {
        if (!x.is_number())
            fail(src, line, std::string("key \"") + key + "\" must contain only numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

std::string require_string(const json& j, const char* key, const std::string& src,
                           std::size_t line) {
    const auto& v = j.at(key);
    if (!v.is_string())
        fail(src, line, std::string("key \"") + key + "\" must be a string");
    return v.get<std::string>();
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& src,
                std::size_t line) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!allowed.count(key)) fail(src, line, "unknown key \"" + key + "\"");
    }
    for (const auto& key : allowed) {
        if (!j.contains(key)) fail(src, line, "missing key \"" + key + "\"");
    }
}

struct RawGroundTruth {
    std::string source;
    std::size_t line = 0;
    std::vector<std::string> informative;
    std::map<std::string, int> groups;
    std::vector<std::string> summary;
};

struct LineRecord {
    std::string source;
    std::size_t line;
    std::string text;
};

Dataset parse_lines(const std::vector<LineRecord>& lines) {
    std::map<std::string, Event> events;                    // by event_id
    std::map<std::string, RawGroundTruth> gt_records;       // by event_id
    std::set<std::string> seen_frame_ids;
    std::string dim_owner;  // frame that fixed the feature dimension
    std::size_t feature_dim = 0;
    bool have_dim = false;

    for (const auto& rec : lines) {
        if (rec.text.find_first_not_of(" \t\r") == std::string::npos) continue;

        json j = json::parse(rec.text, nullptr, false);
        if (j.is_discarded()) fail(rec.source, rec.line, "malformed JSON");
        if (!j.is_object()) fail(rec.source, rec.line, "record must be a JSON object");

        if (j.contains("gt")) {
            check_keys(j, {"gt", "event_id", "informative", "groups", "summary"}, rec.source,
                       rec.line);
            if (!j.at("gt").is_string() || j.at("gt").get<std::string>() != "gt")
                fail(rec.source, rec.line, "ground-truth tag must be the string \"gt\"");
            const std::string event_id = require_string(j, "event_id", rec.source, rec.line);
            if (gt_records.count(event_id))
                fail(rec.source, rec.line, "duplicate ground truth for event " + event_id);

            RawGroundTruth raw;
            raw.source = rec.source;
            raw.line = rec.line;
            const auto& informative = j.at("informative");
            if (!informative.is_array())
                fail(rec.source, rec.line, "key \"informative\" must be an array of frame ids");
            for (const auto& x : informative) {
                if (!x.is_string())
                    fail(rec.source, rec.line, "key \"informative\" must contain frame ids");
                raw.informative.push_back(x.get<std::string>());
            }
            const auto& groups = j.at("groups");
            if (!groups.is_object())
                fail(rec.source, rec.line, "key \"groups\" must map frame ids to integers");
            for (const auto& [fid, gid] : groups.items()) {
                if (!gid.is_number_integer())
                    fail(rec.source, rec.line, "group id for " + fid + " must be an integer");
                raw.groups[fid] = gid.get<int>();
            }
            const auto& summary = j.at("summary");
            if (!summary.is_array())
                fail(rec.source, rec.line, "key \"summary\" must be an array of frame ids");
            for (const auto& x : summary) {
                if (!x.is_string())
                    fail(rec.source, rec.line, "key \"summary\" must contain frame ids");
                raw.summary.push_back(x.get<std::string>());
            }
            gt_records.emplace(event_id, std::move(raw));
            continue;
        }

        check_keys(j,
                   {"frame_id", "event_id", "timestamp", "features", "informativeness", "saliency",
                    "object_scores", "face_scores"},
                   rec.source, rec.line);

        FrameRecord f;
        f.frame_id = require_string(j, "frame_id", rec.source, rec.line);
        f.event_id = require_string(j, "event_id", rec.source, rec.line);
        if (!j.at("timestamp").is_number_integer())
            fail(rec.source, rec.line, "key \"timestamp\" must be an integer");
        f.timestamp = j.at("timestamp").get<std::int64_t>();
        f.features = require_number_array(j, "features", rec.source, rec.line);
        f.informativeness = require_number(j, "informativeness", rec.source, rec.line);
        f.saliency = require_number(j, "saliency", rec.source, rec.line);
        f.object_scores = require_number_array(j, "object_scores", rec.source, rec.line);
        f.face_scores = require_number_array(j, "face_scores", rec.source, rec.line);

        if (!seen_frame_ids.insert(f.frame_id).second)
            fail(rec.source, rec.line, "duplicate frame_id " + f.frame_id);
        if (!have_dim) {
            feature_dim = f.features.size();
            dim_owner = f.frame_id;
            have_dim = true;
        } else if (f.features.size() != feature_dim) {
            fail(rec.source, rec.line,
                 "frame " + f.frame_id + " has feature dimension " +
                     std::to_string(f.features.size()) + ", expected " +
                     std::to_string(feature_dim) + " (set by frame " + dim_owner + ")");
        }

        Event& ev = events[f.event_id];
        ev.event_id = f.event_id;
        ev.frames.push_back(std::move(f));
    }

    for (auto& [id, ev] : events) {
        (void)id;
        std::sort(ev.frames.begin(), ev.frames.end(), [](const FrameRecord& a, const FrameRecord& b) {
            if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
            return a.frame_id < b.frame_id;
        });
    }

    for (const auto& [event_id, raw] : gt_records) {
        auto it = events.find(event_id);
        if (it == events.end())
            fail(raw.source, raw.line, "ground truth references unknown event " + event_id);
        Event& ev = it->second;
        std::set<std::string> frame_ids;
        for (const auto& f : ev.frames) frame_ids.insert(f.frame_id);

        auto check_known = [&](const std::string& fid, const char* field) {
            if (!frame_ids.count(fid))
                fail(raw.source, raw.line,
                     std::string(field) + " references unknown frame " + fid + " in event " +
                         event_id);
        };

        GroundTruth gt;
        for (const auto& f : ev.frames) gt.informative_labels[f.frame_id] = false;
        for (const auto& fid : raw.informative) {
            check_known(fid, "informative");
            gt.informative_labels[fid] = true;
        }
        for (const auto& [fid, gid] : raw.groups) {
            check_known(fid, "groups");
            gt.group_ids[fid] = gid;
        }
        for (const auto& fid : raw.summary) check_known(fid, "summary");
        gt.summary_ids = raw.summary;
        ev.ground_truth = std::move(gt);
    }

    Dataset d;
    d.feature_dim = feature_dim;
    d.events.reserve(events.size());
    for (auto& [id, ev] : events) {
        (void)id;
        d.events.push_back(std::move(ev));
    }
    return d;
}

std::vector<LineRecord> read_lines(std::istream& input, const std::string& source) {
    std::vector<LineRecord> lines;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(input, line)) {
        ++lineno;
        lines.push_back({source, lineno, line});
    }
    return lines;
}

}  // namespace

Dataset parse_dataset(std::istream& input, const std::string& source_name) {
    return parse_lines(read_lines(input, source_name));
}

Dataset parse_dataset(const std::string& text, const std::string& source_name) {
    std::istringstream in(text);
    return parse_dataset(in, source_name);
}

Dataset load_dataset_files(const std::string& path, const std::string& gt_path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset file " + path);
    auto lines = read_lines(in, path);
    if (!gt_path.empty()) {
        std::ifstream gt_in(gt_path);
        if (!gt_in) throw std::runtime_error("cannot open ground-truth file " + gt_path);
        auto gt_lines = read_lines(gt_in, gt_path);
        lines.insert(lines.end(), gt_lines.begin(), gt_lines.end());
    }
    return parse_lines(lines);
}

std::string serialize_dataset(const Dataset& d) {
    std::string out;
    for (const Event& ev : d.events) {
        for (const FrameRecord& f : ev.frames) {
            json j;
            j["frame_id"] = f.frame_id;
            j["event_id"] = f.event_id;
            j["timestamp"] = f.timestamp;
            j["features"] = f.features;
            j["informativeness"] = f.informativeness;
            j["saliency"] = f.saliency;
            j["object_scores"] = f.object_scores;
            j["face_scores"] = f.face_scores;
            out += j.dump();
            out += '\n';
        }
        if (ev.ground_truth) {
            const GroundTruth& gt = *ev.ground_truth;
            json j;
            j["gt"] = "gt";
            j["event_id"] = ev.event_id;
            json informative = json::array();
            for (const auto& [fid, flag] : gt.informative_labels)
                if (flag) informative.push_back(fid);
            j["informative"] = informative;
            j["groups"] = gt.group_ids;
            j["summary"] = gt.summary_ids;
            out += j.dump();
            out += '\n';
        }
    }
    return out;
}

namespace {

bool all_finite(const std::vector<double>& xs) {
    return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

std::vector<Violation> validate_dataset(const Dataset& d) {
    std::vector<Violation> out;
    auto flag = [&](std::string type, std::string field, std::string id, std::string msg) {
        out.push_back({std::move(type), std::move(field), std::move(id), std::move(msg)});
    };

    std::set<std::string> frame_ids;
    std::set<std::string> event_ids;
    for (std::size_t ei = 0; ei < d.events.size(); ++ei) {
        const Event& ev = d.events[ei];
        if (!event_ids.insert(ev.event_id).second)
            flag("Dataset", "events", ev.event_id, "duplicate event_id");
        if (ei > 0 && !(d.events[ei - 1].event_id < ev.event_id))
            flag("Dataset", "events", ev.event_id, "events not sorted by event_id");
        if (ev.frames.empty())
            flag("Event", "frames", ev.event_id, "event has no frames");

        for (std::size_t i = 0; i < ev.frames.size(); ++i) {
            const FrameRecord& f = ev.frames[i];
            if (f.event_id != ev.event_id)
                flag("Event", "event_id", f.frame_id,
                     "frame event_id " + f.event_id + " does not match event " + ev.event_id);
            if (i > 0) {
                const FrameRecord& prev = ev.frames[i - 1];
                const bool ordered = prev.timestamp < f.timestamp ||
                                     (prev.timestamp == f.timestamp && prev.frame_id < f.frame_id);
                if (!ordered)
                    flag("Event", "frames", ev.event_id,
                         "frames not sorted by (timestamp, frame_id) at " + f.frame_id);
            }
            if (!frame_ids.insert(f.frame_id).second)
                flag("FrameRecord", "frame_id", f.frame_id, "duplicate frame_id");
            if (!(f.informativeness >= 0.0 && f.informativeness <= 1.0))
                flag("FrameRecord", "informativeness", f.frame_id,
                     "informativeness outside [0, 1]");
            if (!(std::isfinite(f.saliency) && f.saliency >= 0.0))
                flag("FrameRecord", "saliency", f.frame_id, "saliency must be finite and >= 0");
            if (f.features.size() != d.feature_dim)
                flag("FrameRecord", "features", f.frame_id,
                     "feature dimension " + std::to_string(f.features.size()) + " != dataset " +
                         std::to_string(d.feature_dim));
            if (!all_finite(f.features))
                flag("FrameRecord", "features", f.frame_id, "non-finite feature value");
            if (!all_finite(f.object_scores))
                flag("FrameRecord", "object_scores", f.frame_id, "non-finite object score");
            if (!all_finite(f.face_scores))
                flag("FrameRecord", "face_scores", f.frame_id, "non-finite face score");
        }

        if (!ev.ground_truth) continue;
        const GroundTruth& gt = *ev.ground_truth;
        std::set<std::string> known;
        for (const auto& f : ev.frames) known.insert(f.frame_id);

        for (const auto& [fid, flag_value] : gt.informative_labels) {
            (void)flag_value;
            if (!known.count(fid))
                flag("GroundTruth", "informative_labels", fid,
                     "label references unknown frame in event " + ev.event_id);
        }
        std::set<std::string> summary_seen;
        for (const auto& fid : gt.summary_ids) {
            if (!known.count(fid)) {
                flag("GroundTruth", "summary_ids", fid,
                     "summary references unknown frame in event " + ev.event_id);
                continue;
            }
            if (!summary_seen.insert(fid).second)
                flag("GroundTruth", "summary_ids", fid, "duplicate frame in summary");
            auto it = gt.informative_labels.find(fid);
            if (it == gt.informative_labels.end() || !it->second)
                flag("GroundTruth", "summary_ids", fid, "summary frame not labeled informative");
        }
        for (const auto& [fid, gid] : gt.group_ids) {
            (void)gid;
            if (!known.count(fid)) {
                flag("GroundTruth", "group_ids", fid,
                     "group references unknown frame in event " + ev.event_id);
                continue;
            }
            auto it = gt.informative_labels.find(fid);
            if (it == gt.informative_labels.end() || !it->second)
                flag("GroundTruth", "group_ids", fid, "group id on non-informative frame");
        }
        // Level 2 may be absent entirely; when present it must cover exactly
        // the informative frames.
        if (!gt.group_ids.empty()) {
            for (const auto& [fid, informative] : gt.informative_labels) {
                if (informative && known.count(fid) && !gt.group_ids.count(fid))
                    flag("GroundTruth", "group_ids", fid, "informative frame missing group id");
            }
        }
    }
    return out;
}

}  // namespace egosum
