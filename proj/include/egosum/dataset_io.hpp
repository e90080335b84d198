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

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "egosum/types.hpp"

namespace egosum {

/// Structural error in a JSONL dataset stream. `where` is "<source>:<line>".
class ParseError : public std::runtime_error {
public:
    ParseError(std::string where, const std::string& message)
        : std::runtime_error(where + ": " + message), where_(std::move(where)) {}

    const std::string& where() const { return where_; }

private:
    std::string where_;
};

/// One invariant violation found by validate_dataset. Violations are data,
/// not failures: a dataset that parses can still carry them.
struct Violation {
    std::string type_name;  // e.g. "FrameRecord"
    std::string field;      // e.g. "informativeness"
    std::string id;         // offending frame or event id
    std::string message;
};

// JSON Lines ingestion. One object per line:
//   frame:        {"frame_id", "event_id", "timestamp", "features",
//                  "informativeness", "saliency", "object_scores", "face_scores"}
//   ground truth: {"gt": "gt", "event_id", "informative", "groups", "summary"}
// Frames are grouped by event and sorted by (timestamp, frame_id); events are
// sorted by event_id. Throws ParseError on malformed records, inconsistent
// feature dimensions, duplicate frame ids, or ground truth referencing
// unknown frames.
Dataset parse_dataset(std::istream& input, const std::string& source_name = "<input>");
Dataset parse_dataset(const std::string& text, const std::string& source_name = "<input>");

/// Loads a dataset file, optionally merging ground-truth records from a
/// second JSONL file.
Dataset load_dataset_files(const std::string& path, const std::string& gt_path = "");

/// Canonical serialization: for each event (in id order) its frame lines in
/// (timestamp, frame_id) order, then its ground-truth line if present.
/// parse(serialize(d)) == d, and serialize is byte-deterministic.
std::string serialize_dataset(const Dataset& d);

/// Checks every type invariant and returns the violations found; empty means
/// the dataset is clean.
std::vector<Violation> validate_dataset(const Dataset& d);

}  // namespace egosum
