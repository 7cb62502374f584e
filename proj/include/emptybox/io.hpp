// Copyright 2026 The emptybox Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EMPTYBOX_IO_HPP
#define EMPTYBOX_IO_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "emptybox/geometry.hpp"

namespace emptybox {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IngestResult {
  PointSet points;
  OpenBox region;
  bool region_explicit = false;
};

// Bounding box of the points expanded by 1% per axis; degenerate axes get a
// fixed 0.5 pad on each side.
OpenBox default_region(const PointSet& points);

// CSV: one point per line, comma-separated decimal fields, optional header
// line. JSON: {"dim": d, "region": {"lo": [...], "hi": [...]}?, "points":
// [[...], ...]}. format is "csv", "json", or "" to sniff from the extension.
IngestResult ingest(const std::string& path, const std::string& format = "");

IngestResult ingest_csv_text(const std::string& text);
IngestResult ingest_json_text(const std::string& text);

// Emits the stable gen/ingest schema: dim, region (when given), points.
nlohmann::ordered_json pointset_to_json(const PointSet& points,
                                        const std::optional<OpenBox>& region);
std::string pointset_to_csv(const PointSet& points);

nlohmann::ordered_json box_to_json(const OpenBox& box);

}  // namespace emptybox

#endif  // EMPTYBOX_IO_HPP
