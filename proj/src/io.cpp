// Copyright 2026 The emptybox Authors
// SPDX-License-Identifier: Apache-2.0

#include "emptybox/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

namespace emptybox {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::optional<double> parse_double(std::string_view field) {
  field = trim(field);
  if (field.empty()) return std::nullopt;
  double value = 0.0;
  const auto* end = field.data() + field.size();
  const auto res = std::from_chars(field.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end) return std::nullopt;
  return value;
}

std::optional<std::vector<double>> parse_csv_row(std::string_view line) {
  std::vector<double> row;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    const auto field = line.substr(
        start, comma == std::string_view::npos ? comma : comma - start);
    const auto value = parse_double(field);
    if (!value) return std::nullopt;
    row.push_back(*value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return row;
}

std::vector<double> json_to_vector(const nlohmann::json& arr,
                                   const char* what) {
  if (!arr.is_array()) {
    throw ParseError(std::string(what) + " must be an array of numbers");
  }
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number()) {
      throw ParseError(std::string(what) + " must contain only numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

OpenBox default_region(const PointSet& points) {
  if (points.size() == 0) {
    return OpenBox::unit_cube(points.dim() == 0 ? 2 : points.dim());
  }
  const std::size_t d = points.dim();
  std::vector<double> lo(d), hi(d);
  for (std::size_t a = 0; a < d; ++a) {
    double mn = points.coord(0, a), mx = points.coord(0, a);
    for (std::size_t i = 1; i < points.size(); ++i) {
      mn = std::min(mn, points.coord(i, a));
      mx = std::max(mx, points.coord(i, a));
    }
    const double ext = mx - mn;
    const double pad = ext > 0.0 ? 0.01 * ext : 0.5;
    lo[a] = mn - pad;
    hi[a] = mx + pad;
  }
  return OpenBox(std::move(lo), std::move(hi));
}

IngestResult ingest_csv_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool first_content_line = true;
  std::size_t dim = 0;
  PointSet points;
  while (std::getline(in, line)) {
    ++line_no;
    const auto view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    auto row = parse_csv_row(view);
    if (!row) {
      if (first_content_line) {  // a single leading header line is allowed
        first_content_line = false;
        continue;
      }
      throw ParseError("line " + std::to_string(line_no) +
                       ": non-numeric field");
    }
    first_content_line = false;
    if (dim == 0) {
      dim = row->size();
      points = PointSet(dim, {});
    } else if (row->size() != dim) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(dim) + " fields, got " +
                       std::to_string(row->size()));
    }
    points.push_back(*row);
  }
  if (points.size() == 0) {
    throw ParseError("no points found in CSV input");
  }
  return IngestResult{points, default_region(points), false};
}

IngestResult ingest_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("points")) {
    throw ParseError("JSON input must be an object with a \"points\" array");
  }
  const auto& pts = doc["points"];
  if (!pts.is_array()) throw ParseError("\"points\" must be an array");

  std::size_t dim = 0;
  if (doc.contains("dim")) {
    if (!doc["dim"].is_number_unsigned() || doc["dim"].get<std::size_t>() == 0) {
      throw ParseError("\"dim\" must be a positive integer");
    }
    dim = doc["dim"].get<std::size_t>();
  }
  PointSet points;
  std::size_t row_no = 0;
  for (const auto& row : pts) {
    ++row_no;
    auto coords = json_to_vector(row, "point");
    if (dim == 0) {
      dim = coords.size();
    }
    if (coords.size() != dim) {
      throw ParseError("point " + std::to_string(row_no) + ": expected " +
                       std::to_string(dim) + " coordinates, got " +
                       std::to_string(coords.size()));
    }
    if (points.size() == 0 && points.dim() == 0) points = PointSet(dim, {});
    points.push_back(coords);
  }
  if (dim == 0) throw ParseError("empty point set without a \"dim\" field");
  if (points.size() == 0) points = PointSet(dim, {});

  if (doc.contains("region")) {
    const auto& reg = doc["region"];
    if (!reg.is_object() || !reg.contains("lo") || !reg.contains("hi")) {
      throw ParseError("\"region\" must be an object with lo and hi arrays");
    }
    auto lo = json_to_vector(reg["lo"], "region.lo");
    auto hi = json_to_vector(reg["hi"], "region.hi");
    if (lo.size() != dim || hi.size() != dim) {
      throw ParseError("region dimension does not match the points");
    }
    try {
      return IngestResult{points, OpenBox(std::move(lo), std::move(hi)), true};
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("bad region: ") + e.what());
    }
  }
  return IngestResult{points, default_region(points), false};
}

IngestResult ingest(const std::string& path, const std::string& format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string fmt = format;
  if (fmt.empty()) {
    const auto dot = path.rfind('.');
    const std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    fmt = ext == "json" ? "json" : "csv";
  }
  if (fmt == "json") return ingest_json_text(buf.str());
  if (fmt == "csv") return ingest_csv_text(buf.str());
  throw ParseError("unknown input format: " + fmt);
}

nlohmann::ordered_json box_to_json(const OpenBox& box) {
  nlohmann::ordered_json j;
  j["lo"] = box.lo;
  j["hi"] = box.hi;
  return j;
}

nlohmann::ordered_json pointset_to_json(const PointSet& points,
                                        const std::optional<OpenBox>& region) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["dim"] = points.dim();
  if (region) j["region"] = box_to_json(*region);
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (std::size_t a = 0; a < points.dim(); ++a) {
      row.push_back(points.coord(i, a));
    }
    rows.push_back(std::move(row));
  }
  j["points"] = std::move(rows);
  return j;
}

std::string pointset_to_csv(const PointSet& points) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t a = 0; a < points.dim(); ++a) {
      if (a) out << ',';
      out << points.coord(i, a);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace emptybox
