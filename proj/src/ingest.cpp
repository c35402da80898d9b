#include "bnp/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "bnp/common.hpp"

namespace bnp {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool parse_number(const std::string& text, double* out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) return false;
  *out = v;
  return true;
}

// %g-style compact number for human-readable messages.
std::string fmt_compact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

std::filesystem::path EvaluationConfig::resolve(const std::string& path) const {
  std::filesystem::path p(path);
  if (p.is_absolute()) return p;
  return base_dir / p;
}

double default_point_buffer_m(const std::string& layer_name) {
  if (layer_name == "facilities") return 100.0;
  if (layer_name == "services") return 750.0;
  if (layer_name == "pois") return 1500.0;
  return 0.0;
}

double index_cell_size(const EvaluationConfig& config) {
  double cell = 100.0;
  for (const auto& l : config.point_layers) cell = std::max(cell, l.buffer_m);
  for (const auto& l : config.polygon_layers) cell = std::max(cell, l.buffer_m);
  return cell;
}

namespace {

[[noreturn]] void config_fail(const std::filesystem::path& path, int line,
                              const std::string& what) {
  throw ConfigError(path.string() + ": line " + std::to_string(line) + ": " + what);
}

struct TrackedValue {
  double* slot;
  int line = 0;  // 0 = defaulted
};

}  // namespace

EvaluationConfig load_config(const std::filesystem::path& path,
                             std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open");

  EvaluationConfig cfg;
  cfg.base_dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");

  // Line of the last assignment per threshold, for ordering diagnostics.
  std::unordered_map<std::string, TrackedValue> numeric_keys = {
      {"edges/too_short_km", {&cfg.edge_too_short_km}},
      {"edges/ideal_max_km", {&cfg.edge_ideal_max_km}},
      {"edges/max_km", {&cfg.edge_max_km}},
      {"edges/deadend_max_km", {&cfg.deadend_max_km}},
      {"loops/min_km", {&cfg.loop_min_km}},
      {"loops/max_km", {&cfg.loop_max_km}},
      {"slope/sample_interval_m", {&cfg.slope_sample_interval_m}},
      {"general/snap_tolerance_m", {&cfg.snap_tolerance_m}},
      {"general/density_cell_m", {&cfg.density_cell_m}},
      {"general/coverage_sample_interval_m", {&cfg.coverage_sample_interval_m}},
  };
  std::unordered_map<std::string, std::string*> string_keys = {
      {"general/nodes_path", &cfg.nodes_path},
      {"general/edges_path", &cfg.edges_path},
      {"general/elevation_path", &cfg.elevation_path},
      {"general/output_dir", &cfg.output_dir},
  };
  const std::unordered_set<std::string> known_sections = {
      "edges", "loops", "slope", "general", "point_layers", "polygon_layers", "style"};

  std::string section;
  bool skip_section = false;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    // Comments are whole-line; a `#` inside a value stays (hex colors).
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    if (line.front() == '[') {
      if (line.back() != ']') config_fail(path, lineno, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      skip_section = known_sections.count(section) == 0;
      if (skip_section && warnings) {
        warnings->push_back(path.string() + ": line " + std::to_string(lineno) +
                            ": unknown section [" + section + "] ignored");
      }
      continue;
    }
    if (skip_section) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos) config_fail(path, lineno, "expected `key = value`");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) config_fail(path, lineno, "empty key");
    if (section.empty()) config_fail(path, lineno, "key `" + key + "` outside any section");

    if (section == "point_layers" || section == "polygon_layers") {
      const bool point = section == "point_layers";
      auto& layers = point ? cfg.point_layers : cfg.polygon_layers;
      for (const auto& existing : layers) {
        if (existing.name == key) config_fail(path, lineno, "duplicate layer `" + key + "`");
      }
      LayerSpec spec;
      spec.name = key;
      spec.config_line = lineno;
      const auto comma = value.find(',');
      if (comma == std::string::npos) {
        spec.path = trim(value);
        spec.buffer_m = point ? default_point_buffer_m(key) : 0.0;
        if (spec.buffer_m <= 0.0) {
          config_fail(path, lineno, "layer `" + key + "` needs an explicit buffer (path, buffer_m)");
        }
      } else {
        spec.path = trim(value.substr(0, comma));
        if (!parse_number(value.substr(comma + 1), &spec.buffer_m)) {
          config_fail(path, lineno, "invalid buffer for layer `" + key + "`");
        }
        if (spec.buffer_m <= 0.0) config_fail(path, lineno, "buffer must be positive");
      }
      if (spec.path.empty()) config_fail(path, lineno, "empty path for layer `" + key + "`");
      layers.push_back(std::move(spec));
      continue;
    }

    if (section == "style") {
      cfg.style_overrides[key] = value;
      continue;
    }

    if (section == "slope" && key == "class_bounds_pct") {
      std::array<double, 3> bounds{};
      std::stringstream parts(value);
      std::string part;
      int got = 0;
      while (std::getline(parts, part, ',')) {
        if (got == 3 || !parse_number(part, &bounds[got])) {
          config_fail(path, lineno, "class_bounds_pct takes three numbers");
        }
        ++got;
      }
      if (got != 3) config_fail(path, lineno, "class_bounds_pct takes three numbers");
      if (!(0 < bounds[0] && bounds[0] < bounds[1] && bounds[1] < bounds[2])) {
        config_fail(path, lineno, "class_bounds_pct must be positive and strictly ascending");
      }
      cfg.slope_class_bounds_pct = bounds;
      continue;
    }

    const std::string qualified = section + "/" + key;
    if (auto it = numeric_keys.find(qualified); it != numeric_keys.end()) {
      if (!parse_number(value, it->second.slot)) {
        config_fail(path, lineno, "invalid number `" + value + "` for " + key);
      }
      it->second.line = lineno;
      continue;
    }
    if (auto it = string_keys.find(qualified); it != string_keys.end()) {
      if (value.empty()) config_fail(path, lineno, "empty value for " + key);
      *it->second = value;
      continue;
    }
    if (warnings) {
      warnings->push_back(path.string() + ": line " + std::to_string(lineno) + ": unknown key `" +
                          key + "` in [" + section + "]");
    }
  }

  // Cross-field invariants; blame the latest assignment involved.
  auto line_of = [&](const char* a, const char* b) {
    return std::max(numeric_keys.at(a).line, numeric_keys.at(b).line);
  };
  auto require = [&](bool ok, int line, const std::string& what) {
    if (!ok) config_fail(path, std::max(line, 1), what);
  };
  require(cfg.edge_too_short_km > 0,
          numeric_keys.at("edges/too_short_km").line, "too_short_km must be positive");
  require(cfg.edge_too_short_km < cfg.edge_ideal_max_km,
          line_of("edges/too_short_km", "edges/ideal_max_km"),
          "edge thresholds must satisfy too_short_km < ideal_max_km");
  require(cfg.edge_ideal_max_km < cfg.edge_max_km,
          line_of("edges/ideal_max_km", "edges/max_km"),
          "edge thresholds must satisfy ideal_max_km < max_km");
  require(cfg.deadend_max_km > 0, numeric_keys.at("edges/deadend_max_km").line,
          "deadend_max_km must be positive");
  require(cfg.loop_min_km > 0, numeric_keys.at("loops/min_km").line,
          "loop min_km must be positive");
  require(cfg.loop_min_km < cfg.loop_max_km, line_of("loops/min_km", "loops/max_km"),
          "loop thresholds must satisfy min_km < max_km");
  require(cfg.slope_sample_interval_m > 0, numeric_keys.at("slope/sample_interval_m").line,
          "sample_interval_m must be positive");
  require(cfg.snap_tolerance_m > 0, numeric_keys.at("general/snap_tolerance_m").line,
          "snap_tolerance_m must be positive");
  require(cfg.density_cell_m > 0, numeric_keys.at("general/density_cell_m").line,
          "density_cell_m must be positive");
  require(cfg.coverage_sample_interval_m > 0,
          numeric_keys.at("general/coverage_sample_interval_m").line,
          "coverage_sample_interval_m must be positive");
  return cfg;
}

// ---------------------------------------------------------------------------
// GeoJSON helpers
// ---------------------------------------------------------------------------

namespace {

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string() + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

const json& feature_array(const json& doc, const std::filesystem::path& path) {
  if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" ||
      !doc.contains("features") || !doc["features"].is_array()) {
    throw ParseError(path.string() + ": not a GeoJSON FeatureCollection");
  }
  return doc["features"];
}

Point2 read_position(const json& coords, const std::string& context) {
  if (!coords.is_array() || coords.size() < 2 || !coords[0].is_number() ||
      !coords[1].is_number()) {
    throw ParseError(context + ": malformed coordinates");
  }
  const Point2 p{coords[0].get<double>(), coords[1].get<double>()};
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
    throw ParseError(context + ": non-finite coordinate");
  }
  return p;
}

// Reads an integer id property (`node_id` / `edge_id`); falls back to the
// input-order index.
int feature_id(const json& feature, const char* key, int input_index,
               const std::string& context) {
  if (!feature.contains("properties") || !feature["properties"].is_object()) return input_index;
  const json& props = feature["properties"];
  if (!props.contains(key)) return input_index;
  const json& v = props[key];
  if (!v.is_number_integer()) throw ParseError(context + ": " + key + " must be an integer");
  return v.get<int>();
}

std::int64_t bucket_key(int ix, int iy) {
  return (static_cast<std::int64_t>(ix) << 32) ^
         (static_cast<std::int64_t>(iy) & 0xffffffff);
}

struct NodeBuckets {
  double cell;
  std::unordered_map<std::int64_t, std::vector<int>> cells;  // dense node indices

  void insert(const Point2& p, int dense) {
    cells[bucket_key(static_cast<int>(std::floor(p.x / cell)),
                     static_cast<int>(std::floor(p.y / cell)))]
        .push_back(dense);
  }
  // All dense indices within `radius` of p (radius <= cell).
  std::vector<int> near(const Point2& p, double radius,
                        const std::vector<NetworkNode>& nodes) const {
    std::vector<int> hits;
    const int ix = static_cast<int>(std::floor(p.x / cell));
    const int iy = static_cast<int>(std::floor(p.y / cell));
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        auto it = cells.find(bucket_key(ix + dx, iy + dy));
        if (it == cells.end()) continue;
        for (int dense : it->second) {
          if (distance(p, nodes[dense].location) <= radius) hits.push_back(dense);
        }
      }
    }
    return hits;
  }
};

}  // namespace

Network load_network(const std::filesystem::path& nodes_path,
                     const std::filesystem::path& edges_path, double snap_tolerance_m) {
  Network net;

  const json nodes_doc = read_json(nodes_path);
  int input_index = 0;
  for (const json& feature : feature_array(nodes_doc, nodes_path)) {
    const std::string context = nodes_path.string() + ": feature " + std::to_string(input_index);
    if (!feature.contains("geometry") || !feature["geometry"].is_object()) {
      throw ParseError(context + ": missing geometry");
    }
    const json& geom = feature["geometry"];
    if (geom.value("type", "") != "Point") {
      throw ParseError(context + ": expected Point, got " + geom.value("type", "?"));
    }
    NetworkNode node;
    node.id = feature_id(feature, "node_id", input_index, context);
    node.location = read_position(geom["coordinates"], "node " + std::to_string(node.id));
    net.nodes.push_back(node);
    ++input_index;
  }
  std::sort(net.nodes.begin(), net.nodes.end(),
            [](const NetworkNode& a, const NetworkNode& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < net.nodes.size(); ++i) {
    if (net.nodes[i].id == net.nodes[i - 1].id) {
      throw ParseError(nodes_path.string() + ": duplicate node id " +
                       std::to_string(net.nodes[i].id));
    }
  }

  NodeBuckets buckets{std::max(snap_tolerance_m, 1e-9), {}};
  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    const auto clash = buckets.near(net.nodes[i].location, snap_tolerance_m, net.nodes);
    if (!clash.empty()) {
      throw ParseError("node " + std::to_string(net.nodes[clash.front()].id) + " and node " +
                       std::to_string(net.nodes[i].id) + " are closer than the snap tolerance (" +
                       fmt_compact(snap_tolerance_m) + " m)");
    }
    buckets.insert(net.nodes[i].location, static_cast<int>(i));
  }

  const json edges_doc = read_json(edges_path);
  input_index = 0;
  for (const json& feature : feature_array(edges_doc, edges_path)) {
    const std::string context = edges_path.string() + ": feature " + std::to_string(input_index);
    if (!feature.contains("geometry") || !feature["geometry"].is_object()) {
      throw ParseError(context + ": missing geometry");
    }
    const json& geom = feature["geometry"];
    if (geom.value("type", "") != "LineString") {
      throw ParseError(context + ": expected LineString, got " + geom.value("type", "?"));
    }
    NetworkEdge edge;
    edge.id = feature_id(feature, "edge_id", input_index, context);
    const std::string label = "edge " + std::to_string(edge.id);
    if (!geom.contains("coordinates") || !geom["coordinates"].is_array()) {
      throw ParseError(label + ": malformed coordinates");
    }
    for (const json& pos : geom["coordinates"]) {
      edge.geometry.vertices.push_back(read_position(pos, label));
    }
    if (!polyline_valid(edge.geometry)) {
      throw ParseError(label + ": invalid geometry (need 2+ distinct consecutive vertices)");
    }

    // Endpoint resolution is purely geometric.
    std::array<Point2, 2> ends = {edge.geometry.vertices.front(),
                                  edge.geometry.vertices.back()};
    std::array<int, 2> resolved{};
    for (int side = 0; side < 2; ++side) {
      const auto hits = buckets.near(ends[side], snap_tolerance_m, net.nodes);
      if (hits.empty()) {
        throw ParseError(label + ": endpoint (" + fmt_compact(ends[side].x) + ", " +
                         fmt_compact(ends[side].y) + ") has no node within " +
                         fmt_compact(snap_tolerance_m) + " m");
      }
      if (hits.size() > 1) {
        throw ParseError(label + ": endpoint matches nodes " +
                         std::to_string(net.nodes[hits[0]].id) + " and " +
                         std::to_string(net.nodes[hits[1]].id));
      }
      resolved[side] = hits[0];
    }
    edge.endpoint_a = net.nodes[resolved[0]].id;
    edge.endpoint_b = net.nodes[resolved[1]].id;
    edge.length_m = polyline_length(edge.geometry);
    net.nodes[resolved[0]].degree += 1;
    net.nodes[resolved[1]].degree += 1;
    net.edges.push_back(std::move(edge));
    ++input_index;
  }
  std::sort(net.edges.begin(), net.edges.end(),
            [](const NetworkEdge& a, const NetworkEdge& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < net.edges.size(); ++i) {
    if (net.edges[i].id == net.edges[i - 1].id) {
      throw ParseError(edges_path.string() + ": duplicate edge id " +
                       std::to_string(net.edges[i].id));
    }
  }

  for (const auto& node : net.nodes) {
    if (node.degree == 0) {
      throw ParseError("node " + std::to_string(node.id) + ": isolated (no incident edge)");
    }
  }
  return net;
}

// ---------------------------------------------------------------------------
// Feature layers
// ---------------------------------------------------------------------------

namespace {

std::vector<Point2> read_ring(const json& ring, const std::string& context) {
  if (!ring.is_array() || ring.size() < 4) {
    throw ParseError(context + ": ring needs at least 4 positions");
  }
  std::vector<Point2> out;
  for (const json& pos : ring) out.push_back(read_position(pos, context));
  if (!(out.front() == out.back())) throw ParseError(context + ": unclosed ring");
  return out;
}

Polygon read_polygon(const json& rings, const std::string& context) {
  if (!rings.is_array() || rings.empty()) throw ParseError(context + ": empty polygon");
  Polygon poly;
  poly.exterior = read_ring(rings[0], context);
  for (std::size_t r = 1; r < rings.size(); ++r) {
    poly.holes.push_back(read_ring(rings[r], context));
  }
  return poly;
}

}  // namespace

FeatureLayer load_feature_layer(const std::filesystem::path& path, LayerKind kind,
                                const std::string& name, double buffer_m,
                                std::vector<std::string>* warnings) {
  FeatureLayer layer;
  layer.name = name;
  layer.kind = kind;
  layer.buffer_m = buffer_m;

  const json doc = read_json(path);
  int input_index = 0;
  for (const json& feature : feature_array(doc, path)) {
    const std::string context =
        "layer " + name + ": feature " + std::to_string(input_index);
    if (!feature.contains("geometry") || !feature["geometry"].is_object()) {
      throw ParseError(context + ": missing geometry");
    }
    const json& geom = feature["geometry"];
    const std::string type = geom.value("type", "?");
    std::string feature_name;
    if (feature.contains("properties") && feature["properties"].is_object()) {
      const json& props = feature["properties"];
      if (props.contains("name") && props["name"].is_string()) {
        feature_name = props["name"].get<std::string>();
      }
    }

    if (kind == LayerKind::point) {
      if (type != "Point") {
        throw ParseError(context + ": expected Point, got " + type);
      }
      Feature f;
      f.id = static_cast<int>(layer.features.size());
      f.point = read_position(geom["coordinates"], context);
      f.name = feature_name;
      layer.features.push_back(std::move(f));
    } else if (type == "Polygon") {
      Feature f;
      f.id = static_cast<int>(layer.features.size());
      f.polygon = read_polygon(geom["coordinates"], context);
      f.name = feature_name;
      layer.features.push_back(std::move(f));
    } else if (type == "MultiPolygon") {
      if (!geom.contains("coordinates") || !geom["coordinates"].is_array()) {
        throw ParseError(context + ": malformed coordinates");
      }
      for (const json& member : geom["coordinates"]) {
        Feature f;
        f.id = static_cast<int>(layer.features.size());
        f.polygon = read_polygon(member, context);
        f.name = feature_name;
        layer.features.push_back(std::move(f));
      }
    } else {
      throw ParseError(context + ": expected Polygon or MultiPolygon, got " + type);
    }
    ++input_index;
  }

  if (layer.features.empty() && warnings) {
    warnings->push_back("layer " + name + ": empty collection (" + path.string() + ")");
  }
  return layer;
}

// ---------------------------------------------------------------------------
// Elevation grid
// ---------------------------------------------------------------------------

ElevationGrid load_elevation_grid(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string() + ": cannot open");

  static const char* keys[] = {"ncols", "nrows", "xllcorner", "yllcorner", "cellsize",
                               "nodata_value"};
  double header[6];
  for (int k = 0; k < 6; ++k) {
    std::string key, value;
    if (!(in >> key >> value)) {
      throw ParseError(path.string() + ": truncated header (expected " + keys[k] + ")");
    }
    if (lower(key) != keys[k]) {
      throw ParseError(path.string() + ": expected header key " + keys[k] + ", got " + key +
                       " (fixed order)");
    }
    if (!parse_number(value, &header[k])) {
      throw ParseError(path.string() + ": invalid value for " + keys[k] + ": " + value);
    }
  }

  ElevationGrid grid;
  grid.ncols = static_cast<int>(header[0]);
  grid.nrows = static_cast<int>(header[1]);
  grid.xllcorner = header[2];
  grid.yllcorner = header[3];
  grid.cellsize = header[4];
  grid.nodata = header[5];
  if (grid.ncols < 2 || grid.nrows < 2) {
    throw ParseError(path.string() + ": grid must be at least 2x2");
  }
  if (grid.cellsize <= 0) throw ParseError(path.string() + ": cellsize must be positive");

  const std::size_t expected =
      static_cast<std::size_t>(grid.ncols) * static_cast<std::size_t>(grid.nrows);
  grid.values.reserve(expected);
  std::string token;
  while (in >> token) {
    double v;
    if (!parse_number(token, &v)) {
      throw ParseError(path.string() + ": non-numeric grid value `" + token + "`");
    }
    if (grid.values.size() == expected) {
      throw ParseError(path.string() + ": more than " + std::to_string(expected) + " values");
    }
    grid.values.push_back(v);
  }
  if (grid.values.size() != expected) {
    throw ParseError(path.string() + ": expected " + std::to_string(expected) + " values, got " +
                     std::to_string(grid.values.size()));
  }
  return grid;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

std::string ValidationReport::to_text() const {
  std::string out;
  for (const auto& entry : entries) {
    switch (entry.status) {
      case CheckStatus::ok: out += "[ OK ] "; break;
      case CheckStatus::warning: out += "[WARN] "; break;
      case CheckStatus::error: out += "[FAIL] "; break;
    }
    out += entry.input + ": " + entry.message + "\n";
  }
  out += pass ? "validation: PASS\n" : "validation: FAIL\n";
  return out;
}

LoadOutcome load_all(const EvaluationConfig& config) {
  LoadOutcome out;
  try {
    out.network = load_network(config.resolve(config.nodes_path),
                               config.resolve(config.edges_path), config.snap_tolerance_m);
  } catch (const Error& e) {
    out.network_error = e.what();
  }

  for (const LayerSpec& spec : config.point_layers) {
    LoadOutcome::LayerOutcome item;
    item.spec = spec;
    try {
      item.layer = load_feature_layer(config.resolve(spec.path), LayerKind::point, spec.name,
                                      spec.buffer_m, &item.warnings);
    } catch (const Error& e) {
      item.error = e.what();
    }
    out.point_layers.push_back(std::move(item));
  }
  for (const LayerSpec& spec : config.polygon_layers) {
    LoadOutcome::LayerOutcome item;
    item.spec = spec;
    try {
      item.layer = load_feature_layer(config.resolve(spec.path), LayerKind::polygon, spec.name,
                                      spec.buffer_m, &item.warnings);
    } catch (const Error& e) {
      item.error = e.what();
    }
    out.polygon_layers.push_back(std::move(item));
  }

  if (config.has_elevation()) {
    out.grid_configured = true;
    try {
      out.grid = load_elevation_grid(config.resolve(config.elevation_path));
    } catch (const Error& e) {
      out.grid_error = e.what();
    }
  }
  return out;
}

ValidationReport validate_inputs(const EvaluationConfig& config, const LoadOutcome& loads) {
  ValidationReport report;

  if (loads.network) {
    const Network& net = *loads.network;
    report.entries.push_back({"network", CheckStatus::ok,
                              std::to_string(net.nodes.size()) + " nodes, " +
                                  std::to_string(net.edges.size()) + " edges, " +
                                  fmt_fixed(net.total_length_m() / 1000.0, 2) + " km"});
    report.pass = true;
  } else {
    report.entries.push_back({"network", CheckStatus::error, loads.network_error});
    report.pass = false;
  }

  auto layer_entries = [&](const std::vector<LoadOutcome::LayerOutcome>& items,
                           const char* kind_label) {
    for (const auto& item : items) {
      const std::string input = std::string(kind_label) + " layer " + item.spec.name;
      if (!item.layer) {
        report.entries.push_back({input, CheckStatus::error, item.error});
      } else if (item.layer->features.empty()) {
        report.entries.push_back({input, CheckStatus::warning, "empty collection"});
      } else {
        report.entries.push_back({input, CheckStatus::ok,
                                  std::to_string(item.layer->features.size()) +
                                      " features, buffer " + fmt_compact(item.spec.buffer_m) +
                                      " m"});
      }
    }
  };
  if (config.point_layers.empty()) {
    report.entries.push_back({"point layers", CheckStatus::warning, "none configured"});
  } else {
    layer_entries(loads.point_layers, "point");
  }
  if (config.polygon_layers.empty()) {
    report.entries.push_back({"polygon layers", CheckStatus::warning, "none configured"});
  } else {
    layer_entries(loads.polygon_layers, "polygon");
  }

  if (!loads.grid_configured) {
    report.entries.push_back({"elevation", CheckStatus::warning, "no elevation grid configured"});
  } else if (loads.grid) {
    report.entries.push_back({"elevation", CheckStatus::ok,
                              std::to_string(loads.grid->ncols) + "x" +
                                  std::to_string(loads.grid->nrows) + " cells, cellsize " +
                                  fmt_compact(loads.grid->cellsize) + " m"});
  } else {
    report.entries.push_back({"elevation", CheckStatus::error, loads.grid_error});
  }
  return report;
}

const NetworkNode* Network::find_node(int id) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), id,
                             [](const NetworkNode& n, int want) { return n.id < want; });
  if (it == nodes.end() || it->id != id) return nullptr;
  return &*it;
}

double Network::total_length_m() const {
  double sum = 0.0;
  for (const auto& e : edges) sum += e.length_m;
  return sum;
}

BoundingBox Network::bounds() const {
  BoundingBox box;
  for (const auto& n : nodes) box.expand(n.location);
  for (const auto& e : edges)
    for (const auto& v : e.geometry.vertices) box.expand(v);
  return box;
}

}  // namespace bnp
