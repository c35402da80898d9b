#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bnp/geometry.hpp"

namespace bnp {

// ---------------------------------------------------------------------------
// Evaluation configuration
//
// INI-style file with sections [edges] [loops] [slope] [general]
// [point_layers] [polygon_layers] [style]; `key = value`, `#` comments.
// Layer entries are `name = path, buffer_m` (buffer optional for the
// well-known point layers facilities/services/pois). Unknown keys are
// warnings, unknown values and ordering violations are errors with line
// numbers. Relative paths resolve against the config file's directory.
// ---------------------------------------------------------------------------

struct LayerSpec {
  std::string name;
  std::string path;
  double buffer_m = 0.0;
  int config_line = 0;
};

struct EvaluationConfig {
  // [edges] -- km
  double edge_too_short_km = 1.0;
  double edge_ideal_max_km = 5.0;
  double edge_max_km = 10.0;
  double deadend_max_km = 3.0;

  // [loops] -- km
  double loop_min_km = 8.0;
  double loop_max_km = 20.0;

  // [slope]
  double slope_sample_interval_m = 50.0;
  std::array<double, 3> slope_class_bounds_pct{2.0, 4.0, 6.0};

  // [general]
  std::string nodes_path = "nodes.geojson";
  std::string edges_path = "edges.geojson";
  std::string elevation_path;  // empty = no elevation grid configured
  double snap_tolerance_m = 0.5;
  double density_cell_m = 1000.0;
  double coverage_sample_interval_m = 25.0;
  std::string output_dir = "./output";

  std::vector<LayerSpec> point_layers;
  std::vector<LayerSpec> polygon_layers;

  // [style]: class label -> color override for map rendering
  std::map<std::string, std::string> style_overrides;

  // Directory of the config file; anchor for relative input paths.
  std::filesystem::path base_dir = ".";

  std::filesystem::path resolve(const std::string& path) const;
  bool has_elevation() const { return !elevation_path.empty(); }
};

// Default buffers for the well-known point layer names; 0 if unknown.
double default_point_buffer_m(const std::string& layer_name);

// Cell size for the proximity index: the largest configured buffer distance,
// at least 100 m.
double index_cell_size(const EvaluationConfig& config);

// Throws ConfigError (missing file, malformed line, ordering violation; all
// with line numbers). Unknown keys are appended to `warnings` when given.
EvaluationConfig load_config(const std::filesystem::path& path,
                             std::vector<std::string>* warnings = nullptr);

// ---------------------------------------------------------------------------
// Network
// ---------------------------------------------------------------------------

struct NetworkNode {
  int id = 0;
  Point2 location;
  int degree = 0;  // filled by load_network; self-loops count twice
};

struct NetworkEdge {
  int id = 0;
  Polyline geometry;
  int endpoint_a = 0;  // node id at the geometry's first vertex
  int endpoint_b = 0;  // node id at the geometry's last vertex
  double length_m = 0.0;
};

struct Network {
  std::vector<NetworkNode> nodes;  // sorted by id
  std::vector<NetworkEdge> edges;  // sorted by id

  const NetworkNode* find_node(int id) const;
  double total_length_m() const;
  BoundingBox bounds() const;
};

// Loads nodes + edges GeoJSON, snaps edge endpoints to the unique node within
// snap_tolerance_m, fills degrees and cached lengths. Throws IoError /
// ParseError (dangling or ambiguous endpoints, duplicate node positions,
// non-finite coordinates, isolated nodes; messages name the offending id).
Network load_network(const std::filesystem::path& nodes_path,
                     const std::filesystem::path& edges_path, double snap_tolerance_m);

// ---------------------------------------------------------------------------
// Feature layers
// ---------------------------------------------------------------------------

enum class LayerKind { point, polygon };

struct Feature {
  int id = 0;  // input order; MultiPolygon members flattened
  std::optional<Point2> point;
  std::optional<Polygon> polygon;
  std::string name;  // `name` property when present
};

struct FeatureLayer {
  std::string name;
  LayerKind kind = LayerKind::point;
  double buffer_m = 0.0;
  std::vector<Feature> features;
};

// Throws IoError / ParseError (kind mismatch names the feature index,
// unclosed rings). An empty collection is a warning, not an error.
FeatureLayer load_feature_layer(const std::filesystem::path& path, LayerKind kind,
                                const std::string& name, double buffer_m,
                                std::vector<std::string>* warnings = nullptr);

// ---------------------------------------------------------------------------
// Elevation grid (ESRI ASCII)
// ---------------------------------------------------------------------------

class ElevationGrid {
 public:
  int ncols = 0;
  int nrows = 0;
  double xllcorner = 0.0;
  double yllcorner = 0.0;
  double cellsize = 0.0;
  double nodata = -9999.0;
  std::vector<double> values;  // row-major, row 0 = top

  double value_at(int col, int row_from_top) const {
    return values[static_cast<std::size_t>(row_from_top) * ncols + col];
  }
  bool is_nodata(int col, int row_from_top) const {
    return value_at(col, row_from_top) == nodata;
  }
  // Cell-center coordinates.
  double center_x(int col) const { return xllcorner + (col + 0.5) * cellsize; }
  double center_y(int row_from_top) const {
    return yllcorner + (nrows - row_from_top - 0.5) * cellsize;
  }
};

// Header keys case-insensitive, fixed order: ncols, nrows, xllcorner,
// yllcorner, cellsize, NODATA_value. Throws IoError / ParseError.
ElevationGrid load_elevation_grid(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Input validation (workflow step 0)
// ---------------------------------------------------------------------------

enum class CheckStatus { ok, warning, error };

struct ValidationEntry {
  std::string input;
  CheckStatus status = CheckStatus::ok;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationEntry> entries;
  bool pass = false;

  std::string to_text() const;
};

// Outcome of loading every configured input, errors collected per input.
struct LoadOutcome {
  std::optional<Network> network;
  std::string network_error;

  struct LayerOutcome {
    LayerSpec spec;
    std::optional<FeatureLayer> layer;
    std::string error;
    std::vector<std::string> warnings;
  };
  std::vector<LayerOutcome> point_layers;
  std::vector<LayerOutcome> polygon_layers;

  std::optional<ElevationGrid> grid;
  std::string grid_error;
  bool grid_configured = false;
};

// Loads everything the config registers, catching per-input failures.
LoadOutcome load_all(const EvaluationConfig& config);

// The network is the only mandatory input; everything else degrades to
// warnings. pass == false iff the network is absent or invalid.
ValidationReport validate_inputs(const EvaluationConfig& config, const LoadOutcome& loads);

}  // namespace bnp
