#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bnp/geometry.hpp"
#include "bnp/ingest.hpp"
#include "bnp/netgraph.hpp"

namespace bnp {

// Ordered class intervals [a, b), contiguous from 0, last one open-ended.
// Every boundary value belongs to the class it opens: a 10 km edge is
// too_long, a 6 % slope is very_steep.
struct ClassificationScheme {
  std::vector<std::string> labels;   // n class labels
  std::vector<double> upper_bounds;  // n-1 ascending bounds

  const std::string& classify(double value) const;

  static ClassificationScheme edge_km(const EvaluationConfig& config);
  static ClassificationScheme loop_km(const EvaluationConfig& config);
  static ClassificationScheme slope_pct(const EvaluationConfig& config);
};

struct EdgeClass {
  int edge_id = 0;
  double length_km = 0.0;
  std::string label;
  bool deadend_too_long = false;
};

// Labels every edge by length; edges on a dead-end chain whose total length
// reaches deadend_max_km are additionally flagged. Ordered by edge id.
std::vector<EdgeClass> classify_edges(const Network& network, const Graph& graph,
                                      const ClassificationScheme& scheme, double deadend_max_km);

struct LoopClass {
  int loop_id = 0;
  double perimeter_km = 0.0;
  std::string label;
};

std::vector<LoopClass> classify_loops(const std::vector<Loop>& loops,
                                      const ClassificationScheme& scheme);

// Point counts per square cell; origin at the layer bounding-box lower-left,
// row 0 at the bottom.
struct DensityGrid {
  double cell_m = 0.0;
  double origin_x = 0.0;
  double origin_y = 0.0;
  int cols = 0;
  int rows = 0;
  std::vector<int> counts;  // row-major from the bottom row

  int at(int col, int row) const { return counts[static_cast<std::size_t>(row) * cols + col]; }
};

struct PointAccess {
  int feature_id = 0;
  double distance_m = 0.0;  // exact min distance to the network
  bool within_reach = false;
};

struct PointAccessResult {
  std::string layer_name;
  double buffer_m = 0.0;
  std::vector<PointAccess> points;  // by feature id
  int within_count = 0;
  int outside_count = 0;
  DensityGrid density;
};

// Exact min distances: the index narrows candidates, distances decide. The
// result is independent of the index cell size.
PointAccessResult evaluate_point_layer(const Network& network, const GridIndex& index,
                                       const FeatureLayer& layer, double density_cell_m);

struct EdgeCoverage {
  int edge_id = 0;
  double covered_fraction = 0.0;  // covered samples / samples
  bool through_layer = false;     // covered_fraction > 0
};

struct PolygonCoverageResult {
  std::string layer_name;
  double buffer_m = 0.0;
  std::vector<EdgeCoverage> edges;  // by edge id
  double length_inside_m = 0.0;     // sum of covered_fraction * edge length
  double length_outside_m = 0.0;
};

// Samples each edge at chainages 0, s, 2s, ..., L (L always included); a
// sample is covered iff its distance to any layer polygon is <= buffer_m.
PolygonCoverageResult evaluate_polygon_layer(const Network& network, const FeatureLayer& layer,
                                             double sample_interval_m);

// Bilinear interpolation among the 4 surrounding cell centers; nullopt when
// p leaves the cell-center hull or a contributing cell is nodata.
std::optional<double> sample_elevation(const ElevationGrid& grid, const Point2& p);

struct SlopeProfile {
  int edge_id = 0;
  std::vector<double> chainages_m;
  std::vector<std::optional<double>> elevations_m;  // parallel to chainages
  double avg_slope_pct = 0.0;  // length-weighted mean of absolute pair slopes
  double max_slope_pct = 0.0;
  double valid_fraction = 0.0;  // samples with elevation / samples
  bool classified = false;      // false when valid_fraction < 0.5 or no valid pair
  std::string label;            // scheme class, or "unclassified"
};

// Pairs with a nodata sample contribute neither to avg nor max. Ordered by
// edge id.
std::vector<SlopeProfile> evaluate_slopes(const Network& network, const ElevationGrid& grid,
                                          const EvaluationConfig& config);

}  // namespace bnp
