#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "bnp/evaluate.hpp"
#include "bnp/ingest.hpp"
#include "bnp/netgraph.hpp"

namespace bnp {

struct PointLayerBundle {
  FeatureLayer layer;
  PointAccessResult access;
};

struct PolygonLayerBundle {
  FeatureLayer layer;
  PolygonCoverageResult coverage;
};

// Everything a full evaluation produces; layer vectors follow config order,
// slopes are present only when a grid was available.
struct EvaluationResults {
  const Network* network = nullptr;
  ComponentLabels components;
  std::vector<Loop> loops;
  std::vector<EdgeClass> edge_classes;
  std::vector<LoopClass> loop_classes;
  std::vector<PointLayerBundle> point_layers;
  std::vector<PolygonLayerBundle> polygon_layers;
  std::vector<SlopeProfile> slopes;
  bool has_slopes = false;
};

// Pretty-printed JSON with stable key order, plus a plain-text table view.
struct SummaryDocument {
  nlohmann::ordered_json data;

  std::string to_json_text() const;
  std::string to_text() const;
};

SummaryDocument summarize(const EvaluationResults& results);

// stats/summary.json and stats/summary.txt under output_dir, written
// atomically (temp file + rename, as all writers here).
std::vector<std::filesystem::path> write_summary(const SummaryDocument& doc,
                                                 const std::filesystem::path& output_dir);

// ---------------------------------------------------------------------------
// GeoJSON layer export; every writer rounds numbers to 3 decimals and orders
// features by id. Files land in output_dir/layers/.
// ---------------------------------------------------------------------------

std::filesystem::path export_edges_classified(const Network& network,
                                              const std::vector<EdgeClass>& classes,
                                              const std::filesystem::path& output_dir);

std::filesystem::path export_loops_classified(const std::vector<Loop>& loops,
                                              const std::vector<LoopClass>& classes,
                                              const std::filesystem::path& output_dir);

std::filesystem::path export_components(const Network& network, const ComponentLabels& labels,
                                        const std::filesystem::path& output_dir);

std::filesystem::path export_slope_edges(const Network& network,
                                         const std::vector<SlopeProfile>& profiles,
                                         const std::filesystem::path& output_dir);

std::filesystem::path export_access(const PointLayerBundle& bundle,
                                    const std::filesystem::path& output_dir);

std::filesystem::path export_coverage(const Network& network, const PolygonLayerBundle& bundle,
                                      const std::filesystem::path& output_dir);

std::filesystem::path export_network_nodes(const Network& network,
                                           const std::filesystem::path& output_dir);

std::filesystem::path export_network_edges(const Network& network,
                                           const std::filesystem::path& output_dir);

std::filesystem::path export_input_layer(const FeatureLayer& layer,
                                         const std::filesystem::path& output_dir);

// All classified layers for the results at hand (the step-8 batch).
std::vector<std::filesystem::path> export_layers(const EvaluationResults& results,
                                                 const std::filesystem::path& output_dir);

// ---------------------------------------------------------------------------
// SVG maps
// ---------------------------------------------------------------------------

struct ClassStyle {
  std::string color;
  double stroke_width = 2.0;
  double point_radius = 4.0;
};

struct StyleSpec {
  std::map<std::string, ClassStyle> classes;  // by class label
  double canvas_px = 900.0;                   // longer data axis, margins excluded
  double margin_px = 40.0;

  const ClassStyle& for_label(const std::string& label) const;

  // Built-in palette with config [style] color overrides applied.
  static StyleSpec defaults(const EvaluationConfig& config);
};

// Deterministic color for component k (12-color palette, cycling).
const std::string& component_color(int component);

struct SvgItem {
  enum class Kind { polyline, polygon, point };
  Kind kind = Kind::polyline;
  // polyline: paths[0] is the vertex chain; polygon: rings, exterior first,
  // rendered even-odd; point: paths[0][0].
  std::vector<std::vector<Point2>> paths;
  std::string label;           // style lookup + legend bucket
  bool dashed = false;
  double fill_opacity = 0.0;   // polygons only
  std::string color_override;  // used instead of the style color when set
};

struct MapScene {
  std::string title;
  std::vector<SvgItem> items;              // draw order = paint order
  std::vector<std::string> legend_order;   // labels, top to bottom
  std::map<std::string, int> legend_counts;
};

// Self-contained SVG: items in style colors, legend with per-class counts,
// viewport fit to the data bounds plus margin. Byte-identical across runs.
std::filesystem::path render_svg(const MapScene& scene, const StyleSpec& style,
                                 const std::filesystem::path& output_path);

// Scene builders for the workflow steps.
MapScene overview_scene(const Network& network, const std::vector<FeatureLayer>& point_layers,
                        const std::vector<FeatureLayer>& polygon_layers);
MapScene edges_scene(const Network& network, const std::vector<EdgeClass>& classes);
MapScene loops_scene(const Network& network, const std::vector<Loop>& loops,
                     const std::vector<LoopClass>& classes);
MapScene components_scene(const Network& network, const ComponentLabels& labels);
MapScene slope_scene(const Network& network, const std::vector<SlopeProfile>& profiles);
MapScene access_scene(const Network& network, const PointLayerBundle& bundle);
MapScene coverage_scene(const Network& network, const PolygonLayerBundle& bundle);

}  // namespace bnp
