#include "bnp/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "bnp/common.hpp"
#include "bnp/geometry.hpp"

namespace bnp {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string fmt2(double v) { return fmt_fixed(v, 2); }

void atomic_write(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out.good()) throw IoError("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

const NetworkEdge& edge_by_id(const Network& network, int id) {
  const auto it = std::lower_bound(
      network.edges.begin(), network.edges.end(), id,
      [](const NetworkEdge& e, int want) { return e.id < want; });
  if (it == network.edges.end() || it->id != id)
    throw ParseError("edge " + std::to_string(id) + " not in network");
  return *it;
}

const Feature* feature_by_id(const FeatureLayer& layer, int id) {
  for (const auto& f : layer.features)
    if (f.id == id) return &f;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Summary accumulation
// ---------------------------------------------------------------------------

struct ClassTotal {
  int count = 0;
  double km = 0.0;
};

ordered_json class_rows(const std::vector<std::string>& order,
                        const std::map<std::string, ClassTotal>& totals, const char* km_key) {
  ordered_json rows = ordered_json::array();
  for (const auto& label : order) {
    const auto it = totals.find(label);
    ordered_json row;
    row["class"] = label;
    row["count"] = it == totals.end() ? 0 : it->second.count;
    row[km_key] = round3(it == totals.end() ? 0.0 : it->second.km);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

SummaryDocument summarize(const EvaluationResults& results) {
  const Network& net = *results.network;
  const EvaluationConfig defaults;
  SummaryDocument doc;
  ordered_json& data = doc.data;

  const double total_km = net.total_length_m() / 1000.0;
  ordered_json network;
  network["nodes"] = static_cast<int>(net.nodes.size());
  network["edges"] = static_cast<int>(net.edges.size());
  network["components"] = results.components.count;
  network["total_km"] = round3(total_km);
  data["network"] = network;

  // Per-component rows, labels ascending (largest component first by
  // construction of the labelling).
  ordered_json comp_rows = ordered_json::array();
  if (results.components.count > 0 &&
      results.components.edge_component.size() == net.edges.size()) {
    std::vector<int> nodes_of(results.components.count, 0);
    std::vector<int> edges_of(results.components.count, 0);
    std::vector<double> km_of(results.components.count, 0.0);
    for (const int c : results.components.node_component) nodes_of[c] += 1;
    for (std::size_t e = 0; e < net.edges.size(); ++e) {
      const int c = results.components.edge_component[e];
      edges_of[c] += 1;
      km_of[c] += net.edges[e].length_m / 1000.0;
    }
    for (int c = 0; c < results.components.count; ++c) {
      ordered_json row;
      row["component_id"] = c;
      row["nodes"] = nodes_of[c];
      row["edges"] = edges_of[c];
      row["length_km"] = round3(km_of[c]);
      comp_rows.push_back(row);
    }
  }
  data["components"] = comp_rows;

  {
    std::map<std::string, ClassTotal> totals;
    ClassTotal flagged, all;
    for (const auto& ec : results.edge_classes) {
      totals[ec.label].count += 1;
      totals[ec.label].km += ec.length_km;
      all.count += 1;
      all.km += ec.length_km;
      if (ec.deadend_too_long) {
        flagged.count += 1;
        flagged.km += ec.length_km;
      }
    }
    ordered_json block;
    block["classes"] = class_rows(ClassificationScheme::edge_km(defaults).labels, totals,
                                  "length_km");
    block["deadend_too_long"] = {{"count", flagged.count}, {"length_km", round3(flagged.km)}};
    block["total"] = {{"count", all.count}, {"length_km", round3(all.km)}};
    data["edges"] = block;
  }

  {
    std::map<std::string, ClassTotal> totals;
    ClassTotal all;
    for (const auto& lc : results.loop_classes) {
      totals[lc.label].count += 1;
      totals[lc.label].km += lc.perimeter_km;
      all.count += 1;
      all.km += lc.perimeter_km;
    }
    ordered_json block;
    block["classes"] = class_rows(ClassificationScheme::loop_km(defaults).labels, totals,
                                  "perimeter_km");
    block["total"] = {{"count", all.count}, {"perimeter_km", round3(all.km)}};
    data["loops"] = block;
  }

  ordered_json point_rows = ordered_json::array();
  for (const auto& bundle : results.point_layers) {
    const int features = static_cast<int>(bundle.access.points.size());
    ordered_json row;
    row["layer"] = bundle.access.layer_name;
    row["buffer_m"] = round3(bundle.access.buffer_m);
    row["features"] = features;
    row["within_reach"] = bundle.access.within_count;
    row["outside_reach"] = bundle.access.outside_count;
    if (features > 0)
      row["within_pct"] = round3(100.0 * bundle.access.within_count / features);
    else
      row["within_pct"] = nullptr;
    if (bundle.access.within_count > 0)
      row["km_per_point"] = round3(total_km / bundle.access.within_count);
    else
      row["km_per_point"] = nullptr;
    point_rows.push_back(row);
  }
  data["point_layers"] = point_rows;

  ordered_json polygon_rows = ordered_json::array();
  for (const auto& bundle : results.polygon_layers) {
    const double inside = bundle.coverage.length_inside_m;
    const double outside = bundle.coverage.length_outside_m;
    ordered_json row;
    row["layer"] = bundle.coverage.layer_name;
    row["buffer_m"] = round3(bundle.coverage.buffer_m);
    row["inside_km"] = round3(inside / 1000.0);
    row["outside_km"] = round3(outside / 1000.0);
    if (inside + outside > 0.0)
      row["inside_pct"] = round3(100.0 * inside / (inside + outside));
    else
      row["inside_pct"] = nullptr;
    polygon_rows.push_back(row);
  }
  data["polygon_layers"] = polygon_rows;

  if (results.has_slopes) {
    std::map<std::string, ClassTotal> totals;
    ClassTotal unclassified, all;
    for (const auto& p : results.slopes) {
      const double km = edge_by_id(net, p.edge_id).length_m / 1000.0;
      all.count += 1;
      all.km += km;
      if (p.classified) {
        totals[p.label].count += 1;
        totals[p.label].km += km;
      } else {
        unclassified.count += 1;
        unclassified.km += km;
      }
    }
    ordered_json block;
    block["classes"] = class_rows(ClassificationScheme::slope_pct(defaults).labels, totals,
                                  "length_km");
    block["unclassified"] = {{"count", unclassified.count}, {"length_km", round3(unclassified.km)}};
    block["total"] = {{"count", all.count}, {"length_km", round3(all.km)}};
    data["slope"] = block;
  }

  return doc;
}

std::string SummaryDocument::to_json_text() const { return data.dump(2) + "\n"; }

std::string SummaryDocument::to_text() const {
  std::ostringstream out;
  out << std::fixed;

  const auto& network = data.at("network");
  out << "Network\n";
  out << "  nodes        " << std::setw(8) << network.at("nodes").get<int>() << "\n";
  out << "  edges        " << std::setw(8) << network.at("edges").get<int>() << "\n";
  out << "  components   " << std::setw(8) << network.at("components").get<int>() << "\n";
  out << "  total length " << std::setw(8) << fmt2(network.at("total_km").get<double>())
      << " km\n";

  const auto& comps = data.at("components");
  if (!comps.empty()) {
    out << "\nComponents\n";
    out << "    id   nodes   edges   length km\n";
    for (const auto& row : comps) {
      out << "  " << std::setw(4) << row.at("component_id").get<int>() << "  " << std::setw(6)
          << row.at("nodes").get<int>() << "  " << std::setw(6) << row.at("edges").get<int>()
          << "  " << std::setw(10) << fmt2(row.at("length_km").get<double>()) << "\n";
    }
  }

  const auto class_table = [&](const ordered_json& block, const char* km_key) {
    out << "  class          count  " << (km_key == std::string("perimeter_km") ? "perimeter km"
                                                                                : "length km")
        << "\n";
    for (const auto& row : block.at("classes")) {
      out << "  " << std::left << std::setw(13) << row.at("class").get<std::string>()
          << std::right << std::setw(7) << row.at("count").get<int>() << "  " << std::setw(10)
          << fmt2(row.at(km_key).get<double>()) << "\n";
    }
    const auto& total = block.at("total");
    out << "  " << std::left << std::setw(13) << "total" << std::right << std::setw(7)
        << total.at("count").get<int>() << "  " << std::setw(10)
        << fmt2(total.at(km_key).get<double>()) << "\n";
  };

  out << "\nEdge length classes\n";
  class_table(data.at("edges"), "length_km");
  const auto& flagged = data.at("edges").at("deadend_too_long");
  out << "  dead ends over limit: " << flagged.at("count").get<int>() << " edges, "
      << fmt2(flagged.at("length_km").get<double>()) << " km\n";

  out << "\nLoops\n";
  class_table(data.at("loops"), "perimeter_km");

  const auto& points = data.at("point_layers");
  if (!points.empty()) {
    out << "\nPoint layers\n";
    for (const auto& row : points) {
      out << "  " << std::left << std::setw(14) << row.at("layer").get<std::string>()
          << std::right << " buffer " << std::setw(5)
          << static_cast<long long>(std::llround(row.at("buffer_m").get<double>())) << " m   "
          << row.at("within_reach").get<int>() << " of " << row.at("features").get<int>()
          << " within reach";
      if (!row.at("within_pct").is_null()) {
        char pct[32];
        std::snprintf(pct, sizeof(pct), "%.1f", row.at("within_pct").get<double>());
        out << " (" << pct << " %)";
      }
      if (!row.at("km_per_point").is_null())
        out << ", one per " << fmt2(row.at("km_per_point").get<double>()) << " km";
      out << "\n";
    }
  }

  const auto& polys = data.at("polygon_layers");
  if (!polys.empty()) {
    out << "\nPolygon layers\n";
    for (const auto& row : polys) {
      out << "  " << std::left << std::setw(14) << row.at("layer").get<std::string>()
          << std::right << " buffer " << std::setw(5)
          << static_cast<long long>(std::llround(row.at("buffer_m").get<double>())) << " m   "
          << fmt2(row.at("inside_km").get<double>()) << " km inside";
      if (!row.at("inside_pct").is_null()) {
        char pct[32];
        std::snprintf(pct, sizeof(pct), "%.1f", row.at("inside_pct").get<double>());
        out << " (" << pct << " %)";
      }
      out << ", " << fmt2(row.at("outside_km").get<double>()) << " km outside\n";
    }
  }

  if (data.contains("slope")) {
    out << "\nSlope\n";
    class_table(data.at("slope"), "length_km");
    const auto& un = data.at("slope").at("unclassified");
    out << "  unclassified: " << un.at("count").get<int>() << " edges, "
        << fmt2(un.at("length_km").get<double>()) << " km\n";
  }

  return out.str();
}

std::vector<fs::path> write_summary(const SummaryDocument& doc, const fs::path& output_dir) {
  const fs::path json_path = output_dir / "stats" / "summary.json";
  const fs::path text_path = output_dir / "stats" / "summary.txt";
  atomic_write(json_path, doc.to_json_text());
  atomic_write(text_path, doc.to_text());
  return {json_path, text_path};
}

// ---------------------------------------------------------------------------
// GeoJSON export
// ---------------------------------------------------------------------------

namespace {

ordered_json position(const Point2& p) {
  return ordered_json::array({round3(p.x), round3(p.y)});
}

ordered_json line_coordinates(const std::vector<Point2>& points) {
  ordered_json arr = ordered_json::array();
  for (const auto& p : points) arr.push_back(position(p));
  return arr;
}

ordered_json line_geometry(const Polyline& line) {
  ordered_json g;
  g["type"] = "LineString";
  g["coordinates"] = line_coordinates(line.vertices);
  return g;
}

ordered_json point_geometry(const Point2& p) {
  ordered_json g;
  g["type"] = "Point";
  g["coordinates"] = position(p);
  return g;
}

// Rings are stored open; GeoJSON wants them closed.
ordered_json closed_ring(const std::vector<Point2>& ring) {
  ordered_json arr = line_coordinates(ring);
  if (!ring.empty() && !(ring.front() == ring.back())) arr.push_back(position(ring.front()));
  return arr;
}

ordered_json polygon_geometry(const Polygon& poly) {
  ordered_json g;
  g["type"] = "Polygon";
  ordered_json rings = ordered_json::array();
  rings.push_back(closed_ring(poly.exterior));
  for (const auto& hole : poly.holes) rings.push_back(closed_ring(hole));
  g["coordinates"] = rings;
  return g;
}

ordered_json feature(ordered_json properties, ordered_json geometry) {
  ordered_json f;
  f["type"] = "Feature";
  f["properties"] = std::move(properties);
  f["geometry"] = std::move(geometry);
  return f;
}

fs::path write_collection(const fs::path& path, ordered_json features) {
  ordered_json fc;
  fc["type"] = "FeatureCollection";
  fc["features"] = std::move(features);
  atomic_write(path, fc.dump(2) + "\n");
  return path;
}

}  // namespace

fs::path export_edges_classified(const Network& network, const std::vector<EdgeClass>& classes,
                                 const fs::path& output_dir) {
  ordered_json features = ordered_json::array();
  for (const auto& ec : classes) {
    ordered_json props;
    props["edge_id"] = ec.edge_id;
    props["class"] = ec.label;
    props["length_km"] = round3(ec.length_km);
    props["deadend_too_long"] = ec.deadend_too_long;
    features.push_back(feature(std::move(props), line_geometry(edge_by_id(network, ec.edge_id).geometry)));
  }
  return write_collection(output_dir / "edges_classified.geojson", std::move(features));
}

fs::path export_loops_classified(const std::vector<Loop>& loops,
                                 const std::vector<LoopClass>& classes,
                                 const fs::path& output_dir) {
  ordered_json features = ordered_json::array();
  for (std::size_t i = 0; i < loops.size(); ++i) {
    ordered_json props;
    props["loop_id"] = loops[i].id;
    props["class"] = classes[i].label;
    props["perimeter_km"] = round3(classes[i].perimeter_km);
    props["component"] = loops[i].component;
    ordered_json g;
    g["type"] = "Polygon";
    g["coordinates"] = ordered_json::array({closed_ring(loops[i].boundary)});
    features.push_back(feature(std::move(props), std::move(g)));
  }
  return write_collection(output_dir / "loops_classified.geojson", std::move(features));
}

fs::path export_components(const Network& network, const ComponentLabels& labels,
                           const fs::path& output_dir) {
  ordered_json features = ordered_json::array();
  for (std::size_t e = 0; e < network.edges.size(); ++e) {
    ordered_json props;
    props["edge_id"] = network.edges[e].id;
    props["component_id"] = labels.edge_component[e];
    features.push_back(feature(std::move(props), line_geometry(network.edges[e].geometry)));
  }
  return write_collection(output_dir / "components.geojson", std::move(features));
}

fs::path export_slope_edges(const Network& network, const std::vector<SlopeProfile>& profiles,
                            const fs::path& output_dir) {
  ordered_json features = ordered_json::array();
  for (const auto& p : profiles) {
    ordered_json props;
    props["edge_id"] = p.edge_id;
    if (p.classified) {
      props["avg_slope_pct"] = round3(p.avg_slope_pct);
      props["max_slope_pct"] = round3(p.max_slope_pct);
    } else {
      props["avg_slope_pct"] = nullptr;
      props["max_slope_pct"] = nullptr;
    }
    props["class"] = p.label;
    features.push_back(feature(std::move(props), line_geometry(edge_by_id(network, p.edge_id).geometry)));
  }
  return write_collection(output_dir / "slope_edges.geojson", std::move(features));
}

fs::path export_access(const PointLayerBundle& bundle, const fs::path& output_dir) {
  ordered_json features = ordered_json::array();
  for (const auto& pa : bundle.access.points) {
    const Feature* f = feature_by_id(bundle.layer, pa.feature_id);
    if (f == nullptr || !f->point.has_value()) continue;
    ordered_json props;
    props["feature_id"] = pa.feature_id;
    if (!f->name.empty()) props["name"] = f->name;
    props["distance_m"] = round3(pa.distance_m);
    props["within_reach"] = pa.within_reach;
    features.push_back(feature(std::move(props), point_geometry(*f->point)));
  }
  return write_collection(output_dir / ("access_" + bundle.layer.name + ".geojson"),
                          std::move(features));
}

fs::path export_coverage(const Network& network, const PolygonLayerBundle& bundle,
                         const fs::path& output_dir) {
  ordered_json features = ordered_json::array();
  for (const auto& ec : bundle.coverage.edges) {
    ordered_json props;
    props["edge_id"] = ec.edge_id;
    props["covered_fraction"] = round3(ec.covered_fraction);
    props["through_layer"] = ec.through_layer;
    features.push_back(feature(std::move(props), line_geometry(edge_by_id(network, ec.edge_id).geometry)));
  }
  return write_collection(output_dir / ("coverage_" + bundle.layer.name + ".geojson"),
                          std::move(features));
}

fs::path export_network_nodes(const Network& network, const fs::path& output_dir) {
  ordered_json features = ordered_json::array();
  for (const auto& n : network.nodes) {
    ordered_json props;
    props["node_id"] = n.id;
    props["degree"] = n.degree;
    features.push_back(feature(std::move(props), point_geometry(n.location)));
  }
  return write_collection(output_dir / "network_nodes.geojson", std::move(features));
}

fs::path export_network_edges(const Network& network, const fs::path& output_dir) {
  ordered_json features = ordered_json::array();
  for (const auto& e : network.edges) {
    ordered_json props;
    props["edge_id"] = e.id;
    props["length_km"] = round3(e.length_m / 1000.0);
    features.push_back(feature(std::move(props), line_geometry(e.geometry)));
  }
  return write_collection(output_dir / "network_edges.geojson", std::move(features));
}

fs::path export_input_layer(const FeatureLayer& layer, const fs::path& output_dir) {
  ordered_json features = ordered_json::array();
  for (const auto& f : layer.features) {
    ordered_json props;
    props["feature_id"] = f.id;
    if (!f.name.empty()) props["name"] = f.name;
    if (layer.kind == LayerKind::point && f.point.has_value()) {
      features.push_back(feature(std::move(props), point_geometry(*f.point)));
    } else if (f.polygon.has_value()) {
      features.push_back(feature(std::move(props), polygon_geometry(*f.polygon)));
    }
  }
  const std::string prefix = layer.kind == LayerKind::point ? "input_point_" : "input_polygon_";
  return write_collection(output_dir / (prefix + layer.name + ".geojson"), std::move(features));
}

std::vector<fs::path> export_layers(const EvaluationResults& results, const fs::path& output_dir) {
  const fs::path dir = output_dir / "layers";
  std::vector<fs::path> written;
  written.push_back(export_edges_classified(*results.network, results.edge_classes, dir));
  written.push_back(export_loops_classified(results.loops, results.loop_classes, dir));
  written.push_back(export_components(*results.network, results.components, dir));
  if (results.has_slopes)
    written.push_back(export_slope_edges(*results.network, results.slopes, dir));
  for (const auto& bundle : results.point_layers) written.push_back(export_access(bundle, dir));
  for (const auto& bundle : results.polygon_layers)
    written.push_back(export_coverage(*results.network, bundle, dir));
  return written;
}

// ---------------------------------------------------------------------------
// SVG maps
// ---------------------------------------------------------------------------

const std::string& component_color(int component) {
  static const std::vector<std::string> palette = {
      "#1f78b4", "#33a02c", "#e31a1c", "#ff7f00", "#6a3d9a", "#b15928",
      "#a6cee3", "#b2df8a", "#fb9a99", "#fdbf6f", "#cab2d6", "#8dd3c7"};
  return palette[static_cast<std::size_t>(component) % palette.size()];
}

const ClassStyle& StyleSpec::for_label(const std::string& label) const {
  static const ClassStyle fallback{"#777777", 2.0, 4.0};
  const auto it = classes.find(label);
  return it == classes.end() ? fallback : it->second;
}

StyleSpec StyleSpec::defaults(const EvaluationConfig& config) {
  StyleSpec style;
  style.classes = {
      {"too_short", {"#000000", 2.0, 4.0}},
      {"ideal", {"#33a02c", 2.5, 4.0}},
      {"above_ideal", {"#e6b800", 2.5, 4.0}},
      {"too_long", {"#e31a1c", 2.5, 4.0}},
      {"deadend_too_long", {"#555555", 2.0, 4.0}},
      {"manageable", {"#cccccc", 2.5, 4.0}},
      {"noticeable", {"#fcae91", 2.5, 4.0}},
      {"steep", {"#fb6a4a", 2.5, 4.0}},
      {"very_steep", {"#a50f15", 2.5, 4.0}},
      {"unclassified", {"#888888", 1.5, 4.0}},
      {"within_reach", {"#33a02c", 1.0, 4.0}},
      {"outside_reach", {"#e31a1c", 1.0, 5.0}},
      {"covered", {"#33a02c", 2.5, 4.0}},
      {"uncovered", {"#bbbbbb", 1.5, 4.0}},
      {"network", {"#555555", 1.5, 4.0}},
      {"node", {"#000000", 1.0, 2.0}},
      {"density", {"#1f78b4", 0.5, 4.0}},
  };
  for (const auto& [label, color] : config.style_overrides) style.classes[label].color = color;
  return style;
}

namespace {

std::string effective_color(const MapScene& scene, const StyleSpec& style,
                            const std::string& label) {
  for (const auto& item : scene.items) {
    if (item.label != label) continue;
    if (!item.color_override.empty()) return item.color_override;
    break;
  }
  return style.for_label(label).color;
}

std::string path_data(const SvgItem& item, double min_x, double max_y, double scale,
                      double margin, bool close) {
  std::string d;
  char buf[80];
  for (const auto& ring : item.paths) {
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const double x = margin + (ring[i].x - min_x) * scale;
      const double y = margin + (max_y - ring[i].y) * scale;
      std::snprintf(buf, sizeof(buf), "%s%.2f %.2f", i == 0 ? (d.empty() ? "M " : " M ") : " L ",
                    x, y);
      d += buf;
    }
    if (close) d += " Z";
  }
  return d;
}

}  // namespace

fs::path render_svg(const MapScene& scene, const StyleSpec& style, const fs::path& output_path) {
  BoundingBox bb;
  for (const auto& item : scene.items)
    for (const auto& ring : item.paths)
      for (const auto& p : ring) bb.expand(p);
  if (bb.empty) {
    bb.expand(Point2{0.0, 0.0});
    bb.expand(Point2{1.0, 1.0});
  }
  const double w = bb.max_x - bb.min_x;
  const double h = bb.max_y - bb.min_y;
  const double span = std::max(w, h) > 0.0 ? std::max(w, h) : 1.0;
  const double scale = style.canvas_px / span;
  const double margin = style.margin_px;
  const double width = w * scale + 2.0 * margin;
  const double map_h = h * scale + 2.0 * margin;
  const double legend_h =
      scene.legend_order.empty() ? 0.0 : 12.0 + 18.0 * static_cast<double>(scene.legend_order.size());
  const double height = map_h + legend_h;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + fmt2(width) + " " +
         fmt2(height) + "\" width=\"" + fmt2(width) + "\" height=\"" + fmt2(height) +
         "\" font-family=\"sans-serif\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + fmt2(width) + "\" height=\"" + fmt2(height) +
         "\" fill=\"#ffffff\"/>\n";
  if (!scene.title.empty())
    svg += "<text x=\"" + fmt2(margin) + "\" y=\"24\" font-size=\"14\" fill=\"#222222\">" +
           scene.title + "</text>\n";

  for (const auto& item : scene.items) {
    const ClassStyle& cls = style.for_label(item.label);
    const std::string color = item.color_override.empty() ? cls.color : item.color_override;
    const std::string dash = item.dashed ? " stroke-dasharray=\"6 4\"" : "";
    switch (item.kind) {
      case SvgItem::Kind::polyline:
        svg += "<path d=\"" + path_data(item, bb.min_x, bb.max_y, scale, margin, false) +
               "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" +
               fmt2(cls.stroke_width) + "\"" + dash + "/>\n";
        break;
      case SvgItem::Kind::polygon:
        svg += "<path d=\"" + path_data(item, bb.min_x, bb.max_y, scale, margin, true) +
               "\" fill=\"" + color + "\" fill-opacity=\"" + fmt2(item.fill_opacity) +
               "\" fill-rule=\"evenodd\" stroke=\"" + color + "\" stroke-width=\"" +
               fmt2(cls.stroke_width) + "\"" + dash + "/>\n";
        break;
      case SvgItem::Kind::point: {
        const Point2& p = item.paths.at(0).at(0);
        svg += "<circle cx=\"" + fmt2(margin + (p.x - bb.min_x) * scale) + "\" cy=\"" +
               fmt2(margin + (bb.max_y - p.y) * scale) + "\" r=\"" + fmt2(cls.point_radius) +
               "\" fill=\"" + color + "\"/>\n";
        break;
      }
    }
  }

  for (std::size_t i = 0; i < scene.legend_order.size(); ++i) {
    const std::string& label = scene.legend_order[i];
    const double y = map_h + 6.0 + 18.0 * static_cast<double>(i);
    const auto count_it = scene.legend_counts.find(label);
    const int count = count_it == scene.legend_counts.end() ? 0 : count_it->second;
    svg += "<rect x=\"" + fmt2(margin) + "\" y=\"" + fmt2(y) +
           "\" width=\"14\" height=\"14\" fill=\"" + effective_color(scene, style, label) +
           "\"/>\n";
    svg += "<text x=\"" + fmt2(margin + 20.0) + "\" y=\"" + fmt2(y + 12.0) +
           "\" font-size=\"12\" fill=\"#222222\">" + label + " (" + std::to_string(count) +
           ")</text>\n";
  }
  svg += "</svg>\n";

  atomic_write(output_path, svg);
  return output_path;
}

// ---------------------------------------------------------------------------
// Scene builders
// ---------------------------------------------------------------------------

namespace {

SvgItem edge_item(const NetworkEdge& edge, const std::string& label) {
  SvgItem item;
  item.kind = SvgItem::Kind::polyline;
  item.paths = {edge.geometry.vertices};
  item.label = label;
  return item;
}

SvgItem point_item(const Point2& p, const std::string& label) {
  SvgItem item;
  item.kind = SvgItem::Kind::point;
  item.paths = {{p}};
  item.label = label;
  return item;
}

SvgItem polygon_item(const Polygon& poly, const std::string& label, double fill_opacity) {
  SvgItem item;
  item.kind = SvgItem::Kind::polygon;
  item.paths.push_back(poly.exterior);
  for (const auto& hole : poly.holes) item.paths.push_back(hole);
  item.label = label;
  item.fill_opacity = fill_opacity;
  return item;
}

void add_network_base(MapScene& scene, const Network& network) {
  for (const auto& e : network.edges) scene.items.push_back(edge_item(e, "network"));
}

// Legend rows in scheme order, zero-count classes dropped.
void legend_from_counts(MapScene& scene, const std::vector<std::string>& order) {
  for (const auto& label : order) {
    const auto it = scene.legend_counts.find(label);
    if (it != scene.legend_counts.end() && it->second > 0) scene.legend_order.push_back(label);
  }
}

}  // namespace

MapScene overview_scene(const Network& network, const std::vector<FeatureLayer>& point_layers,
                        const std::vector<FeatureLayer>& polygon_layers) {
  MapScene scene;
  scene.title = "network overview";
  for (std::size_t i = 0; i < polygon_layers.size(); ++i) {
    const std::string& color = component_color(static_cast<int>(6 + i));
    for (const auto& f : polygon_layers[i].features) {
      if (!f.polygon.has_value()) continue;
      SvgItem item = polygon_item(*f.polygon, polygon_layers[i].name, 0.15);
      item.color_override = color;
      scene.items.push_back(item);
      scene.legend_counts[polygon_layers[i].name] += 1;
    }
  }
  add_network_base(scene, network);
  scene.legend_counts["network"] = static_cast<int>(network.edges.size());
  for (const auto& n : network.nodes) scene.items.push_back(point_item(n.location, "node"));
  for (std::size_t i = 0; i < point_layers.size(); ++i) {
    const std::string& color = component_color(static_cast<int>(i));
    for (const auto& f : point_layers[i].features) {
      if (!f.point.has_value()) continue;
      SvgItem item = point_item(*f.point, point_layers[i].name);
      item.color_override = color;
      scene.items.push_back(item);
      scene.legend_counts[point_layers[i].name] += 1;
    }
  }
  scene.legend_order.push_back("network");
  for (const auto& layer : point_layers) scene.legend_order.push_back(layer.name);
  for (const auto& layer : polygon_layers) scene.legend_order.push_back(layer.name);
  return scene;
}

MapScene edges_scene(const Network& network, const std::vector<EdgeClass>& classes) {
  MapScene scene;
  scene.title = "edge length classes";
  int flagged = 0;
  for (const auto& ec : classes) {
    SvgItem item = edge_item(edge_by_id(network, ec.edge_id), ec.label);
    item.dashed = ec.deadend_too_long;
    scene.items.push_back(item);
    scene.legend_counts[ec.label] += 1;
    if (ec.deadend_too_long) ++flagged;
  }
  legend_from_counts(scene, ClassificationScheme::edge_km(EvaluationConfig{}).labels);
  if (flagged > 0) {
    scene.legend_counts["deadend_too_long"] = flagged;
    scene.legend_order.push_back("deadend_too_long");
  }
  return scene;
}

MapScene loops_scene(const Network& network, const std::vector<Loop>& loops,
                     const std::vector<LoopClass>& classes) {
  MapScene scene;
  scene.title = "loop classes";
  add_network_base(scene, network);
  for (std::size_t i = 0; i < loops.size(); ++i) {
    SvgItem item;
    item.kind = SvgItem::Kind::polygon;
    item.paths = {loops[i].boundary};
    item.label = classes[i].label;
    item.fill_opacity = 0.25;
    scene.items.push_back(item);
    scene.legend_counts[item.label] += 1;
  }
  legend_from_counts(scene, ClassificationScheme::loop_km(EvaluationConfig{}).labels);
  return scene;
}

MapScene components_scene(const Network& network, const ComponentLabels& labels) {
  MapScene scene;
  scene.title = "connected components";
  for (std::size_t e = 0; e < network.edges.size(); ++e) {
    const int c = labels.edge_component[e];
    SvgItem item = edge_item(network.edges[e], "component " + std::to_string(c));
    item.color_override = component_color(c);
    scene.items.push_back(item);
    scene.legend_counts[item.label] += 1;
  }
  for (int c = 0; c < labels.count; ++c)
    scene.legend_order.push_back("component " + std::to_string(c));
  return scene;
}

MapScene slope_scene(const Network& network, const std::vector<SlopeProfile>& profiles) {
  MapScene scene;
  scene.title = "average slope classes";
  for (const auto& p : profiles) {
    SvgItem item = edge_item(edge_by_id(network, p.edge_id), p.label);
    item.dashed = !p.classified;
    scene.items.push_back(item);
    scene.legend_counts[p.label] += 1;
  }
  auto order = ClassificationScheme::slope_pct(EvaluationConfig{}).labels;
  order.push_back("unclassified");
  legend_from_counts(scene, order);
  return scene;
}

MapScene access_scene(const Network& network, const PointLayerBundle& bundle) {
  MapScene scene;
  scene.title = "access: " + bundle.layer.name;
  // Density cells first so the network and points draw on top; opacity grows
  // with the cell count.
  const DensityGrid& grid = bundle.access.density;
  int max_count = 0;
  for (const int c : grid.counts) max_count = std::max(max_count, c);
  if (max_count > 0) {
    for (int row = 0; row < grid.rows; ++row) {
      for (int col = 0; col < grid.cols; ++col) {
        const int count = grid.at(col, row);
        if (count == 0) continue;
        const double x0 = grid.origin_x + col * grid.cell_m;
        const double y0 = grid.origin_y + row * grid.cell_m;
        Polygon cell;
        cell.exterior = {{x0, y0}, {x0 + grid.cell_m, y0}, {x0 + grid.cell_m, y0 + grid.cell_m},
                         {x0, y0 + grid.cell_m}};
        SvgItem item = polygon_item(cell, "density", 0.1 + 0.4 * count / max_count);
        scene.items.push_back(item);
      }
    }
  }
  add_network_base(scene, network);
  for (const auto& pa : bundle.access.points) {
    const Feature* f = feature_by_id(bundle.layer, pa.feature_id);
    if (f == nullptr || !f->point.has_value()) continue;
    scene.items.push_back(point_item(*f->point, pa.within_reach ? "within_reach" : "outside_reach"));
    scene.legend_counts[pa.within_reach ? "within_reach" : "outside_reach"] += 1;
  }
  legend_from_counts(scene, {"within_reach", "outside_reach"});
  return scene;
}

MapScene coverage_scene(const Network& network, const PolygonLayerBundle& bundle) {
  MapScene scene;
  scene.title = "coverage: " + bundle.layer.name;
  for (const auto& f : bundle.layer.features) {
    if (!f.polygon.has_value()) continue;
    SvgItem item = polygon_item(*f.polygon, bundle.layer.name, 0.15);
    item.color_override = "#cab2d6";
    scene.items.push_back(item);
    scene.legend_counts[bundle.layer.name] += 1;
  }
  for (const auto& ec : bundle.coverage.edges) {
    const std::string label = ec.through_layer ? "covered" : "uncovered";
    scene.items.push_back(edge_item(edge_by_id(network, ec.edge_id), label));
    scene.legend_counts[label] += 1;
  }
  scene.legend_order.push_back(bundle.layer.name);
  legend_from_counts(scene, {"covered", "uncovered"});
  return scene;
}

}  // namespace bnp
