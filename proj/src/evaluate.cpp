#include "bnp/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "bnp/common.hpp"

namespace bnp {

// ---------------------------------------------------------------------------
// Classification schemes
// ---------------------------------------------------------------------------

const std::string& ClassificationScheme::classify(double value) const {
  std::size_t k = 0;
  while (k < upper_bounds.size() && value >= upper_bounds[k]) ++k;
  return labels[k];
}

ClassificationScheme ClassificationScheme::edge_km(const EvaluationConfig& config) {
  return {{"too_short", "ideal", "above_ideal", "too_long"},
          {config.edge_too_short_km, config.edge_ideal_max_km, config.edge_max_km}};
}

ClassificationScheme ClassificationScheme::loop_km(const EvaluationConfig& config) {
  return {{"too_short", "ideal", "too_long"}, {config.loop_min_km, config.loop_max_km}};
}

ClassificationScheme ClassificationScheme::slope_pct(const EvaluationConfig& config) {
  return {{"manageable", "noticeable", "steep", "very_steep"},
          {config.slope_class_bounds_pct[0], config.slope_class_bounds_pct[1],
           config.slope_class_bounds_pct[2]}};
}

// ---------------------------------------------------------------------------
// Edge and loop classification
// ---------------------------------------------------------------------------

std::vector<EdgeClass> classify_edges(const Network& network, const Graph& graph,
                                      const ClassificationScheme& scheme,
                                      double deadend_max_km) {
  std::unordered_set<int> flagged;
  for (const DeadEndChain& chain : dead_end_chains(graph)) {
    if (chain.total_length_m / 1000.0 >= deadend_max_km) {
      flagged.insert(chain.edge_ids.begin(), chain.edge_ids.end());
    }
  }

  std::vector<EdgeClass> out(network.edges.size());
  for (std::size_t e = 0; e < network.edges.size(); ++e) {
    const NetworkEdge& edge = network.edges[e];
    out[e].edge_id = edge.id;
    out[e].length_km = edge.length_m / 1000.0;
    out[e].label = scheme.classify(out[e].length_km);
    out[e].deadend_too_long = flagged.count(edge.id) > 0;
  }
  return out;
}

std::vector<LoopClass> classify_loops(const std::vector<Loop>& loops,
                                      const ClassificationScheme& scheme) {
  std::vector<LoopClass> out(loops.size());
  for (std::size_t i = 0; i < loops.size(); ++i) {
    out[i].loop_id = loops[i].id;
    out[i].perimeter_km = loops[i].perimeter_m / 1000.0;
    out[i].label = scheme.classify(out[i].perimeter_km);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Point access
// ---------------------------------------------------------------------------

namespace {

// Exact min distance via expanding-radius candidate queries. Start at the
// distance to the network bounding box (a lower bound on the answer); fall
// back to a full scan once the radius would dwarf the network extent.
double exact_min_distance(const Point2& p, const Network& network, const GridIndex& index,
                          double start_radius) {
  const BoundingBox box = network.bounds();
  const double diagonal = std::hypot(box.max_x - box.min_x, box.max_y - box.min_y);
  const double bail_radius = point_box_distance(p, box) + diagonal + index.cell_size();

  auto full_scan = [&] {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& e : network.edges) {
      best = std::min(best, point_polyline_distance(p, e.geometry));
    }
    return best;
  };

  double radius = std::max(start_radius, point_box_distance(p, box));
  for (;;) {
    if (radius >= bail_radius) return full_scan();
    const auto candidates = query_candidates(index, p, radius);
    if (candidates.empty()) {
      radius *= 2.0;
      continue;
    }
    // SegmentRef carries the edge id; ids need not be dense positions.
    double best = std::numeric_limits<double>::infinity();
    for (const auto& ref : candidates) {
      auto it = std::lower_bound(network.edges.begin(), network.edges.end(), ref.edge_id,
                                 [](const NetworkEdge& e, int id) { return e.id < id; });
      const auto& v = it->geometry.vertices;
      best = std::min(best,
                      point_segment_distance(p, v[ref.segment], v[ref.segment + 1]));
    }
    if (best <= radius) return best;
    radius = best;
  }
}

}  // namespace

PointAccessResult evaluate_point_layer(const Network& network, const GridIndex& index,
                                       const FeatureLayer& layer, double density_cell_m) {
  PointAccessResult result;
  result.layer_name = layer.name;
  result.buffer_m = layer.buffer_m;
  result.points.resize(layer.features.size());

  const double start_radius = std::max(layer.buffer_m, index.cell_size());
  parallel_for(layer.features.size(), [&](std::size_t i) {
    const Feature& f = layer.features[i];
    PointAccess& pa = result.points[i];
    pa.feature_id = f.id;
    pa.distance_m = exact_min_distance(*f.point, network, index, start_radius);
    pa.within_reach = pa.distance_m <= layer.buffer_m;
  });

  for (const auto& pa : result.points) {
    (pa.within_reach ? result.within_count : result.outside_count) += 1;
  }

  // Density grid over the layer's own bounding box.
  if (!layer.features.empty()) {
    BoundingBox box;
    for (const auto& f : layer.features) box.expand(*f.point);
    DensityGrid& grid = result.density;
    grid.cell_m = density_cell_m;
    grid.origin_x = box.min_x;
    grid.origin_y = box.min_y;
    grid.cols = std::max(1, static_cast<int>(std::ceil((box.max_x - box.min_x) / density_cell_m)));
    grid.rows = std::max(1, static_cast<int>(std::ceil((box.max_y - box.min_y) / density_cell_m)));
    grid.counts.assign(static_cast<std::size_t>(grid.cols) * grid.rows, 0);
    for (const auto& f : layer.features) {
      const int col = std::min(grid.cols - 1,
                               static_cast<int>((f.point->x - grid.origin_x) / density_cell_m));
      const int row = std::min(grid.rows - 1,
                               static_cast<int>((f.point->y - grid.origin_y) / density_cell_m));
      grid.counts[static_cast<std::size_t>(row) * grid.cols + col] += 1;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Polygon coverage
// ---------------------------------------------------------------------------

namespace {

// Chainages 0, s, 2s, ..., plus the end when it is not already a multiple.
std::vector<double> sample_chainages(double length, double interval) {
  std::vector<double> out;
  const int n = static_cast<int>(std::floor(length / interval + 1e-9));
  out.reserve(n + 2);
  for (int k = 0; k <= n; ++k) out.push_back(k * interval);
  if (length - out.back() > 1e-9) out.push_back(length);
  return out;
}

}  // namespace

PolygonCoverageResult evaluate_polygon_layer(const Network& network, const FeatureLayer& layer,
                                             double sample_interval_m) {
  PolygonCoverageResult result;
  result.layer_name = layer.name;
  result.buffer_m = layer.buffer_m;
  result.edges.resize(network.edges.size());

  // Per-polygon bounding boxes, pre-expanded by the buffer.
  std::vector<BoundingBox> boxes;
  boxes.reserve(layer.features.size());
  for (const auto& f : layer.features) boxes.push_back(polygon_bounds(*f.polygon));

  parallel_for(network.edges.size(), [&](std::size_t e) {
    const NetworkEdge& edge = network.edges[e];
    const auto chainages = sample_chainages(edge.length_m, sample_interval_m);
    int covered = 0;
    for (double c : chainages) {
      const Point2 p = point_at_chainage(edge.geometry, c);
      bool hit = false;
      for (std::size_t f = 0; f < layer.features.size() && !hit; ++f) {
        if (point_box_distance(p, boxes[f]) > layer.buffer_m) continue;
        hit = point_polygon_distance(p, *layer.features[f].polygon) <= layer.buffer_m;
      }
      covered += hit ? 1 : 0;
    }
    EdgeCoverage& ec = result.edges[e];
    ec.edge_id = edge.id;
    ec.covered_fraction = static_cast<double>(covered) / chainages.size();
    ec.through_layer = ec.covered_fraction > 0.0;
  });

  for (std::size_t e = 0; e < network.edges.size(); ++e) {
    const double inside = result.edges[e].covered_fraction * network.edges[e].length_m;
    result.length_inside_m += inside;
    result.length_outside_m += network.edges[e].length_m - inside;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Elevation and slopes
// ---------------------------------------------------------------------------

std::optional<double> sample_elevation(const ElevationGrid& grid, const Point2& p) {
  // Fractional column/row in cell-center space.
  const double fc = (p.x - grid.xllcorner) / grid.cellsize - 0.5;
  const double fr = (grid.yllcorner + grid.nrows * grid.cellsize - p.y) / grid.cellsize - 0.5;
  if (fc < 0.0 || fr < 0.0 || fc > grid.ncols - 1 || fr > grid.nrows - 1) return std::nullopt;

  const int c0 = std::min(static_cast<int>(fc), grid.ncols - 2);
  const int r0 = std::min(static_cast<int>(fr), grid.nrows - 2);
  const double tx = fc - c0;
  const double ty = fr - r0;

  const double w[4] = {(1 - tx) * (1 - ty), tx * (1 - ty), (1 - tx) * ty, tx * ty};
  const int cols[4] = {c0, c0 + 1, c0, c0 + 1};
  const int rows[4] = {r0, r0, r0 + 1, r0 + 1};
  double z = 0.0;
  for (int k = 0; k < 4; ++k) {
    if (w[k] == 0.0) continue;  // zero-weight neighbors never contribute
    if (grid.is_nodata(cols[k], rows[k])) return std::nullopt;
    z += w[k] * grid.value_at(cols[k], rows[k]);
  }
  return z;
}

std::vector<SlopeProfile> evaluate_slopes(const Network& network, const ElevationGrid& grid,
                                          const EvaluationConfig& config) {
  const ClassificationScheme scheme = ClassificationScheme::slope_pct(config);
  std::vector<SlopeProfile> profiles(network.edges.size());

  parallel_for(network.edges.size(), [&](std::size_t e) {
    const NetworkEdge& edge = network.edges[e];
    SlopeProfile& profile = profiles[e];
    profile.edge_id = edge.id;
    profile.chainages_m = sample_chainages(edge.length_m, config.slope_sample_interval_m);
    profile.elevations_m.reserve(profile.chainages_m.size());

    int valid = 0;
    for (double c : profile.chainages_m) {
      auto z = sample_elevation(grid, point_at_chainage(edge.geometry, c));
      valid += z.has_value() ? 1 : 0;
      profile.elevations_m.push_back(z);
    }
    profile.valid_fraction = static_cast<double>(valid) / profile.chainages_m.size();

    double weighted = 0.0, weight = 0.0, peak = 0.0;
    for (std::size_t i = 1; i < profile.chainages_m.size(); ++i) {
      const auto& z0 = profile.elevations_m[i - 1];
      const auto& z1 = profile.elevations_m[i];
      if (!z0 || !z1) continue;
      const double run = profile.chainages_m[i] - profile.chainages_m[i - 1];
      const double slope = std::abs(*z1 - *z0) / run * 100.0;
      weighted += slope * run;
      weight += run;
      peak = std::max(peak, slope);
    }
    if (profile.valid_fraction >= 0.5 && weight > 0.0) {
      profile.avg_slope_pct = weighted / weight;
      profile.max_slope_pct = peak;
      profile.classified = true;
      profile.label = scheme.classify(profile.avg_slope_pct);
    } else {
      profile.label = "unclassified";
    }
  });
  return profiles;
}

}  // namespace bnp
