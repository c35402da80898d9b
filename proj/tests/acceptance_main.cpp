// Acceptance suite: one check per shipped guarantee, printed as a single
// [PASS]/[FAIL] line with its runtime. Exit status is the number of failed
// checks. Each check carries its own runtime budget; exceeding it fails the
// check even when every assertion held.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bnp/cli.hpp"
#include "bnp/common.hpp"
#include "bnp/evaluate.hpp"
#include "bnp/geometry.hpp"
#include "bnp/ingest.hpp"
#include "bnp/netgraph.hpp"
#include "testutil.hpp"

#ifndef BNP_FIXTURE_DIR
#error "BNP_FIXTURE_DIR must point at the mini-region fixture"
#endif
#ifndef BNP_GOLDEN_DIR
#error "BNP_GOLDEN_DIR must point at the committed golden outputs"
#endif

namespace {

using namespace bnp;
using namespace testutil;
namespace fs = std::filesystem;

struct CheckFailure {
  std::string message;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw CheckFailure{message};
}

void require_eq_d(double got, double want, double tol, const std::string& what) {
  if (!(std::abs(got - want) <= tol)) {
    std::ostringstream ss;
    ss.precision(17);
    ss << what << ": got " << got << ", want " << want << " (tol " << tol << ")";
    throw CheckFailure{ss.str()};
  }
}

std::string fmt_d(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

// ---------------------------------------------------------------------------
// 1. Threshold defaults from an empty config file.
// ---------------------------------------------------------------------------

void check_threshold_defaults() {
  TempDir tmp("accept_defaults");
  const fs::path cfg_path = tmp.path() / "empty.ini";
  write_file(cfg_path, "");

  const EvaluationConfig cfg = load_config(cfg_path);
  require(cfg.edge_too_short_km == 1.0, "edge lower bound != 1 km");
  require(cfg.edge_ideal_max_km == 5.0, "edge ideal upper bound != 5 km");
  require(cfg.edge_max_km == 10.0, "edge maximum != 10 km");
  require(cfg.deadend_max_km == 3.0, "dead-end maximum != 3 km");
  require(cfg.loop_min_km == 8.0, "loop minimum != 8 km");
  require(cfg.loop_max_km == 20.0, "loop maximum != 20 km");
  require(cfg.slope_class_bounds_pct[0] == 2.0, "slope bound 0 != 2 %");
  require(cfg.slope_class_bounds_pct[1] == 4.0, "slope bound 1 != 4 %");
  require(cfg.slope_class_bounds_pct[2] == 6.0, "slope bound 2 != 6 %");
  require(default_point_buffer_m("facilities") == 100.0, "facilities buffer != 100 m");
  require(default_point_buffer_m("services") == 750.0, "services buffer != 750 m");
  require(default_point_buffer_m("pois") == 1500.0, "pois buffer != 1500 m");

  const auto edges = ClassificationScheme::edge_km(cfg);
  require(edges.upper_bounds == std::vector<double>({1.0, 5.0, 10.0}),
          "edge scheme bounds != {1, 5, 10}");
  const auto loops = ClassificationScheme::loop_km(cfg);
  require(loops.upper_bounds == std::vector<double>({8.0, 20.0}),
          "loop scheme bounds != {8, 20}");
  const auto slope = ClassificationScheme::slope_pct(cfg);
  require(slope.upper_bounds == std::vector<double>({2.0, 4.0, 6.0}),
          "slope scheme bounds != {2, 4, 6}");
}

// ---------------------------------------------------------------------------
// 2. Euler relation and face partition on synthetic planar fixtures.
// ---------------------------------------------------------------------------

Network grid_network(int cols, int rows, double spacing, double removed_bitmask_seed = -1.0) {
  std::vector<Point2> nodes;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) nodes.push_back({c * spacing, r * spacing});
  }
  std::vector<EdgeSpec> edges;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c + 1 < cols; ++c) edges.push_back({r * cols + c, r * cols + c + 1, {}});
  }
  for (int r = 0; r + 1 < rows; ++r) {
    for (int c = 0; c < cols; ++c) edges.push_back({r * cols + c, (r + 1) * cols + c, {}});
  }
  if (removed_bitmask_seed >= 0.0) {
    // Deterministic thinning; grid edges never cross, so the residue stays
    // planar no matter which subset survives.
    std::mt19937 rng(static_cast<unsigned>(removed_bitmask_seed));
    std::vector<EdgeSpec> kept;
    for (const EdgeSpec& e : edges) {
      if (rng() % 4 != 0) kept.push_back(e);
    }
    edges = kept;
  }
  return make_network(nodes, edges);
}

std::vector<Network> euler_fixtures() {
  std::vector<Network> nets;
  nets.push_back(grid_network(2, 2, 100.0));
  nets.push_back(grid_network(3, 3, 100.0));
  nets.push_back(grid_network(4, 2, 250.0));
  nets.push_back(grid_network(5, 5, 80.0));

  {  // Triangle fan: hub plus hexagon rim, six triangular faces.
    std::vector<Point2> nodes{{0.0, 0.0}};
    std::vector<EdgeSpec> edges;
    for (int k = 0; k < 6; ++k) {
      const double a = k * 3.14159265358979323846 / 3.0;
      nodes.push_back({100.0 * std::cos(a), 100.0 * std::sin(a)});
      edges.push_back({0, k + 1, {}});
    }
    for (int k = 0; k < 6; ++k) edges.push_back({k + 1, (k + 1) % 6 + 1, {}});
    nets.push_back(make_network(nodes, edges));
  }
  {  // Theta multigraph: two nodes, three parallel edges with distinct arcs.
    std::vector<Point2> nodes{{0.0, 0.0}, {400.0, 0.0}};
    nets.push_back(make_network(nodes, {{0, 1, {}},
                                        {0, 1, {{200.0, 150.0}}},
                                        {0, 1, {{200.0, -150.0}}}}));
  }
  {  // Stadium 2-gon: one pair of parallel edges bounding a single loop.
    std::vector<Point2> nodes{{0.0, 0.0}, {300.0, 0.0}};
    nets.push_back(make_network(nodes, {{0, 1, {{150.0, 100.0}}},
                                        {0, 1, {{150.0, -100.0}}}}));
  }
  {  // Two squares joined by a bridge; the bridge lies on no loop.
    std::vector<Point2> nodes{{0.0, 0.0},    {100.0, 0.0},  {100.0, 100.0}, {0.0, 100.0},
                              {300.0, 0.0},  {400.0, 0.0},  {400.0, 100.0}, {300.0, 100.0}};
    nets.push_back(make_network(nodes, {{0, 1, {}},
                                        {1, 2, {}},
                                        {2, 3, {}},
                                        {3, 0, {}},
                                        {4, 5, {}},
                                        {5, 6, {}},
                                        {6, 7, {}},
                                        {7, 4, {}},
                                        {1, 4, {}}}));
  }
  {  // Square with two spurs hanging off opposite corners.
    std::vector<Point2> nodes{{0.0, 0.0},     {200.0, 0.0}, {200.0, 200.0},
                              {0.0, 200.0},   {-150.0, -150.0}, {350.0, 350.0}};
    nets.push_back(make_network(nodes, {{0, 1, {}},
                                        {1, 2, {}},
                                        {2, 3, {}},
                                        {3, 0, {}},
                                        {0, 4, {}},
                                        {2, 5, {}}}));
  }
  {  // H-shaped tree: no loops at all.
    std::vector<Point2> nodes{{0.0, 0.0},   {0.0, 100.0},  {0.0, 200.0},
                              {80.0, 0.0},  {80.0, 100.0}, {80.0, 200.0}};
    nets.push_back(make_network(nodes, {{0, 1, {}}, {1, 2, {}}, {3, 4, {}}, {4, 5, {}}, {1, 4, {}}}));
  }
  {  // Square plus diagonal: two triangular faces.
    std::vector<Point2> nodes{{0.0, 0.0}, {150.0, 0.0}, {150.0, 150.0}, {0.0, 150.0}};
    nets.push_back(make_network(nodes, {{0, 1, {}}, {1, 2, {}}, {2, 3, {}}, {3, 0, {}}, {0, 2, {}}}));
  }
  nets.push_back(grid_network(6, 4, 120.0, 7.0));
  nets.push_back(grid_network(6, 4, 120.0, 23.0));
  {  // Disconnected mix: square, triangle, and a bare path in one network.
    std::vector<Point2> nodes{{0.0, 0.0},    {100.0, 0.0},   {100.0, 100.0}, {0.0, 100.0},
                              {500.0, 0.0},  {700.0, 0.0},   {600.0, 160.0},
                              {1000.0, 0.0}, {1100.0, 50.0}, {1200.0, 0.0}};
    nets.push_back(make_network(nodes, {{0, 1, {}},
                                        {1, 2, {}},
                                        {2, 3, {}},
                                        {3, 0, {}},
                                        {4, 5, {}},
                                        {5, 6, {}},
                                        {6, 4, {}},
                                        {7, 8, {}},
                                        {8, 9, {}}}));
  }
  return nets;
}

void check_euler_faces() {
  const std::vector<Network> nets = euler_fixtures();
  require(nets.size() >= 10, "fewer than 10 fixtures");
  for (std::size_t i = 0; i < nets.size(); ++i) {
    const Network& net = nets[i];
    const std::string tag = "fixture " + std::to_string(i);
    const Graph g = build_graph(net);
    const ComponentLabels comps = connected_components(g);
    const std::vector<Face> faces = enumerate_faces(g);
    const std::vector<Loop> loops = enumerate_loops(g);

    // Every half-edge in exactly one face.
    std::vector<int> seen(2 * net.edges.size(), 0);
    for (const Face& f : faces) {
      for (int h : f.half_edges) {
        require(h >= 0 && h < static_cast<int>(seen.size()), tag + ": half-edge out of range");
        seen[h] += 1;
      }
    }
    for (std::size_t h = 0; h < seen.size(); ++h) {
      require(seen[h] == 1, tag + ": half-edge " + std::to_string(h) + " in " +
                                std::to_string(seen[h]) + " faces");
    }

    // Signed areas cancel per component.
    std::vector<double> area_sum(comps.count, 0.0);
    std::vector<double> area_scale(comps.count, 0.0);
    for (const Face& f : faces) {
      area_sum[f.component] += f.signed_area_m2;
      area_scale[f.component] += std::abs(f.signed_area_m2);
    }
    for (int c = 0; c < comps.count; ++c) {
      const double tol = area_scale[c] > 0.0 ? 1e-6 * area_scale[c] : 1e-9;
      require(std::abs(area_sum[c]) <= tol,
              tag + ": component " + std::to_string(c) + " area sum " + fmt_d(area_sum[c]) +
                  " exceeds " + fmt_d(tol));
    }

    // Loop count per component equals E - V + 1.
    std::vector<int> e_count(comps.count, 0), v_count(comps.count, 0), l_count(comps.count, 0);
    for (int c : comps.edge_component) e_count[c] += 1;
    for (int c : comps.node_component) v_count[c] += 1;
    for (const Loop& l : loops) l_count[l.component] += 1;
    for (int c = 0; c < comps.count; ++c) {
      const int expect = e_count[c] - v_count[c] + 1;
      require(l_count[c] == expect, tag + ": component " + std::to_string(c) + " has " +
                                        std::to_string(l_count[c]) + " loops, expected " +
                                        std::to_string(expect));
    }
  }
}

// ---------------------------------------------------------------------------
// 3. Indexed point-to-network distances against a brute-force scan.
// ---------------------------------------------------------------------------

void check_distance_oracle() {
  std::mt19937 rng(20260822);
  std::uniform_int_distribution<int> node_count(4, 12);
  std::uniform_int_distribution<int> edge_count(6, 20);
  std::uniform_int_distribution<int> via_count(0, 3);
  std::uniform_real_distribution<double> buffer_pick(50.0, 500.0);
  const double cell_sizes[] = {60.0, 130.0, 400.0, 1200.0};

  int instances = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = node_count(rng);
    std::vector<Point2> nodes;
    for (int i = 0; i < n; ++i) nodes.push_back(random_point(rng, 0.0, 1000.0));
    std::vector<EdgeSpec> specs;
    const int m = edge_count(rng);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int e = 0; e < m; ++e) {
      int a = pick(rng);
      int b = pick(rng);
      if (a == b) b = (b + 1) % n;
      EdgeSpec spec{a, b, {}};
      const int vias = via_count(rng);
      for (int v = 0; v < vias; ++v) spec.via.push_back(random_point(rng, -100.0, 1100.0));
      specs.push_back(std::move(spec));
    }
    const Network net = make_network(nodes, specs);

    std::vector<std::pair<int, const Polyline*>> refs;
    for (const NetworkEdge& e : net.edges) refs.push_back({e.id, &e.geometry});
    const GridIndex index = build_index(refs, cell_sizes[trial % 4]);

    FeatureLayer layer;
    layer.name = "probe";
    layer.kind = LayerKind::point;
    layer.buffer_m = buffer_pick(rng);
    for (int p = 0; p < 20; ++p) {
      Feature f;
      f.id = p;
      f.point = random_point(rng, -200.0, 1200.0);
      layer.features.push_back(std::move(f));
    }

    const PointAccessResult result = evaluate_point_layer(net, index, layer, 1000.0);
    require(result.points.size() == layer.features.size(), "missing access rows");
    for (const PointAccess& pa : result.points) {
      const Point2 p = *layer.features[pa.feature_id].point;
      double brute = std::numeric_limits<double>::infinity();
      for (const NetworkEdge& e : net.edges) {
        brute = std::min(brute, point_polyline_distance(p, e.geometry));
      }
      const bool brute_within = brute <= layer.buffer_m;
      require(pa.within_reach == brute_within,
              "trial " + std::to_string(trial) + " point " + std::to_string(pa.feature_id) +
                  ": partition mismatch (indexed " + fmt_d(pa.distance_m) + ", brute " +
                  fmt_d(brute) + ", buffer " + fmt_d(layer.buffer_m) + ")");
      require_eq_d(pa.distance_m, brute, 1e-9 * std::max(1.0, brute),
                   "trial " + std::to_string(trial) + " point " + std::to_string(pa.feature_id) +
                       " distance");
      instances += 1;
    }
  }
  require(instances == 1000, "expected 1000 instances, ran " + std::to_string(instances));
}

// ---------------------------------------------------------------------------
// 4. Half-open boundaries of every classification scheme.
// ---------------------------------------------------------------------------

void check_boundary_table() {
  const EvaluationConfig cfg;
  struct Probe {
    const char* scheme;
    double value;
    const char* expect;
  };
  const double below_1 = std::nextafter(1.0, 0.0);
  const double below_2 = std::nextafter(2.0, 0.0);
  const double below_4 = std::nextafter(4.0, 0.0);
  const double below_5 = std::nextafter(5.0, 0.0);
  const double below_6 = std::nextafter(6.0, 0.0);
  const double below_8 = std::nextafter(8.0, 0.0);
  const double below_10 = std::nextafter(10.0, 0.0);
  const double below_20 = std::nextafter(20.0, 0.0);
  const Probe probes[] = {
      {"edge", 0.0, "too_short"},       {"edge", below_1, "too_short"},
      {"edge", 1.0, "ideal"},           {"edge", below_5, "ideal"},
      {"edge", 5.0, "above_ideal"},     {"edge", below_10, "above_ideal"},
      {"edge", 10.0, "too_long"},       {"edge", 1e9, "too_long"},
      {"loop", 0.0, "too_short"},       {"loop", below_8, "too_short"},
      {"loop", 8.0, "ideal"},           {"loop", below_20, "ideal"},
      {"loop", 20.0, "too_long"},       {"loop", 1e9, "too_long"},
      {"slope", 0.0, "manageable"},     {"slope", below_2, "manageable"},
      {"slope", 2.0, "noticeable"},     {"slope", below_4, "noticeable"},
      {"slope", 4.0, "steep"},          {"slope", below_6, "steep"},
      {"slope", 6.0, "very_steep"},     {"slope", 1e9, "very_steep"},
  };
  const std::map<std::string, ClassificationScheme> schemes = {
      {"edge", ClassificationScheme::edge_km(cfg)},
      {"loop", ClassificationScheme::loop_km(cfg)},
      {"slope", ClassificationScheme::slope_pct(cfg)},
  };
  for (const Probe& probe : probes) {
    const std::string& got = schemes.at(probe.scheme).classify(probe.value);
    require(got == probe.expect, std::string(probe.scheme) + " " + fmt_d(probe.value) + " -> " +
                                     got + ", expected " + probe.expect);
  }
}

// ---------------------------------------------------------------------------
// 5. Slope sampling against analytic ramps and a sinusoidal surface.
// ---------------------------------------------------------------------------

std::string asc_grid(int ncols, int nrows, double xll, double yll, double cellsize,
                     const std::function<double(double, double)>& z) {
  std::ostringstream ss;
  ss << "ncols " << ncols << "\n"
     << "nrows " << nrows << "\n"
     << "xllcorner " << xll << "\n"
     << "yllcorner " << yll << "\n"
     << "cellsize " << cellsize << "\n"
     << "NODATA_value -9999\n";
  ss.precision(12);
  for (int row = 0; row < nrows; ++row) {
    const double cy = yll + (nrows - row - 0.5) * cellsize;
    for (int col = 0; col < ncols; ++col) {
      const double cx = xll + (col + 0.5) * cellsize;
      ss << (col ? " " : "") << z(cx, cy);
    }
    ss << "\n";
  }
  return ss.str();
}

void check_slope_oracle() {
  TempDir tmp("accept_slope");

  // Linear ramp: bilinear interpolation reproduces it exactly, so every
  // sampled pair sees the same 6 % gradient.
  const fs::path ramp_path = tmp.path() / "ramp.asc";
  write_file(ramp_path, asc_grid(30, 8, -200.0, -200.0, 50.0,
                                 [](double x, double) { return 0.06 * x; }));
  const ElevationGrid ramp = load_elevation_grid(ramp_path);
  const Network ramp_net = make_network({{0.0, 0.0}, {1000.0, 0.0}}, {{0, 1, {}}});
  EvaluationConfig cfg;
  const std::vector<SlopeProfile> ramp_profiles = evaluate_slopes(ramp_net, ramp, cfg);
  require(ramp_profiles.size() == 1, "expected one ramp profile");
  require(ramp_profiles[0].classified, "ramp profile unclassified");
  require_eq_d(ramp_profiles[0].avg_slope_pct, 6.0, 1e-9, "ramp average slope");
  require_eq_d(ramp_profiles[0].max_slope_pct, 6.0, 1e-9, "ramp maximum slope");
  require(ramp_profiles[0].label == "very_steep", "6 % ramp must classify very_steep");

  // Smooth sinusoidal terrain: a 100 m sampling stride and a 10 m stride
  // must agree on the average slope within 5 % relative.
  const fs::path wave_path = tmp.path() / "wave.asc";
  write_file(wave_path, asc_grid(140, 50, -200.0, -200.0, 20.0, [](double x, double y) {
               return 25.0 * std::sin(x / 300.0) + 10.0 * std::cos(y / 220.0);
             }));
  const ElevationGrid wave = load_elevation_grid(wave_path);
  const Network wave_net = make_network({{0.0, 0.0}, {2000.0, 300.0}}, {{0, 1, {}}});
  EvaluationConfig coarse_cfg;
  coarse_cfg.slope_sample_interval_m = 100.0;
  EvaluationConfig fine_cfg;
  fine_cfg.slope_sample_interval_m = 10.0;
  const auto coarse = evaluate_slopes(wave_net, wave, coarse_cfg);
  const auto fine = evaluate_slopes(wave_net, wave, fine_cfg);
  require(coarse.size() == 1 && fine.size() == 1, "expected one wave profile");
  require(coarse[0].classified && fine[0].classified, "wave profile unclassified");
  require(fine[0].avg_slope_pct > 0.0, "fine average slope is zero");
  const double rel =
      std::abs(coarse[0].avg_slope_pct - fine[0].avg_slope_pct) / fine[0].avg_slope_pct;
  require(rel <= 0.05, "coarse/fine average slopes differ by " + fmt_d(100.0 * rel) +
                           " % (coarse " + fmt_d(coarse[0].avg_slope_pct) + ", fine " +
                           fmt_d(fine[0].avg_slope_pct) + ")");
}

// ---------------------------------------------------------------------------
// 6. Polygon coverage converges to the analytic covered fraction.
// ---------------------------------------------------------------------------

void check_coverage_convergence() {
  // Edge (0,0)->(1000,0) leaves the rectangle at chainage 350, so the true
  // covered fraction is 0.35 with a zero buffer.
  const Network net = make_network({{0.0, 0.0}, {1000.0, 0.0}}, {{0, 1, {}}});
  FeatureLayer layer;
  layer.name = "rect";
  layer.kind = LayerKind::polygon;
  layer.buffer_m = 0.0;
  Feature f;
  f.id = 0;
  Polygon rect;
  rect.exterior = {{-200.0, -100.0}, {350.0, -100.0}, {350.0, 100.0}, {-200.0, 100.0}};
  f.polygon = rect;
  layer.features.push_back(std::move(f));

  const double analytic = 0.35;
  double prev_err = 1.0;
  for (const double spacing : {100.0, 50.0, 25.0, 12.5, 6.25}) {
    const PolygonCoverageResult result = evaluate_polygon_layer(net, layer, spacing);
    require(result.edges.size() == 1, "expected one coverage row");
    const double frac = result.edges[0].covered_fraction;
    const double err = std::abs(frac - analytic);
    const double one_spacing = spacing / 1000.0;
    require(err <= one_spacing + 1e-12,
            "spacing " + fmt_d(spacing) + ": fraction " + fmt_d(frac) + " misses " +
                fmt_d(analytic) + " by " + fmt_d(err) + " (> one sample spacing " +
                fmt_d(one_spacing) + ")");
    require(result.edges[0].through_layer, "edge must count as through the layer");
    prev_err = err;
  }
  require(prev_err <= 6.25 / 1000.0 + 1e-12, "finest spacing did not converge");
}

// ---------------------------------------------------------------------------
// 7. End-to-end golden run over the committed mini-region fixture.
// ---------------------------------------------------------------------------

std::map<std::string, std::string> tree_bytes(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    out[fs::relative(entry.path(), root).generic_string()] = read_file(entry.path());
  }
  return out;
}

void check_golden_run() {
  TempDir tmp("accept_golden");
  const fs::path out_dir = tmp.path() / "out";
  std::ostringstream cli_out, cli_err;
  const int rc = run_cli({"all", "--config", std::string(BNP_FIXTURE_DIR) + "/config.ini",
                          "--out", out_dir.string(), "--quiet"},
                         cli_out, cli_err);
  require(rc == 0, "`all` exited " + std::to_string(rc) + ": " + cli_err.str());

  const auto got = tree_bytes(out_dir);
  const auto want = tree_bytes(fs::path(BNP_GOLDEN_DIR));
  require(!want.empty(), "golden tree is empty");
  for (const auto& [rel, bytes] : want) {
    const auto it = got.find(rel);
    require(it != got.end(), "missing output file " + rel);
    require(it->second == bytes, "output differs from golden: " + rel);
  }
  for (const auto& [rel, bytes] : got) {
    require(want.count(rel) == 1, "unexpected output file " + rel);
  }
}

// ---------------------------------------------------------------------------
// 8. Scaling geometry and thresholds by 10x changes no label.
// ---------------------------------------------------------------------------

struct LabelSnapshot {
  std::vector<std::string> edge_labels;
  std::vector<char> deadend_flags;
  std::vector<std::string> loop_labels;
  std::vector<int> edge_components;
  std::vector<int> node_components;
  std::map<std::string, std::vector<char>> within_flags;
  std::map<std::string, std::vector<char>> through_flags;
  std::vector<std::string> slope_labels;
};

LabelSnapshot snapshot(const Network& net, const std::vector<FeatureLayer>& point_layers,
                       const std::vector<FeatureLayer>& polygon_layers, const ElevationGrid& grid,
                       const EvaluationConfig& cfg) {
  LabelSnapshot snap;
  const Graph g = build_graph(net);
  const ComponentLabels comps = connected_components(g);
  snap.edge_components = comps.edge_component;
  snap.node_components = comps.node_component;

  const auto edge_classes =
      classify_edges(net, g, ClassificationScheme::edge_km(cfg), cfg.deadend_max_km);
  for (const EdgeClass& ec : edge_classes) {
    snap.edge_labels.push_back(ec.label);
    snap.deadend_flags.push_back(ec.deadend_too_long ? 1 : 0);
  }
  const auto loops = enumerate_loops(g);
  for (const LoopClass& lc : classify_loops(loops, ClassificationScheme::loop_km(cfg))) {
    snap.loop_labels.push_back(lc.label);
  }

  double cell = 100.0;
  for (const FeatureLayer& l : point_layers) cell = std::max(cell, l.buffer_m);
  std::vector<std::pair<int, const Polyline*>> refs;
  for (const NetworkEdge& e : net.edges) refs.push_back({e.id, &e.geometry});
  const GridIndex index = build_index(refs, cell);
  for (const FeatureLayer& layer : point_layers) {
    const PointAccessResult r = evaluate_point_layer(net, index, layer, cfg.density_cell_m);
    std::vector<char>& flags = snap.within_flags[layer.name];
    for (const PointAccess& pa : r.points) flags.push_back(pa.within_reach ? 1 : 0);
  }
  for (const FeatureLayer& layer : polygon_layers) {
    const PolygonCoverageResult r =
        evaluate_polygon_layer(net, layer, cfg.coverage_sample_interval_m);
    std::vector<char>& flags = snap.through_flags[layer.name];
    for (const EdgeCoverage& ec : r.edges) flags.push_back(ec.through_layer ? 1 : 0);
  }
  for (const SlopeProfile& sp : evaluate_slopes(net, grid, cfg)) {
    snap.slope_labels.push_back(sp.label);
  }
  return snap;
}

void check_scale_invariance() {
  std::vector<std::string> warnings;
  const EvaluationConfig cfg =
      load_config(fs::path(BNP_FIXTURE_DIR) / "config.ini", &warnings);
  LoadOutcome loaded = load_all(cfg);
  require(loaded.network.has_value(), "fixture network failed to load: " + loaded.network_error);
  require(loaded.grid.has_value(), "fixture grid failed to load: " + loaded.grid_error);

  std::vector<FeatureLayer> points, polygons;
  for (const auto& lo : loaded.point_layers) {
    require(lo.layer.has_value(), "fixture point layer failed: " + lo.error);
    points.push_back(*lo.layer);
  }
  for (const auto& lo : loaded.polygon_layers) {
    require(lo.layer.has_value(), "fixture polygon layer failed: " + lo.error);
    polygons.push_back(*lo.layer);
  }

  const double k = 10.0;
  Network scaled_net = *loaded.network;
  for (NetworkNode& node : scaled_net.nodes) {
    node.location.x *= k;
    node.location.y *= k;
  }
  for (NetworkEdge& e : scaled_net.edges) {
    for (Point2& v : e.geometry.vertices) {
      v.x *= k;
      v.y *= k;
    }
    e.length_m = polyline_length(e.geometry);
  }
  auto scale_layers = [&](std::vector<FeatureLayer> layers) {
    for (FeatureLayer& layer : layers) {
      layer.buffer_m *= k;
      for (Feature& f : layer.features) {
        if (f.point) {
          f.point->x *= k;
          f.point->y *= k;
        }
        if (f.polygon) {
          for (Point2& v : f.polygon->exterior) {
            v.x *= k;
            v.y *= k;
          }
          for (auto& hole : f.polygon->holes) {
            for (Point2& v : hole) {
              v.x *= k;
              v.y *= k;
            }
          }
        }
      }
    }
    return layers;
  };
  const std::vector<FeatureLayer> scaled_points = scale_layers(points);
  const std::vector<FeatureLayer> scaled_polygons = scale_layers(polygons);

  // Elevations scale with the horizontal axes, so every rise/run ratio and
  // with it every slope class survives unchanged. The nodata sentinel is a
  // marker, not a height; it must not scale.
  ElevationGrid scaled_grid = *loaded.grid;
  scaled_grid.xllcorner *= k;
  scaled_grid.yllcorner *= k;
  scaled_grid.cellsize *= k;
  for (double& v : scaled_grid.values) {
    if (v != scaled_grid.nodata) v *= k;
  }

  EvaluationConfig scaled_cfg = cfg;
  scaled_cfg.edge_too_short_km *= k;
  scaled_cfg.edge_ideal_max_km *= k;
  scaled_cfg.edge_max_km *= k;
  scaled_cfg.deadend_max_km *= k;
  scaled_cfg.loop_min_km *= k;
  scaled_cfg.loop_max_km *= k;
  scaled_cfg.slope_sample_interval_m *= k;
  scaled_cfg.coverage_sample_interval_m *= k;
  scaled_cfg.snap_tolerance_m *= k;
  scaled_cfg.density_cell_m *= k;

  const LabelSnapshot base = snapshot(*loaded.network, points, polygons, *loaded.grid, cfg);
  const LabelSnapshot scaled =
      snapshot(scaled_net, scaled_points, scaled_polygons, scaled_grid, scaled_cfg);

  require(base.edge_labels == scaled.edge_labels, "edge class labels changed under scaling");
  require(base.deadend_flags == scaled.deadend_flags, "dead-end flags changed under scaling");
  require(base.loop_labels == scaled.loop_labels, "loop class labels changed under scaling");
  require(base.edge_components == scaled.edge_components, "edge components changed under scaling");
  require(base.node_components == scaled.node_components, "node components changed under scaling");
  require(base.within_flags == scaled.within_flags, "within-reach flags changed under scaling");
  require(base.through_flags == scaled.through_flags, "through-layer flags changed under scaling");
  require(base.slope_labels == scaled.slope_labels, "slope labels changed under scaling");
  require(!base.edge_labels.empty() && !base.loop_labels.empty() && !base.slope_labels.empty(),
          "snapshot is empty");
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    double budget_s;  // 0 = no budget
    std::function<void()> body;
  };
  const std::vector<Criterion> criteria = {
      {1, "threshold defaults", 1.0, check_threshold_defaults},
      {2, "euler relation and face partition", 5.0, check_euler_faces},
      {3, "indexed distances match brute force", 10.0, check_distance_oracle},
      {4, "half-open class boundaries", 1.0, check_boundary_table},
      {5, "slope sampling oracle", 5.0, check_slope_oracle},
      {6, "coverage fraction convergence", 2.0, check_coverage_convergence},
      {7, "end-to-end golden run", 10.0, check_golden_run},
      {8, "scale invariance", 0.0, check_scale_invariance},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.body();
    } catch (const CheckFailure& f) {
      error = f.message;
    } catch (const std::exception& e) {
      error = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (error.empty() && c.budget_s > 0.0 && elapsed > c.budget_s) {
      std::ostringstream ss;
      ss << "runtime " << elapsed << " s exceeds budget " << c.budget_s << " s";
      error = ss.str();
    }
    if (error.empty()) {
      std::printf("[PASS] %d. %-38s %7.3f s\n", c.number, c.name, elapsed);
    } else {
      std::printf("[FAIL] %d. %-38s %7.3f s  %s\n", c.number, c.name, elapsed, error.c_str());
      failures += 1;
    }
  }
  return failures;
}
