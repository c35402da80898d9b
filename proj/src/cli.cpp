#include "bnp/cli.hpp"

#include <iostream>
#include <ostream>
#include <utility>

#include <CLI11.hpp>

#include "bnp/common.hpp"

namespace bnp {

namespace fs = std::filesystem;

namespace {

// Runs the workflow steps against a shared context; every ensure_* fills its
// cache slot once.
class Runner {
 public:
  Runner(RunContext& ctx, std::ostream& out, std::ostream& err)
      : ctx_(ctx), out_(out), err_(err) {}

  int validate() {
    const ValidationReport report = validate_inputs(ctx_.config, loads());
    out_ << report.to_text();
    return report.pass ? 0 : 1;
  }

  int show() {
    const Network& net = network();
    const fs::path layers_dir = ctx_.out_dir / "layers";
    wrote(export_network_nodes(net, layers_dir));
    wrote(export_network_edges(net, layers_dir));
    std::vector<FeatureLayer> points, polygons;
    for (const auto& lo : loads().point_layers) {
      if (skip_if_broken(lo)) continue;
      points.push_back(*lo.layer);
      wrote(export_input_layer(*lo.layer, layers_dir));
    }
    for (const auto& lo : loads().polygon_layers) {
      if (skip_if_broken(lo)) continue;
      polygons.push_back(*lo.layer);
      wrote(export_input_layer(*lo.layer, layers_dir));
    }
    wrote(render_svg(overview_scene(net, points, polygons), style(),
                     ctx_.out_dir / "maps" / "overview.svg"));
    return 0;
  }

  int access() {
    if (ctx_.config.point_layers.empty() && ctx_.config.polygon_layers.empty())
      throw MissingInputError("no point or polygon layers configured; access step needs at least one");
    ensure_point_bundles();
    ensure_polygon_bundles();
    const fs::path layers_dir = ctx_.out_dir / "layers";
    for (const auto& bundle : *ctx_.point_bundles) {
      wrote(export_access(bundle, layers_dir));
      wrote(render_svg(access_scene(network(), bundle), style(),
                       ctx_.out_dir / "maps" / ("access_" + bundle.layer.name + ".svg")));
      log(bundle.layer.name + ": " + std::to_string(bundle.access.within_count) + " of " +
          std::to_string(bundle.access.within_count + bundle.access.outside_count) +
          " points within reach");
    }
    for (const auto& bundle : *ctx_.polygon_bundles) {
      wrote(export_coverage(network(), bundle, layers_dir));
      wrote(render_svg(coverage_scene(network(), bundle), style(),
                       ctx_.out_dir / "maps" / ("coverage_" + bundle.layer.name + ".svg")));
    }
    return 0;
  }

  int slope() {
    if (ctx_.config.elevation_path.empty())
      throw MissingInputError("no elevation grid configured; slope step needs one");
    if (!loads().grid.has_value()) throw ParseError(loads().grid_error);
    ensure_slopes();
    wrote(export_slope_edges(network(), *ctx_.slopes, ctx_.out_dir / "layers"));
    wrote(render_svg(slope_scene(network(), *ctx_.slopes), style(),
                     ctx_.out_dir / "maps" / "slope.svg"));
    return 0;
  }

  int components() {
    ensure_components();
    wrote(export_components(network(), *ctx_.components, ctx_.out_dir / "layers"));
    wrote(render_svg(components_scene(network(), *ctx_.components), style(),
                     ctx_.out_dir / "maps" / "components.svg"));
    log(std::to_string(ctx_.components->count) + " connected components");
    return 0;
  }

  int edges() {
    ensure_edge_classes();
    wrote(export_edges_classified(network(), *ctx_.edge_classes, ctx_.out_dir / "layers"));
    wrote(render_svg(edges_scene(network(), *ctx_.edge_classes), style(),
                     ctx_.out_dir / "maps" / "edges.svg"));
    return 0;
  }

  int loops() {
    ensure_loop_classes();
    wrote(export_loops_classified(*ctx_.loops, *ctx_.loop_classes, ctx_.out_dir / "layers"));
    wrote(render_svg(loops_scene(network(), *ctx_.loops, *ctx_.loop_classes), style(),
                     ctx_.out_dir / "maps" / "loops.svg"));
    log(std::to_string(ctx_.loops->size()) + " loops");
    return 0;
  }

  int summary() {
    const SummaryDocument doc = summarize(results());
    for (const auto& path : write_summary(doc, ctx_.out_dir)) wrote_path(path);
    out_ << doc.to_text();
    return 0;
  }

  int export_layers_step() {
    for (const auto& path : bnp::export_layers(results(), ctx_.out_dir)) wrote_path(path);
    return 0;
  }

  int all() {
    const int validation = validate();
    if (validation != 0) return validation;
    show();
    if (!ctx_.config.point_layers.empty() || !ctx_.config.polygon_layers.empty())
      access();
    else
      log("no point or polygon layers configured; skipping access");
    if (ctx_.config.elevation_path.empty())
      log("no elevation grid configured; skipping slope");
    else if (!loads().grid.has_value())
      log("elevation grid failed to load; skipping slope: " + loads().grid_error);
    else
      slope();
    components();
    edges();
    loops();
    summary();
    export_layers_step();
    return 0;
  }

 private:
  void log(const std::string& message) {
    if (!ctx_.quiet) err_ << message << "\n";
  }
  void wrote_path(const fs::path& path) { log("wrote " + path.generic_string()); }
  void wrote(const fs::path& path) { wrote_path(path); }

  const LoadOutcome& loads() {
    if (!ctx_.loaded.has_value()) {
      log("loading inputs from " + ctx_.config_path.generic_string());
      ctx_.loaded = load_all(ctx_.config);
    }
    return *ctx_.loaded;
  }

  // Layer failures degrade to a warning in every step; validate reports them.
  bool skip_if_broken(const LoadOutcome::LayerOutcome& lo) {
    if (lo.layer.has_value()) return false;
    log("skipping layer " + lo.spec.name + ": " + lo.error);
    return true;
  }

  const Network& network() {
    const LoadOutcome& lo = loads();
    if (!lo.network.has_value())
      throw IoError(lo.network_error.empty() ? "network not loaded" : lo.network_error);
    return *lo.network;
  }

  const Graph& graph() {
    if (!ctx_.graph.has_value()) {
      ctx_.graph = build_graph(network());
      log("network: " + std::to_string(network().nodes.size()) + " nodes, " +
          std::to_string(network().edges.size()) + " edges");
    }
    return *ctx_.graph;
  }

  void ensure_components() {
    if (!ctx_.components.has_value()) ctx_.components = connected_components(graph());
  }

  void ensure_edge_classes() {
    if (ctx_.edge_classes.has_value()) return;
    ctx_.edge_classes = classify_edges(network(), graph(),
                                       ClassificationScheme::edge_km(ctx_.config),
                                       ctx_.config.deadend_max_km);
  }

  void ensure_loop_classes() {
    if (ctx_.loop_classes.has_value()) return;
    ensure_components();
    ctx_.loops = enumerate_loops(graph());
    ctx_.loop_classes = classify_loops(*ctx_.loops, ClassificationScheme::loop_km(ctx_.config));
  }

  void ensure_point_bundles() {
    if (ctx_.point_bundles.has_value()) return;
    const Network& net = network();
    std::vector<std::pair<int, const Polyline*>> refs;
    refs.reserve(net.edges.size());
    for (const auto& e : net.edges) refs.emplace_back(e.id, &e.geometry);
    const GridIndex index = build_index(refs, index_cell_size(ctx_.config));
    std::vector<PointLayerBundle> bundles;
    for (const auto& lo : loads().point_layers) {
      if (skip_if_broken(lo)) continue;
      PointLayerBundle bundle;
      bundle.layer = *lo.layer;
      bundle.access = evaluate_point_layer(net, index, bundle.layer, ctx_.config.density_cell_m);
      bundles.push_back(std::move(bundle));
    }
    ctx_.point_bundles = std::move(bundles);
  }

  void ensure_polygon_bundles() {
    if (ctx_.polygon_bundles.has_value()) return;
    std::vector<PolygonLayerBundle> bundles;
    for (const auto& lo : loads().polygon_layers) {
      if (skip_if_broken(lo)) continue;
      PolygonLayerBundle bundle;
      bundle.layer = *lo.layer;
      bundle.coverage = evaluate_polygon_layer(network(), bundle.layer,
                                               ctx_.config.coverage_sample_interval_m);
      bundles.push_back(std::move(bundle));
    }
    ctx_.polygon_bundles = std::move(bundles);
  }

  void ensure_slopes() {
    if (ctx_.slopes.has_value()) return;
    ctx_.slopes = evaluate_slopes(network(), *loads().grid, ctx_.config);
  }

  // Everything available for summary/export; slope only when the grid loaded.
  EvaluationResults results() {
    ensure_components();
    ensure_edge_classes();
    ensure_loop_classes();
    ensure_point_bundles();
    ensure_polygon_bundles();
    EvaluationResults r;
    r.network = &network();
    r.components = *ctx_.components;
    r.loops = *ctx_.loops;
    r.edge_classes = *ctx_.edge_classes;
    r.loop_classes = *ctx_.loop_classes;
    r.point_layers = *ctx_.point_bundles;
    r.polygon_layers = *ctx_.polygon_bundles;
    if (!ctx_.config.elevation_path.empty() && loads().grid.has_value()) {
      ensure_slopes();
      r.slopes = *ctx_.slopes;
      r.has_slopes = true;
    }
    return r;
  }

  StyleSpec style() const { return StyleSpec::defaults(ctx_.config); }

  RunContext& ctx_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"bicycle node network evaluation"};
  app.name("bnp");
  std::string config_path = "./config.ini";
  std::string out_dir;
  bool quiet = false;
  app.add_option("--config", config_path, "configuration file (default ./config.ini)");
  auto* out_opt = app.add_option("--out", out_dir, "output directory (default from config)");
  app.add_flag("--quiet", quiet, "suppress progress output");
  app.fallthrough();
  app.require_subcommand(1);

  const std::pair<const char*, const char*> steps[] = {
      {"validate", "check configured inputs and report problems"},
      {"show", "export the raw network and input layers with an overview map"},
      {"access", "point accessibility and polygon coverage"},
      {"slope", "slope profiles from the elevation grid"},
      {"components", "connected components"},
      {"edges", "edge length classification"},
      {"loops", "loop enumeration and classification"},
      {"summary", "aggregate statistics"},
      {"export", "write every evaluation layer as GeoJSON"},
      {"all", "run every step in order"},
  };
  for (const auto& [name, description] : steps) app.add_subcommand(name, description);

  std::vector<const char*> argv;
  argv.push_back("bnp");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return 64;
  }

  try {
    RunContext ctx;
    ctx.config_path = config_path;
    ctx.quiet = quiet;
    std::vector<std::string> warnings;
    ctx.config = load_config(ctx.config_path, &warnings);
    if (!quiet)
      for (const auto& w : warnings) err << "warning: " << w << "\n";
    ctx.out_dir = out_opt->count() > 0 ? fs::path(out_dir)
                                       : ctx.config.resolve(ctx.config.output_dir);
    fs::create_directories(ctx.out_dir);

    Runner runner(ctx, out, err);
    const std::string step = app.get_subcommands().front()->get_name();
    if (step == "validate") return runner.validate();
    if (step == "show") return runner.show();
    if (step == "access") return runner.access();
    if (step == "slope") return runner.slope();
    if (step == "components") return runner.components();
    if (step == "edges") return runner.edges();
    if (step == "loops") return runner.loops();
    if (step == "summary") return runner.summary();
    if (step == "export") return runner.export_layers_step();
    return runner.all();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 3;
  } catch (const MissingInputError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(std::move(args), std::cout, std::cerr);
}

}  // namespace bnp
