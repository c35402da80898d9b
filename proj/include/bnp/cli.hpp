#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bnp/evaluate.hpp"
#include "bnp/ingest.hpp"
#include "bnp/netgraph.hpp"
#include "bnp/report.hpp"

namespace bnp {

// One invocation's state. Constructed only after the config parsed; inputs
// and derived analyses are computed at most once no matter how many steps
// run, so `all` costs the same as its most expensive step.
struct RunContext {
  std::filesystem::path config_path = "./config.ini";
  EvaluationConfig config;
  std::filesystem::path out_dir = "./output";
  bool quiet = false;

  std::optional<LoadOutcome> loaded;
  std::optional<Graph> graph;
  std::optional<ComponentLabels> components;
  std::optional<std::vector<Loop>> loops;
  std::optional<std::vector<EdgeClass>> edge_classes;
  std::optional<std::vector<LoopClass>> loop_classes;
  std::optional<std::vector<PointLayerBundle>> point_bundles;
  std::optional<std::vector<PolygonLayerBundle>> polygon_bundles;
  std::optional<std::vector<SlopeProfile>> slopes;
};

// Full command-line entry point: `args` excludes the program name. Returns
// the process exit code: 0 success, 1 validation failure or explicitly
// requested step lacking its optional input, 2 I/O or parse error, 3 config
// error, 64 usage error (help printed).
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

// main() adapter writing to stdout/stderr.
int run_cli(int argc, char** argv);

}  // namespace bnp
