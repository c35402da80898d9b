#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace bnp {

// Error hierarchy mirrored by the CLI exit codes: ConfigError -> 3,
// IoError / ParseError -> 2, MissingInputError -> 1.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File missing, unreadable, or unwritable.
struct IoError : Error {
  using Error::Error;
};

// File exists but its content is malformed or structurally invalid.
struct ParseError : Error {
  using Error::Error;
};

// Problem in the evaluation config (missing file, bad key, ordering violation).
struct ConfigError : Error {
  using Error::Error;
};

// An optional input was explicitly requested but is not configured.
struct MissingInputError : Error {
  using Error::Error;
};

// Round to 3 decimals for all exported numbers; normalizes -0.0 away.
inline double round3(double v) {
  double r = std::round(v * 1000.0) / 1000.0;
  return r == 0.0 ? 0.0 : r;
}

// Fixed-format float for deterministic text output.
inline std::string fmt_fixed(double v, int decimals) {
  if (v == 0.0) v = 0.0;  // flush -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

// Worker count for data-parallel loops: capped by BNP_THREADS when set
// (0 or unset means hardware default).
unsigned worker_count(std::size_t items);

// Runs fn(i) for i in [0, n). Results must be written to per-index slots;
// the loop body must not touch shared mutable state.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace bnp
