#include "bnp/geometry.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "bnp/common.hpp"

namespace bnp {

void BoundingBox::expand(const Point2& p) {
  if (empty) {
    min_x = max_x = p.x;
    min_y = max_y = p.y;
    empty = false;
    return;
  }
  min_x = std::min(min_x, p.x);
  min_y = std::min(min_y, p.y);
  max_x = std::max(max_x, p.x);
  max_y = std::max(max_y, p.y);
}

void BoundingBox::expand(const BoundingBox& other) {
  if (other.empty) return;
  expand(Point2{other.min_x, other.min_y});
  expand(Point2{other.max_x, other.max_y});
}

bool polyline_valid(const Polyline& line) {
  if (line.vertices.size() < 2) return false;
  for (const Point2& v : line.vertices) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) return false;
  }
  for (std::size_t i = 1; i < line.vertices.size(); ++i) {
    if (line.vertices[i] == line.vertices[i - 1]) return false;
  }
  return true;
}

static bool ring_valid(const std::vector<Point2>& ring) {
  if (ring.size() < 4) return false;
  if (!(ring.front() == ring.back())) return false;
  for (const Point2& v : ring) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) return false;
  }
  return true;
}

bool polygon_valid(const Polygon& poly) {
  if (!ring_valid(poly.exterior)) return false;
  if (signed_ring_area(poly.exterior) == 0.0) return false;
  for (const auto& hole : poly.holes) {
    if (!ring_valid(hole)) return false;
  }
  return true;
}

double distance(const Point2& a, const Point2& b) {
  return std::hypot(b.x - a.x, b.y - a.y);
}

double polyline_length(const Polyline& line) {
  double total = 0.0;
  for (std::size_t i = 1; i < line.vertices.size(); ++i) {
    total += distance(line.vertices[i - 1], line.vertices[i]);
  }
  return total;
}

double point_segment_distance(const Point2& p, const Point2& a, const Point2& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  if (len2 == 0.0) return distance(p, a);
  double t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

double point_polyline_distance(const Point2& p, const Polyline& line) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < line.vertices.size(); ++i) {
    best = std::min(best, point_segment_distance(p, line.vertices[i - 1], line.vertices[i]));
  }
  return best;
}

static double ring_min_distance(const Point2& p, const std::vector<Point2>& ring) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < ring.size(); ++i) {
    best = std::min(best, point_segment_distance(p, ring[i - 1], ring[i]));
  }
  return best;
}

static bool on_ring(const Point2& p, const std::vector<Point2>& ring) {
  for (std::size_t i = 1; i < ring.size(); ++i) {
    if (point_segment_distance(p, ring[i - 1], ring[i]) == 0.0) return true;
  }
  return false;
}

// Half-open crossing rule: an edge [a, b) crosses the rightward ray iff its
// vertices straddle p.y with strict-above on exactly one side.
static bool ray_crosses(const Point2& p, const Point2& a, const Point2& b) {
  if ((a.y > p.y) == (b.y > p.y)) return false;
  const double t = (p.y - a.y) / (b.y - a.y);
  const double x_int = a.x + t * (b.x - a.x);
  return p.x < x_int;
}

bool point_in_polygon(const Point2& p, const Polygon& poly) {
  if (on_ring(p, poly.exterior)) return true;
  for (const auto& hole : poly.holes) {
    if (on_ring(p, hole)) return true;
  }
  bool inside = false;
  for (std::size_t i = 1; i < poly.exterior.size(); ++i) {
    if (ray_crosses(p, poly.exterior[i - 1], poly.exterior[i])) inside = !inside;
  }
  for (const auto& hole : poly.holes) {
    for (std::size_t i = 1; i < hole.size(); ++i) {
      if (ray_crosses(p, hole[i - 1], hole[i])) inside = !inside;
    }
  }
  return inside;
}

double point_polygon_distance(const Point2& p, const Polygon& poly) {
  if (point_in_polygon(p, poly)) return 0.0;
  double best = ring_min_distance(p, poly.exterior);
  for (const auto& hole : poly.holes) {
    best = std::min(best, ring_min_distance(p, hole));
  }
  return best;
}

double signed_ring_area(const std::vector<Point2>& ring) {
  double sum = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Point2& a = ring[i];
    const Point2& b = ring[(i + 1) % ring.size()];
    sum += a.x * b.y - b.x * a.y;
  }
  return 0.5 * sum;
}

Point2 point_at_chainage(const Polyline& line, double chainage) {
  if (chainage <= 0.0) return line.vertices.front();
  double remaining = chainage;
  for (std::size_t i = 1; i < line.vertices.size(); ++i) {
    const Point2& a = line.vertices[i - 1];
    const Point2& b = line.vertices[i];
    const double seg = distance(a, b);
    if (remaining <= seg) {
      const double t = remaining / seg;
      return Point2{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
    }
    remaining -= seg;
  }
  return line.vertices.back();
}

BoundingBox polyline_bounds(const Polyline& line) {
  BoundingBox box;
  for (const Point2& v : line.vertices) box.expand(v);
  return box;
}

BoundingBox polygon_bounds(const Polygon& poly) {
  BoundingBox box;
  for (const Point2& v : poly.exterior) box.expand(v);
  return box;
}

double point_box_distance(const Point2& p, const BoundingBox& box) {
  if (box.empty) return std::numeric_limits<double>::infinity();
  const double dx = std::max({box.min_x - p.x, 0.0, p.x - box.max_x});
  const double dy = std::max({box.min_y - p.y, 0.0, p.y - box.max_y});
  return std::hypot(dx, dy);
}

GridIndex build_index(const std::vector<std::pair<int, const Polyline*>>& edges,
                      double cell_size) {
  GridIndex index;
  index.cell_size_ = cell_size;
  for (const auto& [edge_id, line] : edges) {
    const auto& vs = line->vertices;
    for (std::size_t i = 1; i < vs.size(); ++i) {
      const auto ix0 = static_cast<int64_t>(std::floor(std::min(vs[i - 1].x, vs[i].x) / cell_size));
      const auto ix1 = static_cast<int64_t>(std::floor(std::max(vs[i - 1].x, vs[i].x) / cell_size));
      const auto iy0 = static_cast<int64_t>(std::floor(std::min(vs[i - 1].y, vs[i].y) / cell_size));
      const auto iy1 = static_cast<int64_t>(std::floor(std::max(vs[i - 1].y, vs[i].y) / cell_size));
      for (int64_t ix = ix0; ix <= ix1; ++ix) {
        for (int64_t iy = iy0; iy <= iy1; ++iy) {
          index.cells_[GridIndex::cell_key(ix, iy)].push_back(
              {edge_id, static_cast<int>(i - 1)});
        }
      }
    }
  }
  return index;
}

std::vector<GridIndex::SegmentRef> query_candidates(const GridIndex& index, const Point2& p,
                                                    double radius) {
  std::vector<GridIndex::SegmentRef> out;
  if (index.cells_.empty()) return out;
  const double cs = index.cell_size_;
  const auto ix0 = static_cast<int64_t>(std::floor((p.x - radius) / cs));
  const auto ix1 = static_cast<int64_t>(std::floor((p.x + radius) / cs));
  const auto iy0 = static_cast<int64_t>(std::floor((p.y - radius) / cs));
  const auto iy1 = static_cast<int64_t>(std::floor((p.y + radius) / cs));
  for (int64_t ix = ix0; ix <= ix1; ++ix) {
    for (int64_t iy = iy0; iy <= iy1; ++iy) {
      auto it = index.cells_.find(GridIndex::cell_key(ix, iy));
      if (it == index.cells_.end()) continue;
      out.insert(out.end(), it->second.begin(), it->second.end());
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

unsigned worker_count(std::size_t items) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  unsigned cap = hw;
  if (const char* env = std::getenv("BNP_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) cap = static_cast<unsigned>(v);
  }
  const auto by_items = static_cast<unsigned>(std::min<std::size_t>(items, 1u << 10));
  return std::max(1u, std::min(cap, by_items));
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = worker_count(n);
  if (workers <= 1 || n < 64) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::atomic<std::size_t> next{0};
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace bnp
