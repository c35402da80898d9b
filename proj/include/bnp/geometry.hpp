#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bnp {

// All geometry lives in a projected planar CRS with meter units.
struct Point2 {
  double x = 0.0;  // easting
  double y = 0.0;  // northing

  friend bool operator==(const Point2& a, const Point2& b) {
    return a.x == b.x && a.y == b.y;
  }
};

// Ordered vertex chain, length >= 2, no two consecutive vertices identical.
struct Polyline {
  std::vector<Point2> vertices;
};

// Exterior ring plus optional holes; every ring is closed (first == last)
// with at least 4 vertices.
struct Polygon {
  std::vector<Point2> exterior;
  std::vector<std::vector<Point2>> holes;
};

struct BoundingBox {
  double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;

  void expand(const Point2& p);
  void expand(const BoundingBox& other);
  bool empty = true;
};

bool polyline_valid(const Polyline& line);
bool polygon_valid(const Polygon& poly);

double polyline_length(const Polyline& line);

double distance(const Point2& a, const Point2& b);

// Distance from p to segment [a, b]: perpendicular foot when the projection
// falls inside the segment, nearest endpoint otherwise.
double point_segment_distance(const Point2& p, const Point2& a, const Point2& b);

double point_polyline_distance(const Point2& p, const Polyline& line);

// Even-odd ray casting with the half-open edge rule; points on any ring
// (exterior or hole boundary) count as inside.
bool point_in_polygon(const Point2& p, const Polygon& poly);

// 0 when the point is inside, min distance to any ring segment otherwise.
double point_polygon_distance(const Point2& p, const Polygon& poly);

// Signed area of a closed vertex chain (positive = counter-clockwise).
// The chain is closed implicitly from the last vertex back to the first.
double signed_ring_area(const std::vector<Point2>& ring);

// Point at distance `chainage` along the polyline (clamped to [0, length]).
Point2 point_at_chainage(const Polyline& line, double chainage);

BoundingBox polyline_bounds(const Polyline& line);
BoundingBox polygon_bounds(const Polygon& poly);

// 0 when p is inside the box, distance to the box boundary otherwise.
double point_box_distance(const Point2& p, const BoundingBox& box);

// Uniform-cell spatial hash over polyline segments. Candidate queries are a
// superset of the true within-radius set; callers filter by exact distance.
class GridIndex {
 public:
  struct SegmentRef {
    int edge_id = 0;
    int segment = 0;

    friend bool operator==(const SegmentRef& a, const SegmentRef& b) {
      return a.edge_id == b.edge_id && a.segment == b.segment;
    }
    friend bool operator<(const SegmentRef& a, const SegmentRef& b) {
      return a.edge_id != b.edge_id ? a.edge_id < b.edge_id : a.segment < b.segment;
    }
  };

  GridIndex() = default;

  double cell_size() const { return cell_size_; }
  bool empty() const { return cells_.empty(); }

  friend GridIndex build_index(const std::vector<std::pair<int, const Polyline*>>& edges,
                               double cell_size);
  friend std::vector<SegmentRef> query_candidates(const GridIndex& index, const Point2& p,
                                                  double radius);

 private:
  static int64_t cell_key(int64_t ix, int64_t iy) {
    return (ix << 32) ^ (iy & 0xffffffffLL);
  }

  double cell_size_ = 100.0;
  std::unordered_map<int64_t, std::vector<SegmentRef>> cells_;
};

GridIndex build_index(const std::vector<std::pair<int, const Polyline*>>& edges,
                      double cell_size);

// Every segment whose true distance to p is <= radius appears in the result
// (false positives allowed, never false negatives). Deduplicated and sorted.
std::vector<GridIndex::SegmentRef> query_candidates(const GridIndex& index, const Point2& p,
                                                    double radius);

}  // namespace bnp
