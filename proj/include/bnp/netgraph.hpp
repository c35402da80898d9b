#pragma once

#include <unordered_map>
#include <vector>

#include "bnp/ingest.hpp"

namespace bnp {

// Rotation-system half-edge structure over the network. Edge i contributes
// half-edges 2i (geometry-forward, endpoint_a -> endpoint_b) and 2i+1 (the
// twin). Per-node rings are sorted counter-clockwise by tangent angle; the
// tangent of a half-edge points from its origin node to the first geometry
// vertex distinct from the node location.
struct HalfEdge {
  int edge_index = 0;  // position in network.edges
  int from = 0;        // dense node index (position in network.nodes)
  int to = 0;
  double angle = 0.0;  // tangent at origin, radians
};

class Graph {
 public:
  const Network* net = nullptr;
  std::vector<HalfEdge> half;            // size 2 * edges
  std::vector<std::vector<int>> around;  // per dense node, half ids CCW
  std::vector<int> ring_pos;             // half id -> position in its ring

  static int twin(int h) { return h ^ 1; }

  // Face-traversal successor: the half-edge after twin(h) in clockwise order
  // around head(h). Bijective, so successor orbits partition the half-edges.
  int successor(int h) const {
    const int t = twin(h);
    const auto& ring = around[half[t].from];
    const int p = ring_pos[t];
    return ring[(p + ring.size() - 1) % ring.size()];
  }

  int degree(int dense_node) const { return static_cast<int>(around[dense_node].size()); }
  int node_id(int dense_node) const { return net->nodes[dense_node].id; }
};

// Throws ParseError if an edge's geometry yields a zero-length tangent.
Graph build_graph(const Network& network);

struct ComponentLabels {
  std::vector<int> node_component;  // parallel to network.nodes
  std::vector<int> edge_component;  // parallel to network.edges
  int count = 0;
};

// Labels 0..k-1 in decreasing order of component edge count, ties broken by
// smallest node id.
ComponentLabels connected_components(const Graph& graph);

struct DeadEndChain {
  std::vector<int> edge_ids;  // ordered from the tip
  double total_length_m = 0.0;
  int tip_node_id = 0;     // degree 1
  int anchor_node_id = 0;  // degree >= 3, or the other tip of a pure path
};

// One chain per degree-1 node, walked through degree-2 nodes. A pure path
// component yields a single chain starting at the smaller tip id.
std::vector<DeadEndChain> dead_end_chains(const Graph& graph);

// A face of the geometric planar embedding; boundary is the closed vertex
// chain of the traversed polylines (an edge traversed twice appears twice).
struct Face {
  std::vector<int> half_edges;
  double perimeter_m = 0.0;
  double signed_area_m2 = 0.0;
  int component = 0;
  std::vector<Point2> boundary;
};

// All faces, outer faces included; discovery order by lowest half-edge id.
std::vector<Face> enumerate_faces(const Graph& graph);

struct Loop {
  int id = 0;
  std::vector<int> half_edges;
  double perimeter_m = 0.0;
  double signed_area_m2 = 0.0;
  int component = 0;
  std::vector<Point2> boundary;
};

// Inner faces only: per component the face with the most negative signed
// area is discarded as the outer face. For crossing-free geometry the loop
// count per component equals E - V + 1.
std::vector<Loop> enumerate_loops(const Graph& graph);

}  // namespace bnp
