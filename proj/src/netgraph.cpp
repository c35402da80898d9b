#include "bnp/netgraph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <unordered_map>

#include "bnp/common.hpp"

namespace bnp {

namespace {

int dense_index(const Network& net, int node_id) {
  // nodes are sorted by id
  auto it = std::lower_bound(net.nodes.begin(), net.nodes.end(), node_id,
                             [](const NetworkNode& n, int id) { return n.id < id; });
  return static_cast<int>(it - net.nodes.begin());
}

// Tangent from `origin` toward the first vertex of `geom` (walked forward or
// backward) that differs from the origin location.
double tangent_angle(const Point2& origin, const Polyline& geom, bool forward, int edge_id) {
  const auto& vs = geom.vertices;
  const auto n = static_cast<int>(vs.size());
  for (int k = 0; k < n; ++k) {
    const Point2& v = forward ? vs[k] : vs[n - 1 - k];
    if (!(v == origin)) {
      return std::atan2(v.y - origin.y, v.x - origin.x);
    }
  }
  throw ParseError("edge " + std::to_string(edge_id) +
                   ": degenerate geometry, no vertex distinct from its endpoint node");
}

}  // namespace

Graph build_graph(const Network& network) {
  Graph g;
  g.net = &network;
  g.half.reserve(network.edges.size() * 2);
  g.around.assign(network.nodes.size(), {});

  for (std::size_t e = 0; e < network.edges.size(); ++e) {
    const NetworkEdge& edge = network.edges[e];
    const int a = dense_index(network, edge.endpoint_a);
    const int b = dense_index(network, edge.endpoint_b);
    const Point2& loc_a = network.nodes[a].location;
    const Point2& loc_b = network.nodes[b].location;
    g.half.push_back({static_cast<int>(e), a, b,
                      tangent_angle(loc_a, edge.geometry, true, edge.id)});
    g.half.push_back({static_cast<int>(e), b, a,
                      tangent_angle(loc_b, edge.geometry, false, edge.id)});
  }

  for (int h = 0; h < static_cast<int>(g.half.size()); ++h) {
    g.around[g.half[h].from].push_back(h);
  }
  for (auto& ring : g.around) {
    std::sort(ring.begin(), ring.end(), [&](int lhs, int rhs) {
      if (g.half[lhs].angle != g.half[rhs].angle) return g.half[lhs].angle < g.half[rhs].angle;
      return lhs < rhs;
    });
  }
  g.ring_pos.assign(g.half.size(), 0);
  for (const auto& ring : g.around) {
    for (std::size_t p = 0; p < ring.size(); ++p) g.ring_pos[ring[p]] = static_cast<int>(p);
  }
  return g;
}

ComponentLabels connected_components(const Graph& graph) {
  const Network& net = *graph.net;
  const int n = static_cast<int>(net.nodes.size());
  std::vector<int> provisional(n, -1);
  int comps = 0;
  for (int start = 0; start < n; ++start) {
    if (provisional[start] != -1) continue;
    std::queue<int> frontier;
    frontier.push(start);
    provisional[start] = comps;
    while (!frontier.empty()) {
      const int node = frontier.front();
      frontier.pop();
      for (int h : graph.around[node]) {
        const int next = graph.half[h].to;
        if (provisional[next] == -1) {
          provisional[next] = comps;
          frontier.push(next);
        }
      }
    }
    ++comps;
  }

  // Order labels by decreasing edge count, ties by smallest node id.
  std::vector<int> edge_count(comps, 0);
  std::vector<int> edge_comp(net.edges.size());
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    edge_comp[e] = provisional[graph.half[2 * e].from];
    ++edge_count[edge_comp[e]];
  }
  std::vector<int> min_node(comps, std::numeric_limits<int>::max());
  for (int i = 0; i < n; ++i) {
    min_node[provisional[i]] = std::min(min_node[provisional[i]], net.nodes[i].id);
  }
  std::vector<int> order(comps);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (edge_count[a] != edge_count[b]) return edge_count[a] > edge_count[b];
    return min_node[a] < min_node[b];
  });
  std::vector<int> remap(comps);
  for (int rank = 0; rank < comps; ++rank) remap[order[rank]] = rank;

  ComponentLabels out;
  out.count = comps;
  out.node_component.resize(n);
  for (int i = 0; i < n; ++i) out.node_component[i] = remap[provisional[i]];
  out.edge_component.resize(net.edges.size());
  for (std::size_t e = 0; e < net.edges.size(); ++e) out.edge_component[e] = remap[edge_comp[e]];
  return out;
}

std::vector<DeadEndChain> dead_end_chains(const Graph& graph) {
  const Network& net = *graph.net;
  std::vector<DeadEndChain> chains;
  for (int tip = 0; tip < static_cast<int>(graph.around.size()); ++tip) {
    if (graph.degree(tip) != 1) continue;

    DeadEndChain chain;
    chain.tip_node_id = net.nodes[tip].id;
    int h = graph.around[tip][0];
    int anchor_dense;
    for (;;) {
      chain.edge_ids.push_back(net.edges[graph.half[h].edge_index].id);
      chain.total_length_m += net.edges[graph.half[h].edge_index].length_m;
      const int node = graph.half[h].to;
      if (graph.degree(node) != 2) {
        anchor_dense = node;
        chain.anchor_node_id = net.nodes[node].id;
        break;
      }
      const auto& ring = graph.around[node];
      h = (ring[0] == Graph::twin(h)) ? ring[1] : ring[0];
    }

    // A pure path ends at another tip; emit it once, from the smaller tip id.
    if (graph.degree(anchor_dense) == 1 && chain.anchor_node_id < chain.tip_node_id) continue;
    chains.push_back(std::move(chain));
  }
  return chains;
}

std::vector<Face> enumerate_faces(const Graph& graph) {
  const Network& net = *graph.net;
  const ComponentLabels comps = connected_components(graph);

  std::vector<Face> faces;
  std::vector<char> visited(graph.half.size(), 0);
  for (int start = 0; start < static_cast<int>(graph.half.size()); ++start) {
    if (visited[start]) continue;
    Face face;
    int h = start;
    do {
      visited[h] = 1;
      face.half_edges.push_back(h);
      face.perimeter_m += net.edges[graph.half[h].edge_index].length_m;
      h = graph.successor(h);
    } while (h != start);

    face.component = comps.node_component[graph.half[start].from];

    // Boundary: concatenated geometry vertices along the traversal.
    for (int he : face.half_edges) {
      const Polyline& geom = net.edges[graph.half[he].edge_index].geometry;
      const bool forward = (he % 2) == 0;
      const auto n = static_cast<int>(geom.vertices.size());
      for (int k = 0; k < n; ++k) {
        const Point2& v = forward ? geom.vertices[k] : geom.vertices[n - 1 - k];
        if (face.boundary.empty() || !(face.boundary.back() == v)) {
          face.boundary.push_back(v);
        }
      }
    }
    if (face.boundary.size() > 1 && face.boundary.front() == face.boundary.back()) {
      face.boundary.pop_back();
    }
    face.signed_area_m2 = signed_ring_area(face.boundary);
    faces.push_back(std::move(face));
  }
  return faces;
}

std::vector<Loop> enumerate_loops(const Graph& graph) {
  std::vector<Face> faces = enumerate_faces(graph);

  // Per component, the face with the most negative signed area is the outer
  // face; first discovered wins a tie.
  std::unordered_map<int, int> outer;  // component -> face index
  for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
    auto it = outer.find(faces[f].component);
    if (it == outer.end() || faces[f].signed_area_m2 < faces[it->second].signed_area_m2) {
      outer[faces[f].component] = f;
    }
  }

  std::vector<Loop> loops;
  for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
    if (outer[faces[f].component] == f) continue;
    Loop loop;
    loop.id = static_cast<int>(loops.size());
    loop.half_edges = std::move(faces[f].half_edges);
    loop.perimeter_m = faces[f].perimeter_m;
    loop.signed_area_m2 = faces[f].signed_area_m2;
    loop.component = faces[f].component;
    loop.boundary = std::move(faces[f].boundary);
    loops.push_back(std::move(loop));
  }
  return loops;
}

}  // namespace bnp
