#include "steklov/transforms.hpp"

#include <algorithm>
#include <string>

namespace steklov {

namespace {

std::vector<Edge> stretched_edges(const GraphWithBoundary& g, Edge edge, int length) {
  auto [u, v] = edge;
  if (length < 1) fail(ErrorKind::ParameterRange, "stretch length must be >= 1");
  if (!g.has_edge(u, v))
    fail(ErrorKind::EdgeNotFound,
         "no edge {" + std::to_string(u) + ", " + std::to_string(v) + "}");

  std::vector<Edge> edges;
  for (const auto& [a, b] : g.edge_list())
    if (!((a == u && b == v) || (a == v && b == u))) edges.emplace_back(a, b);

  int next = g.vertex_count();
  int prev = u;
  for (int i = 0; i + 1 < length; ++i) {
    edges.emplace_back(prev, next);
    prev = next++;
  }
  edges.emplace_back(prev, v);
  return edges;
}

}  // namespace

GraphWithBoundary stretch_edge(const GraphWithBoundary& g, const StretchSpec& spec) {
  if (spec.length == 1) {
    if (!g.has_edge(spec.edge.first, spec.edge.second))
      fail(ErrorKind::EdgeNotFound, "no edge {" + std::to_string(spec.edge.first) +
                                        ", " + std::to_string(spec.edge.second) + "}");
    return g;
  }
  return build_graph(stretched_edges(g, spec.edge, spec.length), g.boundary());
}

TreeWithLeafBoundary stretch_edge(const TreeWithLeafBoundary& tree,
                                  const StretchSpec& spec) {
  if (spec.length == 1) {
    if (!tree.graph().has_edge(spec.edge.first, spec.edge.second))
      fail(ErrorKind::EdgeNotFound, "no edge {" + std::to_string(spec.edge.first) +
                                        ", " + std::to_string(spec.edge.second) + "}");
    return tree;
  }
  return build_tree(stretched_edges(tree.graph(), spec.edge, spec.length));
}

TreeWithLeafBoundary contract_degree2(const TreeWithLeafBoundary& tree, int x) {
  const GraphWithBoundary& g = tree.graph();
  if (x < 0 || x >= g.vertex_count())
    fail(ErrorKind::InvalidVertex, "vertex " + std::to_string(x) + " out of range");
  if (g.is_boundary(x) || g.degree(x) != 2)
    fail(ErrorKind::NotInteriorDegreeTwo,
         "vertex " + std::to_string(x) + " is not an interior degree-2 vertex");
  if (g.vertex_count() <= 3)
    fail(ErrorKind::DegenerateContraction, "contraction would leave a single edge");

  int a = g.neighbors(x)[0];
  int b = g.neighbors(x)[1];
  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edge_list()) {
    if (u == x || v == x) continue;
    edges.emplace_back(u, v);
  }
  edges.emplace_back(a, b);
  for (auto& [u, v] : edges) {
    if (u > x) --u;
    if (v > x) --v;
  }
  return build_tree(edges);
}

TreeWithLeafBoundary series_reduce(const TreeWithLeafBoundary& tree) {
  TreeWithLeafBoundary current = tree;
  for (;;) {
    const GraphWithBoundary& g = current.graph();
    int target = -1;
    for (int v : g.interior())
      if (g.degree(v) == 2) {
        target = v;
        break;
      }
    if (target < 0) return current;
    if (g.vertex_count() <= 3)
      fail(ErrorKind::NotReducible, "path reduces to a single edge");
    current = contract_degree2(current, target);
  }
}

}  // namespace steklov
