#include "steklov/graph.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <set>
#include <sstream>

namespace steklov {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Disconnected: return "disconnected";
    case ErrorKind::NonSimple: return "non-simple";
    case ErrorKind::EmptyBoundary: return "empty-boundary";
    case ErrorKind::NoInterior: return "no-interior";
    case ErrorKind::Cyclic: return "cyclic";
    case ErrorKind::TooSmall: return "too-small";
    case ErrorKind::EdgeNotFound: return "edge-not-found";
    case ErrorKind::InvalidVertex: return "invalid-vertex";
    case ErrorKind::NotInteriorDegreeTwo: return "not-interior-degree-two";
    case ErrorKind::DegenerateContraction: return "degenerate-contraction";
    case ErrorKind::NotReducible: return "not-reducible";
    case ErrorKind::ZeroBoundaryData: return "zero-boundary-data";
    case ErrorKind::SingularSystem: return "singular-system";
    case ErrorKind::ParameterRange: return "parameter-range";
    case ErrorKind::IndexOutOfRange: return "index-out-of-range";
    case ErrorKind::NotZeroSum: return "not-zero-sum";
    case ErrorKind::Overflow: return "overflow";
    case ErrorKind::BadFormat: return "bad-format";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

int GraphWithBoundary::max_degree() const {
  int d = 0;
  for (const auto& nbrs : adjacency_) d = std::max(d, static_cast<int>(nbrs.size()));
  return d;
}

bool GraphWithBoundary::has_edge(int u, int v) const {
  if (u < 0 || u >= vertex_count() || v < 0 || v >= vertex_count()) return false;
  const auto& nbrs = adjacency_[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<Edge> GraphWithBoundary::edge_list() const {
  std::vector<Edge> edges;
  edges.reserve(edge_count_);
  for (int u = 0; u < vertex_count(); ++u)
    for (int v : adjacency_[u])
      if (u < v) edges.emplace_back(u, v);
  return edges;
}

namespace {

// Adjacency lists (sorted, duplicate-free) from an edge list over dense ids.
// A vertex id that never appears leaves an empty list, caught later by the
// connectivity check.
std::vector<std::vector<int>> adjacency_from_edges(const std::vector<Edge>& edges) {
  int n = 0;
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0) fail(ErrorKind::BadFormat, "negative vertex id in edge list");
    n = std::max(n, std::max(u, v) + 1);
  }
  std::vector<std::vector<int>> adj(n);
  for (const auto& [u, v] : edges) {
    if (u == v) fail(ErrorKind::NonSimple, "self-loop at vertex " + std::to_string(u));
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (int u = 0; u < n; ++u) {
    auto& nbrs = adj[u];
    std::sort(nbrs.begin(), nbrs.end());
    if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end())
      fail(ErrorKind::NonSimple, "parallel edge at vertex " + std::to_string(u));
  }
  return adj;
}

bool is_connected(const std::vector<std::vector<int>>& adj) {
  int n = static_cast<int>(adj.size());
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int visited = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++visited;
        stack.push_back(v);
      }
    }
  }
  return visited == n;
}

}  // namespace

GraphWithBoundary build_graph(const std::vector<Edge>& edges,
                              std::vector<int> boundary) {
  auto adj = adjacency_from_edges(edges);
  int n = static_cast<int>(adj.size());
  if (n < 2) fail(ErrorKind::TooSmall, "graph needs at least two vertices");
  if (!is_connected(adj)) fail(ErrorKind::Disconnected, "graph is not connected");

  std::sort(boundary.begin(), boundary.end());
  boundary.erase(std::unique(boundary.begin(), boundary.end()), boundary.end());
  if (boundary.empty()) fail(ErrorKind::EmptyBoundary, "boundary set is empty");
  for (int v : boundary)
    if (v < 0 || v >= n)
      fail(ErrorKind::InvalidVertex, "boundary vertex " + std::to_string(v) + " out of range");
  if (static_cast<int>(boundary.size()) == n)
    fail(ErrorKind::NoInterior, "boundary covers every vertex");

  GraphWithBoundary g;
  g.adjacency_ = std::move(adj);
  g.edge_count_ = static_cast<int>(edges.size());
  g.boundary_ = std::move(boundary);
  g.boundary_index_.assign(n, -1);
  g.interior_index_.assign(n, -1);
  for (int i = 0; i < static_cast<int>(g.boundary_.size()); ++i)
    g.boundary_index_[g.boundary_[i]] = i;
  for (int v = 0; v < n; ++v)
    if (g.boundary_index_[v] < 0) {
      g.interior_index_[v] = static_cast<int>(g.interior_.size());
      g.interior_.push_back(v);
    }
  for (int b : g.boundary_) {
    for (int w : g.adjacency_[b])
      if (g.boundary_index_[w] >= 0) {
        g.boundary_adjacent_ = true;
        break;
      }
    if (g.boundary_adjacent_) break;
  }
  return g;
}

TreeWithLeafBoundary build_tree(const std::vector<Edge>& edges) {
  auto adj = adjacency_from_edges(edges);
  int n = static_cast<int>(adj.size());
  if (n == 0) fail(ErrorKind::TooSmall, "empty edge list");
  if (!is_connected(adj)) fail(ErrorKind::Disconnected, "tree input is not connected");
  if (static_cast<int>(edges.size()) != n - 1)
    fail(ErrorKind::Cyclic, "connected graph with " + std::to_string(edges.size()) +
                                " edges on " + std::to_string(n) + " vertices has a cycle");
  if (n < 3) fail(ErrorKind::TooSmall, "tree needs at least three vertices");

  std::vector<int> leaves;
  for (int v = 0; v < n; ++v)
    if (adj[v].size() == 1) leaves.push_back(v);
  return TreeWithLeafBoundary(build_graph(edges, std::move(leaves)));
}

ComponentSplit components_after_removal(const TreeWithLeafBoundary& tree, int v) {
  const GraphWithBoundary& g = tree.graph();
  int n = g.vertex_count();
  if (v < 0 || v >= n) fail(ErrorKind::InvalidVertex, "vertex " + std::to_string(v) + " out of range");

  ComponentSplit split;
  split.removed = v;
  std::vector<char> seen(n, 0);
  seen[v] = 1;
  for (int start : g.neighbors(v)) {
    std::vector<int> comp;
    std::vector<int> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (int w : g.neighbors(u))
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    int leaves = 0;
    for (int u : comp)
      if (g.is_boundary(u)) ++leaves;
    split.components.push_back(std::move(comp));
    split.leaf_counts.push_back(leaves);
  }
  return split;
}

int leaf_centroid(const TreeWithLeafBoundary& tree) {
  const GraphWithBoundary& g = tree.graph();
  int ell = g.boundary_size();
  for (int v : g.interior()) {
    auto split = components_after_removal(tree, v);
    bool ok = true;
    for (int c : split.leaf_counts)
      if (2 * c > ell) {
        ok = false;
        break;
      }
    if (ok) return v;
  }
  fail(ErrorKind::Internal, "no interior vertex balances the leaves");
}

namespace {

// AHU encoding of the subtree rooted at v, child codes sorted. Equal codes
// iff the rooted trees are isomorphic.
std::string ahu_code(const GraphWithBoundary& g, int v, int parent) {
  std::vector<std::string> child_codes;
  for (int w : g.neighbors(v))
    if (w != parent) child_codes.push_back(ahu_code(g, w, v));
  std::sort(child_codes.begin(), child_codes.end());
  std::string code = "(";
  for (const auto& c : child_codes) code += c;
  code += ")";
  return code;
}

// Size centroid(s): one vertex, or two adjacent vertices when n is even and
// the tree splits evenly across an edge.
std::vector<int> size_centroids(const GraphWithBoundary& g) {
  int n = g.vertex_count();
  std::vector<int> subtree(n, 1);
  std::vector<int> order;
  std::vector<int> parent(n, -1);
  std::vector<int> stack{0};
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    order.push_back(u);
    for (int w : g.neighbors(u))
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = u;
        stack.push_back(w);
      }
  }
  for (int i = n - 1; i > 0; --i) subtree[parent[order[i]]] += subtree[order[i]];

  std::vector<int> centroids;
  for (int v = 0; v < n; ++v) {
    int heaviest = n - subtree[v];
    for (int w : g.neighbors(v))
      if (parent[w] == v) heaviest = std::max(heaviest, subtree[w]);
    if (2 * heaviest <= n) centroids.push_back(v);
  }
  return centroids;
}

}  // namespace

std::string canonical_form(const TreeWithLeafBoundary& tree) {
  const GraphWithBoundary& g = tree.graph();
  auto centroids = size_centroids(g);
  std::string best;
  for (int c : centroids) {
    std::string code = ahu_code(g, c, -1);
    if (best.empty() || code < best) best = std::move(code);
  }
  return best;
}

int canonical_root(const TreeWithLeafBoundary& tree) {
  const GraphWithBoundary& g = tree.graph();
  auto centroids = size_centroids(g);
  int root = centroids[0];
  std::string best = ahu_code(g, root, -1);
  for (size_t i = 1; i < centroids.size(); ++i) {
    std::string code = ahu_code(g, centroids[i], -1);
    if (code < best) {
      best = std::move(code);
      root = centroids[i];
    }
  }
  return root;
}

// --- text format -----------------------------------------------------------

ParsedGraphText parse_graph_text(std::istream& in) {
  ParsedGraphText parsed;
  std::string line;
  long n = -1, m = -1;
  long edges_read = 0;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;  // blank line

    if (first == "boundary:") {
      std::vector<int> boundary;
      int v;
      while (ls >> v) boundary.push_back(v);
      if (ls.fail() && !ls.eof()) fail(ErrorKind::BadFormat, "bad boundary line");
      parsed.boundary = std::move(boundary);
      continue;
    }

    long a, b;
    std::istringstream nums(line);
    if (!(nums >> a >> b)) fail(ErrorKind::BadFormat, "expected two integers: " + line);
    std::string trailing;
    if (nums >> trailing) fail(ErrorKind::BadFormat, "trailing tokens: " + line);

    if (n < 0) {
      n = a;
      m = b;
      if (n < 0 || m < 0) fail(ErrorKind::BadFormat, "negative counts in header");
    } else {
      if (edges_read == m) fail(ErrorKind::BadFormat, "more edges than declared");
      parsed.edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
      ++edges_read;
    }
  }
  if (n < 0) fail(ErrorKind::BadFormat, "missing header line");
  if (edges_read != m) fail(ErrorKind::BadFormat, "fewer edges than declared");
  for (const auto& [u, v] : parsed.edges)
    if (u < 0 || u >= n || v < 0 || v >= n)
      fail(ErrorKind::BadFormat, "edge endpoint outside [0, n)");
  if (parsed.boundary)
    for (int v : *parsed.boundary)
      if (v < 0 || v >= n) fail(ErrorKind::BadFormat, "boundary vertex outside [0, n)");
  return parsed;
}

ParsedGraphText parse_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::BadFormat, "cannot open file: " + path);
  return parse_graph_text(in);
}

GraphWithBoundary graph_from_text(const ParsedGraphText& parsed) {
  if (parsed.boundary) return build_graph(parsed.edges, *parsed.boundary);
  return build_tree(parsed.edges).graph();
}

TreeWithLeafBoundary tree_from_text(const ParsedGraphText& parsed) {
  auto tree = build_tree(parsed.edges);
  if (parsed.boundary) {
    std::vector<int> given = *parsed.boundary;
    std::sort(given.begin(), given.end());
    given.erase(std::unique(given.begin(), given.end()), given.end());
    if (given != tree.leaves())
      fail(ErrorKind::BadFormat, "explicit boundary differs from the leaf set");
  }
  return tree;
}

std::string write_graph_text(const GraphWithBoundary& g) {
  std::ostringstream out;
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edge_list()) out << u << ' ' << v << '\n';
  out << "boundary:";
  for (int b : g.boundary()) out << ' ' << b;
  out << '\n';
  return out.str();
}

std::string write_tree_text(const TreeWithLeafBoundary& tree) {
  const GraphWithBoundary& g = tree.graph();
  std::ostringstream out;
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edge_list()) out << u << ' ' << v << '\n';
  return out.str();
}

}  // namespace steklov
