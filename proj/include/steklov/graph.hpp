#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "steklov/types.hpp"

namespace steklov {

using Edge = std::pair<int, int>;

/// Simple connected undirected graph with a designated nonempty boundary
/// vertex set. Vertex ids are dense in [0, n). Immutable after construction.
class GraphWithBoundary {
 public:
  int vertex_count() const { return static_cast<int>(adjacency_.size()); }
  int edge_count() const { return edge_count_; }

  const std::vector<std::vector<int>>& adjacency() const { return adjacency_; }
  const std::vector<int>& neighbors(int v) const { return adjacency_.at(v); }
  int degree(int v) const { return static_cast<int>(adjacency_.at(v).size()); }
  int max_degree() const;

  const std::vector<int>& boundary() const { return boundary_; }
  const std::vector<int>& interior() const { return interior_; }
  int boundary_size() const { return static_cast<int>(boundary_.size()); }
  int interior_size() const { return static_cast<int>(interior_.size()); }

  bool is_boundary(int v) const { return boundary_index_.at(v) >= 0; }
  /// Position of v in the sorted boundary list, -1 for interior vertices.
  int boundary_index(int v) const { return boundary_index_.at(v); }
  /// Position of v in the sorted interior list, -1 for boundary vertices.
  int interior_index(int v) const { return interior_index_.at(v); }

  /// True when some pair of boundary vertices is joined by an edge.
  bool boundary_adjacent() const { return boundary_adjacent_; }

  bool has_edge(int u, int v) const;
  std::vector<Edge> edge_list() const;

 private:
  GraphWithBoundary() = default;
  friend GraphWithBoundary build_graph(const std::vector<Edge>& edges,
                                       std::vector<int> boundary);

  std::vector<std::vector<int>> adjacency_;
  std::vector<int> boundary_;
  std::vector<int> interior_;
  std::vector<int> boundary_index_;
  std::vector<int> interior_index_;
  bool boundary_adjacent_ = false;
  int edge_count_ = 0;
};

/// Validates and builds a graph with boundary. Vertex ids must be dense in
/// [0, n) with n inferred from the largest endpoint.
/// Fails with a distinct ErrorKind for: non-simple input, disconnected input,
/// empty boundary, and boundary covering every vertex.
GraphWithBoundary build_graph(const std::vector<Edge>& edges,
                              std::vector<int> boundary);

/// Tree whose boundary is exactly its leaf set. Invariants: n >= 3, connected,
/// |E| = n - 1, at least two leaves, no two leaves adjacent.
class TreeWithLeafBoundary {
 public:
  const GraphWithBoundary& graph() const { return graph_; }
  operator const GraphWithBoundary&() const { return graph_; }

  int vertex_count() const { return graph_.vertex_count(); }
  int leaf_count() const { return graph_.boundary_size(); }
  int max_degree() const { return graph_.max_degree(); }
  int degree(int v) const { return graph_.degree(v); }
  const std::vector<int>& leaves() const { return graph_.boundary(); }
  const std::vector<int>& neighbors(int v) const { return graph_.neighbors(v); }
  bool is_leaf(int v) const { return graph_.is_boundary(v); }
  std::vector<Edge> edge_list() const { return graph_.edge_list(); }

 private:
  explicit TreeWithLeafBoundary(GraphWithBoundary g) : graph_(std::move(g)) {}
  friend TreeWithLeafBoundary build_tree(const std::vector<Edge>& edges);

  GraphWithBoundary graph_;
};

/// Builds a tree with the degree-1 vertices as boundary. Distinct errors for
/// cyclic input, disconnected input, and n < 3.
TreeWithLeafBoundary build_tree(const std::vector<Edge>& edges);

/// Components of T minus one vertex, one per neighbor of the removed vertex
/// (in sorted neighbor order), with the boundary-leaf count of each.
struct ComponentSplit {
  int removed = -1;
  std::vector<std::vector<int>> components;
  std::vector<int> leaf_counts;
};

ComponentSplit components_after_removal(const TreeWithLeafBoundary& tree, int v);

/// Smallest-id interior vertex v such that every component of T minus v holds
/// at most half of the boundary leaves.
int leaf_centroid(const TreeWithLeafBoundary& tree);

/// Canonical string for the unlabeled tree: AHU encoding rooted at the size
/// centroid, taking the lexicographically smaller rooting when the tree is
/// bicentroidal. Equal strings iff the trees are isomorphic.
std::string canonical_form(const TreeWithLeafBoundary& tree);

// Vertex that becomes id 0 under the canonical relabeling: the size centroid
// whose rooted code is lexicographically smallest (smaller id on ties).
int canonical_root(const TreeWithLeafBoundary& tree);

// --- text format -----------------------------------------------------------
//
// First line `n m`, then m lines `u v`, then an optional final line
// `boundary: i j k ...`. Trees omit the boundary line (it defaults to the
// leaf set).

struct ParsedGraphText {
  std::vector<Edge> edges;
  std::optional<std::vector<int>> boundary;
};

ParsedGraphText parse_graph_text(std::istream& in);
ParsedGraphText parse_graph_file(const std::string& path);

/// Builds from parsed text: uses the explicit boundary when present, else the
/// leaf set of the tree.
GraphWithBoundary graph_from_text(const ParsedGraphText& parsed);
/// As above but requires the result to be a tree with leaf boundary.
TreeWithLeafBoundary tree_from_text(const ParsedGraphText& parsed);

std::string write_graph_text(const GraphWithBoundary& g);
std::string write_tree_text(const TreeWithLeafBoundary& tree);

}  // namespace steklov
