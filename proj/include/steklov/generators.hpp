#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "steklov/graph.hpp"

namespace steklov {

/// Enumeration of unlabeled free trees on a fixed vertex count via canonical
/// level sequences, using the Wright-Richmond-Odlyzko-McKay successor with
/// the Beyer-Hedetniemi rooted-tree step. Exactly one representative per
/// isomorphism class, constant amortized time per tree.
class FreeTreeStream {
 public:
  /// order >= 3. Counts grow fast; enumerate_free_trees guards the range
  /// callers should use.
  explicit FreeTreeStream(int order);

  /// Advances to the next tree; false once exhausted.
  bool next();

  /// Depth of each vertex in the current canonical rooting; parent of vertex
  /// i > 0 is the nearest previous vertex one level up.
  const std::vector<int>& level_sequence() const { return current_; }
  std::vector<Edge> edges() const;
  TreeWithLeafBoundary tree() const;

 private:
  std::vector<int> layout_;
  std::vector<int> current_;
  bool exhausted_ = false;
};

/// Per-vertex degrees of the tree a level sequence encodes.
std::vector<int> level_sequence_degrees(const std::vector<int>& layout);

/// Calls visit once per unlabeled tree on n vertices. 3 <= n <= 18.
void enumerate_free_trees(int n,
                          const std::function<void(const TreeWithLeafBoundary&)>& visit);

/// Unlabeled trees with exactly `leaves` leaves and every interior degree in
/// [3, max_degree], one per isomorphism class. Such trees have between
/// leaves+1 and 2*leaves-2 vertices; the stream walks those orders in turn.
class SeriesReducedStream {
 public:
  SeriesReducedStream(int leaves, int max_degree);

  bool next();
  const TreeWithLeafBoundary& tree() const;

 private:
  int leaves_;
  int max_degree_;
  int order_;
  std::optional<FreeTreeStream> inner_;
  std::optional<TreeWithLeafBoundary> current_;
};

void enumerate_series_reduced(
    int leaves, int max_degree,
    const std::function<void(const TreeWithLeafBoundary&)>& visit);

/// Star K_{1,leaves} with the center as vertex 0. leaves >= 3.
TreeWithLeafBoundary star(int leaves);

/// Path with `edge_count` edges, vertices 0..edge_count in order. Needs
/// edge_count >= 2 for the same reason.
TreeWithLeafBoundary path(int edge_count);

/// Complete m-ary tree of height h: the level-regular tree of the constant
/// sequence. m >= 2, h >= 1.
TreeWithLeafBoundary complete_m_ary(std::int64_t m, int h);

/// Balanced minimum-height tree with `leaves` leaves and max degree
/// max_degree: a node assigned c leaves splits c as evenly as possible into
/// min(c, budget) parts, larger parts first; children get budget
/// max_degree - 1, the root gets max_degree. Vertices numbered in preorder.
/// leaves >= 2, max_degree >= 3.
TreeWithLeafBoundary balanced_min_height(int leaves, int max_degree);

/// Random variant of the same recursion: the part count is uniform on
/// [2, min(c, budget)] and the composition uniform over compositions of c
/// into that many positive parts. Deterministic in seed; always exactly
/// `leaves` leaves and max degree <= max_degree.
TreeWithLeafBoundary random_leaf_split_tree(int leaves, int max_degree,
                                            std::uint64_t seed);

/// True when text names a tree family rather than a file: it starts with one
/// of the known family prefixes ("star:", "path:", "mary:", "levelreg:",
/// "tbstar:", "random:").
bool is_family_spec(const std::string& text);

/// Builds the named tree: star:5, path:4, mary:2,3, levelreg:3,2, tbstar:8,3,
/// random:20,3,seed=7. A random spec without seed= uses default_seed.
TreeWithLeafBoundary make_family(const std::string& spec,
                                 std::uint64_t default_seed = 0);

}  // namespace steklov
