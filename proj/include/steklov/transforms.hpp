#pragma once

#include "steklov/graph.hpp"

namespace steklov {

struct StretchSpec {
  Edge edge;
  int length = 1;
};

/// Replaces edge {u, v} by a path of `length` edges through `length - 1` new
/// interior vertices (ids appended after the existing ones, in order from the
/// u side). length == 1 returns the input unchanged. Every Steklov eigenvalue
/// is non-increasing under this operation.
GraphWithBoundary stretch_edge(const GraphWithBoundary& g, const StretchSpec& spec);
TreeWithLeafBoundary stretch_edge(const TreeWithLeafBoundary& tree,
                                  const StretchSpec& spec);

/// Removes an interior degree-2 vertex x, joining its two neighbors directly.
/// Ids above x shift down by one. Rejects a contraction that would merge an
/// existing edge into a parallel edge or leave fewer than three vertices.
/// Every Steklov eigenvalue is non-decreasing under this operation.
TreeWithLeafBoundary contract_degree2(const TreeWithLeafBoundary& tree, int x);

/// Contracts interior degree-2 vertices (smallest id first) until none
/// remain. Fails on paths, whose reduction would collapse to a single edge.
TreeWithLeafBoundary series_reduce(const TreeWithLeafBoundary& tree);

}  // namespace steklov
