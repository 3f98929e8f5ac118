#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "steklov/graph.hpp"
#include "steklov/rng.hpp"

namespace testutil {

// Prufer decoding: any sequence over [0, n) of length n - 2 is a labeled tree.
inline std::vector<steklov::Edge> prufer_tree(int n, steklov::SplitMix64& rng) {
  std::vector<int> seq(n - 2);
  for (auto& s : seq) s = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
  std::vector<int> deg(n, 1);
  for (int s : seq) ++deg[s];
  std::set<int> leaves;
  for (int v = 0; v < n; ++v)
    if (deg[v] == 1) leaves.insert(v);
  std::vector<steklov::Edge> edges;
  for (int s : seq) {
    int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    edges.emplace_back(leaf, s);
    if (--deg[s] == 1) leaves.insert(s);
  }
  int a = *leaves.begin();
  int b = *std::next(leaves.begin());
  edges.emplace_back(a, b);
  return edges;
}

inline steklov::TreeWithLeafBoundary random_tree(int n, steklov::SplitMix64& rng) {
  // A Prufer draw can make every vertex a leaf's neighbor; retry until some
  // vertex is interior with the leaf set nonempty (guaranteed for n >= 3).
  return steklov::build_tree(prufer_tree(n, rng));
}

// Applies a vertex permutation to the edge list.
inline std::vector<steklov::Edge> permute_edges(const std::vector<steklov::Edge>& edges,
                                                const std::vector<int>& perm) {
  std::vector<steklov::Edge> out;
  out.reserve(edges.size());
  for (const auto& [u, v] : edges) out.emplace_back(perm[u], perm[v]);
  return out;
}

inline std::vector<int> random_permutation(int n, steklov::SplitMix64& rng) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i + 1)));
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

inline Eigen::VectorXd random_boundary_data(int size, steklov::SplitMix64& rng) {
  Eigen::VectorXd g(size);
  for (int i = 0; i < size; ++i) g(i) = 2.0 * rng.unit() - 1.0;
  return g;
}

}  // namespace testutil
