#pragma once

#include <string>
#include <variant>
#include <vector>

#include "steklov/graph.hpp"
#include "steklov/types.hpp"

namespace steklov {

enum class BoundKind {
  kCut,
  kTwoValue,
  kSharpDegreeOverLeaves,
  kLambdaKFormula,
};

const char* to_string(BoundKind kind);

/// Cut bound on lambda_2: crossing_edges / (p (1-p) leaf_count) where
/// p = boundary_in_set / leaf_count, for a vertex set S.
struct CutWitness {
  std::vector<int> set;
  int crossing_edges = 0;
  int boundary_in_set = 0;
};

/// Two-value bound on lambda_2: the harmonic candidate is constant on the
/// chosen component of T minus the vertex and a second constant elsewhere.
struct TwoValueWitness {
  int vertex = -1;
  int component = -1;
  int degree = 0;
  int component_leaves = 0;
};

/// Sharp bound lambda_2 <= max_degree / leaf_count, equality exactly on stars.
struct SharpWitness {
  int max_degree = 0;
  int leaf_count = 0;
  Real rho_ratio = 0;
  bool is_star = false;
};

/// lambda_k <= min{1, 16 max_degree k / leaf_count}.
struct FormulaWitness {
  int max_degree = 0;
  int k = 0;
  int leaf_count = 0;
};

struct BoundReport {
  BoundKind kind = BoundKind::kCut;
  Real value = 0;
  std::variant<CutWitness, TwoValueWitness, SharpWitness, FormulaWitness> witness;

  std::string to_json() const;
};

/// Rayleigh bound from the indicator of S (harmonically relaxed): lambda_2 <=
/// |E(S, V-S)| / (p (1-p) |boundary|) with p the fraction of boundary
/// vertices inside S. S must contain some but not all boundary vertices.
BoundReport cut_bound(const GraphWithBoundary& g, const std::vector<int>& set);

/// Bound from the component C of T minus v holding s of the l leaves, where v
/// has degree r: lambda_2 <= (r-1)/r * l / (s (l-s)). Needs 2s <= l.
BoundReport two_value_bound(const TreeWithLeafBoundary& tree, int vertex,
                            int component);

/// The two-value test function itself: 1 on the component's side of v,
/// -s/(l-s) scaled so the function is (1-(r-1)a)/r at v with a = s/(l-s).
/// Returned per vertex id; boundary values sum to zero.
VertexFunction two_value_extension(const TreeWithLeafBoundary& tree, int vertex,
                                   int component);

/// lambda_2 <= max_degree / leaf_count, with the equality check for stars.
/// Internally cross-checks that the two-value bound at the leaf centroid
/// already implies this value.
BoundReport sharp_bound_check(const TreeWithLeafBoundary& tree);

/// lambda_k <= min{1, 16 max_degree k / leaf_count} for 1 <= k <= leaf_count.
BoundReport lambda_k_formula(const TreeWithLeafBoundary& tree, int k);

/// Constructive certificate behind the lambda_k formula: a k-part family of
/// disjoint leaf-rich subtrees whose indicator test space has Rayleigh
/// quotient at most 2/t, where t = floor(l / (4 D k)).
struct PartitionCertificate {
  int k = 0;
  int threshold = 0;
  std::vector<std::vector<int>> components;
  std::vector<Edge> quotient_edges;
  std::vector<int> small_degree_set;
  std::vector<int> independent_set;
  std::vector<int> selected;
  Real rayleigh_bound = 0;

  std::string to_json() const;
};

/// Builds the certificate for lambda_k <= 16 D k / l. Requires l >= 4 D k so
/// the threshold t is at least 1.
PartitionCertificate lambda_k_certificate(const TreeWithLeafBoundary& tree, int k);

}  // namespace steklov
