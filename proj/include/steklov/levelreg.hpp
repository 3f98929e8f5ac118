#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "steklov/graph.hpp"
#include "steklov/spectral.hpp"
#include "steklov/types.hpp"

namespace steklov {

/// Branching counts (m_0, ..., m_{h-1}) of a level-regular tree of height h:
/// every vertex at depth d has m_d children. m_0 >= 2 keeps the root interior
/// and m_d >= 1 keeps every leaf at depth h.
class BranchingSequence {
 public:
  explicit BranchingSequence(std::vector<std::int64_t> m);
  /// Parses "3,2,4".
  static BranchingSequence parse(const std::string& text);

  int height() const { return static_cast<int>(m_.size()); }
  std::int64_t branching(int depth) const;
  const std::vector<std::int64_t>& values() const { return m_; }

  /// Number of vertices at depth d: the product m_0 * ... * m_{d-1}.
  std::int64_t vertices_at_depth(int d) const;
  std::int64_t leaf_count() const { return vertices_at_depth(height()); }
  std::int64_t vertex_count() const;

  std::string to_string() const;

 private:
  std::vector<std::int64_t> m_;
};

/// Exact nonnegative rational, used for closed-form eigenvalues.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Real real() const { return static_cast<Real>(num) / static_cast<Real>(den); }
};

/// j-th nonzero eigenvalue of the level-regular tree, exactly:
/// mu_j = 1 / (1 + sum_{i=1}^{j-1} m_{h-i} * m_{h-i+1} * ... * m_{h-1}),
/// for 1 <= j <= h. mu_1 = 1.
Rational mu_j(const BranchingSequence& m, int j);

/// BFS vertex layout, depth-major: depth d occupies a contiguous id block,
/// child c of the i-th vertex at depth d is vertex offset(d+1) + i*m_d + c.
TreeWithLeafBoundary build_level_regular(const BranchingSequence& m);

/// Full Steklov spectrum without touching a matrix: eigenvalue 0 once, and
/// mu_j with multiplicity (m_{h-j} - 1) * vertices_at_depth(h-j) for each j
/// (zero multiplicities omitted from groups). Eigenvalues ascending.
Spectrum closed_form_spectrum(const BranchingSequence& m);

/// rho(b_0, ..., b_{j-1}) = 1 / (1 + sum_{s=0}^{j-1} b_s * b_{s+1} * ... *
/// b_{j-1}); rho() = 1. The eigenvalue mu_j equals rho applied to the last j-1
/// branching counts.
Rational branch_flux_rho(const std::vector<std::int64_t>& b);

/// Boundary data of a mu_j eigenfunction: pick the vertex v_index at depth
/// h-j, assign weight alpha[c] to every leaf below its c-th child. The
/// weights must sum to zero and not all vanish.
BoundaryData eigenfunction_boundary_data(const BranchingSequence& m, int j,
                                         std::int64_t v_index,
                                         const std::vector<Real>& alpha);

}  // namespace steklov
