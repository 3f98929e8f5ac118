#pragma once

#include <string>
#include <vector>

#include "steklov/graph.hpp"
#include "steklov/types.hpp"

namespace steklov {

/// Eigenvalues closer together than this are reported as one group.
inline constexpr Real kGroupTol = 1e-9;

/// Graph Laplacian split by the boundary/interior partition. Row and column
/// order inside each block follows boundary_index / interior_index.
struct LaplacianBlocks {
  Matrix bb;
  Matrix bi;
  Matrix ib;
  Matrix ii;

  /// Whole Laplacian in boundary-first vertex order.
  Matrix full() const;
};

LaplacianBlocks laplacian(const GraphWithBoundary& g);

/// Unique harmonic extension of boundary data g: (L f)_v = 0 at every
/// interior vertex, f = g on the boundary. Returned per vertex id.
VertexFunction harmonic_extension(const GraphWithBoundary& g,
                                  const BoundaryData& data);

/// Sum of (f(u) - f(v))^2 over edges.
Real dirichlet_energy(const GraphWithBoundary& g, const VertexFunction& f);

/// Normal derivative of f at boundary vertex x: sum of f(x) - f(w) over
/// neighbors w.
Real normal_derivative(const GraphWithBoundary& g, const VertexFunction& f, int x);

/// Dirichlet-to-Neumann matrix via the Schur complement onto the boundary
/// block (Kron reduction): bb - bi * ii^{-1} * ib. Symmetric positive
/// semidefinite with row sums zero.
DtNMatrix dtn_matrix(const GraphWithBoundary& g);

struct SpectrumGroup {
  Real value = 0;
  int multiplicity = 0;
};

/// Steklov spectrum: eigenvalues ascending with multiplicity, plus grouped
/// (value, multiplicity) pairs for near-equal eigenvalues.
struct Spectrum {
  Vector eigenvalues;
  std::vector<SpectrumGroup> groups;

  /// k-th smallest eigenvalue, 1-based, so lambda(1) == 0.
  Real lambda(int k) const;
  Real lambda2() const { return lambda(2); }
  int size() const { return static_cast<int>(eigenvalues.size()); }
};

/// Sorts, clamps tiny negatives from finite-precision solves to zero, and
/// groups near-equal values (anchored at the first value of each group, the
/// group value is the mean).
Spectrum spectrum_from_eigenvalues(Vector values);

Spectrum steklov_spectrum(const GraphWithBoundary& g);

/// Eigenvalues ascending plus matching orthonormal eigenvectors as columns,
/// indexed by boundary position.
struct EigenPairs {
  Vector values;
  Matrix vectors;
};

EigenPairs steklov_eigenpairs(const GraphWithBoundary& g);

/// Dirichlet energy of the harmonic extension of g over the squared boundary
/// norm of g. Rejects all-zero data.
Real rayleigh_quotient(const GraphWithBoundary& g, const BoundaryData& data);

/// {"eigenvalues": [...], "groups": [{"value":..., "multiplicity":...}]}
/// with numbers at 12 significant digits.
std::string to_json(const Spectrum& spectrum);

}  // namespace steklov
