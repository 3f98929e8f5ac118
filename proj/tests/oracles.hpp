#pragma once

// Reference implementations kept deliberately naive and independent of the
// library internals: dense Laplacian assembled entry by entry, interior solve
// through column-pivoted QR, and the operator recovered one boundary
// indicator at a time.

#include <Eigen/Dense>

#include "steklov/graph.hpp"

namespace oracles {

inline Eigen::MatrixXd full_laplacian(const steklov::GraphWithBoundary& g) {
  int n = g.vertex_count();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (int v = 0; v < n; ++v) {
    lap(v, v) = static_cast<double>(g.degree(v));
    for (int w : g.neighbors(v)) lap(v, w) = -1.0;
  }
  return lap;
}

// Harmonic extension of prescribed boundary values, solved vertex-by-vertex
// on the full index set.
inline Eigen::VectorXd extend_harmonically(const steklov::GraphWithBoundary& g,
                                           const Eigen::VectorXd& boundary_values) {
  const auto& boundary = g.boundary();
  const auto& interior = g.interior();
  int ni = static_cast<int>(interior.size());
  Eigen::MatrixXd lap = full_laplacian(g);
  Eigen::MatrixXd a(ni, ni);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(ni);
  for (int i = 0; i < ni; ++i) {
    for (int j = 0; j < ni; ++j) a(i, j) = lap(interior[i], interior[j]);
    for (size_t b = 0; b < boundary.size(); ++b)
      rhs(i) -= lap(interior[i], boundary[b]) * boundary_values(static_cast<int>(b));
  }
  Eigen::VectorXd sol = a.colPivHouseholderQr().solve(rhs);
  Eigen::VectorXd full(g.vertex_count());
  for (size_t b = 0; b < boundary.size(); ++b)
    full(boundary[b]) = boundary_values(static_cast<int>(b));
  for (int i = 0; i < ni; ++i) full(interior[i]) = sol(i);
  return full;
}

// Column j of the operator is the outward flux of the harmonic extension of
// the j-th boundary indicator.
inline Eigen::MatrixXd dtn_reference(const steklov::GraphWithBoundary& g) {
  const auto& boundary = g.boundary();
  int nb = static_cast<int>(boundary.size());
  Eigen::MatrixXd dtn(nb, nb);
  for (int j = 0; j < nb; ++j) {
    Eigen::VectorXd indicator = Eigen::VectorXd::Zero(nb);
    indicator(j) = 1.0;
    Eigen::VectorXd f = extend_harmonically(g, indicator);
    for (int i = 0; i < nb; ++i) {
      int v = boundary[i];
      double flux = g.degree(v) * f(v);
      for (int w : g.neighbors(v)) flux -= f(w);
      dtn(i, j) = flux;
    }
  }
  return dtn;
}

inline double edge_energy(const steklov::GraphWithBoundary& g, const Eigen::VectorXd& f) {
  double total = 0;
  for (const auto& [u, v] : g.edge_list()) {
    double d = f(u) - f(v);
    total += d * d;
  }
  return total;
}

}  // namespace oracles
