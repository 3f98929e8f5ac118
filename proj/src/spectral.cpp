#include "steklov/spectral.hpp"

#include <algorithm>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "steklov/numfmt.hpp"

namespace steklov {

namespace {

// Eigenvalues of a DtN matrix sit in [0, 1] for the graphs handled here;
// anything below this is a solver artifact, anything more negative is a bug.
constexpr Real kNegativeClamp = -1e-10;

Eigen::LLT<Matrix> interior_solver(const LaplacianBlocks& blocks) {
  Eigen::LLT<Matrix> llt(blocks.ii);
  if (llt.info() != Eigen::Success)
    fail(ErrorKind::SingularSystem, "interior Laplacian block is not positive definite");
  return llt;
}

}  // namespace

Matrix LaplacianBlocks::full() const {
  int nb = static_cast<int>(bb.rows());
  int ni = static_cast<int>(ii.rows());
  Matrix L(nb + ni, nb + ni);
  L.topLeftCorner(nb, nb) = bb;
  L.topRightCorner(nb, ni) = bi;
  L.bottomLeftCorner(ni, nb) = ib;
  L.bottomRightCorner(ni, ni) = ii;
  return L;
}

LaplacianBlocks laplacian(const GraphWithBoundary& g) {
  int nb = g.boundary_size();
  int ni = g.interior_size();
  LaplacianBlocks blocks;
  blocks.bb = Matrix::Zero(nb, nb);
  blocks.bi = Matrix::Zero(nb, ni);
  blocks.ib = Matrix::Zero(ni, nb);
  blocks.ii = Matrix::Zero(ni, ni);

  auto entry = [&](int u, int v, Real value) {
    int bu = g.boundary_index(u), bv = g.boundary_index(v);
    if (bu >= 0 && bv >= 0)
      blocks.bb(bu, bv) += value;
    else if (bu >= 0)
      blocks.bi(bu, g.interior_index(v)) += value;
    else if (bv >= 0)
      blocks.ib(g.interior_index(u), bv) += value;
    else
      blocks.ii(g.interior_index(u), g.interior_index(v)) += value;
  };

  for (int u = 0; u < g.vertex_count(); ++u) {
    entry(u, u, static_cast<Real>(g.degree(u)));
    for (int v : g.neighbors(u)) entry(u, v, -1.0);
  }
  return blocks;
}

VertexFunction harmonic_extension(const GraphWithBoundary& g,
                                  const BoundaryData& data) {
  if (data.size() != g.boundary_size())
    fail(ErrorKind::IndexOutOfRange, "boundary data has wrong length");
  auto blocks = laplacian(g);
  auto llt = interior_solver(blocks);
  Vector interior = llt.solve(-blocks.ib * data);

  VertexFunction f(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    int b = g.boundary_index(v);
    f(v) = b >= 0 ? data(b) : interior(g.interior_index(v));
  }
  return f;
}

Real dirichlet_energy(const GraphWithBoundary& g, const VertexFunction& f) {
  if (f.size() != g.vertex_count())
    fail(ErrorKind::IndexOutOfRange, "vertex function has wrong length");
  Real energy = 0;
  for (int u = 0; u < g.vertex_count(); ++u)
    for (int v : g.neighbors(u))
      if (u < v) {
        Real d = f(u) - f(v);
        energy += d * d;
      }
  return energy;
}

Real normal_derivative(const GraphWithBoundary& g, const VertexFunction& f, int x) {
  if (f.size() != g.vertex_count())
    fail(ErrorKind::IndexOutOfRange, "vertex function has wrong length");
  if (x < 0 || x >= g.vertex_count() || !g.is_boundary(x))
    fail(ErrorKind::InvalidVertex, "normal derivative needs a boundary vertex");
  Real total = 0;
  for (int w : g.neighbors(x)) total += f(x) - f(w);
  return total;
}

DtNMatrix dtn_matrix(const GraphWithBoundary& g) {
  auto blocks = laplacian(g);
  auto llt = interior_solver(blocks);
  DtNMatrix dtn = blocks.bb - blocks.bi * llt.solve(blocks.ib);
  // Solver noise breaks exact symmetry; the spectrum code assumes it.
  dtn = ((dtn + dtn.transpose()) / 2).eval();
  return dtn;
}

Real Spectrum::lambda(int k) const {
  if (k < 1 || k > size())
    fail(ErrorKind::IndexOutOfRange, "eigenvalue index " + std::to_string(k) +
                                         " outside [1, " + std::to_string(size()) + "]");
  return eigenvalues(k - 1);
}

Spectrum spectrum_from_eigenvalues(Vector values) {
  std::sort(values.data(), values.data() + values.size());
  // The constant function is Steklov-harmonic, so 0 is always an eigenvalue;
  // values within the clamp window are numerical noise of that exact zero.
  for (int i = 0; i < static_cast<int>(values.size()); ++i) {
    if (values(i) < kNegativeClamp)
      fail(ErrorKind::Internal,
           "eigenvalue " + std::to_string(values(i)) + " below clamp range");
    if (values(i) <= -kNegativeClamp) values(i) = 0;
  }

  Spectrum spectrum;
  spectrum.eigenvalues = values;
  int n = static_cast<int>(values.size());
  int start = 0;
  while (start < n) {
    int end = start + 1;
    while (end < n && values(end) - values(start) <= kGroupTol) ++end;
    SpectrumGroup group;
    group.multiplicity = end - start;
    group.value = values.segment(start, end - start).mean();
    spectrum.groups.push_back(group);
    start = end;
  }
  return spectrum;
}

Spectrum steklov_spectrum(const GraphWithBoundary& g) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(dtn_matrix(g), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    fail(ErrorKind::Internal, "eigenvalue solve failed");
  return spectrum_from_eigenvalues(solver.eigenvalues());
}

EigenPairs steklov_eigenpairs(const GraphWithBoundary& g) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(dtn_matrix(g));
  if (solver.info() != Eigen::Success)
    fail(ErrorKind::Internal, "eigenvalue solve failed");
  return EigenPairs{solver.eigenvalues(), solver.eigenvectors()};
}

Real rayleigh_quotient(const GraphWithBoundary& g, const BoundaryData& data) {
  if (data.size() != g.boundary_size())
    fail(ErrorKind::IndexOutOfRange, "boundary data has wrong length");
  Real norm2 = data.squaredNorm();
  if (norm2 == 0) fail(ErrorKind::ZeroBoundaryData, "boundary data is identically zero");
  VertexFunction f = harmonic_extension(g, data);
  return dirichlet_energy(g, f) / norm2;
}

std::string to_json(const Spectrum& spectrum) {
  std::ostringstream out;
  out << "{\"eigenvalues\":[";
  for (int i = 0; i < spectrum.size(); ++i) {
    if (i) out << ',';
    out << format12(spectrum.eigenvalues(i));
  }
  out << "],\"groups\":[";
  for (size_t i = 0; i < spectrum.groups.size(); ++i) {
    if (i) out << ',';
    out << "{\"value\":" << format12(spectrum.groups[i].value)
        << ",\"multiplicity\":" << spectrum.groups[i].multiplicity << '}';
  }
  out << "]}";
  return out.str();
}

}  // namespace steklov
