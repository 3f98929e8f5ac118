#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "steklov/levelreg.hpp"
#include "steklov/spectral.hpp"

using namespace steklov;

namespace {

bool throws_kind(const std::function<void()>& fn, ErrorKind want) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == want;
  }
  return false;
}

// First vertex id at the given depth under the breadth-first layout.
std::int64_t depth_offset(const BranchingSequence& m, int depth) {
  std::int64_t off = 0;
  for (int d = 0; d < depth; ++d) off += m.vertices_at_depth(d);
  return off;
}

// All sequences with entries in [1, max_m], height h, and a branching root.
void each_sequence(int h, int max_m,
                   const std::function<void(const BranchingSequence&)>& visit) {
  std::vector<std::int64_t> values(h, 1);
  values[0] = 2;
  for (;;) {
    visit(BranchingSequence(values));
    int pos = h - 1;
    while (pos >= 0) {
      std::int64_t lo = pos == 0 ? 2 : 1;
      if (values[pos] < max_m) {
        ++values[pos];
        break;
      }
      values[pos] = lo;
      --pos;
    }
    if (pos < 0) return;
  }
}

}  // namespace

TEST_CASE("branching sequence validation") {
  CHECK_NOTHROW(BranchingSequence({2}));
  CHECK_NOTHROW(BranchingSequence({2, 1, 3}));
  CHECK(throws_kind([] { BranchingSequence({}); }, ErrorKind::ParameterRange));
  CHECK(throws_kind([] { BranchingSequence({1}); }, ErrorKind::ParameterRange));
  CHECK(throws_kind([] { BranchingSequence({1, 2}); }, ErrorKind::ParameterRange));
  CHECK(throws_kind([] { BranchingSequence({2, 0}); }, ErrorKind::ParameterRange));
  CHECK(throws_kind([] { BranchingSequence({3, -1}); }, ErrorKind::ParameterRange));
}

TEST_CASE("branching sequence parsing") {
  auto m = BranchingSequence::parse("3,2");
  CHECK(m.values() == std::vector<std::int64_t>{3, 2});
  CHECK(m.to_string() == "3,2");
  CHECK(throws_kind([] { BranchingSequence::parse(""); }, ErrorKind::BadFormat));
  CHECK(throws_kind([] { BranchingSequence::parse("3,,2"); }, ErrorKind::BadFormat));
  CHECK(throws_kind([] { BranchingSequence::parse("3,x"); }, ErrorKind::BadFormat));
  CHECK(throws_kind([] { BranchingSequence::parse("99999999999999999999"); },
                    ErrorKind::BadFormat));
}

TEST_CASE("level counts") {
  BranchingSequence m({3, 2});
  CHECK(m.height() == 2);
  CHECK(m.vertices_at_depth(0) == 1);
  CHECK(m.vertices_at_depth(1) == 3);
  CHECK(m.vertices_at_depth(2) == 6);
  CHECK(m.leaf_count() == 6);
  CHECK(m.vertex_count() == 10);

  BranchingSequence m2({2, 3});
  CHECK(m2.vertex_count() == 9);
  CHECK(m2.leaf_count() == 6);
}

TEST_CASE("build_level_regular produces the breadth-first layout") {
  BranchingSequence m({3, 2});
  auto t = build_level_regular(m);
  const auto& g = t.graph();
  CHECK(g.vertex_count() == 10);
  CHECK(t.leaf_count() == 6);
  CHECK(g.degree(0) == 3);
  for (int v = 1; v <= 3; ++v) CHECK(g.degree(v) == 3);
  for (int v = 4; v <= 9; ++v) CHECK(g.degree(v) == 1);
  // Child c of the i-th depth-1 vertex sits at offset(2) + 2i + c.
  for (int i = 0; i < 3; ++i)
    for (int c = 0; c < 2; ++c) CHECK(g.has_edge(1 + i, 4 + 2 * i + c));

  auto k13 = build_level_regular(BranchingSequence({3}));
  CHECK(k13.graph().vertex_count() == 4);
  CHECK(k13.leaf_count() == 3);
}

TEST_CASE("unit branching levels act as 2-stretches") {
  auto t = build_level_regular(BranchingSequence({2, 1}));
  const auto& g = t.graph();
  CHECK(g.vertex_count() == 5);
  CHECK(t.leaf_count() == 2);
  CHECK(g.degree(1) == 2);
  CHECK(g.degree(2) == 2);
}

TEST_CASE("mu values are exact") {
  BranchingSequence m({3, 2});
  Rational r1 = mu_j(m, 1);
  CHECK(r1.num == 1);
  CHECK(r1.den == 1);
  Rational r2 = mu_j(m, 2);
  CHECK(r2.num == 1);
  CHECK(r2.den == 3);

  Rational r3 = mu_j(BranchingSequence({2, 2, 2}), 3);
  CHECK(r3.num == 1);
  CHECK(r3.den == 7);

  CHECK(throws_kind([&] { mu_j(m, 0); }, ErrorKind::IndexOutOfRange));
  CHECK(throws_kind([&] { mu_j(m, 3); }, ErrorKind::IndexOutOfRange));
}

TEST_CASE("mu decreases strictly in j") {
  for (auto values : std::vector<std::vector<std::int64_t>>{
           {2, 2, 2, 2}, {4, 1, 3}, {2, 1, 1, 5}, {3, 2}}) {
    BranchingSequence m(values);
    double prev = 2;
    for (int j = 1; j <= m.height(); ++j) {
      double mu = mu_j(m, j).real();
      CHECK(mu < prev);
      prev = mu;
    }
  }
}

TEST_CASE("closed-form spectra of the worked examples") {
  Spectrum s = closed_form_spectrum(BranchingSequence({3, 2}));
  REQUIRE(s.groups.size() == 3);
  CHECK(s.groups[0].value == 0);
  CHECK(s.groups[0].multiplicity == 1);
  CHECK(s.groups[1].value == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(s.groups[1].multiplicity == 2);
  CHECK(s.groups[2].value == 1);
  CHECK(s.groups[2].multiplicity == 3);

  Spectrum s2 = closed_form_spectrum(BranchingSequence({2, 3}));
  REQUIRE(s2.groups.size() == 3);
  CHECK(s2.groups[1].value == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(s2.groups[1].multiplicity == 1);
  CHECK(s2.groups[2].multiplicity == 4);

  Spectrum s3 = closed_form_spectrum(BranchingSequence({2, 2}));
  CHECK(s3.size() == 4);
  CHECK(s3.lambda(2) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("constant sequences give the geometric-series gap") {
  for (int m = 2; m <= 5; ++m)
    for (int h = 1; h <= 3; ++h) {
      BranchingSequence seq(std::vector<std::int64_t>(h, m));
      Spectrum s = closed_form_spectrum(seq);
      double want = (m - 1.0) / (std::pow(m, h) - 1.0);
      CHECK(std::abs(s.lambda(2) - want) < 1e-12);
    }
}

TEST_CASE("multiplicities always fill the boundary") {
  each_sequence(3, 3, [](const BranchingSequence& m) {
    Spectrum s = closed_form_spectrum(m);
    int total = 0;
    for (const auto& grp : s.groups) total += grp.multiplicity;
    CHECK(total == m.leaf_count());
    CHECK(s.size() == m.leaf_count());
  });
}

TEST_CASE("closed form agrees with the numeric spectrum") {
  for (int h = 1; h <= 3; ++h)
    each_sequence(h, 3, [](const BranchingSequence& m) {
      Spectrum closed = closed_form_spectrum(m);
      Spectrum numeric = steklov_spectrum(build_level_regular(m).graph());
      REQUIRE(closed.size() == numeric.size());
      for (int i = 1; i <= closed.size(); ++i)
        CHECK(std::abs(closed.lambda(i) - numeric.lambda(i)) < 1e-9);
      REQUIRE(closed.groups.size() == numeric.groups.size());
      for (size_t i = 0; i < closed.groups.size(); ++i) {
        CHECK(closed.groups[i].multiplicity == numeric.groups[i].multiplicity);
        CHECK(std::abs(closed.groups[i].value - numeric.groups[i].value) < 1e-9);
      }
    });
}

TEST_CASE("branch flux closed form") {
  CHECK(branch_flux_rho({}).num == 1);
  CHECK(branch_flux_rho({}).den == 1);
  CHECK(branch_flux_rho({2}).den == 3);
  CHECK(branch_flux_rho({2, 2}).den == 7);
  CHECK(branch_flux_rho({3, 2}).den == 9);

  // mu_j is rho of the last j-1 branching counts.
  BranchingSequence m({4, 3, 2});
  for (int j = 1; j <= 3; ++j) {
    std::vector<std::int64_t> tail(m.values().end() - (j - 1), m.values().end());
    Rational viaRho = branch_flux_rho(tail);
    Rational direct = mu_j(m, j);
    CHECK(viaRho.num == direct.num);
    CHECK(viaRho.den == direct.den);
  }
}

TEST_CASE("branch flux matches a direct potential solve") {
  // Glue the branch root to an extra grounded vertex p, hold every leaf at 1,
  // and read the outward flux at a leaf.
  for (auto b : std::vector<std::vector<std::int64_t>>{{2}, {3}, {2, 2}, {3, 2}, {2, 3}}) {
    BranchingSequence seq(b);
    auto branch = build_level_regular(seq);
    auto edges = branch.edge_list();
    int n = branch.graph().vertex_count();
    int p = n;
    edges.emplace_back(0, p);
    std::vector<int> boundary{p};
    for (int leaf : branch.leaves()) boundary.push_back(leaf);
    auto g = build_graph(edges, boundary);
    Vector data = Vector::Ones(g.boundary_size());
    data(g.boundary_index(p)) = 0;
    VertexFunction f = harmonic_extension(g, data);
    int leaf = branch.leaves().front();
    double flux = normal_derivative(g, f, leaf);
    CHECK(std::abs(flux - branch_flux_rho(b).real()) < 1e-12);
  }
}

TEST_CASE("eigenfunction boundary data hits the closed-form eigenvalue") {
  BranchingSequence m({3, 2});
  auto t = build_level_regular(m);
  DtNMatrix dtn = dtn_matrix(t.graph());

  for (int j = 1; j <= 2; ++j) {
    std::int64_t block = m.vertices_at_depth(m.height() - j);
    std::int64_t fan = m.branching(m.height() - j);
    for (std::int64_t v = 0; v < block; ++v) {
      std::vector<Real> alpha(fan, 0.0);
      alpha[0] = 1.0;
      alpha[1] = -1.0;
      BoundaryData g = eigenfunction_boundary_data(m, j, v, alpha);
      double mu = mu_j(m, j).real();
      Vector residual = dtn * g - mu * g;
      CHECK(residual.cwiseAbs().maxCoeff() < 1e-9);
      // The extension vanishes at the chosen vertex.
      VertexFunction f = harmonic_extension(t.graph(), g);
      std::int64_t vertex = depth_offset(m, m.height() - j) + v;
      CHECK(std::abs(f(static_cast<int>(vertex))) < 1e-10);
    }
  }
}

TEST_CASE("eigenfunction spans have full closed-form rank") {
  BranchingSequence m({3, 2});
  auto expected_rank = [&](int j) {
    return (m.branching(m.height() - j) - 1) * m.vertices_at_depth(m.height() - j);
  };
  for (int j = 1; j <= 2; ++j) {
    std::int64_t block = m.vertices_at_depth(m.height() - j);
    std::int64_t fan = m.branching(m.height() - j);
    std::vector<Vector> rows;
    for (std::int64_t v = 0; v < block; ++v)
      for (std::int64_t c = 1; c < fan; ++c) {
        std::vector<Real> alpha(fan, 0.0);
        alpha[0] = 1.0;
        alpha[c] = -1.0;
        rows.push_back(eigenfunction_boundary_data(m, j, v, alpha));
      }
    Matrix stacked(static_cast<int>(rows.size()), m.leaf_count());
    for (size_t i = 0; i < rows.size(); ++i) stacked.row(static_cast<int>(i)) = rows[i];
    Eigen::FullPivLU<Matrix> lu(stacked);
    lu.setThreshold(1e-9);
    CHECK(lu.rank() == expected_rank(j));
  }
}

TEST_CASE("eigenfunction data rejects bad inputs") {
  BranchingSequence m({3, 2});
  CHECK(throws_kind([&] { eigenfunction_boundary_data(m, 3, 0, {1, -1}); },
                    ErrorKind::IndexOutOfRange));
  CHECK(throws_kind([&] { eigenfunction_boundary_data(m, 1, 5, {1, -1}); },
                    ErrorKind::IndexOutOfRange));
  CHECK(throws_kind([&] { eigenfunction_boundary_data(m, 1, 0, {1, -1, 0}); },
                    ErrorKind::IndexOutOfRange));
  CHECK(throws_kind([&] { eigenfunction_boundary_data(m, 1, 0, {0, 0}); },
                    ErrorKind::ZeroBoundaryData));
  CHECK(throws_kind([&] { eigenfunction_boundary_data(m, 1, 0, {1, 1}); },
                    ErrorKind::NotZeroSum));
}

TEST_CASE("overflow and size guards") {
  std::vector<std::int64_t> huge(30, 8);
  BranchingSequence m(huge);
  CHECK(throws_kind([&] { m.leaf_count(); }, ErrorKind::Overflow));
  CHECK(throws_kind([] { build_level_regular(BranchingSequence({1000, 1000})); },
                    ErrorKind::ParameterRange));
}
