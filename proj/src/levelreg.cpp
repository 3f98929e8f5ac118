#include "steklov/levelreg.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace steklov {

namespace {

// build_level_regular materializes the whole tree; this keeps it in memory.
constexpr std::int64_t kMaxVertices = 1'000'000;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t result;
  if (__builtin_mul_overflow(a, b, &result))
    fail(ErrorKind::Overflow, "branching product overflows 64 bits");
  return result;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t result;
  if (__builtin_add_overflow(a, b, &result))
    fail(ErrorKind::Overflow, "branching sum overflows 64 bits");
  return result;
}

}  // namespace

BranchingSequence::BranchingSequence(std::vector<std::int64_t> m) : m_(std::move(m)) {
  if (m_.empty()) fail(ErrorKind::ParameterRange, "branching sequence is empty");
  for (auto v : m_)
    if (v < 1) fail(ErrorKind::ParameterRange, "branching counts must be >= 1");
  if (m_[0] < 2)
    fail(ErrorKind::ParameterRange, "root branching must be >= 2 to keep the root interior");
}

BranchingSequence BranchingSequence::parse(const std::string& text) {
  std::vector<std::int64_t> m;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    size_t pos = 0;
    std::int64_t value;
    try {
      value = std::stoll(token, &pos);
    } catch (const std::exception&) {
      fail(ErrorKind::BadFormat, "bad branching count: " + token);
    }
    while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos]))) ++pos;
    if (pos != token.size()) fail(ErrorKind::BadFormat, "bad branching count: " + token);
    m.push_back(value);
  }
  if (m.empty()) fail(ErrorKind::BadFormat, "empty branching sequence");
  return BranchingSequence(std::move(m));
}

std::int64_t BranchingSequence::branching(int depth) const {
  if (depth < 0 || depth >= height())
    fail(ErrorKind::IndexOutOfRange, "depth " + std::to_string(depth) + " outside [0, " +
                                         std::to_string(height()) + ")");
  return m_[depth];
}

std::int64_t BranchingSequence::vertices_at_depth(int d) const {
  if (d < 0 || d > height())
    fail(ErrorKind::IndexOutOfRange, "depth " + std::to_string(d) + " outside [0, " +
                                         std::to_string(height()) + "]");
  std::int64_t count = 1;
  for (int t = 0; t < d; ++t) count = checked_mul(count, m_[t]);
  return count;
}

std::int64_t BranchingSequence::vertex_count() const {
  std::int64_t total = 0;
  for (int d = 0; d <= height(); ++d) total = checked_add(total, vertices_at_depth(d));
  return total;
}

std::string BranchingSequence::to_string() const {
  std::ostringstream out;
  for (size_t i = 0; i < m_.size(); ++i) {
    if (i) out << ',';
    out << m_[i];
  }
  return out.str();
}

Rational mu_j(const BranchingSequence& m, int j) {
  int h = m.height();
  if (j < 1 || j > h)
    fail(ErrorKind::IndexOutOfRange,
         "eigenvalue index " + std::to_string(j) + " outside [1, " + std::to_string(h) + "]");
  // 1 + m_{h-1} + m_{h-2} m_{h-1} + ... + m_{h-j+1} ... m_{h-1}
  std::int64_t den = 1;
  std::int64_t product = 1;
  for (int i = 1; i <= j - 1; ++i) {
    product = checked_mul(product, m.branching(h - i));
    den = checked_add(den, product);
  }
  return Rational{1, den};
}

TreeWithLeafBoundary build_level_regular(const BranchingSequence& m) {
  std::int64_t total = m.vertex_count();
  if (total > kMaxVertices)
    fail(ErrorKind::ParameterRange,
         "level-regular tree has " + std::to_string(total) + " vertices; limit is " +
             std::to_string(kMaxVertices));

  int h = m.height();
  std::vector<std::int64_t> offset(h + 2, 0);
  for (int d = 0; d <= h; ++d) offset[d + 1] = offset[d] + m.vertices_at_depth(d);

  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(total - 1));
  for (int d = 0; d < h; ++d) {
    std::int64_t nd = m.vertices_at_depth(d);
    std::int64_t md = m.branching(d);
    for (std::int64_t i = 0; i < nd; ++i) {
      int parent = static_cast<int>(offset[d] + i);
      for (std::int64_t c = 0; c < md; ++c)
        edges.emplace_back(parent, static_cast<int>(offset[d + 1] + i * md + c));
    }
  }
  return build_tree(edges);
}

Spectrum closed_form_spectrum(const BranchingSequence& m) {
  std::int64_t leaves = m.leaf_count();
  if (leaves > kMaxVertices)
    fail(ErrorKind::ParameterRange, "spectrum would hold " + std::to_string(leaves) +
                                        " eigenvalues; limit is " +
                                        std::to_string(kMaxVertices));

  int h = m.height();
  Spectrum spectrum;
  spectrum.eigenvalues = Vector(leaves);
  spectrum.eigenvalues(0) = 0;
  spectrum.groups.push_back(SpectrumGroup{0.0, 1});

  // mu_j strictly decreases in j, so ascending order is j = h down to 1.
  std::int64_t pos = 1;
  for (int j = h; j >= 1; --j) {
    std::int64_t mult = checked_mul(m.branching(h - j) - 1, m.vertices_at_depth(h - j));
    if (mult == 0) continue;
    Real value = mu_j(m, j).real();
    for (std::int64_t i = 0; i < mult; ++i) spectrum.eigenvalues(pos++) = value;
    spectrum.groups.push_back(SpectrumGroup{value, static_cast<int>(mult)});
  }
  if (pos != leaves) fail(ErrorKind::Internal, "multiplicities do not sum to the leaf count");
  return spectrum;
}

Rational branch_flux_rho(const std::vector<std::int64_t>& b) {
  for (auto v : b)
    if (v < 1) fail(ErrorKind::ParameterRange, "branching counts must be >= 1");
  // 1 + sum over suffixes of the product of that suffix.
  std::int64_t den = 1;
  std::int64_t product = 1;
  for (auto it = b.rbegin(); it != b.rend(); ++it) {
    product = checked_mul(product, *it);
    den = checked_add(den, product);
  }
  return Rational{1, den};
}

BoundaryData eigenfunction_boundary_data(const BranchingSequence& m, int j,
                                         std::int64_t v_index,
                                         const std::vector<Real>& alpha) {
  int h = m.height();
  if (j < 1 || j > h)
    fail(ErrorKind::IndexOutOfRange,
         "eigenvalue index " + std::to_string(j) + " outside [1, " + std::to_string(h) + "]");
  int d = h - j;
  std::int64_t nd = m.vertices_at_depth(d);
  if (v_index < 0 || v_index >= nd)
    fail(ErrorKind::IndexOutOfRange, "vertex index " + std::to_string(v_index) +
                                         " outside [0, " + std::to_string(nd) + ")");
  std::int64_t md = m.branching(d);
  if (static_cast<std::int64_t>(alpha.size()) != md)
    fail(ErrorKind::IndexOutOfRange, "need one weight per child, got " +
                                         std::to_string(alpha.size()) + " for " +
                                         std::to_string(md));

  Real sum = 0, scale = 0;
  for (Real a : alpha) {
    sum += a;
    scale = std::max(scale, std::abs(a));
  }
  if (scale == 0) fail(ErrorKind::ZeroBoundaryData, "all weights are zero");
  if (std::abs(sum) > 1e-12 * scale * static_cast<Real>(alpha.size()))
    fail(ErrorKind::NotZeroSum, "weights must sum to zero");

  std::int64_t leaves = m.leaf_count();
  if (leaves > kMaxVertices)
    fail(ErrorKind::ParameterRange, "boundary data would hold " + std::to_string(leaves) +
                                        " entries; limit is " + std::to_string(kMaxVertices));

  // Leaves below one depth-(d+1) vertex form one contiguous block.
  std::int64_t block = leaves / m.vertices_at_depth(d + 1);
  BoundaryData data = BoundaryData::Zero(leaves);
  for (std::int64_t c = 0; c < md; ++c) {
    std::int64_t start = (v_index * md + c) * block;
    for (std::int64_t i = 0; i < block; ++i)
      data(start + i) = alpha[static_cast<size_t>(c)];
  }
  return data;
}

}  // namespace steklov
