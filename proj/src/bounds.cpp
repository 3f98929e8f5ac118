#include "steklov/bounds.hpp"

#include <algorithm>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "steklov/numfmt.hpp"
#include "steklov/spectral.hpp"

namespace steklov {

namespace {

std::string int_array(const std::vector<int>& values) {
  std::ostringstream out;
  out << '[';
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out << ',';
    out << values[i];
  }
  out << ']';
  return out.str();
}

}  // namespace

const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::kCut: return "cut";
    case BoundKind::kTwoValue: return "two-value";
    case BoundKind::kSharpDegreeOverLeaves: return "sharp";
    case BoundKind::kLambdaKFormula: return "k-formula";
  }
  return "unknown";
}

std::string BoundReport::to_json() const {
  std::ostringstream out;
  out << "{\"kind\":\"" << steklov::to_string(kind) << "\",\"value\":" << format12(value)
      << ",\"witness\":";
  if (const auto* w = std::get_if<CutWitness>(&witness)) {
    out << "{\"set\":" << int_array(w->set)
        << ",\"crossing_edges\":" << w->crossing_edges
        << ",\"boundary_in_set\":" << w->boundary_in_set << '}';
  } else if (const auto* w = std::get_if<TwoValueWitness>(&witness)) {
    out << "{\"vertex\":" << w->vertex << ",\"component\":" << w->component
        << ",\"degree\":" << w->degree
        << ",\"component_leaves\":" << w->component_leaves << '}';
  } else if (const auto* w = std::get_if<SharpWitness>(&witness)) {
    out << "{\"max_degree\":" << w->max_degree << ",\"leaf_count\":" << w->leaf_count
        << ",\"rho_ratio\":" << format12(w->rho_ratio)
        << ",\"is_star\":" << (w->is_star ? "true" : "false") << '}';
  } else if (const auto* w = std::get_if<FormulaWitness>(&witness)) {
    out << "{\"max_degree\":" << w->max_degree << ",\"k\":" << w->k
        << ",\"leaf_count\":" << w->leaf_count << '}';
  }
  out << '}';
  return out.str();
}

BoundReport cut_bound(const GraphWithBoundary& g, const std::vector<int>& set) {
  int n = g.vertex_count();
  std::vector<char> in_set(n, 0);
  for (int v : set) {
    if (v < 0 || v >= n)
      fail(ErrorKind::InvalidVertex, "set vertex " + std::to_string(v) + " out of range");
    in_set[v] = 1;
  }

  CutWitness witness;
  for (int v = 0; v < n; ++v)
    if (in_set[v]) {
      witness.set.push_back(v);
      if (g.is_boundary(v)) ++witness.boundary_in_set;
    }
  for (const auto& [u, v] : g.edge_list())
    if (in_set[u] != in_set[v]) ++witness.crossing_edges;

  int ell = g.boundary_size();
  if (witness.boundary_in_set == 0 || witness.boundary_in_set == ell)
    fail(ErrorKind::ParameterRange, "set must contain some but not all leaves");

  Real p = static_cast<Real>(witness.boundary_in_set) / ell;
  Real value = witness.crossing_edges / (p * (1 - p) * ell);
  return BoundReport{BoundKind::kCut, value, witness};
}

namespace {

struct TwoValueData {
  ComponentSplit split;
  int degree = 0;
  int component_leaves = 0;
  int leaf_count = 0;
};

TwoValueData two_value_data(const TreeWithLeafBoundary& tree, int vertex,
                            int component) {
  const GraphWithBoundary& g = tree.graph();
  if (vertex < 0 || vertex >= g.vertex_count() || g.is_boundary(vertex))
    fail(ErrorKind::InvalidVertex, "two-value bound needs an interior vertex");
  TwoValueData data;
  data.split = components_after_removal(tree, vertex);
  data.degree = static_cast<int>(data.split.components.size());
  if (component < 0 || component >= data.degree)
    fail(ErrorKind::IndexOutOfRange, "component index " + std::to_string(component) +
                                         " outside [0, " + std::to_string(data.degree) + ")");
  data.component_leaves = data.split.leaf_counts[component];
  data.leaf_count = g.boundary_size();
  if (2 * data.component_leaves > data.leaf_count)
    fail(ErrorKind::ParameterRange, "component holds more than half the leaves");
  return data;
}

}  // namespace

BoundReport two_value_bound(const TreeWithLeafBoundary& tree, int vertex,
                            int component) {
  auto data = two_value_data(tree, vertex, component);
  int s = data.component_leaves;
  int ell = data.leaf_count;
  int r = data.degree;
  Real value = (static_cast<Real>(r - 1) / r) * ell /
               (static_cast<Real>(s) * (ell - s));
  return BoundReport{BoundKind::kTwoValue, value,
                     TwoValueWitness{vertex, component, r, s}};
}

VertexFunction two_value_extension(const TreeWithLeafBoundary& tree, int vertex,
                                   int component) {
  auto data = two_value_data(tree, vertex, component);
  int s = data.component_leaves;
  int ell = data.leaf_count;
  int r = data.degree;
  Real alpha = static_cast<Real>(s) / (ell - s);

  const GraphWithBoundary& g = tree.graph();
  VertexFunction f = VertexFunction::Constant(g.vertex_count(), -alpha);
  for (int v : data.split.components[component]) f(v) = 1;
  // Energy-minimizing value at the junction given the two plateaus.
  f(vertex) = (1 - (r - 1) * alpha) / r;
  return f;
}

BoundReport sharp_bound_check(const TreeWithLeafBoundary& tree) {
  const GraphWithBoundary& g = tree.graph();
  int degree = tree.max_degree();
  int ell = g.boundary_size();
  Real value = static_cast<Real>(degree) / ell;

  SharpWitness witness;
  witness.max_degree = degree;
  witness.leaf_count = ell;
  witness.is_star = g.vertex_count() == ell + 1;
  witness.rho_ratio = steklov_spectrum(g).lambda2() * ell / degree;

  // The two-value bound at the leaf centroid, taken over its heaviest
  // component, already implies degree/ell; anything else is a bug.
  int c = leaf_centroid(tree);
  auto split = components_after_removal(tree, c);
  int best = 0;
  for (int i = 1; i < static_cast<int>(split.leaf_counts.size()); ++i)
    if (split.leaf_counts[i] > split.leaf_counts[best]) best = i;
  Real chained = two_value_bound(tree, c, best).value;
  if (chained > value + 1e-12)
    fail(ErrorKind::Internal, "centroid two-value bound exceeds degree/leaves");

  return BoundReport{BoundKind::kSharpDegreeOverLeaves, value, witness};
}

BoundReport lambda_k_formula(const TreeWithLeafBoundary& tree, int k) {
  int ell = tree.leaf_count();
  if (k < 1 || k > ell)
    fail(ErrorKind::ParameterRange,
         "k = " + std::to_string(k) + " outside [1, " + std::to_string(ell) + "]");
  int degree = tree.max_degree();
  Real value = std::min<Real>(1.0, 16.0 * degree * k / ell);
  return BoundReport{BoundKind::kLambdaKFormula, value,
                     FormulaWitness{degree, k, ell}};
}

std::string PartitionCertificate::to_json() const {
  std::ostringstream out;
  out << "{\"k\":" << k << ",\"threshold\":" << threshold << ",\"components\":[";
  for (size_t i = 0; i < components.size(); ++i) {
    if (i) out << ',';
    out << int_array(components[i]);
  }
  out << "],\"quotient_edges\":[";
  for (size_t i = 0; i < quotient_edges.size(); ++i) {
    if (i) out << ',';
    out << '[' << quotient_edges[i].first << ',' << quotient_edges[i].second << ']';
  }
  out << "],\"small_degree_set\":" << int_array(small_degree_set)
      << ",\"independent_set\":" << int_array(independent_set)
      << ",\"selected\":" << int_array(selected)
      << ",\"rayleigh_bound\":" << format12(rayleigh_bound) << '}';
  return out.str();
}

namespace {

struct RootedTree {
  std::vector<int> parent;
  std::vector<std::vector<int>> children;  // ascending ids
  std::vector<int> postorder;              // children before parents
};

RootedTree root_at(const GraphWithBoundary& g, int root) {
  int n = g.vertex_count();
  RootedTree rooted;
  rooted.parent.assign(n, -1);
  rooted.children.assign(n, {});
  std::vector<int> order;
  std::vector<int> stack{root};
  std::vector<char> seen(n, 0);
  seen[root] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    order.push_back(u);
    for (int w : g.neighbors(u))
      if (!seen[w]) {
        seen[w] = 1;
        rooted.parent[w] = u;
        rooted.children[u].push_back(w);
        stack.push_back(w);
      }
  }
  rooted.postorder.assign(order.rbegin(), order.rend());
  return rooted;
}

}  // namespace

PartitionCertificate lambda_k_certificate(const TreeWithLeafBoundary& tree, int k) {
  const GraphWithBoundary& g = tree.graph();
  int ell = g.boundary_size();
  int degree = tree.max_degree();
  if (k < 1) fail(ErrorKind::ParameterRange, "k must be >= 1");
  long long window = 4LL * degree * k;
  if (ell < window)
    fail(ErrorKind::ParameterRange,
         "needs leaf_count >= 4 * max_degree * k; got " + std::to_string(ell) + " < " +
             std::to_string(window));
  int t = static_cast<int>(ell / window);
  int parts = 4 * k;

  int n = g.vertex_count();
  const int root = canonical_root(tree);
  auto rooted = root_at(g, root);

  PartitionCertificate cert;
  cert.k = k;
  cert.threshold = t;

  std::vector<int> comp(n, -1);
  std::vector<int> count(n, 0);
  for (int round = 0; round < parts - 1; ++round) {
    // Boundary leaves still unassigned in each remaining subtree.
    for (int v : rooted.postorder) {
      if (comp[v] >= 0) continue;
      int c = g.is_boundary(v) ? 1 : 0;
      for (int w : rooted.children[v])
        if (comp[w] < 0) c += count[w];
      count[v] = c;
    }
    // Descend toward the heaviest child holding at least t leaves.
    int cur = root;
    for (;;) {
      int next = -1;
      for (int w : rooted.children[cur]) {
        if (comp[w] >= 0 || count[w] < t) continue;
        if (next < 0 || count[w] > count[next]) next = w;
      }
      if (next < 0) break;
      cur = next;
    }
    if (cur == root)
      fail(ErrorKind::Internal, "peeling walk stalled at the root");
    if (count[cur] < t || count[cur] >= degree * t)
      fail(ErrorKind::Internal, "peeled subtree misses the leaf-count window");
    std::vector<int> stack{cur};
    comp[cur] = round;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : rooted.children[u])
        if (comp[w] < 0) {
          comp[w] = round;
          stack.push_back(w);
        }
    }
  }
  int rest_leaves = 0;
  for (int v = 0; v < n; ++v)
    if (comp[v] < 0) {
      comp[v] = parts - 1;
      if (g.is_boundary(v)) ++rest_leaves;
    }
  if (rest_leaves < t)
    fail(ErrorKind::Internal, "remainder component is short of leaves");

  cert.components.assign(parts, {});
  for (int v = 0; v < n; ++v) cert.components[comp[v]].push_back(v);

  std::vector<std::vector<int>> q_adj(parts);
  for (const auto& [u, v] : g.edge_list()) {
    int cu = comp[u], cv = comp[v];
    if (cu == cv) continue;
    cert.quotient_edges.emplace_back(std::min(cu, cv), std::max(cu, cv));
    q_adj[cu].push_back(cv);
    q_adj[cv].push_back(cu);
  }
  std::sort(cert.quotient_edges.begin(), cert.quotient_edges.end());
  if (static_cast<int>(cert.quotient_edges.size()) != parts - 1)
    fail(ErrorKind::Internal, "quotient of the tree is not a tree");

  std::vector<char> in_s(parts, 0);
  for (int i = 0; i < parts; ++i)
    if (static_cast<int>(q_adj[i].size()) <= 2) {
      in_s[i] = 1;
      cert.small_degree_set.push_back(i);
    }

  // The quotient nodes of degree <= 2 induce disjoint paths; on each path the
  // alternation from the smaller-id endpoint is a maximum independent set.
  std::vector<char> taken(parts, 0), visited(parts, 0);
  for (int start : cert.small_degree_set) {
    if (visited[start]) continue;
    int sub_deg = 0;
    for (int w : q_adj[start])
      if (in_s[w]) ++sub_deg;
    if (sub_deg == 2) continue;  // interior of a path, wait for an endpoint
    int prev = -1, cur = start;
    bool take = true;
    while (cur >= 0) {
      visited[cur] = 1;
      if (take) taken[cur] = 1;
      take = !take;
      int next = -1;
      for (int w : q_adj[cur])
        if (in_s[w] && w != prev && !visited[w]) next = w;
      prev = cur;
      cur = next;
    }
  }
  for (int i = 0; i < parts; ++i)
    if (taken[i]) cert.independent_set.push_back(i);
  if (static_cast<int>(cert.independent_set.size()) < k)
    fail(ErrorKind::Internal, "independent set smaller than k");
  cert.selected.assign(cert.independent_set.begin(), cert.independent_set.begin() + k);

  // Rayleigh bound of the k-dimensional indicator test space: energy form
  // against the boundary Gram form. Independence makes both diagonal, but the
  // forms are assembled from the partition itself rather than assumed.
  Matrix energy = Matrix::Zero(k, k);
  Matrix gram = Matrix::Zero(k, k);
  std::vector<int> sel_index(parts, -1);
  for (int i = 0; i < k; ++i) sel_index[cert.selected[i]] = i;
  for (const auto& [u, v] : g.edge_list()) {
    int iu = sel_index[comp[u]], iv = sel_index[comp[v]];
    if (iu == iv) continue;  // both outside the selection or same indicator
    if (iu >= 0) energy(iu, iu) += 1;
    if (iv >= 0) energy(iv, iv) += 1;
    if (iu >= 0 && iv >= 0) {
      energy(iu, iv) -= 1;
      energy(iv, iu) -= 1;
    }
  }
  for (int v = 0; v < n; ++v) {
    int i = sel_index[comp[v]];
    if (i >= 0 && g.is_boundary(v)) gram(i, i) += 1;
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> solver(energy, gram);
  if (solver.info() != Eigen::Success)
    fail(ErrorKind::Internal, "generalized eigenvalue solve failed");
  cert.rayleigh_bound = solver.eigenvalues().maxCoeff();
  if (cert.rayleigh_bound > 2.0 / t + 1e-12)
    fail(ErrorKind::Internal, "certificate Rayleigh bound exceeds 2/t");
  return cert;
}

}  // namespace steklov
