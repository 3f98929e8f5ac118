#include "steklov/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>
#include <vector>

#include "steklov/bounds.hpp"
#include "steklov/generators.hpp"
#include "steklov/numfmt.hpp"
#include "steklov/rng.hpp"
#include "steklov/spectral.hpp"

namespace steklov {

namespace {

constexpr Real kRhoTol = 1e-9;

// Known eigenvalue inequalities re-checked per visited tree.
void check_tree_invariants(const TreeWithLeafBoundary& tree, const Spectrum& spectrum) {
  int ell = tree.leaf_count();
  int degree = tree.max_degree();
  Real lambda2 = spectrum.lambda2();
  if (lambda2 > static_cast<Real>(degree) / ell + 1e-9)
    fail(ErrorKind::Internal, "lambda_2 exceeds degree/leaves");
  if (spectrum.eigenvalues(ell - 1) > 1 + 1e-10)
    fail(ErrorKind::Internal, "eigenvalue above 1");
  for (int k = 1; k <= ell; ++k) {
    Real cap = std::min<Real>(1.0, 16.0 * degree * k / ell);
    if (spectrum.lambda(k) > cap + 1e-9)
      fail(ErrorKind::Internal, "lambda_k exceeds min(1, 16Dk/l)");
  }
  // Proof chain of the sharp bound: centroid two-value bound at the heaviest
  // component stays below degree/leaves.
  int c = leaf_centroid(tree);
  auto split = components_after_removal(tree, c);
  int heaviest = 0;
  for (int i = 1; i < static_cast<int>(split.leaf_counts.size()); ++i)
    if (split.leaf_counts[i] > split.leaf_counts[heaviest]) heaviest = i;
  if (two_value_bound(tree, c, heaviest).value > static_cast<Real>(degree) / ell + 1e-12)
    fail(ErrorKind::Internal, "centroid two-value bound exceeds degree/leaves");
}

// Best-so-far under the total order: larger value wins, canonical-form
// lexicographic order breaks exact ties. Total order makes the parallel merge
// independent of worker count.
struct Extremal {
  bool set = false;
  Real value = 0;
  std::string canon;

  void offer(Real v, const std::string& c) {
    if (!set || v > value || (v == value && c < canon)) {
      set = true;
      value = v;
      canon = c;
    }
  }
  void merge(const Extremal& other) {
    if (other.set) offer(other.value, other.canon);
  }
};

// Runs fn(worker_index) on `jobs` workers and rethrows the first failure.
void run_sharded(int jobs, const std::function<void(int)>& fn) {
  if (jobs <= 1) {
    fn(0);
    return;
  }
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> threads;
  threads.reserve(jobs);
  for (int w = 0; w < jobs; ++w)
    threads.emplace_back([&, w] {
      try {
        fn(w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

const char* ScanRow::csv_header() { return "n,tree_count,max_rho,equality_count,argmax"; }

std::string ScanRow::csv() const {
  std::ostringstream out;
  out << n << ',' << tree_count << ',' << format12(max_rho) << ',' << equality_count
      << ',' << argmax;
  return out.str();
}

std::string ScanRow::jsonl() const {
  std::ostringstream out;
  out << "{\"n\":" << n << ",\"tree_count\":" << tree_count
      << ",\"max_rho\":" << format12(max_rho)
      << ",\"equality_count\":" << equality_count << ",\"argmax\":\"" << argmax
      << "\"}";
  return out.str();
}

const char* TsRow::csv_header() {
  return "leaves,max_degree,tree_count,max_lambda2,lambda2_tbstar,match,argmax";
}

std::string TsRow::csv() const {
  std::ostringstream out;
  out << leaves << ',' << max_degree << ',' << tree_count << ','
      << format12(max_lambda2) << ',' << format12(lambda2_tbstar) << ','
      << (match ? 1 : 0) << ',' << argmax;
  return out.str();
}

std::string TsRow::jsonl() const {
  std::ostringstream out;
  out << "{\"leaves\":" << leaves << ",\"max_degree\":" << max_degree
      << ",\"tree_count\":" << tree_count
      << ",\"max_lambda2\":" << format12(max_lambda2)
      << ",\"lambda2_tbstar\":" << format12(lambda2_tbstar)
      << ",\"match\":" << (match ? "true" : "false") << ",\"argmax\":\"" << argmax
      << "\"}";
  return out.str();
}

const char* RandomRow::csv_header() {
  return "max_degree,leaves,samples,seed,max_lambda2_random,lambda2_tbstar,max_rho_random";
}

std::string RandomRow::csv() const {
  std::ostringstream out;
  out << max_degree << ',' << leaves << ',' << samples << ',' << seed << ','
      << format12(max_lambda2_random) << ',' << format12(lambda2_tbstar) << ','
      << format12(max_rho_random);
  return out.str();
}

std::string RandomRow::jsonl() const {
  std::ostringstream out;
  out << "{\"max_degree\":" << max_degree << ",\"leaves\":" << leaves
      << ",\"samples\":" << samples << ",\"seed\":" << seed
      << ",\"max_lambda2_random\":" << format12(max_lambda2_random)
      << ",\"lambda2_tbstar\":" << format12(lambda2_tbstar)
      << ",\"max_rho_random\":" << format12(max_rho_random) << "}";
  return out.str();
}

void scan_all_trees(int n_min, int n_max, const SearchOptions& options,
                    const std::function<void(const ScanRow&)>& on_row) {
  if (n_min < 3 || n_min > n_max || n_max > 18)
    fail(ErrorKind::ParameterRange, "scan range must satisfy 3 <= n_min <= n_max <= 18");
  if (options.jobs < 1) fail(ErrorKind::ParameterRange, "jobs must be >= 1");

  for (int n = n_min; n <= n_max; ++n) {
    int jobs = options.jobs;
    std::vector<long long> counts(jobs, 0), equalities(jobs, 0);
    std::vector<Extremal> bests(jobs);

    run_sharded(jobs, [&](int worker) {
      FreeTreeStream stream(n);
      long long index = 0;
      while (stream.next()) {
        if (index++ % jobs != worker) continue;
        TreeWithLeafBoundary tree = stream.tree();
        Spectrum spectrum = steklov_spectrum(tree.graph());
        Real rho = spectrum.lambda2() * tree.leaf_count() / tree.max_degree();
        ++counts[worker];
        if (std::abs(rho - 1) <= kRhoTol) ++equalities[worker];
        if (options.check_invariants) check_tree_invariants(tree, spectrum);
        if (!bests[worker].set || rho >= bests[worker].value)
          bests[worker].offer(rho, canonical_form(tree));
      }
    });

    ScanRow row;
    row.n = n;
    Extremal best;
    for (int w = 0; w < jobs; ++w) {
      row.tree_count += counts[w];
      row.equality_count += equalities[w];
      best.merge(bests[w]);
    }
    row.max_rho = best.value;
    row.argmax = best.canon;
    on_row(row);
  }
}

void scan_series_reduced_trees(int l_min, int l_max, int max_degree,
                               const SearchOptions& options,
                               const std::function<void(const TsRow&)>& on_row) {
  if (max_degree < 3 || max_degree > 5)
    fail(ErrorKind::ParameterRange, "supported max degree range is {3, 4, 5}");
  if (l_min < 3 || l_min > l_max || l_max > 12)
    fail(ErrorKind::ParameterRange, "leaf range must satisfy 3 <= l_min <= l_max <= 12");
  if (options.jobs < 1) fail(ErrorKind::ParameterRange, "jobs must be >= 1");

  for (int ell = l_min; ell <= l_max; ++ell) {
    Real tbstar =
        steklov_spectrum(balanced_min_height(ell, max_degree).graph()).lambda2();

    int jobs = options.jobs;
    std::vector<long long> counts(jobs, 0);
    std::vector<Extremal> bests(jobs);

    run_sharded(jobs, [&](int worker) {
      SeriesReducedStream stream(ell, max_degree);
      long long index = 0;
      while (stream.next()) {
        if (index++ % jobs != worker) continue;
        const TreeWithLeafBoundary& tree = stream.tree();
        Spectrum spectrum = steklov_spectrum(tree.graph());
        Real lambda2 = spectrum.lambda2();
        ++counts[worker];
        if (options.check_invariants) check_tree_invariants(tree, spectrum);
        if (!bests[worker].set || lambda2 >= bests[worker].value)
          bests[worker].offer(lambda2, canonical_form(tree));
      }
    });

    TsRow row;
    row.leaves = ell;
    row.max_degree = max_degree;
    Extremal best;
    for (int w = 0; w < jobs; ++w) {
      row.tree_count += counts[w];
      best.merge(bests[w]);
    }
    row.max_lambda2 = best.value;
    row.argmax = best.canon;
    row.lambda2_tbstar = tbstar;
    row.match = std::abs(row.max_lambda2 - tbstar) <= 1e-9;
    if (tbstar > row.max_lambda2 + 1e-9)
      fail(ErrorKind::Internal, "balanced tree beats the exhaustive maximum");
    on_row(row);
  }
}

RandomRow random_experiment(int max_degree, int leaves, int samples,
                            std::uint64_t seed, const SearchOptions& options) {
  if (samples < 1) fail(ErrorKind::ParameterRange, "samples must be >= 1");
  if (options.jobs < 1) fail(ErrorKind::ParameterRange, "jobs must be >= 1");

  RandomRow row;
  row.max_degree = max_degree;
  row.leaves = leaves;
  row.samples = samples;
  row.seed = seed;
  row.lambda2_tbstar =
      steklov_spectrum(balanced_min_height(leaves, max_degree).graph()).lambda2();

  int jobs = options.jobs;
  std::vector<Real> bests(jobs, -1);
  run_sharded(jobs, [&](int worker) {
    for (int i = worker; i < samples; i += jobs) {
      TreeWithLeafBoundary tree =
          random_leaf_split_tree(leaves, max_degree, stream_seed(seed, i));
      Spectrum spectrum = steklov_spectrum(tree.graph());
      Real lambda2 = spectrum.lambda2();
      if (options.check_invariants) {
        check_tree_invariants(tree, spectrum);
        if (lambda2 * tree.leaf_count() / tree.max_degree() > 1 + kRhoTol)
          fail(ErrorKind::Internal, "sampled tree violates rho <= 1");
      }
      bests[worker] = std::max(bests[worker], lambda2);
    }
  });
  for (Real b : bests) row.max_lambda2_random = std::max(row.max_lambda2_random, b);
  row.max_rho_random = row.max_lambda2_random * leaves / max_degree;
  return row;
}

std::optional<int> read_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  long value = 0;
  if (std::sscanf(text.c_str(), " { \"last\" : %ld", &value) != 1)
    fail(ErrorKind::BadFormat, "unreadable checkpoint file: " + path);
  return static_cast<int>(value);
}

void write_checkpoint(const std::string& path, int last) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) fail(ErrorKind::BadFormat, "cannot write checkpoint file: " + path);
  out << "{\"last\":" << last << "}\n";
}

}  // namespace steklov
