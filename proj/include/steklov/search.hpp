#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "steklov/types.hpp"

namespace steklov {

struct SearchOptions {
  int jobs = 1;
  /// Re-check the known inequalities (rho <= 1, lambda_2 <= D/l, lambda_k
  /// formula, spectrum range, centroid proof chain) on every visited tree;
  /// violations raise Internal.
  bool check_invariants = true;
};

/// One row of the all-trees scan: everything about rho = lambda_2 * l / D at
/// a fixed vertex count.
struct ScanRow {
  int n = 0;
  long long tree_count = 0;
  Real max_rho = 0;
  long long equality_count = 0;
  std::string argmax;  // canonical form of the maximizer

  static const char* csv_header();
  std::string csv() const;
  std::string jsonl() const;
};

/// One row of the TS(l, D) extremal search with the balanced-tree comparison.
struct TsRow {
  int leaves = 0;
  int max_degree = 0;
  long long tree_count = 0;
  Real max_lambda2 = 0;
  Real lambda2_tbstar = 0;
  bool match = false;
  std::string argmax;

  static const char* csv_header();
  std::string csv() const;
  std::string jsonl() const;
};

/// Result of a randomized experiment at fixed (D, l).
struct RandomRow {
  int max_degree = 0;
  int leaves = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  Real max_lambda2_random = 0;
  Real lambda2_tbstar = 0;
  Real max_rho_random = 0;

  static const char* csv_header();
  std::string csv() const;
  std::string jsonl() const;
};

/// Scans every unlabeled tree on n vertices for n in [n_min, n_max], emitting
/// one row per n as it completes. 3 <= n_min <= n_max <= 18.
void scan_all_trees(int n_min, int n_max, const SearchOptions& options,
                    const std::function<void(const ScanRow&)>& on_row);

/// Scans series-reduced trees with l leaves and max degree <= max_degree for
/// l in [l_min, l_max], comparing against balanced_min_height(l, max_degree).
/// max_degree in {3, 4, 5}, 3 <= l_min <= l_max <= 12.
void scan_series_reduced_trees(int l_min, int l_max, int max_degree,
                               const SearchOptions& options,
                               const std::function<void(const TsRow&)>& on_row);

/// Draws `samples` random leaf-split trees (one derived RNG stream per sample
/// index) and records the best lambda_2 seen, next to the deterministic
/// balanced-tree value. rho uses the degree cap, not the realized degree.
RandomRow random_experiment(int max_degree, int leaves, int samples,
                            std::uint64_t seed, const SearchOptions& options);

/// Checkpoint files hold {"last": n}, the last fully emitted row key.
std::optional<int> read_checkpoint(const std::string& path);
void write_checkpoint(const std::string& path, int last);

}  // namespace steklov
