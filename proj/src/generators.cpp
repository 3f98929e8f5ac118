#include "steklov/generators.hpp"

#include <algorithm>
#include <numeric>

#include "steklov/levelreg.hpp"
#include "steklov/rng.hpp"

namespace steklov {

namespace {

// --- canonical level-sequence successor ------------------------------------
//
// A level sequence lists vertex depths in the canonical (depth-first,
// lexicographically maximal) order; it determines the rooted tree. The
// Beyer-Hedetniemi successor steps through all canonical rooted sequences in
// reverse lexicographic order; the Wright-Richmond-Odlyzko-McKay validity
// test keeps exactly one rooting per free tree.

std::optional<std::vector<int>> next_rooted(const std::vector<int>& pred, int p) {
  if (p < 0) {
    p = static_cast<int>(pred.size()) - 1;
    while (pred[p] == 1) --p;
  }
  if (p == 0) return std::nullopt;
  int q = p - 1;
  while (pred[q] != pred[p] - 1) --q;
  std::vector<int> result = pred;
  for (int i = p; i < static_cast<int>(result.size()); ++i) result[i] = result[i - p + q];
  return result;
}

// Splits off the root's first child subtree: left = that subtree's levels
// shifted up by one, rest = the root plus the remaining subtrees.
void split_layout(const std::vector<int>& layout, std::vector<int>& left,
                  std::vector<int>& rest) {
  int n = static_cast<int>(layout.size());
  int m = n;
  bool one_found = false;
  for (int i = 0; i < n; ++i) {
    if (layout[i] == 1) {
      if (one_found) {
        m = i;
        break;
      }
      one_found = true;
    }
  }
  left.clear();
  rest.clear();
  for (int i = 1; i < m; ++i) left.push_back(layout[i] - 1);
  rest.push_back(0);
  for (int i = m; i < n; ++i) rest.push_back(layout[i]);
}

// Smallest valid free-tree layout >= the given rooted layout, or nullopt.
std::optional<std::vector<int>> next_free(const std::vector<int>& candidate) {
  std::vector<int> left, rest;
  split_layout(candidate, left, rest);
  int left_height = *std::max_element(left.begin(), left.end());
  int rest_height = *std::max_element(rest.begin(), rest.end());
  bool valid =
      rest_height > left_height ||
      (rest_height == left_height &&
       (left.size() < rest.size() || (left.size() == rest.size() && left <= rest)));
  if (valid) return candidate;

  int p = static_cast<int>(left.size());
  auto successor = next_rooted(candidate, p);
  if (!successor) return std::nullopt;
  if (candidate[p] > 2) {
    std::vector<int> new_left, new_rest;
    split_layout(*successor, new_left, new_rest);
    int new_left_height = *std::max_element(new_left.begin(), new_left.end());
    int start = static_cast<int>(successor->size()) - (new_left_height + 1);
    for (int d = 1; d <= new_left_height + 1; ++d) (*successor)[start + d - 1] = d;
  }
  return successor;
}

}  // namespace

FreeTreeStream::FreeTreeStream(int order) {
  if (order < 3) fail(ErrorKind::ParameterRange, "tree enumeration needs order >= 3");
  // Initial layout is the deepest canonical sequence: a path rooted near its
  // middle.
  for (int d = 0; d <= order / 2; ++d) layout_.push_back(d);
  for (int d = 1; d <= (order + 1) / 2 - 1; ++d) layout_.push_back(d);
}

bool FreeTreeStream::next() {
  if (exhausted_) return false;
  auto candidate = next_free(layout_);
  if (!candidate) {
    exhausted_ = true;
    return false;
  }
  current_ = std::move(*candidate);
  auto advanced = next_rooted(current_, -1);
  if (advanced)
    layout_ = std::move(*advanced);
  else
    exhausted_ = true;
  return true;
}

std::vector<Edge> FreeTreeStream::edges() const {
  int n = static_cast<int>(current_.size());
  std::vector<Edge> result;
  result.reserve(n - 1);
  std::vector<int> last_at_depth(n, -1);
  last_at_depth[0] = 0;
  for (int i = 1; i < n; ++i) {
    result.emplace_back(last_at_depth[current_[i] - 1], i);
    last_at_depth[current_[i]] = i;
  }
  return result;
}

TreeWithLeafBoundary FreeTreeStream::tree() const { return build_tree(edges()); }

std::vector<int> level_sequence_degrees(const std::vector<int>& layout) {
  int n = static_cast<int>(layout.size());
  std::vector<int> degree(n, 0);
  std::vector<int> last_at_depth(n, -1);
  last_at_depth[0] = 0;
  for (int i = 1; i < n; ++i) {
    int parent = last_at_depth[layout[i] - 1];
    ++degree[parent];
    ++degree[i];
    last_at_depth[layout[i]] = i;
  }
  return degree;
}

void enumerate_free_trees(
    int n, const std::function<void(const TreeWithLeafBoundary&)>& visit) {
  if (n < 3 || n > 18)
    fail(ErrorKind::ParameterRange,
         "supported order range is [3, 18]; got " + std::to_string(n));
  FreeTreeStream stream(n);
  while (stream.next()) visit(stream.tree());
}

SeriesReducedStream::SeriesReducedStream(int leaves, int max_degree)
    : leaves_(leaves), max_degree_(max_degree), order_(leaves + 1) {
  if (leaves < 3) fail(ErrorKind::ParameterRange, "series-reduced trees need >= 3 leaves");
  if (max_degree < 3) fail(ErrorKind::ParameterRange, "max degree must be >= 3");
  inner_.emplace(order_);
}

bool SeriesReducedStream::next() {
  for (;;) {
    if (!inner_->next()) {
      ++order_;
      if (order_ > 2 * leaves_ - 2) return false;
      inner_.emplace(order_);
      continue;
    }
    auto degrees = level_sequence_degrees(inner_->level_sequence());
    int leaf_count = 0;
    bool shape_ok = true;
    for (int d : degrees) {
      if (d == 1)
        ++leaf_count;
      else if (d < 3 || d > max_degree_) {
        shape_ok = false;
        break;
      }
    }
    if (!shape_ok || leaf_count != leaves_) continue;
    current_ = inner_->tree();
    return true;
  }
}

const TreeWithLeafBoundary& SeriesReducedStream::tree() const {
  if (!current_) fail(ErrorKind::Internal, "stream has no current tree");
  return *current_;
}

void enumerate_series_reduced(
    int leaves, int max_degree,
    const std::function<void(const TreeWithLeafBoundary&)>& visit) {
  SeriesReducedStream stream(leaves, max_degree);
  while (stream.next()) visit(stream.tree());
}

TreeWithLeafBoundary star(int leaves) {
  if (leaves < 3)
    fail(ErrorKind::ParameterRange, "star needs >= 3 leaves, got " + std::to_string(leaves));
  std::vector<Edge> edges;
  for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return build_tree(edges);
}

TreeWithLeafBoundary path(int edge_count) {
  if (edge_count < 2)
    fail(ErrorKind::ParameterRange,
         "path needs >= 2 edges (a single edge has adjacent boundary vertices)");
  std::vector<Edge> edges;
  for (int i = 0; i < edge_count; ++i) edges.emplace_back(i, i + 1);
  return build_tree(edges);
}

TreeWithLeafBoundary complete_m_ary(std::int64_t m, int h) {
  if (m < 2) fail(ErrorKind::ParameterRange, "m-ary tree needs m >= 2");
  if (h < 1) fail(ErrorKind::ParameterRange, "m-ary tree needs height >= 1");
  return build_level_regular(
      BranchingSequence(std::vector<std::int64_t>(h, m)));
}

namespace {

constexpr int kMaxSplitLeaves = 1'000'000;

struct SplitTask {
  int count;
  int budget;
  int parent;
};

void check_split_params(int leaves, int max_degree) {
  if (leaves < 2) fail(ErrorKind::ParameterRange, "leaf-split trees need >= 2 leaves");
  if (max_degree < 3) fail(ErrorKind::ParameterRange, "max degree must be >= 3");
  if (leaves > kMaxSplitLeaves)
    fail(ErrorKind::ParameterRange, "leaf count limit is " + std::to_string(kMaxSplitLeaves));
}

// Preorder iterative build: pop a task, create its vertex, push children in
// reverse so the leftmost part is processed (and numbered) first.
TreeWithLeafBoundary build_split_tree(
    int leaves, int max_degree,
    const std::function<std::vector<int>(int count, int budget)>& split) {
  std::vector<Edge> edges;
  int next_id = 0;
  std::vector<SplitTask> stack{{leaves, max_degree, -1}};
  while (!stack.empty()) {
    SplitTask task = stack.back();
    stack.pop_back();
    int v = next_id++;
    if (task.parent >= 0) edges.emplace_back(task.parent, v);
    if (task.count == 1) continue;
    std::vector<int> parts = split(task.count, task.budget);
    for (auto it = parts.rbegin(); it != parts.rend(); ++it)
      stack.push_back({*it, max_degree - 1, v});
  }
  return build_tree(edges);
}

}  // namespace

TreeWithLeafBoundary balanced_min_height(int leaves, int max_degree) {
  check_split_params(leaves, max_degree);
  return build_split_tree(leaves, max_degree, [](int count, int budget) {
    int p = std::min(count, budget);
    std::vector<int> parts(p);
    for (int i = 0; i < p; ++i) parts[i] = count / p + (i < count % p ? 1 : 0);
    return parts;
  });
}

TreeWithLeafBoundary random_leaf_split_tree(int leaves, int max_degree,
                                            std::uint64_t seed) {
  check_split_params(leaves, max_degree);
  SplitMix64 rng(seed);
  return build_split_tree(leaves, max_degree, [&rng](int count, int budget) {
    int cap = std::min(count, budget);
    int p = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(cap - 1)));
    // Uniform composition of count into p parts: p-1 distinct cut points
    // drawn by a partial Fisher-Yates over {1, ..., count-1}.
    std::vector<int> pool(count - 1);
    std::iota(pool.begin(), pool.end(), 1);
    for (int i = 0; i < p - 1; ++i) {
      int j = i + static_cast<int>(rng.below(pool.size() - i));
      std::swap(pool[i], pool[j]);
    }
    std::vector<int> cuts(pool.begin(), pool.begin() + (p - 1));
    std::sort(cuts.begin(), cuts.end());
    std::vector<int> parts;
    parts.reserve(p);
    int prev = 0;
    for (int c : cuts) {
      parts.push_back(c - prev);
      prev = c;
    }
    parts.push_back(count - prev);
    return parts;
  });
}

namespace {

std::vector<std::string> split_on(const std::string& text, char sep) {
  std::vector<std::string> parts;
  size_t start = 0;
  for (;;) {
    size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::int64_t parse_int(const std::string& token, const std::string& what) {
  size_t pos = 0;
  std::int64_t value = 0;
  try {
    value = std::stoll(token, &pos);
  } catch (const std::exception&) {
    fail(ErrorKind::BadFormat, "bad " + what + ": '" + token + "'");
  }
  if (pos != token.size()) fail(ErrorKind::BadFormat, "bad " + what + ": '" + token + "'");
  return value;
}

int parse_int32(const std::string& token, const std::string& what) {
  std::int64_t value = parse_int(token, what);
  if (value < INT32_MIN || value > INT32_MAX)
    fail(ErrorKind::BadFormat, what + " out of range: '" + token + "'");
  return static_cast<int>(value);
}

}  // namespace

bool is_family_spec(const std::string& text) {
  for (const char* prefix :
       {"star:", "path:", "mary:", "levelreg:", "tbstar:", "random:"})
    if (text.rfind(prefix, 0) == 0) return true;
  return false;
}

TreeWithLeafBoundary make_family(const std::string& spec, std::uint64_t default_seed) {
  size_t colon = spec.find(':');
  if (colon == std::string::npos)
    fail(ErrorKind::BadFormat, "family spec needs the form name:args, got '" + spec + "'");
  std::string name = spec.substr(0, colon);
  std::string args = spec.substr(colon + 1);

  if (name == "star") return star(parse_int32(args, "star leaf count"));
  if (name == "path") return path(parse_int32(args, "path edge count"));
  if (name == "levelreg")
    return build_level_regular(BranchingSequence::parse(args));
  if (name == "mary") {
    auto parts = split_on(args, ',');
    if (parts.size() != 2) fail(ErrorKind::BadFormat, "mary spec needs m,h");
    return complete_m_ary(parse_int(parts[0], "m"), parse_int32(parts[1], "h"));
  }
  if (name == "tbstar") {
    auto parts = split_on(args, ',');
    if (parts.size() != 2) fail(ErrorKind::BadFormat, "tbstar spec needs leaves,max_degree");
    return balanced_min_height(parse_int32(parts[0], "leaf count"),
                               parse_int32(parts[1], "max degree"));
  }
  if (name == "random") {
    auto parts = split_on(args, ',');
    if (parts.size() < 2 || parts.size() > 3)
      fail(ErrorKind::BadFormat, "random spec needs leaves,max_degree[,seed=N]");
    std::uint64_t seed = default_seed;
    if (parts.size() == 3) {
      if (parts[2].rfind("seed=", 0) != 0)
        fail(ErrorKind::BadFormat, "third random-spec field must be seed=N");
      seed = static_cast<std::uint64_t>(parse_int(parts[2].substr(5), "seed"));
    }
    return random_leaf_split_tree(parse_int32(parts[0], "leaf count"),
                                  parse_int32(parts[1], "max degree"), seed);
  }
  fail(ErrorKind::BadFormat, "unknown family '" + name + "'");
}

}  // namespace steklov
