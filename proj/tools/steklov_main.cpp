#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "steklov/bounds.hpp"
#include "steklov/generators.hpp"
#include "steklov/graph.hpp"
#include "steklov/levelreg.hpp"
#include "steklov/numfmt.hpp"
#include "steklov/search.hpp"
#include "steklov/spectral.hpp"
#include "steklov/transforms.hpp"

namespace {

using namespace steklov;

std::uint64_t default_seed_from_env() {
  const char* text = std::getenv("STEKLOV_SEED");
  if (!text || !*text) return 0;
  char* end = nullptr;
  std::uint64_t value = std::strtoull(text, &end, 10);
  if (end == text || *end != '\0')
    fail(ErrorKind::BadFormat, std::string("STEKLOV_SEED is not an integer: ") + text);
  return value;
}

GraphWithBoundary load_graph(const std::string& arg, std::uint64_t seed) {
  if (is_family_spec(arg)) return make_family(arg, seed).graph();
  return graph_from_text(parse_graph_file(arg));
}

TreeWithLeafBoundary load_tree(const std::string& arg, std::uint64_t seed) {
  if (is_family_spec(arg)) return make_family(arg, seed);
  return tree_from_text(parse_graph_file(arg));
}

Edge parse_edge_arg(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos)
    fail(ErrorKind::BadFormat, "--edge expects u,v; got '" + text + "'");
  try {
    size_t pos1 = 0, pos2 = 0;
    int u = std::stoi(text.substr(0, comma), &pos1);
    int v = std::stoi(text.substr(comma + 1), &pos2);
    if (pos1 != comma || pos2 != text.size() - comma - 1)
      fail(ErrorKind::BadFormat, "--edge expects u,v; got '" + text + "'");
    return {u, v};
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrorKind::BadFormat, "--edge expects u,v; got '" + text + "'");
  }
}

std::vector<int> parse_int_list_arg(const std::string& text, const std::string& flag) {
  std::vector<int> values;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    try {
      size_t pos = 0;
      values.push_back(std::stoi(token, &pos));
      if (pos != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      fail(ErrorKind::BadFormat, flag + " expects comma-separated integers; got '" + text + "'");
    }
  }
  if (values.empty())
    fail(ErrorKind::BadFormat, flag + " expects comma-separated integers; got '" + text + "'");
  return values;
}

std::string graph_json(const GraphWithBoundary& g) {
  std::ostringstream out;
  out << "{\"n\":" << g.vertex_count() << ",\"m\":" << g.edge_count() << ",\"edges\":[";
  bool first = true;
  for (const auto& [u, v] : g.edge_list()) {
    if (!first) out << ',';
    first = false;
    out << '[' << u << ',' << v << ']';
  }
  out << "],\"boundary\":[";
  first = true;
  for (int b : g.boundary()) {
    if (!first) out << ',';
    first = false;
    out << b;
  }
  out << "]}";
  return out.str();
}

void print_graph(const GraphWithBoundary& g, bool as_text) {
  if (as_text)
    std::cout << write_graph_text(g);
  else
    std::cout << graph_json(g) << '\n';
}

bool spectra_agree(const Spectrum& a, const Spectrum& b) {
  if (a.size() != b.size() || a.groups.size() != b.groups.size()) return false;
  for (int i = 0; i < a.size(); ++i)
    if (std::abs(a.eigenvalues(i) - b.eigenvalues(i)) > 1e-9) return false;
  for (size_t i = 0; i < a.groups.size(); ++i) {
    if (a.groups[i].multiplicity != b.groups[i].multiplicity) return false;
    if (std::abs(a.groups[i].value - b.groups[i].value) > 1e-9) return false;
  }
  return true;
}

struct ScanArgs {
  int jobs = 1;
  bool csv = false;
  std::string checkpoint;
};

void add_scan_args(CLI::App* cmd, ScanArgs& args) {
  cmd->add_option("--jobs", args.jobs, "Worker threads (deterministic output)");
  cmd->add_flag("--csv", args.csv, "CSV instead of JSON lines");
  cmd->add_option("--checkpoint", args.checkpoint,
                  "Resume file holding the last completed row key");
}

int run(int argc, char** argv) {
  CLI::App app{
      "Steklov spectra of graphs with boundary: Dirichlet-to-Neumann "
      "reduction, tree transforms, level-regular closed forms, eigenvalue "
      "bounds with certificates, and extremal tree searches"};
  app.require_subcommand(1);
  std::uint64_t env_seed = default_seed_from_env();

  std::string input;
  auto* spectrum_cmd =
      app.add_subcommand("spectrum", "Steklov spectrum of a graph file or family spec");
  spectrum_cmd->add_option("input", input, "Graph file or family spec")->required();

  std::string stretch_edge_text;
  int stretch_length = 1;
  bool stretch_text = false;
  auto* stretch_cmd = app.add_subcommand("stretch", "Replace an edge by a path");
  stretch_cmd->add_option("input", input, "Graph file or family spec")->required();
  stretch_cmd->add_option("--edge", stretch_edge_text, "Edge to stretch, as u,v")->required();
  stretch_cmd->add_option("--L", stretch_length, "Path length (>= 1)")->required();
  stretch_cmd->add_flag("--text", stretch_text, "Emit graph text instead of JSON");

  int contract_vertex = -1;
  bool contract_text = false;
  auto* contract_cmd =
      app.add_subcommand("contract", "Remove an interior degree-2 vertex of a tree");
  contract_cmd->add_option("input", input, "Tree file or family spec")->required();
  contract_cmd->add_option("--vertex", contract_vertex, "Vertex to contract")->required();
  contract_cmd->add_flag("--text", contract_text, "Emit graph text instead of JSON");

  std::string levelreg_m;
  bool levelreg_verify = false;
  auto* levelreg_cmd =
      app.add_subcommand("levelreg", "Closed-form spectrum of a level-regular tree");
  levelreg_cmd->add_option("--m", levelreg_m, "Branching sequence, e.g. 3,2")->required();
  levelreg_cmd->add_flag("--verify", levelreg_verify,
                         "Cross-check against the numeric spectrum");

  auto* bound_cmd = app.add_subcommand("bound", "Eigenvalue upper bounds with witnesses");
  bound_cmd->require_subcommand(1);
  std::string cut_set_text;
  auto* bound_cut = bound_cmd->add_subcommand("cut", "Cut bound from a vertex set");
  bound_cut->add_option("input", input, "Graph file or family spec")->required();
  bound_cut->add_option("--set", cut_set_text, "Vertex set, e.g. 0,1,2")->required();
  int bound_vertex = -1, bound_component = -1;
  auto* bound_two =
      bound_cmd->add_subcommand("two-value", "Two-value bound at an interior vertex");
  bound_two->add_option("input", input, "Tree file or family spec")->required();
  bound_two->add_option("--vertex", bound_vertex, "Interior vertex")->required();
  bound_two->add_option("--component", bound_component, "Component index")->required();
  auto* bound_sharp =
      bound_cmd->add_subcommand("sharp", "Sharp bound max_degree / leaf_count");
  bound_sharp->add_option("input", input, "Tree file or family spec")->required();
  int bound_k = 1;
  auto* bound_kf =
      bound_cmd->add_subcommand("k-formula", "Bound min(1, 16Dk/l) on lambda_k");
  bound_kf->add_option("input", input, "Tree file or family spec")->required();
  bound_kf->add_option("--k", bound_k, "Eigenvalue index (1-based)")->required();

  int certify_k = 1;
  auto* certify_cmd =
      app.add_subcommand("certify-k", "Constructive certificate for lambda_k <= 16Dk/l");
  certify_cmd->add_option("input", input, "Tree file or family spec")->required();
  certify_cmd->add_option("--k", certify_k, "Eigenvalue index (1-based)")->required();

  auto* centroid_cmd = app.add_subcommand("centroid", "Leaf centroid of a tree");
  centroid_cmd->add_option("input", input, "Tree file or family spec")->required();

  int scan_nmin = 3, scan_nmax = 3;
  ScanArgs scan_args;
  auto* scan_cmd = app.add_subcommand("scan", "Scan all unlabeled trees per vertex count");
  scan_cmd->add_option("--nmin", scan_nmin, "Smallest vertex count")->required();
  scan_cmd->add_option("--nmax", scan_nmax, "Largest vertex count")->required();
  add_scan_args(scan_cmd, scan_args);

  int ts_degree = 3, ts_lmin = 3, ts_lmax = 3;
  ScanArgs ts_args;
  auto* ts_cmd = app.add_subcommand(
      "scan-ts", "Extremal search over series-reduced trees vs the balanced tree");
  ts_cmd->add_option("--D", ts_degree, "Max degree (3, 4, or 5)")->required();
  ts_cmd->add_option("--lmin", ts_lmin, "Smallest leaf count")->required();
  ts_cmd->add_option("--lmax", ts_lmax, "Largest leaf count")->required();
  add_scan_args(ts_cmd, ts_args);

  int rand_degree = 3, rand_leaves = 2, rand_samples = 40;
  std::uint64_t rand_seed = env_seed;
  ScanArgs rand_args;
  auto* random_cmd =
      app.add_subcommand("random", "Best lambda_2 over random leaf-split trees");
  random_cmd->add_option("--D", rand_degree, "Max degree")->required();
  random_cmd->add_option("--l", rand_leaves, "Leaf count")->required();
  random_cmd->add_option("--samples", rand_samples, "Sample count")->required();
  random_cmd->add_option("--seed", rand_seed,
                         "RNG seed (default: STEKLOV_SEED or 0)");
  random_cmd->add_option("--jobs", rand_args.jobs, "Worker threads");
  random_cmd->add_flag("--csv", rand_args.csv, "CSV instead of JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (spectrum_cmd->parsed()) {
    std::cout << to_json(steklov_spectrum(load_graph(input, env_seed))) << '\n';
  } else if (stretch_cmd->parsed()) {
    StretchSpec spec{parse_edge_arg(stretch_edge_text), stretch_length};
    print_graph(stretch_edge(load_graph(input, env_seed), spec), stretch_text);
  } else if (contract_cmd->parsed()) {
    auto result = contract_degree2(load_tree(input, env_seed), contract_vertex);
    print_graph(result.graph(), contract_text);
  } else if (levelreg_cmd->parsed()) {
    BranchingSequence m = BranchingSequence::parse(levelreg_m);
    Spectrum closed = closed_form_spectrum(m);
    std::ostringstream out;
    out << "{\"m\":\"" << m.to_string() << "\",\"vertex_count\":" << m.vertex_count()
        << ",\"leaf_count\":" << m.leaf_count() << ",\"closed_form\":" << to_json(closed);
    bool verified = true;
    if (levelreg_verify) {
      Spectrum numeric = steklov_spectrum(build_level_regular(m).graph());
      verified = spectra_agree(closed, numeric);
      out << ",\"verified\":" << (verified ? "true" : "false");
    }
    out << '}';
    std::cout << out.str() << '\n';
    if (!verified) {
      std::cerr << "error: closed form disagrees with the numeric spectrum\n";
      return 1;
    }
  } else if (bound_cut->parsed()) {
    auto set = parse_int_list_arg(cut_set_text, "--set");
    std::cout << cut_bound(load_graph(input, env_seed), set).to_json() << '\n';
  } else if (bound_two->parsed()) {
    std::cout << two_value_bound(load_tree(input, env_seed), bound_vertex, bound_component)
                     .to_json()
              << '\n';
  } else if (bound_sharp->parsed()) {
    std::cout << sharp_bound_check(load_tree(input, env_seed)).to_json() << '\n';
  } else if (bound_kf->parsed()) {
    std::cout << lambda_k_formula(load_tree(input, env_seed), bound_k).to_json() << '\n';
  } else if (certify_cmd->parsed()) {
    std::cout << lambda_k_certificate(load_tree(input, env_seed), certify_k).to_json()
              << '\n';
  } else if (centroid_cmd->parsed()) {
    TreeWithLeafBoundary tree = load_tree(input, env_seed);
    int c = leaf_centroid(tree);
    auto split = components_after_removal(tree, c);
    std::cout << "{\"centroid\":" << c << ",\"leaf_counts\":[";
    for (size_t i = 0; i < split.leaf_counts.size(); ++i) {
      if (i) std::cout << ',';
      std::cout << split.leaf_counts[i];
    }
    std::cout << "]}\n";
  } else if (scan_cmd->parsed()) {
    SearchOptions options;
    options.jobs = scan_args.jobs;
    int start = scan_nmin;
    if (!scan_args.checkpoint.empty())
      if (auto last = read_checkpoint(scan_args.checkpoint))
        start = std::max(start, *last + 1);
    if (scan_args.csv) std::cout << ScanRow::csv_header() << '\n';
    if (start <= scan_nmax)
      scan_all_trees(start, scan_nmax, options, [&](const ScanRow& row) {
        std::cout << (scan_args.csv ? row.csv() : row.jsonl()) << '\n';
        if (!scan_args.checkpoint.empty()) write_checkpoint(scan_args.checkpoint, row.n);
      });
  } else if (ts_cmd->parsed()) {
    SearchOptions options;
    options.jobs = ts_args.jobs;
    int start = ts_lmin;
    if (!ts_args.checkpoint.empty())
      if (auto last = read_checkpoint(ts_args.checkpoint))
        start = std::max(start, *last + 1);
    if (ts_args.csv) std::cout << TsRow::csv_header() << '\n';
    if (start <= ts_lmax)
      scan_series_reduced_trees(start, ts_lmax, ts_degree, options, [&](const TsRow& row) {
        std::cout << (ts_args.csv ? row.csv() : row.jsonl()) << '\n';
        if (!ts_args.checkpoint.empty()) write_checkpoint(ts_args.checkpoint, row.leaves);
      });
  } else if (random_cmd->parsed()) {
    SearchOptions options;
    options.jobs = rand_args.jobs;
    RandomRow row = random_experiment(rand_degree, rand_leaves, rand_samples, rand_seed, options);
    if (rand_args.csv)
      std::cout << RandomRow::csv_header() << '\n' << row.csv() << '\n';
    else
      std::cout << row.jsonl() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return e.kind() == ErrorKind::Internal ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
