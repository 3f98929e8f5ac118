#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "steklov/bounds.hpp"
#include "steklov/generators.hpp"
#include "steklov/graph.hpp"
#include "steklov/levelreg.hpp"
#include "steklov/search.hpp"
#include "steklov/spectral.hpp"
#include "steklov/transforms.hpp"

using namespace steklov;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

// Runs the installed binary through the shell; `prefix` can set env vars.
CliResult run_cli(const std::string& args, const std::string& prefix = "") {
  std::string cmd =
      prefix + " \"" STEKLOV_CLI_PATH "\" " + args + " 2>cli_stderr.tmp";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  char buf[4096];
  size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, got);
  int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.err = slurp("cli_stderr.tmp");
  std::remove("cli_stderr.tmp");
  return result;
}

}  // namespace

TEST_CASE("spectrum matches the library for family specs and files") {
  auto r = run_cli("spectrum star:4");
  CHECK(r.code == 0);
  CHECK(r.out == to_json(steklov_spectrum(star(4).graph())) + "\n");

  TreeWithLeafBoundary tree = complete_m_ary(2, 3);
  {
    std::ofstream out("cli_tree.tmp");
    out << write_graph_text(tree.graph());
  }
  auto from_file = run_cli("spectrum cli_tree.tmp");
  CHECK(from_file.code == 0);
  CHECK(from_file.out == to_json(steklov_spectrum(tree.graph())) + "\n");
  std::remove("cli_tree.tmp");
}

TEST_CASE("stretch emits the transformed graph") {
  GraphWithBoundary g = star(3).graph();
  GraphWithBoundary stretched = stretch_edge(g, StretchSpec{{0, 1}, 3});

  auto text = run_cli("stretch star:3 --edge 0,1 --L 3 --text");
  CHECK(text.code == 0);
  CHECK(text.out == write_graph_text(stretched));

  auto json = run_cli("stretch star:3 --edge 0,1 --L 3");
  CHECK(json.code == 0);
  CHECK(json.out.find("\"n\":6") != std::string::npos);
  CHECK(json.out.find("\"m\":5") != std::string::npos);

  auto bad = run_cli("stretch star:3 --edge 0-1 --L 3");
  CHECK(bad.code == 2);
  CHECK(bad.err.find("error: ") == 0);
}

TEST_CASE("contract removes the requested degree-2 vertex") {
  TreeWithLeafBoundary p4 = path(4);
  auto expected = contract_degree2(p4, 2);
  auto r = run_cli("contract path:4 --vertex 2 --text");
  CHECK(r.code == 0);
  CHECK(r.out == write_graph_text(expected.graph()));

  auto leaf = run_cli("contract path:4 --vertex 0");
  CHECK(leaf.code == 2);
}

TEST_CASE("levelreg prints the closed form and verifies it") {
  BranchingSequence m = BranchingSequence::parse("3,2");
  std::ostringstream want;
  want << "{\"m\":\"" << m.to_string() << "\",\"vertex_count\":" << m.vertex_count()
       << ",\"leaf_count\":" << m.leaf_count()
       << ",\"closed_form\":" << to_json(closed_form_spectrum(m))
       << ",\"verified\":true}\n";
  auto r = run_cli("levelreg --m 3,2 --verify");
  CHECK(r.code == 0);
  CHECK(r.out == want.str());

  auto bad = run_cli("levelreg --m 1,2");
  CHECK(bad.code == 2);
}

TEST_CASE("bound subcommands golden-match the library JSON") {
  auto cut = run_cli("bound cut star:4 --set 0,1");
  CHECK(cut.code == 0);
  CHECK(cut.out == cut_bound(star(4).graph(), {0, 1}).to_json() + "\n");

  TreeWithLeafBoundary mary = complete_m_ary(2, 2);
  auto two = run_cli("bound two-value mary:2,2 --vertex 0 --component 0");
  CHECK(two.code == 0);
  CHECK(two.out == two_value_bound(mary, 0, 0).to_json() + "\n");

  auto sharp = run_cli("bound sharp star:5");
  CHECK(sharp.code == 0);
  CHECK(sharp.out == sharp_bound_check(star(5)).to_json() + "\n");

  TreeWithLeafBoundary deep = complete_m_ary(2, 5);
  auto kf = run_cli("bound k-formula mary:2,5 --k 1");
  CHECK(kf.code == 0);
  CHECK(kf.out == lambda_k_formula(deep, 1).to_json() + "\n");

  auto cert = run_cli("certify-k mary:2,5 --k 1");
  CHECK(cert.code == 0);
  CHECK(cert.out == lambda_k_certificate(deep, 1).to_json() + "\n");

  auto refused = run_cli("certify-k star:5 --k 1");
  CHECK(refused.code == 2);
}

TEST_CASE("centroid reports the vertex and the leaf split") {
  auto r = run_cli("centroid star:5");
  CHECK(r.code == 0);
  CHECK(r.out == "{\"centroid\":0,\"leaf_counts\":[1,1,1,1,1]}\n");
}

TEST_CASE("scan output is stable across runs and worker counts") {
  SearchOptions options;
  std::ostringstream want;
  want << ScanRow::csv_header() << '\n';
  scan_all_trees(3, 6, options, [&](const ScanRow& row) { want << row.csv() << '\n'; });

  auto a = run_cli("scan --nmin 3 --nmax 6 --csv");
  CHECK(a.code == 0);
  CHECK(a.out == want.str());
  auto b = run_cli("scan --nmin 3 --nmax 6 --csv --jobs 4");
  CHECK(b.out == a.out);

  std::ostringstream jsonl;
  scan_all_trees(3, 4, options, [&](const ScanRow& row) { jsonl << row.jsonl() << '\n'; });
  auto c = run_cli("scan --nmin 3 --nmax 4");
  CHECK(c.out == jsonl.str());

  auto bad = run_cli("scan --nmin 2 --nmax 4");
  CHECK(bad.code == 2);
}

TEST_CASE("scan checkpoints resume after the recorded row") {
  write_checkpoint("cli_ckpt.tmp", 4);
  SearchOptions options;
  std::ostringstream want;
  scan_all_trees(5, 5, options, [&](const ScanRow& row) { want << row.jsonl() << '\n'; });

  auto r = run_cli("scan --nmin 3 --nmax 5 --checkpoint cli_ckpt.tmp");
  CHECK(r.code == 0);
  CHECK(r.out == want.str());
  auto last = read_checkpoint("cli_ckpt.tmp");
  REQUIRE(last.has_value());
  CHECK(*last == 5);

  auto done = run_cli("scan --nmin 3 --nmax 5 --checkpoint cli_ckpt.tmp");
  CHECK(done.code == 0);
  CHECK(done.out.empty());
  std::remove("cli_ckpt.tmp");
}

TEST_CASE("scan-ts golden-matches the library rows") {
  SearchOptions options;
  std::ostringstream want;
  want << TsRow::csv_header() << '\n';
  scan_series_reduced_trees(3, 6, 3, options,
                            [&](const TsRow& row) { want << row.csv() << '\n'; });
  auto r = run_cli("scan-ts --D 3 --lmin 3 --lmax 6 --csv");
  CHECK(r.code == 0);
  CHECK(r.out == want.str());
}

TEST_CASE("random honors --seed and the STEKLOV_SEED fallback") {
  SearchOptions options;
  RandomRow row = random_experiment(3, 10, 8, 5, options);

  auto flag = run_cli("random --D 3 --l 10 --samples 8 --seed 5");
  CHECK(flag.code == 0);
  CHECK(flag.out == row.jsonl() + "\n");

  auto env = run_cli("random --D 3 --l 10 --samples 8", "STEKLOV_SEED=5");
  CHECK(env.out == flag.out);

  auto zero = run_cli("random --D 3 --l 10 --samples 8", "STEKLOV_SEED=");
  CHECK(zero.out == random_experiment(3, 10, 8, 0, options).jsonl() + "\n");

  auto garbage = run_cli("spectrum star:4", "STEKLOV_SEED=notanumber");
  CHECK(garbage.code == 2);
  CHECK(garbage.err.find("STEKLOV_SEED") != std::string::npos);
}

TEST_CASE("exit codes separate usage, validation, and success") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("nosuchcommand").code == 2);

  auto tiny = run_cli("spectrum star:2");
  CHECK(tiny.code == 2);
  CHECK(tiny.err.find("error: ") == 0);

  auto missing = run_cli("spectrum no_such_file.graph");
  CHECK(missing.code == 2);
}
