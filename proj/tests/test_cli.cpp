#include <filesystem>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "giep/apps.hpp"
#include "giep/io.hpp"

using namespace giep;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Fresh scratch directory, removed at scope exit.
struct Scratch {
  fs::path dir;
  Scratch() {
    std::random_device rd;
    dir = fs::temp_directory_path() / ("giep_cli_" + std::to_string(rd()));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string put(const std::string& name, const std::string& text) const {
    io::write_file(dir / name, text);
    return (dir / name).string();
  }
  std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

const char* kSpectrum = R"({"pairs": [[1, 2]], "reals": [3]})";

}  // namespace

TEST_CASE("exit codes cover every error kind") {
  for (int k = 0; k <= static_cast<int>(ErrorKind::StepUnderflow); ++k) {
    const int code = cli::exit_code(static_cast<ErrorKind>(k));
    CHECK(code >= 1);
    CHECK(code <= 3);
  }
  CHECK(cli::exit_code(ErrorKind::MatchingTooSmall) == 2);
  CHECK(cli::exit_code(ErrorKind::StepUnderflow) == 3);
  CHECK(cli::exit_code(ErrorKind::BadFormat) == 1);
}

TEST_CASE("solve then verify round trip") {
  Scratch tmp;
  const auto spectrum_file = tmp.put("s.json", kSpectrum);
  const auto graph = tmp.put("p3.graph", "3 2 undirected\n1 2\n2 3\n");
  const Run r = run({"solve", "--spectrum", spectrum_file, "--graph", graph, "--out", tmp / "m.csv",
                     "--report", tmp / "r.json", "--mm", tmp / "m.mtx"});
  REQUIRE(r.code == 0);
  const DenseMatrix m = io::parse_matrix_csv(io::read_file(tmp / "m.csv"));
  CHECK(verify(m, io::parse_spectrum(kSpectrum), Graph::path(3)).passed());
  const auto report = nlohmann::json::parse(io::read_file(tmp / "r.json"));
  CHECK(report["status"] == "ok");
  CHECK(io::read_file(tmp / "m.mtx").starts_with("%%MatrixMarket"));
  CHECK(run({"verify", "--matrix", tmp / "m.csv", "--spectrum", spectrum_file, "--graph", graph}).code == 0);
}

TEST_CASE("solve failures map to exit codes") {
  Scratch tmp;
  const auto spectrum_file = tmp.put("s.json", kSpectrum);
  const auto empty = tmp.put("e.graph", "3 0 undirected\n");
  const Run small = run({"solve", "--spectrum", spectrum_file, "--graph", empty, "--out", tmp / "m.csv"});
  CHECK(small.code == 2);
  CHECK(small.err.find("k = 1") != std::string::npos);
  CHECK(small.err.find("size 0") != std::string::npos);
  CHECK_FALSE(fs::exists(tmp / "m.csv"));

  const auto bad = tmp.put("bad.json", R"({"pairs": [[1, 2]], "reals": [3)");
  const auto p3 = tmp.put("p3.graph", "3 2 undirected\n1 2\n2 3\n");
  CHECK(run({"solve", "--spectrum", bad, "--graph", p3, "--out", tmp / "m.csv"}).code == 1);
  CHECK(run({"solve", "--spectrum", tmp / "missing.json", "--graph", p3, "--out", tmp / "m.csv"})
            .code == 1);
  CHECK(run({"solve", "--spectrum", spectrum_file, "--graph", p3, "--out", tmp / "m.csv", "--mode",
             "symmetric"})
            .code == 2);
  CHECK(run({"solve", "--spectrum", spectrum_file, "--graph", p3, "--out", tmp / "m.csv", "--mode",
             "hermitian"})
            .code == 1);

  // uω > 1/4 has no real solution on a single edge with eigenvalues 1 and 2.
  const auto two = tmp.put("two.json", R"({"reals": [1, 2]})");
  const auto edge = tmp.put("edge.graph", "2 1 undirected\n1 2\n");
  const Run under = run({"solve", "--spectrum", two, "--graph", edge, "--out", tmp / "m.csv",
                         "--fill-scale", "3", "--report", tmp / "r.json"});
  CHECK(under.code == 3);
  CHECK(nlohmann::json::parse(io::read_file(tmp / "r.json"))["kind"] == "StepUnderflow");
}

TEST_CASE("tridiagonalize command") {
  Scratch tmp;
  const auto diag = tmp.put("d.csv", "1,0,0\n0,2,0\n0,0,3\n");
  REQUIRE(run({"tridiagonalize", "--matrix", diag, "--out", tmp / "t.csv"}).code == 0);
  const DenseMatrix t = io::parse_matrix_csv(io::read_file(tmp / "t.csv"));
  CHECK(t(0, 2) == 0.0);
  CHECK(t(2, 0) == 0.0);
  CHECK(t(0, 1) != 0.0);
  CHECK(t(1, 2) != 0.0);

  const auto rep = tmp.put("r.csv", "1,0,0\n0,1,0\n0,0,2\n");
  CHECK(run({"tridiagonalize", "--matrix", rep, "--out", tmp / "t.csv"}).code == 2);
  const auto rect = tmp.put("q.csv", "1,0,0\n0,1,0\n");
  CHECK(run({"tridiagonalize", "--matrix", rect, "--out", tmp / "t.csv"}).code == 1);
}

TEST_CASE("verify command") {
  Scratch tmp;
  const Spectrum s = io::parse_spectrum(kSpectrum);
  const auto seed = tmp.put("seed.csv", io::format_matrix_csv(build_seed(s)));
  const auto spectrum_file = tmp.put("s.json", kSpectrum);
  const auto blocks = tmp.put("b.graph", "3 1 undirected\n1 2\n");
  const auto p3 = tmp.put("p3.graph", "3 2 undirected\n1 2\n2 3\n");
  CHECK(run({"verify", "--matrix", seed, "--spectrum", spectrum_file, "--graph", blocks}).code == 0);
  const Run fail = run({"verify", "--matrix", seed, "--spectrum", spectrum_file, "--graph", p3});
  CHECK(fail.code == 4);
  const auto j = nlohmann::json::parse(fail.out);
  CHECK(j["pattern"]["offending_positions"][0]["row"] == 2);
  CHECK(j["pattern"]["offending_positions"][0]["col"] == 3);
  const auto p4 = tmp.put("p4.graph", "4 1 undirected\n1 2\n");
  CHECK(run({"verify", "--matrix", seed, "--spectrum", spectrum_file, "--graph", p4}).code == 1);
}

TEST_CASE("random-instance command") {
  Scratch tmp;
  SUBCASE("planted matching only") {
    REQUIRE(run({"random-instance", "--n", "4", "--k", "1", "--edge-prob", "0", "--rng-seed", "9",
                 "--out-prefix", tmp / "a"})
                .code == 0);
    const Graph g = parse_graph(io::read_file(tmp / "a.graph"));
    CHECK(g.edges().size() == 2);
    CHECK(max_matching(g).size() == 1);
    const Spectrum s = io::parse_spectrum(io::read_file(tmp / "a.spectrum.json"));
    CHECK(s.k() == 1);
    CHECK(s.l() == 2);
  }
  SUBCASE("deterministic for a fixed seed") {
    const Run a = run({"random-instance", "--n", "7", "--k", "2", "--rng-seed", "5",
                       "--out-prefix", tmp / "a"});
    const Run b = run({"random-instance", "--n", "7", "--k", "2", "--rng-seed", "5",
                       "--out-prefix", tmp / "b"});
    CHECK(a.out.find("rng seed: 5") != std::string::npos);
    CHECK(io::read_file(tmp / "a.graph") == io::read_file(tmp / "b.graph"));
    CHECK(io::read_file(tmp / "a.spectrum.json") == io::read_file(tmp / "b.spectrum.json"));
  }
  SUBCASE("every emitted instance is feasible") {
    for (int seed = 0; seed < 100; ++seed) {
      REQUIRE(run({"random-instance", "--n", "6", "--k", "2", "--edge-prob", "0.5", "--rng-seed",
                   std::to_string(seed), "--out-prefix", tmp / "f"})
                  .code == 0);
      CHECK(max_matching(parse_graph(io::read_file(tmp / "f.graph"))).size() >= 2);
    }
  }
  SUBCASE("invalid sizes") {
    CHECK(run({"random-instance", "--n", "3", "--k", "2", "--out-prefix", tmp / "x"}).code == 1);
    CHECK(run({"random-instance", "--n", "3", "--k", "1", "--edge-prob", "2", "--out-prefix",
               tmp / "x"})
              .code == 1);
  }
}

TEST_CASE("batch solve") {
  Scratch tmp;
  for (int seed = 1; seed <= 6; ++seed) {
    REQUIRE(run({"random-instance", "--n", "6", "--k", "2", "--edge-prob", "0.3", "--rng-seed",
                 std::to_string(seed), "--out-prefix", tmp / ("i" + std::to_string(seed))})
                .code == 0);
  }
  tmp.put("z.spectrum.json", kSpectrum);
  tmp.put("z.graph", "3 0 undirected\n");
  const Run r = run({"solve", "--batch", tmp.dir.string(), "--jobs", "3"});
  CHECK(r.code == 2);
  const auto summary = nlohmann::json::parse(io::read_file(tmp / "summary.json"));
  CHECK(summary["instances"] == 7);
  CHECK(summary["solved"] == 6);
  CHECK(summary["outcomes"]["MatchingTooSmall"] == 1);
  for (int seed = 1; seed <= 6; ++seed) {
    const std::string name = "i" + std::to_string(seed);
    const DenseMatrix m = io::parse_matrix_csv(io::read_file(tmp / (name + ".matrix.csv")));
    const Spectrum s = io::parse_spectrum(io::read_file(tmp / (name + ".spectrum.json")));
    const Graph g = parse_graph(io::read_file(tmp / (name + ".graph")));
    CHECK(verify(m, s, g).passed());
  }
  CHECK(run({"solve", "--batch", tmp / "nope"}).code == 1);
}

TEST_CASE("argument errors") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"solve", "--fill-scale", "-1"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}
