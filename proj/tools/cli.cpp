#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <random>
#include <thread>

#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "giep/apps.hpp"
#include "giep/instance.hpp"
#include "giep/io.hpp"

namespace giep::cli {

namespace fs = std::filesystem;
using nlohmann::json;

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::BadFormat:
    case ErrorKind::InvalidArgument:
    case ErrorKind::DegenerateSpectrum:
      return 1;
    case ErrorKind::MatchingTooSmall:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::RepeatedEigenvalues:
    case ErrorKind::ModeMismatch:
      return 2;
    case ErrorKind::NonConvergence:
    case ErrorKind::IllConditioned:
    case ErrorKind::SingularSystem:
    case ErrorKind::DiscViolation:
    case ErrorKind::StepUnderflow:
      return 3;
  }
  return 1;
}

namespace {

constexpr std::uint64_t kDefaultSeed = 20250101;

using Logger = std::shared_ptr<spdlog::logger>;

Logger make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto log = std::make_shared<spdlog::logger>("giep", sink);
  log->set_pattern("[%l] %v");
  const char* env = std::getenv("GIEP_LOG");
  const std::string level = env ? env : "info";
  if (level == "quiet")
    log->set_level(spdlog::level::off);
  else if (level == "trace")
    log->set_level(spdlog::level::trace);
  else
    log->set_level(spdlog::level::info);
  return log;
}

struct SolveArgs {
  std::string spectrum, graph, out, report, mm, mode = "generic", batch;
  unsigned jobs = 0;
};

struct Failure {
  ErrorKind kind;
  std::string message;
};

json error_json(const Failure& f) {
  return {{"status", "error"}, {"kind", std::string(to_string(f.kind))}, {"message", f.message}};
}

StateObserver tracer(const Logger& log, const std::string& tag) {
  if (!log->should_log(spdlog::level::trace)) return {};
  return [log, tag](const ContinuationState& st, const ComplexVector&) {
    const double res = st.history.empty() ? 0.0 : st.history.back().residual;
    log->trace("{}t = {:.6g}  step = {:.3g}  residual = {:.3e}", tag, st.t, st.step, res);
  };
}

// One solve from files; returns the report or throws giep::Error.
SolveReport solve_files(const fs::path& spectrum, const fs::path& graph, Mode mode,
                        const SolverConfig& cfg, const Logger& log, const std::string& tag) {
  const Spectrum s = io::parse_spectrum(io::read_file(spectrum));
  const Graph g = parse_graph(io::read_file(graph));
  log->info("{}n = {}, k = {}, l = {}, {} ordered edges, mode {}", tag, s.n(), s.k(), s.l(),
            g.edges().size(), to_string(mode));
  return solve_instance(s, g, mode, cfg, tracer(log, tag));
}

void write_outputs(const SolveReport& r, const fs::path& out, const fs::path& report,
                   const fs::path& mm) {
  io::write_file(out, io::format_matrix_csv(r.matrix));
  if (!report.empty()) io::write_file(report, io::to_json(r).dump(2) + "\n");
  if (!mm.empty()) io::write_file(mm, io::format_matrix_market(r.matrix));
}

std::string summary_line(const SolveReport& r) {
  return "solved n = " + std::to_string(r.matrix.rows()) + " in " + std::to_string(r.steps) +
         " steps (" + std::to_string(r.rejected_steps) + " rejected), spectrum error " +
         json(r.residual).dump();
}

// Append-only record of batch outcomes, shared by the workers.
class Collector {
 public:
  void add(std::string name, int code, json entry) {
    std::lock_guard lock(mu_);
    entry["instance"] = std::move(name);
    entry["exit_code"] = code;
    entries_.push_back(std::move(entry));
  }

  json summary(double seconds) const {
    std::lock_guard lock(mu_);
    json sorted = entries_;
    std::sort(sorted.begin(), sorted.end(),
              [](const json& a, const json& b) { return a["instance"] < b["instance"]; });
    std::map<std::string, int> by_outcome;
    int solved = 0, steps = 0, rejected = 0;
    for (const json& e : sorted) {
      const bool ok = e["exit_code"] == 0;
      solved += ok;
      ++by_outcome[ok ? "ok" : e["kind"].get<std::string>()];
      if (ok) {
        steps += e["steps"].get<int>();
        rejected += e["rejected_steps"].get<int>();
      }
    }
    return {{"instances", sorted.size()},
            {"solved", solved},
            {"failed", static_cast<int>(sorted.size()) - solved},
            {"outcomes", by_outcome},
            {"total_steps", steps},
            {"total_rejected_steps", rejected},
            {"wall_seconds", seconds},
            {"results", sorted}};
  }

  int worst_code() const {
    std::lock_guard lock(mu_);
    int worst = 0;
    for (const json& e : entries_) worst = std::max(worst, e["exit_code"].get<int>());
    return worst;
  }

 private:
  mutable std::mutex mu_;
  json entries_ = json::array();
};

int run_batch(const SolveArgs& a, Mode mode, const SolverConfig& cfg, const Logger& log,
              std::ostream& out) {
  const fs::path dir = a.batch;
  if (!fs::is_directory(dir)) throw Error(ErrorKind::BadFormat, "not a directory: " + a.batch);
  const std::string suffix = ".spectrum.json";
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string file = entry.path().filename().string();
    if (file.size() > suffix.size() && file.ends_with(suffix))
      names.push_back(file.substr(0, file.size() - suffix.size()));
  }
  std::sort(names.begin(), names.end());
  if (names.empty()) throw Error(ErrorKind::BadFormat, "no *.spectrum.json files in " + a.batch);

  unsigned jobs = a.jobs ? a.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, names.size());
  log->info("batch: {} instances, {} workers", names.size(), jobs);

  Collector results;
  std::atomic<std::size_t> next{0};
  const auto start = std::chrono::steady_clock::now();
  auto worker = [&] {
    for (std::size_t i = next++; i < names.size(); i = next++) {
      const std::string& name = names[i];
      const std::string tag = name + ": ";
      try {
        const SolveReport r = solve_files(dir / (name + suffix), dir / (name + ".graph"), mode,
                                          cfg, log, tag);
        write_outputs(r, dir / (name + ".matrix.csv"), dir / (name + ".report.json"), {});
        json entry = io::to_json(r);
        entry.erase("history");
        results.add(name, 0, std::move(entry));
      } catch (const Error& e) {
        log->warn("{}{}: {}", tag, to_string(e.kind()), e.what());
        const json report = error_json({e.kind(), e.what()});
        try {
          io::write_file(dir / (name + ".report.json"), report.dump(2) + "\n");
        } catch (const Error&) {
        }
        results.add(name, exit_code(e.kind()), report);
      } catch (const std::exception& e) {
        results.add(name, 1, error_json({ErrorKind::BadFormat, e.what()}));
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const json summary = results.summary(seconds);
  io::write_file(dir / "summary.json", summary.dump(2) + "\n");
  out << "batch: " << summary["solved"] << "/" << summary["instances"] << " solved in "
      << seconds << " s; summary written to " << (dir / "summary.json").string() << "\n";
  return results.worst_code();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Real matrices with a prescribed spectrum and off-diagonal graph"};
  app.name("giep");
  app.require_subcommand(1);

  SolverConfig cfg;
  auto add_config = [&cfg](CLI::App* sub) {
    sub->add_option("--fill-scale", cfg.fill_scale, "edge fill as a multiple of the disc radius")
        ->check(CLI::PositiveNumber);
    sub->add_option("--tol", cfg.tol_final_rel, "final spectrum tolerance, relative to 1 + max|eig|")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-steps", cfg.max_steps, "continuation step limit")
        ->check(CLI::PositiveNumber);
    sub->add_option("--step-min", cfg.step_min, "smallest continuation step")
        ->check(CLI::PositiveNumber);
  };

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "build a matrix for a spectrum and a graph");
  solve->add_option("--spectrum", sa.spectrum, "spectrum JSON file");
  solve->add_option("--graph", sa.graph, "edge-list graph file");
  solve->add_option("--out", sa.out, "output matrix CSV");
  solve->add_option("--report", sa.report, "run report (JSON)");
  solve->add_option("--mm", sa.mm, "also write the matrix in Matrix Market format");
  solve->add_option("--mode", sa.mode, "generic, symmetric or skew")
      ->check(CLI::IsMember({"generic", "symmetric", "skew"}));
  solve->add_option("--batch", sa.batch, "solve every <name>.spectrum.json/<name>.graph in a directory");
  solve->add_option("--jobs", sa.jobs, "batch worker count (default: hardware threads)");
  add_config(solve);

  std::string matrix_path, tri_out, tri_report;
  auto* tri = app.add_subcommand("tridiagonalize", "similar irreducible tridiagonal matrix");
  tri->add_option("--matrix", matrix_path, "input matrix CSV")->required();
  tri->add_option("--out", tri_out, "output matrix CSV")->required();
  tri->add_option("--report", tri_report, "run report (JSON)");
  add_config(tri);

  std::string v_matrix, v_spectrum, v_graph;
  auto* ver = app.add_subcommand("verify", "check a matrix against a spectrum and a graph");
  ver->add_option("--matrix", v_matrix, "matrix CSV")->required();
  ver->add_option("--spectrum", v_spectrum, "spectrum JSON file")->required();
  ver->add_option("--graph", v_graph, "edge-list graph file")->required();

  InstanceOptions opt;
  std::uint64_t seed = kDefaultSeed;
  std::string prefix;
  auto* rnd = app.add_subcommand("random-instance", "write a random feasible instance");
  rnd->add_option("--n", opt.n, "matrix size")->required();
  rnd->add_option("--k", opt.k, "number of conjugate pairs")->required();
  rnd->add_option("--edge-prob", opt.edge_prob, "probability of each extra edge");
  rnd->add_option("--rng-seed", seed, "random seed");
  rnd->add_option("--out-prefix", prefix, "writes <prefix>.spectrum.json and <prefix>.graph")
      ->required();
  rnd->add_flag("--directed", opt.directed, "draw extra edges per ordered pair");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  const Logger log = make_logger(err);
  try {
    if (*solve) {
      const Mode mode = parse_mode(sa.mode);
      if (!sa.batch.empty()) return run_batch(sa, mode, cfg, log, out);
      if (sa.spectrum.empty() || sa.graph.empty() || sa.out.empty())
        throw Error(ErrorKind::InvalidArgument, "solve needs --spectrum, --graph and --out (or --batch)");
      const SolveReport r = solve_files(sa.spectrum, sa.graph, mode, cfg, log, "");
      write_outputs(r, sa.out, sa.report, sa.mm);
      out << summary_line(r) << "\n";
      return 0;
    }
    if (*tri) {
      const DenseMatrix m = io::parse_matrix_csv(io::read_file(matrix_path));
      if (!m.square())
        throw Error(ErrorKind::BadFormat, "matrix is " + std::to_string(m.rows()) + "x" +
                                              std::to_string(m.cols()) + ", expected square");
      const SolveReport r = tridiagonalize(m, cfg);
      write_outputs(r, tri_out, tri_report, {});
      out << summary_line(r) << "\n";
      return 0;
    }
    if (*ver) {
      const DenseMatrix m = io::parse_matrix_csv(io::read_file(v_matrix));
      const Spectrum s = io::parse_spectrum(io::read_file(v_spectrum));
      const Graph g = parse_graph(io::read_file(v_graph));
      if (!m.square() || m.rows() != g.vertex_count() || s.n() != g.vertex_count())
        throw Error(ErrorKind::BadFormat, "matrix, spectrum and graph sizes disagree");
      const VerificationReport r = verify(m, s, g);
      out << io::to_json(r).dump(2) << "\n";
      return r.passed() ? 0 : 4;
    }
    if (*rnd) {
      out << "rng seed: " << seed << "\n";
      std::mt19937_64 rng(seed);
      const Instance inst = random_instance(opt, rng);
      io::write_file(prefix + ".spectrum.json", io::format_spectrum(inst.spectrum));
      io::write_file(prefix + ".graph", format_graph(inst.graph));
      out << "wrote " << prefix << ".spectrum.json and " << prefix << ".graph\n";
      return 0;
    }
  } catch (const StepUnderflowError& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << " (reached t = "
        << e.t_reached() << ")\n";
    if (*solve && !sa.report.empty()) {
      try {
        json j = error_json({e.kind(), e.what()});
        j["t_reached"] = e.t_reached();
        io::write_file(sa.report, j.dump(2) + "\n");
      } catch (const Error&) {
      }
    }
    return exit_code(e.kind());
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace giep::cli
