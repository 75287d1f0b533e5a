// spin_entangle: concurrence sweeps, single-matrix analysis and property suites.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinent/analyze.hpp"
#include "spinent/error.hpp"
#include "spinent/sweep.hpp"
#include "spinent/verify.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

template <class T>
std::vector<T> parse_list(const std::string& text, const char* flag) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream field(item);
    T v{};
    if (!(field >> v) || !(field >> std::ws).eof()) {
      throw spinent::InvalidArgument(std::string(flag) + ": cannot parse '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

struct SweepFlags {
  std::optional<std::string> model, boundary, grid, sep, brk, out, config;
  std::optional<int> sites, jobs;
  std::optional<double> beta;
  std::optional<std::uint64_t> seed;
};

spinent::SweepConfig build_config(const SweepFlags& f) {
  spinent::SweepConfig cfg;
  if (const char* env = std::getenv("SPIN_ENTANGLE_JOBS")) {
    try {
      cfg.jobs = std::stoi(env);
    } catch (const std::exception&) {
      throw spinent::InvalidArgument("SPIN_ENTANGLE_JOBS must be an integer");
    }
  }
  if (f.config) {
    std::ifstream in(*f.config);
    if (!in) throw spinent::InvalidArgument("cannot open config file " + *f.config);
    cfg = spinent::parse_sweep_config(in, cfg);
  }
  if (f.model) {
    if (*f.model == "xxz") cfg.family = spinent::ModelFamily::xxz;
    else if (*f.model == "tfim") cfg.family = spinent::ModelFamily::tfim;
    else throw spinent::InvalidArgument("--model must be xxz or tfim");
  }
  if (f.boundary) {
    if (*f.boundary == "pbc") cfg.boundary = spinent::Boundary::periodic;
    else if (*f.boundary == "obc") cfg.boundary = spinent::Boundary::open;
    else throw spinent::InvalidArgument("--boundary must be pbc or obc");
  }
  if (f.sites) cfg.num_sites = *f.sites;
  if (f.grid) cfg.grid = parse_list<double>(*f.grid, "--grid");
  if (f.sep) cfg.separations = parse_list<int>(*f.sep, "--sep");
  if (f.brk) cfg.breaking_fields = parse_list<double>(*f.brk, "--break");
  if (f.beta) cfg.beta = *f.beta;
  if (f.jobs) cfg.jobs = *f.jobs;
  if (f.seed) cfg.seed = *f.seed;
  if (f.out) cfg.output = *f.out;
  cfg.validate();
  return cfg;
}

int run_sweep(const SweepFlags& flags) {
  const spinent::SweepConfig cfg = build_config(flags);
  const auto rows = spinent::run_sweep(cfg);
  if (cfg.output.empty() || cfg.output == "-") {
    spinent::write_csv(std::cout, rows);
  } else {
    std::ofstream out(cfg.output);
    if (!out) throw spinent::InvalidArgument("cannot open output file " + cfg.output);
    spinent::write_csv(out, rows);
  }
  int failed = 0;
  for (const auto& row : rows) {
    if (!row.ok) {
      ++failed;
      std::cerr << "spin_entangle: point param=" << row.param << " r=" << row.separation
                << " h=" << row.breaking_field << " failed: " << row.note << '\n';
    }
  }
  return failed ? kExitNumerical : 0;
}

int run_analyze(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw spinent::InvalidArgument("cannot open matrix file " + path);
  try {
    spinent::analyze_matrix(in, std::cout);
  } catch (const spinent::NumericalError&) {
    std::cout << "valid: false\n";
    throw;
  }
  return 0;
}

int run_verify(const std::string& suite, std::uint64_t seed, int trials) {
  bool ok = true;
  for (const auto& r : spinent::run_verification(suite, seed, trials)) {
    std::cout << r.to_json() << '\n';
    ok = ok && r.passed();
  }
  return ok ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-site entanglement in XXZ and transverse-field Ising chains"};
  app.require_subcommand(1);

  SweepFlags sf;
  auto* sweep = app.add_subcommand("sweep", "Concurrence over a parameter grid, as CSV");
  sweep->add_option("--model", sf.model, "xxz or tfim");
  sweep->add_option("--sites", sf.sites, "Number of sites N");
  sweep->add_option("--boundary", sf.boundary, "pbc or obc");
  sweep->add_option("--grid", sf.grid, "Comma list of delta (xxz) or hz (tfim) values");
  sweep->add_option("--sep", sf.sep, "Comma list of separations r");
  sweep->add_option("--break", sf.brk, "Comma list of symmetry-breaking fields");
  sweep->add_option("--beta", sf.beta, "Inverse temperature; 0 selects the ground state");
  sweep->add_option("--jobs", sf.jobs, "Worker threads (default: SPIN_ENTANGLE_JOBS or 1)");
  sweep->add_option("--seed", sf.seed, "Solver start-vector seed");
  sweep->add_option("--out", sf.out, "Output CSV path (default stdout)");
  sweep->add_option("--config", sf.config, "JSON config; flags override its values");

  std::string matrix_path;
  auto* analyze = app.add_subcommand("analyze", "Report on a two-site density matrix file");
  analyze->add_option("file", matrix_path, "Matrix in the 16-entry exchange format")->required();

  std::string suite;
  std::uint64_t verify_seed = 20031;
  int trials = 0;
  auto* verify = app.add_subcommand("verify", "Randomized property suites");
  verify->add_option("suite", suite, "wootters, mixture, convexity, z2, u1, ising, conditions, all")
      ->required();
  verify->add_option("--seed", verify_seed, "Random seed");
  verify->add_option("--trials", trials, "Instances per check (0 = suite default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*sweep) return run_sweep(sf);
    if (*analyze) return run_analyze(matrix_path);
    if (*verify) return run_verify(suite, verify_seed, trials);
  } catch (const spinent::InvalidArgument& e) {
    std::cerr << "spin_entangle: " << e.what() << '\n';
    return kExitUsage;
  } catch (const spinent::Error& e) {
    std::cerr << "spin_entangle: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}
