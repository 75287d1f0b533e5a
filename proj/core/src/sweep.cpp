#include "spinent/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <istream>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "spinent/error.hpp"

namespace spinent {

namespace {

using nlohmann::json;

template <class T>
T json_value(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config: bad value for '") + key + "': " + e.what());
  }
}

ModelFamily parse_family(const std::string& name) {
  if (name == "xxz") return ModelFamily::xxz;
  if (name == "tfim") return ModelFamily::tfim;
  throw InvalidArgument("unknown model '" + name + "' (expected xxz or tfim)");
}

Boundary parse_boundary(const std::string& name) {
  if (name == "pbc") return Boundary::periodic;
  if (name == "obc") return Boundary::open;
  throw InvalidArgument("unknown boundary '" + name + "' (expected pbc or obc)");
}

ModelSpec point_spec(const SweepConfig& c, double param, double h) {
  const LatticeSpec lattice(c.num_sites, c.boundary);
  return c.family == ModelFamily::xxz ? ModelSpec::xxz(lattice, param, h)
                                      : ModelSpec::tfim(lattice, param, h);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }
std::string fmt(const std::optional<bool>& v) { return v ? (*v ? "1" : "0") : ""; }

// Notes may carry exception text; keep the CSV one field wide.
std::string csv_field(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

void SweepConfig::validate() const {
  if (grid.empty()) throw InvalidArgument("sweep: parameter grid is empty");
  if (separations.empty()) throw InvalidArgument("sweep: separation list is empty");
  if (breaking_fields.empty()) throw InvalidArgument("sweep: breaking-field list is empty");
  if (num_sites < 2 || num_sites > LatticeSpec::kMaxSites) {
    throw InvalidArgument("sweep: sites must be in [2, " + std::to_string(LatticeSpec::kMaxSites) +
                          "]");
  }
  for (int r : separations) {
    if (r < 1 || r >= num_sites) {
      throw InvalidArgument("sweep: separation " + std::to_string(r) + " outside [1, N-1]");
    }
  }
  for (double p : grid) {
    if (!std::isfinite(p)) throw InvalidArgument("sweep: non-finite grid value");
  }
  for (double h : breaking_fields) {
    if (!std::isfinite(h) || h < 0.0) throw InvalidArgument("sweep: breaking fields must be >= 0");
  }
  if (!std::isfinite(beta) || beta < 0.0) throw InvalidArgument("sweep: beta must be >= 0");
  if (beta > 0.0 && num_sites > kDenseMaxSites) {
    throw InvalidArgument("sweep: beta > 0 uses the dense path, which needs N <= " +
                          std::to_string(kDenseMaxSites));
  }
  if (jobs < 1) throw InvalidArgument("sweep: jobs must be >= 1");
  for (double p : grid) {
    for (double h : breaking_fields) point_spec(*this, p, h);
  }
}

SweepConfig parse_sweep_config(std::istream& in, SweepConfig base) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("config: top level must be an object");

  for (const auto& [key, value] : j.items()) {
    if (key == "model") {
      base.family = parse_family(json_value<std::string>(j, "model"));
    } else if (key == "sites") {
      base.num_sites = json_value<int>(j, "sites");
    } else if (key == "boundary") {
      base.boundary = parse_boundary(json_value<std::string>(j, "boundary"));
    } else if (key == "grid") {
      base.grid = json_value<std::vector<double>>(j, "grid");
    } else if (key == "sep") {
      base.separations = json_value<std::vector<int>>(j, "sep");
    } else if (key == "break") {
      base.breaking_fields = json_value<std::vector<double>>(j, "break");
    } else if (key == "beta") {
      base.beta = json_value<double>(j, "beta");
    } else if (key == "jobs") {
      base.jobs = json_value<int>(j, "jobs");
    } else if (key == "seed") {
      base.seed = json_value<std::uint64_t>(j, "seed");
    } else if (key == "out") {
      base.output = json_value<std::string>(j, "out");
    } else if (key == "solver") {
      if (!value.is_object()) throw InvalidArgument("config: 'solver' must be an object");
      for (const auto& [skey, svalue] : value.items()) {
        (void)svalue;
        if (skey == "tolerance") {
          base.solver.tolerance = json_value<double>(value, "tolerance");
        } else if (skey == "max_iterations") {
          base.solver.max_iterations = json_value<int>(value, "max_iterations");
        } else if (skey == "max_basis") {
          base.solver.max_basis = json_value<int>(value, "max_basis");
        } else if (skey == "keep") {
          base.solver.keep = json_value<int>(value, "keep");
        } else {
          throw InvalidArgument("config: unknown solver key '" + skey + "'");
        }
      }
    } else {
      throw InvalidArgument("config: unknown key '" + key + "'");
    }
  }
  return base;
}

std::pair<int, int> pair_sites(const LatticeSpec& lattice, int r) {
  const int n = lattice.num_sites();
  if (r < 1 || r >= n) throw InvalidArgument("pair_sites: separation outside [1, N-1]");
  if (lattice.boundary() == Boundary::periodic) return {0, r};
  const int first = (n - 1 - r) / 2;
  return {first, first + r};
}

PairAnalysis analyze_pair(const TwoSiteDensityMatrix& rho) {
  PairAnalysis out;
  out.general = concurrence(rho);
  out.form = classify_form(rho);
  out.corr = correlators_from_rho(rho);
  try {
    switch (out.form.kind) {
      case FormKind::z2:
        out.closed_form = concurrence_z2(out.corr);
        break;
      case FormKind::u1_broken: {
        const U1Concurrence u1 = concurrence_u1(out.corr);
        out.closed_form = u1.value;
        out.branch_ok = u1.certified();
        break;
      }
      case FormKind::ising:
        out.closed_form = concurrence_ising_cubic(std::get<IsingForm>(out.form.form));
        out.invariance_condition = tfim_invariance_condition(out.corr);
        break;
      case FormKind::general:
        break;
    }
  } catch (const NumericalError& e) {
    out.note = e.what();
  }
  return out;
}

PointResult solve_point(const ModelSpec& spec, const std::vector<int>& separations, double beta,
                        const LanczosOptions& opts) {
  const HamiltonianAction h = build_hamiltonian(spec);
  PointResult out;
  out.pairs.reserve(separations.size());
  if (beta > 0.0) {
    const ThermalEnsemble ensemble(dense_spectrum(h), beta);
    const auto& e = ensemble.spectrum().energies;
    out.gap = e.size() > 1 ? e(1) - e(0) : 0.0;
    for (int r : separations) {
      const auto [i, j] = pair_sites(spec.lattice, r);
      out.pairs.push_back(reduce_thermal(ensemble, i, j));
    }
  } else {
    const GroundState gs = lanczos_ground_state(h, opts);
    out.gap = gs.report.gap;
    for (int r : separations) {
      const auto [i, j] = pair_sites(spec.lattice, r);
      out.pairs.push_back(reduce_pure(gs.state, spec.lattice.num_sites(), i, j));
    }
  }
  return out;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  config.validate();
  const std::size_t nb = config.breaking_fields.size();
  const std::size_t ns = config.separations.size();
  const std::size_t tasks = config.grid.size() * nb;

  LanczosOptions opts = config.solver;
  opts.seed = config.seed;

  // Task t = (param index t / nb, field index t % nb); each worker writes only
  // its own slot, the driver reads after join.
  std::vector<std::vector<SweepRow>> slots(tasks);
  auto run_task = [&](std::size_t t) {
    const double param = config.grid[t / nb];
    const double h = config.breaking_fields[t % nb];
    std::vector<SweepRow> rows(ns);
    for (std::size_t k = 0; k < ns; ++k) {
      rows[k].param = param;
      rows[k].separation = config.separations[k];
      rows[k].breaking_field = h;
    }
    try {
      const PointResult point =
          solve_point(point_spec(config, param, h), config.separations, config.beta, opts);
      for (std::size_t k = 0; k < ns; ++k) {
        rows[k].gap = point.gap;
        rows[k].analysis = analyze_pair(point.pairs[k]);
        rows[k].note = rows[k].analysis.note;
      }
    } catch (const std::exception& e) {
      for (auto& row : rows) {
        row.ok = false;
        row.note = e.what();
      }
    }
    slots[t] = std::move(rows);
  };

  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(config.jobs), tasks);
  if (workers <= 1) {
    for (std::size_t t = 0; t < tasks; ++t) run_task(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < tasks; t = next++) run_task(t);
      });
    }
  }

  std::vector<SweepRow> rows;
  rows.reserve(tasks * ns);
  for (std::size_t p = 0; p < config.grid.size(); ++p) {
    for (std::size_t k = 0; k < ns; ++k) {
      for (std::size_t b = 0; b < nb; ++b) rows.push_back(slots[p * nb + b][k]);
    }
  }
  return rows;
}

std::string csv_header() {
  return "param,r,h_break,status,form,C_general,C_closed_form,branch_ok,eq16,xx,yy,zz,sz,sx,gap,"
         "E_f,note";
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << csv_header() << '\n';
  for (const auto& row : rows) {
    out << fmt(row.param) << ',' << row.separation << ',' << fmt(row.breaking_field) << ',';
    if (!row.ok) {
      out << "failed" << std::string(13, ',') << csv_field(row.note) << '\n';
      continue;
    }
    const auto& a = row.analysis;
    out << "ok," << to_string(a.form.kind) << ',' << fmt(a.general.concurrence) << ','
        << fmt(a.closed_form) << ',' << fmt(a.branch_ok) << ',' << fmt(a.invariance_condition)
        << ',' << fmt(a.corr.xx()) << ',' << fmt(a.corr.yy()) << ',' << fmt(a.corr.zz()) << ','
        << fmt(a.corr.zi()) << ',' << fmt(a.corr.xi()) << ',' << fmt(row.gap) << ','
        << fmt(a.general.eof) << ',' << csv_field(row.note) << '\n';
  }
}

}  // namespace spinent
