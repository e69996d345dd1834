#include "qdisp/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "qdisp/csv.hpp"
#include "qdisp/dirac_spinor.hpp"
#include "qdisp/dispersion.hpp"
#include "qdisp/error.hpp"
#include "qdisp/field_grid.hpp"
#include "qdisp/field_io.hpp"
#include "qdisp/gaussian_packet.hpp"
#include "qdisp/kernels.hpp"
#include "qdisp/partition.hpp"
#include "qdisp/scenario.hpp"
#include "qdisp/svg.hpp"
#include "qdisp/two_particle.hpp"

namespace qdisp::cli {

namespace {

namespace fs = std::filesystem;
using io::ConfigLines;
using io::CsvTable;
using io::format_number;

struct ModelOptions {
  std::string model = "schrodinger";
  double mass = 1.0;
  double hbar = 1.0;
  double c = 1.0;
  std::string branch = "positive";

  void add(CLI::App* app) {
    app->add_option("--model", model, "schrodinger or dirac")
        ->check(CLI::IsMember({"schrodinger", "dirac"}));
    app->add_option("--mass", mass, "particle mass");
    app->add_option("--hbar", hbar, "reduced Planck constant");
    app->add_option("--c", c, "speed of light (dirac)");
    app->add_option("--branch", branch, "dirac branch")
        ->check(CLI::IsMember({"positive", "negative"}));
  }

  DispersionModel build() const {
    DispersionModel m = model == "dirac"
                            ? DispersionModel::dirac(mass, hbar, c,
                                                     branch == "negative" ? Branch::Negative
                                                                          : Branch::Positive)
                            : DispersionModel::schrodinger(mass, hbar);
    m.validate();
    return m;
  }

  void describe(ConfigLines& cfg) const {
    cfg.emplace_back("model", model);
    cfg.emplace_back("mass", format_number(mass));
    cfg.emplace_back("hbar", format_number(hbar));
    if (model == "dirac") {
      cfg.emplace_back("c", format_number(c));
      cfg.emplace_back("branch", branch);
    }
  }
};

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + format_number(v[i]);
  return out;
}

Vec to_vec(const std::vector<double>& v) {
  return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// Writes to `path`, or to `out` when the path is empty or "-".
void emit(const CsvTable& t, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    io::write_csv(out, t);
  } else {
    io::save_csv(path, t);
  }
}

std::string output_path(const std::string& dir, const std::string& name) {
  fs::create_directories(dir);
  return (fs::path(dir) / name).string();
}

void trajectory_plot(const std::string& path, const std::string& title,
                     const std::vector<ExchangeStatistics>& stats,
                     const std::vector<EntropyTrajectory>& trajs) {
  io::LinePlot plot{title, "t (tu)", "entropy (nats)", {}};
  for (std::size_t j = 0; j < stats.size(); ++j) {
    plot.series.push_back({std::string(to_string(stats[j])), trajs[j].times(), trajs[j].entropies()});
  }
  io::save_text(path, io::render_line_plot(plot));
}

CsvTable trajectory_table(const ConfigLines& cfg, const CollisionResult& r) {
  CsvTable t{cfg, {"t"}, {}};
  for (ExchangeStatistics s : r.stats) t.columns.push_back(fmt::format("S_{}", to_string(s)));
  const auto& times = r.trajectories.front().times();
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::vector<double> row{times[i]};
    for (const auto& tr : r.trajectories) row.push_back(tr.entropies()[i]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_snapshots(const std::string& dir, const std::string& prefix, const ConfigLines& cfg,
                     const CollisionResult& r, bool svg) {
  for (const Snapshot& s : r.snapshots) {
    const std::string stem =
        fmt::format("{}_t{}_{}", prefix, format_number(s.t), to_string(s.stats));
    const GridSpec& g = s.density.grid;
    CsvTable t{cfg, {"x1", "x2", "rho"}, {}};
    t.config.emplace_back("snapshot_t", format_number(s.t));
    t.config.emplace_back("snapshot_stats", std::string(to_string(s.stats)));
    t.config.emplace_back("snapshot_block", std::to_string(s.stride));
    for (int i = 0; i < g.n(); ++i) {
      for (int j = 0; j < g.n(); ++j) {
        t.rows.push_back({g.coord(0, i), g.coord(1, j),
                          s.density.rho[static_cast<std::size_t>(i) * g.n() + j]});
      }
    }
    io::save_csv(output_path(dir, stem + ".csv"), t);
    if (svg) {
      io::HeatMap map{fmt::format("{} t={} {}", prefix, format_number(s.t), to_string(s.stats)),
                      g.n(), g.n(), {}, g.origin()[0], g.origin()[0] + g.length(0),
                      g.origin()[1], g.origin()[1] + g.length(1)};
      // Rows of the map run along x2 so that x1 is horizontal.
      map.values.resize(s.density.rho.size());
      for (int i = 0; i < g.n(); ++i) {
        for (int j = 0; j < g.n(); ++j) {
          map.values[static_cast<std::size_t>(j) * g.n() + i] =
              s.density.rho[static_cast<std::size_t>(i) * g.n() + j];
        }
      }
      io::save_text(output_path(dir, stem + ".svg"), io::render_heat_map(map));
    }
  }
}

// ---- subcommands ---------------------------------------------------------

int cmd_dispersion(const ModelOptions& mo, const std::vector<double>& k, std::ostream& out) {
  const DispersionModel model = mo.build();
  const WaveVector kv(to_vec(k));
  ConfigLines cfg;
  mo.describe(cfg);
  cfg.emplace_back("k", join(k));
  CsvTable t{cfg, {"omega"}, {}};
  std::vector<double> row{omega(model, kv)};
  const Vec vg = group_velocity(model, kv);
  const Mat h = hessian(model, kv);
  const HessianEigenvalues ev = hessian_eigenvalues(model, kv);
  for (int a = 0; a < kv.dim(); ++a) {
    t.columns.push_back(fmt::format("vg_{}", a + 1));
    row.push_back(vg[a]);
  }
  for (int a = 0; a < kv.dim(); ++a) {
    for (int b = 0; b < kv.dim(); ++b) {
      t.columns.push_back(fmt::format("h_{}{}", a + 1, b + 1));
      row.push_back(h(a, b));
    }
  }
  t.columns.insert(t.columns.end(), {"lambda_longitudinal", "lambda_transverse"});
  row.insert(row.end(), {ev.longitudinal, ev.transverse});
  t.rows.push_back(std::move(row));
  io::write_csv(out, t);
  return kOk;
}

int cmd_dirac_check(double mass, double hbar, double c, int samples, unsigned seed, double kmax,
                    std::ostream& out, std::ostream& err) {
  if (samples < 1) throw ConfigError("--samples must be positive");
  const dirac::DiracParams p{mass, hbar, c};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-kmax, kmax);
  CsvTable t{{{"mass", format_number(mass)},
              {"hbar", format_number(hbar)},
              {"c", format_number(c)},
              {"samples", std::to_string(samples)},
              {"seed", std::to_string(seed)},
              {"kmax", format_number(kmax)}},
             {"kx", "ky", "kz", "omega", "eig_1", "eig_2", "eig_3", "eig_4", "det_rel_err",
              "gram_err", "residual", "antiparticle_norm_err"},
             {}};
  double worst_det = 0, worst_eig = 0, worst_gram = 0, worst_res = 0, worst_anti = 0;
  for (int s = 0; s < samples; ++s) {
    const WaveVector k{u(rng), u(rng), u(rng)};
    const dirac::Mat4 m = dirac::dirac_matrix(k, p);
    const double w = dirac::on_shell_frequency(k, p);
    Eigen::SelfAdjointEigenSolver<dirac::Mat4> es(m, Eigen::EigenvaluesOnly);
    const Eigen::Vector4d ev = es.eigenvalues();
    const double det_exact = dirac::dirac_determinant(k, p);
    const double det_err = std::abs(m.determinant().real() - det_exact) / det_exact;
    const Eigen::Vector4d expect(-w, -w, w, w);
    const double eig_err = (ev - expect).cwiseAbs().maxCoeff() / std::max(1.0, w);
    const auto sol = dirac::dirac_solutions(k, p);
    const double gram = (dirac::gram_matrix(sol) - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff();
    const double res = dirac::max_eigen_residual(k, p, sol);
    const auto anti = dirac::antiparticle_spinor(k, p);
    const Vec km = -k.components();
    const auto sol_m = dirac::dirac_solutions(WaveVector(km), p);
    const double anti_err =
        std::max(std::abs(anti.plus.norm() - sol_m.nu_plus.norm()) / sol_m.nu_plus.norm(),
                 std::abs(anti.minus.norm() - sol_m.nu_minus.norm()) / sol_m.nu_minus.norm());
    worst_det = std::max(worst_det, det_err);
    worst_eig = std::max(worst_eig, eig_err);
    worst_gram = std::max(worst_gram, gram);
    worst_res = std::max(worst_res, res);
    worst_anti = std::max(worst_anti, anti_err);
    t.rows.push_back({k[0], k[1], k[2], w, ev[0], ev[1], ev[2], ev[3], det_err, gram, res, anti_err});
  }
  io::write_csv(out, t);
  const bool ok = worst_det < 1e-10 && worst_eig < 1e-10 && worst_gram < 1e-10 &&
                  worst_res < 1e-10 && worst_anti < 1e-12;
  fmt::print(err,
             "dirac-check: det {:.3g}, eigenvalues {:.3g}, gram {:.3g}, residual {:.3g}, "
             "antiparticle {:.3g}: {}\n",
             worst_det, worst_eig, worst_gram, worst_res, worst_anti, ok ? "ok" : "FAILED");
  return ok ? kOk : kNumericalFailure;
}

int cmd_evolve(const ModelOptions& mo, double sigma, const std::vector<double>& k0,
               std::vector<double> x0, double t_end, double dt, const std::string& path,
               std::ostream& out, std::ostream& err) {
  const DispersionModel model = mo.build();
  if (!(sigma > 0.0)) throw ConfigError("--sigma must be positive");
  if (x0.empty()) x0.assign(k0.size(), 0.0);
  if (x0.size() != k0.size()) throw ConfigError("--x0 and --k0 must have the same length");
  const CoherentPacket p = CoherentPacket::isotropic(to_vec(x0), sigma, to_vec(k0));
  const LocalDispersion local = LocalDispersion::from_model(model, p.k0);
  ConfigLines cfg;
  mo.describe(cfg);
  cfg.insert(cfg.end(), {{"sigma", format_number(sigma)},
                         {"k0", join(k0)},
                         {"x0", join(x0)},
                         {"t_end", format_number(t_end)},
                         {"dt", format_number(dt)}});
  CsvTable t{cfg, {"t", "det_sigma_t", "entropy_nats"}, {}};
  for (std::size_t a = 0; a < k0.size(); ++a) t.columns.push_back(fmt::format("center_{}", a + 1));
  const std::vector<double> times = uniform_times(t_end, dt);
  std::vector<double> s;
  for (double time : times) {
    const EvolvedGaussian g(p, local, time);
    std::vector<double> row{time, g.sigma_t().determinant(), gaussian_entropy(g)};
    for (int a = 0; a < g.dim(); ++a) row.push_back(g.center()[a]);
    s.push_back(row[2]);
    t.rows.push_back(std::move(row));
  }
  emit(t, path, out);
  if (times.size() >= 3) {
    const EntropyTrajectory traj(times, s, kAnalyticTolerance);
    fmt::print(err, "class {}\n", to_string(classify(traj)));
  }
  return kOk;
}

struct PropagateOptions {
  ModelOptions model;
  double t = 0.0;
  std::string mode = "exact";
  std::vector<double> expansion_k0;
  std::string in;
  std::string out;
  std::string csv;
  // Initial packet when no input field is given.
  double sigma = 1.0;
  std::vector<double> center{0.0};
  std::vector<double> packet_k0{0.0};
  int n = 1024;
  double lo = -32.0;
  double hi = 32.0;
};

int cmd_propagate(const PropagateOptions& o, std::ostream& out) {
  const DispersionModel model = o.model.build();
  ConfigLines cfg;
  o.model.describe(cfg);
  GridField f = [&] {
    if (!o.in.empty()) {
      cfg.emplace_back("in", o.in);
      return io::load_field(o.in);
    }
    if (o.center.size() != o.packet_k0.size()) {
      throw ConfigError("--center and --packet-k0 must have the same length");
    }
    const int d = static_cast<int>(o.center.size());
    const GridSpec spec = GridSpec::box(d, o.n, o.lo, o.hi);
    const CoherentPacket p = CoherentPacket::isotropic(to_vec(o.center), o.sigma, to_vec(o.packet_k0));
    const LocalDispersion still{0.0, Vec::Zero(d), Mat::Zero(d, d)};
    cfg.insert(cfg.end(), {{"sigma", format_number(o.sigma)},
                           {"center", join(o.center)},
                           {"packet_k0", join(o.packet_k0)},
                           {"n", std::to_string(o.n)},
                           {"lo", format_number(o.lo)},
                           {"hi", format_number(o.hi)}});
    return sample(EvolvedGaussian(p, still, 0.0), spec).normalized();
  }();
  PropagationMode mode = PropagationMode::exact();
  if (o.mode == "quadratic") {
    std::vector<double> k0 = o.expansion_k0;
    if (k0.empty()) k0.assign(static_cast<std::size_t>(f.spec().dim()), 0.0);
    mode = PropagationMode::quadratic(to_vec(k0));
    cfg.emplace_back("expansion_k0", join(k0));
  }
  cfg.emplace_back("t", format_number(o.t));
  cfg.emplace_back("mode", o.mode);
  const GridField g = spectral_propagate(f, model, o.t, mode);
  if (!o.out.empty()) io::save_field(o.out, g);
  if (!o.csv.empty()) {
    std::ofstream os(o.csv);
    if (!os) throw ConfigError("cannot open " + o.csv + " for writing");
    io::write_density_slice(os, g, 0, g.spec().n() / 2);
  }
  CsvTable t{cfg, {"t", "mass", "entropy_initial", "entropy_final", "momentum_entropy"}, {}};
  t.rows.push_back({o.t, g.mass(), numerical_entropy(f.normalized()),
                    numerical_entropy(g.normalized()), momentum_entropy(g.normalized())});
  io::write_csv(out, t);
  return kOk;
}

int cmd_classify(const std::string& path, double tol, int column, std::ostream& out) {
  const CsvTable t = io::load_csv(path);
  if (t.rows.empty()) throw ConfigError(path + " has no data rows");
  const auto width = static_cast<int>(t.rows.front().size());
  if (column < 1 || column >= width) {
    throw ConfigError(fmt::format("--column must be between 1 and {}", width - 1));
  }
  std::vector<double> times;
  std::vector<double> s;
  for (const auto& row : t.rows) {
    times.push_back(row[0]);
    s.push_back(row[static_cast<std::size_t>(column)]);
  }
  if (!(tol > 0.0)) throw ConfigError("--tol must be positive");
  const EntropyTrajectory traj(times, s, tol);
  const PartitionClass cls = classify(traj);
  std::string signs;
  for (int v : interval_signs(traj)) signs += v > 0 ? '+' : (v < 0 ? '-' : '0');
  fmt::print(out, "{}\n{}\n", to_string(cls), signs);
  return kOk;
}

int cmd_collide(const std::string& scenario, const std::string& dir, const std::string& prefix,
                bool svg, std::ostream& out, std::ostream& err) {
  const CollisionScenario s = io::collision_from_config(io::load_key_values(scenario));
  if (s.under_resolved()) {
    fmt::print(err, "warning: sigma < 3 grid spacings; entropies may not be converged\n");
  }
  const CollisionResult r = collision_run(s);
  const ConfigLines cfg = io::describe(s);
  io::save_csv(output_path(dir, prefix + ".csv"), trajectory_table(cfg, r));
  if (svg) trajectory_plot(output_path(dir, prefix + ".svg"), prefix, r.stats, r.trajectories);
  write_snapshots(dir, prefix, cfg, r, svg);
  for (std::size_t j = 0; j < r.stats.size(); ++j) {
    fmt::print(out, "{} {}\n", to_string(r.stats[j]), to_string(classify(r.trajectories[j])));
  }
  return kOk;
}

void write_sweep(const io::SweepConfig& sc, const std::string& dir, const std::string& prefix,
                 bool svg) {
  const auto rows = separation_sweep(sc.params, sc.distances());
  CsvTable t{io::describe(sc), {"x", "S_fermion", "S_boson", "S_boson_minus_fermion"}, {}};
  io::Series f{"fermion", {}, {}}, b{"boson", {}, {}}, diff{"boson - fermion", {}, {}};
  for (const auto& r : rows) {
    t.rows.push_back({r.x, r.s_fermion, r.s_boson, r.s_boson - r.s_fermion});
    f.x.push_back(r.x), f.y.push_back(r.s_fermion);
    b.x.push_back(r.x), b.y.push_back(r.s_boson);
    diff.x.push_back(r.x), diff.y.push_back(r.s_boson - r.s_fermion);
  }
  io::save_csv(output_path(dir, prefix + ".csv"), t);
  if (svg) {
    io::save_text(output_path(dir, prefix + "_entropy.svg"),
                  io::render_line_plot({prefix + " joint entropy", "x (du)", "entropy (nats)", {f, b}}));
    io::save_text(output_path(dir, prefix + "_difference.svg"),
                  io::render_line_plot({prefix + " boson minus fermion", "x (du)", "nats", {diff}}));
  }
}

int cmd_sweep(const std::string& scenario, const std::string& dir, const std::string& prefix,
              bool svg) {
  const io::SweepConfig sc =
      scenario.empty() ? io::SweepConfig{} : io::sweep_from_config(io::load_key_values(scenario));
  write_sweep(sc, dir, prefix, svg);
  return kOk;
}

}  // namespace

CollisionScenario preset_scenario(double vg, const std::string& preset) {
  CollisionScenario s;
  s.vg = vg;
  if (preset == "full") {
    s.grid_n = 6000;
  } else if (preset == "quarter") {
    s.grid_n = 1500;
  } else {
    throw ConfigError("--preset must be full or quarter");
  }
  return s;
}

namespace {

int cmd_figures(const std::string& which, const std::string& preset, const std::string& dir,
                bool svg, std::ostream& out, std::ostream& err) {
  const bool all = which == "all";
  if (all || which == "2") {
    write_sweep(io::SweepConfig{}, dir, "fig2", svg);
    fmt::print(out, "fig2 written\n");
  }
  if (all || which == "3") {
    CollisionScenario s = preset_scenario(2.0, preset);
    s.t_end = 0.0;
    s.snapshot_times = {10.0, 30.0, 70.0};
    const CollisionResult r = collision_run(s);
    ConfigLines cfg = io::describe(s);
    cfg.emplace_back("preset", preset);
    write_snapshots(dir, "fig3", cfg, r, svg);
    fmt::print(out, "fig3 written\n");
  }
  for (const auto& [name, vg] : {std::pair{"4a", 2.0}, std::pair{"4b", 8.0}}) {
    if (!(all || which == name)) continue;
    const CollisionScenario s = preset_scenario(vg, preset);
    if (s.under_resolved()) {
      fmt::print(err, "warning: sigma < 3 grid spacings; entropies may not be converged\n");
    }
    const CollisionResult r = collision_run(s);
    ConfigLines cfg = io::describe(s);
    cfg.emplace_back("preset", preset);
    const std::string stem = std::string("fig") + name;
    io::save_csv(output_path(dir, stem + ".csv"), trajectory_table(cfg, r));
    if (svg) trajectory_plot(output_path(dir, stem + ".svg"), stem, r.stats, r.trajectories);
    for (std::size_t j = 0; j < r.stats.size(); ++j) {
      fmt::print(out, "{} {} {}\n", stem, to_string(r.stats[j]), to_string(classify(r.trajectories[j])));
    }
  }
  return kOk;
}

void apply_thread_env() {
  if (const char* env = std::getenv("QDISP_THREADS")) {
    const int n = io::parse_int("QDISP_THREADS", env);
    if (n < 1) throw ConfigError("QDISP_THREADS must be a positive integer");
    kernels::set_threads(n);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entropy of dispersing quantum wave packets"};
  app.require_subcommand(1);

  ModelOptions disp_model;
  std::vector<double> disp_k{0.0};
  auto* disp = app.add_subcommand("dispersion", "omega, group velocity and Hessian at k");
  disp_model.add(disp);
  disp->add_option("--k", disp_k, "wave vector components")->delimiter(',');

  double dc_mass = 1.0, dc_hbar = 1.0, dc_c = 1.0, dc_kmax = 5.0;
  int dc_samples = 100;
  unsigned dc_seed = 1;
  auto* dc = app.add_subcommand("dirac-check", "verify the Dirac eigensystem at random k");
  dc->add_option("--mass", dc_mass);
  dc->add_option("--hbar", dc_hbar);
  dc->add_option("--c", dc_c);
  dc->add_option("--samples", dc_samples);
  dc->add_option("--seed", dc_seed);
  dc->add_option("--kmax", dc_kmax, "components drawn from [-kmax, kmax]");

  ModelOptions ev_model;
  double ev_sigma = 1.0, ev_t_end = 10.0, ev_dt = 1.0;
  std::vector<double> ev_k0{0.0}, ev_x0;
  std::string ev_out;
  auto* ev = app.add_subcommand("evolve", "analytic coherent packet entropy over time");
  ev_model.add(ev);
  ev->add_option("--sigma", ev_sigma, "amplitude width (covariance sigma^2 I)");
  ev->add_option("--k0", ev_k0, "centre wave vector")->delimiter(',');
  ev->add_option("--x0", ev_x0, "centre position")->delimiter(',');
  ev->add_option("--t-end", ev_t_end);
  ev->add_option("--dt", ev_dt);
  ev->add_option("--out", ev_out, "CSV path (default stdout)");

  PropagateOptions po;
  auto* pr = app.add_subcommand("propagate", "spectral propagation of a sampled field");
  po.model.add(pr);
  pr->add_option("--t", po.t)->required();
  pr->add_option("--mode", po.mode)->check(CLI::IsMember({"exact", "quadratic"}));
  pr->add_option("--expansion-k0", po.expansion_k0, "expansion point for quadratic mode")->delimiter(',');
  pr->add_option("--in", po.in, "input field file");
  pr->add_option("--out", po.out, "output field file");
  pr->add_option("--csv", po.csv, "density slice CSV along the first axis");
  pr->add_option("--sigma", po.sigma, "initial packet width when --in is absent");
  pr->add_option("--center", po.center)->delimiter(',');
  pr->add_option("--packet-k0", po.packet_k0)->delimiter(',');
  pr->add_option("--n", po.n, "grid points per axis");
  pr->add_option("--lo", po.lo);
  pr->add_option("--hi", po.hi);

  std::string cl_traj;
  double cl_tol = kGridTolerance;
  int cl_column = 1;
  auto* cl = app.add_subcommand("classify", "classify an entropy trajectory as C, W, M or I");
  cl->add_option("--traj", cl_traj, "CSV with time in the first column")->required();
  cl->add_option("--tol", cl_tol);
  cl->add_option("--column", cl_column, "entropy column index (0 is time)");

  std::string co_scenario, co_out = ".", co_prefix = "collide";
  bool co_no_svg = false;
  auto* co = app.add_subcommand("collide", "two-packet collision entropy trajectory");
  co->add_option("--scenario", co_scenario)->required();
  co->add_option("--out", co_out, "output directory");
  co->add_option("--prefix", co_prefix);
  co->add_flag("--no-svg", co_no_svg);

  std::string sw_scenario, sw_out = ".", sw_prefix = "sweep";
  bool sw_no_svg = false;
  auto* sw = app.add_subcommand("sweep", "joint entropy against packet separation");
  sw->add_option("--scenario", sw_scenario);
  sw->add_option("--out", sw_out, "output directory");
  sw->add_option("--prefix", sw_prefix);
  sw->add_flag("--no-svg", sw_no_svg);

  std::string fg_which = "all", fg_preset = "full", fg_out = "figures";
  bool fg_no_svg = false;
  auto* fg = app.add_subcommand("figures", "reproduce the separation sweep and collisions");
  fg->add_option("--which", fg_which)->check(CLI::IsMember({"2", "3", "4a", "4b", "all"}));
  fg->add_option("--preset", fg_preset)->check(CLI::IsMember({"full", "quarter"}));
  fg->add_option("--out", fg_out, "output directory");
  fg->add_flag("--no-svg", fg_no_svg);

  std::vector<const char*> argv{"qdisp"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kConfigError;
  }

  try {
    apply_thread_env();
    if (*disp) return cmd_dispersion(disp_model, disp_k, out);
    if (*dc) return cmd_dirac_check(dc_mass, dc_hbar, dc_c, dc_samples, dc_seed, dc_kmax, out, err);
    if (*ev) return cmd_evolve(ev_model, ev_sigma, ev_k0, ev_x0, ev_t_end, ev_dt, ev_out, out, err);
    if (*pr) return cmd_propagate(po, out);
    if (*cl) return cmd_classify(cl_traj, cl_tol, cl_column, out);
    if (*co) return cmd_collide(co_scenario, co_out, co_prefix, !co_no_svg, out, err);
    if (*sw) return cmd_sweep(sw_scenario, sw_out, sw_prefix, !sw_no_svg);
    if (*fg) return cmd_figures(fg_which, fg_preset, fg_out, !fg_no_svg, out, err);
  } catch (const ConfigError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kConfigError;
  } catch (const Error& e) {
    fmt::print(err, "error ({}): {}\n", to_string(e.kind()), e.what());
    return e.kind() == ErrorKind::InvalidArgument ? kConfigError : kNumericalFailure;
  } catch (const fs::filesystem_error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kConfigError;
  }
  return kConfigError;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace qdisp::cli
