// Copyright 2026 The besovheat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// besovheat command-line tool. Exit codes: 0 pass, 1 quantitative failure, 2 usage or
// configuration error.

#include <besovheat/besovheat.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli_config.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using besovheat::cli::Block;
using besovheat::cli::RunConfig;
using besovheat::cli::UsageError;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr double kPi = 3.14159265358979323846;

struct ApiError : std::runtime_error {
  ApiError(bh_status s, const std::string& what) : std::runtime_error(what), status(s) {}
  bh_status status;
};

void check(bh_status s) {
  if (s != BH_OK) throw ApiError(s, std::string(bh_status_string(s)) + ": " + bh_last_error());
}

struct Globals {
  std::string config;
  std::string out;
  int threads = 0;
  std::string profile = "default";

  bool strict() const { return profile == "strict"; }
};

// RAII wrappers over the opaque handles.
struct ReportDeleter {
  void operator()(bh_report* r) const { bh_report_destroy(r); }
};
struct BankDeleter {
  void operator()(bh_bank* b) const { bh_bank_destroy(b); }
};
struct FieldDeleter {
  void operator()(bh_field* f) const { bh_field_destroy(f); }
};
struct SolutionDeleter {
  void operator()(bh_solution* s) const { bh_solution_destroy(s); }
};
using Report = std::unique_ptr<bh_report, ReportDeleter>;
using Bank = std::unique_ptr<bh_bank, BankDeleter>;
using FieldHandle = std::unique_ptr<bh_field, FieldDeleter>;
using Solution = std::unique_ptr<bh_solution, SolutionDeleter>;

Bank make_bank(const bh_grid_desc& grid, int jmin, int jmax) {
  bh_bank* b = nullptr;
  check(bh_bank_create(&grid, jmin, jmax, &b));
  return Bank(b);
}

FieldHandle load_field(const std::string& path) {
  if (path.empty()) throw UsageError("a field file is required");
  if (!fs::exists(path)) throw UsageError("field file '" + path + "' does not exist");
  bh_field* f = nullptr;
  check(bh_field_load(path.c_str(), &f));
  return FieldHandle(f);
}

std::uint64_t resolve_seed(Block& est) {
  std::uint64_t seed = 12345;
  if (const char* env = std::getenv("BESOVHEAT_SEED")) {
    try {
      seed = std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("BESOVHEAT_SEED is not an unsigned integer: '") + env + "'");
    }
  }
  return est.get<std::uint64_t>("seed", seed);
}

bh_kernel_kind parse_kind(const std::string& name) {
  bh_kernel_kind k;
  if (bh_kernel_kind_parse(name.c_str(), &k) != BH_OK) throw UsageError(bh_last_error());
  return k;
}

bh_kernel_kind parse_bc(const std::string& name) {
  const bh_kernel_kind k = parse_kind(name);
  if (k != BH_KERNEL_DIRICHLET && k != BH_KERNEL_NEUMANN)
    throw UsageError("boundary condition must be 'dirichlet' or 'neumann', got '" + name + "'");
  return k;
}

bh_family parse_family(const std::string& name) {
  if (name == "random") return BH_FAMILY_RANDOM;
  if (name == "dilation") return BH_FAMILY_DILATION;
  if (name == "translation") return BH_FAMILY_TRANSLATION;
  throw UsageError("family must be random, dilation or translation, got '" + name + "'");
}

template <class T>
std::vector<T> nonempty(std::vector<T> v, const std::string& what) {
  if (v.empty()) throw UsageError("empty range for '" + what + "'");
  return v;
}

void check_profile(Block& bank) {
  const std::string id = bank.get<std::string>("profile", bh_profile_id());
  if (id != bh_profile_id())
    throw UsageError("unsupported profile '" + id + "'; this build provides '" + bh_profile_id() + "'");
}

void read_quadrature(Block& est, bh_quadrature& q) {
  q.nodes_per_octave = est.get("nodes_per_octave", q.nodes_per_octave);
  q.box = est.get("box", q.box);
  q.step = est.get("step", q.step);
  q.richardson_tol = est.get("richardson_tol", q.richardson_tol);
  q.tail_tol = est.get("tail_tol", q.tail_tol);
  q.check_richardson = est.get("check_richardson", q.check_richardson != 0) ? 1 : 0;
}

// Grid, bank and exponent blocks of the space-time estimates.
bh_estimate_setup read_setup(RunConfig& cfg, bh_kernel_kind bc) {
  bh_estimate_setup s;
  bh_estimate_setup_default(bc, &s);
  s.dim = cfg.grid.get("n", s.dim);
  s.points = cfg.grid.get("N", s.points);
  s.length = cfg.grid.get("L", s.length);
  s.horizon = cfg.grid.get("T", s.horizon);
  s.time_points = cfg.grid.get("Nt", s.time_points);
  check_profile(cfg.bank);
  s.jmin = cfg.bank.get("jmin", s.jmin);
  s.jmax = cfg.bank.get("jmax", s.jmax);
  s.kmin = cfg.bank.get("kmin", s.kmin);
  s.kmax = cfg.bank.get("kmax", s.kmax);
  s.padded_time = cfg.bank.get("padded_time", s.padded_time);
  s.s = cfg.estimate.get("s", s.s);
  s.p = cfg.estimate.get("p", s.p);
  return s;
}

class Output {
 public:
  Output(const Globals& g, RunConfig& cfg) {
    // --out takes precedence over io.out.
    dir_ = cfg.io.get<std::string>("out", "");
    if (!g.out.empty()) dir_ = g.out;
    const auto formats = cfg.io.get<std::vector<std::string>>("formats", {"csv", "json"});
    for (const auto& f : formats) {
      if (f == "csv") csv_ = true;
      else if (f == "json") json_ = true;
      else throw UsageError("unknown output format '" + f + "' (csv, json)");
    }
  }

  bool enabled() const { return !dir_.empty(); }

  fs::path path(const std::string& name) const {
    fs::create_directories(dir_);
    return fs::path(dir_) / name;
  }

  void text(const std::string& name, const std::string& body) const {
    if (!enabled()) return;
    std::ofstream out(path(name), std::ios::binary);
    if (!out) throw ApiError(BH_IO, "cannot write '" + path(name).string() + "'");
    out << body;
  }

  bool csv() const { return csv_; }
  bool json_summary() const { return json_; }

 private:
  std::string dir_;
  bool csv_ = false;
  bool json_ = false;
};

void print_slopes(const bh_report* r) {
  for (std::size_t i = 0; i < bh_report_slope_count(r); ++i) {
    const char* name = nullptr;
    double value = 0, target = 0, tol = 0;
    int pass = 0;
    check(bh_report_slope(r, i, &name, &value, &target, &tol, &pass));
    std::cerr << "  " << name << ": " << value << " (target " << target << " +/- " << tol << ") "
              << (pass ? "ok" : "FAIL") << '\n';
  }
}

// Writes <name>.csv and <name>_summary.json, prints the summary and returns the exit code.
int emit(const Report& r, const std::string& name, const Output& out) {
  if (out.csv()) out.text(name + ".csv", bh_report_csv(r.get()));
  if (out.json_summary()) out.text(name + "_summary.json", bh_report_summary_json(r.get()) + std::string("\n"));
  std::cout << bh_report_summary_json(r.get()) << '\n';
  const bool pass = bh_report_pass(r.get()) != 0;
  std::cerr << bh_report_estimate(r.get()) << ": " << bh_report_row_count(r.get())
            << " rows, max ratio " << bh_report_max_ratio(r.get()) << (pass ? ", PASS" : ", FAIL") << '\n';
  print_slopes(r.get());
  return pass ? kExitPass : kExitFail;
}

// ---- lp-check -----------------------------------------------------------------------

int cmd_lp_check(RunConfig& cfg, const Globals& g) {
  bh_grid_desc grid{cfg.grid.get("n", 2), cfg.grid.get("N", 128), cfg.grid.get("L", 2 * kPi),
                    cfg.grid.get("halfspace", false) ? 1 : 0};
  check_profile(cfg.bank);
  const int jmin = cfg.bank.get("jmin", -2);
  const int jmax = cfg.bank.get("jmax", 4);
  const bool with_time = cfg.grid.has("T") || cfg.bank.has("kmin");
  const bh_time_desc time{cfg.grid.get("T", 1.0), cfg.grid.get("Nt", 129)};
  const int kmin = cfg.bank.get("kmin", -3);
  const int kmax = cfg.bank.get("kmax", 4);
  const int padded = cfg.bank.get("padded_time", 1024);
  const int samples = cfg.estimate.get("samples", 1000);
  const double tol = cfg.estimate.get("tolerance", g.strict() ? 1e-12 : 1e-10);
  Output out(g, cfg);
  cfg.reject_unknown();
  if (samples < 2) throw UsageError("estimate.samples must be at least 2");

  json summary{{"schema", 1}, {"estimate", "lp-check"}, {"profile", bh_profile_id()}, {"tolerance", tol}};
  bool pass = true;
  auto record = [&](const std::string& key, const bh_partition_report& r, int dim) {
    const bool ok = r.partition < tol && r.telescoping < tol && (dim < 2 || r.split_partition < tol);
    summary[key] = {{"partition", r.partition},
                    {"split_partition", r.split_partition},
                    {"telescoping", r.telescoping},
                    {"modes_below_window", r.modes_below_window},
                    {"pass", ok}};
    pass = pass && ok;
  };

  Bank space = make_bank(grid, jmin, jmax);
  bh_partition_report rep{};
  check(bh_bank_check(space.get(), samples, &rep));
  record("space", rep, grid.dim);
  if (with_time) {
    bh_bank* tb = nullptr;
    check(bh_time_bank_create(&time, padded, kmin, kmax, &tb));
    Bank tbank(tb);
    check(bh_bank_check(tbank.get(), samples, &rep));
    record("time", rep, 1);
  }
  summary["pass"] = pass;
  if (out.json_summary()) out.text("lp-check_summary.json", summary.dump(2) + "\n");
  std::cout << summary.dump() << '\n';
  return pass ? kExitPass : kExitFail;
}

// ---- norm ---------------------------------------------------------------------------

struct NormArgs {
  std::string field;
  std::string kind;
  std::optional<double> s, p, sigma, time_s, time_p, time_sigma;
  bool time = false;
};

double parse_exponent(const json& v, const std::string& key) {
  if (v.is_string() && (v.get<std::string>() == "inf" || v.get<std::string>() == "infinity")) return INFINITY;
  if (v.is_number()) return v.get<double>();
  throw UsageError("'" + key + "' must be a number or \"inf\"");
}

double exponent(Block& est, const std::string& key, std::optional<double> flag, double fallback) {
  if (flag) return *flag;
  if (!est.has(key)) return fallback;
  return parse_exponent(est.get<json>(key, json()), key);
}

// Largest dyadic window that stays below the Nyquist frequency pi N / L.
int nyquist_jmax(int points, double length) {
  return static_cast<int>(std::floor(std::log2(kPi * points / length))) - 1;
}

int cmd_norm(RunConfig& cfg, const Globals& g, const NormArgs& a) {
  const std::string path = a.field.empty() ? cfg.estimate.get<std::string>("field", "") : a.field;
  const std::string kind_name = a.kind.empty() ? cfg.estimate.get<std::string>("kind", "besov") : a.kind;
  bh_norm_params np;
  bh_norm_params_default(&np);
  np.s = exponent(cfg.estimate, "s", a.s, np.s);
  np.p = exponent(cfg.estimate, "p", a.p, np.p);
  np.sigma = exponent(cfg.estimate, "sigma", a.sigma, np.sigma);
  np.homogeneous = cfg.estimate.get("homogeneous", true) ? 1 : 0;
  np.allow_out_of_range = cfg.estimate.get("allow_out_of_range", false) ? 1 : 0;
  const bool time = a.time || cfg.estimate.get("time", false);
  std::optional<double> time_s = a.time_s;
  if (cfg.estimate.has("time_s") && !time_s) time_s = cfg.estimate.get("time_s", 0.0);
  const double time_p = exponent(cfg.estimate, "time_p", a.time_p, 1.0);
  const double time_sigma = exponent(cfg.estimate, "time_sigma", a.time_sigma, 1.0);
  check_profile(cfg.bank);
  std::optional<int> jmin, jmax;
  if (cfg.bank.has("jmin")) jmin = cfg.bank.get("jmin", 0);
  if (cfg.bank.has("jmax")) jmax = cfg.bank.get("jmax", 0);
  std::optional<int> kmin, kmax;
  if (cfg.bank.has("kmin")) kmin = cfg.bank.get("kmin", 0);
  if (cfg.bank.has("kmax")) kmax = cfg.bank.get("kmax", 0);
  std::optional<int> padded;
  if (cfg.bank.has("padded_time")) padded = cfg.bank.get("padded_time", 0);
  Output out(g, cfg);
  cfg.reject_unknown();

  bh_norm_kind kind;
  if (kind_name == "besov") kind = BH_NORM_BESOV;
  else if (kind_name == "triebel") kind = BH_NORM_TRIEBEL;
  else if (kind_name == "halfspace") kind = BH_NORM_HALFSPACE;
  else throw UsageError("norm kind must be besov, triebel or halfspace, got '" + kind_name + "'");

  FieldHandle field = load_field(path);
  bh_grid_desc grid;
  bh_time_desc tgrid{};
  int has_time = 0;
  check(bh_field_info(field.get(), &grid, &tgrid, &has_time, nullptr));
  if (time && !has_time) throw UsageError("--time needs a field file with a time axis");
  if (!time && has_time) throw UsageError("the field file holds a time series; pass --time for a space-time norm");

  const int hi = jmax.value_or(nyquist_jmax(grid.points, grid.length));
  const int lo = jmin.value_or(static_cast<int>(std::floor(std::log2(2 * kPi / grid.length))) - 1);
  Bank space = make_bank(grid, lo, hi);

  bh_norm_result r{};
  json summary{{"schema", 1}, {"estimate", "norm"}, {"field", path}, {"s", np.s}, {"p", np.p}, {"sigma", np.sigma}};
  if (time) {
    if (kind != BH_NORM_BESOV) throw UsageError("space-time norms use the besov spatial norm");
    Bank tbank;
    if (time_s) {
      const double dt = tgrid.horizon / (tgrid.points - 1);
      int pad = 1;
      while (pad < 2 * tgrid.points) pad *= 2;
      bh_bank* tb = nullptr;
      check(bh_time_bank_create(&tgrid, padded.value_or(std::max(pad, 1024)), kmin.value_or(-3),
                                kmax.value_or(static_cast<int>(std::floor(std::log2(kPi / dt))) - 1), &tb));
      tbank.reset(tb);
    }
    check(bh_bochner_norm(field.get(), space.get(), tbank.get(), time_s.value_or(0.0), time_p, time_sigma, &np, &r));
    json ts = nullptr;
    if (time_s) ts = time_s.value();
    summary["time"] = {{"s", ts}, {"p", time_p}, {"sigma", time_sigma}};
  } else {
    check(bh_norm(field.get(), space.get(), kind, &np, &r));
    summary["kind"] = kind_name;
  }
  summary["value"] = r.value;
  summary["warnings"] = bh_describe_warnings(r.warnings);
  summary["low_leftover"] = r.low_leftover;
  summary["high_leftover"] = r.high_leftover;
  summary["pass"] = true;
  if (out.json_summary()) out.text("norm_summary.json", summary.dump(2) + "\n");
  std::cout.precision(17);
  std::cout << r.value << '\n';
  if (r.warnings) std::cerr << "warnings: " << bh_describe_warnings(r.warnings) << '\n';
  return kExitPass;
}

// ---- kernel -------------------------------------------------------------------------

int cmd_kernel(RunConfig& cfg, const Globals& g) {
  bh_kernel_spec spec;
  bh_kernel_spec_default(&spec);
  spec.kind = parse_kind(cfg.estimate.get<std::string>("kind", "dirichlet"));
  spec.dim = cfg.estimate.get("dim", spec.dim);
  spec.k = cfg.estimate.get("k", spec.k);
  spec.j = cfg.estimate.get("j", spec.j);
  spec.eta = cfg.estimate.get("eta", spec.eta);
  if (cfg.estimate.has("m")) {
    spec.has_m = 1;
    spec.m = cfg.estimate.get("m", 0);
  }
  const auto b = cfg.estimate.get<std::vector<double>>("b", {spec.b[0], spec.b[1], spec.b[2]});
  if (b.size() != 3) throw UsageError("estimate.b needs three components");
  for (int i = 0; i < 3; ++i) spec.b[i] = b[i];
  const double t = cfg.estimate.get("t", 0.0);
  const auto x = cfg.estimate.get<std::vector<double>>("x", {0.0, 0.0});
  bh_quadrature q;
  bh_quadrature_default(&q);
  read_quadrature(cfg.estimate, q);
  Output out(g, cfg);
  cfg.reject_unknown();
  if (static_cast<int>(x.size()) < spec.dim - 1) throw UsageError("estimate.x needs n - 1 components");

  double value = NAN;
  if (!spec.has_m) check(bh_kernel_value(&spec, t, x.data(), &q, &value));
  bh_kernel_l1 l1{};
  check(bh_kernel_l1_norm(&spec, t, &q, &l1));
  json summary{{"schema", 1},      {"estimate", "kernel"},       {"k", spec.k},
               {"j", spec.j},      {"eta", spec.eta},            {"t", t},
               {"x", x},           {"l1_norm", l1.value},        {"richardson_error", l1.richardson_error},
               {"tail", l1.tail_estimate}, {"pass", true}};
  summary["value"] = spec.has_m ? json(nullptr) : json(value);
  if (spec.has_m) summary["m"] = spec.m;
  if (out.json_summary()) out.text("kernel_summary.json", summary.dump(2) + "\n");
  std::cout << summary.dump() << '\n';
  return kExitPass;
}

// ---- ortho --------------------------------------------------------------------------

int cmd_ortho(RunConfig& cfg, const Globals& g) {
  const std::string mode = cfg.estimate.get<std::string>("mode", "envelope");
  const double scale = g.strict() ? 0.5 : 1.0;
  const bh_kernel_kind kind = parse_kind(cfg.estimate.get<std::string>("kind", "dirichlet"));
  const int dim = cfg.estimate.get("dim", 2);
  bh_quadrature q;
  bh_quadrature_default(&q);
  bh_report* raw = nullptr;

  if (mode == "envelope") {
    bh_ortho_params p;
    bh_ortho_params_default(&p);
    const auto ks = nonempty(cfg.estimate.get("ks", std::vector<int>(p.ks, p.ks + p.nks)), "ks");
    const auto js = nonempty(cfg.estimate.get("js", std::vector<int>(p.js, p.js + p.njs)), "js");
    const auto ts = nonempty(cfg.estimate.get("t_units", std::vector<double>(p.t_units, p.t_units + p.nts)), "t_units");
    const auto etas =
        nonempty(cfg.estimate.get("eta_levels", std::vector<int>(p.eta_levels, p.eta_levels + p.netas)), "eta_levels");
    p.kind = kind;
    p.dim = dim;
    p.polynomial = cfg.estimate.get("polynomial", true) ? 1 : 0;
    p.slope_tolerance = cfg.estimate.get("slope_tolerance", p.slope_tolerance * scale);
    read_quadrature(cfg.estimate, p.quadrature);
    Output out(g, cfg);
    cfg.reject_unknown();
    p.ks = ks.data();
    p.nks = ks.size();
    p.js = js.data();
    p.njs = js.size();
    p.t_units = ts.data();
    p.nts = ts.size();
    p.eta_levels = etas.data();
    p.netas = etas.size();
    check(bh_ortho_sweep(&p, &raw));
    return emit(Report(raw), "ortho", out);
  }
  if (mode == "smoothed") {
    bh_smoothed_params p;
    bh_smoothed_params_default(&p);
    const auto ks = nonempty(cfg.estimate.get("ks", std::vector<int>(p.ks, p.ks + p.nks)), "ks");
    p.kind = kind;
    p.dim = dim;
    p.j = cfg.estimate.get("j", p.j);
    p.m_span = cfg.estimate.get("m_span", p.m_span);
    p.t_unit = cfg.estimate.get("t_unit", p.t_unit);
    p.eta_lo = cfg.estimate.get("eta_lo", p.eta_lo);
    p.eta_hi = cfg.estimate.get("eta_hi", p.eta_hi);
    p.eta_step = cfg.estimate.get("eta_step", p.eta_step);
    p.slope_tolerance = cfg.estimate.get("slope_tolerance", p.slope_tolerance * scale);
    read_quadrature(cfg.estimate, p.quadrature);
    Output out(g, cfg);
    cfg.reject_unknown();
    if (p.eta_hi < p.eta_lo || p.eta_step <= 0) throw UsageError("empty range for the eta grid");
    p.ks = ks.data();
    p.nks = ks.size();
    check(bh_smoothed_sweep(&p, &raw));
    return emit(Report(raw), "ortho-smoothed", out);
  }
  if (mode == "nd-ratio") {
    const auto ks = nonempty(cfg.estimate.get("ks", std::vector<int>{4, 6, 8, 10}), "ks");
    const int j = cfg.estimate.get("j", 0);
    const double tol = cfg.estimate.get("slope_tolerance", 0.1 * scale);
    read_quadrature(cfg.estimate, q);
    Output out(g, cfg);
    cfg.reject_unknown();
    check(bh_neumann_dirichlet_scaling(dim, ks.data(), ks.size(), j, tol, &q, &raw));
    return emit(Report(raw), "ortho-nd-ratio", out);
  }
  throw UsageError("estimate.mode must be envelope, smoothed or nd-ratio, got '" + mode + "'");
}

// ---- maxreg / trace -----------------------------------------------------------------

int cmd_maxreg(RunConfig& cfg, const Globals& g) {
  const bh_kernel_kind bc = parse_bc(cfg.estimate.get<std::string>("bc", "dirichlet"));
  bh_maxreg_params p{};
  p.setup = read_setup(cfg, bc);
  p.family = parse_family(cfg.estimate.get<std::string>("family", "random"));
  p.seed = resolve_seed(cfg.estimate);
  p.members = cfg.estimate.get("members", 10);
  p.band_lo = cfg.estimate.get("band_lo", 2.0);
  p.band_hi = cfg.estimate.get("band_hi", 5.0);
  const auto lambdas = cfg.estimate.get("lambdas", std::vector<double>{1.0, 2.0, 4.0});
  const auto steps = cfg.estimate.get("steps", std::vector<int>{0, 10, 20});
  const double scale = g.strict() ? 0.5 : 1.0;
  const double default_tol = p.family == BH_FAMILY_TRANSLATION ? 1e-6 : 0.1;
  p.invariance_tolerance =
      p.family == BH_FAMILY_RANDOM ? 0.0 : cfg.estimate.get("invariance_tolerance", default_tol * scale);
  p.spread_bound = cfg.estimate.get("spread_bound", 50.0);
  Output out(g, cfg);
  cfg.reject_unknown();
  if (p.family == BH_FAMILY_RANDOM && p.members < 1) throw UsageError("empty range: members must be positive");
  if (p.family == BH_FAMILY_DILATION) nonempty(lambdas, "lambdas");
  if (p.family == BH_FAMILY_TRANSLATION) nonempty(steps, "steps");
  p.lambdas = lambdas.data();
  p.nlambdas = lambdas.size();
  p.steps = steps.data();
  p.nsteps = steps.size();
  bh_report* raw = nullptr;
  check(bh_maxreg_sweep(&p, &raw));
  return emit(Report(raw), "maxreg", out);
}

int cmd_trace(RunConfig& cfg, const Globals& g) {
  bh_trace_params p{};
  p.setup = read_setup(cfg, BH_KERNEL_DIRICHLET);
  p.derivative = cfg.estimate.get("derivative", false) ? 1 : 0;
  p.family = parse_family(cfg.estimate.get<std::string>("family", "random"));
  p.seed = resolve_seed(cfg.estimate);
  p.members = cfg.estimate.get("members", 5);
  const auto lambdas = cfg.estimate.get("lambdas", std::vector<double>{1.0, 2.0, 4.0});
  p.invariance_tolerance =
      p.family == BH_FAMILY_DILATION ? cfg.estimate.get("invariance_tolerance", g.strict() ? 0.05 : 0.1) : 0.0;
  Output out(g, cfg);
  cfg.reject_unknown();
  if (p.family == BH_FAMILY_TRANSLATION) throw UsageError("trace sweeps use the random or dilation family");
  if (p.family == BH_FAMILY_RANDOM && p.members < 1) throw UsageError("empty range: members must be positive");
  if (p.family == BH_FAMILY_DILATION) nonempty(lambdas, "lambdas");
  p.lambdas = lambdas.data();
  p.nlambdas = lambdas.size();
  bh_report* raw = nullptr;
  check(bh_trace_sweep(&p, &raw));
  return emit(Report(raw), p.derivative ? "trace-derivative" : "trace", out);
}

// ---- scaling ------------------------------------------------------------------------

int cmd_scaling(RunConfig& cfg, const Globals& g) {
  bh_scaling_params p;
  bh_scaling_params_default(&p);
  p.bc = parse_bc(cfg.estimate.get<std::string>("bc", "dirichlet"));
  p.boundary_dim = cfg.grid.get("n", p.boundary_dim + 1) - 1;
  p.points = cfg.grid.get("N", p.points);
  p.length = cfg.grid.get("L", p.length);
  p.horizon = cfg.grid.get("T", p.horizon);
  p.time_points = cfg.grid.get("Nt", p.time_points);
  check_profile(cfg.bank);
  p.jmin = cfg.bank.get("jmin", p.jmin);
  p.jmax = cfg.bank.get("jmax", p.jmax);
  p.kmin = cfg.bank.get("kmin", p.kmin);
  p.kmax = cfg.bank.get("kmax", p.kmax);
  p.padded_time = cfg.bank.get("padded_time", p.padded_time);
  p.s = cfg.estimate.get("s", p.s);
  p.p = cfg.estimate.get("p", p.p);
  const std::string norm = cfg.estimate.get<std::string>("norm", "lebesgue");
  if (norm != "lebesgue" && norm != "time-triebel") throw UsageError("estimate.norm must be lebesgue or time-triebel");
  p.time_triebel = norm == "time-triebel" ? 1 : 0;
  p.tolerance = cfg.estimate.get("tolerance", p.tolerance * (g.strict() ? 0.5 : 1.0));
  const auto lambdas = nonempty(cfg.estimate.get("lambdas", std::vector<double>(p.lambdas, p.lambdas + p.nlambdas)),
                                "lambdas");
  Output out(g, cfg);
  cfg.reject_unknown();
  p.lambdas = lambdas.data();
  p.nlambdas = lambdas.size();
  bh_report* raw = nullptr;
  check(bh_scaling_sweep(&p, &raw));
  return emit(Report(raw), "scaling", out);
}

// ---- lemma-b ------------------------------------------------------------------------

int cmd_lemma_b(RunConfig& cfg, const Globals& g) {
  const int N = cfg.estimate.get("N", 2);
  const double a_min = cfg.estimate.get("a_min", 0.01);
  const double a_max = cfg.estimate.get("a_max", 100.0);
  const int count = cfg.estimate.get("count", 41);
  Output out(g, cfg);
  cfg.reject_unknown();
  if (count < 1 || !(a_min > 0.0) || a_max < a_min) throw UsageError("empty range for a: need 0 < a_min <= a_max");
  std::vector<double> a(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double u = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    a[static_cast<std::size_t>(i)] = a_min * std::pow(a_max / a_min, u);
  }
  bh_report* raw = nullptr;
  check(bh_lemma_b_sweep(N, a.data(), a.size(), &raw));
  return emit(Report(raw), "lemma-b", out);
}

// ---- solve --------------------------------------------------------------------------

// Dirichlet test problem on the half-space grid of period 2 pi:
// u = (1 + t) cos x' sin x_n + e^{-t} cos x' erfc(x_n / 2 sqrt t).
struct Manufactured {
  static double exact(double t, double xp, double xn) {
    const double layer = t > 0.0 ? std::erfc(xn / (2.0 * std::sqrt(t))) : 0.0;
    return (1.0 + t) * std::cos(xp) * std::sin(xn) + std::exp(-t) * std::cos(xp) * layer;
  }
  static double forcing(double t, double xp, double xn) { return (3.0 + 2.0 * t) * std::cos(xp) * std::sin(xn); }
  static double initial(double xp, double xn) { return std::cos(xp) * std::sin(xn); }
  static double boundary(double t, double xp) { return std::exp(-t) * std::cos(xp); }
};

double coordinate(const bh_grid_desc& g, int axis, int i) {
  const double h = g.length / g.points;
  if (g.halfspace && axis == g.dim - 1) return -0.5 * g.length + (i + 0.5) * h;
  return i * h;
}

// Samples f(x', x_n) in row-major order; x' is the first axis (n = 2 only).
template <class F>
std::vector<double> sample2(const bh_grid_desc& g, F f) {
  std::vector<double> out(static_cast<std::size_t>(g.points) * g.points);
  for (int a = 0; a < g.points; ++a)
    for (int b = 0; b < g.points; ++b)
      out[static_cast<std::size_t>(a) * g.points + b] = f(coordinate(g, 0, a), coordinate(g, 1, b));
  return out;
}

FieldHandle make_field(const bh_grid_desc& g, const bh_time_desc* t, const std::vector<double>& samples) {
  bh_field* f = nullptr;
  check(bh_field_create(&g, t, samples.data(), samples.size(), &f));
  return FieldHandle(f);
}

int cmd_solve(RunConfig& cfg, const Globals& g) {
  const bh_kernel_kind bc = parse_bc(cfg.estimate.get<std::string>("bc", "dirichlet"));
  const bool manufactured = cfg.estimate.get("manufactured", false);
  const std::string u0_path = cfg.estimate.get<std::string>("u0", "");
  const std::string f_path = cfg.estimate.get<std::string>("f", "");
  const std::string h_path = cfg.estimate.get<std::string>("h", "");
  const bool zero_boundary = cfg.estimate.get("zero_boundary", false);
  bh_solver_options opts;
  bh_solver_options_default(&opts);
  opts.grading_levels = cfg.estimate.get("grading_levels", opts.grading_levels);
  opts.nodes_per_panel = cfg.estimate.get("nodes_per_panel", opts.nodes_per_panel);
  opts.residual_threshold = cfg.estimate.get("residual_threshold", opts.residual_threshold);
  const double tol = cfg.estimate.get("tolerance", g.strict() ? 1e-4 : 1e-3);
  bh_grid_desc grid{cfg.grid.get("n", 2), cfg.grid.get("N", 64), cfg.grid.get("L", 2 * kPi), 1};
  bh_time_desc time{cfg.grid.get("T", 1.0), cfg.grid.get("Nt", grid.points + 1)};
  Output out(g, cfg);
  cfg.reject_unknown();

  FieldHandle u0, f, h;
  if (manufactured) {
    if (bc != BH_KERNEL_DIRICHLET) throw UsageError("the manufactured problem uses Dirichlet data");
    if (grid.dim != 2) throw UsageError("the manufactured problem is two-dimensional");
    if (std::abs(grid.length - 2 * kPi) > 1e-12) throw UsageError("the manufactured problem needs L = 2 pi");
    u0 = make_field(grid, nullptr, sample2(grid, Manufactured::initial));
    std::vector<double> fs, hs;
    const bh_grid_desc boundary{1, grid.points, grid.length, 0};
    for (int i = 0; i < time.points; ++i) {
      const double t = time.horizon * i / (time.points - 1);
      const auto slice = sample2(grid, [&](double xp, double xn) { return Manufactured::forcing(t, xp, xn); });
      fs.insert(fs.end(), slice.begin(), slice.end());
      for (int a = 0; a < grid.points; ++a) hs.push_back(Manufactured::boundary(t, coordinate(boundary, 0, a)));
    }
    f = make_field(grid, &time, fs);
    h = make_field(boundary, &time, hs);
  } else {
    if (h_path.empty() && !zero_boundary)
      throw UsageError("missing boundary datum: set estimate.h to a field file (or zero_boundary: true)");
    if (!u0_path.empty()) u0 = load_field(u0_path);
    if (!f_path.empty()) f = load_field(f_path);
    if (!h_path.empty()) h = load_field(h_path);
    // The grid of the data files wins over the config defaults.
    const bh_field* ref = u0 ? u0.get() : f ? f.get() : nullptr;
    if (ref) check(bh_field_info(ref, &grid, nullptr, nullptr, nullptr));
    if (h) {
      int has_time = 0;
      check(bh_field_info(h.get(), nullptr, &time, &has_time, nullptr));
      if (!has_time) throw UsageError("the boundary datum must be a time series");
    } else if (f) {
      check(bh_field_info(f.get(), nullptr, &time, nullptr, nullptr));
    }
  }

  bh_solution* raw = nullptr;
  check(bh_solve(bc, &grid, &time, u0.get(), f.get(), h.get(), &opts, &raw));
  Solution sol(raw);

  std::size_t count = 0;
  int flagged = 0;
  check(bh_solution_residual(sol.get(), nullptr, nullptr, &count, &flagged));
  std::vector<double> l2(count), mx(count);
  check(bh_solution_residual(sol.get(), l2.data(), mx.data(), &count, &flagged));

  bh_field* uraw = nullptr;
  check(bh_solution_field(sol.get(), BH_U, &uraw));
  FieldHandle u(uraw);
  if (out.enabled()) check(bh_field_save(u.get(), out.path("u.field").string().c_str()));

  json summary{{"schema", 1}, {"estimate", "solve"}, {"bc", bc == BH_KERNEL_DIRICHLET ? "dirichlet" : "neumann"}};
  summary["residual_max_l2"] = count ? *std::max_element(l2.begin(), l2.end()) : 0.0;
  summary["residual_flagged"] = flagged != 0;
  bool pass = flagged == 0;

  if (manufactured) {
    std::size_t total = 0;
    check(bh_field_info(u.get(), nullptr, nullptr, nullptr, &total));
    std::vector<double> all(total);
    check(bh_field_samples(u.get(), all.data(), total));
    const std::size_t per = static_cast<std::size_t>(grid.points) * grid.points;
    const double* last = all.data() + (total - per);
    double num = 0.0, den = 0.0;
    for (int a = 0; a < grid.points; ++a)
      for (int b = grid.points / 2; b < grid.points; ++b) {
        const double e = Manufactured::exact(time.horizon, coordinate(grid, 0, a), coordinate(grid, 1, b));
        const double d = last[static_cast<std::size_t>(a) * grid.points + b] - e;
        num += d * d;
        den += e * e;
      }
    const double rel = std::sqrt(num / den);
    summary["relative_l2_error"] = rel;
    summary["tolerance"] = tol;
    pass = pass && rel < tol;
  }
  summary["pass"] = pass;

  if (out.csv()) {
    std::ostringstream csv;
    csv << "step,residual_l2,residual_max\n";
    csv.precision(16);
    csv << std::scientific;
    for (std::size_t i = 0; i < count; ++i) csv << i + 1 << ',' << l2[i] << ',' << mx[i] << '\n';
    out.text("residual.csv", csv.str());
  }
  if (out.json_summary()) out.text("solve_summary.json", summary.dump(2) + "\n");
  std::cout << summary.dump() << '\n';
  return pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Littlewood-Paley norms, boundary potentials and half-space heat estimates"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(bh_version()));

  Globals g;
  app.add_option("--config", g.config, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", g.out, "directory for CSV, JSON and field outputs");
  app.add_option("--threads", g.threads, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  app.add_option("--tolerance-profile", g.profile, "default or strict")
      ->check(CLI::IsMember({"default", "strict"}));

  NormArgs norm;
  auto* lp = app.add_subcommand("lp-check", "check partition of unity and telescoping of the filter bank");
  auto* nm = app.add_subcommand("norm", "Besov / Triebel-Lizorkin norm of a field file");
  nm->add_option("field", norm.field, "field file");
  nm->add_option("--kind", norm.kind, "besov, triebel or halfspace");
  nm->add_option("--s", norm.s, "smoothness");
  nm->add_option("--p", norm.p, "integrability");
  nm->add_option("--sigma", norm.sigma, "summability");
  nm->add_flag("--time", norm.time, "space-time norm of a time series");
  nm->add_option("--time-s", norm.time_s, "time smoothness (F-norm in time)");
  nm->add_option("--time-p", norm.time_p, "time integrability");
  nm->add_option("--time-sigma", norm.time_sigma, "time summability");
  auto* kn = app.add_subcommand("kernel", "evaluate a dyadic boundary-potential block");
  auto* ortho = app.add_subcommand("ortho", "almost-orthogonality sweeps of the kernel blocks");
  auto* maxreg = app.add_subcommand("maxreg", "maximal regularity ratio sweep");
  auto* trace = app.add_subcommand("trace", "trace estimate ratio sweep");
  auto* scaling = app.add_subcommand("scaling", "dilation exponents of the boundary-data norms");
  auto* lemma = app.add_subcommand("lemma-b", "integral bound against its closed form");
  auto* solve = app.add_subcommand("solve", "solve the half-space heat problem");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    check(bh_set_threads(g.threads));
    RunConfig cfg = besovheat::cli::load_config(g.config);
    if (lp->parsed()) return cmd_lp_check(cfg, g);
    if (nm->parsed()) return cmd_norm(cfg, g, norm);
    if (kn->parsed()) return cmd_kernel(cfg, g);
    if (ortho->parsed()) return cmd_ortho(cfg, g);
    if (maxreg->parsed()) return cmd_maxreg(cfg, g);
    if (trace->parsed()) return cmd_trace(cfg, g);
    if (scaling->parsed()) return cmd_scaling(cfg, g);
    if (lemma->parsed()) return cmd_lemma_b(cfg, g);
    if (solve->parsed()) return cmd_solve(cfg, g);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ApiError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.status == BH_CONVERGENCE ? kExitFail : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
