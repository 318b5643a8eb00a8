// gapsolve: command-line front end for the gap eigenvalue solver and the
// companion experiments (Hardy sweeps, solitons, nonrelativistic limit,
// lowest Landau level).  Exit codes: 0 ok, 2 usage, 3 numerical failure,
// 4 hypothesis unmet.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "diracgap/csv.hpp"
#include "diracgap/errors.hpp"
#include "diracgap/gap.hpp"
#include "diracgap/hardy.hpp"
#include "diracgap/lambda_t.hpp"
#include "diracgap/magnetic.hpp"
#include "diracgap/soliton.hpp"
#include "diracgap/svg.hpp"

namespace fs = std::filesystem;
using namespace diracgap;

namespace {

int thread_budget() {
  if (const char* env = std::getenv("GAPSOLVE_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

/// Runs fn(i) for i in [0, n) on the worker pool; results must be written
/// into caller-owned slots so the output order stays deterministic.
void parallel_for(int n, const std::function<void(int)>& fn) {
  int workers = std::min(thread_budget(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = next++; i < n; i = next++) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  if (out.empty()) throw CLI::ValidationError("empty numeric list");
  return out;
}

/// Optional JSON config: a flat object whose keys are the long option names;
/// command-line flags take precedence.
void apply_config(CLI::App& app, const std::string& path) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw CLI::ValidationError("--config", std::string("parse error: ") + e.what());
  }
  if (!j.is_object()) throw CLI::ValidationError("--config", "top level must be an object");
  for (auto& [key, value] : j.items()) {
    CLI::Option* opt = app.get_option_no_throw("--" + key);
    if (!opt) throw CLI::ValidationError("--config", "unknown key '" + key + "'");
    if (opt->count() > 0) continue;  // flags override the file
    std::string text = value.is_string() ? value.get<std::string>() : value.dump();
    opt->add_result(text);
  }
}

struct CommonOutput {
  std::string out_dir = ".";

  fs::path path(const std::string& name) const {
    fs::create_directories(out_dir);
    return fs::path(out_dir) / name;
  }
};

void write_error_record(const CommonOutput& out, const std::string& kind,
                        const std::string& message) {
  std::ofstream rec(out.path("error.json"));
  nlohmann::json j;
  j["error"] = kind;
  j["message"] = message;
  rec << j.dump(2) << "\n";
}

std::string fmt(double v) { return format_double(v); }

Potential make_potential(const std::string& kind, double nu, double delta) {
  if (kind == "coulomb") return Potential::coulomb(nu);
  if (kind == "rcoulomb") return Potential::regularized_coulomb(nu, delta);
  if (kind.rfind("file:", 0) == 0) return Potential::from_file(kind.substr(5));
  throw CLI::ValidationError("--potential", "unknown kind " + kind);
}

// ---------------------------------------------------------------------------
// eig

struct EigArgs {
  double nu = 0.5, c = 1.0, delta = 0.01, tol = 1e-9, rmax = 0.0, h0frac = 1e-6;
  int kappa = -1, levels = 1, n = 200, degree = 2, refine = 0;
  std::string potential = "coulomb";
  CommonOutput out;
};

int run_eig(const EigArgs& a) {
  PhysicalParams params(a.c);
  AngularChannel channel(a.kappa);
  Potential V = make_potential(a.potential, a.nu, a.delta);
  double rmax = a.rmax > 0 ? a.rmax : suggest_rmax(V, params, channel, a.levels);
  SplineBasis basis = graded_radial_basis(a.n, rmax, a.degree, a.h0frac);

  std::ostringstream meta;
  meta << "eig nu=" << a.nu << " c=" << a.c << " kappa=" << a.kappa << " levels=" << a.levels
       << " n=" << a.n << " degree=" << a.degree << " rmax=" << rmax << " h0frac=" << a.h0frac
       << " potential=" << V.describe() << " tol=" << a.tol;

  LevelOptions opts;
  opts.tol = a.tol;
  std::vector<GapLevelResult> results(a.levels);
  parallel_for(a.levels, [&](int i) {
    results[i] = solve_level(i + 1, basis, V, params, channel, opts);
  });

  CsvWriter csv(a.out.path("eig.csv").string());
  csv.comment(meta.str());
  csv.header({"k", "kappa", "n", "lambda", "residual", "bracket_lo", "bracket_hi"});
  for (const auto& r : results)
    csv.row({format_int(r.k), format_int(r.kappa), format_int(r.n), fmt(r.lambda),
             fmt(r.mu_residual), fmt(r.bracket_lo), fmt(r.bracket_hi)});

  if (a.refine > 0) {
    std::vector<SplineBasis> bases;
    bases.push_back(basis);
    for (int i = 0; i < a.refine; ++i) bases.push_back(bases.back().refined());
    auto conv = converge_levels(1, bases, V, params, channel, opts);
    CsvWriter cc(a.out.path("convergence.csv").string());
    cc.comment(meta.str());
    cc.header({"k", "kappa", "n", "lambda", "drop_from_prev", "error_estimate"});
    for (std::size_t i = 0; i < conv.lambdas.size(); ++i) {
      double drop = i ? conv.lambdas[i - 1] - conv.lambdas[i] : 0.0;
      cc.row({format_int(1), format_int(a.kappa), format_int(conv.sizes[i]),
              fmt(conv.lambdas[i]), fmt(drop), fmt(conv.error_estimate)});
    }
    PlotSeries series;
    series.name = "lambda_1(n)";
    for (std::size_t i = 0; i < conv.lambdas.size(); ++i) {
      series.x.push_back(conv.sizes[i]);
      series.y.push_back(conv.lambdas[i]);
    }
    emit_plot({series}, PlotKind::Convergence, a.out.path("convergence.svg").string(),
              meta.str());
  }
  for (const auto& r : results)
    std::cout << "lambda_" << r.k << " = " << fmt(r.lambda) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// lambda-t

struct LambdaTArgs {
  double nu = 0.5, c = 1.0, delta = 0.01, h0frac = 1e-6, rmax = 0.0;
  int kappa = -1, n = 200, degree = 2;
  std::string potential = "coulomb";
  CommonOutput out;
};

int run_lambda_t(const LambdaTArgs& a) {
  PhysicalParams params(a.c);
  AngularChannel channel(a.kappa);
  Potential V = make_potential(a.potential, a.nu, a.delta);
  double rmax = a.rmax > 0 ? a.rmax : suggest_rmax(V, params, channel, 1);
  SplineBasis basis = graded_radial_basis(a.n, rmax, a.degree, a.h0frac);

  auto direct = solve_level(1, basis, V, params, channel);
  auto mint = min_lambda_T(V, params, channel, basis);

  std::ostringstream meta;
  meta << "lambda-t nu=" << a.nu << " c=" << a.c << " kappa=" << a.kappa << " n=" << a.n
       << " degree=" << a.degree << " rmax=" << rmax << " potential=" << V.describe();
  CsvWriter csv(a.out.path("lambdat.csv").string());
  csv.comment(meta.str());
  csv.header({"route", "lambda", "iterations", "grad_norm", "difference"});
  csv.row({"matrix-root", fmt(direct.lambda), format_int(int(direct.history.size())), "0",
           "0"});
  csv.row({"min-lambda-T", fmt(mint.value), format_int(mint.iterations), fmt(mint.grad_norm),
           fmt(mint.value - direct.lambda)});
  std::cout << "matrix-root  " << fmt(direct.lambda) << "\nmin-lambda-T " << fmt(mint.value)
            << "\ndifference   " << fmt(mint.value - direct.lambda) << "\n";
  if (!mint.converged)
    std::cerr << "warning: optimizer stopped before the gradient target\n";
  return 0;
}

// ---------------------------------------------------------------------------
// hardy

struct HardyArgs {
  int count = 100;
  std::uint64_t seed = 1;
  double c = 1.0;
  std::string ids = "kato-ineg,tix-ineg,Hardynubis,Hardynu1,Hardyhomog,Hardyclass";
  CommonOutput out;
};

int run_hardy(const HardyArgs& a) {
  PhysicalParams params(a.c);
  std::vector<std::string> ids;
  {
    std::stringstream ss(a.ids);
    std::string id;
    while (std::getline(ss, id, ','))
      if (!id.empty()) ids.push_back(id);
  }
  std::ostringstream meta;
  meta << "hardy count=" << a.count << " seed=" << a.seed << " c=" << a.c << " ids=" << a.ids;

  std::vector<std::vector<InequalityReport>> all(ids.size());
  HardySuiteOptions opts;
  opts.count = a.count;
  opts.seed = a.seed;
  parallel_for(static_cast<int>(ids.size()),
               [&](int i) { all[i] = run_hardy_family(ids[i], opts, params); });

  CsvWriter csv(a.out.path("hardy.csv").string());
  csv.comment(meta.str());
  csv.header({"inequality_id", "seed", "lhs", "rhs", "margin", "constant"});
  int violations = 0, unmet = 0;
  for (const auto& family : all) {
    for (const auto& rep : family) {
      if (!rep.hypothesis_ok) {
        ++unmet;
        csv.row({rep.id, format_int(static_cast<long long>(rep.seed)), "nan", "nan", "nan",
                 fmt(rep.constant)});
        continue;
      }
      if (rep.margin < -1e-10 * rep.rhs) ++violations;
      csv.row({rep.id, format_int(static_cast<long long>(rep.seed)), fmt(rep.lhs), fmt(rep.rhs),
               fmt(rep.margin), fmt(rep.constant)});
    }
  }
  std::cout << "checked " << ids.size() << " inequalities x " << a.count
            << " members; violations: " << violations << ", hypothesis-unmet: " << unmet << "\n";
  return violations == 0 ? 0 : 3;
}

// ---------------------------------------------------------------------------
// soliton

struct SolitonArgs {
  std::string model = "soler";
  double theta = 1.0, alpha = 0.5, omega = 0.5;
  int branches = 1;
  bool schwarzschild = false;
  bool compact_support = false;
  double r0 = 2.0, lambda = 1.0;
  CommonOutput out;
};

Nonlinearity make_nonlinearity(const SolitonArgs& a) {
  if (a.model == "soler") return Nonlinearity::soler();
  if (a.model == "power") return Nonlinearity::power(a.theta);
  if (a.model == "neg-power") return Nonlinearity::negative_power(a.alpha);
  if (a.model == "const") return Nonlinearity::constant(-1.0);
  throw CLI::ValidationError("--g", "unknown model " + a.model);
}

int run_soliton(const SolitonArgs& a) {
  Nonlinearity nl = make_nonlinearity(a);
  if (a.compact_support) {
    auto res = compact_support_criterion(nl);
    CsvWriter csv(a.out.path("compact.csv").string());
    std::ostringstream meta;
    meta << "soliton compact-support g=" << a.model << " alpha=" << a.alpha;
    csv.comment(meta.str());
    csv.header({"g", "bounded", "integral"});
    csv.row({a.model, format_int(res.bounded ? 1 : 0), fmt(res.integral)});
    std::cout << "support bounded: " << (res.bounded ? "yes" : "no")
              << " integral: " << fmt(res.integral) << "\n";
    return 0;
  }
  std::ostringstream meta;
  meta << "soliton g=" << a.model << " theta=" << a.theta << " omega=" << a.omega
       << " branches=" << a.branches;
  if (a.schwarzschild) meta << " schwarzschild r0=" << a.r0 << " lambda=" << a.lambda;

  std::vector<SolitonProfile> profiles(a.branches);
  if (a.schwarzschild) {
    SchwarzschildSetup setup{a.r0, a.lambda, a.omega};
    profiles.resize(1);
    profiles[0] = find_schwarzschild_branch(setup);
  } else {
    parallel_for(a.branches, [&](int i) { profiles[i] = find_excited(a.omega, nl, i + 1); });
  }

  CsvWriter csv(a.out.path("branches.csv").string());
  csv.comment(meta.str());
  csv.header({"omega", "n", "x_n", "nodes_u", "nodes_v", "decay_rate"});
  for (std::size_t i = 0; i < profiles.size(); ++i)
    csv.row({fmt(a.omega), format_int(static_cast<long long>(i + 1)), fmt(profiles[i].x0),
             format_int(profiles[i].nodes_u), format_int(profiles[i].nodes_v),
             fmt(profiles[i].decay_rate)});

  for (std::size_t i = 0; i < profiles.size(); ++i) {
    std::string name = "profile_" + std::to_string(i + 1) + ".csv";
    CsvWriter pc(a.out.path(name).string());
    pc.comment(meta.str());
    pc.header({"r", "u", "v"});
    for (std::size_t j = 0; j < profiles[i].r.size(); ++j)
      pc.row({fmt(profiles[i].r[j]), fmt(profiles[i].u[j]), fmt(profiles[i].v[j])});
    PlotSeries su{"u", profiles[i].r, profiles[i].u};
    PlotSeries sv{"v", profiles[i].r, profiles[i].v};
    emit_plot({su, sv}, PlotKind::Profile,
              a.out.path("profile_" + std::to_string(i + 1) + ".svg").string(), meta.str());
  }
  for (std::size_t i = 0; i < profiles.size(); ++i)
    std::cout << "x_" << i + 1 << " = " << fmt(profiles[i].x0)
              << " nodes=(" << profiles[i].nodes_u << "," << profiles[i].nodes_v << ")\n";
  return 0;
}

// ---------------------------------------------------------------------------
// limit (nonrelativistic sweep)

struct LimitArgs {
  double nu = 1.0;
  int kappa = -1, k = 1, n = 240, degree = 3;
  std::string cs = "5,10,20,40";
  CommonOutput out;
};

int run_limit(const LimitArgs& a) {
  Potential V = Potential::coulomb(a.nu);
  AngularChannel channel(a.kappa);
  NonrelOptions opts;
  opts.n = a.n;
  opts.degree = a.degree;
  auto sweep = nonrel_sweep(parse_list(a.cs), V, channel, a.k, opts);

  std::ostringstream meta;
  meta << "limit nu=" << a.nu << " kappa=" << a.kappa << " k=" << a.k << " cs=" << a.cs
       << " n=" << a.n << " degree=" << a.degree;
  CsvWriter csv(a.out.path("limit.csv").string());
  csv.comment(meta.str());
  csv.comment("fit mu(c) = mu_inf + slope/c^2: mu_inf=" + fmt(sweep.mu_inf) +
              " slope=" + fmt(sweep.slope));
  csv.header({"c", "lambda", "mu"});
  PlotSeries series{"mu(c)", {}, {}};
  for (const auto& p : sweep.points) {
    csv.row({fmt(p.c), fmt(p.lambda), fmt(p.mu)});
    series.x.push_back(p.c);
    series.y.push_back(p.mu);
  }
  emit_plot({series}, PlotKind::Sweep, a.out.path("limit.svg").string(), meta.str());
  std::cout << "mu_inf = " << fmt(sweep.mu_inf) << " (slope " << fmt(sweep.slope) << ")\n";
  return 0;
}

// ---------------------------------------------------------------------------
// magnetic

struct MagneticArgs {
  double nu = 0.5;
  std::string Bs = "1";
  int n = 160, degree = 3;
  bool critical = false;
  CommonOutput out;
};

int run_magnetic(const MagneticArgs& a) {
  std::ostringstream meta;
  meta << "magnetic nu=" << a.nu << " B=" << a.Bs << " n=" << a.n << " degree=" << a.degree
       << " critical=" << a.critical;

  if (a.critical) {
    CriticalFieldOptions opts;
    opts.n_basis = a.n;
    auto cf = critical_field(a.nu, opts);
    CsvWriter csv(a.out.path("critical.csv").string());
    csv.comment(meta.str());
    csv.header({"nu", "B_lower", "B_upper"});
    csv.row({fmt(a.nu), fmt(cf.B_lower), fmt(cf.B_upper)});
    std::cout << "B(" << a.nu << ") in [" << fmt(cf.B_lower) << ", " << fmt(cf.B_upper)
              << "], headline " << fmt(cf.headline) << "\n";
    return 0;
  }

  auto Bs = parse_list(a.Bs);
  std::vector<Landau1DResult> results(Bs.size());
  parallel_for(static_cast<int>(Bs.size()), [&](int i) {
    MagneticParams params(a.nu, Bs[i]);
    results[i] = minimize_c0(params, default_z_basis(Bs[i], a.n, a.degree));
  });
  CsvWriter csv(a.out.path("magnetic.csv").string());
  csv.comment(meta.str());
  csv.header({"nu", "B", "c0", "grad_norm"});
  for (std::size_t i = 0; i < Bs.size(); ++i)
    csv.row({fmt(a.nu), fmt(Bs[i]), fmt(results[i].c0), fmt(results[i].grad_norm)});
  for (std::size_t i = 0; i < Bs.size(); ++i)
    std::cout << "c0(" << a.nu << ", " << Bs[i] << ") = " << fmt(results[i].c0) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// regress: the fixed deterministic regression set

int run_regress(const std::string& out_dir, std::uint64_t seed) {
  EigArgs eig;
  eig.nu = 0.5;
  eig.n = 150;
  eig.levels = 3;
  eig.refine = 2;
  eig.n = 100;
  eig.out.out_dir = out_dir;
  run_eig(eig);

  LambdaTArgs lt;
  lt.nu = 0.5;
  lt.n = 100;
  lt.out.out_dir = out_dir;
  run_lambda_t(lt);

  HardyArgs hardy;
  hardy.count = 8;
  hardy.seed = seed;
  hardy.out.out_dir = out_dir;
  run_hardy(hardy);

  SolitonArgs sol;
  sol.branches = 2;
  sol.out.out_dir = out_dir;
  run_soliton(sol);

  LimitArgs limit;
  limit.cs = "5,10";
  limit.n = 150;
  limit.out.out_dir = out_dir;
  run_limit(limit);

  MagneticArgs mag;
  mag.nu = 0.9;
  mag.Bs = "1,10";
  mag.n = 100;
  mag.out.out_dir = out_dir;
  run_magnetic(mag);

  std::cout << "regression set written to " << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirac gap eigenvalues by the collapse-free min-max method, with "
               "companion soliton, Hardy-inequality and magnetic-level tools"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON file with long-option defaults")
      ->expected(1);

  EigArgs eig;
  auto* eig_cmd = app.add_subcommand("eig", "gap eigenvalues of D_c + V");
  eig_cmd->add_option("--nu", eig.nu, "coulomb coupling strength")->required()->check(CLI::PositiveNumber);
  eig_cmd->add_option("--c", eig.c, "speed of light")->check(CLI::PositiveNumber);
  eig_cmd->add_option("--kappa", eig.kappa, "angular channel (nonzero)");
  eig_cmd->add_option("--levels", eig.levels, "number of levels")->check(CLI::Range(1, 64));
  eig_cmd->add_option("--n", eig.n, "basis size");
  eig_cmd->add_option("--degree", eig.degree, "spline degree")->check(CLI::Range(2, 6));
  eig_cmd->add_option("--h0frac", eig.h0frac, "first cell width / rmax");
  eig_cmd->add_option("--rmax", eig.rmax, "domain radius (0 = auto)");
  eig_cmd->add_option("--potential", eig.potential, "coulomb | rcoulomb | file:PATH");
  eig_cmd->add_option("--delta", eig.delta, "regularization radius for rcoulomb");
  eig_cmd->add_option("--tol", eig.tol, "root tolerance on lambda");
  eig_cmd->add_option("--refine", eig.refine, "extra nested refinements for the convergence table");
  eig_cmd->add_option("--out", eig.out.out_dir, "output directory");

  LambdaTArgs lt;
  auto* lt_cmd = app.add_subcommand("lambda-t", "first level by direct minimization of lambda^T");
  lt_cmd->add_option("--nu", lt.nu)->required()->check(CLI::PositiveNumber);
  lt_cmd->add_option("--c", lt.c)->check(CLI::PositiveNumber);
  lt_cmd->add_option("--kappa", lt.kappa);
  lt_cmd->add_option("--n", lt.n);
  lt_cmd->add_option("--degree", lt.degree)->check(CLI::Range(2, 6));
  lt_cmd->add_option("--h0frac", lt.h0frac);
  lt_cmd->add_option("--rmax", lt.rmax);
  lt_cmd->add_option("--potential", lt.potential);
  lt_cmd->add_option("--delta", lt.delta);
  lt_cmd->add_option("--out", lt.out.out_dir);

  HardyArgs hardy;
  auto* hardy_cmd = app.add_subcommand("hardy", "hardy-type inequality sweep");
  hardy_cmd->add_option("--count", hardy.count)->check(CLI::Range(1, 100000));
  hardy_cmd->add_option("--seed", hardy.seed);
  hardy_cmd->add_option("--c", hardy.c)->check(CLI::PositiveNumber);
  hardy_cmd->add_option("--ids", hardy.ids, "comma-separated inequality ids");
  hardy_cmd->add_option("--out", hardy.out.out_dir);

  SolitonArgs sol;
  auto* sol_cmd = app.add_subcommand("soliton", "soler soliton branches by shooting");
  sol_cmd->add_option("--g", sol.model, "soler | power");
  sol_cmd->add_option("--theta", sol.theta, "homogeneity degree for power")->check(CLI::PositiveNumber);
  sol_cmd->add_option("--alpha", sol.alpha, "exponent for neg-power")->check(CLI::PositiveNumber);
  sol_cmd->add_flag("--compact-support", sol.compact_support,
                    "evaluate the bounded-support integral test for g");
  sol_cmd->add_option("--omega", sol.omega, "frequency in (0,1)");
  sol_cmd->add_option("--branches", sol.branches)->check(CLI::Range(1, 8));
  sol_cmd->add_flag("--schwarzschild", sol.schwarzschild, "curved-metric variant");
  sol_cmd->add_option("--r0", sol.r0, "star boundary radius (> 1)");
  sol_cmd->add_option("--lambda", sol.lambda, "cubic coupling");
  sol_cmd->add_option("--out", sol.out.out_dir);

  LimitArgs limit;
  auto* limit_cmd = app.add_subcommand("limit", "nonrelativistic limit sweep");
  limit_cmd->add_option("--nu", limit.nu)->required()->check(CLI::PositiveNumber);
  limit_cmd->add_option("--kappa", limit.kappa);
  limit_cmd->add_option("--k", limit.k)->check(CLI::Range(1, 16));
  limit_cmd->add_option("--cs", limit.cs, "comma-separated speeds of light");
  limit_cmd->add_option("--n", limit.n);
  limit_cmd->add_option("--degree", limit.degree)->check(CLI::Range(2, 6));
  limit_cmd->add_option("--out", limit.out.out_dir);

  MagneticArgs mag;
  auto* mag_cmd = app.add_subcommand("magnetic", "lowest Landau level c0 and critical field");
  mag_cmd->add_option("--nu", mag.nu, "coupling in (0,1)")->required();
  mag_cmd->add_option("--B", mag.Bs, "comma-separated field strengths");
  mag_cmd->add_option("--n", mag.n);
  mag_cmd->add_option("--degree", mag.degree)->check(CLI::Range(2, 6));
  mag_cmd->add_flag("--critical", mag.critical, "estimate the critical field bracket");
  mag_cmd->add_option("--out", mag.out.out_dir);

  std::string regress_out = "regress_out";
  std::uint64_t regress_seed = 1;
  auto* regress_cmd = app.add_subcommand("regress", "fixed deterministic regression set");
  regress_cmd->add_option("--out", regress_out);
  regress_cmd->add_option("--seed", regress_seed);

  CommonOutput* active_out = nullptr;
  try {
    app.parse(argc, argv);
    for (auto* sub : {eig_cmd, lt_cmd, hardy_cmd, sol_cmd, limit_cmd, mag_cmd, regress_cmd})
      if (sub->parsed() && !config_path.empty()) apply_config(*sub, config_path);

    if (eig_cmd->parsed()) {
      if (!(eig.nu < eig.c)) throw CLI::ValidationError("--nu", "requires nu < c");
      active_out = &eig.out;
      return run_eig(eig);
    }
    if (lt_cmd->parsed()) {
      active_out = &lt.out;
      return run_lambda_t(lt);
    }
    if (hardy_cmd->parsed()) {
      active_out = &hardy.out;
      return run_hardy(hardy);
    }
    if (sol_cmd->parsed()) {
      if (!sol.compact_support && sol_cmd->get_option("--omega")->count() == 0)
        throw CLI::RequiredError("--omega");
      if (!sol.compact_support && !(sol.omega > 0.0 && sol.omega < 1.0))
        throw CLI::ValidationError("--omega", "must lie in (0,1)");
      active_out = &sol.out;
      return run_soliton(sol);
    }
    if (limit_cmd->parsed()) {
      active_out = &limit.out;
      return run_limit(limit);
    }
    if (mag_cmd->parsed()) {
      if (!(mag.nu > 0.0 && mag.nu < 1.0))
        throw CLI::ValidationError("--nu", "must lie in (0,1)");
      active_out = &mag.out;
      return run_magnetic(mag);
    }
    if (regress_cmd->parsed()) return run_regress(regress_out, regress_seed);
    return 2;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const HypothesisUnmet& e) {
    std::cerr << "hypothesis unmet: " << e.what() << "\n";
    if (active_out) write_error_record(*active_out, "hypothesis-unmet", e.what());
    return 4;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    if (active_out) write_error_record(*active_out, "numerical", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (active_out) write_error_record(*active_out, "numerical", e.what());
    return 3;
  }
}
