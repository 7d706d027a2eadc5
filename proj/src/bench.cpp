#include "iprox/bench.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace iprox {

const std::array<BenchCase, 16>& bench_table() {
  static const std::array<BenchCase, 16> table = {{
      {1, 200, 200, 1e-3},
      {2, 400, 400, 1e-3},
      {3, 800, 800, 1e-3},
      {4, 1600, 1600, 1e-3},
      {5, 200, 800, 1e-3},
      {6, 400, 1600, 1e-3},
      {7, 800, 200, 1e-3},
      {8, 1600, 400, 1e-3},
      {9, 200, 200, 1e-6},
      {10, 400, 400, 1e-6},
      {11, 800, 800, 1e-6},
      {12, 1600, 1600, 1e-6},
      {13, 200, 800, 1e-6},
      {14, 400, 1600, 1e-6},
      {15, 800, 200, 1e-6},
      {16, 1600, 400, 1e-6},
  }};
  return table;
}

BenchCase lookup_tn(int tn) {
  if (tn < 1 || tn > 16) {
    throw std::invalid_argument("lookup_tn: tn must be in 1..16");
  }
  return bench_table()[static_cast<std::size_t>(tn - 1)];
}

std::uint64_t instance_seed(std::uint64_t seed, int tn) {
  if (tn == 0) return seed;
  SplitMix64 rng(seed);
  std::uint64_t s = 0;
  for (int i = 0; i < tn; ++i) s = rng.next();
  return s;
}

namespace {

BenchCase resolve_case(const ExperimentConfig& cfg) {
  if (cfg.tn != 0) return lookup_tn(cfg.tn);
  if (cfg.m < 1 || cfg.n < 1) {
    throw std::invalid_argument("resolve_case: explicit case needs m, n >= 1");
  }
  return BenchCase{0, cfg.m, cfg.n, cfg.gamma};
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ResultRow make_row(int tn, const std::string& method, const Trace& trace,
                   bool has_eps) {
  ResultRow row;
  row.tn = tn;
  row.method = method;
  row.iter = static_cast<long>(trace.records.size());
  row.stop_reason = trace.stop_reason;
  row.eps = kNaN;
  if (!trace.records.empty()) {
    const IterationRecord& last = trace.back();
    row.fval = last.fval;
    row.gnorm = last.gnorm;
    row.error = last.omega;
    row.time_s = last.time_s;
    if (has_eps) row.eps = last.eps;
  }
  return row;
}

struct RunSetup {
  ImageRestorationInstance inst;
  std::shared_ptr<DualProxSolver> solver;
  CompositeProblem problem;
  double lambda = 0.0;
  ConstantsBundle constants;
};

RunSetup prepare(const ExperimentConfig& cfg, const BenchCase& bc) {
  RunSetup setup;
  setup.inst = generate_instance(bc.m, bc.n, bc.gamma,
                                 instance_seed(cfg.seed, cfg.tn));
  setup.solver = std::make_shared<DualProxSolver>(setup.inst.Bmat);
  setup.problem = make_problem(setup.inst, setup.solver.get());
  setup.lambda = 1.0 / (2.0 * setup.problem.f.descent_L);
  setup.constants = compute_constants(setup.lambda, setup.problem.f.descent_L,
                                      0.0);
  std::fprintf(stderr,
               "tn=%d m=%d n=%d gamma=%.17g L=%.17g lambda=%.17g C=%.17g "
               "Cscript=%.17g eps1=%.17g\n",
               cfg.tn, bc.m, bc.n, bc.gamma, setup.problem.f.descent_L,
               setup.lambda, setup.constants.C, setup.constants.Cscript,
               std::sqrt(100.0 / setup.constants.Cscript));
  return setup;
}

IpgmConfig ipgm_config(const RunSetup& setup, const ExperimentConfig& cfg) {
  IpgmConfig ic;
  ic.lambda = setup.lambda;
  ic.x1 = Vector::Zero(setup.inst.n());
  ic.eps1 = std::sqrt(100.0 / setup.constants.Cscript);
  ic.r1 = ic.eps1;
  ic.mu = 0.5;
  ic.theta = 0.5;
  ic.schedule = ErrorSchedule::proportional();
  ic.subsolver = warm_dual_subsolver(setup.solver, setup.inst.gamma);
  ic.inner_budget = cfg.inner_budget;
  ic.stop.max_iter = cfg.max_iter;
  ic.stop.time_limit_s = cfg.time_limit_s;
  return ic;
}

IfbConfig ifb_config(const RunSetup& setup, const ExperimentConfig& cfg) {
  IfbConfig fc;
  fc.lambda = setup.lambda;
  fc.x1 = Vector::Zero(setup.inst.n());
  fc.omega_exponent = 4.0;
  fc.subsolver = warm_dual_subsolver(setup.solver, setup.inst.gamma);
  fc.inner_budget = cfg.inner_budget;
  fc.stop.time_limit_s = cfg.time_limit_s;
  return fc;
}

}  // namespace

ExperimentResult run_experiment_1(const ExperimentConfig& cfg) {
  const BenchCase bc = resolve_case(cfg);
  RunSetup setup = prepare(cfg, bc);
  ExperimentResult out;
  out.constants = setup.constants;

  IfbConfig fc = ifb_config(setup, cfg);
  fc.stop.max_iter = cfg.ifb_iter_budget;
  out.ifb_trace = run_ifb(setup.problem, fc);
  ResultRow ifb_row = make_row(cfg.tn, "ifb", out.ifb_trace, false);

  IpgmConfig ic = ipgm_config(setup, cfg);
  ic.stop.target_fval = ifb_row.fval;
  out.ipgm_trace = run_ipgm(setup.problem, ic);
  ResultRow ipgm_row = make_row(cfg.tn, "ipgm", out.ipgm_trace, true);
  if (out.ipgm_trace.stop_reason != "target_fval") {
    ipgm_row.stop_reason = "budget";
  }

  out.rows = {ipgm_row, ifb_row};
  return out;
}

ExperimentResult run_experiment_2(const ExperimentConfig& cfg) {
  const BenchCase bc = resolve_case(cfg);
  RunSetup setup = prepare(cfg, bc);
  ExperimentResult out;
  out.constants = setup.constants;

  IpgmConfig ic = ipgm_config(setup, cfg);
  ic.stop.tol_gnorm = cfg.tol_gnorm;
  out.ipgm_trace = run_ipgm(setup.problem, ic);

  IfbConfig fc = ifb_config(setup, cfg);
  fc.stop.tol_gnorm = cfg.tol_gnorm;
  fc.stop.max_iter = cfg.max_iter;
  out.ifb_trace = run_ifb(setup.problem, fc);

  out.rows = {make_row(cfg.tn, "ipgm", out.ipgm_trace, true),
              make_row(cfg.tn, "ifb", out.ifb_trace, false)};
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.experiment == 1) return run_experiment_1(cfg);
  if (cfg.experiment == 2) return run_experiment_2(cfg);
  throw std::invalid_argument("run_experiment: experiment must be 1 or 2");
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string csv_header() {
  return "tn,method,iter,fval,gnorm,error,eps,time_s,stop_reason";
}

std::string format_row(const ResultRow& row) {
  std::string out;
  out += std::to_string(row.tn);
  out += ',';
  out += row.method;
  out += ',';
  out += std::to_string(row.iter);
  out += ',';
  out += fmt(row.fval);
  out += ',';
  out += fmt(row.gnorm);
  out += ',';
  out += fmt(row.error);
  out += ',';
  out += fmt(row.eps);
  out += ',';
  out += fmt(row.time_s);
  out += ',';
  out += row.stop_reason;
  return out;
}

void export_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("export_csv: cannot open " + path);
  os << csv_header() << '\n';
  for (const ResultRow& row : rows) os << format_row(row) << '\n';
  if (!os) throw std::runtime_error("export_csv: write failed for " + path);
}

std::vector<ResultRow> import_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("import_csv: cannot open " + path);
  std::string line;
  if (!std::getline(is, line) || line != csv_header()) {
    throw std::runtime_error("import_csv: bad header in " + path);
  }
  std::vector<ResultRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    ResultRow row;
    std::getline(ss, field, ',');
    row.tn = std::stoi(field);
    std::getline(ss, row.method, ',');
    std::getline(ss, field, ',');
    row.iter = std::stol(field);
    std::getline(ss, field, ',');
    row.fval = std::stod(field);
    std::getline(ss, field, ',');
    row.gnorm = std::stod(field);
    std::getline(ss, field, ',');
    row.error = std::stod(field);
    std::getline(ss, field, ',');
    row.eps = std::stod(field);
    std::getline(ss, field, ',');
    row.time_s = std::stod(field);
    std::getline(ss, row.stop_reason);
    rows.push_back(std::move(row));
  }
  return rows;
}

void export_trace(const Trace& trace, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("export_trace: cannot open " + path);
  os << "k,fval,gnorm,eps,r,is_null,subsolver_iters,gap,time_s\n";
  for (const IterationRecord& rec : trace.records) {
    os << rec.k << ',' << fmt(rec.fval) << ',' << fmt(rec.gnorm) << ','
       << fmt(rec.eps) << ',' << fmt(rec.r) << ',' << (rec.is_null ? 1 : 0)
       << ',' << static_cast<long>(rec.subsolver_iters) << ',' << fmt(rec.gap)
       << ',' << fmt(rec.time_s) << '\n';
  }
  if (!os) throw std::runtime_error("export_trace: write failed for " + path);
}

}  // namespace iprox
