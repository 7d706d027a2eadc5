#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "iprox/ipgm.hpp"
#include "iprox/problems.hpp"
#include "iprox/zero_finder.hpp"

namespace iprox {

/// One benchmark configuration: test number, problem shape, regularizer.
struct BenchCase {
  int tn = 0;
  int m = 0;
  int n = 0;
  double gamma = 0.0;
};

/// The 16 standard benchmark cases, in report order.
const std::array<BenchCase, 16>& bench_table();
BenchCase lookup_tn(int tn);

struct ExperimentConfig {
  int experiment = 1;
  /// 1..16 selects a table row; 0 means m/n/gamma are given explicitly.
  int tn = 1;
  int m = 0;
  int n = 0;
  double gamma = 0.0;
  std::uint64_t seed = 0;
  long max_iter = 2000000;
  double time_limit_s = 4000.0;
  double tol_gnorm = 0.1;        // experiment 2
  long ifb_iter_budget = 2000;   // experiment 1
  long inner_budget = 1000000;
};

struct ResultRow {
  int tn = 0;
  std::string method;
  long iter = 0;
  double fval = 0.0;
  double gnorm = 0.0;
  double error = 0.0;  // final omega_k
  double eps = 0.0;    // final eps_k, proximal gradient rows only (else NaN)
  double time_s = 0.0;
  std::string stop_reason;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  ConstantsBundle constants;
  Trace ipgm_trace;
  Trace ifb_trace;
};

/// Per-case instance seed derived from the run seed, stable whether the
/// case is run alone or as part of a sweep.
std::uint64_t instance_seed(std::uint64_t seed, int tn);

/// Baseline for a fixed iteration budget, then the proximal gradient
/// method until its objective drops below the baseline's.
ExperimentResult run_experiment_1(const ExperimentConfig& cfg);

/// Both methods to the gradient-mapping threshold under iteration and
/// time limits.
ExperimentResult run_experiment_2(const ExperimentConfig& cfg);

ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::string csv_header();
std::string format_row(const ResultRow& row);
void export_csv(const std::vector<ResultRow>& rows, const std::string& path);
std::vector<ResultRow> import_csv(const std::string& path);
void export_trace(const Trace& trace, const std::string& path);

}  // namespace iprox
