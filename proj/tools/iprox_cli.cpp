#include <condition_variable>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "iprox/bench.hpp"
#include "json.hpp"

namespace {

using iprox::ExperimentConfig;
using iprox::ExperimentResult;
using iprox::ResultRow;

int worker_count() {
  const char* env = std::getenv("IPROX_WORKERS");
  if (env == nullptr) return 1;
  const int n = std::atoi(env);
  return n > 0 ? n : 1;
}

// Runs all 16 cases on a pool, streaming rows to the CSV in table order as
// soon as every earlier case has finished.
int run_all(const ExperimentConfig& base, const std::string& out_path) {
  std::ofstream os(out_path);
  if (!os) {
    std::cerr << "cannot open " << out_path << "\n";
    return 1;
  }
  os << iprox::csv_header() << '\n';
  os.flush();

  std::mutex mu;
  std::condition_variable cv;
  std::vector<std::vector<ResultRow>> done(17);
  std::vector<bool> ready(17, false);
  int next_tn = 1;
  int next_write = 1;
  bool failed = false;

  auto worker = [&] {
    while (true) {
      int tn;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (failed || next_tn > 16) return;
        tn = next_tn++;
      }
      ExperimentConfig cfg = base;
      cfg.tn = tn;
      try {
        ExperimentResult res = iprox::run_experiment(cfg);
        std::unique_lock<std::mutex> lock(mu);
        done[tn] = std::move(res.rows);
        ready[tn] = true;
        while (next_write <= 16 && ready[next_write]) {
          for (const ResultRow& row : done[next_write]) {
            os << iprox::format_row(row) << '\n';
          }
          os.flush();
          ++next_write;
        }
        cv.notify_all();
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(mu);
        std::cerr << "tn " << tn << " failed: " << e.what() << "\n";
        failed = true;
        cv.notify_all();
      }
    }
  };

  const int n_workers = std::min(worker_count(), 16);
  std::vector<std::thread> pool;
  for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return failed ? 1 : 0;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  cfg.experiment = j.value("experiment", cfg.experiment);
  cfg.tn = j.value("tn", cfg.tn);
  cfg.m = j.value("m", cfg.m);
  cfg.n = j.value("n", cfg.n);
  cfg.gamma = j.value("gamma", cfg.gamma);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.max_iter = j.value("max_iter", cfg.max_iter);
  cfg.time_limit_s = j.value("time_limit_s", cfg.time_limit_s);
  cfg.tol_gnorm = j.value("tol_gnorm", cfg.tol_gnorm);
  cfg.ifb_iter_budget = j.value("ifb_iter_budget", cfg.ifb_iter_budget);
  cfg.inner_budget = j.value("inner_budget", cfg.inner_budget);
  if (j.contains("m") && j.contains("n") && !j.contains("tn")) cfg.tn = 0;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"inexact proximal method benchmark harness"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::string tn_arg = "1";
  std::string out_path = "results.csv";
  std::string trace_path;

  CLI::App* bench = app.add_subcommand("bench", "run a benchmark experiment");
  bench->add_option("--experiment", cfg.experiment, "experiment number (1 or 2)")
      ->check(CLI::IsMember({1, 2}))
      ->required();
  bench->add_option("--tn", tn_arg, "table row 1..16, or 'all'");
  bench->add_option("--seed", cfg.seed, "instance seed");
  bench->add_option("--out", out_path, "output CSV path");
  bench->add_option("--max-iter", cfg.max_iter, "outer iteration limit");
  bench->add_option("--time-limit", cfg.time_limit_s, "wall-time limit (s)");
  bench->add_option("--tol-gnorm", cfg.tol_gnorm,
                    "gradient-mapping threshold (experiment 2)");
  bench->add_option("--ifb-iters", cfg.ifb_iter_budget,
                    "baseline iteration budget (experiment 1)");
  bench->add_option("--trace", trace_path,
                    "also write the proximal gradient trace CSV here");

  std::string config_path;
  CLI::App* solve = app.add_subcommand("solve", "run from a JSON config");
  solve->add_option("--config", config_path, "JSON config file")
      ->required()
      ->check(CLI::ExistingFile);
  solve->add_option("--out", out_path, "output CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (bench->parsed()) {
      if (tn_arg == "all") return run_all(cfg, out_path);
      cfg.tn = std::stoi(tn_arg);
      ExperimentResult res = iprox::run_experiment(cfg);
      iprox::export_csv(res.rows, out_path);
      if (!trace_path.empty()) iprox::export_trace(res.ipgm_trace, trace_path);
      return 0;
    }
    std::ifstream is(config_path);
    nlohmann::json j;
    is >> j;
    ExperimentConfig jc = config_from_json(j);
    if (j.contains("out")) out_path = j["out"].get<std::string>();
    ExperimentResult res = iprox::run_experiment(jc);
    iprox::export_csv(res.rows, out_path);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
