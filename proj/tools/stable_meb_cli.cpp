// stable-meb: dataset generation, trial runs, evaluation and parameter sweeps.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "stable_meb/stable_meb.h"

namespace {

constexpr int kExitFailure = 1;   // evaluation criteria not met
constexpr int kExitError = 2;     // configuration or I/O error

int report_error(smeb_status st) {
  std::cerr << "error: " << smeb_status_name(st) << ": " << smeb_last_error() << '\n';
  return kExitError;
}

size_t worker_threads() {
  size_t n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("STABLE_MEB_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) n = std::min<size_t>(n, cap);
  }
  return n;
}

struct RunArgs {
  std::string dataset;
  std::string algorithm = "quick";
  std::optional<double> epsilon, beta, eta, eta0, gamma, s, c_net, c_hit, c_out;
  size_t trials = 1;
  uint64_t seed = 0;
  std::string reference = "none";
  std::string out;
};

void add_config_flags(CLI::App* cmd, RunArgs& a) {
  cmd->add_option("--epsilon", a.epsilon, "approximation parameter in (0,1)");
  cmd->add_option("--beta", a.beta, "stability lower bound in (0,1)");
  cmd->add_option("--eta", a.eta, "failure probability per call");
  cmd->add_option("--eta0", a.eta0, "overall failure probability of alg2");
  cmd->add_option("--gamma", a.gamma, "outlier fraction (outlier algorithm)");
  cmd->add_option("--s", a.s, "approximate-center split in (0,1)");
  cmd->add_option("--c-net", a.c_net, "epsilon-net sample constant (>= 1)");
  cmd->add_option("--c-hit", a.c_hit, "hitting-sample constant (>= 1)");
  cmd->add_option("--c-out", a.c_out, "outlier sample constant (>= 1)");
}

void add_plan_flags(CLI::App* cmd, RunArgs& a) {
  cmd->add_option("--dataset", a.dataset, "MEBD or CSV point file")->required();
  cmd->add_option("--algorithm", a.algorithm, "coreset | alg1 | quick | alg2 | outlier");
  cmd->add_option("--trials", a.trials, "number of trials (>= 1)");
  cmd->add_option("--seed", a.seed, "base seed; trial i uses stream seed + i");
  cmd->add_option("--reference", a.reference,
                  "none | coreset-highprec | ground-truth | brute-force");
  cmd->add_option("--out", a.out, "output file (default: standard output)");
}

smeb_plan make_plan(const RunArgs& a) {
  smeb_plan p;
  smeb_plan_default(&p);
  p.algorithm = a.algorithm.c_str();
  p.reference = a.reference.c_str();
  p.trials = a.trials;
  p.base_seed = a.seed;
  p.threads = worker_threads();
  if (a.epsilon) p.cfg.epsilon = p.outlier_cfg.epsilon = *a.epsilon;
  if (a.beta) p.cfg.beta = p.outlier_cfg.beta = *a.beta;
  if (a.eta) p.cfg.eta = p.outlier_cfg.eta = *a.eta;
  if (a.eta0) p.cfg.eta0 = *a.eta0;
  if (a.gamma) p.outlier_cfg.gamma = *a.gamma;
  if (a.s) p.cfg.s = *a.s;
  if (a.c_net) p.cfg.c_net = *a.c_net;
  if (a.c_hit) p.cfg.c_hit = *a.c_hit;
  if (a.c_out) p.outlier_cfg.c_out = *a.c_out;
  return p;
}

// Writes to --out when given, standard output otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::trunc);
      ok_ = static_cast<bool>(file_);
    }
  }
  bool ok() const { return ok_; }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
  bool ok_ = true;
};

int run_plans(const std::string& dataset_path, const std::vector<smeb_plan>& plans,
              const std::string& out) {
  smeb_dataset* ds = nullptr;
  smeb_status st = smeb_dataset_load(dataset_path.c_str(), &ds);
  if (st != SMEB_OK) return report_error(st);
  Sink sink(out);
  if (!sink.ok()) {
    smeb_dataset_free(ds);
    std::cerr << "error: cannot write " << out << '\n';
    return kExitError;
  }
  for (const smeb_plan& plan : plans) {
    smeb_result* res = nullptr;
    st = smeb_run(ds, &plan, &res);
    if (st != SMEB_OK) {
      smeb_dataset_free(ds);
      return report_error(st);
    }
    for (size_t i = 0; i < smeb_result_count(res); ++i) {
      sink.stream() << smeb_result_report_json(res, i) << '\n';
    }
    smeb_result_free(res);
  }
  smeb_dataset_free(ds);
  sink.stream().flush();
  if (!sink.stream()) {
    std::cerr << "error: write failed\n";
    return kExitError;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sub-linear minimum enclosing ball experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(smeb_version()));

  // gen
  smeb_instance_spec spec;
  smeb_instance_spec_default(&spec);
  std::string family = "uniform-ball";
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "generate a synthetic dataset and its sidecar");
  gen->add_option("--family", family, "uniform-ball | gaussian | regular-simplex | planted-outliers");
  gen->add_option("--n", spec.n, "number of points (ignored for the simplex)");
  gen->add_option("--d", spec.d, "dimension");
  gen->add_option("--gamma", spec.gamma, "outlier fraction for planted-outliers");
  gen->add_option("--spread", spec.outlier_spread, "outlier distance for planted-outliers");
  gen->add_option("--seed", spec.seed, "generator seed");
  gen->add_option("--out", gen_out, "output dataset path")->required();

  // run
  RunArgs run_args;
  auto* run = app.add_subcommand("run", "run trials of one algorithm and emit JSON-lines reports");
  add_plan_flags(run, run_args);
  add_config_flags(run, run_args);

  // eval
  std::string reports_path;
  std::string summary_out;
  std::optional<double> ratio_bound, threshold;
  double z = 2.576;
  auto* eval = app.add_subcommand("eval", "evaluate JSON-lines reports against success criteria");
  eval->add_option("reports", reports_path, "report file")->required();
  eval->add_option("--ratio-bound", ratio_bound, "override the per-algorithm ratio bound");
  eval->add_option("--threshold", threshold, "override the required success frequency");
  eval->add_option("--z", z, "normal quantile for the confidence margin");
  eval->add_option("--out", summary_out, "write the summary JSON here instead of standard output");

  // sweep
  RunArgs sweep_args;
  std::vector<double> eps_list, beta_list, gamma_list;
  auto* sweep = app.add_subcommand("sweep", "run the cartesian product of epsilon/beta/gamma lists");
  add_plan_flags(sweep, sweep_args);
  sweep->add_option("--epsilon", eps_list, "comma-separated epsilon values")->delimiter(',');
  sweep->add_option("--beta", beta_list, "comma-separated beta values")->delimiter(',');
  sweep->add_option("--gamma", gamma_list, "comma-separated gamma values")->delimiter(',');
  sweep->add_option("--eta", sweep_args.eta, "failure probability per call");
  sweep->add_option("--eta0", sweep_args.eta0, "overall failure probability of alg2");
  sweep->add_option("--c-net", sweep_args.c_net, "epsilon-net sample constant (>= 1)");
  sweep->add_option("--c-hit", sweep_args.c_hit, "hitting-sample constant (>= 1)");
  sweep->add_option("--c-out", sweep_args.c_out, "outlier sample constant (>= 1)");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    spec.family = family.c_str();
    smeb_dataset* ds = nullptr;
    smeb_status st = smeb_dataset_generate(&spec, &ds);
    if (st == SMEB_OK) st = smeb_dataset_save(ds, gen_out.c_str());
    if (st == SMEB_OK) {
      std::cerr << "wrote " << gen_out << ": n=" << smeb_dataset_n(ds) << " d=" << smeb_dataset_d(ds)
                << '\n';
    }
    smeb_dataset_free(ds);
    return st == SMEB_OK ? 0 : report_error(st);
  }

  if (run->parsed()) {
    return run_plans(run_args.dataset, {make_plan(run_args)}, run_args.out);
  }

  if (sweep->parsed()) {
    if (eps_list.empty()) eps_list.push_back(-1.0);
    if (beta_list.empty()) beta_list.push_back(-1.0);
    if (gamma_list.empty()) gamma_list.push_back(-1.0);
    std::vector<smeb_plan> plans;
    for (double e : eps_list) {
      for (double b : beta_list) {
        for (double g : gamma_list) {
          RunArgs a = sweep_args;
          if (e >= 0.0) a.epsilon = e;
          if (b >= 0.0) a.beta = b;
          if (g >= 0.0) a.gamma = g;
          plans.push_back(make_plan(a));
        }
      }
    }
    // The plans point into sweep_args strings, which outlive the loop.
    for (auto& p : plans) {
      p.algorithm = sweep_args.algorithm.c_str();
      p.reference = sweep_args.reference.c_str();
    }
    return run_plans(sweep_args.dataset, plans, sweep_args.out);
  }

  if (eval->parsed()) {
    std::ifstream in(reports_path);
    if (!in) {
      std::cerr << "error: cannot open " << reports_path << '\n';
      return kExitError;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    smeb_eval_options opts;
    smeb_eval_options_default(&opts);
    if (ratio_bound) {
      opts.has_ratio_bound = 1;
      opts.ratio_bound = *ratio_bound;
    }
    if (threshold) {
      opts.has_threshold = 1;
      opts.threshold = *threshold;
    }
    opts.z = z;
    char* json = nullptr;
    char* table = nullptr;
    int pass = 0;
    const smeb_status st = smeb_evaluate_jsonl(buf.str().c_str(), &opts, &json, &table, &pass);
    if (st != SMEB_OK) return report_error(st);
    std::cout << table;
    if (summary_out.empty()) {
      std::cout << json << '\n';
    } else {
      std::ofstream out(summary_out, std::ios::trunc);
      out << json << '\n';
      if (!out) {
        smeb_string_free(json);
        smeb_string_free(table);
        std::cerr << "error: cannot write " << summary_out << '\n';
        return kExitError;
      }
    }
    smeb_string_free(json);
    smeb_string_free(table);
    return pass ? 0 : kExitFailure;
  }
  return 0;
}
