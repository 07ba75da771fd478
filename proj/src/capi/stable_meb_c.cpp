#include "stable_meb/stable_meb.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <filesystem>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "stable_meb/dataset_io.hpp"
#include "stable_meb/errors.hpp"
#include "stable_meb/experiment.hpp"
#include "stable_meb/stability.hpp"

struct smeb_dataset {
  smeb::PointSet points;
  std::optional<std::filesystem::path> path;
  smeb::Sidecar sidecar;
};

struct smeb_result {
  std::vector<smeb::TrialReport> reports;
  std::vector<std::string> lines;
};

namespace {

thread_local std::string g_last_error;

smeb_status fail(smeb_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <class F>
smeb_status guarded(F&& f) {
  try {
    f();
    return SMEB_OK;
  } catch (const smeb::ConfigError& e) {
    return fail(SMEB_ERR_CONFIG, e.what());
  } catch (const smeb::IoError& e) {
    return fail(SMEB_ERR_IO, e.what());
  } catch (const smeb::ContractViolation& e) {
    return fail(SMEB_ERR_CONTRACT, e.what());
  } catch (const smeb::Error& e) {
    return fail(SMEB_ERR_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SMEB_ERR_ALLOC, "out of memory");
  } catch (const std::exception& e) {
    return fail(SMEB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SMEB_ERR_INTERNAL, "unknown error");
  }
}

smeb::AlgoConfig to_cpp(const smeb_algo_config& c) {
  return {c.epsilon, c.beta, c.eta, c.eta0, c.s, c.c_net, c.c_hit};
}

smeb::OutlierConfig to_cpp(const smeb_outlier_config& c) {
  return {c.gamma, c.beta, c.epsilon, c.eta, c.c_out};
}

smeb::ExperimentPlan to_cpp(const smeb_plan& p) {
  if (p.algorithm == nullptr) throw smeb::ConfigError("plan.algorithm is NULL");
  smeb::ExperimentPlan plan;
  plan.algorithm = smeb::parse_algorithm(p.algorithm);
  plan.cfg = to_cpp(p.cfg);
  plan.outlier_cfg = to_cpp(p.outlier_cfg);
  plan.trials = p.trials;
  plan.base_seed = p.base_seed;
  plan.reference = smeb::parse_reference_mode(p.reference ? p.reference : "none");
  return plan;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string cache_key(const smeb::ExperimentPlan& plan, std::size_t remove_count) {
  std::string key(smeb::reference_mode_name(plan.reference));
  if (remove_count > 0) key += ":remove=" + std::to_string(remove_count);
  return key;
}

std::optional<double> resolve_reference(smeb_dataset& ds, const smeb::ExperimentPlan& plan) {
  if (plan.reference == smeb::ReferenceMode::None) return std::nullopt;
  const std::size_t remove = smeb::reference_remove_count(plan, ds.points.n());
  const std::size_t effective_remove =
      plan.reference == smeb::ReferenceMode::BruteForce ? remove : 0;
  const std::string key = cache_key(plan, effective_remove);
  if (auto it = ds.sidecar.reference_radius.find(key); it != ds.sidecar.reference_radius.end()) {
    return it->second;
  }
  const smeb::Ball ball =
      smeb::reference_ball(ds.points, plan.reference, ds.sidecar.inliers, effective_remove);
  ds.sidecar.reference_radius[key] = ball.radius;
  if (ds.path) smeb::write_sidecar(smeb::sidecar_path(*ds.path), ds.sidecar);
  return ball.radius;
}

}  // namespace

extern "C" {

const char* smeb_last_error(void) { return g_last_error.c_str(); }

const char* smeb_status_name(smeb_status status) {
  switch (status) {
    case SMEB_OK: return "ok";
    case SMEB_ERR_NULL: return "null argument";
    case SMEB_ERR_CONTRACT: return "contract violation";
    case SMEB_ERR_CONFIG: return "configuration error";
    case SMEB_ERR_IO: return "I/O error";
    case SMEB_ERR_ALLOC: return "allocation failure";
    case SMEB_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* smeb_version(void) { return "1.0.0"; }

void smeb_algo_config_default(smeb_algo_config* cfg) {
  if (cfg == nullptr) return;
  const smeb::AlgoConfig d;
  *cfg = {d.epsilon, d.beta, d.eta, d.eta0, d.s, d.c_net, d.c_hit};
}

void smeb_outlier_config_default(smeb_outlier_config* cfg) {
  if (cfg == nullptr) return;
  const smeb::OutlierConfig d;
  *cfg = {d.gamma, d.beta, d.epsilon, d.eta, d.c_out};
}

void smeb_instance_spec_default(smeb_instance_spec* spec) {
  if (spec == nullptr) return;
  const smeb::InstanceSpec d;
  spec->family = "uniform-ball";
  spec->n = d.n;
  spec->d = d.d;
  spec->gamma = d.gamma;
  spec->outlier_spread = d.outlier_spread;
  spec->seed = d.seed;
}

void smeb_plan_default(smeb_plan* plan) {
  if (plan == nullptr) return;
  plan->algorithm = "quick";
  smeb_algo_config_default(&plan->cfg);
  smeb_outlier_config_default(&plan->outlier_cfg);
  plan->trials = 1;
  plan->base_seed = 0;
  plan->reference = "none";
  plan->threads = 1;
}

void smeb_eval_options_default(smeb_eval_options* options) {
  if (options == nullptr) return;
  options->has_ratio_bound = 0;
  options->ratio_bound = 0.0;
  options->has_threshold = 0;
  options->threshold = 0.0;
  options->z = smeb::EvalOptions{}.z;
}

smeb_status smeb_dataset_load(const char* path, smeb_dataset** out) {
  if (path == nullptr || out == nullptr) return fail(SMEB_ERR_NULL, "path and out are required");
  *out = nullptr;
  return guarded([&] {
    smeb::PointSet points = smeb::load_points(path);
    smeb::Sidecar sidecar = smeb::read_sidecar(smeb::sidecar_path(path));
    if (sidecar.inliers) {
      for (smeb::Index i : *sidecar.inliers) {
        if (i >= points.n()) throw smeb::IoError("sidecar inlier index out of range");
      }
    }
    *out = new smeb_dataset{std::move(points), std::filesystem::path(path), std::move(sidecar)};
  });
}

smeb_status smeb_dataset_from_rows(const double* data, size_t n, size_t d, smeb_dataset** out) {
  if (out == nullptr || (data == nullptr && n * d > 0)) {
    return fail(SMEB_ERR_NULL, "data and out are required");
  }
  *out = nullptr;
  return guarded([&] {
    std::vector<double> values(data, data + n * d);
    *out = new smeb_dataset{smeb::PointSet(n, d, std::move(values)), std::nullopt, {}};
  });
}

smeb_status smeb_dataset_generate(const smeb_instance_spec* spec, smeb_dataset** out) {
  if (spec == nullptr || out == nullptr || spec->family == nullptr) {
    return fail(SMEB_ERR_NULL, "spec, spec->family and out are required");
  }
  *out = nullptr;
  return guarded([&] {
    smeb::InstanceSpec s;
    s.family = smeb::parse_family(spec->family);
    s.n = spec->n;
    s.d = spec->d;
    s.gamma = spec->gamma;
    s.outlier_spread = spec->outlier_spread;
    s.seed = spec->seed;
    smeb::GeneratedInstance g = smeb::generate(s);
    if (s.family == smeb::Family::RegularSimplex) s.n = g.points.n();
    smeb::Sidecar sidecar;
    sidecar.spec = s;
    sidecar.inliers = std::move(g.inliers);
    *out = new smeb_dataset{std::move(g.points), std::nullopt, std::move(sidecar)};
  });
}

smeb_status smeb_dataset_save(smeb_dataset* dataset, const char* path) {
  if (dataset == nullptr || path == nullptr) return fail(SMEB_ERR_NULL, "dataset and path are required");
  return guarded([&] {
    smeb::write_dataset(path, dataset->points);
    dataset->sidecar.reference_radius.clear();
    smeb::write_sidecar(smeb::sidecar_path(path), dataset->sidecar);
    dataset->path = std::filesystem::path(path);
  });
}

void smeb_dataset_free(smeb_dataset* dataset) { delete dataset; }

size_t smeb_dataset_n(const smeb_dataset* dataset) { return dataset ? dataset->points.n() : 0; }

size_t smeb_dataset_d(const smeb_dataset* dataset) { return dataset ? dataset->points.d() : 0; }

smeb_status smeb_dataset_row(const smeb_dataset* dataset, size_t i, double* out) {
  if (dataset == nullptr || out == nullptr) return fail(SMEB_ERR_NULL, "dataset and out are required");
  if (i >= dataset->points.n()) return fail(SMEB_ERR_CONTRACT, "row index out of range");
  const auto row = dataset->points.row(i);
  std::memcpy(out, row.data(), row.size() * sizeof(double));
  return SMEB_OK;
}

size_t smeb_dataset_inlier_count(const smeb_dataset* dataset) {
  if (dataset == nullptr || !dataset->sidecar.inliers) return 0;
  return dataset->sidecar.inliers->size();
}

smeb_status smeb_reference_radius(smeb_dataset* dataset, const smeb_plan* plan, double* out) {
  if (dataset == nullptr || plan == nullptr || out == nullptr) {
    return fail(SMEB_ERR_NULL, "dataset, plan and out are required");
  }
  return guarded([&] {
    const smeb::ExperimentPlan p = to_cpp(*plan);
    const auto r = resolve_reference(*dataset, p);
    if (!r) throw smeb::ConfigError("reference mode 'none' has no reference radius");
    *out = *r;
  });
}

smeb_status smeb_run(smeb_dataset* dataset, const smeb_plan* plan, smeb_result** out) {
  if (dataset == nullptr || plan == nullptr || out == nullptr) {
    return fail(SMEB_ERR_NULL, "dataset, plan and out are required");
  }
  *out = nullptr;
  return guarded([&] {
    const smeb::ExperimentPlan p = to_cpp(*plan);
    smeb::validate(p);
    const auto reference = resolve_reference(*dataset, p);
    auto result = std::make_unique<smeb_result>();
    result->reports = smeb::run_plan(dataset->points, p, reference, plan->threads);
    result->lines.reserve(result->reports.size());
    for (const auto& r : result->reports) result->lines.push_back(smeb::to_json_line(r));
    *out = result.release();
  });
}

size_t smeb_result_count(const smeb_result* result) { return result ? result->reports.size() : 0; }

const char* smeb_result_report_json(const smeb_result* result, size_t i) {
  if (result == nullptr || i >= result->lines.size()) return nullptr;
  return result->lines[i].c_str();
}

double smeb_result_radius(const smeb_result* result, size_t i) {
  if (result == nullptr || i >= result->reports.size()) return -1.0;
  return result->reports[i].radius;
}

void smeb_result_free(smeb_result* result) { delete result; }

smeb_status smeb_evaluate_jsonl(const char* text, const smeb_eval_options* options,
                                char** summary_json, char** table, int* all_pass) {
  if (text == nullptr || summary_json == nullptr || table == nullptr || all_pass == nullptr) {
    return fail(SMEB_ERR_NULL, "text, summary_json, table and all_pass are required");
  }
  *summary_json = nullptr;
  *table = nullptr;
  *all_pass = 0;
  return guarded([&] {
    smeb::EvalOptions opts;
    if (options != nullptr) {
      if (options->has_ratio_bound) opts.ratio_bound = options->ratio_bound;
      if (options->has_threshold) opts.threshold = options->threshold;
      if (options->z > 0.0) opts.z = options->z;
    }
    const smeb::EvalSummary summary = smeb::evaluate_lines(text, opts);
    char* json = dup_string(smeb::summary_json(summary));
    try {
      *table = dup_string(smeb::summary_table(summary));
    } catch (...) {
      std::free(json);
      throw;
    }
    *summary_json = json;
    *all_pass = summary.pass ? 1 : 0;
  });
}

void smeb_string_free(char* s) { std::free(s); }

}  // extern "C"
