#include "stable_meb/report.hpp"

#include <json.hpp>

#include "stable_meb/errors.hpp"

namespace smeb {

using nlohmann::json;

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Coreset: return "coreset";
    case Algorithm::Alg1: return "alg1";
    case Algorithm::Quick: return "quick";
    case Algorithm::Alg2: return "alg2";
    case Algorithm::Outlier: return "outlier";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "coreset") return Algorithm::Coreset;
  if (name == "alg1") return Algorithm::Alg1;
  if (name == "quick") return Algorithm::Quick;
  if (name == "alg2") return Algorithm::Alg2;
  if (name == "outlier") return Algorithm::Outlier;
  throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

namespace {

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> optional_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

json to_json(const TrialReport& r, bool with_time) {
  json j;
  j["algorithm"] = r.algorithm;
  j["seed"] = r.seed;
  j["stream"] = r.stream;
  j["n"] = r.n;
  j["d"] = r.d;
  j["cfg"] = {{"epsilon", r.cfg.epsilon}, {"beta", r.cfg.beta}, {"eta", r.cfg.eta},
              {"eta0", r.cfg.eta0},       {"s", r.cfg.s},       {"c_net", r.cfg.c_net},
              {"c_hit", r.cfg.c_hit}};
  if (r.outlier_cfg) {
    const auto& o = *r.outlier_cfg;
    j["outlier_cfg"] = {{"gamma", o.gamma}, {"beta", o.beta},   {"epsilon", o.epsilon},
                        {"eta", o.eta},     {"c_out", o.c_out}};
    j["gamma"] = o.gamma;
  }
  j["radius"] = r.radius;
  j["center_norm"] = r.center_norm;
  j["samples_drawn"] = r.samples_drawn;
  j["sample_budget"] = r.sample_budget;
  j["coverage_count"] = optional_json(r.coverage_count);
  j["target_coverage"] = r.target_coverage;
  j["reference_radius"] = optional_json(r.reference_radius);
  j["ratio_vs_reference"] = optional_json(r.ratio_vs_reference);
  j["fallback"] = r.fallback;
  if (with_time) j["wall_time_ms"] = r.wall_time_ms;
  if (r.coreset_iterations) j["coreset_iterations"] = *r.coreset_iterations;
  if (r.boundary_index) j["boundary_index"] = *r.boundary_index;
  if (r.grid_length) j["grid_length"] = *r.grid_length;
  if (r.oracle_calls) j["oracle_calls"] = *r.oracle_calls;
  if (r.search_restarted) j["search_restarted"] = *r.search_restarted;
  if (r.outlier_sample_size) j["outlier_sample_size"] = *r.outlier_sample_size;
  if (r.outlier_rank) j["outlier_rank"] = *r.outlier_rank;
  if (r.outlier_rank_proof) j["outlier_rank_proof"] = *r.outlier_rank_proof;
  return j;
}

}  // namespace

std::string to_json_line(const TrialReport& report) { return to_json(report, true).dump(); }

std::string deterministic_fields(const TrialReport& report) {
  return to_json(report, false).dump();
}

TrialReport parse_json_line(std::string_view line) {
  try {
    const json j = json::parse(line);
    TrialReport r;
    r.algorithm = j.at("algorithm").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.stream = j.value("stream", std::uint64_t{0});
    r.n = j.at("n").get<std::size_t>();
    r.d = j.at("d").get<std::size_t>();
    const json& c = j.at("cfg");
    r.cfg.epsilon = c.at("epsilon").get<double>();
    r.cfg.beta = c.at("beta").get<double>();
    r.cfg.eta = c.at("eta").get<double>();
    r.cfg.eta0 = c.at("eta0").get<double>();
    r.cfg.s = c.at("s").get<double>();
    r.cfg.c_net = c.at("c_net").get<double>();
    r.cfg.c_hit = c.at("c_hit").get<double>();
    if (j.contains("outlier_cfg") && !j.at("outlier_cfg").is_null()) {
      const json& o = j.at("outlier_cfg");
      r.outlier_cfg = OutlierConfig{o.at("gamma").get<double>(), o.at("beta").get<double>(),
                                    o.at("epsilon").get<double>(), o.at("eta").get<double>(),
                                    o.at("c_out").get<double>()};
    }
    r.radius = j.at("radius").get<double>();
    r.center_norm = j.at("center_norm").get<double>();
    r.samples_drawn = j.at("samples_drawn").get<std::size_t>();
    r.sample_budget = j.at("sample_budget").get<std::size_t>();
    r.coverage_count = optional_from<std::size_t>(j, "coverage_count");
    r.target_coverage = j.at("target_coverage").get<std::size_t>();
    r.reference_radius = optional_from<double>(j, "reference_radius");
    r.ratio_vs_reference = optional_from<double>(j, "ratio_vs_reference");
    r.fallback = j.at("fallback").get<bool>();
    r.wall_time_ms = j.value("wall_time_ms", 0.0);
    r.coreset_iterations = optional_from<std::size_t>(j, "coreset_iterations");
    r.boundary_index = optional_from<long long>(j, "boundary_index");
    r.grid_length = optional_from<std::size_t>(j, "grid_length");
    r.oracle_calls = optional_from<std::size_t>(j, "oracle_calls");
    r.search_restarted = optional_from<bool>(j, "search_restarted");
    r.outlier_sample_size = optional_from<std::size_t>(j, "outlier_sample_size");
    r.outlier_rank = optional_from<std::size_t>(j, "outlier_rank");
    r.outlier_rank_proof = optional_from<std::size_t>(j, "outlier_rank_proof");
    return r;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed report line: ") + e.what());
  }
}

}  // namespace smeb
