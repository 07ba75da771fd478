#include "stable_meb/config.hpp"

#include <string>

#include "stable_meb/errors.hpp"

namespace smeb {

namespace {

void require_open_unit(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) {
    throw ConfigError(std::string(name) + " must lie in (0, 1), got " + std::to_string(v));
  }
}

void require_at_least_one(double v, const char* name) {
  if (!(v >= 1.0)) {
    throw ConfigError(std::string(name) + " must be >= 1, got " + std::to_string(v));
  }
}

}  // namespace

void validate(const AlgoConfig& cfg) {
  require_open_unit(cfg.epsilon, "epsilon");
  require_open_unit(cfg.beta, "beta");
  require_open_unit(cfg.eta, "eta");
  require_open_unit(cfg.eta0, "eta0");
  require_open_unit(cfg.s, "s");
  require_at_least_one(cfg.c_net, "c_net");
  require_at_least_one(cfg.c_hit, "c_hit");
}

void validate(const OutlierConfig& cfg) {
  require_open_unit(cfg.gamma, "gamma");
  require_open_unit(cfg.beta, "beta");
  require_open_unit(cfg.epsilon, "epsilon");
  require_open_unit(cfg.eta, "eta");
  require_at_least_one(cfg.c_out, "c_out");
  if (!(cfg.gamma + cfg.beta < 1.0)) {
    throw ConfigError("gamma + beta must be < 1, got " + std::to_string(cfg.gamma + cfg.beta));
  }
}

}  // namespace smeb
