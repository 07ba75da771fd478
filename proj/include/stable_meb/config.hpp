#pragma once

namespace smeb {

/// Parameters of the sub-linear MEB algorithms. beta is a user-supplied lower
/// bound on the stability of the instance; c_net and c_hit are the constants
/// hidden in the sample-size asymptotics.
struct AlgoConfig {
  double epsilon = 0.1;
  double beta = 0.05;
  double eta = 0.1;    // failure probability of a single range/oracle call
  double eta0 = 0.1;   // overall failure probability of the binary-search algorithm
  double s = 1.0 / 3.0;
  double c_net = 1.0;
  double c_hit = 1.0;
};

/// Throws ConfigError when a field leaves its admissible range.
void validate(const AlgoConfig& cfg);

struct OutlierConfig {
  double gamma = 0.1;  // outlier fraction
  double beta = 0.05;  // stability lower bound of (P, gamma)
  double epsilon = 0.2;
  double eta = 0.1;
  double c_out = 1.0;
};

/// Also requires gamma + beta < 1.
void validate(const OutlierConfig& cfg);

}  // namespace smeb
