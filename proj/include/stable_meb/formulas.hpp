#pragma once

#include <cstddef>

namespace smeb::formulas {

/// Ceiling that ignores floating-point noise just above an integer, so that
/// e.g. 2/((1-1/3)*0.1) = 30.000000000000004 yields 30.
std::size_t ceil_count(double x);

/// Floor with the same tolerance (119.99999999999999 -> 120).
std::size_t floor_count(double x);

/// Approximate-center accuracy xi = s*eps/(1+eps).
double center_accuracy(double epsilon, double s);

/// Core-set iteration cap ceil(2/((1-s)*eps)); equals ceil(3/eps) at s = 1/3.
std::size_t coreset_iteration_cap(double epsilon, double s);

/// Expansion applied to the sample ball: (1+(2+sqrt2)sqrt(eps))/(1-eps).
double net_expansion(double epsilon);

/// Approximation ratio of the epsilon-net algorithm: expansion * (1+eps).
double net_ratio(double epsilon);

/// ceil(c_net * (d/beta) * ln(d/beta + e)).
std::size_t net_sample_size(std::size_t d, double beta, double c_net);

/// ceil(c_hit * (1/beta) * ln(1/eta)).
std::size_t range_sample_size(double beta, double eta, double c_hit);

/// ceil(c_hit * (1/beta) * ln(z/eta)).
std::size_t oracle_sample_size(double beta, double eta, std::size_t z, double c_hit);

/// 4/(1-eps), the ratio of the two-point ball.
double quick_ratio(double epsilon);

/// Grid length w = ceil(log_{1+eps}(2/(1-eps)^2)) + 1.
std::size_t search_grid_length(double epsilon);

/// Failure probability per search call: eta0 / (2 log2 w).
double search_eta(double eta0, std::size_t w);

/// Output radius factor (1+(4+4sqrt2)sqrt(eps/(1-eps)))/(1+eps).
double search_radius_factor(double epsilon);

/// Ratio bound (1+x1)(1+x2)/(1+eps) with x1 = 8eps/(1-eps),
/// x2 = (4+4sqrt2)sqrt(eps/(1-eps)).
double search_ratio(double epsilon);

/// Outlier sample size ceil(c_out * max(1/beta, 1/gamma) * (2g+b)^2/b^2 * ln(1/eta)).
std::size_t outlier_sample_size(double gamma, double beta, double eta, double c_out);

/// sigma = beta / (2 (2 gamma + beta)).
double outlier_sigma(double gamma, double beta);

/// Selection rank floor((2g+2b)/(2g+b) * g * m) + 1.
std::size_t outlier_rank(double gamma, double beta, std::size_t m);

/// Rank built in the gap argument: floor((1+sigma) * g * m) + 1.
std::size_t outlier_rank_proof(double gamma, double beta, std::size_t m);

/// Center-distance bound factor (2+sqrt2)sqrt(eps) for stable instances.
double center_shift_bound(double epsilon);

}  // namespace smeb::formulas
