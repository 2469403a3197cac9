#pragma once

#include <cstdint>
#include <utility>

#include "grid.hpp"

namespace fdb {

enum class ScoreLaw {
  gaussian,              // scenario A
  centered_exponential,  // scenario B: Exp(mean sqrt(lambda)) - sqrt(lambda)
  laplace_vs_gaussian,   // group 0 Laplace, group 1 normal, equal variances
};

ScoreLaw score_law_from_string(const std::string& s);
std::string score_law_to_string(ScoreLaw law);

/// Karhunen-Loeve generator on [0, 1]: X(t) = mu_k(t) + sum_j A_jk phi_j(t)
/// with a Fourier basis, plus optional white measurement noise. Labels are
/// fair-coin draws. Deterministic given the seed.
struct SimScenario {
  int components = 50;
  Eigen::VectorXd lambda0;   // score variances under group 0
  Eigen::VectorXd lambda1;   // score variances under group 1
  bool mean1_linear = false; // mu_1(t) = t when set, 0 otherwise; mu_0 = 0
  ScoreLaw score_law = ScoreLaw::gaussian;
  double noise_sd = 0.1;
  int grid_points = 51;
  int n_train = 100;
  int n_test = 500;
  std::uint64_t seed = 0;

  void validate() const;
};

/// phi_1 = 1, phi_2 = sqrt(2) cos(2 pi t), phi_3 = sqrt(2) sin(2 pi t), ...
/// Rows are basis functions evaluated on the grid.
Eigen::MatrixXd fourier_basis(const Grid& grid, int J);

Eigen::VectorXd exp_decay_eigenvalues(int J, double rate);  // exp(-rate * j), j = 1..J

SimScenario scenario_a(bool diff_mean, bool diff_var, int n_train, std::uint64_t seed);
SimScenario scenario_b(bool diff_mean, bool diff_var, int n_train, std::uint64_t seed);
SimScenario scenario_laplace_gaussian(const Eigen::VectorXd& nu, int n_train, std::uint64_t seed);

/// One sampled set of n curves from the scenario's law, using the given
/// substream seed directly.
CurveSet generate_set(const SimScenario& scn, int n, std::uint64_t stream_seed);

/// (train, test) pair on substreams 1 and 2 of the scenario seed.
std::pair<CurveSet, CurveSet> generate(const SimScenario& scn);

/// Groups share means (0) and per-component variances nu_j; only the score
/// law differs (Laplace vs normal). No measurement noise.
CurveSet generate_laplace_gaussian(const Eigen::VectorXd& nu, int n, std::uint64_t seed);

}  // namespace fdb
