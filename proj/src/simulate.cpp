#include "simulate.hpp"

#include <cmath>

#include "rng.hpp"

namespace fdb {

ScoreLaw score_law_from_string(const std::string& s) {
  if (s == "gaussian") return ScoreLaw::gaussian;
  if (s == "centered_exponential") return ScoreLaw::centered_exponential;
  if (s == "laplace_vs_gaussian") return ScoreLaw::laplace_vs_gaussian;
  fail(ErrorCode::invalid_argument, "unknown score law '" + s + "'");
}

std::string score_law_to_string(ScoreLaw law) {
  switch (law) {
    case ScoreLaw::gaussian: return "gaussian";
    case ScoreLaw::centered_exponential: return "centered_exponential";
    case ScoreLaw::laplace_vs_gaussian: return "laplace_vs_gaussian";
  }
  fail(ErrorCode::internal, "bad score law enum");
}

void SimScenario::validate() const {
  if (components < 1) fail(ErrorCode::invalid_argument, "scenario needs at least one component");
  if (lambda0.size() != components || lambda1.size() != components)
    fail(ErrorCode::invalid_argument, "eigenvalue sequences must have length `components`");
  if ((lambda0.array() <= 0.0).any() || (lambda1.array() <= 0.0).any())
    fail(ErrorCode::invalid_argument, "eigenvalue sequences must be positive");
  if (noise_sd < 0.0) fail(ErrorCode::invalid_argument, "noise_sd must be nonnegative");
  if (grid_points < 2) fail(ErrorCode::invalid_argument, "grid needs at least 2 points");
  if (n_train < 1 || n_test < 0) fail(ErrorCode::invalid_argument, "bad sample sizes");
}

Eigen::MatrixXd fourier_basis(const Grid& grid, int J) {
  const int m = grid.size();
  Eigen::MatrixXd phi(J, m);
  const double sqrt2 = std::sqrt(2.0);
  for (int j = 1; j <= J; ++j) {
    for (int l = 0; l < m; ++l) {
      const double t = grid.points(l);
      if (j == 1)
        phi(j - 1, l) = 1.0;
      else if (j % 2 == 0)
        phi(j - 1, l) = sqrt2 * std::cos(2.0 * M_PI * (j / 2) * t);
      else
        phi(j - 1, l) = sqrt2 * std::sin(2.0 * M_PI * (j / 2) * t);
    }
  }
  return phi;
}

Eigen::VectorXd exp_decay_eigenvalues(int J, double rate) {
  Eigen::VectorXd v(J);
  for (int j = 1; j <= J; ++j) v(j - 1) = std::exp(-rate * j);
  return v;
}

SimScenario scenario_a(bool diff_mean, bool diff_var, int n_train, std::uint64_t seed) {
  SimScenario s;
  s.lambda0 = exp_decay_eigenvalues(s.components, 1.0 / 3.0);
  s.lambda1 = diff_var ? exp_decay_eigenvalues(s.components, 1.0 / 2.0) : s.lambda0;
  s.mean1_linear = diff_mean;
  s.n_train = n_train;
  s.seed = seed;
  return s;
}

SimScenario scenario_b(bool diff_mean, bool diff_var, int n_train, std::uint64_t seed) {
  SimScenario s = scenario_a(diff_mean, diff_var, n_train, seed);
  s.score_law = ScoreLaw::centered_exponential;
  return s;
}

SimScenario scenario_laplace_gaussian(const Eigen::VectorXd& nu, int n_train, std::uint64_t seed) {
  SimScenario s;
  s.components = static_cast<int>(nu.size());
  s.lambda0 = nu;
  s.lambda1 = nu;
  s.score_law = ScoreLaw::laplace_vs_gaussian;
  s.noise_sd = 0.0;
  s.n_train = n_train;
  s.seed = seed;
  return s;
}

CurveSet generate_set(const SimScenario& scn, int n, std::uint64_t stream_seed) {
  scn.validate();
  CurveSet out;
  out.grid = Grid::uniform(0.0, 1.0, scn.grid_points);
  const int m = scn.grid_points;
  const Eigen::MatrixXd phi = fourier_basis(out.grid, scn.components);
  const Eigen::VectorXd mean1 =
      scn.mean1_linear ? Eigen::VectorXd(out.grid.points) : Eigen::VectorXd(Eigen::VectorXd::Zero(m));

  out.values.resize(n, m);
  out.labels.resize(n);
  Rng rng(stream_seed);
  Eigen::VectorXd scores(scn.components);
  for (int i = 0; i < n; ++i) {
    const int y = rng.uniform01() < 0.5 ? 0 : 1;
    out.labels[i] = y;
    const Eigen::VectorXd& lam = (y == 0) ? scn.lambda0 : scn.lambda1;
    for (int j = 0; j < scn.components; ++j) {
      switch (scn.score_law) {
        case ScoreLaw::gaussian:
          scores(j) = std::sqrt(lam(j)) * rng.gaussian();
          break;
        case ScoreLaw::centered_exponential: {
          const double theta = std::sqrt(lam(j));
          scores(j) = rng.exponential(theta) - theta;
          break;
        }
        case ScoreLaw::laplace_vs_gaussian:
          scores(j) = (y == 0) ? rng.laplace(std::sqrt(lam(j) / 2.0)) : std::sqrt(lam(j)) * rng.gaussian();
          break;
      }
    }
    Eigen::VectorXd row = phi.transpose() * scores;
    if (y == 1) row += mean1;
    if (scn.noise_sd > 0.0)
      for (int l = 0; l < m; ++l) row(l) += scn.noise_sd * rng.gaussian();
    out.values.row(i) = row.transpose();
  }
  return out;
}

std::pair<CurveSet, CurveSet> generate(const SimScenario& scn) {
  return {generate_set(scn, scn.n_train, derive_seed(scn.seed, 1)),
          generate_set(scn, scn.n_test, derive_seed(scn.seed, 2))};
}

CurveSet generate_laplace_gaussian(const Eigen::VectorXd& nu, int n, std::uint64_t seed) {
  const SimScenario scn = scenario_laplace_gaussian(nu, n, seed);
  return generate_set(scn, n, derive_seed(seed, 1));
}

}  // namespace fdb
