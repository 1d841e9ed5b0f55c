// support.hpp — shared generators and checks for the test suites

#pragma once

#include <random>

#include "qar/dynamics.hpp"
#include "qar/liouvillian.hpp"
#include "qar/model.hpp"

namespace qar::test {

inline std::mt19937_64 make_rng(std::uint64_t seed) {
  return std::mt19937_64{seed};
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

enum class CouplingRegime { Strong, Weak };

// Valid parameter set with e2 = e1 + e3, equal cold/room temperatures and a
// hot bath above room. Strong regime keeps g well below min(E_i).
inline FridgeParams random_params(std::mt19937_64& rng,
                                  CouplingRegime regime) {
  const double e1 = uniform(rng, 0.5, 1.5);
  const double e3 = uniform(rng, 0.5, 1.5);
  const double t_room = uniform(rng, 5.0, 100.0);
  const double t_hot = t_room + uniform(rng, 1.0, 200.0);
  const double g = regime == CouplingRegime::Strong
                       ? uniform(rng, 0.05, 0.5) * std::min(e1, e3)
                       : uniform(rng, 1e-4, 1e-2);
  return FridgeParams(e1, e1 + e3, e3, g, t_room, t_room, t_hot);
}

inline BathSpec random_ohmic(std::mt19937_64& rng, BathModel model) {
  BathSpec bath;
  bath.model = model;
  bath.alpha = uniform(rng, 1e-4, 3e-3);
  bath.omega_cutoff = uniform(rng, 2e2, 2e3);
  bath.validate();
  return bath;
}

inline BathSpec random_model_ii(std::mt19937_64& rng,
                                const FridgeParams& params) {
  return BathSpec::model_ii(uniform(rng, 10.0, 40.0) * params.e2(),
                            uniform(rng, 0.02, 0.1));
}

inline Matrix random_hermitian(std::mt19937_64& rng, int dim) {
  Matrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      a(i, j) = Complex{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
  return 0.5 * (a + a.adjoint()).eval();
}

inline Matrix random_diagonal_state(std::mt19937_64& rng, int dim) {
  Eigen::VectorXd p(dim);
  for (int i = 0; i < dim; ++i) p(i) = uniform(rng, 0.01, 1.0);
  p /= p.sum();
  Matrix rho = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) rho(i, i) = p(i);
  return rho;
}

// ||L^dag(1)||_inf: largest trace-nonconservation over columns.
inline double trace_defect(const Liouvillian& liouvillian) {
  const int dim = liouvillian.dim;
  Vector identity_vec = Vector::Zero(dim * dim);
  for (int i = 0; i < dim; ++i) identity_vec(i * dim + i) = 1.0;
  const Vector defect = liouvillian.superop.adjoint() * identity_vec;
  return defect.cwiseAbs().maxCoeff();
}

// max over trials of ||L(rho)^dag - L(rho)||_max for random Hermitian rho.
inline double hermiticity_defect(const Liouvillian& liouvillian,
                                 std::mt19937_64& rng, int trials) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Matrix rho = random_hermitian(rng, liouvillian.dim);
    const Matrix out = liouvillian.apply(rho);
    worst = std::max(worst,
                     (out - out.adjoint()).cwiseAbs().maxCoeff() /
                         std::max(1.0, out.cwiseAbs().maxCoeff()));
  }
  return worst;
}

} // namespace qar::test
