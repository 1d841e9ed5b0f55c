// types.hpp — scalar/matrix aliases, numerical tolerances and error types

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace qar {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using SpMatrix = Eigen::SparseMatrix<Complex>;

inline constexpr Complex kImag{0.0, 1.0};

// Library-wide numerical tolerances. Defaults are fixed constants; callers
// may override individual fields (the CLI exposes them through the config).
struct Tolerances {
  double hermiticity = 1e-12;  // max entrywise |rho - rho^dag|
  double trace = 1e-10;        // |tr(rho) - 1|
  double positivity = 1e-9;    // allowed negative eigenvalue magnitude
  double ode_rel = 1e-8;       // integrator relative local error
  double ode_abs = 1e-10;      // integrator absolute local error
  double steady_residual = 1e-10;  // ||L rho_inf||
};

struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PositivityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoMinimumError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateSteadyStateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IntegrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace qar
