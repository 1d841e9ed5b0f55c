// model.cpp — parameter validation, basis operators and closed-form scalars

#include "qar/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace qar {

namespace {

void require(bool cond, const std::string& message) {
  if (!cond) throw std::invalid_argument(message);
}

} // namespace

FridgeParams::FridgeParams(double e1, double e2, double e3, double g,
                           double t_cold, double t_room, double t_hot)
    : energies_{e1, e2, e3}, g_(g), temperatures_{t_cold, t_room, t_hot} {
  require(e1 > 0 && e2 > 0 && e3 > 0, "qubit energies must be positive");
  require(std::abs(e2 - (e1 + e3)) <= 1e-12 * std::max(1.0, e2),
          "energy-conserving condition e2 = e1 + e3 violated");
  require(g >= 0, "interaction strength g must be nonnegative");
  require(t_cold > 0 && t_room > 0 && t_hot > 0,
          "bath temperatures must be positive");
  // Equality of room and hot temperatures is the degenerate no-bias
  // machine; sweeps exclude it by their own T_h > T_r precondition.
  require(t_cold <= t_room && t_room <= t_hot,
          "bath temperatures must satisfy t_cold <= t_room <= t_hot");
  // Store the resonance exactly so [H_loc, V] vanishes to rounding.
  energies_[1] = e1 + e3;
}

FridgeParams FridgeParams::with_g(double g) const {
  return FridgeParams(e1(), e2(), e3(), g, t_cold(), t_room(), t_hot());
}

FridgeParams FridgeParams::with_temperatures(double t_cold, double t_room,
                                             double t_hot) const {
  return FridgeParams(e1(), e2(), e3(), g_, t_cold, t_room, t_hot);
}

const char* to_string(BathModel model) {
  switch (model) {
    case BathModel::ModelIStrong: return "model1-strong";
    case BathModel::ModelIWeak: return "model1-weak";
    case BathModel::ModelII: return "model2";
    case BathModel::Stochastic: return "stochastic";
  }
  return "unknown";
}

BathModel bath_model_from_string(const std::string& name) {
  if (name == "model1-strong") return BathModel::ModelIStrong;
  if (name == "model1-weak") return BathModel::ModelIWeak;
  if (name == "model2") return BathModel::ModelII;
  if (name == "stochastic") return BathModel::Stochastic;
  throw std::invalid_argument("unknown bath model: " + name);
}

BathSpec BathSpec::model_i_strong(double alpha, double omega_cutoff) {
  BathSpec spec;
  spec.model = BathModel::ModelIStrong;
  spec.alpha = alpha;
  spec.omega_cutoff = omega_cutoff;
  spec.validate();
  return spec;
}

BathSpec BathSpec::model_i_weak(double alpha, double omega_cutoff) {
  BathSpec spec;
  spec.model = BathModel::ModelIWeak;
  spec.alpha = alpha;
  spec.omega_cutoff = omega_cutoff;
  spec.validate();
  return spec;
}

BathSpec BathSpec::model_ii(double gamma, double eta) {
  BathSpec spec;
  spec.model = BathModel::ModelII;
  spec.gamma = gamma;
  spec.eta = eta;
  spec.validate();
  return spec;
}

BathSpec BathSpec::model_ii_default(const FridgeParams& params) {
  return model_ii(20.0 * params.e2(), 0.05);
}

BathSpec BathSpec::stochastic(double alpha, double omega_cutoff) {
  BathSpec spec;
  spec.model = BathModel::Stochastic;
  spec.alpha = alpha;
  spec.omega_cutoff = omega_cutoff;
  spec.validate();
  return spec;
}

void BathSpec::validate() const {
  switch (model) {
    case BathModel::ModelIStrong:
    case BathModel::ModelIWeak:
    case BathModel::Stochastic:
      require(alpha > 0, "Ohmic coupling alpha must be positive");
      require(omega_cutoff > 0, "cutoff frequency must be positive");
      break;
    case BathModel::ModelII:
      require(gamma > 0, "Model II emission rate gamma must be positive");
      require(eta > 0 && eta < 1, "Model II coupling eta must lie in (0, 1)");
      break;
  }
}

DensityMatrix::DensityMatrix(Matrix entries, const Tolerances& tol)
    : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0)
    throw InvariantError("density matrix must be square and nonempty");
  const double herm =
      (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (herm >= tol.hermiticity) {
    std::ostringstream msg;
    msg << "density matrix not Hermitian: max |rho - rho^dag| = " << herm;
    throw InvariantError(msg.str());
  }
  const double trace_err = std::abs(entries_.trace() - Complex{1.0, 0.0});
  if (trace_err >= tol.trace) {
    std::ostringstream msg;
    msg << "density matrix trace deviates from 1 by " << trace_err;
    throw InvariantError(msg.str());
  }
  const double min_eig = min_eigenvalue();
  if (min_eig < -tol.positivity) {
    std::ostringstream msg;
    msg << "density matrix not positive: min eigenvalue " << min_eig;
    throw PositivityError(msg.str());
  }
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_,
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix sigma_z_1q() {
  Matrix sz = Matrix::Zero(2, 2);
  sz(0, 0) = -1.0;
  sz(1, 1) = 1.0;
  return sz;
}

Matrix sigma_plus_1q() {
  Matrix sp = Matrix::Zero(2, 2);
  sp(1, 0) = 1.0;
  return sp;
}

Matrix sigma_minus_1q() {
  Matrix sm = Matrix::Zero(2, 2);
  sm(0, 1) = 1.0;
  return sm;
}

Matrix embed_qubit_op(const Matrix& op, int qubit, int n_qubits) {
  if (qubit < 0 || qubit >= n_qubits)
    throw std::invalid_argument("qubit index out of range");
  const auto left = Matrix::Identity(1 << qubit, 1 << qubit);
  const auto right = Matrix::Identity(1 << (n_qubits - 1 - qubit),
                                      1 << (n_qubits - 1 - qubit));
  return kron(kron(left, op), right);
}

Matrix local_hamiltonian(const FridgeParams& params) {
  Matrix h = Matrix::Zero(basis::kDim, basis::kDim);
  for (int i = 0; i < basis::kNumQubits; ++i)
    h += 0.5 * params.energy(i) * embed_qubit_op(sigma_z_1q(), i, 3);
  return h;
}

Matrix interaction_hamiltonian(const FridgeParams& params) {
  Matrix v = Matrix::Zero(basis::kDim, basis::kDim);
  v(basis::kKet010, basis::kKet101) = params.g();
  v(basis::kKet101, basis::kKet010) = params.g();
  return v;
}

Matrix full_hamiltonian(const FridgeParams& params) {
  return local_hamiltonian(params) + interaction_hamiltonian(params);
}

Matrix trace_out_fictitious(const Matrix& rho64) {
  if (rho64.rows() != basis::kDimModelII)
    throw std::invalid_argument("expected a 64-dim Model II state");
  Matrix out = Matrix::Zero(basis::kDim, basis::kDim);
  for (int a = 0; a < basis::kDim; ++a)
    for (int b = 0; b < basis::kDim; ++b)
      for (int f = 0; f < basis::kDim; ++f)
        out(a, b) += rho64(a * basis::kDim + f, b * basis::kDim + f);
  return out;
}

Matrix physical_state(const Matrix& rho) {
  if (rho.rows() == basis::kDim) return rho;
  if (rho.rows() == basis::kDimModelII) return trace_out_fictitious(rho);
  throw std::invalid_argument("unsupported Hilbert dimension");
}

double qubit_sigma_z(const Matrix& rho8, int qubit) {
  if (rho8.rows() != basis::kDim)
    throw std::invalid_argument("expected an 8-dim state");
  double value = 0.0;
  for (int n = 0; n < basis::kDim; ++n) {
    const int bit = (n >> (2 - qubit)) & 1;
    value += (bit ? 1.0 : -1.0) * rho8(n, n).real();
  }
  return value;
}

double qubit_marginal_offdiag(const Matrix& rho8, int qubit) {
  // Reduced state of one qubit: trace out the other two.
  Complex offdiag = 0.0;
  for (int n = 0; n < basis::kDim; ++n) {
    const int shift = 2 - qubit;
    if ((n >> shift) & 1) continue;  // n has the qubit in |0>
    const int m = n | (1 << shift);  // partner with the qubit in |1>
    offdiag += rho8(n, m);
  }
  return std::abs(offdiag);
}

Complex transport_coherence(const Matrix& rho8) {
  if (rho8.rows() != basis::kDim)
    throw std::invalid_argument("expected an 8-dim state");
  return rho8(basis::kKet101, basis::kKet010);
}

DensityMatrix thermal_product_state(const FridgeParams& params,
                                    const Tolerances& tol) {
  Matrix rho = Matrix::Identity(1, 1);
  for (int i = 0; i < basis::kNumQubits; ++i) {
    const double x = params.beta(i) * params.energy(i) / 2.0;
    Matrix qubit = Matrix::Zero(2, 2);
    // exp(-beta E sigma_z / 2): |0> (ground) carries weight e^{+x}.
    // Logistic form stays finite for beta E >> 1.
    qubit(0, 0) = 1.0 / (1.0 + std::exp(-2.0 * x));
    qubit(1, 1) = 1.0 / (1.0 + std::exp(2.0 * x));
    rho = kron(rho, qubit);
  }
  return DensityMatrix(std::move(rho), tol);
}

double virtual_temperature(const FridgeParams& params) {
  const double num = params.e2() - params.e3();
  const double den =
      params.beta(1) * params.e2() - params.beta(2) * params.e3();
  if (std::abs(den) < 1e-15 * std::max(1.0, params.beta(1) * params.e2()))
    throw std::domain_error(
        "virtual temperature singular: beta2 E2 = beta3 E3");
  return num / den;
}

double effective_temperature(double sigma_z_expect, double energy) {
  const double magnitude = std::abs(sigma_z_expect);
  if (magnitude > 1.0 + 1e-12)
    throw std::domain_error("|<sigma_z>| exceeds 1 beyond tolerance");
  if (magnitude < 1e-12) return std::numeric_limits<double>::infinity();
  if (magnitude >= 1.0 - 1e-15)
    return sigma_z_expect < 0 ? 0.0 : -0.0;  // pure-state limit
  return -energy / (2.0 * std::atanh(sigma_z_expect));
}

double coherence_bound(const FridgeParams& params) {
  double bound = 1.0;
  for (int i = 0; i < basis::kNumQubits; ++i)
    bound *= 0.5 / std::cosh(params.beta(i) * params.energy(i) / 2.0);
  return bound;
}

DensityMatrix inject_coherence(const DensityMatrix& rho, double r, double phi,
                               const Tolerances& tol) {
  if (rho.dim() != basis::kDim)
    throw std::invalid_argument("inject_coherence expects an 8-dim state");
  if (r < 0) throw std::invalid_argument("coherence magnitude must be >= 0");
  Matrix entries = rho.entries();
  const double offdiag =
      (entries - Matrix(entries.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
  if (offdiag > tol.hermiticity)
    throw std::invalid_argument(
        "inject_coherence expects a state diagonal in the computational basis");

  const Complex c = kImag * r * std::exp(kImag * phi);
  entries(basis::kKet101, basis::kKet010) = c;
  entries(basis::kKet010, basis::kKet101) = std::conj(c);

  // Only the {|010>, |101>} block changes; its smaller eigenvalue decides
  // positivity of the full matrix.
  const double a = entries(basis::kKet010, basis::kKet010).real();
  const double b = entries(basis::kKet101, basis::kKet101).real();
  const double min_eig =
      0.5 * (a + b) - std::sqrt(0.25 * (a - b) * (a - b) + r * r);
  if (min_eig < -tol.positivity) {
    std::ostringstream msg;
    msg << "injected coherence violates positivity: block eigenvalue "
        << min_eig;
    throw PositivityError(msg.str());
  }
  return DensityMatrix(std::move(entries), tol);
}

} // namespace qar
