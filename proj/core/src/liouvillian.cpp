// liouvillian.cpp — construction of the four model generators

#include "qar/liouvillian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qar {

namespace {

Vector basis_ket(int index, int dim) {
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return v;
}

Matrix outer(const Vector& ket, const Vector& bra) {
  return ket * bra.adjoint();
}

SpMatrix sum_dissipators(const std::vector<JumpOperator>& jumps, int bath,
                         int dim) {
  SpMatrix total(dim * dim, dim * dim);
  for (const auto& jump : jumps) {
    if (bath >= 0 && jump.bath != bath) continue;
    if (jump.rate == 0.0) continue;
    total += Complex(jump.rate) * dissipator_superop(jump.matrix);
  }
  return total;
}

// Assembles superoperator pieces, per-bath dissipators and shared
// observable operators common to all builders.
void finalize(Liouvillian& liouvillian) {
  const int dim = liouvillian.dim;
  for (int b = 0; b < 3; ++b)
    liouvillian.bath_dissipators[b] =
        sum_dissipators(liouvillian.jumps, b, dim);
  liouvillian.dissipator = sum_dissipators(liouvillian.jumps, -1, dim);
  liouvillian.superop =
      commutator_superop(liouvillian.hamiltonian) + liouvillian.dissipator;

  const int n_qubits = dim == basis::kDimModelII ? 6 : 3;
  liouvillian.h1_op = 0.5 * liouvillian.params.e1() *
                      embed_qubit_op(sigma_z_1q(), 0, n_qubits);
}

double max_rate(const std::vector<JumpOperator>& jumps) {
  double value = 0.0;
  for (const auto& jump : jumps) value = std::max(value, jump.rate);
  return value;
}

double real_trace_product(const Matrix& a, const Matrix& b) {
  return (a * b).trace().real();
}

} // namespace

Matrix Liouvillian::apply(const Matrix& rho) const {
  Vector v = Eigen::Map<const Vector>(rho.data(), rho.size());
  Vector out = superop * v;
  return Eigen::Map<const Matrix>(out.data(), dim, dim);
}

Vector Liouvillian::apply_vec(const Vector& vec_rho) const {
  return superop * vec_rho;
}

double Liouvillian::qdot1(const Matrix& rho) const {
  if (model == BathModel::ModelII)
    return real_trace_product(qdot1_op, rho);
  Vector v = Eigen::Map<const Vector>(rho.data(), rho.size());
  Vector dv = bath_dissipators[0] * v;
  Matrix drho = Eigen::Map<const Matrix>(dv.data(), dim, dim);
  return real_trace_product(h1_op, drho);
}

double Liouvillian::h1_dissipative_rate(const Matrix& rho) const {
  Vector v = Eigen::Map<const Vector>(rho.data(), rho.size());
  Vector dv = dissipator * v;
  Matrix drho = Eigen::Map<const Matrix>(dv.data(), dim, dim);
  return real_trace_product(h1_op, drho);
}

SpMatrix to_sparse(const Matrix& dense, double prune) {
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (Eigen::Index j = 0; j < dense.cols(); ++j)
    for (Eigen::Index i = 0; i < dense.rows(); ++i)
      if (std::abs(dense(i, j)) > prune)
        triplets.emplace_back(i, j, dense(i, j));
  SpMatrix out(dense.rows(), dense.cols());
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

SpMatrix sparse_kron(const SpMatrix& a, const SpMatrix& b) {
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(static_cast<std::size_t>(a.nonZeros()) * b.nonZeros());
  for (int ka = 0; ka < a.outerSize(); ++ka)
    for (SpMatrix::InnerIterator ita(a, ka); ita; ++ita)
      for (int kb = 0; kb < b.outerSize(); ++kb)
        for (SpMatrix::InnerIterator itb(b, kb); itb; ++itb)
          triplets.emplace_back(ita.row() * b.rows() + itb.row(),
                                ita.col() * b.cols() + itb.col(),
                                ita.value() * itb.value());
  SpMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

SpMatrix left_mult_superop(const Matrix& op) {
  SpMatrix identity(op.rows(), op.cols());
  identity.setIdentity();
  return sparse_kron(identity, to_sparse(op));
}

SpMatrix right_mult_superop(const Matrix& op) {
  SpMatrix identity(op.rows(), op.cols());
  identity.setIdentity();
  return sparse_kron(to_sparse(op.transpose()), identity);
}

SpMatrix commutator_superop(const Matrix& h) {
  return SpMatrix(-kImag * (left_mult_superop(h) - right_mult_superop(h)));
}

SpMatrix dissipator_superop(const Matrix& lindblad_op) {
  const Matrix ldag_l = lindblad_op.adjoint() * lindblad_op;
  SpMatrix jump = sparse_kron(to_sparse(lindblad_op.conjugate()),
                              to_sparse(lindblad_op));
  SpMatrix anticomm = Complex(0.5) * (left_mult_superop(ldag_l) +
                                      right_mult_superop(ldag_l));
  return SpMatrix(jump - anticomm);
}

double ohmic_rate(double omega, double beta, double alpha,
                  double omega_cutoff) {
  if (alpha <= 0 || omega_cutoff <= 0 || beta <= 0)
    throw std::invalid_argument("ohmic_rate requires positive parameters");
  if (omega == 0.0) return alpha / beta;  // limit of J(w) n(w, beta)
  const double magnitude = std::abs(omega);
  const double spectral =
      alpha * magnitude * std::exp(-magnitude / omega_cutoff);
  const double occupation = 1.0 / std::expm1(beta * magnitude);
  return omega > 0 ? spectral * (1.0 + occupation) : spectral * occupation;
}

double dephasing_rate_gamma(const FridgeParams& params, const BathSpec& bath) {
  if (bath.model == BathModel::ModelII)
    throw std::invalid_argument(
        "dephasing_rate_gamma requires Ohmic bath parameters");
  double gamma = 0.0;
  for (int i = 0; i < basis::kNumQubits; ++i) {
    gamma += ohmic_rate(params.energy(i), params.beta(i), bath.alpha,
                        bath.omega_cutoff);
    gamma += ohmic_rate(-params.energy(i), params.beta(i), bath.alpha,
                        bath.omega_cutoff);
  }
  return 0.5 * gamma;
}

double model_ii_spectral_density(const FridgeParams& params,
                                 const BathSpec& bath, int qubit,
                                 double omega) {
  if (bath.model != BathModel::ModelII)
    throw std::invalid_argument("effective spectral density is Model II only");
  const double energy = params.energy(qubit);
  const double gamma_i =
      bath.gamma * (1.0 + std::exp(-params.beta(qubit) * energy)) / 2.0;
  const double detuning = energy - omega;
  return bath.eta * bath.eta * bath.gamma * bath.gamma * gamma_i /
         (gamma_i * gamma_i + detuning * detuning);
}

Liouvillian build_strong_coupling(const FridgeParams& params,
                                  const BathSpec& bath) {
  if (bath.model != BathModel::ModelIStrong)
    throw std::invalid_argument("bath model must be model1-strong");
  bath.validate();
  const double g = params.g();
  const double min_energy =
      std::min({params.e1(), params.e2(), params.e3()});
  if (g >= min_energy)
    throw std::invalid_argument(
        "strong-coupling catalog requires g < min_i E_i (frequency E_i - g "
        "would cross zero)");

  const int dim = basis::kDim;
  const Vector plus = (basis_ket(basis::kKet101, dim) +
                       basis_ket(basis::kKet010, dim)) /
                      std::sqrt(2.0);
  const Vector minus = (basis_ket(basis::kKet101, dim) -
                        basis_ket(basis::kKet010, dim)) /
                       std::sqrt(2.0);
  const auto ket = [&](int index) { return basis_ket(index, dim); };
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  // Downward operators per bath at frequencies E_i and E_i +- g.
  struct Entry {
    int bath;
    double omega;
    Matrix op;
  };
  std::vector<Entry> downward;
  downward.push_back({0, params.e1(),
                      outer(ket(3), ket(7)) + outer(ket(0), ket(4))});
  downward.push_back({0, params.e1() + g,
                      inv_sqrt2 * (outer(ket(1), plus) - outer(minus, ket(6)))});
  downward.push_back({0, params.e1() - g,
                      inv_sqrt2 * (outer(plus, ket(6)) + outer(ket(1), minus))});
  downward.push_back({1, params.e2(),
                      outer(ket(4), ket(6)) + outer(ket(1), ket(3))});
  downward.push_back({1, params.e2() + g,
                      inv_sqrt2 * (outer(ket(0), plus) + outer(minus, ket(7)))});
  downward.push_back({1, params.e2() - g,
                      inv_sqrt2 * (outer(plus, ket(7)) - outer(ket(0), minus))});
  downward.push_back({2, params.e3(),
                      outer(ket(6), ket(7)) + outer(ket(0), ket(1))});
  downward.push_back({2, params.e3() + g,
                      inv_sqrt2 * (outer(ket(4), plus) - outer(minus, ket(3)))});
  downward.push_back({2, params.e3() - g,
                      inv_sqrt2 * (outer(plus, ket(3)) + outer(ket(4), minus))});

  Liouvillian liouvillian{BathModel::ModelIStrong, dim, params, bath,
                          full_hamiltonian(params)};
  for (const auto& entry : downward) {
    const double beta = params.beta(entry.bath);
    liouvillian.jumps.push_back(
        {entry.op,
         ohmic_rate(entry.omega, beta, bath.alpha, bath.omega_cutoff),
         entry.bath, entry.omega});
    liouvillian.jumps.push_back(
        {entry.op.adjoint().eval(),
         ohmic_rate(-entry.omega, beta, bath.alpha, bath.omega_cutoff),
         entry.bath, -entry.omega});
  }
  finalize(liouvillian);

  const double rate = max_rate(liouvillian.jumps);
  if (std::min(min_energy, g) < 10.0 * rate) {
    std::ostringstream msg;
    msg << "strong-coupling validity margin below 10: min{E_i, g} = "
        << std::min(min_energy, g) << ", max rate = " << rate;
    liouvillian.warnings.push_back(msg.str());
  }
  return liouvillian;
}

namespace {

// Shared by the weak-coupling and stochastic builders: local dissipators
// sigma_i^- at gamma_i(E_i) and sigma_i^+ at gamma_i(-E_i).
std::vector<JumpOperator> local_jumps(const FridgeParams& params,
                                      const BathSpec& bath) {
  std::vector<JumpOperator> jumps;
  for (int i = 0; i < basis::kNumQubits; ++i) {
    const double energy = params.energy(i);
    const double beta = params.beta(i);
    jumps.push_back({embed_qubit_op(sigma_minus_1q(), i, 3),
                     ohmic_rate(energy, beta, bath.alpha, bath.omega_cutoff),
                     i, energy});
    jumps.push_back({embed_qubit_op(sigma_plus_1q(), i, 3),
                     ohmic_rate(-energy, beta, bath.alpha, bath.omega_cutoff),
                     i, -energy});
  }
  return jumps;
}

} // namespace

Liouvillian build_weak_coupling(const FridgeParams& params,
                                const BathSpec& bath) {
  if (bath.model != BathModel::ModelIWeak)
    throw std::invalid_argument("bath model must be model1-weak");
  bath.validate();
  Liouvillian liouvillian{BathModel::ModelIWeak, basis::kDim, params, bath,
                          full_hamiltonian(params)};
  liouvillian.jumps = local_jumps(params, bath);
  finalize(liouvillian);
  return liouvillian;
}

Liouvillian build_model_ii(const FridgeParams& params, const BathSpec& bath) {
  if (bath.model != BathModel::ModelII)
    throw std::invalid_argument("bath model must be model2");
  bath.validate();
  const int dim = basis::kDimModelII;
  const int n = 6;  // |q1 q2 q3 f1 f2 f3>, physical qubits most significant

  Matrix hamiltonian = kron(full_hamiltonian(params), Matrix::Identity(8, 8));
  Matrix hopping = Matrix::Zero(dim, dim);
  for (int i = 0; i < basis::kNumQubits; ++i) {
    hamiltonian +=
        0.5 * params.energy(i) * embed_qubit_op(sigma_z_1q(), 3 + i, n);
    hopping += bath.eta * bath.gamma *
               (embed_qubit_op(sigma_plus_1q(), i, n) *
                    embed_qubit_op(sigma_minus_1q(), 3 + i, n) +
                embed_qubit_op(sigma_minus_1q(), i, n) *
                    embed_qubit_op(sigma_plus_1q(), 3 + i, n));
  }
  hamiltonian += hopping;

  Liouvillian liouvillian{BathModel::ModelII, dim, params, bath,
                          std::move(hamiltonian)};
  for (int i = 0; i < basis::kNumQubits; ++i) {
    liouvillian.jumps.push_back({embed_qubit_op(sigma_minus_1q(), 3 + i, n),
                                 bath.gamma, i, params.energy(i)});
    liouvillian.jumps.push_back(
        {embed_qubit_op(sigma_plus_1q(), 3 + i, n),
         bath.gamma * std::exp(-params.beta(i) * params.energy(i)), i,
         -params.energy(i)});
  }
  finalize(liouvillian);
  liouvillian.qdot1_op = -kImag * (liouvillian.h1_op * hopping -
                                   hopping * liouvillian.h1_op);
  return liouvillian;
}

Liouvillian build_stochastic(const FridgeParams& params,
                             const BathSpec& bath) {
  if (bath.model != BathModel::Stochastic)
    throw std::invalid_argument("bath model must be stochastic");
  bath.validate();
  const double gamma_deph = dephasing_rate_gamma(params, bath);
  const double hop_rate =
      2.0 * params.g() * params.g() / gamma_deph;

  Liouvillian liouvillian{BathModel::Stochastic, basis::kDim, params, bath,
                          local_hamiltonian(params)};
  liouvillian.jumps = local_jumps(params, bath);

  Matrix hop = Matrix::Zero(basis::kDim, basis::kDim);
  hop(basis::kKet010, basis::kKet101) = 1.0;  // B = |010><101|
  liouvillian.jumps.push_back({hop, hop_rate, -1, 0.0});
  liouvillian.jumps.push_back({hop.adjoint().eval(), hop_rate, -1, 0.0});
  finalize(liouvillian);

  if (params.g() >= gamma_deph / 10.0) {
    std::ostringstream msg;
    msg << "stochastic reduction assumes g << Gamma: g = " << params.g()
        << ", Gamma = " << gamma_deph;
    liouvillian.warnings.push_back(msg.str());
  }
  return liouvillian;
}

Liouvillian build_liouvillian(const FridgeParams& params,
                              const BathSpec& bath) {
  switch (bath.model) {
    case BathModel::ModelIStrong: return build_strong_coupling(params, bath);
    case BathModel::ModelIWeak: return build_weak_coupling(params, bath);
    case BathModel::ModelII: return build_model_ii(params, bath);
    case BathModel::Stochastic: return build_stochastic(params, bath);
  }
  throw std::invalid_argument("unknown bath model");
}

Liouvillian unitary_liouvillian(const FridgeParams& params) {
  BathSpec bath;
  bath.model = BathModel::ModelIWeak;
  Liouvillian liouvillian{BathModel::ModelIWeak, basis::kDim, params, bath,
                          full_hamiltonian(params)};
  finalize(liouvillian);
  return liouvillian;
}

DensityMatrix prepared_initial_state(const FridgeParams& params,
                                     const BathSpec& bath, double r,
                                     double phi, const Tolerances& tol) {
  DensityMatrix physical = thermal_product_state(params, tol);
  if (r > 0.0) physical = inject_coherence(physical, r, phi, tol);
  if (bath.model != BathModel::ModelII) return physical;
  const Matrix fictitious = thermal_product_state(params, tol).entries();
  return DensityMatrix(kron(physical.entries(), fictitious), tol);
}

RealMatrix classical_rate_matrix(const Liouvillian& liouvillian) {
  const int dim = liouvillian.dim;
  RealMatrix rates(dim, dim);
  for (int n = 0; n < dim; ++n) {
    Matrix population = Matrix::Zero(dim, dim);
    population(n, n) = 1.0;
    const Matrix derivative = liouvillian.apply(population);
    for (int m = 0; m < dim; ++m) rates(m, n) = derivative(m, m).real();
  }
  return rates;
}

} // namespace qar
