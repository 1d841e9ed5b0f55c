// liouvillian.hpp — dense-superoperator generators for the four
// thermalisation models, including the dressed-basis jump catalog and the
// stochastic reduction of the transport subspace

#pragma once

#include <array>
#include <string>
#include <vector>

#include "qar/model.hpp"
#include "qar/types.hpp"

namespace qar {

// A single Lindblad channel: dim x dim operator, nonnegative rate and the
// (bath index, signed Bohr frequency) label it was derived from.
struct JumpOperator {
  Matrix matrix;
  double rate = 0.0;
  int bath = 0;      // 0, 1, 2
  double omega = 0.0;
};

// Generator of the master equation d rho / dt = L rho, stored as a sparse
// superoperator acting on column-stacked density matrices. Immutable after
// construction; safe to share across threads.
struct Liouvillian {
  BathModel model = BathModel::ModelIWeak;
  int dim = basis::kDim;
  FridgeParams params;
  BathSpec bath;

  Matrix hamiltonian;               // dim x dim
  std::vector<JumpOperator> jumps;
  SpMatrix superop;                 // dim^2 x dim^2, column stacking
  SpMatrix dissipator;              // dissipative part of superop
  std::array<SpMatrix, 3> bath_dissipators;  // per-bath dissipative parts

  Matrix h1_op;        // E1/2 sigma_z_1 in the full Hilbert space
  Matrix qdot1_op;     // Model II only: -i [h1, H_AF] (hopping heat current)

  std::vector<std::string> warnings;

  // L applied to a density matrix (reshapes through the superoperator).
  Matrix apply(const Matrix& rho) const;
  Vector apply_vec(const Vector& vec_rho) const;

  // Heat current into qubit 1. Model I and stochastic: projection of the
  // bath-1 dissipator onto h1; Model II: hopping current through H_AF
  // (the bath dissipators commute with sigma_z_1 there).
  double qdot1(const Matrix& rho) const;

  // Full-dissipator contribution to d<h1>/dt (the heat term of the exact
  // energy balance; equals qdot1 for the local master equation).
  double h1_dissipative_rate(const Matrix& rho) const;
};

// --- superoperator building blocks (column-stacking convention) --------------

SpMatrix to_sparse(const Matrix& dense, double prune = 0.0);
SpMatrix sparse_kron(const SpMatrix& a, const SpMatrix& b);
SpMatrix left_mult_superop(const Matrix& op);    // vec(A X)   = (I (x) A) vec X
SpMatrix right_mult_superop(const Matrix& op);   // vec(X A)   = (A^T (x) I) vec X
SpMatrix commutator_superop(const Matrix& h);    // vec(-i[H, X])
SpMatrix dissipator_superop(const Matrix& lindblad_op);  // vec(D[L] X)

// --- rates -------------------------------------------------------------------

// Golden-rule rate for an Ohmic bath J(w) = alpha w e^{-w/cutoff}:
// J(w)(1 + n(w, beta)) for w > 0 and J(|w|) n(|w|, beta) for w < 0.
// The w = 0 value is the finite limit alpha / beta (test helper; the
// jump catalogs never request it).
double ohmic_rate(double omega, double beta, double alpha,
                  double omega_cutoff);

// Transport-coherence dephasing rate
// Gamma = (1/2) sum_i [gamma_i(E_i) + gamma_i(-E_i)].
double dephasing_rate_gamma(const FridgeParams& params, const BathSpec& bath);

// Lorentzian effective spectral density seen by a physical qubit in
// Model II: eta^2 gamma^2 Gamma_i / (Gamma_i^2 + (E_i - omega)^2) with
// Gamma_i = gamma (1 + e^{-beta_i E_i}) / 2. Reporting helper only.
double model_ii_spectral_density(const FridgeParams& params,
                                 const BathSpec& bath, int qubit,
                                 double omega);

// --- generators ----------------------------------------------------------------

// Dressed-basis Lindblad equation (dissipation between eigenstates of
// H_loc + V). Catalog of 18 operators: per bath i the downward operators at
// frequencies E_i and E_i +- g plus their adjoints at the negated
// frequencies. Rejects g >= min_i E_i; logs a validity warning when
// min{E_i, g} is within a factor 10 of the largest rate.
Liouvillian build_strong_coupling(const FridgeParams& params,
                                  const BathSpec& bath);

// Local master equation: H_loc + V commutator with six local dissipators
// sigma_i^- at gamma_i(E_i) and sigma_i^+ at gamma_i(-E_i).
Liouvillian build_weak_coupling(const FridgeParams& params,
                                const BathSpec& bath);

// Six-qubit fictitious-bath model: physical qubits exchange excitations
// with resonant damped qubits at amplitude eta*gamma.
Liouvillian build_model_ii(const FridgeParams& params, const BathSpec& bath);

// Appendix-style classical reduction: local generator with g = 0 in the
// Hamiltonian plus symmetric hops (2g^2/Gamma) D[B] + (2g^2/Gamma) D[B^dag]
// with B = |010><101|. Warns when g >= Gamma/10.
Liouvillian build_stochastic(const FridgeParams& params, const BathSpec& bath);

// Dispatch on bath.model.
Liouvillian build_liouvillian(const FridgeParams& params,
                              const BathSpec& bath);

// Purely unitary generator -i[H_loc + V, .] (zero-dissipation reference).
Liouvillian unitary_liouvillian(const FridgeParams& params);

// Classical 8-state rate matrix extracted from the generator's action on
// computational-basis populations. Meaningful for generators that keep the
// diagonal sector closed (the stochastic model does exactly).
RealMatrix classical_rate_matrix(const Liouvillian& liouvillian);

// Thermal product initial state matched to the model's Hilbert space, with
// optional transport coherence i r e^{i phi} on the physical qubits.
// Model II starts its fictitious qubits in their own bath-equilibrium
// states; the other models are the plain three-qubit thermal product.
DensityMatrix prepared_initial_state(const FridgeParams& params,
                                     const BathSpec& bath, double r = 0.0,
                                     double phi = 0.0,
                                     const Tolerances& tol = {});

} // namespace qar
