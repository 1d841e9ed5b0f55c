// model.hpp — refrigerator parameter space, Hilbert-space conventions,
// thermal states and the closed-form scalar quantities of the model

#pragma once

#include <array>
#include <vector>

#include "qar/types.hpp"

namespace qar {

// ---------------------------------------------------------------------------
// Basis conventions.
//
// Computational basis |q1 q2 q3> with qubit 1 the most significant bit,
// so index(|q1 q2 q3>) = 4*q1 + 2*q2 + q3.
//
// sigma_z convention: sigma_z|0> = -|0>, sigma_z|1> = +|1>. |0> is the
// ground state of the local Hamiltonian H_loc = (1/2) sum_i E_i sigma_z_i,
// hence a thermal qubit satisfies <sigma_z> = -tanh(beta E / 2) and carries
// most of its population in |0>. With this convention the dressed-basis
// jump operators lower energy at their labelled Bohr frequency and the
// thermal bias p(|101>) > p(|010>) holds whenever T_v < T_1.
// ---------------------------------------------------------------------------
namespace basis {

inline constexpr int kNumQubits = 3;
inline constexpr int kDim = 8;        // three-qubit Hilbert space
inline constexpr int kDimModelII = 64;  // three physical + three fictitious

// Transport subspace span{|010>, |101>}.
inline constexpr int kKet010 = 2;
inline constexpr int kKet101 = 5;

} // namespace basis

// Static problem definition: qubit energies, interaction strength and bath
// temperatures. Qubit 1 couples to the cold bath, qubit 2 to the room bath,
// qubit 3 to the hot bath.
class FridgeParams {
 public:
  // Requires e2 = e1 + e3 (to 1e-12; stored exactly as e1 + e3), all
  // energies positive, g >= 0 and 0 < t_cold <= t_room <= t_hot.
  FridgeParams(double e1, double e2, double e3, double g, double t_cold,
               double t_room, double t_hot);

  double e1() const { return energies_[0]; }
  double e2() const { return energies_[1]; }
  double e3() const { return energies_[2]; }
  double g() const { return g_; }
  double t_cold() const { return temperatures_[0]; }
  double t_room() const { return temperatures_[1]; }
  double t_hot() const { return temperatures_[2]; }

  // Zero-based accessors, qubit in {0, 1, 2}.
  double energy(int qubit) const { return energies_.at(qubit); }
  double temperature(int qubit) const { return temperatures_.at(qubit); }
  double beta(int qubit) const { return 1.0 / temperatures_.at(qubit); }

  FridgeParams with_g(double g) const;
  FridgeParams with_temperatures(double t_cold, double t_room,
                                 double t_hot) const;

 private:
  std::array<double, 3> energies_;
  double g_;
  std::array<double, 3> temperatures_;
};

// Thermalisation model selector.
enum class BathModel { ModelIStrong, ModelIWeak, ModelII, Stochastic };

const char* to_string(BathModel model);
BathModel bath_model_from_string(const std::string& name);

// Per-model bath parameters. Model I variants and the stochastic reduction
// use the Ohmic parameters (alpha, omega_cutoff); Model II uses the
// fictitious-qubit linewidth gamma and dimensionless coupling eta.
struct BathSpec {
  BathModel model = BathModel::ModelIWeak;
  double alpha = 1e-3;
  double omega_cutoff = 1e3;
  double gamma = 0.0;
  double eta = 0.0;

  static BathSpec model_i_strong(double alpha, double omega_cutoff);
  static BathSpec model_i_weak(double alpha, double omega_cutoff);
  static BathSpec model_ii(double gamma, double eta);
  // gamma = 20 * E2, eta = 0.05: well inside the regime where gamma exceeds
  // every other frequency scale and eta << 1.
  static BathSpec model_ii_default(const FridgeParams& params);
  static BathSpec stochastic(double alpha, double omega_cutoff);

  // Throws std::invalid_argument if the parameters required by `model`
  // are out of range.
  void validate() const;
};

// Hermitian, unit-trace, positive matrix over the system Hilbert space.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix entries, const Tolerances& tol = {});

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }
  double min_eigenvalue() const;

 private:
  Matrix entries_;
};

// --- elementary operators --------------------------------------------------

Matrix kron(const Matrix& a, const Matrix& b);

// 2x2 single-qubit operators in the (|0>, |1>) ordering above.
Matrix sigma_z_1q();
Matrix sigma_plus_1q();   // |1><0|, raises energy
Matrix sigma_minus_1q();  // |0><1|, lowers energy

// Embeds a single-qubit operator at position `qubit` (0-based, most
// significant first) in an n_qubits register.
Matrix embed_qubit_op(const Matrix& op, int qubit, int n_qubits);

Matrix local_hamiltonian(const FridgeParams& params);       // (1/2) sum E_i sigma_z_i
Matrix interaction_hamiltonian(const FridgeParams& params); // g|010><101| + h.c.
Matrix full_hamiltonian(const FridgeParams& params);        // H_loc + V

// --- reduced-state helpers ---------------------------------------------------

// Traces out the three fictitious qubits of a 64-dim Model II state.
Matrix trace_out_fictitious(const Matrix& rho64);

// Reduces any supported state (dim 8 or 64) to the physical three-qubit block.
Matrix physical_state(const Matrix& rho);

// <sigma_z_i> for the given qubit of an 8-dim state, i in {0, 1, 2}.
double qubit_sigma_z(const Matrix& rho8, int qubit);

// Magnitude of the largest off-diagonal element of the single-qubit
// reduced state (diagnostic for the diagonal-marginal invariant).
double qubit_marginal_offdiag(const Matrix& rho8, int qubit);

// Transport-subspace coherence C = <101|rho|010> of an 8-dim state.
Complex transport_coherence(const Matrix& rho8);

// --- closed-form scalar quantities ------------------------------------------

// Product of local Gibbs states at the three bath temperatures.
DensityMatrix thermal_product_state(const FridgeParams& params,
                                    const Tolerances& tol = {});

// Virtual temperature (E2 - E3) / (beta2 E2 - beta3 E3); may be negative.
// Throws std::domain_error when beta2 E2 = beta3 E3.
double virtual_temperature(const FridgeParams& params);

// Effective temperature -E / (2 artanh<sigma_z>). Returns +infinity for
// <sigma_z> = 0 (maximally mixed sentinel, compares hotter than any finite
// temperature) and +-0 at the pure-state boundary |<sigma_z>| >= 1 - 1e-15.
// Throws std::domain_error for |<sigma_z>| > 1 beyond 1e-12.
double effective_temperature(double sigma_z_expect, double energy);

// Positivity bound C_max = prod_i (1/2) sech(beta_i E_i / 2) on the
// magnitude of transport coherence addable to the thermal product state.
double coherence_bound(const FridgeParams& params);

// Sets <101|rho|010> = i r e^{i phi} (and the conjugate entry) on a state
// diagonal in the computational basis, leaving every diagonal entry
// untouched. Throws PositivityError if the result would dip below the
// positivity tolerance.
DensityMatrix inject_coherence(const DensityMatrix& rho, double r, double phi,
                               const Tolerances& tol = {});

} // namespace qar
