// dynamics.hpp — time evolution, steady states and trajectory features

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qar/liouvillian.hpp"
#include "qar/model.hpp"
#include "qar/types.hpp"

namespace qar {

// Uniform sampling grid for trajectory snapshots.
struct SampleGrid {
  double t_start = 0.0;
  double t_end = 0.0;
  int samples = 2;  // number of grid points including both endpoints

  static SampleGrid uniform(double t_end, int samples);
  static SampleGrid window(double t_start, double t_end, int samples);
  std::vector<double> times() const;
  double spacing() const;
};

// Derived observables of one snapshot, reduced to the physical qubits.
struct StepObservables {
  std::array<double, 3> sigma_z{};     // <sigma_z_i>
  std::array<double, 3> temperature{}; // effective temperatures, +inf sentinel
  Complex coherence{};                 // C(t) = <101|rho|010>
  double qdot1 = 0.0;                  // bath-1 heat current into qubit 1
  double h1_dissipative_rate = 0.0;    // full-dissipator d<h1>/dt term
  double h1 = 0.0;                     // E1 <sigma_z_1> / 2
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::vector<StepObservables> observables;
  std::vector<std::string> events;  // trace renormalisations etc.
  std::optional<FridgeParams> params;
  int dim() const { return states.empty() ? 0 : states.front().dim(); }
};

struct PropagateOptions {
  double rtol = 1e-8;
  double atol = 1e-10;
  Tolerances tol{};
};

StepObservables observables_from_state(const Liouvillian& liouvillian,
                                       const Matrix& rho);

// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) integration of
// d rho/dt = L rho with snapshots on the requested grid. The trace is
// renormalised only when its drift exceeds the trace tolerance, and the
// event is recorded. Throws IntegrationError on step-size underflow and
// PositivityError (with time stamp) if a snapshot dips below tolerance.
Trajectory propagate(const Liouvillian& liouvillian, const DensityMatrix& rho0,
                     const SampleGrid& grid, const PropagateOptions& opt = {});

// Spectral (eigendecomposition) propagation for time-independent
// generators of dimension <= 8. Cross-checked against the ODE path.
Trajectory propagate_spectral(const Liouvillian& liouvillian,
                              const DensityMatrix& rho0,
                              const SampleGrid& grid,
                              const PropagateOptions& opt = {});

// State at an arbitrary time inside a trajectory's span, computed by
// re-propagating from the nearest earlier snapshot.
DensityMatrix state_at(const Liouvillian& liouvillian, const Trajectory& traj,
                       double t, const PropagateOptions& opt = {});

struct SteadyState {
  DensityMatrix rho_inf;
  double t_inf_temperature;  // qubit-1 effective temperature of rho_inf
  double residual;           // ||L rho_inf||_F
};

// Unique unit-trace positive null vector of the generator. Dimension <= 8
// uses a dense eigendecomposition with an explicit uniqueness check;
// larger systems solve the trace-constrained sparse linear system.
// Throws DegenerateSteadyStateError when the null space is not
// one-dimensional.
SteadyState steady_state(const Liouvillian& liouvillian,
                         const Tolerances& tol = {});

struct TemperatureMinimum {
  double t_min;
  double temperature;
};

// First local minimum of the qubit-1 effective temperature, located on the
// sampled trajectory and refined by re-propagation at 10x density plus
// quadratic interpolation. Throws NoMinimumError for monotone trajectories.
TemperatureMinimum find_first_minimum(const Liouvillian& liouvillian,
                                      const Trajectory& traj,
                                      const PropagateOptions& opt = {});

// Pointwise residual of the energy balance
// d h1/dt = Qdot - 2 g E1 Im C(t), with d h1/dt by central differences and
// Qdot the full-dissipator projection onto h1. Interior grid points only;
// requires a dim-8 trajectory on a uniform grid.
std::vector<double> energy_balance_residual(const Trajectory& traj);
double max_energy_balance_residual(const Trajectory& traj);

// 1-norm (trace) distance between two density matrices.
double trace_distance(const Matrix& a, const Matrix& b);

} // namespace qar
