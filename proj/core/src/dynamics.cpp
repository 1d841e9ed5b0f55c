// dynamics.cpp — Dormand-Prince propagation, null-space steady states and
// trajectory feature extraction

#include "qar/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

namespace qar {

SampleGrid SampleGrid::uniform(double t_end, int samples) {
  return window(0.0, t_end, samples);
}

SampleGrid SampleGrid::window(double t_start, double t_end, int samples) {
  if (!(t_end >= t_start))
    throw std::invalid_argument("grid must have t_end >= t_start");
  if (samples < 1 || (samples < 2 && t_end > t_start))
    throw std::invalid_argument("grid needs at least two samples");
  return SampleGrid{t_start, t_end, samples};
}

std::vector<double> SampleGrid::times() const {
  std::vector<double> out(samples);
  if (samples == 1) {
    out[0] = t_start;
    return out;
  }
  const double step = (t_end - t_start) / (samples - 1);
  for (int i = 0; i < samples; ++i) out[i] = t_start + i * step;
  out.back() = t_end;
  return out;
}

double SampleGrid::spacing() const {
  return samples > 1 ? (t_end - t_start) / (samples - 1) : 0.0;
}

StepObservables observables_from_state(const Liouvillian& liouvillian,
                                       const Matrix& rho) {
  StepObservables obs;
  const Matrix physical = physical_state(rho);
  for (int i = 0; i < basis::kNumQubits; ++i) {
    obs.sigma_z[i] = qubit_sigma_z(physical, i);
    obs.temperature[i] =
        effective_temperature(obs.sigma_z[i], liouvillian.params.energy(i));
  }
  obs.coherence = transport_coherence(physical);
  obs.qdot1 = liouvillian.qdot1(rho);
  obs.h1_dissipative_rate = liouvillian.h1_dissipative_rate(rho);
  obs.h1 = 0.5 * liouvillian.params.e1() * obs.sigma_z[0];
  return obs;
}

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187,
                 kA53 = 64448.0 / 6561, kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33,
                 kA63 = 46732.0 / 5247, kA64 = 49.0 / 176,
                 kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
constexpr double kE1 = 35.0 / 384 - 5179.0 / 57600,
                 kE3 = 500.0 / 1113 - 7571.0 / 16695,
                 kE4 = 125.0 / 192 - 393.0 / 640,
                 kE5 = -2187.0 / 6784 + 92097.0 / 339200,
                 kE6 = 11.0 / 84 - 187.0 / 2100, kE7 = -1.0 / 40;

struct Dopri5 {
  const SpMatrix& generator;
  double rtol;
  double atol;
  Vector k1, k2, k3, k4, k5, k6, k7;

  explicit Dopri5(const SpMatrix& gen, double rtol_, double atol_)
      : generator(gen), rtol(rtol_), atol(atol_) {}

  // One trial step from (t, y); returns the scaled error estimate and the
  // candidate y. k1 must hold f(y) on entry (FSAL).
  double trial(const Vector& y, double h, Vector& y_next) {
    k2 = generator * (y + h * kA21 * k1);
    k3 = generator * (y + h * (kA31 * k1 + kA32 * k2));
    k4 = generator * (y + h * (kA41 * k1 + kA42 * k2 + kA43 * k3));
    k5 = generator *
         (y + h * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4));
    k6 = generator * (y + h * (kA61 * k1 + kA62 * k2 + kA63 * k3 +
                               kA64 * k4 + kA65 * k5));
    y_next =
        y + h * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
    k7 = generator * y_next;
    const Vector err = h * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 +
                            kE6 * k6 + kE7 * k7);
    double accum = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
      const double scale =
          atol + rtol * std::max(std::abs(y(i)), std::abs(y_next(i)));
      const double ratio = std::abs(err(i)) / scale;
      accum += ratio * ratio;
    }
    return std::sqrt(accum / static_cast<double>(err.size()));
  }
};

Matrix unvec(const Vector& v, int dim) {
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

Vector vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

void append_snapshot(Trajectory& traj, const Liouvillian& liouvillian,
                     double t, Vector& y, const PropagateOptions& opt) {
  const int dim = liouvillian.dim;
  const Complex trace = [&] {
    Complex acc = 0.0;
    for (int i = 0; i < dim; ++i) acc += y(i * dim + i);
    return acc;
  }();
  if (std::abs(trace - Complex{1.0, 0.0}) > opt.tol.trace) {
    std::ostringstream msg;
    msg << "trace renormalised at t = " << t << " (drift "
        << std::abs(trace - Complex{1.0, 0.0}) << ")";
    traj.events.push_back(msg.str());
    y /= trace;
  }
  Matrix rho = unvec(y, dim);
  try {
    traj.states.emplace_back(rho, opt.tol);
  } catch (const PositivityError& err) {
    std::ostringstream msg;
    msg << err.what() << " at t = " << t;
    throw PositivityError(msg.str());
  }
  traj.times.push_back(t);
  traj.observables.push_back(observables_from_state(liouvillian, rho));
}

} // namespace

Trajectory propagate(const Liouvillian& liouvillian, const DensityMatrix& rho0,
                     const SampleGrid& grid, const PropagateOptions& opt) {
  if (rho0.dim() != liouvillian.dim)
    throw std::invalid_argument("state dimension does not match generator");
  const auto grid_times = grid.times();

  Trajectory traj;
  traj.params = liouvillian.params;
  Vector y = vec(rho0.entries());
  append_snapshot(traj, liouvillian, grid_times.front(), y, opt);
  if (grid_times.size() == 1) return traj;

  Dopri5 stepper(liouvillian.superop, opt.rtol, opt.atol);
  stepper.k1 = liouvillian.superop * y;

  double t = grid_times.front();
  const double span = grid_times.back() - t;
  double h = std::min(span, std::max(1e-6 * span, grid.spacing() * 0.1));
  Vector y_next(y.size());

  for (std::size_t target = 1; target < grid_times.size(); ++target) {
    const double t_target = grid_times[target];
    while (t < t_target) {
      h = std::min(h, t_target - t);
      if (h < 1e-14 * std::max(1.0, std::abs(t)))
        throw IntegrationError("step-size underflow at t = " +
                               std::to_string(t));
      const double err = stepper.trial(y, h, y_next);
      if (err <= 1.0) {
        t += h;
        y.swap(y_next);
        stepper.k1.swap(stepper.k7);  // FSAL
        const double grow =
            err == 0.0 ? 5.0
                       : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        h *= grow;
      } else {
        h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
      }
    }
    t = t_target;
    append_snapshot(traj, liouvillian, t, y, opt);
    stepper.k1 = liouvillian.superop * y;  // y may have been renormalised
  }
  return traj;
}

Trajectory propagate_spectral(const Liouvillian& liouvillian,
                              const DensityMatrix& rho0,
                              const SampleGrid& grid,
                              const PropagateOptions& opt) {
  if (liouvillian.dim > basis::kDim)
    throw std::invalid_argument(
        "spectral propagation supported for dim <= 8 only");
  if (rho0.dim() != liouvillian.dim)
    throw std::invalid_argument("state dimension does not match generator");

  const Matrix dense = Matrix(liouvillian.superop);
  Eigen::ComplexEigenSolver<Matrix> solver(dense);
  if (solver.info() != Eigen::Success)
    throw IntegrationError("superoperator eigendecomposition failed");
  const Matrix& modes = solver.eigenvectors();
  const Vector& rates = solver.eigenvalues();
  const Vector weights = modes.partialPivLu().solve(vec(rho0.entries()));

  Trajectory traj;
  traj.params = liouvillian.params;
  const double t0 = grid.t_start;
  for (double t : grid.times()) {
    Vector amplitudes = weights;
    for (Eigen::Index i = 0; i < amplitudes.size(); ++i)
      amplitudes(i) *= std::exp(rates(i) * (t - t0));
    Vector y = modes * amplitudes;
    append_snapshot(traj, liouvillian, t, y, opt);
  }
  return traj;
}

DensityMatrix state_at(const Liouvillian& liouvillian, const Trajectory& traj,
                       double t, const PropagateOptions& opt) {
  if (traj.times.empty())
    throw std::invalid_argument("empty trajectory");
  const double lo = traj.times.front();
  const double hi = traj.times.back();
  const double slack = 1e-9 * std::max(1.0, hi - lo);
  if (t < lo - slack || t > hi + slack)
    throw std::invalid_argument("time outside trajectory span");
  t = std::clamp(t, lo, hi);

  auto it = std::upper_bound(traj.times.begin(), traj.times.end(), t);
  std::size_t k = static_cast<std::size_t>(
      std::max<std::ptrdiff_t>(0, (it - traj.times.begin()) - 1));
  if (std::abs(traj.times[k] - t) < 1e-13 * std::max(1.0, std::abs(t)))
    return traj.states[k];
  const Trajectory leg = propagate(liouvillian, traj.states[k],
                                   SampleGrid::window(traj.times[k], t, 2),
                                   opt);
  return leg.states.back();
}

SteadyState steady_state(const Liouvillian& liouvillian,
                         const Tolerances& tol) {
  const int dim = liouvillian.dim;
  const int n = dim * dim;
  Matrix rho;

  if (dim <= basis::kDim) {
    const Matrix dense = Matrix(liouvillian.superop);
    Eigen::ComplexEigenSolver<Matrix> solver(dense);
    if (solver.info() != Eigen::Success)
      throw DegenerateSteadyStateError("eigendecomposition failed");
    const Vector& values = solver.eigenvalues();
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return std::abs(values(a)) < std::abs(values(b));
    });
    const double scale = std::max(1.0, std::abs(values(order.back())));
    if (std::abs(values(order[1])) < 1e-10 * scale)
      throw DegenerateSteadyStateError(
          "Liouvillian null space is not one-dimensional");
    Vector null_vec = solver.eigenvectors().col(order[0]);
    rho = Eigen::Map<const Matrix>(null_vec.data(), dim, dim);
  } else {
    // Replace the d rho_00/dt row (linearly dependent on the other
    // diagonal rows) with the trace constraint and solve M x = e_0.
    std::vector<Eigen::Triplet<Complex>> triplets;
    triplets.reserve(static_cast<std::size_t>(liouvillian.superop.nonZeros()) +
                     dim);
    for (int k = 0; k < liouvillian.superop.outerSize(); ++k)
      for (SpMatrix::InnerIterator it(liouvillian.superop, k); it; ++it)
        if (it.row() != 0)
          triplets.emplace_back(it.row(), it.col(), it.value());
    for (int i = 0; i < dim; ++i)
      triplets.emplace_back(0, i * dim + i, Complex{1.0, 0.0});
    SpMatrix bordered(n, n);
    bordered.setFromTriplets(triplets.begin(), triplets.end());
    bordered.makeCompressed();

    Eigen::SparseLU<SpMatrix> lu;
    lu.compute(bordered);
    if (lu.info() != Eigen::Success)
      throw DegenerateSteadyStateError(
          "trace-constrained solve failed (degenerate null space?)");
    Vector rhs = Vector::Zero(n);
    rhs(0) = 1.0;
    Vector x = lu.solve(rhs);
    if (lu.info() != Eigen::Success)
      throw DegenerateSteadyStateError("trace-constrained solve failed");
    rho = Eigen::Map<const Matrix>(x.data(), dim, dim);
  }

  rho /= rho.trace();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  const double residual = liouvillian.apply(rho).norm();
  if (residual >= tol.steady_residual) {
    std::ostringstream msg;
    msg << "steady-state residual " << residual << " exceeds tolerance";
    throw DegenerateSteadyStateError(msg.str());
  }
  DensityMatrix state(rho, tol);
  const double sz1 = qubit_sigma_z(physical_state(rho), 0);
  return SteadyState{std::move(state),
                     effective_temperature(sz1, liouvillian.params.e1()),
                     residual};
}

namespace {

struct Quadratic {
  double t;
  double value;
};

// Vertex of the parabola through three uniformly spaced samples.
Quadratic quadratic_vertex(double t_mid, double h, double y0, double y1,
                           double y2) {
  const double curvature = y0 - 2.0 * y1 + y2;
  if (curvature <= 0.0) return {t_mid, y1};  // flat or concave: keep sample
  const double offset = 0.5 * (y0 - y2) / curvature;
  return {t_mid + offset * h,
          y1 - 0.125 * (y0 - y2) * (y0 - y2) / curvature};
}

// First strict local minimum whose prominence exceeds the integrator
// noise floor on both sides, so flat approaches to the steady state do
// not register through sub-tolerance wiggle.
std::size_t first_interior_minimum(const std::vector<double>& series,
                                   double noise_floor) {
  for (std::size_t i = 1; i + 1 < series.size(); ++i) {
    if (!(series[i] < series[i - 1] && series[i] < series[i + 1])) continue;
    const double eps =
        noise_floor * std::max(1.0, std::abs(series[i]));
    bool rises_left = false, rises_right = false;
    for (std::size_t l = i; l-- > 0;)
      if (series[l] >= series[i] + eps) {
        rises_left = true;
        break;
      }
    for (std::size_t r = i + 1; r < series.size(); ++r)
      if (series[r] >= series[i] + eps) {
        rises_right = true;
        break;
      }
    if (rises_left && rises_right) return i;
  }
  throw NoMinimumError(
      "no temperature minimum located (monotone or over-damped trajectory)");
}

} // namespace

TemperatureMinimum find_first_minimum(const Liouvillian& liouvillian,
                                      const Trajectory& traj,
                                      const PropagateOptions& opt) {
  if (traj.times.size() < 3)
    throw NoMinimumError("trajectory too short to bracket a minimum");
  std::vector<double> temps(traj.observables.size());
  for (std::size_t i = 0; i < temps.size(); ++i)
    temps[i] = traj.observables[i].temperature[0];

  const double noise_floor = 100.0 * opt.rtol;
  const std::size_t i = first_interior_minimum(temps, noise_floor);

  // Refine at 10x density across the bracketing samples.
  const double t_lo = traj.times[i - 1];
  const double t_hi = traj.times[i + 1];
  const Trajectory fine =
      propagate(liouvillian, traj.states[i - 1],
                SampleGrid::window(t_lo, t_hi, 21), opt);
  std::vector<double> fine_temps(fine.observables.size());
  for (std::size_t k = 0; k < fine_temps.size(); ++k)
    fine_temps[k] = fine.observables[k].temperature[0];

  // The bracket is already validated; within it the refined series is a
  // smooth re-propagation, so plain strict detection suffices.
  std::size_t j;
  try {
    j = first_interior_minimum(fine_temps, 0.0);
  } catch (const NoMinimumError&) {
    // Bracket resolved as monotone at fine scale; fall back to the coarse
    // parabola.
    const auto vertex = quadratic_vertex(traj.times[i], traj.times[i] - t_lo,
                                         temps[i - 1], temps[i], temps[i + 1]);
    return {vertex.t, vertex.value};
  }
  const auto vertex =
      quadratic_vertex(fine.times[j], fine.times[j] - fine.times[j - 1],
                       fine_temps[j - 1], fine_temps[j], fine_temps[j + 1]);
  return {vertex.t, vertex.value};
}

std::vector<double> energy_balance_residual(const Trajectory& traj) {
  if (traj.dim() != basis::kDim)
    throw std::invalid_argument(
        "energy balance requires a three-qubit (dim 8) trajectory");
  if (!traj.params)
    throw std::invalid_argument("trajectory carries no parameters");
  if (traj.times.size() < 3) return {};
  const double h = traj.times[1] - traj.times[0];
  for (std::size_t i = 1; i + 1 < traj.times.size(); ++i) {
    const double step = traj.times[i + 1] - traj.times[i];
    if (std::abs(step - h) > 1e-9 * std::max(1.0, h))
      throw std::invalid_argument("energy balance requires a uniform grid");
  }
  const double g = traj.params->g();
  const double e1 = traj.params->e1();
  std::vector<double> residual(traj.times.size() - 2);
  for (std::size_t i = 1; i + 1 < traj.times.size(); ++i) {
    const double dh1 =
        (traj.observables[i + 1].h1 - traj.observables[i - 1].h1) / (2.0 * h);
    residual[i - 1] = dh1 - traj.observables[i].h1_dissipative_rate +
                      2.0 * g * e1 * traj.observables[i].coherence.imag();
  }
  return residual;
}

double max_energy_balance_residual(const Trajectory& traj) {
  double worst = 0.0;
  for (double r : energy_balance_residual(traj))
    worst = std::max(worst, std::abs(r));
  return worst;
}

double trace_distance(const Matrix& a, const Matrix& b) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a - b, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

} // namespace qar
