// noise.cpp — phase-noise ensemble machinery and analytic shifts

#include "qar/noise.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qar {

PhaseDistribution PhaseDistribution::delta(double phi0) {
  PhaseDistribution dist;
  dist.kind = Kind::Delta;
  dist.phi0 = phi0;
  return dist;
}

PhaseDistribution PhaseDistribution::gaussian(double variance) {
  if (variance < 0)
    throw std::invalid_argument("phase variance must be nonnegative");
  PhaseDistribution dist;
  dist.kind = Kind::Gaussian;
  dist.variance = variance;
  return dist;
}

PhaseDistribution PhaseDistribution::uniform(double width) {
  if (width < 0 || width > 2.0 * std::numbers::pi)
    throw std::invalid_argument("uniform phase width must lie in [0, 2 pi]");
  PhaseDistribution dist;
  dist.kind = Kind::Uniform;
  dist.width = width;
  return dist;
}

namespace {

// splitmix64: counter-based, reproducible across platforms.
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform01(std::uint64_t seed, std::uint64_t index,
                 std::uint64_t stream) {
  const std::uint64_t word =
      splitmix64(splitmix64(seed ^ (stream * 0x9e3779b97f4a7c15ULL)) + index);
  return (static_cast<double>(word >> 11) + 0.5) * 0x1.0p-53;
}

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

} // namespace

double PhaseDistribution::sample(std::uint64_t seed,
                                 std::uint64_t index) const {
  switch (kind) {
    case Kind::Delta:
      return phi0;
    case Kind::Uniform:
      return (uniform01(seed, index, 1) - 0.5) * width;
    case Kind::Gaussian: {
      const double u1 = uniform01(seed, index, 1);
      const double u2 = uniform01(seed, index, 2);
      const double normal = std::sqrt(-2.0 * std::log(u1)) *
                            std::cos(2.0 * std::numbers::pi * u2);
      return std::sqrt(variance) * normal;
    }
  }
  throw std::logic_error("unreachable");
}

double average_cos_phi(const PhaseDistribution& dist) {
  switch (dist.kind) {
    case PhaseDistribution::Kind::Delta: return std::cos(dist.phi0);
    case PhaseDistribution::Kind::Gaussian:
      return std::exp(-dist.variance / 2.0);
    case PhaseDistribution::Kind::Uniform: return sinc(dist.width / 2.0);
  }
  throw std::logic_error("unreachable");
}

Complex average_phase_factor(const PhaseDistribution& dist) {
  if (dist.kind == PhaseDistribution::Kind::Delta)
    return std::exp(kImag * dist.phi0);
  return Complex{average_cos_phi(dist), 0.0};
}

const char* to_string(NoiseScenario scenario) {
  return scenario == NoiseScenario::KnownDistribution ? "known" : "unknown";
}

NoiseScenario noise_scenario_from_string(const std::string& name) {
  if (name == "known") return NoiseScenario::KnownDistribution;
  if (name == "unknown") return NoiseScenario::UnknownDistribution;
  throw std::invalid_argument("unknown noise scenario: " + name);
}

TransportPopulations transport_populations(const FridgeParams& params) {
  const Matrix rho = thermal_product_state(params).entries();
  const double a0 = rho(basis::kKet010, basis::kKet010).real();
  const double b0 = rho(basis::kKet101, basis::kKet101).real();
  return {a0, b0, 0.5 * (a0 + b0), 0.5 * (b0 - a0)};
}

EnsembleResult ensemble_evolve(const FridgeParams& params,
                               const BathSpec& bath, double r,
                               const PhaseDistribution& dist,
                               const EnsembleOptions& opt) {
  if (r < 0 || r >= coherence_bound(params))
    throw std::invalid_argument(
        "coherence magnitude must satisfy 0 <= r < C_max");

  const Liouvillian liouvillian = build_liouvillian(params, bath);
  EnsembleResult result;
  result.scenario = opt.scenario;
  result.warnings = liouvillian.warnings;
  if (bath.model != BathModel::ModelII && params.g() > 0.0) {
    const double gamma_deph = dephasing_rate_gamma(params, bath);
    if (gamma_deph > params.g() / 10.0) {
      std::ostringstream msg;
      msg << "unitary-limit analytics marginal: dephasing rate "
          << gamma_deph << " exceeds g/10 = " << params.g() / 10.0;
      result.warnings.push_back(msg.str());
    }
  }

  Complex phase_mean;
  if (opt.n_samples > 0) {
    Complex sum = 0.0;
    for (int k = 0; k < opt.n_samples; ++k)
      sum += std::exp(kImag * dist.sample(opt.seed, k));
    phase_mean = sum / static_cast<double>(opt.n_samples);
  } else {
    phase_mean = average_phase_factor(dist);
  }

  // The generator is linear: the ensemble mean of e^{Lt} rho_phi equals
  // e^{Lt} applied to the phase-averaged initial state.
  const DensityMatrix mean_initial =
      prepared_initial_state(params, bath, r * std::abs(phase_mean),
                             std::arg(phase_mean), opt.prop.tol);
  const DensityMatrix reference_initial =
      prepared_initial_state(params, bath, r, 0.0, opt.prop.tol);

  result.mean_trajectory =
      propagate(liouvillian, mean_initial, opt.grid, opt.prop);
  result.reference_trajectory =
      propagate(liouvillian, reference_initial, opt.grid, opt.prop);

  const TemperatureMinimum noiseless =
      find_first_minimum(liouvillian, result.reference_trajectory, opt.prop);
  const TemperatureMinimum noisy =
      find_first_minimum(liouvillian, result.mean_trajectory, opt.prop);
  result.t_opt = noiseless.t_min;
  result.temp_min = noiseless.temperature;
  result.t_opt_prime = noisy.t_min;
  result.temp_min_prime = noisy.temperature;

  const double eval_time = opt.scenario == NoiseScenario::KnownDistribution
                               ? result.t_opt_prime
                               : result.t_opt;
  const Matrix noisy_state =
      state_at(liouvillian, result.mean_trajectory, eval_time, opt.prop)
          .entries();
  const Matrix reference_state =
      state_at(liouvillian, result.reference_trajectory, result.t_opt,
               opt.prop)
          .entries();
  const double sz_noisy = qubit_sigma_z(physical_state(noisy_state), 0);
  const double sz_ref = qubit_sigma_z(physical_state(reference_state), 0);
  result.delta_sigma_z = sz_noisy - sz_ref;
  result.delta_temperature =
      effective_temperature(sz_noisy, params.e1()) -
      effective_temperature(sz_ref, params.e1());
  return result;
}

AnalyticShift analytic_shift(const FridgeParams& params, double r,
                             double variance, NoiseScenario scenario) {
  if (r < 0 || r >= coherence_bound(params))
    throw std::invalid_argument(
        "coherence magnitude must satisfy 0 <= r < C_max");
  if (variance < 0)
    throw std::invalid_argument("phase variance must be nonnegative");
  const double g = params.g();
  if (g <= 0.0)
    throw std::invalid_argument("analytic shifts require g > 0");

  const TransportPopulations pops = transport_populations(params);
  const double decay = std::exp(-variance / 2.0);
  AnalyticShift shift;
  shift.t_opt =
      (std::numbers::pi - std::atan(r / pops.d)) / (2.0 * g);
  shift.t_opt_prime =
      (std::numbers::pi - std::atan(r * decay / pops.d)) / (2.0 * g);

  const double amplitude = std::sqrt(pops.d * pops.d + r * r);
  if (scenario == NoiseScenario::KnownDistribution) {
    shift.delta_sigma_z =
        r * r / amplitude * (1.0 - std::exp(-variance));
  } else {
    shift.delta_sigma_z = 2.0 * r * r / amplitude * (1.0 - decay);
  }

  // Optimal noiseless temperature from the unitary population dynamics.
  const double sz0 = -std::tanh(params.beta(0) * params.e1() / 2.0);
  const double sz_opt = sz0 - 2.0 * pops.d - 2.0 * amplitude;
  const double temp_opt = effective_temperature(sz_opt, params.e1());
  const double cosh_term = std::cosh(params.e1() / (2.0 * temp_opt));
  shift.delta_temperature = 2.0 * temp_opt * temp_opt / params.e1() *
                            cosh_term * cosh_term * shift.delta_sigma_z;
  return shift;
}

} // namespace qar
