// protocol.cpp — single-shot protocol and trade-off sweep

#include "qar/protocol.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <thread>

namespace qar {

const char* to_string(T0Policy policy) {
  switch (policy) {
    case T0Policy::AutoMinimum: return "auto-minimum";
    case T0Policy::Fixed: return "fixed";
    case T0Policy::PiOver2g: return "pi-over-2g";
  }
  return "unknown";
}

T0Policy t0_policy_from_string(const std::string& name) {
  if (name == "auto-minimum") return T0Policy::AutoMinimum;
  if (name == "fixed") return T0Policy::Fixed;
  if (name == "pi-over-2g") return T0Policy::PiOver2g;
  throw std::invalid_argument("unknown t0 policy: " + name);
}

double relaxation_rate_gamma_r(const FridgeParams& params,
                               const BathSpec& bath) {
  if (bath.model == BathModel::ModelII) {
    const double gamma_1 =
        bath.gamma * (1.0 + std::exp(-params.beta(0) * params.e1())) / 2.0;
    return bath.eta * bath.eta * bath.gamma * bath.gamma / (2.0 * gamma_1);
  }
  const double down =
      ohmic_rate(params.e1(), params.beta(0), bath.alpha, bath.omega_cutoff);
  const double up =
      ohmic_rate(-params.e1(), params.beta(0), bath.alpha, bath.omega_cutoff);
  return 0.5 * (down + up);
}

namespace {

Liouvillian decoupled_generator(const FridgeParams& params,
                                const BathSpec& bath) {
  const FridgeParams off = params.with_g(0.0);
  if (bath.model == BathModel::ModelII) return build_model_ii(off, bath);
  return build_weak_coupling(
      off, BathSpec::model_i_weak(bath.alpha, bath.omega_cutoff));
}

// First upward crossing of `level` in the qubit-1 temperature series,
// located by linear interpolation between the bracketing samples.
struct Crossing {
  double t = std::numeric_limits<double>::infinity();
  bool found = false;
};

Crossing first_crossing(const Trajectory& traj, double level) {
  for (std::size_t i = 1; i < traj.times.size(); ++i) {
    const double prev = traj.observables[i - 1].temperature[0];
    const double next = traj.observables[i].temperature[0];
    if (prev < level && next >= level) {
      const double frac = (level - prev) / (next - prev);
      return {traj.times[i - 1] + frac * (traj.times[i] - traj.times[i - 1]),
              true};
    }
  }
  return {};
}

} // namespace

ProtocolResult run_single_shot(const FridgeParams& params,
                               const BathSpec& bath,
                               const ProtocolOptions& opt) {
  const Liouvillian full = build_liouvillian(params, bath);
  ProtocolResult result;
  result.warnings = full.warnings;
  result.gamma_r = relaxation_rate_gamma_r(params, bath);

  const DensityMatrix initial = prepared_initial_state(
      params, bath, opt.coherence_r, opt.coherence_phi, opt.prop.tol);

  const SteadyState steady = steady_state(full, opt.prop.tol);
  result.t_inf_temperature = steady.t_inf_temperature;

  const double g = params.g();
  switch (opt.policy) {
    case T0Policy::PiOver2g:
      result.t0 = g > 0.0 ? std::numbers::pi / (2.0 * g) : 0.0;
      break;
    case T0Policy::Fixed:
      if (opt.fixed_t0 < 0.0)
        throw std::invalid_argument("fixed t0 must be nonnegative");
      result.t0 = opt.fixed_t0;
      break;
    case T0Policy::AutoMinimum: {
      if (g <= 0.0) {
        result.t0 = 0.0;
        break;
      }
      const double horizon =
          opt.auto_horizon_periods * std::numbers::pi / g;
      const Trajectory search =
          propagate(full, initial, SampleGrid::uniform(horizon, opt.pre_samples),
                    opt.prop);
      result.t0 = find_first_minimum(full, search, opt.prop).t_min;
      break;
    }
  }

  const int pre_samples = result.t0 > 0.0 ? opt.pre_samples : 1;
  result.pre_trajectory = propagate(
      full, initial, SampleGrid::window(0.0, result.t0, pre_samples),
      opt.prop);
  result.temp_at_t0 =
      result.pre_trajectory.observables.back().temperature[0];
  result.delta_t = result.t_inf_temperature - result.temp_at_t0;

  const Liouvillian relaxed = decoupled_generator(params, bath);
  const double cap = opt.t1_cap_factor / result.gamma_r;
  result.post_trajectory = propagate(
      relaxed, result.pre_trajectory.states.back(),
      SampleGrid::window(result.t0, result.t0 + cap, opt.post_samples),
      opt.prop);

  const double level_slack =
      1e-9 * std::max(1.0, std::abs(result.t_inf_temperature));
  if (result.temp_at_t0 >= result.t_inf_temperature - level_slack) {
    // No advantage at switch-off (within solver resolution); the crossing
    // degenerates to t0.
    result.t1 = result.t0;
    result.t_q = 0.0;
  } else {
    const Crossing crossing =
        first_crossing(result.post_trajectory, result.t_inf_temperature);
    if (crossing.found) {
      result.t1 = crossing.t;
      result.t_q = result.t1 - result.t0;
    } else {
      result.t1 = std::numeric_limits<double>::infinity();
      result.t_q = std::numeric_limits<double>::infinity();
      result.t1_capped = true;
    }
  }
  return result;
}

int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QAR_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::vector<SweepPoint> sweep_tradeoff(const FridgeParams& base,
                                       const BathSpec& bath,
                                       const SweepOptions& opt) {
  if (opt.t_room_values.empty() || opt.points_per_curve < 2)
    throw std::invalid_argument("sweep grid must be nonempty");
  if (opt.t_hot_offset_min <= 0.0 ||
      opt.t_hot_offset_max <= opt.t_hot_offset_min)
    throw std::invalid_argument("sweep requires 0 < offset_min < offset_max");

  struct GridPoint {
    double t_room;
    double t_hot;
  };
  std::vector<GridPoint> grid;
  for (double t_room : opt.t_room_values) {
    for (int k = 0; k < opt.points_per_curve; ++k) {
      const double offset =
          opt.t_hot_offset_min + (opt.t_hot_offset_max - opt.t_hot_offset_min) *
                                     k / (opt.points_per_curve - 1);
      grid.push_back({t_room, t_room + offset});
    }
  }

  ProtocolOptions protocol = opt.protocol;
  protocol.policy = T0Policy::PiOver2g;

  std::vector<SweepPoint> points(grid.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (std::size_t i = cursor.fetch_add(1); i < grid.size();
         i = cursor.fetch_add(1)) {
      SweepPoint& point = points[i];
      point.t_room = grid[i].t_room;
      point.t_hot = grid[i].t_hot;
      try {
        const FridgeParams params = base.with_temperatures(
            grid[i].t_room, grid[i].t_room, grid[i].t_hot);
        const ProtocolResult run = run_single_shot(params, bath, protocol);
        point.delta_t = run.delta_t;
        point.t_inf = run.t_inf_temperature;
        point.frac_advantage = run.delta_t / run.t_inf_temperature;
        point.t_q = run.t_q;
        point.gamma_r = run.gamma_r;
        point.t_q_scaled = run.t_q * run.gamma_r;
        point.ok = true;
      } catch (const std::exception& err) {
        point.error = err.what();
      }
    }
  };

  const int n_threads =
      std::min<int>(resolve_thread_count(opt.threads),
                    static_cast<int>(grid.size()));
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& thread : pool) thread.join();
  return points;
}

} // namespace qar
