// protocol.hpp — single-shot cooling protocol, quantum-advantage metrics
// and the temperature trade-off sweep

#pragma once

#include <string>
#include <vector>

#include "qar/dynamics.hpp"

namespace qar {

enum class T0Policy { AutoMinimum, Fixed, PiOver2g };

const char* to_string(T0Policy policy);
T0Policy t0_policy_from_string(const std::string& name);

struct ProtocolOptions {
  T0Policy policy = T0Policy::PiOver2g;
  double fixed_t0 = 0.0;          // used by T0Policy::Fixed
  double coherence_r = 0.0;       // initial transport coherence magnitude
  double coherence_phi = 0.0;
  double t1_cap_factor = 20.0;    // post-phase time cap, units of 1/gamma_r
  double auto_horizon_periods = 2.0;  // minimum search span, units of pi/g
  int pre_samples = 1201;
  int post_samples = 2001;
  PropagateOptions prop{};
};

struct ProtocolResult {
  double t0 = 0.0;            // switch-off time
  double temp_at_t0 = 0.0;    // T~_1(t0), the extraction temperature
  double t_inf_temperature = 0.0;  // steady-state temperature T_inf
  double delta_t = 0.0;       // T_inf - T~_1(t0)
  double t1 = 0.0;            // post-phase crossing of T_inf (+inf if capped)
  double t_q = 0.0;           // t1 - t0
  bool t1_capped = false;
  double gamma_r = 0.0;
  Trajectory pre_trajectory;
  Trajectory post_trajectory;
  std::vector<std::string> warnings;
};

// Mean of the thermal gain and decay rates of the isolated cold qubit.
// Ohmic models: [gamma_1(E_1) + gamma_1(-E_1)] / 2. Model II: half the
// resonant effective spectral density, eta^2 gamma^2 / (2 Gamma_1).
double relaxation_rate_gamma_r(const FridgeParams& params,
                               const BathSpec& bath);

// Evolves the full model to t0 (per policy), swaps to the g = 0 generator
// of the same bath family, and follows the decoupled relaxation until the
// qubit-1 temperature crosses T_inf or the time cap is reached.
ProtocolResult run_single_shot(const FridgeParams& params,
                               const BathSpec& bath,
                               const ProtocolOptions& opt = {});

struct SweepPoint {
  double t_hot = 0.0;
  double t_room = 0.0;
  double delta_t = 0.0;
  double t_inf = 0.0;
  double frac_advantage = 0.0;  // delta_t / t_inf
  double t_q = 0.0;
  double gamma_r = 0.0;
  double t_q_scaled = 0.0;      // t_q * gamma_r
  bool ok = false;
  std::string error;
};

struct SweepOptions {
  std::vector<double> t_room_values{25.0, 50.0, 100.0};
  double t_hot_offset_min = 1.0;
  double t_hot_offset_max = 200.0;
  int points_per_curve = 30;
  ProtocolOptions protocol{};
  int threads = 0;  // 0: QAR_THREADS env or hardware concurrency
};

// One single-shot run per (T_r, T_h) grid point with the pi/(2g) policy.
// Points run concurrently; output order is by grid index regardless of
// scheduling. Individual failures are recorded and the sweep continues.
std::vector<SweepPoint> sweep_tradeoff(const FridgeParams& base,
                                       const BathSpec& bath,
                                       const SweepOptions& opt = {});

// Worker count used for concurrent sweeps (QAR_THREADS override).
int resolve_thread_count(int requested);

} // namespace qar
