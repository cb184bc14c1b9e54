#pragma once

#include <stdexcept>

namespace scenesim::task {

// Thresholds and gains for pickup anticipation and compliant carrying.
struct CarryParams {
  double tau_ee = 0.03;     // m, end-effector displacement deadband
  double tau_goal = 0.05;   // m, goal position tolerance
  double tau_vel = 0.05;    // m/s, at-rest speed threshold
  double tau_p = 2.5;       // m, person-to-area selection radius
  double tau_direct = 1.0;  // m, switch to the direct-approach controller
  double delta_grasp = 0.9; // m, docking standoff from the table center
  double k_e_lin = 1.0;     // 1/s, compliance gain on grasped-edge offset
  double k_e_rot = 1.5;     // rad/(m s), rotational compliance gain
  double k_a_lin = 0.2;     // 1/s, anticipatory pull toward the goal
  double k_a_rot = 0.5;     // rad/(m s), anticipatory heading gain
  double k_direct = 2.0;    // direct-approach gain multiplier
  double v_max = 0.3;       // m/s, carry speed cap
  double w_max = 0.6;       // rad/s, carry turn-rate cap
};

inline void validate(const CarryParams& p) {
  const double vals[] = {p.tau_ee,  p.tau_goal, p.tau_vel, p.tau_p,    p.tau_direct,
                         p.delta_grasp, p.k_e_lin,  p.k_e_rot, p.k_a_lin,  p.k_a_rot,
                         p.k_direct,    p.v_max,    p.w_max};
  for (double v : vals)
    if (!(v > 0.0)) throw std::invalid_argument("carry parameter not positive");
  if (!(p.tau_goal < p.tau_direct)) throw std::invalid_argument("tau_goal must be below tau_direct");
}

}  // namespace scenesim::task
