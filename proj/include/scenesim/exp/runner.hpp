#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scenesim/exp/scenario.hpp"

namespace scenesim::exp {

struct PlacementRecord {
  size_t entry_index = 0;
  int object_id = 0;
  double trans_err = 0.0;  // m, true object pose vs layout target
  double ang_err = 0.0;    // rad; tables fold the half-turn ambiguity
  bool verified = false;   // within (tau_goal, 3 deg)
};

struct RunReport {
  std::string scenario_id;
  uint64_t seed = 0;
  bool anticipation = true;
  bool completed = false;
  std::string failure;  // task error that aborted the run, if any
  double duration = 0.0;
  long ticks = 0;
  double min_safety = -1.0;  // m over all (tick, human) pairs; -1 without humans
  double avg_safety = -1.0;  // mean over ticks of the per-tick minimum
  std::vector<PlacementRecord> placements;
  double first_deviation = -1.0;  // s the plan first leaves the straight line
  double person_visible = -1.0;   // s a scripted walker first shows up on lidar
  long person_feedback_reads = 0;
  long verify_failures = 0;
  uint64_t digest = 0;
  std::string digest_hex;
  std::string trace;  // full text when RunOptions::keep_trace
};

struct RunOptions {
  bool anticipation = true;
  bool keep_trace = true;
};

// One seeded closed-loop episode: sensors observe the world, percepts cross
// the lossy channel into the fusion backend, feedback crosses back, and the
// robot controller drives the simulated base until the mission completes or
// max_duration elapses. Without anticipation the feedback person entries are
// withheld from the robot and task starts wait for the scripted input delay.
RunReport run(const ScenarioConfig& cfg, uint64_t seed, const RunOptions& opt = {});

double mean_trans_err(const RunReport& r);  // over placements; -1 when none
double mean_ang_err_deg(const RunReport& r);

}  // namespace scenesim::exp
