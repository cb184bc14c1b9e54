#pragma once

#include <string>
#include <vector>

#include "scenesim/exp/runner.hpp"

namespace scenesim::exp {

// Aggregate over repeated runs of one scenario under one condition. Spreads
// are sample standard deviations (zero for a single run); placement columns
// are -1 when none of the runs placed anything.
struct ConditionStats {
  std::string scenario_id;
  bool anticipation = true;
  int runs = 0;
  int completed = 0;
  double mean_duration = 0.0;
  double std_duration = 0.0;
  double mean_trans = -1.0;
  double std_trans = 0.0;
  double mean_ang_deg = -1.0;
  double std_ang_deg = 0.0;
  double worst_min_safety = -1.0;  // smallest min_safety across runs
  double mean_min_safety = -1.0;
};

// One row / one JSON object per run; doubles in %.17g so nothing is lost.
std::string report_csv(const std::vector<RunReport>& runs);
std::string report_jsonl(const std::vector<RunReport>& runs);

// Runs must share scenario_id and anticipation flag.
ConditionStats summarize(const std::vector<RunReport>& runs);

std::string summary_text(const std::vector<ConditionStats>& stats);

}  // namespace scenesim::exp
