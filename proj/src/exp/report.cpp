#include "scenesim/exp/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

#include "scenesim/common/strfmt.hpp"

namespace scenesim::exp {

namespace {

struct Moments {
  int n = 0;
  double mean = 0.0;
  double std = 0.0;
};

Moments moments(const std::vector<double>& xs) {
  Moments m;
  m.n = static_cast<int>(xs.size());
  if (m.n == 0) return m;
  double s = 0.0;
  for (double x : xs) s += x;
  m.mean = s / m.n;
  if (m.n > 1) {
    double q = 0.0;
    for (double x : xs) q += (x - m.mean) * (x - m.mean);
    m.std = std::sqrt(q / (m.n - 1));
  }
  return m;
}

}  // namespace

std::string report_csv(const std::vector<RunReport>& runs) {
  std::string out =
      "scenario,seed,anticipation,completed,failure,duration,ticks,min_safety,avg_safety,"
      "placements,mean_trans_err,mean_ang_err_deg,verify_failures,first_deviation,"
      "person_visible,person_feedback_reads,digest\n";
  for (const auto& r : runs) {
    out += r.scenario_id + ',' + std::to_string(r.seed) + ',';
    out += r.anticipation ? "on," : "off,";
    out += r.completed ? "1," : "0,";
    out += r.failure + ',';
    out += fmt_g17(r.duration) + ',' + std::to_string(r.ticks) + ',';
    out += fmt_g17(r.min_safety) + ',' + fmt_g17(r.avg_safety) + ',';
    out += std::to_string(r.placements.size()) + ',';
    out += fmt_g17(mean_trans_err(r)) + ',' + fmt_g17(mean_ang_err_deg(r)) + ',';
    out += std::to_string(r.verify_failures) + ',';
    out += fmt_g17(r.first_deviation) + ',' + fmt_g17(r.person_visible) + ',';
    out += std::to_string(r.person_feedback_reads) + ',' + r.digest_hex + '\n';
  }
  return out;
}

std::string report_jsonl(const std::vector<RunReport>& runs) {
  std::string out;
  for (const auto& r : runs) {
    nlohmann::json j;
    j["scenario"] = r.scenario_id;
    j["seed"] = r.seed;
    j["anticipation"] = r.anticipation;
    j["completed"] = r.completed;
    if (!r.failure.empty()) j["failure"] = r.failure;
    j["duration"] = r.duration;
    j["ticks"] = r.ticks;
    j["min_safety"] = r.min_safety;
    j["avg_safety"] = r.avg_safety;
    j["mean_trans_err"] = mean_trans_err(r);
    j["mean_ang_err_deg"] = mean_ang_err_deg(r);
    j["verify_failures"] = r.verify_failures;
    j["first_deviation"] = r.first_deviation;
    j["person_visible"] = r.person_visible;
    j["person_feedback_reads"] = r.person_feedback_reads;
    j["digest"] = r.digest_hex;
    auto places = nlohmann::json::array();
    for (const auto& p : r.placements) {
      places.push_back({{"entry", p.entry_index},
                        {"object", p.object_id},
                        {"trans_err", p.trans_err},
                        {"ang_err_deg", p.ang_err * 180.0 / geom::kPi},
                        {"verified", p.verified}});
    }
    j["placements"] = std::move(places);
    out += j.dump();
    out += '\n';
  }
  return out;
}

ConditionStats summarize(const std::vector<RunReport>& runs) {
  if (runs.empty()) throw std::invalid_argument("summarize: no runs");
  ConditionStats s;
  s.scenario_id = runs.front().scenario_id;
  s.anticipation = runs.front().anticipation;
  std::vector<double> durations, trans, ang, min_safety;
  for (const auto& r : runs) {
    if (r.scenario_id != s.scenario_id || r.anticipation != s.anticipation)
      throw std::invalid_argument("summarize: mixed conditions");
    ++s.runs;
    if (r.completed) ++s.completed;
    durations.push_back(r.duration);
    if (!r.placements.empty()) {
      trans.push_back(mean_trans_err(r));
      ang.push_back(mean_ang_err_deg(r));
    }
    if (r.min_safety >= 0.0) min_safety.push_back(r.min_safety);
  }
  const Moments d = moments(durations);
  s.mean_duration = d.mean;
  s.std_duration = d.std;
  if (!trans.empty()) {
    const Moments t = moments(trans), a = moments(ang);
    s.mean_trans = t.mean;
    s.std_trans = t.std;
    s.mean_ang_deg = a.mean;
    s.std_ang_deg = a.std;
  }
  if (!min_safety.empty()) {
    double worst = min_safety.front();
    for (double v : min_safety) worst = std::min(worst, v);
    s.worst_min_safety = worst;
    s.mean_min_safety = moments(min_safety).mean;
  }
  return s;
}

std::string summary_text(const std::vector<ConditionStats>& stats) {
  std::string out;
  char buf[256];
  for (const auto& s : stats) {
    std::snprintf(buf, sizeof buf, "%s [%s] runs %d completed %d duration %.2f+-%.2f s",
                  s.scenario_id.c_str(), s.anticipation ? "on" : "off", s.runs, s.completed,
                  s.mean_duration, s.std_duration);
    out += buf;
    if (s.mean_trans >= 0.0) {
      std::snprintf(buf, sizeof buf, " trans %.3f+-%.3f m ang %.2f+-%.2f deg", s.mean_trans,
                    s.std_trans, s.mean_ang_deg, s.std_ang_deg);
      out += buf;
    }
    if (s.worst_min_safety >= 0.0) {
      std::snprintf(buf, sizeof buf, " safety worst %.3f mean %.3f m", s.worst_min_safety,
                    s.mean_min_safety);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace scenesim::exp
