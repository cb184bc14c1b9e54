#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "scenesim/exp/report.hpp"
#include "scenesim/exp/runner.hpp"

namespace fs = std::filesystem;
using namespace scenesim;

namespace {

struct SeedRange {
  uint64_t lo = 1;
  uint64_t hi = 1;
};

// "7" or "3..12", both ends inclusive.
SeedRange parse_seeds(const std::string& text) {
  SeedRange r;
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      r.lo = r.hi = std::stoull(text);
    } else {
      r.lo = std::stoull(text.substr(0, dots));
      r.hi = std::stoull(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw CLI::ValidationError("--seeds", "expected N or A..B, got '" + text + "'");
  }
  if (r.hi < r.lo) throw CLI::ValidationError("--seeds", "range is empty");
  return r;
}

std::string trace_filename(const exp::RunReport& r) {
  return r.scenario_id + "_s" + std::to_string(r.seed) + (r.anticipation ? "_on" : "_off") +
         ".trace";
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

void print_run(const exp::RunReport& r) {
  std::printf("%s seed %llu %s: ", r.scenario_id.c_str(),
              static_cast<unsigned long long>(r.seed), r.anticipation ? "on" : "off");
  if (!r.failure.empty())
    std::printf("FAILED (%s) at %.2f s", r.failure.c_str(), r.duration);
  else if (!r.completed)
    std::printf("incomplete after %.2f s", r.duration);
  else
    std::printf("completed in %.2f s", r.duration);
  if (r.min_safety >= 0.0) std::printf(", min safety %.3f m", r.min_safety);
  if (!r.placements.empty())
    std::printf(", %zu placements, trans %.3f m, ang %.2f deg", r.placements.size(),
                exp::mean_trans_err(r), exp::mean_ang_err_deg(r));
  std::printf(", digest %s\n", r.digest_hex.c_str());
}

// Shared by run and batch: execute, report, persist, and track failures.
struct Session {
  std::string out_dir;
  std::vector<exp::RunReport> reports;
  bool all_ok = true;

  void execute(const exp::ScenarioConfig& cfg, uint64_t seed, bool anticipation) {
    exp::RunOptions opt;
    opt.anticipation = anticipation;
    opt.keep_trace = !out_dir.empty();
    exp::RunReport r = exp::run(cfg, seed, opt);
    print_run(r);
    if (!r.completed) all_ok = false;
    if (!out_dir.empty()) {
      write_file(fs::path(out_dir) / trace_filename(r), r.trace);
      r.trace.clear();  // keep the batch footprint small
    }
    reports.push_back(std::move(r));
  }

  int finish() {
    if (!out_dir.empty()) {
      write_file(fs::path(out_dir) / "report.csv", exp::report_csv(reports));
      write_file(fs::path(out_dir) / "report.jsonl", exp::report_jsonl(reports));
    }
    return all_ok ? 0 : 1;
  }
};

int cmd_run(const std::string& scenario, uint64_t seed, const std::string& anticipation,
            const std::string& out_dir) {
  const exp::ScenarioConfig cfg = exp::load_scenario(scenario);
  if (!out_dir.empty()) fs::create_directories(out_dir);
  Session s;
  s.out_dir = out_dir;
  s.execute(cfg, seed, anticipation == "on");
  return s.finish();
}

int cmd_batch(const std::string& dir, const std::string& seeds_text, int reps,
              const std::string& out_dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::fprintf(stderr, "error: no scenario files in %s\n", dir.c_str());
    return 1;
  }
  const SeedRange seeds = parse_seeds(seeds_text);
  if (!out_dir.empty()) fs::create_directories(out_dir);

  Session s;
  s.out_dir = out_dir;
  std::vector<exp::ConditionStats> stats;
  for (const auto& file : files) {
    const exp::ScenarioConfig cfg = exp::load_scenario(file.string());
    for (bool anticipation : {true, false}) {
      std::vector<exp::RunReport> condition;
      for (uint64_t seed = seeds.lo; seed <= seeds.hi; ++seed)
        for (int rep = 0; rep < reps; ++rep) {
          s.execute(cfg, seed, anticipation);
          condition.push_back(s.reports.back());
        }
      stats.push_back(exp::summarize(condition));
    }
  }
  std::printf("\n%s", exp::summary_text(stats).c_str());

  // Paired per-seed deltas, on minus off, averaged over repetitions.
  for (size_t i = 0; i + 1 < stats.size(); i += 2) {
    const auto& on = stats[i];
    std::printf("%s paired deltas (on-off):", on.scenario_id.c_str());
    for (uint64_t seed = seeds.lo; seed <= seeds.hi; ++seed) {
      double sum[2][3] = {};  // [condition][safety, duration, trans]
      int n[2] = {};
      bool trans_ok = true;
      for (const auto& r : s.reports) {
        if (r.scenario_id != on.scenario_id || r.seed != seed) continue;
        const int c = r.anticipation ? 0 : 1;
        ++n[c];
        sum[c][0] += r.min_safety;
        sum[c][1] += r.duration;
        const double t = exp::mean_trans_err(r);
        if (t < 0.0) trans_ok = false;
        sum[c][2] += t;
      }
      if (n[0] == 0 || n[1] == 0) continue;
      std::printf(" s%llu dmin %+.3f ddur %+.1f", static_cast<unsigned long long>(seed),
                  sum[0][0] / n[0] - sum[1][0] / n[1], sum[0][1] / n[0] - sum[1][1] / n[1]);
      if (trans_ok) std::printf(" dtrans %+.3f", sum[0][2] / n[0] - sum[1][2] / n[1]);
      std::printf(";");
    }
    std::printf("\n");
  }
  return s.finish();
}

int cmd_replay(const std::string& trace_path, const std::string& scenario_dir) {
  std::ifstream in(trace_path, std::ios::binary);
  if (!in) {
    std::fprintf(stderr, "error: cannot read %s\n", trace_path.c_str());
    return 1;
  }
  std::string recorded((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::istringstream header(recorded.substr(0, recorded.find('\n')));
  std::string word, version, kw_scenario, id, kw_seed, kw_ant, cond;
  uint64_t seed = 0;
  header >> word >> version >> kw_scenario >> id >> kw_seed >> seed >> kw_ant >> cond;
  if (word != "trace" || kw_scenario != "scenario" || kw_seed != "seed" ||
      kw_ant != "anticipation" || (cond != "on" && cond != "off")) {
    std::fprintf(stderr, "error: %s has no valid trace header\n", trace_path.c_str());
    return 1;
  }

  const exp::ScenarioConfig cfg =
      exp::load_scenario((fs::path(scenario_dir) / (id + ".json")).string());
  exp::RunOptions opt;
  opt.anticipation = cond == "on";
  const exp::RunReport r = exp::run(cfg, seed, opt);
  if (r.trace == recorded) {
    std::printf("replay %s seed %llu %s: trace matches, digest %s\n", id.c_str(),
                static_cast<unsigned long long>(seed), cond.c_str(), r.digest_hex.c_str());
    return 0;
  }
  std::fprintf(stderr, "replay %s seed %llu %s: MISMATCH (recorded %zu bytes, got %zu, digest %s)\n",
               id.c_str(), static_cast<unsigned long long>(seed), cond.c_str(), recorded.size(),
               r.trace.size(), r.digest_hex.c_str());
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic smart-environment navigation and carry experiments"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir, anticipation = "on";
  uint64_t seed = 1;
  auto* run_cmd = app.add_subcommand("run", "one seeded episode");
  run_cmd->add_option("--scenario", scenario_path, "scenario json file")->required();
  run_cmd->add_option("--seed", seed, "run seed");
  run_cmd->add_option("--anticipation", anticipation, "feedback condition")
      ->check(CLI::IsMember({"on", "off"}));
  run_cmd->add_option("--out", out_dir, "directory for trace and reports");

  std::string batch_dir, seeds_text = "1..5";
  int reps = 1;
  auto* batch_cmd = app.add_subcommand("batch", "seed sweep over a scenario directory, both conditions");
  batch_cmd->add_option("--scenarios", batch_dir, "directory of scenario json files")->required();
  batch_cmd->add_option("--seeds", seeds_text, "seed or inclusive range A..B");
  batch_cmd->add_option("--reps", reps, "repetitions per (scenario, seed)")
      ->check(CLI::PositiveNumber);
  batch_cmd->add_option("--out", out_dir, "directory for traces and reports");

  std::string trace_path, scenario_dir = "scenarios";
  auto* replay_cmd = app.add_subcommand("replay", "re-run a recorded trace and compare");
  replay_cmd->add_option("--trace", trace_path, "trace file from run/batch")->required();
  replay_cmd->add_option("--scenario-dir", scenario_dir, "where scenario json files live");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return cmd_run(scenario_path, seed, anticipation, out_dir);
    if (batch_cmd->parsed()) return cmd_batch(batch_dir, seeds_text, reps, out_dir);
    return cmd_replay(trace_path, scenario_dir);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
