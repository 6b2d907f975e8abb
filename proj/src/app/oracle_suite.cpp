#include "wmeval/app/oracle_suite.hpp"

#include "wmeval/judge/voting.hpp"
#include "wmeval/kinematics/physlaw.hpp"
#include "wmeval/metrics/metrics.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

namespace wmeval::app {

namespace {

using Clock = std::chrono::steady_clock;

std::string num(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

CriterionResult timed(int id, std::string name, const std::function<bool(std::string&)>& body) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  const auto t0 = Clock::now();
  r.passed = body(r.detail);
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

double final_of(const CentroidTrajectory& traj, const kin::PhysLawParams& params) {
  return kin::evaluate(traj, 10, true, params).result.final;
}

judge::JudgeVerdict ab(judge::AB v) {
  judge::JudgeVerdict j;
  j.kind = judge::VerdictKind::AB;
  j.value = v;
  return j;
}

judge::JudgeVerdict binary(int v) {
  judge::JudgeVerdict j;
  j.kind = judge::VerdictKind::Binary01;
  j.value = v;
  return j;
}

judge::JudgeVerdict comparison(judge::Comparison v) {
  judge::JudgeVerdict j;
  j.kind = judge::VerdictKind::SameDifferent;
  j.value = v;
  return j;
}

}  // namespace

std::vector<CriterionResult> run_oracle_suite(const OracleSuiteOptions& opt) {
  std::vector<CriterionResult> out;
  const auto& params = opt.params;
  const auto& g = opt.geometry;

  out.push_back(timed(1, "synthetic ladder", [&](std::string& detail) {
    std::map<oracle::Level, double> mean;
    bool ordered = true;
    bool l0_exact = true;
    std::uint64_t bad_seed = 0;
    for (int k = 0; k < opt.sweep; ++k) {
      const std::uint64_t seed = opt.seed + static_cast<std::uint64_t>(k);
      std::map<oracle::Level, double> s;
      for (auto lv : oracle::kAllLevels) {
        s[lv] = final_of(oracle::gen_ladder(lv, seed, 32, 16.0, g), params);
        mean[lv] += s[lv] / opt.sweep;
      }
      if (s[oracle::Level::L0] != 100.0) l0_exact = false;
      if (!(s[oracle::Level::L0] > s[oracle::Level::L1] && s[oracle::Level::L1] > s[oracle::Level::L2])) {
        if (ordered) bad_seed = seed;
        ordered = false;
      }
    }
    detail = "means L0..L4 = " + num(mean[oracle::Level::L0]) + "/" + num(mean[oracle::Level::L1]) + "/" +
             num(mean[oracle::Level::L2]) + "/" + num(mean[oracle::Level::L3]) + "/" +
             num(mean[oracle::Level::L4]);
    if (!l0_exact) detail += "; L0 not exactly 100";
    if (!ordered) detail += "; ordering broken at seed " + std::to_string(bad_seed);
    return l0_exact && ordered && mean[oracle::Level::L1] >= 80 && mean[oracle::Level::L2] <= 50 &&
           mean[oracle::Level::L3] <= 40 && mean[oracle::Level::L4] <= 40;
  }));
  out.back().passed = out.back().passed && out.back().seconds < 5.0;

  out.push_back(timed(2, "acceleration stability", [&](std::string& detail) {
    std::map<oracle::AccelShape, double> s;
    for (auto sh : oracle::kAllShapes) s[sh] = final_of(oracle::gen_accel_shape(sh, opt.seed, 32, 16.0, g), params);
    detail.clear();
    for (auto sh : oracle::kAllShapes) {
      detail += (detail.empty() ? "" : " ") + std::string(oracle::to_string(sh)) + "=" + num(s[sh]);
    }
    bool min_ok = true;
    for (auto sh : oracle::kAllShapes) {
      if (sh != oracle::AccelShape::Pm50 && !(s[sh] > s[oracle::AccelShape::Pm50])) min_ok = false;
    }
    return s[oracle::AccelShape::Constant] >= 95 && s[oracle::AccelShape::Pm5] >= 95 && min_ok &&
           s[oracle::AccelShape::Pm20] > s[oracle::AccelShape::Pm50];
  }));
  out.back().passed = out.back().passed && out.back().seconds < 5.0;

  out.push_back(timed(3, "bounce mapping", [&](std::string& detail) {
    constexpr std::array<double, 4> ratios{0.5, 0.7, 1.1, 1.5};
    constexpr std::array<double, 4> want{1.0, 1.0, 0.5, 0.0};
    bool ok = true;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
      const auto rep = kin::evaluate(oracle::gen_bounce(0.5, ratios[i], 120, 16.0, g), 10, true, params);
      double got = std::nan("");
      for (const auto& axis : rep.axes) {
        if (axis.features) got = axis.features->bounce;
      }
      detail += (i ? " " : "") + num(ratios[i], 1) + "->" + num(got, 6);
      if (!(std::abs(got - want[i]) <= 1e-6)) ok = false;
    }
    return ok;
  }));

  out.push_back(timed(4, "GEN formula", [&](std::string& detail) {
    constexpr std::array<std::array<double, 2>, 3> cases{{{2.7, 97.4}, {85.3, 42.6}, {-10.0, 100.0}}};
    bool ok = true;
    for (const auto& [delta, want] : cases) {
      const double tcr_id = delta >= 0 ? 100.0 : 50.0;
      const double got = metrics::gen_score(tcr_id, tcr_id - delta);
      detail += (detail.empty() ? "" : " ") + num(delta, 1) + "->" + num(got, 3);
      if (!(std::abs(got - want) <= 0.05)) ok = false;
    }
    return ok;
  }));

  out.push_back(timed(5, "VQS gate", [&](std::string& detail) {
    bool ok = judge::vqs(false, false) == 0 && judge::vqs(false, true) == 0 &&
              judge::vqs(true, false) == 5 && judge::vqs(true, true) == 10;
    double worst = 0;
    for (bool video_ok : {false, true}) {
      const int vqs = judge::vqs(video_ok, false);
      for (int k = 0; k <= 100; ++k) {
        worst = std::max(worst, kin::final_score(k / 100.0, vqs, false, params).final);
      }
      worst = std::max(worst, kin::final_score(std::nullopt, vqs, false, params).final);
    }
    detail = "max final without motion = " + num(worst);
    return ok && worst <= 5.0;
  }));

  out.push_back(timed(6, "voting boundaries", [&](std::string& detail) {
    bool ok = true;
    for (unsigned mask = 0; mask < 128; ++mask) {
      std::vector<judge::JudgeVerdict> votes;
      int same = 0;
      for (int b = 0; b < 7; ++b) {
        const bool s = (mask >> b) & 1U;
        same += s;
        votes.push_back(comparison(s ? judge::Comparison::Same : judge::Comparison::Different));
      }
      const auto r = judge::bias_vote(votes);
      if (!r || (r->label == judge::BiasLabel::Y) != (same >= 4)) ok = false;
    }
    for (int ones = 0; ones <= 16; ++ones) {
      std::vector<judge::JudgeVerdict> votes;
      for (int i = 0; i < 16; ++i) votes.push_back(binary(i < ones ? 1 : 0));
      const auto r = judge::ops_aggregate(votes);
      if (!r || r->preserved != (ones >= 12)) ok = false;
    }
    for (int nb = 0; nb <= 10; ++nb) {
      std::vector<judge::JudgeVerdict> votes;
      for (int i = 0; i < 10; ++i) votes.push_back(ab(i < nb ? judge::AB::B : judge::AB::A));
      const auto r = judge::pairframe_score(votes);
      if (!r || r->score != 100.0 - 10.0 * nb || (r->label == judge::AB::B) != (nb > 0)) ok = false;
    }
    detail = "128 bias patterns, 17 OPS counts, 11 pairframe counts";
    return ok;
  }));
  return out;
}

std::string format_table(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  char line[512];
  std::snprintf(line, sizeof line, "%-3s %-24s %-5s %8s  %s\n", "#", "criterion", "ok", "seconds", "detail");
  os << line;
  for (const auto& r : results) {
    std::snprintf(line, sizeof line, "%-3d %-24s %-5s %8.3f  %s\n", r.id, r.name.c_str(),
                  r.passed ? "PASS" : "FAIL", r.seconds, r.detail.c_str());
    os << line;
  }
  return os.str();
}

nlohmann::json to_json(const std::vector<CriterionResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results) {
    arr.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
  }
  return arr;
}

}  // namespace wmeval::app
