/*
 * Copyright (c) 2026, The ringsweep authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Acceptance driver: one PASS/FAIL line per criterion. Every tolerance is a
// named constant below.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ringsweep/adversary.hpp"
#include "ringsweep/analysis.hpp"
#include "ringsweep/engine.hpp"
#include "ringsweep/trace_io.hpp"
#include "ringsweep/words.hpp"
#include "word_oracle.hpp"

namespace rs = ringsweep;

namespace {

constexpr double kStaticBudgetSeconds = 10.0;
constexpr double kRecurrentBudgetSeconds = 60.0;
constexpr double kMissingBudgetSeconds = 60.0;
constexpr double kWordsBudgetSeconds = 5.0;
constexpr std::uint64_t kSearchBudget = 100'000'000;

constexpr std::size_t kStaticConfigs = 500;
constexpr rs::Round kStaticHorizon = 200;
constexpr rs::Round kStaticSuffix = 2;

constexpr std::size_t kSeeds = 100;
constexpr rs::Round kRecurrenceBound = 8;
constexpr double kPresence = 0.5;
constexpr rs::Round kLongHorizon = 10'000;
constexpr rs::Round kLongSuffix = 1'000;

constexpr rs::Round kPairHorizon = 5'000;
constexpr rs::Round kPairSuffix = 500;

constexpr rs::Round kWitnessReplay = 10'000;
constexpr std::size_t kGreedySeeds = 50;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << detail << std::endl;
  if (!ok) ++failures;
}

// Monitor tally shared by criteria 1-4 and judged in criterion 8.
struct MonitorTally {
  std::size_t traces = 0;
  std::size_t findings = 0;
  std::string first;

  void add(const rs::Trace& t, const std::string& label) {
    ++traces;
    const auto f = rs::monitor_lemmas(t);
    if (!f.empty() && first.empty()) {
      first = label + ": [" + f[0].monitor + "] round " + std::to_string(f[0].round) + " " +
              f[0].detail;
    }
    findings += f.size();
  }
};

MonitorTally tally;

// Determinism samples: (label, first rendering) re-run in criterion 9.
struct Sample {
  std::string label;
  std::function<rs::Trace()> make;
};
std::vector<Sample> samples;

rs::Trace simulate(const rs::EvolvingRing& ring, const rs::Configuration& init, rs::Round rounds,
                   rs::Algorithm algo, rs::ComputeOptions opts = {}) {
  rs::ScheduleSource src(ring);
  return rs::run(ring.footprint(), init, src, algo, opts, rounds);
}

void criterion_static() {
  const auto t0 = Clock::now();
  std::size_t runs = 0;
  std::size_t bad_coherence = 0;
  std::size_t bad_cover = 0;
  rs::Round worst_ratio_gap = 0;
  std::string example;
  for (std::size_t n = 4; n <= 10; ++n) {
    const auto ring = rs::static_ring(n);
    for (std::uint64_t seed = 0; seed < kStaticConfigs; ++seed) {
      const auto init = rs::fuzz_initial(n, {0, 1, 2}, seed);
      const auto trace = simulate(ring, init, kStaticHorizon, rs::Algorithm::Pef3);
      ++runs;
      const auto tc = rs::coherence_time(trace);
      if (!tc || *tc > 1) ++bad_coherence;
      const auto rep = rs::coverage(trace, kStaticSuffix, n);
      if (!rep.covered) {
        ++bad_cover;
        if (example.empty()) {
          example = " first failure n=" + std::to_string(n) + " seed=" + std::to_string(seed) +
                    " " + rep.verdict();
        }
      }
      worst_ratio_gap = std::max(worst_ratio_gap, rep.bound > n ? rep.bound - n : 0);
      tally.add(trace, "static n=" + std::to_string(n) + " seed=" + std::to_string(seed));
    }
  }
  const double secs = seconds_since(t0);
  samples.push_back({"static n=7 seed=13", [] {
                       return simulate(rs::static_ring(7), rs::fuzz_initial(7, {0, 1, 2}, 13),
                                       kStaticHorizon, rs::Algorithm::Pef3);
                     }});
  std::ostringstream os;
  os << "static rings n=4..10, " << runs << " runs, coherent by round 1 in "
     << runs - bad_coherence << ", gap <= n from round " << kStaticSuffix << " in "
     << runs - bad_cover << ", " << secs << " s (budget " << kStaticBudgetSeconds
     << " s, monitors included)" << example;
  report(1, bad_coherence == 0 && bad_cover == 0 && secs < kStaticBudgetSeconds, os.str());
}

struct LongRunStats {
  std::size_t runs = 0;
  std::size_t starved = 0;
  rs::Round max_bound = 0;
  std::string example;
  double sim_secs = 0;
};

void criterion_recurrent() {
  LongRunStats st;
  for (std::size_t n = 4; n <= 8; ++n) {
    for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
      const auto t0 = Clock::now();
      const auto ring = rs::recurrent_random(n, kPresence, kRecurrenceBound, seed);
      const auto trace = simulate(ring, rs::fuzz_initial(n, {0, 1, 2}, seed), kLongHorizon,
                                  rs::Algorithm::Pef3);
      const auto rep = rs::coverage(trace, kLongSuffix, kLongHorizon - kLongSuffix);
      st.sim_secs += seconds_since(t0);
      ++st.runs;
      st.max_bound = std::max(st.max_bound, rep.bound);
      if (!rep.covered) {
        ++st.starved;
        if (st.example.empty()) {
          st.example = " first failure n=" + std::to_string(n) + " seed=" + std::to_string(seed) +
                       " " + rep.verdict();
        }
      }
      tally.add(trace, "recurrent n=" + std::to_string(n) + " seed=" + std::to_string(seed));
    }
  }
  samples.push_back({"recurrent n=6 seed=42", [] {
                       return simulate(rs::recurrent_random(6, kPresence, kRecurrenceBound, 42),
                                       rs::fuzz_initial(6, {0, 1, 2}, 42), kLongHorizon,
                                       rs::Algorithm::Pef3);
                     }});
  std::ostringstream os;
  os << "edge-recurrent B=" << kRecurrenceBound << " n=4..8, " << st.runs
     << " runs, Covered from round " << kLongSuffix << " in " << st.runs - st.starved
     << ", measured bound " << st.max_bound << ", " << st.sim_secs << " s (budget "
     << kRecurrentBudgetSeconds << " s)" << st.example;
  report(2, st.starved == 0 && st.sim_secs < kRecurrentBudgetSeconds, os.str());
}

void criterion_missing() {
  LongRunStats st;
  std::size_t not_established = 0;
  rs::Round latest = 0;
  for (std::size_t n = 4; n <= 8; ++n) {
    for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
      const auto t0 = Clock::now();
      const auto edge = static_cast<rs::EdgeIndex>(seed % n);
      const auto ring = rs::eventual_missing(n, edge, 0, kPresence, kRecurrenceBound, seed);
      const auto trace = simulate(ring, rs::fuzz_initial(n, {0, 1, 2}, seed), kLongHorizon,
                                  rs::Algorithm::Pef3);
      const auto rep = rs::coverage(trace, kLongSuffix, kLongHorizon - kLongSuffix);
      const auto sent = rs::sentinel_visitor_report(trace);
      st.sim_secs += seconds_since(t0);
      ++st.runs;
      st.max_bound = std::max(st.max_bound, rep.bound);
      const std::string where = "n=" + std::to_string(n) + " seed=" + std::to_string(seed);
      if (!rep.covered) {
        ++st.starved;
        if (st.example.empty()) st.example = " first failure " + where + " " + rep.verdict();
      }
      if (!sent.applicable || !sent.established) {
        ++not_established;
        if (st.example.empty()) st.example = " first failure " + where + " " + sent.str();
      } else {
        latest = std::max(latest, *sent.established);
      }
      tally.add(trace, "missing " + where);
    }
  }
  samples.push_back({"missing n=5 seed=7", [] {
                       return simulate(rs::eventual_missing(5, 2, 0, kPresence, kRecurrenceBound, 7),
                                       rs::fuzz_initial(5, {0, 1, 2}, 7), kLongHorizon,
                                       rs::Algorithm::Pef3);
                     }});
  std::ostringstream os;
  os << "one missing edge from T=0, B=" << kRecurrenceBound << " n=4..8, " << st.runs
     << " runs, Covered from round " << kLongSuffix << " in " << st.runs - st.starved
     << ", measured bound " << st.max_bound << ", sentinels established in "
     << st.runs - not_established << " (latest at " << latest << "), " << st.sim_secs
     << " s (budget " << kMissingBudgetSeconds << " s)" << st.example;
  report(3, st.starved == 0 && not_established == 0 && st.sim_secs < kMissingBudgetSeconds,
         os.str());
}

void criterion_pair() {
  std::size_t runs = 0;
  std::size_t starved = 0;
  rs::Round max_bound = 0;
  std::string example;
  const char* names[3] = {"static", "recurrent", "eventual_missing"};
  for (int cls = 0; cls < 3; ++cls) {
    for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
      rs::EvolvingRing ring = rs::static_ring(3);
      if (cls == 1) ring = rs::recurrent_random(3, kPresence, kRecurrenceBound, seed);
      if (cls == 2) {
        ring = rs::eventual_missing(3, static_cast<rs::EdgeIndex>(seed % 3), 0, kPresence,
                                    kRecurrenceBound, seed);
      }
      const auto trace =
          simulate(ring, rs::fuzz_initial(3, {0, 1}, seed), kPairHorizon, rs::Algorithm::Pef2);
      const auto rep = rs::coverage(trace, kPairSuffix, kPairHorizon - kPairSuffix);
      ++runs;
      max_bound = std::max(max_bound, rep.bound);
      const std::string where = std::string(names[cls]) + " seed=" + std::to_string(seed);
      if (!rep.covered) {
        ++starved;
        if (example.empty()) example = " first failure " + where + " " + rep.verdict();
      }
      tally.add(trace, "pef2 " + where);
    }
  }
  samples.push_back({"pef2 n=3 recurrent seed=5", [] {
                       return simulate(rs::recurrent_random(3, kPresence, kRecurrenceBound, 5),
                                       rs::fuzz_initial(3, {0, 1}, 5), kPairHorizon,
                                       rs::Algorithm::Pef2);
                     }});
  std::ostringstream os;
  os << "PEF2 two robots n=3 over static/recurrent/eventual-missing, " << runs
     << " runs, Covered from round " << kPairSuffix << " in " << runs - starved
     << ", measured bound " << max_bound << example;
  report(4, starved == 0, os.str());
}

bool never_visited_node(const rs::Trace& t) {
  const auto rep = rs::coverage(t, 0, t.horizon());
  for (const auto& v : rep.visits) {
    if (v.empty()) return true;
  }
  return false;
}

void criterion_impossibility() {
  std::ostringstream os;
  bool ok = true;

  const auto a = rs::game_search(4, {0, 1}, rs::Algorithm::Pef3);
  bool a_ok = a.verdict == rs::SearchVerdict::ConfinableForever && a.witness.has_value();
  if (a_ok) {
    rs::WitnessAdversary adv(*a.witness);
    const auto trace = rs::run(rs::Footprint(4), a.witness->initial, adv, rs::Algorithm::Pef3,
                               {}, kWitnessReplay);
    a_ok = trace.horizon() == kWitnessReplay && never_visited_node(trace);
    const rs::Witness w = *a.witness;
    samples.push_back({"witness replay ids 0,1 n=4", [w] {
                         rs::WitnessAdversary adv2(w);
                         return rs::run(rs::Footprint(4), w.initial, adv2, rs::Algorithm::Pef3, {},
                                        kWitnessReplay);
                       }});
    os << "(a) " << a.str() << ", replay " << trace.horizon() << " rounds "
       << (a_ok ? "leaves a node unvisited" : "does NOT confine");
  } else {
    os << "(a) " << a.str();
  }
  ok = ok && a_ok;

  bool b_ok = true;
  os << "; (b)";
  for (auto algo : {rs::Algorithm::Pef2, rs::Algorithm::Pef3}) {
    const auto b = rs::game_search(3, {0}, algo);
    b_ok = b_ok && b.verdict == rs::SearchVerdict::ConfinableForever;
    os << ' ' << rs::to_string(algo) << ' ' << rs::to_string(b.verdict);
  }
  ok = ok && b_ok;

  const auto t0 = Clock::now();
  rs::SearchOptions opts;
  opts.budget = kSearchBudget;
  const auto c = rs::game_search(4, {0, 1, 2}, rs::Algorithm::Pef3, opts);
  os << "; (c) " << c.str() << " in " << seconds_since(t0) << " s";
  bool c_ok = c.verdict == rs::SearchVerdict::NotConfinable;
  if (c.verdict == rs::SearchVerdict::Inconclusive) {
    std::size_t covered = 0;
    for (std::uint64_t seed = 0; seed < kGreedySeeds; ++seed) {
      rs::GreedyConfinementAdversary adv(4, rs::Algorithm::Pef3);
      const auto trace = rs::run(rs::Footprint(4), rs::fuzz_initial(4, {0, 1, 2}, seed), adv,
                                 rs::Algorithm::Pef3, {}, kLongHorizon);
      if (rs::coverage(trace, kLongSuffix, kLongHorizon - kLongSuffix).covered) ++covered;
    }
    os << ", greedy adversary: " << covered << "/" << kGreedySeeds << " Covered";
    c_ok = covered == kGreedySeeds;
  }
  ok = ok && c_ok;
  report(5, ok, os.str());
}

void criterion_words() {
  std::size_t pairs = 0;
  std::size_t bad = 0;
  std::size_t disagree = 0;
  std::size_t longest = 0;
  double secs = 0;
  double oracle_secs = 0;
  for (rs::RobotId a = 0; a < 64; ++a) {
    const rs::BitWord u = rs::transform_identifier(a);
    for (rs::RobotId b = 0; b < 64; ++b) {
      if (a == b) continue;
      const rs::BitWord v = rs::transform_identifier(b);
      const std::size_t bound = u.size() + v.size();
      const rs::BitWord words[2] = {v, v.complement()};
      ++pairs;
      for (const rs::BitWord& w : words) {
        auto t0 = Clock::now();
        const auto cf = rs::max_common_factor_len(u, w, bound);
        secs += seconds_since(t0);
        t0 = Clock::now();
        const std::size_t oracle = rs::test::lcf_by_sets(u, w, bound);
        oracle_secs += seconds_since(t0);
        if (cf.reached_bound || cf.length >= bound) ++bad;
        if (cf.length != oracle) ++disagree;
        longest = std::max(longest, cf.length);
      }
    }
  }
  std::ostringstream os;
  os << pairs << " ordered id pairs in 0..63, " << 2 * pairs - bad << " of " << 2 * pairs
     << " common-factor checks below |u|+|v| (longest " << longest << "), " << disagree
     << " disagreements with the factor-set oracle, " << secs << " s (budget "
     << kWordsBudgetSeconds << " s, oracle " << oracle_secs << " s)";
  report(6, bad == 0 && disagree == 0 && secs < kWordsBudgetSeconds, os.str());
}

void criterion_divergence() {
  const rs::Chirality chir[2] = {rs::Chirality::RightIsClockwise,
                                 rs::Chirality::RightIsCounterClockwise};
  std::size_t checks = 0;
  std::size_t bad = 0;
  std::uint64_t worst = 0;
  std::string example;
  for (rs::RobotId a = 0; a < 32; ++a) {
    for (rs::RobotId b = 0; b < 32; ++b) {
      if (a == b) continue;
      const auto la = static_cast<std::int64_t>(rs::transformed_length(a));
      const auto lb = static_cast<std::int64_t>(rs::transformed_length(b));
      const auto cap = static_cast<std::uint64_t>(2 * la * lb);
      for (std::int64_t ia = 1; ia <= la; ++ia) {
        for (std::int64_t ib = 1; ib <= lb; ++ib) {
          for (auto ca : chir) {
            for (auto cb : chir) {
              ++checks;
              const auto d = rs::divergence_rounds(a, ia, ca, b, ib, cb, cap);
              if (!d || *d > cap) {
                ++bad;
                if (example.empty()) {
                  example = " first failure ids " + std::to_string(a) + "," + std::to_string(b);
                }
              } else {
                worst = std::max(worst, *d);
              }
            }
          }
        }
      }
    }
  }
  std::ostringstream os;
  os << checks << " (pair, start, chirality) cases for ids 0..31, " << checks - bad
     << " diverge within 2*ellA*ellB (slowest " << worst << " calls)" << example;
  report(7, bad == 0, os.str());
}

void criterion_monitors() {
  std::ostringstream os;
  os << tally.traces << " traces from criteria 1-4, " << tally.findings << " findings";
  if (!tally.first.empty()) os << " (first: " << tally.first << ")";
  bool ok = tally.findings == 0 && tally.traces > 0;

  struct Mutant {
    const char* name;
    rs::ComputeOptions opts;
  };
  std::vector<Mutant> mutants(3);
  mutants[0].name = "frozen_hmpea";
  mutants[0].opts.mutation = rs::Mutation::FrozenHmpea;
  mutants[1].name = "skip_update";
  mutants[1].opts.mutation = rs::Mutation::SkipUpdate;
  mutants[2].name = "literal_index";
  mutants[2].opts.index_rule = rs::IndexRule::Literal;
  os << "; mutation suite:";
  for (const Mutant& m : mutants) {
    std::size_t fired = 0;
    std::size_t runs = 0;
    std::string monitors;
    for (std::size_t n = 4; n <= 8; ++n) {
      for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const auto trace = simulate(rs::recurrent_random(n, kPresence, kRecurrenceBound, seed),
                                    rs::fuzz_initial(n, {0, 1, 2}, seed), 2000,
                                    rs::Algorithm::Pef3, m.opts);
        ++runs;
        const auto f = rs::monitor_lemmas(trace);
        if (!f.empty()) {
          ++fired;
          if (monitors.find(f[0].monitor) == std::string::npos) {
            monitors += (monitors.empty() ? "" : ",") + f[0].monitor;
          }
        }
      }
    }
    os << ' ' << m.name << " fired in " << fired << "/" << runs << " [" << monitors << "]";
    ok = ok && fired >= 1;
  }
  report(8, ok, os.str());
}

void criterion_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::path(RINGSWEEP_SCRATCH_DIR) / "acceptance";
  fs::create_directories(dir);
  std::size_t same = 0;
  std::string example;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const fs::path a = dir / ("run" + std::to_string(k) + "a.jsonl");
    const fs::path b = dir / ("run" + std::to_string(k) + "b.jsonl");
    rs::save_trace(a.string(), samples[k].make());
    rs::save_trace(b.string(), samples[k].make());
    const auto slurp = [](const fs::path& p) {
      std::FILE* f = std::fopen(p.string().c_str(), "rb");
      std::string s;
      if (!f) return s;
      char buf[65536];
      std::size_t got;
      while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) s.append(buf, got);
      std::fclose(f);
      return s;
    };
    const std::string ta = slurp(a);
    if (!ta.empty() && ta == slurp(b)) {
      ++same;
    } else if (example.empty()) {
      example = " first mismatch: " + samples[k].label;
    }
  }
  std::ostringstream os;
  os << same << "/" << samples.size() << " sampled acceptance runs byte-identical on re-run"
     << example;
  report(9, same == samples.size() && !samples.empty(), os.str());
}

}  // namespace

// Usage: ringsweep_acceptance [--only N[,N...]]. Criteria 8 and 9 consume the
// traces of criteria 1 to 5, so selecting them runs those as well.
int main(int argc, char** argv) {
  std::vector<bool> want(10, true);
  if (argc == 3 && std::string(argv[1]) == "--only") {
    std::fill(want.begin(), want.end(), false);
    std::istringstream ids(argv[2]);
    std::string id;
    while (std::getline(ids, id, ',')) {
      const int k = std::atoi(id.c_str());
      if (k < 1 || k > 9) {
        std::cerr << "unknown criterion " << id << '\n';
        return 2;
      }
      want[static_cast<std::size_t>(k)] = true;
    }
    if (want[8] || want[9]) std::fill(want.begin() + 1, want.begin() + 6, true);
  } else if (argc != 1) {
    std::cerr << "usage: ringsweep_acceptance [--only N[,N...]]\n";
    return 2;
  }
  const std::function<void()> criteria[10] = {
      nullptr,
      criterion_static,
      criterion_recurrent,
      criterion_missing,
      criterion_pair,
      criterion_impossibility,
      criterion_words,
      criterion_divergence,
      criterion_monitors,
      criterion_determinism,
  };
  const auto t0 = Clock::now();
  for (std::size_t k = 1; k <= 9; ++k) {
    if (want[k]) criteria[k]();
  }
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << " ("
            << seconds_since(t0) << " s)" << std::endl;
  return failures == 0 ? 0 : 1;
}
