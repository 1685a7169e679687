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

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ringsweep/adversary.hpp"
#include "ringsweep/analysis.hpp"
#include "ringsweep/scenario.hpp"
#include "ringsweep/trace_io.hpp"
#include "ringsweep/words.hpp"

namespace rs = ringsweep;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kInvalid = 2;
constexpr int kInconclusive = 3;

struct SimulateFlags {
  std::string scenario_file;
  std::map<std::string, std::string> values;
  std::vector<std::string> robot_specs;
  std::string out;
  std::optional<rs::Round> suffix_start;
  std::optional<rs::Round> window;
  unsigned batch = 1;
  bool quiet = false;
};

struct AnalyzeFlags {
  std::string trace;
  std::string findings;
  std::optional<rs::Round> suffix_start;
  std::optional<rs::Round> window;
};

struct SearchFlags {
  std::size_t n = 0;
  std::string robots;
  std::string algo = "pef3";
  std::uint64_t budget = 100'000'000;
  std::string witness = "witness.jsonl";
  std::string index_rule = "round_robin";
  std::string mutation = "none";
};

struct WordsFlags {
  std::vector<rs::RobotId> transform;
  std::vector<rs::RobotId> lcf;
  bool complement = false;
  std::vector<rs::RobotId> divergence;
  std::string chirality = "same";
  std::int64_t ia = 1;
  std::int64_t ib = 1;
  std::optional<std::uint64_t> cap;
  std::optional<rs::RobotId> table;
};

rs::Round default_suffix(rs::Round horizon) {
  return std::max<rs::Round>(1, horizon / 10);
}

std::optional<rs::CoverageReport> summary_coverage(
    const rs::Trace& trace, std::optional<rs::Round> suffix,
    std::optional<rs::Round> window) {
  const rs::Round h = trace.horizon();
  const rs::Round s = suffix.value_or(default_suffix(h));
  if (h < 2 || s >= h) return std::nullopt;
  return rs::coverage(trace, s, window.value_or(h - s));
}

std::string per_seed_path(const std::string& out, std::uint64_t seed) {
  const auto slash = out.find_last_of('/');
  const auto dot = out.find_last_of('.');
  const std::string tag = ".seed" + std::to_string(seed);
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return out + tag;
  }
  return out.substr(0, dot) + tag + out.substr(dot);
}

struct SeedResult {
  std::uint64_t seed = 0;
  std::string summary;
  bool covered = false;
  bool error = false;
};

SeedResult simulate_one(const rs::Scenario& s, const SimulateFlags& flags,
                        const std::string& out_path) {
  SeedResult r;
  r.seed = s.seed;
  std::ostringstream os;
  try {
    const rs::RunOutput run = rs::run_scenario(s);
    const rs::Trace& trace = run.trace;
    if (!out_path.empty()) rs::save_trace(out_path, trace);
    const auto towers = rs::detect_towers(trace);
    const auto long_lived = std::count_if(
        towers.begin(), towers.end(), [](const rs::Tower& t) { return t.long_lived; });
    os << "seed " << s.seed << ": rounds " << trace.horizon()
       << ", schedule " << trace.header.schedule << '\n';
    const auto cov = summary_coverage(trace, flags.suffix_start, flags.window);
    if (cov) {
      os << "  coverage from " << cov->suffix_start << " (W=" << cov->window
         << "): " << cov->verdict() << '\n';
      r.covered = cov->covered;
    } else {
      os << "  coverage: horizon too short\n";
    }
    os << "  towers: " << towers.size() << " (" << long_lived
       << " long-lived)\n";
    const auto tmax = rs::coherence_time(trace);
    os << "  coherent from: "
       << (tmax ? std::to_string(*tmax) : std::string("not yet")) << '\n';
    if (run.adversary_outcome) os << "  adversary: " << *run.adversary_outcome << '\n';
    if (!out_path.empty()) os << "  trace: " << out_path << '\n';
  } catch (const rs::ValidationError& e) {
    os << "seed " << s.seed << ": error: " << e.what() << '\n';
    r.error = true;
  }
  r.summary = os.str();
  return r;
}

int cmd_simulate(const SimulateFlags& flags) {
  rs::Scenario base;
  if (const char* env = std::getenv("RINGSWEEP_SEED")) base.set("seed", env);
  rs::Scenario s = flags.scenario_file.empty()
                       ? base
                       : rs::load_scenario(flags.scenario_file, base);
  for (const auto& [k, v] : flags.values) {
    if (k != "robot") s.set(k, v);
  }
  for (const std::string& spec : flags.robot_specs) s.set("robot", spec);
  s.validate();

  if (flags.batch <= 1) {
    const SeedResult r = simulate_one(s, flags, flags.out);
    std::cout << r.summary;
    if (r.error) return kInvalid;
    return r.covered ? kOk : kFailure;
  }

  std::vector<SeedResult> results(flags.batch);
  std::vector<std::thread> workers;
  for (unsigned k = 0; k < flags.batch; ++k) {
    workers.emplace_back([&, k] {
      rs::Scenario mine = s;
      mine.seed = s.seed + k;
      const std::string path =
          flags.out.empty() ? std::string() : per_seed_path(flags.out, mine.seed);
      results[k] = simulate_one(mine, flags, path);
    });
  }
  for (std::thread& w : workers) w.join();
  std::sort(results.begin(), results.end(),
            [](const SeedResult& a, const SeedResult& b) { return a.seed < b.seed; });
  std::size_t covered = 0;
  std::size_t errors = 0;
  for (const SeedResult& r : results) {
    if (!flags.quiet) std::cout << r.summary;
    covered += r.covered ? 1 : 0;
    errors += r.error ? 1 : 0;
  }
  std::cout << "batch: " << results.size() << " seeds, " << covered
            << " covered, " << results.size() - covered - errors
            << " not covered, " << errors << " errors\n";
  if (errors > 0) return kInvalid;
  return covered == results.size() ? kOk : kFailure;
}

int cmd_analyze(const AnalyzeFlags& flags) {
  const rs::Trace trace = rs::load_trace(flags.trace);
  const auto& h = trace.header;
  std::cout << "trace: " << flags.trace << '\n'
            << "n " << h.n << ", algo " << rs::to_string(h.algo) << ", robots "
            << h.initial.size() << ", rounds " << trace.horizon() << '\n'
            << "schedule: " << h.schedule << ", adversary: " << h.adversary
            << '\n';

  const auto cov = summary_coverage(trace, flags.suffix_start, flags.window);
  if (cov) {
    std::cout << "coverage from " << cov->suffix_start << " (W=" << cov->window
              << "): " << cov->verdict() << '\n';
  } else {
    std::cout << "coverage: horizon too short\n";
  }

  const auto towers = rs::detect_towers(trace);
  std::cout << "towers: " << towers.size() << '\n';
  for (const rs::Tower& t : towers) std::cout << "  " << t.str() << '\n';

  for (const rs::RobotState& r : h.initial) {
    const auto c = rs::coherence_round(trace, r.id);
    std::cout << "robot " << r.id << " coherent from "
              << (c ? std::to_string(*c) : std::string("not yet")) << '\n';
  }

  if (h.missing_edge) {
    std::cout << "sentinels: " << rs::sentinel_visitor_report(trace).str() << '\n';
  }

  const auto findings = rs::monitor_lemmas(trace);
  std::cout << "findings: " << findings.size() << '\n';
  for (const rs::Finding& f : findings) {
    std::cout << "  [" << f.monitor << "] round " << f.round << ": " << f.detail
              << '\n';
  }
  if (!flags.findings.empty()) {
    std::ofstream os(flags.findings);
    if (!os) {
      throw rs::ValidationError("cannot write " + flags.findings, {"findings"});
    }
    rs::write_findings(os, findings);
  }
  return findings.empty() ? kOk : kFailure;
}

std::vector<rs::RobotId> parse_ids(const std::string& text) {
  rs::Scenario probe;
  probe.set("robots", text);
  std::vector<rs::RobotId> ids;
  for (const rs::RobotSpec& r : probe.robots) ids.push_back(r.id);
  if (ids.empty()) throw rs::ValidationError("robots: required", {"robots"});
  return ids;
}

int cmd_search(const SearchFlags& flags) {
  const auto ids = parse_ids(flags.robots);
  rs::SearchOptions opts;
  opts.budget = flags.budget;
  opts.compute.index_rule = rs::parse_index_rule(flags.index_rule);
  opts.compute.mutation = rs::parse_mutation(flags.mutation);
  const rs::SearchResult r =
      rs::game_search(flags.n, ids, rs::parse_algorithm(flags.algo), opts);
  std::cout << r.str() << '\n';
  if (r.witness) {
    if (!flags.witness.empty()) {
      r.witness->save(flags.witness);
      std::cout << "witness: " << flags.witness << " ("
                << r.witness->steps.size() << " steps)\n";
    }
  }
  return r.verdict == rs::SearchVerdict::Inconclusive ? kInconclusive : kOk;
}

rs::Chirality chirality_b(const std::string& mode) {
  if (mode == "same") return rs::Chirality::RightIsClockwise;
  if (mode == "opposite") return rs::Chirality::RightIsCounterClockwise;
  throw rs::ValidationError("chirality: expected same or opposite", {"chirality"});
}

std::uint64_t divergence_cap(rs::RobotId a, rs::RobotId b) {
  return 2 * rs::transformed_length(a) * rs::transformed_length(b);
}

int cmd_words(const WordsFlags& flags) {
  bool ok = true;
  for (rs::RobotId id : flags.transform) {
    std::cout << rs::transform_identifier(id).str() << '\n';
  }
  if (!flags.lcf.empty()) {
    const rs::BitWord u = rs::transform_identifier(flags.lcf[0]);
    rs::BitWord v = rs::transform_identifier(flags.lcf[1]);
    if (flags.complement) v = v.complement();
    const std::size_t bound = u.size() + v.size();
    const rs::CommonFactor cf = rs::max_common_factor_len(u, v, bound);
    std::cout << "u\tv\tbound\tlength\n"
              << u.str() << '\t' << v.str() << '\t' << bound << '\t'
              << (cf.reached_bound ? ">=" : "") << cf.length << '\n';
    ok = ok && !cf.reached_bound;
  }
  if (!flags.divergence.empty()) {
    const rs::RobotId a = flags.divergence[0];
    const rs::RobotId b = flags.divergence[1];
    const std::uint64_t cap = flags.cap.value_or(divergence_cap(a, b));
    const auto d = rs::divergence_rounds(a, flags.ia, rs::Chirality::RightIsClockwise,
                                         b, flags.ib, chirality_b(flags.chirality),
                                         cap);
    std::cout << "idA\tidB\tiA\tiB\tchirality\tcap\trounds\n"
              << a << '\t' << b << '\t' << flags.ia << '\t' << flags.ib << '\t'
              << flags.chirality << '\t' << cap << '\t'
              << (d ? std::to_string(*d) : std::string("none")) << '\n';
    ok = ok && d.has_value();
  }
  if (flags.table) {
    const rs::RobotId m = *flags.table;
    std::cout << "# transformed\nid\tlength\tword\n";
    for (rs::RobotId id = 0; id < m; ++id) {
      const rs::BitWord w = rs::transform_identifier(id);
      std::cout << id << '\t' << w.size() << '\t' << w.str() << '\n';
    }
    for (int comp = 0; comp < 2; ++comp) {
      std::cout << (comp ? "# common factor with complement\n"
                         : "# common factor\n")
                << "u\\v";
      for (rs::RobotId b = 0; b < m; ++b) std::cout << '\t' << b;
      std::cout << '\n';
      for (rs::RobotId a = 0; a < m; ++a) {
        std::cout << a;
        const rs::BitWord u = rs::transform_identifier(a);
        for (rs::RobotId b = 0; b < m; ++b) {
          if (a == b && !comp) {
            std::cout << "\t-";
            continue;
          }
          rs::BitWord v = rs::transform_identifier(b);
          if (comp) v = v.complement();
          const std::size_t bound = u.size() + v.size();
          const rs::CommonFactor cf = rs::max_common_factor_len(u, v, bound);
          std::cout << '\t' << (cf.reached_bound ? "inf" : std::to_string(cf.length));
        }
        std::cout << '\n';
      }
    }
    std::cout << "# divergence, worst case over start indices and chiralities\n"
              << "a\\b";
    for (rs::RobotId b = 0; b < m; ++b) std::cout << '\t' << b;
    std::cout << '\n';
    const rs::Chirality chir[2] = {rs::Chirality::RightIsClockwise,
                                   rs::Chirality::RightIsCounterClockwise};
    for (rs::RobotId a = 0; a < m; ++a) {
      std::cout << a;
      for (rs::RobotId b = 0; b < m; ++b) {
        if (a == b) {
          std::cout << "\t-";
          continue;
        }
        const auto la = static_cast<std::int64_t>(rs::transformed_length(a));
        const auto lb = static_cast<std::int64_t>(rs::transformed_length(b));
        std::uint64_t worst = 0;
        bool finite = true;
        for (std::int64_t ia = 1; ia <= la && finite; ++ia) {
          for (std::int64_t ib = 1; ib <= lb && finite; ++ib) {
            for (rs::Chirality ca : chir) {
              for (rs::Chirality cb : chir) {
                const auto d = rs::divergence_rounds(a, ia, ca, b, ib, cb,
                                                     divergence_cap(a, b));
                if (!d) finite = false;
                else worst = std::max(worst, *d);
              }
            }
          }
        }
        std::cout << '\t' << (finite ? std::to_string(worst) : std::string("none"));
        ok = ok && finite;
      }
      std::cout << '\n';
    }
  }
  return ok ? kOk : kFailure;
}

void add_scenario_option(CLI::App* app, SimulateFlags& f, const std::string& flag,
                         const std::string& key, const std::string& help) {
  app->add_option_function<std::string>(
      flag, [&f, key](const std::string& v) { f.values[key] = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perpetual exploration of dynamic rings by identified robots"};
  app.require_subcommand(1);

  SimulateFlags sim;
  CLI::App* simulate = app.add_subcommand("simulate", "Run one scenario and write its trace");
  simulate->add_option("--scenario", sim.scenario_file, "Scenario file of key = value lines");
  add_scenario_option(simulate, sim, "--n", "n", "Ring size");
  add_scenario_option(simulate, sim, "--algo", "algo", "pef3 or pef2");
  add_scenario_option(simulate, sim, "--robots", "robots", "Comma separated robot ids");
  simulate->add_option("--robot", sim.robot_specs,
                       "Robot fields, e.g. \"id=0, pos=1, dir=L\" (repeatable)");
  add_scenario_option(simulate, sim, "--schedule", "schedule",
                      "static, recurrent, eventual_missing or removal_list");
  add_scenario_option(simulate, sim, "--seed", "seed", "Seed (default $RINGSWEEP_SEED or 0)");
  add_scenario_option(simulate, sim, "--p", "p", "Per-round presence probability");
  add_scenario_option(simulate, sim, "--recurrence-bound", "recurrence_bound",
                      "Longest allowed absence of a recurrent edge");
  add_scenario_option(simulate, sim, "--missing-edge", "missing_edge", "Eventually missing edge");
  add_scenario_option(simulate, sim, "--cutoff", "cutoff", "Round the missing edge disappears");
  add_scenario_option(simulate, sim, "--removals", "removals",
                      "Removal list \"e:[s,e];e:[s,inf]\"");
  add_scenario_option(simulate, sim, "--rounds", "rounds", "Number of rounds");
  add_scenario_option(simulate, sim, "--adversary", "adversary",
                      "none, confinement[:W], greedy[:W] or witness:<path>");
  add_scenario_option(simulate, sim, "--index-rule", "index_rule", "round_robin or literal");
  add_scenario_option(simulate, sim, "--mutation", "mutation",
                      "none, frozen_hmpea or skip_update");
  simulate->add_option("--out", sim.out, "Trace output path");
  simulate->add_option("--suffix-start", sim.suffix_start, "First instant of the coverage suffix");
  simulate->add_option("--window", sim.window, "Coverage window");
  simulate->add_option("--batch", sim.batch, "Run this many consecutive seeds concurrently")
      ->check(CLI::PositiveNumber);
  simulate->add_flag("--quiet", sim.quiet, "Print only the batch summary");

  AnalyzeFlags ana;
  CLI::App* analyze = app.add_subcommand("analyze", "Report towers, coverage and monitor findings");
  analyze->add_option("trace", ana.trace, "Trace file")->required();
  analyze->add_option("--findings", ana.findings, "Write findings as JSON lines");
  analyze->add_option("--suffix-start", ana.suffix_start, "First instant of the coverage suffix");
  analyze->add_option("--window", ana.window, "Coverage window");

  SearchFlags sea;
  CLI::App* search = app.add_subcommand("search", "Decide whether an adversary can confine the robots");
  search->add_option("--n", sea.n, "Ring size (3..6)")->required();
  search->add_option("--robots", sea.robots, "Comma separated robot ids (1..3)")->required();
  search->add_option("--algo", sea.algo, "pef3 or pef2");
  search->add_option("--budget", sea.budget, "State budget");
  search->add_option("--witness", sea.witness, "Witness output path");
  search->add_option("--index-rule", sea.index_rule, "round_robin or literal");
  search->add_option("--mutation", sea.mutation, "none, frozen_hmpea or skip_update");

  WordsFlags wf;
  CLI::App* words = app.add_subcommand("words", "Transformed identifiers and word oracles");
  words->add_option("--transform", wf.transform, "Print transformed ids");
  words->add_option("--lcf", wf.lcf, "Longest common factor of two transformed ids")
      ->expected(2);
  words->add_flag("--complement", wf.complement, "Complement the second word for --lcf");
  words->add_option("--divergence", wf.divergence, "Rounds until two robots diverge")
      ->expected(2);
  words->add_option("--chirality", wf.chirality, "same or opposite");
  words->add_option("--ia", wf.ia, "Start index of the first robot");
  words->add_option("--ib", wf.ib, "Start index of the second robot");
  words->add_option("--cap", wf.cap, "Divergence cap (default 2*ellA*ellB)");
  words->add_option("--table", wf.table, "Print all tables for ids below this value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*simulate) return cmd_simulate(sim);
    if (*analyze) return cmd_analyze(ana);
    if (*search) return cmd_search(sea);
    if (*words) return cmd_words(wf);
  } catch (const rs::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (!e.fields().empty()) {
      std::cerr << "fields:";
      for (const std::string& f : e.fields()) std::cerr << ' ' << f;
      std::cerr << '\n';
    }
    return kInvalid;
  }
  return kInvalid;
}
