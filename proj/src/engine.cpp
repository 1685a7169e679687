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

#include "ringsweep/engine.hpp"

#include <algorithm>
#include <set>

#include "ringsweep/rng.hpp"

namespace ringsweep {

void Configuration::validate(const Footprint& f) const {
  std::set<RobotId> seen;
  for (const RobotState& r : robots) {
    if (!seen.insert(r.id).second) {
      throw ValidationError("duplicate robot id " + std::to_string(r.id),
                            {"robots"});
    }
    if (r.position >= f.size()) {
      throw ValidationError("robot " + std::to_string(r.id) + " position " +
                                std::to_string(r.position) + " outside ring",
                            {"pos"});
    }
    if (r.transformed_id != transform_identifier(r.id)) {
      throw ValidationError("robot " + std::to_string(r.id) +
                                " has a transformed id that does not match",
                            {"id"});
    }
  }
  if (robots.empty()) throw ValidationError("no robots", {"robots"});
}

std::uint32_t Configuration::robots_at(NodeIndex v) const {
  return static_cast<std::uint32_t>(std::count_if(
      robots.begin(), robots.end(),
      [v](const RobotState& r) { return r.position == v; }));
}

Configuration Trace::initial_configuration() const {
  return Configuration{0, header.initial};
}

Configuration Trace::final_configuration() const {
  if (rounds.empty()) return initial_configuration();
  return after(rounds.back());
}

LookSnapshot look(const Footprint& f, const Configuration& config,
                  std::size_t robot, EdgeSet edges) {
  const RobotState& r = config.robots[robot];
  LookSnapshot s;
  s.robots_here = config.robots_at(r.position);
  s.edge_left = edges.contains(
      f.edge_towards(r.position, to_global(LocalDir::Left, r.chirality)));
  s.edge_right = edges.contains(
      f.edge_towards(r.position, to_global(LocalDir::Right, r.chirality)));
  return s;
}

RoundRecord step_record(const Footprint& f, const Configuration& config,
                        EdgeSet edges, Algorithm algo,
                        const ComputeOptions& opts) {
  RoundRecord rec;
  rec.t = config.round;
  rec.edges = edges & f.all_edges();
  rec.robots.resize(config.robots.size());
  for (std::size_t k = 0; k < config.robots.size(); ++k) {
    rec.robots[k].position_before = config.robots[k].position;
    rec.robots[k].snapshot = look(f, config, k, rec.edges);
  }
  for (std::size_t k = 0; k < config.robots.size(); ++k) {
    rec.robots[k].state = compute(algo, config.robots[k], rec.robots[k].snapshot,
                                  opts);
  }
  for (RobotRecord& r : rec.robots) {
    const GlobalDir g = r.gdir();
    r.moved = rec.edges.contains(f.edge_towards(r.position_before, g));
    r.position_after = r.moved ? f.neighbour(r.position_before, g)
                               : r.position_before;
  }
  return rec;
}

Configuration after(const RoundRecord& r) {
  Configuration c;
  c.round = r.t + 1;
  c.robots.reserve(r.robots.size());
  for (const RobotRecord& rr : r.robots) {
    RobotState s = rr.state;
    s.position = rr.position_after;
    c.robots.push_back(s);
  }
  return c;
}

Configuration step(const Footprint& f, const Configuration& config,
                   EdgeSet edges, Algorithm algo, const ComputeOptions& opts) {
  return after(step_record(f, config, edges, algo, opts));
}

Trace run(const Footprint& f, const Configuration& initial, EdgeSource& source,
          Algorithm algo, const ComputeOptions& opts, Round rounds,
          TraceHeader header) {
  initial.validate(f);
  Trace trace;
  trace.header = std::move(header);
  trace.header.n = f.size();
  trace.header.algo = algo;
  trace.header.options = opts;
  trace.header.initial = initial.robots;
  if (trace.header.schedule.empty()) trace.header.schedule = source.describe();
  const auto missing = source.eventual_missing();
  if (missing.size() == 1) trace.header.missing_edge = missing.front();
  trace.rounds.reserve(static_cast<std::size_t>(rounds));

  Configuration config = initial;
  config.round = 0;
  for (Round t = 0; t < rounds; ++t) {
    const EdgeSet edges = source.choose(config, t);
    if (source.exhausted()) break;
    trace.rounds.push_back(step_record(f, config, edges, algo, opts));
    config = after(trace.rounds.back());
  }
  return trace;
}

Configuration fuzz_initial(std::size_t n, const std::vector<RobotId>& ids,
                           std::uint64_t seed) {
  Footprint f(n);
  Rng rng(seed);
  Configuration c;
  const auto k = static_cast<std::int64_t>(ids.size());
  for (RobotId id : ids) {
    const auto ell = static_cast<std::int64_t>(transformed_length(id));
    const auto pos = static_cast<NodeIndex>(rng.below(f.size()));
    const LocalDir dir = rng.coin() ? LocalDir::Right : LocalDir::Left;
    const Chirality chir = rng.coin() ? Chirality::RightIsClockwise
                                      : Chirality::RightIsCounterClockwise;
    const std::int64_t i = rng.between(-ell, 3 * ell);
    const auto nrpea = static_cast<std::uint32_t>(rng.between(0, 2 * k));
    const bool hmpea = rng.coin();
    c.robots.push_back(make_robot(id, pos, dir, chir, i, nrpea, hmpea));
  }
  c.validate(f);
  return c;
}

}  // namespace ringsweep
