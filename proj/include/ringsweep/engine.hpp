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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ringsweep/ring_model.hpp"
#include "ringsweep/robot.hpp"

namespace ringsweep {

struct Configuration {
  Round round = 0;
  std::vector<RobotState> robots;

  /// Checks distinct ids and in-range positions.
  void validate(const Footprint& f) const;
  std::uint32_t robots_at(NodeIndex v) const;
  bool operator==(const Configuration&) const = default;
};

struct RobotRecord {
  NodeIndex position_before = 0;
  LookSnapshot snapshot;
  RobotState state;  // after Compute, before Move
  bool moved = false;
  NodeIndex position_after = 0;

  RobotId id() const { return state.id; }
  GlobalDir gdir() const { return global_direction(state); }
  bool edge_activated() const { return snapshot.exists_adjacent(); }
  bool operator==(const RobotRecord&) const = default;
};

struct RoundRecord {
  Round t = 0;
  EdgeSet edges;
  std::vector<RobotRecord> robots;
  bool operator==(const RoundRecord&) const = default;
};

/// Everything needed to interpret and replay a trace.
struct TraceHeader {
  std::size_t n = 0;
  Algorithm algo = Algorithm::Pef3;
  ComputeOptions options;
  std::uint64_t seed = 0;
  std::string schedule;
  std::string adversary = "none";
  std::optional<MissingEdge> missing_edge;
  std::vector<RobotState> initial;
  /// Effective scenario as ordered key/value pairs.
  std::vector<std::pair<std::string, std::string>> scenario;
};

struct Trace {
  TraceHeader header;
  std::vector<RoundRecord> rounds;

  std::size_t horizon() const { return rounds.size(); }
  Configuration initial_configuration() const;
  Configuration final_configuration() const;
};

/// Supplies the present edges of each round. Reactive sources look at the
/// configuration at the start of the round.
class EdgeSource {
 public:
  virtual ~EdgeSource() = default;
  virtual EdgeSet choose(const Configuration& config, Round t) = 0;
  /// A reactive source may end the episode early.
  virtual bool exhausted() const { return false; }
  virtual std::string describe() const = 0;
  virtual std::vector<MissingEdge> eventual_missing() const { return {}; }
};

class ScheduleSource final : public EdgeSource {
 public:
  explicit ScheduleSource(EvolvingRing ring) : ring_(std::move(ring)) {}
  EdgeSet choose(const Configuration&, Round t) override {
    return ring_.edges_at(t);
  }
  std::string describe() const override { return ring_.describe(); }
  std::vector<MissingEdge> eventual_missing() const override {
    return ring_.eventual_missing();
  }

 private:
  EvolvingRing ring_;
};

LookSnapshot look(const Footprint& f, const Configuration& config,
                  std::size_t robot, EdgeSet edges);

/// One synchronous round: all Looks, then all Computes, then all Moves.
RoundRecord step_record(const Footprint& f, const Configuration& config,
                        EdgeSet edges, Algorithm algo,
                        const ComputeOptions& opts = {});

Configuration step(const Footprint& f, const Configuration& config,
                   EdgeSet edges, Algorithm algo,
                   const ComputeOptions& opts = {});

/// Configuration reached after the given round.
Configuration after(const RoundRecord& r);

/// Runs up to `rounds` rounds. `header` is copied into the trace with its
/// initial configuration and missing edge filled in.
Trace run(const Footprint& f, const Configuration& initial, EdgeSource& source,
          Algorithm algo, const ComputeOptions& opts, Round rounds,
          TraceHeader header = {});

/// Arbitrary initial configuration: positions (stacking allowed), dir,
/// chirality, corrupt read index, nrpea in [0, 2k] and hmpea all drawn from
/// a seeded generator.
Configuration fuzz_initial(std::size_t n, const std::vector<RobotId>& ids,
                           std::uint64_t seed);

}  // namespace ringsweep
