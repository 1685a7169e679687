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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ringsweep/engine.hpp"

namespace ringsweep {

/// Robot positions at every instant 0..H of a trace: instant t < H is the
/// position at the Look of round t, instant H the final one.
class PositionTable {
 public:
  explicit PositionTable(const Trace& trace);
  NodeIndex at(Round instant, std::size_t robot) const {
    return pos_[static_cast<std::size_t>(instant) * k_ + robot];
  }
  Round instants() const { return instants_; }
  std::size_t robots() const { return k_; }

 private:
  std::size_t k_;
  Round instants_;
  std::vector<NodeIndex> pos_;
};

struct Tower {
  std::vector<RobotId> robots;  // sorted
  Round start = 0;
  Round end = 0;  // last instant, inclusive
  bool open = false;  // still standing at the horizon
  bool long_lived = false;
  std::optional<Round> first_activation;
  std::vector<NodeIndex> nodes;  // node at each instant start..end

  std::size_t size() const { return robots.size(); }
  bool covers(Round t) const { return start <= t && t <= end; }
  std::string str() const;
};

/// Every maximal set of at least two co-located robots with its maximal
/// interval. A set co-located over exactly the interval of a larger set is
/// folded into the larger one.
std::vector<Tower> detect_towers(const Trace& trace);

struct CoverageReport {
  Round suffix_start = 0;
  Round window = 0;
  Round horizon = 0;
  std::vector<std::vector<Round>> visits;  // instants, per node
  std::vector<Round> max_gap;              // over the suffix, per node
  bool covered = false;
  Round bound = 0;  // largest gap over all nodes
  std::optional<NodeIndex> starved_node;
  std::optional<Round> starved_since;

  std::string verdict() const;  // "Covered(<=g)" or "Starved(node v since t)"
};

/// Visits are positions at instants 0..H. Over the suffix [s, H] a node's
/// gap is the longest run of instants without a visit plus one, counting the
/// stretches before its first and after its last visit. Covered iff every
/// gap is at most `window`.
CoverageReport coverage(const Trace& trace, Round suffix_start, Round window);

/// One past the robot's first edge-activated round.
std::optional<Round> coherence_round(const Trace& trace, RobotId id);
/// Latest coherence round over all robots; empty if some robot never
/// becomes coherent.
std::optional<Round> coherence_time(const Trace& trace);

struct Finding {
  std::string monitor;
  Round round = 0;
  std::string detail;
};

/// Monitors:
///  bookkeeping_coherence, round_robin_index, movement_legality and
///  shared_direction check every round against the robot rules;
///  tower_direction_agreement, tower_predicate_agreement,
///  triple_tower_formation, no_new_triple_long_lived, no_new_pair_long_lived
///  and ring_visit_between_pair_towers check tower properties from the
///  coherence time on.
std::vector<Finding> monitor_lemmas(const Trace& trace);

void write_findings(std::ostream& os, const std::vector<Finding>& findings);

struct SentinelReport {
  bool applicable = false;
  std::optional<MissingEdge> missing;
  /// First round from which both endpoints of the missing edge always host
  /// a robot pointing at it.
  std::optional<Round> established;
  /// Rounds between consecutive arrivals at an endpoint, after
  /// establishment.
  std::vector<Round> visitor_periods;
  Round max_period = 0;

  std::string str() const;
};

/// Requires a trace whose header declares a missing edge; otherwise the
/// report is marked not applicable.
SentinelReport sentinel_visitor_report(const Trace& trace);

}  // namespace ringsweep
