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
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ringsweep/adversary.hpp"
#include "ringsweep/engine.hpp"
#include "ringsweep/ring_model.hpp"

namespace ringsweep {

/// A robot description; every field but the id is optional and drawn from
/// the seeded fuzzer when left out.
struct RobotSpec {
  RobotId id = 0;
  std::optional<NodeIndex> pos;
  std::optional<LocalDir> dir;
  std::optional<Chirality> chirality;
  std::optional<std::int64_t> i;
  std::optional<std::uint32_t> nrpea;
  std::optional<bool> hmpea;

  std::string str() const;  // "id=0, pos=1, dir=L"
  static RobotSpec parse(const std::string& text);
};

enum class ScheduleKind : std::uint8_t {
  Static,
  Recurrent,
  EventualMissing,
  RemovalList,
};

std::string to_string(ScheduleKind k);
ScheduleKind parse_schedule_kind(const std::string& s);

struct Scenario {
  std::optional<std::size_t> n;
  Algorithm algo = Algorithm::Pef3;
  std::vector<RobotSpec> robots;
  ScheduleKind schedule = ScheduleKind::Static;
  std::uint64_t seed = 0;
  double p = 0.5;
  Round recurrence_bound = 8;
  EdgeIndex missing_edge = 0;
  Round cutoff = 0;
  EdgeRemovalSpec removals;
  Round rounds = 1000;
  std::string adversary = "none";
  ComputeOptions options;

  /// Applies one `key = value` setting. Later settings win, so flags
  /// applied after a file override it.
  void set(const std::string& key, const std::string& value);
  /// Throws one ValidationError naming every offending key.
  void validate() const;
  /// Effective settings, in a fixed order, for the trace header.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

/// Reads `key = value` lines on top of `base`; `#` starts a comment.
Scenario parse_scenario(std::istream& is, Scenario base = {});
Scenario load_scenario(const std::string& path, Scenario base = {});

EvolvingRing build_ring(const Scenario& s);
Configuration build_initial(const Scenario& s);
std::unique_ptr<EdgeSource> build_source(const Scenario& s);

struct RunOutput {
  Trace trace;
  /// Set when a reactive adversary ends or reports an outcome.
  std::optional<std::string> adversary_outcome;
};

RunOutput run_scenario(const Scenario& s);

}  // namespace ringsweep
