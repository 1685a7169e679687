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
#include <string>

#include "ringsweep/types.hpp"
#include "ringsweep/words.hpp"

namespace ringsweep {

/// How GiveDirection advances the read index. RoundRobin visits every index
/// of 1..ell in turn; Literal is i <- ((i + 1) mod ell) + 1, which steps by
/// two.
enum class IndexRule : std::uint8_t { RoundRobin, Literal };

/// Deliberate faults for checking that the monitors notice them.
enum class Mutation : std::uint8_t { None, FrozenHmpea, SkipUpdate };

std::string to_string(IndexRule r);
std::string to_string(Mutation m);
IndexRule parse_index_rule(const std::string& s);
Mutation parse_mutation(const std::string& s);

struct ComputeOptions {
  IndexRule index_rule = IndexRule::RoundRobin;
  Mutation mutation = Mutation::None;
};

/// What a robot sees during Look, in its own frame.
struct LookSnapshot {
  std::uint32_t robots_here = 1;
  bool edge_left = false;
  bool edge_right = false;

  bool exists_adjacent() const { return edge_left || edge_right; }
  bool exists_towards(LocalDir d) const {
    return d == LocalDir::Left ? edge_left : edge_right;
  }
  bool operator==(const LookSnapshot&) const = default;
};

struct RobotState {
  RobotId id = 0;
  BitWord transformed_id;
  std::int64_t i = 1;
  LocalDir dir = LocalDir::Left;
  Chirality chirality = Chirality::RightIsClockwise;
  NodeIndex position = 0;
  std::uint32_t nrpea = 0;
  bool hmpea = false;

  std::size_t ell() const { return transformed_id.size(); }
  bool exists_current_dir(const LookSnapshot& s) const {
    return s.exists_towards(dir);
  }
  bool exists_opposite_dir(const LookSnapshot& s) const {
    return s.exists_towards(opposite(dir));
  }
  bool operator==(const RobotState&) const = default;
};

RobotState make_robot(RobotId id, NodeIndex position, LocalDir dir,
                      Chirality chirality, std::int64_t i = 1,
                      std::uint32_t nrpea = 0, bool hmpea = false);

bool we_are_stuck_same_direction(const RobotState& s, const LookSnapshot& snap);
bool i_was_stuck_and_more_robots(const RobotState& s, const LookSnapshot& snap);
bool i_am_stuck_alone(const RobotState& s, const LookSnapshot& snap);

/// Maps any integer into 1..ell.
std::int64_t normalize_index(std::int64_t i, std::size_t ell);
/// One GiveDirection step of the read index, from an already normalized i.
std::int64_t advance_index(std::int64_t i, std::size_t ell, IndexRule rule);

RobotState give_direction(RobotState s, IndexRule rule = IndexRule::RoundRobin);
RobotState opposite_direction(RobotState s);
RobotState update(RobotState s, const LookSnapshot& snap);

/// Throws std::logic_error if both guards hold at once.
RobotState compute_pef3(const RobotState& s, const LookSnapshot& snap,
                        const ComputeOptions& opts = {});
RobotState compute_pef2(const RobotState& s, const LookSnapshot& snap,
                        const ComputeOptions& opts = {});
RobotState compute(Algorithm algo, const RobotState& s,
                   const LookSnapshot& snap, const ComputeOptions& opts = {});

inline GlobalDir global_direction(const RobotState& s) {
  return to_global(s.dir, s.chirality);
}

}  // namespace ringsweep
