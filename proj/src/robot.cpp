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

#include "ringsweep/robot.hpp"

#include <stdexcept>

namespace ringsweep {

std::string to_string(IndexRule r) {
  return r == IndexRule::RoundRobin ? "round_robin" : "literal";
}

std::string to_string(Mutation m) {
  switch (m) {
    case Mutation::None: return "none";
    case Mutation::FrozenHmpea: return "frozen_hmpea";
    case Mutation::SkipUpdate: return "skip_update";
  }
  return "?";
}

IndexRule parse_index_rule(const std::string& s) {
  if (s == "round_robin") return IndexRule::RoundRobin;
  if (s == "literal") return IndexRule::Literal;
  throw ValidationError("bad index rule '" + s +
                            "' (expected round_robin or literal)",
                        {"index_rule"});
}

Mutation parse_mutation(const std::string& s) {
  if (s == "none") return Mutation::None;
  if (s == "frozen_hmpea") return Mutation::FrozenHmpea;
  if (s == "skip_update") return Mutation::SkipUpdate;
  throw ValidationError("bad mutation '" + s +
                            "' (expected none, frozen_hmpea or skip_update)",
                        {"mutation"});
}

RobotState make_robot(RobotId id, NodeIndex position, LocalDir dir,
                      Chirality chirality, std::int64_t i, std::uint32_t nrpea,
                      bool hmpea) {
  RobotState s;
  s.id = id;
  s.transformed_id = transform_identifier(id);
  s.i = i;
  s.dir = dir;
  s.chirality = chirality;
  s.position = position;
  s.nrpea = nrpea;
  s.hmpea = hmpea;
  return s;
}

bool we_are_stuck_same_direction(const RobotState& s, const LookSnapshot& snap) {
  return snap.robots_here > 1 && snap.robots_here == s.nrpea &&
         !s.exists_current_dir(snap) && s.exists_opposite_dir(snap) && !s.hmpea;
}

bool i_was_stuck_and_more_robots(const RobotState& s, const LookSnapshot& snap) {
  return snap.robots_here > s.nrpea && !s.hmpea && snap.exists_adjacent();
}

bool i_am_stuck_alone(const RobotState& s, const LookSnapshot& snap) {
  return snap.robots_here == 1 && !s.exists_current_dir(snap) &&
         s.exists_opposite_dir(snap);
}

std::int64_t normalize_index(std::int64_t i, std::size_t ell) {
  const auto l = static_cast<std::int64_t>(ell);
  return ((i - 1) % l + l) % l + 1;
}

std::int64_t advance_index(std::int64_t i, std::size_t ell, IndexRule rule) {
  const auto l = static_cast<std::int64_t>(ell);
  return rule == IndexRule::RoundRobin ? i % l + 1 : (i + 1) % l + 1;
}

RobotState give_direction(RobotState s, IndexRule rule) {
  s.i = advance_index(normalize_index(s.i, s.ell()), s.ell(), rule);
  s.dir = s.transformed_id.at(static_cast<std::size_t>(s.i)) ? LocalDir::Right
                                                              : LocalDir::Left;
  return s;
}

RobotState opposite_direction(RobotState s) {
  s.dir = opposite(s.dir);
  return s;
}

RobotState update(RobotState s, const LookSnapshot& snap) {
  if (snap.exists_adjacent()) {
    s.nrpea = snap.robots_here;
    s.hmpea = s.exists_current_dir(snap);
  }
  return s;
}

namespace {

RobotState finish(RobotState s, const LookSnapshot& snap,
                  const ComputeOptions& opts) {
  switch (opts.mutation) {
    case Mutation::None:
      return update(s, snap);
    case Mutation::FrozenHmpea: {
      const bool kept = s.hmpea;
      s = update(s, snap);
      s.hmpea = kept;
      return s;
    }
    case Mutation::SkipUpdate:
      return s;
  }
  return s;
}

}  // namespace

RobotState compute_pef3(const RobotState& s, const LookSnapshot& snap,
                        const ComputeOptions& opts) {
  RobotState out = s;
  const bool stuck = we_are_stuck_same_direction(out, snap);
  if (stuck) out = give_direction(out, opts.index_rule);
  const bool more = i_was_stuck_and_more_robots(out, snap);
  if (stuck && more) {
    throw std::logic_error("both direction guards hold for robot " +
                           std::to_string(s.id));
  }
  if (more) out = opposite_direction(out);
  return finish(out, snap, opts);
}

RobotState compute_pef2(const RobotState& s, const LookSnapshot& snap,
                        const ComputeOptions& opts) {
  RobotState out = s;
  const bool stuck = we_are_stuck_same_direction(out, snap);
  if (stuck) out = give_direction(out, opts.index_rule);
  const bool alone = i_am_stuck_alone(out, snap);
  if (stuck && alone) {
    throw std::logic_error("both direction guards hold for robot " +
                           std::to_string(s.id));
  }
  if (alone) out = opposite_direction(out);
  return finish(out, snap, opts);
}

RobotState compute(Algorithm algo, const RobotState& s,
                   const LookSnapshot& snap, const ComputeOptions& opts) {
  return algo == Algorithm::Pef3 ? compute_pef3(s, snap, opts)
                                 : compute_pef2(s, snap, opts);
}

}  // namespace ringsweep
