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

#include <gtest/gtest.h>

#include "ringsweep/robot.hpp"
#include "ringsweep/rng.hpp"

namespace rs = ringsweep;
using rs::LocalDir;

namespace {

rs::LookSnapshot snap(std::uint32_t here, bool left, bool right) {
  rs::LookSnapshot s;
  s.robots_here = here;
  s.edge_left = left;
  s.edge_right = right;
  return s;
}

// Robot facing Right, edge ahead blocked, edge behind open.
const rs::LookSnapshot kBlockedAhead2 = snap(2, true, false);

rs::RobotState robot(rs::RobotId id, LocalDir dir = LocalDir::Right,
                     std::int64_t i = 1, std::uint32_t nrpea = 0,
                     bool hmpea = false) {
  return rs::make_robot(id, 0, dir, rs::Chirality::RightIsClockwise, i, nrpea, hmpea);
}

}  // namespace

TEST(Predicates, WeAreStuckSameDirection) {
  EXPECT_TRUE(rs::we_are_stuck_same_direction(robot(0, LocalDir::Right, 1, 2), kBlockedAhead2));
  EXPECT_FALSE(rs::we_are_stuck_same_direction(robot(0, LocalDir::Right, 1, 1), snap(1, true, false)));
  EXPECT_FALSE(rs::we_are_stuck_same_direction(robot(0, LocalDir::Right, 1, 2), snap(3, true, false)));
  EXPECT_FALSE(rs::we_are_stuck_same_direction(robot(0, LocalDir::Right, 1, 2, true), kBlockedAhead2));
  EXPECT_FALSE(rs::we_are_stuck_same_direction(robot(0, LocalDir::Right, 1, 2), snap(2, true, true)));
}

TEST(Predicates, DependOnCurrentDir) {
  const rs::RobotState r = robot(0, LocalDir::Left, 1, 2);
  EXPECT_FALSE(rs::we_are_stuck_same_direction(r, kBlockedAhead2));
  EXPECT_TRUE(rs::we_are_stuck_same_direction(r, snap(2, false, true)));
}

TEST(Predicates, IWasStuckAndMoreRobots) {
  EXPECT_TRUE(rs::i_was_stuck_and_more_robots(robot(0, LocalDir::Right, 1, 1), snap(2, true, false)));
  EXPECT_FALSE(rs::i_was_stuck_and_more_robots(robot(0, LocalDir::Right, 1, 1, true), snap(2, true, false)));
  EXPECT_FALSE(rs::i_was_stuck_and_more_robots(robot(0, LocalDir::Right, 1, 1), snap(2, false, false)));
}

TEST(Predicates, IAmStuckAlone) {
  EXPECT_TRUE(rs::i_am_stuck_alone(robot(0), snap(1, true, false)));
  EXPECT_FALSE(rs::i_am_stuck_alone(robot(0), snap(1, false, true)));
  EXPECT_FALSE(rs::i_am_stuck_alone(robot(0), snap(2, true, false)));
}

TEST(GiveDirection, Examples) {
  rs::RobotState s = rs::give_direction(robot(1, LocalDir::Right, 2));
  EXPECT_EQ(s.i, 3);
  EXPECT_EQ(s.dir, LocalDir::Left);
  s = rs::give_direction(robot(1, LocalDir::Left, 5));
  EXPECT_EQ(s.i, 1);
  EXPECT_EQ(s.dir, LocalDir::Right);
}

TEST(GiveDirection, CorruptIndexMatchesReference) {
  for (std::int64_t i : {999, -7, 0, -1, 5, 6, 1'000'000'007}) {
    const rs::RobotState s = rs::give_direction(robot(1, LocalDir::Left, i));
    const std::int64_t reduced = ((i - 1) % 5 + 5) % 5 + 1;
    const std::int64_t next = reduced % 5 + 1;
    EXPECT_EQ(s.i, next) << i;
    EXPECT_EQ(s.dir, s.transformed_id.at(next) ? LocalDir::Right : LocalDir::Left);
  }
}

TEST(GiveDirection, ReadsConsecutiveBitsCyclically) {
  for (rs::RobotId id : {0u, 1u, 2u, 5u, 13u, 63u}) {
    rs::RobotState s = robot(id, LocalDir::Left, 1);
    const std::size_t ell = s.ell();
    std::vector<int> seen(ell + 1, 0);
    std::int64_t prev = s.i;
    for (std::size_t call = 0; call < ell; ++call) {
      s = rs::give_direction(s);
      EXPECT_EQ(s.i, prev % static_cast<std::int64_t>(ell) + 1);
      prev = s.i;
      ++seen[static_cast<std::size_t>(s.i)];
    }
    for (std::size_t k = 1; k <= ell; ++k) EXPECT_EQ(seen[k], 1) << id << ' ' << k;
  }
}

TEST(GiveDirection, LiteralRuleSkipsOnWrap) {
  EXPECT_EQ(rs::advance_index(5, 5, rs::IndexRule::Literal), 2);
  EXPECT_EQ(rs::advance_index(1, 5, rs::IndexRule::Literal), 3);
  EXPECT_EQ(rs::advance_index(5, 5, rs::IndexRule::RoundRobin), 1);
}

TEST(Update, Examples) {
  const rs::RobotState s = robot(0, LocalDir::Right, 1, 7, true);
  EXPECT_EQ(rs::update(s, snap(2, false, false)), s);
  const rs::RobotState a = rs::update(s, snap(2, false, true));
  EXPECT_EQ(a.nrpea, 2u);
  EXPECT_TRUE(a.hmpea);
  const rs::RobotState b = rs::update(s, snap(1, true, false));
  EXPECT_EQ(b.nrpea, 1u);
  EXPECT_FALSE(b.hmpea);
}

TEST(ComputePef3, IsolatedOpenAhead) {
  const rs::RobotState s = rs::compute_pef3(robot(3, LocalDir::Right, 2, 1, false), snap(1, false, true));
  EXPECT_EQ(s.dir, LocalDir::Right);
  EXPECT_TRUE(s.hmpea);
  EXPECT_EQ(s.nrpea, 1u);
  EXPECT_EQ(s.i, 2);
}

TEST(ComputePef3, StuckPairConsultsGiveDirection) {
  for (rs::RobotId id = 0; id < 16; ++id) {
    for (std::int64_t i = 1; i <= 11; ++i) {
      const rs::RobotState in = robot(id, LocalDir::Right, i, 2, false);
      const rs::RobotState out = rs::compute_pef3(in, kBlockedAhead2);
      // Hand-stepped: advance i, read the bit, then record the activation.
      const auto ell = static_cast<std::int64_t>(in.ell());
      const std::int64_t reduced = ((i - 1) % ell + ell) % ell + 1;
      const std::int64_t next = reduced % ell + 1;
      const LocalDir d = in.transformed_id.at(next) ? LocalDir::Right : LocalDir::Left;
      EXPECT_EQ(out.i, next);
      EXPECT_EQ(out.dir, d);
      EXPECT_EQ(out.nrpea, 2u);
      EXPECT_EQ(out.hmpea, d == LocalDir::Left);
    }
  }
}

TEST(ComputePef3, SentinelMeetsVisitor) {
  const rs::RobotState s = rs::compute_pef3(robot(0, LocalDir::Right, 1, 1, false), snap(2, true, false));
  EXPECT_EQ(s.dir, LocalDir::Left);
  EXPECT_TRUE(s.hmpea);
  EXPECT_EQ(s.nrpea, 2u);
}

TEST(ComputePef3, AloneStuckKeepsDirection) {
  const rs::RobotState s = rs::compute_pef3(robot(0, LocalDir::Right, 1, 1, false), snap(1, true, false));
  EXPECT_EQ(s.dir, LocalDir::Right);
  EXPECT_FALSE(s.hmpea);
}

TEST(ComputePef2, Examples) {
  rs::RobotState s = rs::compute_pef2(robot(0, LocalDir::Right), snap(1, true, false));
  EXPECT_EQ(s.dir, LocalDir::Left);
  EXPECT_TRUE(s.hmpea);
  s = rs::compute_pef2(robot(0, LocalDir::Right), snap(1, false, true));
  EXPECT_EQ(s.dir, LocalDir::Right);
}

TEST(ComputePef2, StuckPairDiverges) {
  rs::RobotState a = rs::make_robot(0, 0, LocalDir::Right, rs::Chirality::RightIsClockwise, 1, 2);
  rs::RobotState b = rs::make_robot(1, 0, LocalDir::Right, rs::Chirality::RightIsClockwise, 1, 2);
  const std::size_t ell_max = std::max(a.ell(), b.ell());
  bool diverged = false;
  for (std::size_t call = 0; call < ell_max && !diverged; ++call) {
    a.dir = b.dir = LocalDir::Right;
    a.nrpea = b.nrpea = 2;
    a.hmpea = b.hmpea = false;
    a = rs::compute_pef2(a, kBlockedAhead2);
    b = rs::compute_pef2(b, kBlockedAhead2);
    diverged = rs::global_direction(a) != rs::global_direction(b);
  }
  EXPECT_TRUE(diverged);
}

TEST(Compute, GuardsMutuallyExclusive) {
  for (auto algo : {rs::Algorithm::Pef3, rs::Algorithm::Pef2}) {
    for (std::uint32_t here = 1; here <= 4; ++here) {
      for (std::uint32_t nrpea = 0; nrpea <= 5; ++nrpea) {
        for (int bits = 0; bits < 16; ++bits) {
          const rs::RobotState s = robot(2, (bits & 1) ? LocalDir::Right : LocalDir::Left,
                                         1 + bits % 7, nrpea, (bits & 2) != 0);
          const rs::LookSnapshot sn = snap(here, (bits & 4) != 0, (bits & 8) != 0);
          EXPECT_NO_THROW(rs::compute(algo, s, sn));
          const bool g1 = rs::we_are_stuck_same_direction(s, sn);
          const bool g2 = algo == rs::Algorithm::Pef3 ? rs::i_was_stuck_and_more_robots(s, sn)
                                                      : rs::i_am_stuck_alone(s, sn);
          EXPECT_FALSE(g1 && g2);
        }
      }
    }
  }
}

TEST(Compute, HmpeaPostdictsMove) {
  rs::Rng rng(5);
  for (int k = 0; k < 5000; ++k) {
    const rs::RobotState s = robot(static_cast<rs::RobotId>(rng.below(64)),
                                   rng.coin() ? LocalDir::Right : LocalDir::Left,
                                   rng.between(-20, 40),
                                   static_cast<std::uint32_t>(rng.below(5)), rng.coin());
    const rs::LookSnapshot sn = snap(1 + static_cast<std::uint32_t>(rng.below(3)), rng.coin(), rng.coin());
    const auto algo = rng.coin() ? rs::Algorithm::Pef3 : rs::Algorithm::Pef2;
    const rs::RobotState out = rs::compute(algo, s, sn);
    if (sn.exists_adjacent()) {
      EXPECT_EQ(out.hmpea, sn.exists_towards(out.dir));
      EXPECT_EQ(out.nrpea, sn.robots_here);
    } else {
      EXPECT_EQ(out.hmpea, s.hmpea);
      EXPECT_EQ(out.nrpea, s.nrpea);
    }
  }
}

TEST(Compute, Mutations) {
  rs::ComputeOptions frozen;
  frozen.mutation = rs::Mutation::FrozenHmpea;
  rs::RobotState s = rs::compute_pef3(robot(0), snap(1, false, true), frozen);
  EXPECT_FALSE(s.hmpea);
  EXPECT_EQ(s.nrpea, 1u);
  rs::ComputeOptions skip;
  skip.mutation = rs::Mutation::SkipUpdate;
  s = rs::compute_pef3(robot(0, LocalDir::Right, 1, 4), snap(1, false, true), skip);
  EXPECT_EQ(s.nrpea, 4u);
}

TEST(GlobalDirection, Mapping) {
  using rs::Chirality;
  using rs::GlobalDir;
  auto g = [](LocalDir d, Chirality c) {
    return rs::global_direction(rs::make_robot(0, 0, d, c));
  };
  EXPECT_EQ(g(LocalDir::Right, Chirality::RightIsClockwise), GlobalDir::Clockwise);
  EXPECT_EQ(g(LocalDir::Left, Chirality::RightIsClockwise), GlobalDir::CounterClockwise);
  EXPECT_EQ(g(LocalDir::Right, Chirality::RightIsCounterClockwise), GlobalDir::CounterClockwise);
  EXPECT_EQ(g(LocalDir::Left, Chirality::RightIsCounterClockwise), GlobalDir::Clockwise);
  for (auto c : {Chirality::RightIsClockwise, Chirality::RightIsCounterClockwise}) {
    for (auto d : {LocalDir::Left, LocalDir::Right}) {
      EXPECT_EQ(rs::to_local(rs::to_global(d, c), c), d);
    }
  }
}

TEST(Parse, EnumsRoundTrip) {
  EXPECT_EQ(rs::parse_index_rule("literal"), rs::IndexRule::Literal);
  EXPECT_EQ(rs::parse_mutation(rs::to_string(rs::Mutation::SkipUpdate)), rs::Mutation::SkipUpdate);
  EXPECT_EQ(rs::parse_algorithm("pef2"), rs::Algorithm::Pef2);
  EXPECT_EQ(rs::parse_local_dir("L"), LocalDir::Left);
  EXPECT_EQ(rs::parse_chirality("ccw"), rs::Chirality::RightIsCounterClockwise);
  EXPECT_THROW(rs::parse_algorithm("pef4"), rs::ValidationError);
  EXPECT_THROW(rs::parse_mutation("x"), rs::ValidationError);
}
