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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ringsweep/engine.hpp"
#include "ringsweep/ring_model.hpp"

namespace ringsweep {

/// Edge-recurrent generator; see recurrent_ring.
EvolvingRing recurrent_random(std::size_t n, double p, Round bound,
                              std::uint64_t seed);

/// A recurrent schedule (p, bound, seed) with `edge` absent from round T.
EvolvingRing eventual_missing(std::size_t n, EdgeIndex edge, Round T, double p,
                              Round bound, std::uint64_t seed);

/// Two-robot confinement inside the window v, w = v+1, x = v+2. Edges
/// leaving the window next to a robot are withheld according to the robots'
/// layout; all other edges are present. The layout is re-read every round,
/// so a withheld edge stays withheld until some robot moves.
class ConfinementAdversary final : public EdgeSource {
 public:
  enum class Outcome : std::uint8_t { Running, Escaped, SelfStarves };

  /// `cap` bounds how long the robots may stall; 0 picks 4 * ell_max.
  /// Without `anchor` the window is placed at the first round.
  ConfinementAdversary(std::size_t n, Round cap = 0,
                       std::optional<NodeIndex> anchor = std::nullopt);

  EdgeSet choose(const Configuration& config, Round t) override;
  bool exhausted() const override { return outcome_ != Outcome::Running; }
  std::string describe() const override;

  Outcome outcome() const { return outcome_; }
  std::optional<NodeIndex> window_start() const { return v_; }
  Round waiting() const { return waiting_; }

  /// The absent edges for two robots at positions a and b, or nothing if
  /// they are not both inside the window starting at v.
  static std::optional<EdgeSet> absent_for(std::size_t n, NodeIndex v,
                                           NodeIndex a, NodeIndex b);

 private:
  Footprint f_;
  Round cap_;
  std::optional<NodeIndex> v_;
  Round waiting_ = 0;
  std::optional<std::vector<NodeIndex>> last_positions_;
  Outcome outcome_ = Outcome::Running;
};

std::string to_string(ConfinementAdversary::Outcome o);

/// Heuristic confinement for any number of robots. Each round it keeps the
/// robots inside the shortest arc (at least three nodes) that holds them,
/// withholding as few boundary edges as it can, but never withholds an edge
/// for more than `cap` consecutive rounds. The realized schedule is thus
/// edge-recurrent with bound cap + 1.
class GreedyConfinementAdversary final : public EdgeSource {
 public:
  GreedyConfinementAdversary(std::size_t n, Algorithm algo,
                             ComputeOptions opts = {}, Round cap = 0);

  EdgeSet choose(const Configuration& config, Round t) override;
  std::string describe() const override;

 private:
  Footprint f_;
  Algorithm algo_;
  ComputeOptions opts_;
  Round cap_;
  std::vector<Round> absent_run_;
  std::optional<std::pair<NodeIndex, std::size_t>> window_;
};

/// One step of a confining cycle, in the frame where node n-1 is never
/// visited.
struct WitnessStep {
  std::string key;
  EdgeSet absent;
  std::size_t next = 0;
};

struct Witness {
  std::size_t n = 0;
  Algorithm algo = Algorithm::Pef3;
  std::vector<RobotId> ids;
  std::vector<Chirality> chirality;
  NodeIndex forbidden_node = 0;
  std::optional<EdgeIndex> missing_edge;
  Configuration initial;
  std::vector<WitnessStep> steps;

  void write(std::ostream& os) const;
  void save(const std::string& path) const;
  static Witness read(std::istream& is);
  static Witness load(const std::string& path);
};

/// Canonical key of a configuration: per robot pos:dir:i:nrpea:hmpea with
/// the read index normalized, robots in id order of the witness.
std::string configuration_key(const Configuration& c);

/// Replays a witness. The first round fixes the rotation between the live
/// configuration and the witness frame; afterwards every configuration must
/// match a witness state, otherwise the source reports itself exhausted.
class WitnessAdversary final : public EdgeSource {
 public:
  explicit WitnessAdversary(Witness w);

  EdgeSet choose(const Configuration& config, Round t) override;
  bool exhausted() const override { return lost_; }
  std::string describe() const override;
  std::vector<MissingEdge> eventual_missing() const override;

  const Witness& witness() const { return w_; }

 private:
  Witness w_;
  std::map<std::string, std::size_t> by_key_;
  std::optional<NodeIndex> rotation_;
  std::size_t phase_ = 0;
  bool lost_ = false;
};

enum class SearchVerdict : std::uint8_t {
  ConfinableForever,
  NotConfinable,
  Inconclusive,
};

std::string to_string(SearchVerdict v);

struct SearchOptions {
  std::uint64_t budget = 100'000'000;
  ComputeOptions compute;
};

struct SearchResult {
  SearchVerdict verdict = SearchVerdict::Inconclusive;
  std::uint64_t explored_states = 0;
  std::uint64_t budget = 0;
  std::uint64_t state_space = 0;
  std::optional<Witness> witness;

  std::string str() const;
};

/// Exhaustive search over adversary choices that withhold edges next to
/// robots, with node n-1 forbidden. States hold normalized read indices and
/// counters in 1..k, which every run enters after each robot's first edge
/// activation. A strongly connected set of states whose internal moves
/// present all edges but at most one is a confining cycle.
SearchResult game_search(std::size_t n, const std::vector<RobotId>& ids,
                         Algorithm algo, const SearchOptions& opts = {});

}  // namespace ringsweep
