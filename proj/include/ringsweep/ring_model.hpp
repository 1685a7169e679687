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

#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ringsweep/types.hpp"

namespace ringsweep {

constexpr std::size_t kMaxRingSize = 64;

/// A set of ring edges packed into one word; bit k is edge k.
class EdgeSet {
 public:
  constexpr EdgeSet() = default;
  constexpr explicit EdgeSet(std::uint64_t mask) : mask_(mask) {}

  static constexpr EdgeSet all(std::size_t n) {
    return EdgeSet(n >= 64 ? ~std::uint64_t{0}
                           : ((std::uint64_t{1} << n) - 1));
  }

  constexpr bool contains(EdgeIndex e) const { return (mask_ >> e) & 1u; }
  constexpr EdgeSet with(EdgeIndex e) const {
    return EdgeSet(mask_ | (std::uint64_t{1} << e));
  }
  constexpr EdgeSet without(EdgeIndex e) const {
    return EdgeSet(mask_ & ~(std::uint64_t{1} << e));
  }
  constexpr std::uint64_t mask() const { return mask_; }
  constexpr std::size_t size() const {
    return static_cast<std::size_t>(std::popcount(mask_));
  }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr bool subset_of(EdgeSet other) const {
    return (mask_ & ~other.mask_) == 0;
  }

  constexpr EdgeSet operator|(EdgeSet o) const { return EdgeSet(mask_ | o.mask_); }
  constexpr EdgeSet operator&(EdgeSet o) const { return EdgeSet(mask_ & o.mask_); }
  constexpr EdgeSet minus(EdgeSet o) const { return EdgeSet(mask_ & ~o.mask_); }
  constexpr bool operator==(const EdgeSet&) const = default;

  std::vector<EdgeIndex> indices() const;
  std::string str() const;  // "{0,1,3}"

 private:
  std::uint64_t mask_ = 0;
};

/// The static ring underlying every evolving graph. Edge k joins node k and
/// node (k+1) mod n; clockwise is the direction of increasing node index.
class Footprint {
 public:
  explicit Footprint(std::size_t n);

  std::size_t size() const { return n_; }
  std::size_t edge_count() const { return n_; }
  EdgeSet all_edges() const { return EdgeSet::all(n_); }

  EdgeIndex clockwise_edge(NodeIndex v) const { return v; }
  EdgeIndex counter_clockwise_edge(NodeIndex v) const {
    return static_cast<EdgeIndex>((v + n_ - 1) % n_);
  }
  EdgeIndex edge_towards(NodeIndex v, GlobalDir d) const {
    return d == GlobalDir::Clockwise ? clockwise_edge(v)
                                     : counter_clockwise_edge(v);
  }
  NodeIndex neighbour(NodeIndex v, GlobalDir d) const {
    return d == GlobalDir::Clockwise
               ? static_cast<NodeIndex>((v + 1) % n_)
               : static_cast<NodeIndex>((v + n_ - 1) % n_);
  }
  EdgeSet incident_edges(NodeIndex v) const {
    return EdgeSet{}.with(clockwise_edge(v)).with(counter_clockwise_edge(v));
  }
  bool operator==(const Footprint&) const = default;

 private:
  std::size_t n_;
};

/// One (edge, round range) pair of the removal operator. `last` is
/// inclusive; an empty `last` means the removal never ends.
struct Removal {
  EdgeIndex edge = 0;
  Round first = 0;
  std::optional<Round> last;

  bool covers(Round t) const { return t >= first && (!last || t <= *last); }
};

struct EdgeRemovalSpec {
  std::vector<Removal> removals;

  void validate() const;
  /// Parses "edge:[start,end];edge:[start,inf]".
  static EdgeRemovalSpec parse(const std::string& text);
  std::string str() const;
};

/// An edge known to be absent from `cutoff` onwards.
struct MissingEdge {
  EdgeIndex edge;
  Round cutoff;
  bool operator==(const MissingEdge&) const = default;
};

/// Edge-presence generator: a pure function of the round index.
class Schedule {
 public:
  virtual ~Schedule() = default;
  virtual EdgeSet edges_at(Round t) const = 0;
  /// Edges this generator guarantees absent over an infinite suffix.
  virtual std::vector<MissingEdge> eventual_missing() const = 0;
  virtual std::string describe() const = 0;
};

class EvolvingRing {
 public:
  EvolvingRing(Footprint footprint, std::shared_ptr<const Schedule> schedule);

  const Footprint& footprint() const { return footprint_; }
  EdgeSet edges_at(Round t) const;
  std::vector<MissingEdge> eventual_missing() const {
    return schedule_->eventual_missing();
  }
  /// On a ring at most one edge may be eventually missing.
  bool connected_over_time_by_construction() const {
    return eventual_missing().size() <= 1;
  }
  std::string describe() const { return schedule_->describe(); }

 private:
  Footprint footprint_;
  std::shared_ptr<const Schedule> schedule_;
};

EvolvingRing static_ring(std::size_t n);

/// Each edge present independently with probability `p` per round, then
/// patched so that every window of `bound` consecutive rounds holds at
/// least one presence of every edge.
EvolvingRing recurrent_ring(std::size_t n, double p, Round bound,
                            std::uint64_t seed);

/// `inner` with `edge` forced absent at every round >= cutoff. Rejects an
/// inner ring that already loses a different edge forever.
EvolvingRing with_eventual_missing(const EvolvingRing& inner, EdgeIndex edge,
                                   Round cutoff);

/// The removal operator: edge e is present at t in the result iff it is
/// present in `ring` and no pair (e, range) of `spec` covers t.
EvolvingRing remove(const EvolvingRing& ring, const EdgeRemovalSpec& spec);

enum class EdgeClass : std::uint8_t {
  Static,
  EdgeRecurrent,
  ConnectedOverTime,
  NotConnectedOverTime,
};

std::string to_string(EdgeClass c);

/// Verdict on a finite prefix. Always provisional: no prefix proves a
/// property of the infinite schedule.
struct EdgeClassVerdict {
  EdgeClass kind = EdgeClass::Static;
  bool provisional = true;
  Round horizon = 0;
  Round bound = 0;
  EdgeSet static_edges;     // present at every round of the prefix
  EdgeSet recurrent_edges;  // present in every `bound`-window of the prefix
  std::vector<MissingEdge> missing_candidates;

  bool satisfies(EdgeClass c) const;
  std::string str() const;
};

/// Scans rounds [0, horizon). An edge failing the window test whose
/// trailing absence lasts at least `bound` rounds is an eventual-missing
/// candidate with cutoff one past its last presence.
EdgeClassVerdict classify_prefix(const EvolvingRing& ring, Round horizon,
                                 Round bound);

}  // namespace ringsweep
