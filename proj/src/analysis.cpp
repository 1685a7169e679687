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

#include "ringsweep/analysis.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace ringsweep {

PositionTable::PositionTable(const Trace& trace)
    : k_(trace.header.initial.size()), instants_(trace.horizon() + 1) {
  pos_.resize(static_cast<std::size_t>(instants_) * k_);
  for (std::size_t r = 0; r < k_; ++r) pos_[r] = trace.header.initial[r].position;
  for (std::size_t t = 0; t < trace.rounds.size(); ++t) {
    const RoundRecord& rec = trace.rounds[t];
    for (std::size_t r = 0; r < k_; ++r) {
      pos_[t * k_ + r] = rec.robots[r].position_before;
      pos_[(t + 1) * k_ + r] = rec.robots[r].position_after;
    }
  }
}

std::string Tower::str() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < robots.size(); ++k) {
    os << (k ? "," : "") << robots[k];
  }
  os << "} [" << start << ',' << end << (open ? ")" : "]") << ' '
     << (long_lived ? "long-lived" : "short-lived");
  return os.str();
}

namespace {

// Robot state just before the Compute of round t.
const RobotState& pre_state(const Trace& trace, Round t, std::size_t r) {
  return t == 0 ? trace.header.initial[r]
                : trace.rounds[static_cast<std::size_t>(t - 1)].robots[r].state;
}

// Global direction a robot holds at the Look of instant t (0..H).
GlobalDir look_dir(const Trace& trace, Round t, std::size_t r) {
  return global_direction(pre_state(trace, t, r));
}

}  // namespace

std::vector<Tower> detect_towers(const Trace& trace) {
  const PositionTable pos(trace);
  const std::size_t k = pos.robots();
  const Round H = trace.horizon();
  std::vector<Tower> towers;
  if (k < 2) return towers;

  struct Open {
    Round start;
  };
  std::map<std::uint64_t, Open> active;
  const auto close = [&](std::uint64_t mask, Round start, Round end, bool open) {
    Tower tw;
    for (std::size_t r = 0; r < k; ++r) {
      if ((mask >> r) & 1u) tw.robots.push_back(trace.header.initial[r].id);
    }
    std::sort(tw.robots.begin(), tw.robots.end());
    tw.start = start;
    tw.end = end;
    tw.open = open;
    const std::size_t any = static_cast<std::size_t>(std::countr_zero(mask));
    for (Round t = start; t <= end; ++t) tw.nodes.push_back(pos.at(t, any));
    for (Round t = start; t < std::min(end, H); ++t) {
      if (trace.rounds[static_cast<std::size_t>(t)].robots[any]
              .edge_activated()) {
        tw.first_activation = t;
        break;
      }
    }
    tw.long_lived = tw.first_activation.has_value();
    towers.push_back(std::move(tw));
  };

  for (Round t = 0; t <= H; ++t) {
    std::map<NodeIndex, std::uint64_t> groups;
    for (std::size_t r = 0; r < k; ++r) {
      groups[pos.at(t, r)] |= std::uint64_t{1} << r;
    }
    std::set<std::uint64_t> current;
    for (const auto& [node, g] : groups) {
      if (std::popcount(g) < 2) continue;
      for (std::uint64_t sub = g; sub != 0; sub = (sub - 1) & g) {
        if (std::popcount(sub) >= 2) current.insert(sub);
      }
    }
    for (auto it = active.begin(); it != active.end();) {
      if (!current.count(it->first)) {
        close(it->first, it->second.start, t - 1, false);
        it = active.erase(it);
      } else {
        ++it;
      }
    }
    for (std::uint64_t s : current) active.emplace(s, Open{t});
  }
  for (const auto& [mask, o] : active) close(mask, o.start, H, true);

  // Fold sets that only ever appear inside a larger tower.
  std::vector<Tower> kept;
  for (const Tower& a : towers) {
    const bool folded = std::any_of(towers.begin(), towers.end(), [&](const Tower& b) {
      return b.size() > a.size() && b.start == a.start && b.end == a.end &&
             std::includes(b.robots.begin(), b.robots.end(), a.robots.begin(),
                           a.robots.end());
    });
    if (!folded) kept.push_back(a);
  }
  std::sort(kept.begin(), kept.end(), [](const Tower& a, const Tower& b) {
    return std::tie(a.start, a.end, a.robots) < std::tie(b.start, b.end, b.robots);
  });
  return kept;
}

std::string CoverageReport::verdict() const {
  if (covered) return "Covered(<=" + std::to_string(bound) + ")";
  std::string s = "Starved(node " + std::to_string(starved_node.value_or(0));
  if (starved_since) s += " since " + std::to_string(*starved_since);
  return s + ")";
}

CoverageReport coverage(const Trace& trace, Round suffix_start, Round window) {
  const Round H = trace.horizon();
  std::vector<std::string> bad;
  if (window < 1) bad.push_back("window");
  if (H < window) bad.push_back("window");
  if (suffix_start >= H) bad.push_back("suffix_start");
  if (!bad.empty()) {
    throw ValidationError("coverage needs 1 <= W <= horizon and suffix start "
                          "below the horizon (horizon " +
                              std::to_string(H) + ")",
                          bad);
  }
  const std::size_t n = trace.header.n;
  const PositionTable pos(trace);
  CoverageReport rep;
  rep.suffix_start = suffix_start;
  rep.window = window;
  rep.horizon = H;
  rep.visits.assign(n, {});
  rep.max_gap.assign(n, 0);
  for (Round t = 0; t <= H; ++t) {
    for (std::size_t r = 0; r < pos.robots(); ++r) {
      auto& v = rep.visits[pos.at(t, r)];
      if (v.empty() || v.back() != t) v.push_back(t);
    }
  }
  rep.covered = true;
  for (NodeIndex node = 0; node < n; ++node) {
    const auto& v = rep.visits[node];
    const auto first = std::lower_bound(v.begin(), v.end(), suffix_start);
    Round gap = 0;
    std::optional<Round> since;
    if (first == v.end()) {
      gap = H - suffix_start + 2;
      since = first == v.begin() ? 0 : *(first - 1) + 1;
    } else {
      const auto note = [&](Round g, Round from) {
        gap = std::max(gap, g);
        if (g > window && !since) since = from;
      };
      note(*first - suffix_start + 1, suffix_start);
      for (auto it = first; it + 1 != v.end(); ++it) note(*(it + 1) - *it, *it + 1);
      note(H - v.back() + 1, v.back() + 1);
    }
    rep.max_gap[node] = gap;
    rep.bound = std::max(rep.bound, gap);
    if (since && rep.covered) {
      rep.covered = false;
      rep.starved_node = node;
      rep.starved_since = since;
    }
  }
  return rep;
}

std::optional<Round> coherence_round(const Trace& trace, RobotId id) {
  const auto& init = trace.header.initial;
  const auto it = std::find_if(init.begin(), init.end(),
                               [&](const RobotState& r) { return r.id == id; });
  if (it == init.end()) {
    throw ValidationError("robot " + std::to_string(id) + " not in trace",
                          {"robot"});
  }
  const auto r = static_cast<std::size_t>(it - init.begin());
  for (const RoundRecord& rec : trace.rounds) {
    if (rec.robots[r].edge_activated()) return rec.t + 1;
  }
  return std::nullopt;
}

std::optional<Round> coherence_time(const Trace& trace) {
  Round t = 0;
  for (const RobotState& r : trace.header.initial) {
    const auto c = coherence_round(trace, r.id);
    if (!c) return std::nullopt;
    t = std::max(t, *c);
  }
  return t;
}

namespace {

class Monitors {
 public:
  explicit Monitors(const Trace& trace)
      : trace_(trace), f_(trace.header.n), k_(trace.header.initial.size()) {
    for (std::size_t r = 0; r < k_; ++r) {
      slot_[trace.header.initial[r].id] = r;
    }
  }

  std::vector<Finding> run() {
    per_round();
    const auto tmax = coherence_time(trace_);
    const Algorithm algo = trace_.header.algo;
    const bool pef3_envelope = algo == Algorithm::Pef3 && k_ == 3 && f_.size() >= 4;
    const bool pef2_envelope = algo == Algorithm::Pef2 && k_ == 2 && f_.size() == 3;
    if (tmax && (pef3_envelope || pef2_envelope)) {
      towers_ = detect_towers(trace_);
      tower_direction_agreement(*tmax);
      tower_predicate_agreement(*tmax);
      if (pef3_envelope) {
        triple_tower_formation(*tmax);
        no_new_long_lived(*tmax, 3, "no_new_triple_long_lived");
        ring_visit_between_pair_towers(*tmax);
      } else {
        no_new_long_lived(*tmax, 2, "no_new_pair_long_lived");
      }
    }
    return std::move(out_);
  }

 private:
  void add(const char* monitor, Round t, std::string detail) {
    out_.push_back({monitor, t, std::move(detail)});
  }

  void per_round() {
    for (const RoundRecord& rec : trace_.rounds) {
      const Round t = rec.t;
      std::size_t cw = 0;
      for (std::size_t r = 0; r < k_; ++r) {
        const RobotRecord& rr = rec.robots[r];
        const RobotState& pre = pre_state(trace_, t, r);
        const RobotState& post = rr.state;
        const std::string who = "robot " + std::to_string(post.id);

        if (rr.edge_activated()) {
          if (post.nrpea != rr.snapshot.robots_here || post.hmpea != rr.moved) {
            add("bookkeeping_coherence", t,
                who + " edge-activated with " +
                    std::to_string(rr.snapshot.robots_here) +
                    " robots here, moved=" + (rr.moved ? "true" : "false") +
                    " but stored nrpea=" + std::to_string(post.nrpea) +
                    " hmpea=" + (post.hmpea ? "true" : "false"));
          }
        } else if (post.nrpea != pre.nrpea || post.hmpea != pre.hmpea) {
          add("bookkeeping_coherence", t,
              who + " changed its counters without an adjacent edge");
        }

        if (post.i != pre.i) {
          const std::int64_t want = advance_index(
              normalize_index(pre.i, pre.ell()), pre.ell(), IndexRule::RoundRobin);
          if (post.i != want) {
            add("round_robin_index", t,
                who + " read index went " + std::to_string(pre.i) + " -> " +
                    std::to_string(post.i) + ", expected " +
                    std::to_string(want));
          } else {
            const LocalDir bit_dir =
                post.transformed_id.at(static_cast<std::size_t>(post.i))
                    ? LocalDir::Right
                    : LocalDir::Left;
            if (post.dir != bit_dir) {
              add("round_robin_index", t,
                  who + " direction does not match bit " +
                      std::to_string(post.i) + " of its transformed id");
            }
          }
        }

        const GlobalDir g = rr.gdir();
        const bool can_move =
            rec.edges.contains(f_.edge_towards(rr.position_before, g));
        if (rr.moved != can_move) {
          add("movement_legality", t,
              who + (rr.moved ? " moved across an absent edge"
                              : " stayed although its edge was present"));
        }
        const NodeIndex expected_pos =
            t == 0 ? trace_.header.initial[r].position
                   : trace_.rounds[static_cast<std::size_t>(t - 1)]
                         .robots[r]
                         .position_after;
        if (rr.position_before != expected_pos) {
          add("movement_legality", t,
              who + " is at node " + std::to_string(rr.position_before) +
                  " but the previous round left it at " +
                  std::to_string(expected_pos));
        }
        if (g == GlobalDir::Clockwise) ++cw;
      }
      if (k_ == 3 && std::max(cw, k_ - cw) < 2) {
        add("shared_direction", t, "no two robots share a global direction");
      }
    }
  }

  std::vector<std::size_t> slots(const Tower& tw) const {
    std::vector<std::size_t> s;
    for (RobotId id : tw.robots) s.push_back(slot_.at(id));
    return s;
  }

  bool activated(Round t, std::size_t r) const {
    return trace_.rounds[static_cast<std::size_t>(t)].robots[r].edge_activated();
  }

  void tower_direction_agreement(Round tmax) {
    for (const Tower& tw : towers_) {
      if (!tw.long_lived) continue;
      const auto s = slots(tw);
      for (Round t = std::max(tw.start, tmax); t <= tw.end; ++t) {
        const GlobalDir d = look_dir(trace_, t, s[0]);
        for (std::size_t j = 1; j < s.size(); ++j) {
          if (look_dir(trace_, t, s[j]) != d) {
            add("tower_direction_agreement", t,
                "long-lived tower " + tw.str() +
                    " holds different global directions");
            break;
          }
        }
      }
    }
  }

  void tower_predicate_agreement(Round tmax) {
    const bool pef3 = trace_.header.algo == Algorithm::Pef3;
    const std::size_t needed = pef3 ? 1 : 2;
    const Round H = trace_.horizon();
    for (const Tower& tw : towers_) {
      if (!tw.long_lived) continue;
      const auto s = slots(tw);
      std::size_t seen = 0;
      for (Round t = std::max(tw.start, tmax); t <= tw.end && t < H; ++t) {
        if (seen >= needed) {
          const RoundRecord& rec = trace_.rounds[static_cast<std::size_t>(t)];
          const auto stuck = [&](std::size_t r) {
            return we_are_stuck_same_direction(pre_state(trace_, t, r),
                                               rec.robots[r].snapshot);
          };
          const auto more = [&](std::size_t r) {
            return i_was_stuck_and_more_robots(pre_state(trace_, t, r),
                                               rec.robots[r].snapshot);
          };
          for (std::size_t j = 1; j < s.size(); ++j) {
            if (stuck(s[j]) != stuck(s[0]) ||
                (pef3 && more(s[j]) != more(s[0]))) {
              add("tower_predicate_agreement", t,
                  "members of long-lived tower " + tw.str() +
                      " disagree on a direction guard");
              break;
            }
          }
        }
        if (t < tw.end && activated(t, s[0])) ++seen;
      }
    }
  }

  void triple_tower_formation(Round tmax) {
    for (const Tower& tw : towers_) {
      if (tw.size() != 3 || tw.start == 0 || tw.start - 1 < tmax) continue;
      const Round before = tw.start - 1;
      const bool ok = std::any_of(towers_.begin(), towers_.end(), [&](const Tower& p) {
        return p.size() == 2 && p.long_lived && p.covers(before);
      });
      if (!ok) {
        add("triple_tower_formation", tw.start,
            "tower " + tw.str() + " formed without a 2-long-lived tower at " +
                std::to_string(before));
      }
    }
  }

  void no_new_long_lived(Round tmax, std::size_t size, const char* name) {
    std::vector<const Tower*> ll;
    for (const Tower& tw : towers_) {
      if (tw.size() == size && tw.long_lived) ll.push_back(&tw);
    }
    const Round H = trace_.horizon();
    std::optional<Round> free_at;
    for (Round t = tmax; t <= H && !free_at; ++t) {
      const bool any = std::any_of(ll.begin(), ll.end(),
                                   [&](const Tower* p) { return p->covers(t); });
      if (!any) free_at = t;
    }
    if (!free_at) return;
    for (const Tower* p : ll) {
      if (p->start > *free_at) {
        add(name, p->start,
            "long-lived tower " + p->str() + " appeared after instant " +
                std::to_string(*free_at) + " had none");
      }
    }
  }

  void ring_visit_between_pair_towers(Round tmax) {
    Round from = tmax;
    for (const Tower& tw : towers_) {
      if (tw.size() != 3 || !tw.long_lived || tw.end < tmax) continue;
      if (tw.open) return;
      from = std::max(from, tw.end + 1);
    }
    std::vector<const Tower*> pairs;
    for (const Tower& tw : towers_) {
      if (tw.size() == 2 && tw.long_lived && tw.start >= from) {
        pairs.push_back(&tw);
      }
    }
    std::stable_sort(pairs.begin(), pairs.end(), [](const Tower* a, const Tower* b) {
      return a->start < b->start;
    });
    const PositionTable pos(trace_);
    const auto all_visited = [&](Round lo, Round hi) {
      std::vector<bool> seen(f_.size(), false);
      for (Round t = lo; t <= hi; ++t) {
        for (std::size_t r = 0; r < k_; ++r) seen[pos.at(t, r)] = true;
      }
      return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    };
    for (std::size_t j = 0; j + 1 < pairs.size(); ++j) {
      const Tower& a = *pairs[j];
      const Tower& b = *pairs[j + 1];
      if (a.open) break;
      if (b.start > a.end + 1) {
        if (!all_visited(a.end, b.start)) {
          add("ring_visit_between_pair_towers", b.start,
              "ring not fully visited between " + a.str() + " and " + b.str());
        }
      } else if (j >= 1 && b.start == a.end + 1 && a.start >= 1) {
        if (!all_visited(a.start - 1, b.start)) {
          add("ring_visit_between_pair_towers", b.start,
              "ring not fully visited around back-to-back towers " + a.str() +
                  " and " + b.str());
        }
      }
    }
  }

  const Trace& trace_;
  Footprint f_;
  std::size_t k_;
  std::map<RobotId, std::size_t> slot_;
  std::vector<Tower> towers_;
  std::vector<Finding> out_;
};

}  // namespace

std::vector<Finding> monitor_lemmas(const Trace& trace) {
  return Monitors(trace).run();
}

void write_findings(std::ostream& os, const std::vector<Finding>& findings) {
  for (const Finding& f : findings) {
    nlohmann::ordered_json j;
    j["monitor"] = f.monitor;
    j["round"] = f.round;
    j["detail"] = f.detail;
    os << j.dump() << '\n';
  }
}

std::string SentinelReport::str() const {
  if (!applicable) return "sentinel/visitor: not applicable (no missing edge)";
  std::ostringstream os;
  os << "sentinel/visitor: missing edge " << missing->edge << " from "
     << missing->cutoff << ", ";
  if (established) {
    os << "established at " << *established << ", " << visitor_periods.size()
       << " visitor arrivals, max period " << max_period;
  } else {
    os << "not established within the horizon";
  }
  return os.str();
}

SentinelReport sentinel_visitor_report(const Trace& trace) {
  SentinelReport rep;
  if (!trace.header.missing_edge) return rep;
  rep.applicable = true;
  rep.missing = trace.header.missing_edge;
  const std::size_t n = trace.header.n;
  const NodeIndex a = rep.missing->edge;
  const auto b = static_cast<NodeIndex>((a + 1) % n);
  const PositionTable pos(trace);
  const Round H = trace.horizon();
  const std::size_t k = pos.robots();
  const auto guarded = [&](Round t) {
    bool at_a = false;
    bool at_b = false;
    for (std::size_t r = 0; r < k; ++r) {
      const NodeIndex p = pos.at(t, r);
      const GlobalDir d = look_dir(trace, t, r);
      at_a = at_a || (p == a && d == GlobalDir::Clockwise);
      at_b = at_b || (p == b && d == GlobalDir::CounterClockwise);
    }
    return at_a && at_b;
  };
  const Round from = std::min(rep.missing->cutoff, H);
  Round est = from;
  for (Round t = H + 1; t-- > from;) {
    if (!guarded(t)) {
      est = t + 1;
      break;
    }
  }
  if (est > H) return rep;
  rep.established = est;
  std::optional<Round> last;
  for (Round t = est + 1; t <= H; ++t) {
    bool arrival = false;
    for (std::size_t r = 0; r < k; ++r) {
      const NodeIndex p = pos.at(t, r);
      if ((p == a || p == b) && pos.at(t - 1, r) != p) arrival = true;
    }
    if (!arrival) continue;
    if (last) {
      rep.visitor_periods.push_back(t - *last);
      rep.max_period = std::max(rep.max_period, t - *last);
    }
    last = t;
  }
  return rep;
}

}  // namespace ringsweep
