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

#include <algorithm>
#include <bit>
#include <deque>
#include <set>
#include <unordered_map>

#include "ringsweep/adversary.hpp"

namespace ringsweep {

namespace {

constexpr std::uint64_t kMaxStatesPerComponent = 150'000'000;
constexpr std::uint8_t kOnStack = 0x40;
constexpr std::uint8_t kInternal = 0x80;
constexpr std::uint8_t kEdgeBits = 0x3f;

// Local variables of one robot apart from its position.
struct RobotModel {
  RobotId id = 0;
  Chirality chirality = Chirality::RightIsClockwise;
  std::size_t ell = 0;
  std::size_t local_count = 0;  // dir * ell * nrpea * hmpea
  std::size_t radix = 0;        // positions * local_count
  // next[((local * k + here - 1) * 2 + left) * 2 + right]
  std::vector<std::uint32_t> next;
};

struct Local {
  LocalDir dir;
  std::int64_t i;
  std::uint32_t nrpea;
  bool hmpea;
};

class Space {
 public:
  Space(std::size_t n, const std::vector<RobotId>& ids,
        const std::vector<Chirality>& chir, Algorithm algo,
        const ComputeOptions& opts)
      : f_(n), k_(ids.size()), forbidden_(static_cast<NodeIndex>(n - 1)) {
    size_ = 1;
    for (std::size_t r = 0; r < k_; ++r) {
      RobotModel m;
      m.id = ids[r];
      m.chirality = chir[r];
      m.ell = transformed_length(ids[r]);
      m.local_count = 2 * m.ell * k_ * 2;
      m.radix = (n - 1) * m.local_count;
      m.next.resize(m.local_count * k_ * 4);
      for (std::size_t l = 0; l < m.local_count; ++l) {
        const Local in = decode_local(m, l);
        const RobotState s =
            make_robot(m.id, 0, in.dir, m.chirality, in.i, in.nrpea, in.hmpea);
        for (std::uint32_t here = 1; here <= k_; ++here) {
          for (int left = 0; left < 2; ++left) {
            for (int right = 0; right < 2; ++right) {
              const LookSnapshot snap{here, left != 0, right != 0};
              const RobotState out = compute(algo, s, snap, opts);
              m.next[((l * k_ + here - 1) * 2 + left) * 2 + right] =
                  encode_local(m, {out.dir, out.i, out.nrpea, out.hmpea});
            }
          }
        }
      }
      size_ *= m.radix;
      robots_.push_back(std::move(m));
    }
  }

  std::uint64_t size() const { return size_; }
  std::size_t n() const { return f_.size(); }

  Local decode_local(const RobotModel& m, std::size_t l) const {
    Local out;
    out.hmpea = l % 2;
    l /= 2;
    out.nrpea = static_cast<std::uint32_t>(l % k_ + 1);
    l /= k_;
    out.i = static_cast<std::int64_t>(l % m.ell + 1);
    l /= m.ell;
    out.dir = l == 0 ? LocalDir::Left : LocalDir::Right;
    return out;
  }

  std::uint32_t encode_local(const RobotModel& m, const Local& x) const {
    std::size_t l = x.dir == LocalDir::Left ? 0 : 1;
    l = l * m.ell + static_cast<std::size_t>(x.i - 1);
    l = l * k_ + (x.nrpea - 1);
    l = l * 2 + (x.hmpea ? 1 : 0);
    return static_cast<std::uint32_t>(l);
  }

  Configuration decode(std::uint64_t s) const {
    Configuration c;
    for (const RobotModel& m : robots_) {
      const std::size_t v = s % m.radix;
      s /= m.radix;
      const auto pos = static_cast<NodeIndex>(v / m.local_count);
      const Local x = decode_local(m, v % m.local_count);
      c.robots.push_back(
          make_robot(m.id, pos, x.dir, m.chirality, x.i, x.nrpea, x.hmpea));
    }
    return c;
  }

  // Decoded positions and locals of one state, plus its choice set.
  struct View {
    std::array<NodeIndex, 3> pos{};
    std::array<std::uint32_t, 3> local{};
    std::array<std::uint32_t, 3> here{};
    std::array<EdgeIndex, 6> adj{};
    std::size_t adj_count = 0;
    std::size_t choices() const { return std::size_t{1} << adj_count; }
  };

  View view(std::uint64_t s) const {
    View v;
    EdgeSet adj;
    for (std::size_t r = 0; r < k_; ++r) {
      const RobotModel& m = robots_[r];
      const std::size_t x = s % m.radix;
      s /= m.radix;
      v.pos[r] = static_cast<NodeIndex>(x / m.local_count);
      v.local[r] = static_cast<std::uint32_t>(x % m.local_count);
      adj = adj | f_.incident_edges(v.pos[r]);
    }
    for (std::size_t r = 0; r < k_; ++r) {
      v.here[r] = static_cast<std::uint32_t>(
          std::count(v.pos.begin(), v.pos.begin() + k_, v.pos[r]));
    }
    for (EdgeIndex e : adj.indices()) v.adj[v.adj_count++] = e;
    return v;
  }

  EdgeSet absent_of(const View& v, std::size_t choice) const {
    EdgeSet a;
    for (std::size_t b = 0; b < v.adj_count; ++b) {
      if ((choice >> b) & 1u) a = a.with(v.adj[b]);
    }
    return a;
  }

  // Successor under the given choice, or nothing if a robot would step on
  // the forbidden node.
  std::optional<std::uint64_t> successor(const View& v, EdgeSet absent) const {
    const EdgeSet present = f_.all_edges().minus(absent);
    std::uint64_t out = 0;
    std::uint64_t scale = 1;
    for (std::size_t r = 0; r < k_; ++r) {
      const RobotModel& m = robots_[r];
      const NodeIndex p = v.pos[r];
      const bool left = present.contains(
          f_.edge_towards(p, to_global(LocalDir::Left, m.chirality)));
      const bool right = present.contains(
          f_.edge_towards(p, to_global(LocalDir::Right, m.chirality)));
      const std::uint32_t nl =
          m.next[((v.local[r] * k_ + v.here[r] - 1) * 2 + left) * 2 + right];
      const bool cur_right = nl / (m.ell * k_ * 2) != 0;
      const bool moves = cur_right ? right : left;
      NodeIndex np = p;
      if (moves) {
        np = f_.neighbour(p, to_global(cur_right ? LocalDir::Right
                                                 : LocalDir::Left,
                                       m.chirality));
      }
      if (np == forbidden_) return std::nullopt;
      out += scale * (np * m.local_count + nl);
      scale *= m.radix;
    }
    return out;
  }

  NodeIndex forbidden() const { return forbidden_; }

 private:
  Footprint f_;
  std::size_t k_;
  NodeIndex forbidden_;
  std::vector<RobotModel> robots_;
  std::uint64_t size_ = 1;
};

struct Frame {
  std::uint32_t state;
  std::uint32_t child;
  std::uint16_t choice;
  std::uint8_t child_present;
  bool child_pending;
};

// Closed walk inside `members` whose present edges cover `need`.
std::vector<WitnessStep> build_cycle(const Space& sp,
                                     const std::vector<std::uint32_t>& members,
                                     std::uint8_t need,
                                     Configuration& initial) {
  std::unordered_map<std::uint32_t, std::uint32_t> slot;
  slot.reserve(members.size() * 2);
  for (std::uint32_t k = 0; k < members.size(); ++k) slot[members[k]] = k;
  const EdgeSet all = EdgeSet::all(sp.n());

  struct Move {
    std::uint32_t from;
    std::uint32_t to;
    EdgeSet absent;
  };
  // BFS from `start` to the first state satisfying `goal`, where goal sees
  // (move); returns the moves along the path.
  const auto bfs = [&](std::uint32_t start, auto goal) {
    std::unordered_map<std::uint32_t, Move> parent;
    std::deque<std::uint32_t> queue{start};
    parent.reserve(1024);
    std::set<std::uint32_t> seen{start};
    while (!queue.empty()) {
      const std::uint32_t s = queue.front();
      queue.pop_front();
      const Space::View v = sp.view(s);
      for (std::size_t c = 0; c < v.choices(); ++c) {
        const EdgeSet absent = sp.absent_of(v, c);
        const auto t = sp.successor(v, absent);
        if (!t || !slot.count(static_cast<std::uint32_t>(*t))) continue;
        const auto ts = static_cast<std::uint32_t>(*t);
        const Move mv{s, ts, absent};
        if (goal(mv)) {
          std::vector<Move> path{mv};
          std::uint32_t cur = s;
          while (cur != start) {
            const Move& p = parent.at(cur);
            path.push_back(p);
            cur = p.from;
          }
          std::reverse(path.begin(), path.end());
          return path;
        }
        if (seen.insert(ts).second) {
          parent[ts] = mv;
          queue.push_back(ts);
        }
      }
    }
    throw std::logic_error("cycle construction left the component");
  };

  const std::uint32_t s0 = members.front();
  std::vector<Move> walk = bfs(s0, [](const Move&) { return true; });
  std::uint8_t covered = 0;
  for (const Move& m : walk) {
    covered |= static_cast<std::uint8_t>(all.minus(m.absent).mask());
  }
  while ((need & ~covered) != 0) {
    const std::uint8_t missing = need & ~covered;
    auto part = bfs(walk.back().to, [&](const Move& m) {
      return (all.minus(m.absent).mask() & missing) != 0;
    });
    for (const Move& m : part) {
      covered |= static_cast<std::uint8_t>(all.minus(m.absent).mask());
      walk.push_back(m);
    }
  }
  if (walk.back().to != s0) {
    auto back = bfs(walk.back().to, [&](const Move& m) { return m.to == s0; });
    walk.insert(walk.end(), back.begin(), back.end());
  }

  initial = sp.decode(s0);
  std::vector<WitnessStep> steps;
  for (std::size_t k = 0; k < walk.size(); ++k) {
    WitnessStep st;
    st.key = configuration_key(sp.decode(walk[k].from));
    st.absent = walk[k].absent;
    st.next = (k + 1) % walk.size();
    steps.push_back(st);
  }
  return steps;
}

enum class Outcome { Found, Clean, OutOfBudget };

// Iterative Tarjan over one chirality assignment.
Outcome search_component(const Space& sp, std::uint64_t budget,
                         std::uint64_t& explored,
                         std::vector<std::uint32_t>& found,
                         std::uint8_t& found_union) {
  const auto size = static_cast<std::size_t>(sp.size());
  const std::size_t n = sp.n();
  std::vector<std::uint32_t> index(size, 0);
  std::vector<std::uint32_t> low(size, 0);
  std::vector<std::uint8_t> mark(size, 0);
  std::vector<std::uint32_t> scc;
  std::vector<Frame> frames;
  std::uint32_t counter = 0;
  const EdgeSet all = EdgeSet::all(n);

  for (std::size_t root = 0; root < size; ++root) {
    if (index[root] != 0) continue;
    const auto enter = [&](std::uint32_t s) {
      index[s] = low[s] = ++counter;
      ++explored;
      mark[s] |= kOnStack;
      scc.push_back(s);
      frames.push_back({s, 0, 0, 0, false});
    };
    if (explored >= budget) return Outcome::OutOfBudget;
    enter(static_cast<std::uint32_t>(root));
    while (!frames.empty()) {
      Frame& fr = frames.back();
      const std::uint32_t s = fr.state;
      if (fr.child_pending) {
        fr.child_pending = false;
        low[s] = std::min(low[s], low[fr.child]);
        if (mark[fr.child] & kOnStack) mark[s] |= kInternal | fr.child_present;
      }
      const Space::View v = sp.view(s);
      bool descended = false;
      while (fr.choice < v.choices()) {
        const EdgeSet absent = sp.absent_of(v, fr.choice++);
        const auto t = sp.successor(v, absent);
        if (!t) continue;
        const auto ts = static_cast<std::uint32_t>(*t);
        const auto present =
            static_cast<std::uint8_t>(all.minus(absent).mask() & kEdgeBits);
        if (index[ts] == 0) {
          if (explored >= budget) return Outcome::OutOfBudget;
          fr.child = ts;
          fr.child_present = present;
          fr.child_pending = true;
          enter(ts);
          descended = true;
          break;
        }
        if (mark[ts] & kOnStack) {
          low[s] = std::min(low[s], index[ts]);
          mark[s] |= kInternal | present;
        }
      }
      if (descended) continue;
      if (low[s] == index[s]) {
        std::uint8_t uni = 0;
        bool internal = false;
        auto it = scc.end();
        do {
          --it;
          uni |= mark[*it] & kEdgeBits;
          internal = internal || (mark[*it] & kInternal);
        } while (*it != s);
        if (internal && std::popcount(static_cast<unsigned>(uni)) + 1 >=
                            static_cast<int>(n)) {
          found.assign(it, scc.end());
          std::rotate(found.begin(),
                      std::find(found.begin(), found.end(), s), found.end());
          found_union = uni;
          return Outcome::Found;
        }
        for (auto j = it; j != scc.end(); ++j) mark[*j] &= ~kOnStack;
        scc.erase(it, scc.end());
      }
      frames.pop_back();
    }
  }
  return Outcome::Clean;
}

}  // namespace

SearchResult game_search(std::size_t n, const std::vector<RobotId>& ids,
                         Algorithm algo, const SearchOptions& opts) {
  std::vector<std::string> bad;
  if (n < 3 || n > 6) bad.push_back("n");
  if (ids.empty() || ids.size() > 3) bad.push_back("robots");
  if (std::set<RobotId>(ids.begin(), ids.end()).size() != ids.size()) {
    bad.push_back("robots");
  }
  if (opts.budget == 0) bad.push_back("budget");
  if (!bad.empty()) {
    throw ValidationError(
        "search needs 3 <= n <= 6, 1 to 3 distinct robots and a positive budget",
        bad);
  }
  for (RobotId id : ids) transform_identifier(id);

  SearchResult res;
  res.budget = opts.budget;
  const std::size_t k = ids.size();
  for (std::size_t combo = 0; combo < (std::size_t{1} << k); ++combo) {
    std::vector<Chirality> chir;
    for (std::size_t r = 0; r < k; ++r) {
      chir.push_back(((combo >> r) & 1u) ? Chirality::RightIsCounterClockwise
                                         : Chirality::RightIsClockwise);
    }
    const Space sp(n, ids, chir, algo, opts.compute);
    res.state_space += sp.size();
    if (sp.size() > kMaxStatesPerComponent) {
      res.verdict = SearchVerdict::Inconclusive;
      return res;
    }
    std::vector<std::uint32_t> members;
    std::uint8_t uni = 0;
    const Outcome out =
        search_component(sp, opts.budget, res.explored_states, members, uni);
    if (out == Outcome::OutOfBudget) {
      res.verdict = SearchVerdict::Inconclusive;
      return res;
    }
    if (out == Outcome::Found) {
      Witness w;
      w.n = n;
      w.algo = algo;
      w.ids = ids;
      w.chirality = chir;
      w.forbidden_node = sp.forbidden();
      w.steps = build_cycle(sp, members, uni, w.initial);
      const auto miss = EdgeSet::all(n).minus(EdgeSet(uni)).indices();
      if (!miss.empty()) w.missing_edge = miss.front();
      res.verdict = SearchVerdict::ConfinableForever;
      res.witness = std::move(w);
      return res;
    }
  }
  res.verdict = SearchVerdict::NotConfinable;
  return res;
}

}  // namespace ringsweep
