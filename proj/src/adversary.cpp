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

#include "ringsweep/adversary.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ringsweep {

using Json = nlohmann::ordered_json;

EvolvingRing recurrent_random(std::size_t n, double p, Round bound,
                              std::uint64_t seed) {
  return recurrent_ring(n, p, bound, seed);
}

EvolvingRing eventual_missing(std::size_t n, EdgeIndex edge, Round T, double p,
                              Round bound, std::uint64_t seed) {
  return with_eventual_missing(recurrent_ring(n, p, bound, seed), edge, T);
}

namespace {

std::size_t max_ell(const Configuration& c) {
  std::size_t m = 0;
  for (const RobotState& r : c.robots) m = std::max(m, r.ell());
  return m;
}

}  // namespace

ConfinementAdversary::ConfinementAdversary(std::size_t n, Round cap,
                                           std::optional<NodeIndex> anchor)
    : f_(n), cap_(cap), v_(anchor) {
  if (n < 4) {
    throw ValidationError("confinement adversary needs a ring of size >= 4",
                          {"n", "adversary"});
  }
  if (anchor && *anchor >= n) {
    throw ValidationError("window anchor outside the ring", {"adversary"});
  }
}

std::optional<EdgeSet> ConfinementAdversary::absent_for(std::size_t n,
                                                        NodeIndex v, NodeIndex a,
                                                        NodeIndex b) {
  const auto rel = [&](NodeIndex p) {
    return static_cast<NodeIndex>((p + n - v) % n);
  };
  NodeIndex ra = rel(a);
  NodeIndex rb = rel(b);
  if (ra > 2 || rb > 2) return std::nullopt;
  if (ra > rb) std::swap(ra, rb);
  const auto e_vl = static_cast<EdgeIndex>((v + n - 1) % n);
  const auto e_wr = static_cast<EdgeIndex>((v + 1) % n);
  const auto e_xr = static_cast<EdgeIndex>((v + 2) % n);
  if (ra == 0 && rb == 1) return EdgeSet{}.with(e_vl);
  if (ra == 1 && rb == 2) return EdgeSet{}.with(e_xr);
  if (ra == 0 && rb == 2) return EdgeSet{}.with(e_vl).with(e_xr);
  if (ra == 0) return EdgeSet{}.with(e_vl);
  if (ra == 1) return EdgeSet{}.with(e_wr);
  return EdgeSet{}.with(e_xr);
}

EdgeSet ConfinementAdversary::choose(const Configuration& config, Round) {
  const EdgeSet all = f_.all_edges();
  if (config.robots.size() != 2) {
    throw ValidationError("confinement adversary drives exactly two robots",
                          {"robots", "adversary"});
  }
  if (outcome_ != Outcome::Running) return all;
  if (cap_ == 0) cap_ = 4 * max_ell(config);
  const NodeIndex a = config.robots[0].position;
  const NodeIndex b = config.robots[1].position;
  if (!v_) {
    for (NodeIndex v = 0; v < f_.size(); ++v) {
      if (absent_for(f_.size(), v, a, b)) {
        v_ = v;
        break;
      }
    }
  }
  const std::optional<EdgeSet> absent =
      v_ ? absent_for(f_.size(), *v_, a, b) : std::nullopt;
  if (!absent) {
    outcome_ = Outcome::Escaped;
    return all;
  }
  const std::vector<NodeIndex> now{a, b};
  waiting_ = (last_positions_ && *last_positions_ == now) ? waiting_ + 1 : 0;
  last_positions_ = now;
  if (waiting_ >= cap_) {
    outcome_ = Outcome::SelfStarves;
    return all;
  }
  return all.minus(*absent);
}

std::string ConfinementAdversary::describe() const {
  return "confinement(W=" + std::to_string(cap_) + ")";
}

std::string to_string(ConfinementAdversary::Outcome o) {
  switch (o) {
    case ConfinementAdversary::Outcome::Running: return "running";
    case ConfinementAdversary::Outcome::Escaped: return "confinement escaped";
    case ConfinementAdversary::Outcome::SelfStarves:
      return "algorithm self-starves";
  }
  return "?";
}

GreedyConfinementAdversary::GreedyConfinementAdversary(std::size_t n,
                                                       Algorithm algo,
                                                       ComputeOptions opts,
                                                       Round cap)
    : f_(n), algo_(algo), opts_(opts), cap_(cap), absent_run_(n, 0) {}

namespace {

bool in_arc(std::size_t n, NodeIndex start, std::size_t len, NodeIndex p) {
  return (p + n - start) % n < len;
}

// Shortest arc holding every position; ties go to the smallest start.
std::pair<NodeIndex, std::size_t> shortest_arc(std::size_t n,
                                               const Configuration& c,
                                               std::size_t min_len) {
  for (std::size_t len = std::min(min_len, n); len <= n; ++len) {
    for (NodeIndex s = 0; s < n; ++s) {
      const bool ok = std::all_of(
          c.robots.begin(), c.robots.end(),
          [&](const RobotState& r) { return in_arc(n, s, len, r.position); });
      if (ok) return {s, len};
    }
  }
  return {0, n};
}

}  // namespace

EdgeSet GreedyConfinementAdversary::choose(const Configuration& config,
                                           Round) {
  const std::size_t n = f_.size();
  if (cap_ == 0) cap_ = 4 * max_ell(config);
  const EdgeSet all = f_.all_edges();

  const auto fits = [&](const std::pair<NodeIndex, std::size_t>& w) {
    return std::all_of(config.robots.begin(), config.robots.end(),
                       [&](const RobotState& r) {
                         return in_arc(n, w.first, w.second, r.position);
                       });
  };
  const auto best = shortest_arc(n, config, 3);
  if (!window_ || window_->second != best.second || !fits(*window_)) {
    window_ = best;
  }
  EdgeSet chosen;
  if (window_->second < n) {
    const NodeIndex s = window_->first;
    const std::size_t len = window_->second;
    const EdgeIndex left = f_.counter_clockwise_edge(s);
    const EdgeIndex right =
        f_.clockwise_edge(static_cast<NodeIndex>((s + len - 1) % n));
    const std::vector<EdgeSet> candidates{
        EdgeSet{}, EdgeSet{}.with(left), EdgeSet{}.with(right),
        EdgeSet{}.with(left).with(right)};
    std::size_t best_escapes = config.robots.size() + 1;
    for (const EdgeSet& absent : candidates) {
      const std::vector<EdgeIndex> edges = absent.indices();
      const bool allowed =
          std::all_of(edges.begin(), edges.end(),
                      [&](EdgeIndex e) { return absent_run_[e] < cap_; });
      if (!allowed) continue;
      const Configuration next = step(f_, config, all.minus(absent), algo_,
                                      opts_);
      std::size_t escapes = 0;
      for (const RobotState& r : next.robots) {
        if (!in_arc(n, s, len, r.position)) ++escapes;
      }
      if (escapes < best_escapes) {
        best_escapes = escapes;
        chosen = absent;
      }
      if (escapes == 0) break;
    }
  }
  for (EdgeIndex e = 0; e < n; ++e) {
    absent_run_[e] = chosen.contains(e) ? absent_run_[e] + 1 : 0;
  }
  return all.minus(chosen);
}

std::string GreedyConfinementAdversary::describe() const {
  return "greedy(W=" + std::to_string(cap_) + ")";
}

std::string configuration_key(const Configuration& c) {
  std::string key;
  for (std::size_t k = 0; k < c.robots.size(); ++k) {
    const RobotState& r = c.robots[k];
    if (k) key += '|';
    key += std::to_string(r.position) + ':' + to_string(r.dir) + ':' +
           std::to_string(normalize_index(r.i, r.ell())) + ':' +
           std::to_string(r.nrpea) + ':' + (r.hmpea ? '1' : '0');
  }
  return key;
}

void Witness::write(std::ostream& os) const {
  Json h;
  h["kind"] = "witness";
  h["n"] = n;
  h["algo"] = to_string(algo);
  h["ids"] = ids;
  Json ch = Json::array();
  for (Chirality c : chirality) ch.push_back(to_string(c));
  h["chirality"] = ch;
  h["forbidden_node"] = forbidden_node;
  h["missing_edge"] = missing_edge ? Json(*missing_edge) : Json(nullptr);
  Json init = Json::array();
  for (const RobotState& r : initial.robots) {
    init.push_back({{"id", r.id},
                    {"pos", r.position},
                    {"dir", to_string(r.dir)},
                    {"chirality", to_string(r.chirality)},
                    {"i", r.i},
                    {"nrpea", r.nrpea},
                    {"hmpea", r.hmpea}});
  }
  h["initial"] = init;
  h["length"] = steps.size();
  os << h.dump() << '\n';
  for (std::size_t k = 0; k < steps.size(); ++k) {
    Json s;
    s["phase"] = k;
    s["key"] = steps[k].key;
    s["absent"] = steps[k].absent.mask();
    s["next"] = steps[k].next;
    os << s.dump() << '\n';
  }
}

void Witness::save(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  write(os);
}

Witness Witness::read(std::istream& is) {
  Witness w;
  std::string text;
  std::size_t line = 0;
  std::size_t expected = 0;
  const auto bad = [&](const std::string& what) {
    return ValidationError("witness line " + std::to_string(line) + ": " + what,
                           {"witness"});
  };
  try {
    if (!std::getline(is, text)) throw bad("empty witness");
    ++line;
    const Json h = Json::parse(text);
    if (h.value("kind", "") != "witness") throw bad("not a witness header");
    w.n = h.at("n").get<std::size_t>();
    Footprint f(w.n);
    w.algo = parse_algorithm(h.at("algo").get<std::string>());
    w.ids = h.at("ids").get<std::vector<RobotId>>();
    for (const Json& c : h.at("chirality")) {
      w.chirality.push_back(parse_chirality(c.get<std::string>()));
    }
    w.forbidden_node = h.at("forbidden_node").get<NodeIndex>();
    if (!h.at("missing_edge").is_null()) {
      w.missing_edge = h.at("missing_edge").get<EdgeIndex>();
    }
    for (const Json& r : h.at("initial")) {
      w.initial.robots.push_back(make_robot(
          r.at("id").get<RobotId>(), r.at("pos").get<NodeIndex>(),
          parse_local_dir(r.at("dir").get<std::string>()),
          parse_chirality(r.at("chirality").get<std::string>()),
          r.at("i").get<std::int64_t>(), r.at("nrpea").get<std::uint32_t>(),
          r.at("hmpea").get<bool>()));
    }
    w.initial.validate(f);
    expected = h.at("length").get<std::size_t>();
    while (std::getline(is, text)) {
      ++line;
      if (text.empty()) continue;
      const Json s = Json::parse(text);
      if (s.at("phase").get<std::size_t>() != w.steps.size()) {
        throw bad("phases out of order");
      }
      WitnessStep st;
      st.key = s.at("key").get<std::string>();
      st.absent = EdgeSet(s.at("absent").get<std::uint64_t>());
      st.next = s.at("next").get<std::size_t>();
      w.steps.push_back(st);
    }
  } catch (const Json::exception& e) {
    throw bad(e.what());
  }
  if (w.steps.empty() || w.steps.size() != expected) {
    throw bad("step count does not match the header");
  }
  for (const WitnessStep& s : w.steps) {
    if (s.next >= w.steps.size()) throw bad("next phase out of range");
  }
  return w;
}

Witness Witness::load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ValidationError("cannot open witness " + path, {"adversary"});
  return read(is);
}

WitnessAdversary::WitnessAdversary(Witness w) : w_(std::move(w)) {
  for (std::size_t k = 0; k < w_.steps.size(); ++k) {
    by_key_.emplace(w_.steps[k].key, k);
  }
}

namespace {

Configuration rotated(const Configuration& c, std::size_t n, NodeIndex r) {
  Configuration out = c;
  for (RobotState& s : out.robots) {
    s.position = static_cast<NodeIndex>((s.position + r) % n);
  }
  return out;
}

}  // namespace

EdgeSet WitnessAdversary::choose(const Configuration& config, Round t) {
  const std::size_t n = w_.n;
  const EdgeSet all = EdgeSet::all(n);
  if (lost_) return all;
  if (!rotation_) {
    for (NodeIndex r = 0; r < n && !rotation_; ++r) {
      const std::string key = configuration_key(rotated(config, n, r));
      if (w_.steps[0].key == key) {
        rotation_ = r;
        phase_ = 0;
      } else if (by_key_.count(key)) {
        rotation_ = r;
        phase_ = by_key_.at(key);
      }
    }
    if (!rotation_) {
      lost_ = true;
      return all;
    }
  }
  const std::string key = configuration_key(rotated(config, n, *rotation_));
  if (w_.steps[phase_].key != key) {
    const auto it = by_key_.find(key);
    if (it == by_key_.end()) {
      lost_ = true;
      return all;
    }
    phase_ = it->second;
  }
  (void)t;
  const WitnessStep& s = w_.steps[phase_];
  phase_ = s.next;
  EdgeSet absent;
  for (EdgeIndex e : s.absent.indices()) {
    absent = absent.with(static_cast<EdgeIndex>((e + n - *rotation_) % n));
  }
  return all.minus(absent);
}

std::string WitnessAdversary::describe() const {
  return "witness(L=" + std::to_string(w_.steps.size()) + ")";
}

std::vector<MissingEdge> WitnessAdversary::eventual_missing() const {
  if (!w_.missing_edge) return {};
  const NodeIndex r = rotation_.value_or(0);
  return {MissingEdge{
      static_cast<EdgeIndex>((*w_.missing_edge + w_.n - r) % w_.n), 0}};
}

std::string to_string(SearchVerdict v) {
  switch (v) {
    case SearchVerdict::ConfinableForever: return "ConfinableForever";
    case SearchVerdict::NotConfinable: return "NotConfinable";
    case SearchVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string SearchResult::str() const {
  std::ostringstream os;
  os << to_string(verdict) << " explored=" << explored_states
     << " budget=" << budget << " space=" << state_space;
  if (witness) {
    os << " cycle=" << witness->steps.size() << " chirality=";
    for (std::size_t k = 0; k < witness->chirality.size(); ++k) {
      os << (k ? "," : "") << to_string(witness->chirality[k]);
    }
    os << " missing_edge="
       << (witness->missing_edge ? std::to_string(*witness->missing_edge)
                                 : std::string("none"));
  }
  return os.str();
}

}  // namespace ringsweep
