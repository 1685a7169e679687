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

#include "ringsweep/ring_model.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ringsweep {

std::vector<EdgeIndex> EdgeSet::indices() const {
  std::vector<EdgeIndex> out;
  for (std::uint64_t m = mask_; m != 0; m &= m - 1) {
    out.push_back(static_cast<EdgeIndex>(std::countr_zero(m)));
  }
  return out;
}

std::string EdgeSet::str() const {
  std::string s = "{";
  bool first = true;
  for (EdgeIndex e : indices()) {
    if (!first) s += ",";
    s += std::to_string(e);
    first = false;
  }
  return s + "}";
}

Footprint::Footprint(std::size_t n) : n_(n) {
  if (n < 3 || n > kMaxRingSize) {
    throw ValidationError("ring size must be in [3, " +
                              std::to_string(kMaxRingSize) + "], got " +
                              std::to_string(n),
                          {"n"});
  }
}

void EdgeRemovalSpec::validate() const {
  for (const Removal& r : removals) {
    if (r.last && *r.last < r.first) {
      throw ValidationError("removal range for edge " + std::to_string(r.edge) +
                                " ends before it starts",
                            {"removals"});
    }
  }
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::uint64_t parse_u64(const std::string& s, const std::string& field) {
  const std::string t = trim(s);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) {
        return std::isdigit(c) != 0;
      })) {
    throw ValidationError("expected a non-negative integer, got '" + t + "'",
                          {field});
  }
  try {
    return std::stoull(t);
  } catch (const std::out_of_range&) {
    throw ValidationError("integer out of range: '" + t + "'", {field});
  }
}

}  // namespace

EdgeRemovalSpec EdgeRemovalSpec::parse(const std::string& text) {
  EdgeRemovalSpec spec;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    const auto open = item.find('[');
    const auto comma = item.find(',');
    const auto close = item.find(']');
    if (colon == std::string::npos || open == std::string::npos ||
        comma == std::string::npos || close == std::string::npos ||
        !(colon < open && open < comma && comma < close)) {
      throw ValidationError("malformed removal '" + item +
                                "' (expected edge:[start,end])",
                            {"removals"});
    }
    Removal r;
    r.edge = static_cast<EdgeIndex>(parse_u64(item.substr(0, colon), "removals"));
    r.first = parse_u64(item.substr(open + 1, comma - open - 1), "removals");
    const std::string last = trim(item.substr(comma + 1, close - comma - 1));
    if (last != "inf") r.last = parse_u64(last, "removals");
    spec.removals.push_back(r);
  }
  spec.validate();
  return spec;
}

std::string EdgeRemovalSpec::str() const {
  std::string s;
  for (std::size_t k = 0; k < removals.size(); ++k) {
    const Removal& r = removals[k];
    if (k) s += ";";
    s += std::to_string(r.edge) + ":[" + std::to_string(r.first) + "," +
         (r.last ? std::to_string(*r.last) : std::string("inf")) + "]";
  }
  return s;
}

EvolvingRing::EvolvingRing(Footprint footprint,
                           std::shared_ptr<const Schedule> schedule)
    : footprint_(footprint), schedule_(std::move(schedule)) {
  if (!schedule_) throw std::invalid_argument("null schedule");
}

EdgeSet EvolvingRing::edges_at(Round t) const {
  return schedule_->edges_at(t) & footprint_.all_edges();
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class StaticSchedule final : public Schedule {
 public:
  explicit StaticSchedule(std::size_t n) : n_(n) {}
  EdgeSet edges_at(Round) const override { return EdgeSet::all(n_); }
  std::vector<MissingEdge> eventual_missing() const override { return {}; }
  std::string describe() const override { return "static"; }

 private:
  std::size_t n_;
};

class RecurrentSchedule final : public Schedule {
 public:
  RecurrentSchedule(std::size_t n, double p, Round bound, std::uint64_t seed)
      : n_(n), p_(p), bound_(bound), seed_(seed) {
    // p is compared against a 53-bit uniform; 2^53 * p rounded gives a
    // threshold that makes p = 1 always true and p = 0 never.
    threshold_ = static_cast<std::uint64_t>(p * 9007199254740992.0);
  }

  EdgeSet edges_at(Round t) const override {
    EdgeSet out;
    for (EdgeIndex e = 0; e < n_; ++e) {
      if (present(e, t)) out = out.with(e);
    }
    return out;
  }
  std::vector<MissingEdge> eventual_missing() const override { return {}; }
  std::string describe() const override {
    std::ostringstream os;
    os << "recurrent(p=" << p_ << ",B=" << bound_ << ",seed=" << seed_ << ")";
    return os.str();
  }

 private:
  bool draw(EdgeIndex e, Round t) const {
    if (threshold_ == 0) return false;
    const std::uint64_t h =
        splitmix64(splitmix64(splitmix64(seed_) ^ e) ^ t);
    return (h >> 11) < threshold_;
  }

  bool present(EdgeIndex e, Round t) const {
    if (draw(e, t)) return true;
    // Patched presences sit at multiples of B after the last drawn one; a
    // virtual drawn presence at round -1 anchors the first window.
    Round since = t + 1;
    for (Round s = t; s-- > 0;) {
      if (draw(e, s)) {
        since = t - s;
        break;
      }
    }
    return since % bound_ == 0;
  }

  std::size_t n_;
  double p_;
  Round bound_;
  std::uint64_t seed_;
  std::uint64_t threshold_;
};

class EventualMissingSchedule final : public Schedule {
 public:
  EventualMissingSchedule(std::shared_ptr<const Schedule> inner, MissingEdge m,
                          std::string inner_desc)
      : inner_(std::move(inner)), missing_(m), inner_desc_(std::move(inner_desc)) {}

  EdgeSet edges_at(Round t) const override {
    EdgeSet s = inner_->edges_at(t);
    return t >= missing_.cutoff ? s.without(missing_.edge) : s;
  }
  std::vector<MissingEdge> eventual_missing() const override {
    std::vector<MissingEdge> out;
    MissingEdge own = missing_;
    for (MissingEdge m : inner_->eventual_missing()) {
      if (m.edge == own.edge) {
        own.cutoff = std::min(own.cutoff, m.cutoff);
      } else {
        out.push_back(m);
      }
    }
    out.push_back(own);
    return out;
  }
  std::string describe() const override {
    return "eventual_missing(edge=" + std::to_string(missing_.edge) +
           ",T=" + std::to_string(missing_.cutoff) + ",inner=" + inner_desc_ +
           ")";
  }

 private:
  std::shared_ptr<const Schedule> inner_;
  MissingEdge missing_;
  std::string inner_desc_;
};

class RemovalSchedule final : public Schedule {
 public:
  RemovalSchedule(std::shared_ptr<const Schedule> inner, EdgeRemovalSpec spec,
                  std::string inner_desc)
      : inner_(std::move(inner)), spec_(std::move(spec)),
        inner_desc_(std::move(inner_desc)) {}

  EdgeSet edges_at(Round t) const override {
    EdgeSet s = inner_->edges_at(t);
    for (const Removal& r : spec_.removals) {
      if (r.covers(t)) s = s.without(r.edge);
    }
    return s;
  }
  std::vector<MissingEdge> eventual_missing() const override {
    std::vector<MissingEdge> out = inner_->eventual_missing();
    for (const Removal& r : spec_.removals) {
      if (r.last) continue;
      auto it = std::find_if(out.begin(), out.end(), [&](const MissingEdge& m) {
        return m.edge == r.edge;
      });
      if (it == out.end()) {
        out.push_back({r.edge, r.first});
      } else {
        it->cutoff = std::min(it->cutoff, r.first);
      }
    }
    return out;
  }
  std::string describe() const override {
    return "removal(" + spec_.str() + ",inner=" + inner_desc_ + ")";
  }

 private:
  std::shared_ptr<const Schedule> inner_;
  EdgeRemovalSpec spec_;
  std::string inner_desc_;
};

// Lets factories wrap an existing EvolvingRing's schedule without exposing
// the pointer publicly.
class RingSchedule final : public Schedule {
 public:
  explicit RingSchedule(EvolvingRing ring) : ring_(std::move(ring)) {}
  EdgeSet edges_at(Round t) const override { return ring_.edges_at(t); }
  std::vector<MissingEdge> eventual_missing() const override {
    return ring_.eventual_missing();
  }
  std::string describe() const override { return ring_.describe(); }

 private:
  EvolvingRing ring_;
};

}  // namespace

EvolvingRing static_ring(std::size_t n) {
  Footprint f(n);
  return EvolvingRing(f, std::make_shared<StaticSchedule>(n));
}

EvolvingRing recurrent_ring(std::size_t n, double p, Round bound,
                            std::uint64_t seed) {
  Footprint f(n);
  std::vector<std::string> bad;
  if (!(p >= 0.0 && p <= 1.0)) bad.push_back("p");
  if (bound < 1) bad.push_back("recurrence_bound");
  if (!bad.empty()) {
    throw ValidationError("recurrent schedule needs 0 <= p <= 1 and bound >= 1",
                          bad);
  }
  if (p >= 1.0) return static_ring(n);
  return EvolvingRing(f, std::make_shared<RecurrentSchedule>(n, p, bound, seed));
}

EvolvingRing with_eventual_missing(const EvolvingRing& inner, EdgeIndex edge,
                                   Round cutoff) {
  const Footprint& f = inner.footprint();
  if (edge >= f.edge_count()) {
    throw ValidationError("missing edge " + std::to_string(edge) +
                              " not in ring of size " + std::to_string(f.size()),
                          {"missing_edge"});
  }
  for (const MissingEdge& m : inner.eventual_missing()) {
    if (m.edge != edge) {
      throw ValidationError(
          "a ring can lose at most one edge forever; edge " +
              std::to_string(m.edge) + " is already missing",
          {"missing_edge"});
    }
  }
  return EvolvingRing(
      f, std::make_shared<EventualMissingSchedule>(
             std::make_shared<RingSchedule>(inner), MissingEdge{edge, cutoff},
             inner.describe()));
}

EvolvingRing remove(const EvolvingRing& ring, const EdgeRemovalSpec& spec) {
  spec.validate();
  for (const Removal& r : spec.removals) {
    if (r.edge >= ring.footprint().edge_count()) {
      throw ValidationError("removal names unknown edge " +
                                std::to_string(r.edge),
                            {"removals"});
    }
  }
  if (spec.removals.empty()) return ring;
  return EvolvingRing(ring.footprint(),
                      std::make_shared<RemovalSchedule>(
                          std::make_shared<RingSchedule>(ring), spec,
                          ring.describe()));
}

std::string to_string(EdgeClass c) {
  switch (c) {
    case EdgeClass::Static: return "Static";
    case EdgeClass::EdgeRecurrent: return "EdgeRecurrent";
    case EdgeClass::ConnectedOverTime: return "ConnectedOverTime";
    case EdgeClass::NotConnectedOverTime: return "NotConnectedOverTime";
  }
  return "?";
}

bool EdgeClassVerdict::satisfies(EdgeClass c) const {
  auto rank = [](EdgeClass k) {
    switch (k) {
      case EdgeClass::Static: return 0;
      case EdgeClass::EdgeRecurrent: return 1;
      case EdgeClass::ConnectedOverTime: return 2;
      case EdgeClass::NotConnectedOverTime: return 3;
    }
    return 3;
  };
  if (kind == EdgeClass::NotConnectedOverTime) {
    return c == EdgeClass::NotConnectedOverTime;
  }
  return c != EdgeClass::NotConnectedOverTime && rank(kind) <= rank(c);
}

std::string EdgeClassVerdict::str() const {
  std::ostringstream os;
  os << to_string(kind) << (provisional ? " (provisional" : " (")
     << ", horizon=" << horizon << ", B=" << bound
     << ", static=" << static_edges.str()
     << ", recurrent=" << recurrent_edges.str();
  for (const MissingEdge& m : missing_candidates) {
    os << ", missing edge " << m.edge << " from " << m.cutoff;
  }
  os << ")";
  return os.str();
}

EdgeClassVerdict classify_prefix(const EvolvingRing& ring, Round horizon,
                                 Round bound) {
  if (bound < 1 || horizon < bound) {
    throw ValidationError("classification needs horizon >= B >= 1",
                          {"horizon", "recurrence_bound"});
  }
  const std::size_t n = ring.footprint().size();
  std::vector<Round> run(n, 0);
  std::vector<Round> longest(n, 0);
  EdgeSet always = ring.footprint().all_edges();
  for (Round t = 0; t < horizon; ++t) {
    const EdgeSet present = ring.edges_at(t);
    always = always & present;
    for (EdgeIndex e = 0; e < n; ++e) {
      run[e] = present.contains(e) ? 0 : run[e] + 1;
      longest[e] = std::max(longest[e], run[e]);
    }
  }

  EdgeClassVerdict v;
  v.horizon = horizon;
  v.bound = bound;
  v.static_edges = always;
  for (EdgeIndex e = 0; e < n; ++e) {
    if (longest[e] < bound) {
      v.recurrent_edges = v.recurrent_edges.with(e);
    } else if (run[e] >= bound) {
      v.missing_candidates.push_back({e, horizon - run[e]});
    }
  }
  const EdgeSet all = ring.footprint().all_edges();
  if (always == all) {
    v.kind = EdgeClass::Static;
  } else if (v.recurrent_edges == all) {
    v.kind = EdgeClass::EdgeRecurrent;
  } else if (v.missing_candidates.size() <= 1) {
    v.kind = EdgeClass::ConnectedOverTime;
  } else {
    v.kind = EdgeClass::NotConnectedOverTime;
  }
  return v;
}

}  // namespace ringsweep
