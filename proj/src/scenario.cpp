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

#include "ringsweep/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace ringsweep {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

std::uint64_t to_u64(const std::string& raw, const std::string& field) {
  const std::string s = trim(raw);
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isdigit(c) != 0;
      })) {
    throw ValidationError(field + ": expected a non-negative integer, got '" +
                              s + "'",
                          {field});
  }
  try {
    return std::stoull(s);
  } catch (const std::out_of_range&) {
    throw ValidationError(field + ": integer out of range", {field});
  }
}

std::int64_t to_i64(const std::string& raw, const std::string& field) {
  const std::string s = trim(raw);
  std::size_t used = 0;
  try {
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError(field + ": expected an integer, got '" + s + "'",
                          {field});
  }
}

double to_double(const std::string& raw, const std::string& field) {
  const std::string s = trim(raw);
  std::size_t used = 0;
  try {
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError(field + ": expected a number, got '" + s + "'",
                          {field});
  }
}

bool to_bool(const std::string& raw, const std::string& field) {
  const std::string s = trim(raw);
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw ValidationError(field + ": expected true or false, got '" + s + "'",
                        {field});
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

struct AdversarySpec {
  enum Kind { None, Confinement, Greedy, Witness } kind = None;
  Round cap = 0;
  std::string path;
};

AdversarySpec parse_adversary(const std::string& text) {
  AdversarySpec a;
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string tail =
      colon == std::string::npos ? std::string() : text.substr(colon + 1);
  if (head == "none" && colon == std::string::npos) return a;
  if (head == "confinement" || head == "greedy") {
    a.kind = head == "confinement" ? AdversarySpec::Confinement
                                   : AdversarySpec::Greedy;
    if (colon != std::string::npos) a.cap = to_u64(tail, "adversary");
    return a;
  }
  if (head == "witness" && !tail.empty()) {
    a.kind = AdversarySpec::Witness;
    a.path = tail;
    return a;
  }
  throw ValidationError("adversary: expected none, confinement[:W], greedy[:W] "
                        "or witness:<path>, got '" + text + "'",
                        {"adversary"});
}

}  // namespace

std::string RobotSpec::str() const {
  std::string s = "id=" + std::to_string(id);
  if (pos) s += ", pos=" + std::to_string(*pos);
  if (dir) s += ", dir=" + to_string(*dir);
  if (chirality) s += ", chirality=" + to_string(*chirality);
  if (i) s += ", i=" + std::to_string(*i);
  if (nrpea) s += ", nrpea=" + std::to_string(*nrpea);
  if (hmpea) s += std::string(", hmpea=") + (*hmpea ? "true" : "false");
  return s;
}

RobotSpec RobotSpec::parse(const std::string& text) {
  RobotSpec r;
  bool have_id = false;
  for (const std::string& part : split(text, ',')) {
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("robot: expected key=value, got '" + part + "'",
                            {"robot"});
    }
    const std::string k = trim(part.substr(0, eq));
    const std::string v = trim(part.substr(eq + 1));
    if (k == "id") {
      r.id = static_cast<RobotId>(to_u64(v, "robot"));
      have_id = true;
    } else if (k == "pos") {
      r.pos = static_cast<NodeIndex>(to_u64(v, "robot"));
    } else if (k == "dir") {
      r.dir = parse_local_dir(v);
    } else if (k == "chirality") {
      r.chirality = parse_chirality(v);
    } else if (k == "i") {
      r.i = to_i64(v, "robot");
    } else if (k == "nrpea") {
      r.nrpea = static_cast<std::uint32_t>(to_u64(v, "robot"));
    } else if (k == "hmpea") {
      r.hmpea = to_bool(v, "robot");
    } else {
      throw ValidationError("robot: unknown field '" + k + "'", {"robot"});
    }
  }
  if (!have_id) throw ValidationError("robot: id is required", {"robot"});
  return r;
}

std::string to_string(ScheduleKind k) {
  switch (k) {
    case ScheduleKind::Static: return "static";
    case ScheduleKind::Recurrent: return "recurrent";
    case ScheduleKind::EventualMissing: return "eventual_missing";
    case ScheduleKind::RemovalList: return "removal_list";
  }
  return "?";
}

ScheduleKind parse_schedule_kind(const std::string& s) {
  if (s == "static") return ScheduleKind::Static;
  if (s == "recurrent") return ScheduleKind::Recurrent;
  if (s == "eventual_missing") return ScheduleKind::EventualMissing;
  if (s == "removal_list") return ScheduleKind::RemovalList;
  throw ValidationError("schedule: expected static, recurrent, "
                        "eventual_missing or removal_list, got '" + s + "'",
                        {"schedule"});
}

void Scenario::set(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "n") {
    n = static_cast<std::size_t>(to_u64(v, "n"));
  } else if (key == "algo") {
    algo = parse_algorithm(v);
  } else if (key == "robots") {
    std::vector<RobotSpec> next;
    for (const std::string& id : split(v, ',')) {
      if (id.empty()) continue;
      RobotSpec r;
      r.id = static_cast<RobotId>(to_u64(id, "robots"));
      const auto it = std::find_if(robots.begin(), robots.end(),
                                   [&](const RobotSpec& x) { return x.id == r.id; });
      next.push_back(it == robots.end() ? r : *it);
    }
    robots = std::move(next);
  } else if (key == "robot") {
    const RobotSpec r = RobotSpec::parse(v);
    const auto it = std::find_if(robots.begin(), robots.end(),
                                 [&](const RobotSpec& x) { return x.id == r.id; });
    if (it == robots.end()) {
      robots.push_back(r);
    } else {
      if (r.pos) it->pos = r.pos;
      if (r.dir) it->dir = r.dir;
      if (r.chirality) it->chirality = r.chirality;
      if (r.i) it->i = r.i;
      if (r.nrpea) it->nrpea = r.nrpea;
      if (r.hmpea) it->hmpea = r.hmpea;
    }
  } else if (key == "schedule") {
    schedule = parse_schedule_kind(v);
  } else if (key == "seed") {
    seed = to_u64(v, "seed");
  } else if (key == "p") {
    p = to_double(v, "p");
  } else if (key == "recurrence_bound") {
    recurrence_bound = to_u64(v, "recurrence_bound");
  } else if (key == "missing_edge") {
    missing_edge = static_cast<EdgeIndex>(to_u64(v, "missing_edge"));
  } else if (key == "cutoff") {
    cutoff = to_u64(v, "cutoff");
  } else if (key == "removals") {
    removals = EdgeRemovalSpec::parse(v);
  } else if (key == "rounds") {
    rounds = to_u64(v, "rounds");
  } else if (key == "adversary") {
    parse_adversary(v);
    adversary = v;
  } else if (key == "index_rule") {
    options.index_rule = parse_index_rule(v);
  } else if (key == "mutation") {
    options.mutation = parse_mutation(v);
  } else {
    throw ValidationError("unknown scenario key '" + key + "'", {key});
  }
}

void Scenario::validate() const {
  std::vector<std::string> fields;
  std::vector<std::string> reasons;
  const auto bad = [&](const std::string& f, const std::string& why) {
    if (std::find(fields.begin(), fields.end(), f) == fields.end()) {
      fields.push_back(f);
    }
    reasons.push_back(f + ": " + why);
  };
  const AdversarySpec adv = parse_adversary(adversary);
  const bool witness = adv.kind == AdversarySpec::Witness;

  if (!n) {
    if (!witness) bad("n", "required");
  } else if (*n < 3 || *n > kMaxRingSize) {
    bad("n", "must be between 3 and " + std::to_string(kMaxRingSize));
  }
  if (robots.empty() && !witness) bad("robots", "at least one robot id required");
  std::set<RobotId> ids;
  for (const RobotSpec& r : robots) {
    if (!ids.insert(r.id).second) bad("robots", "duplicate id " + std::to_string(r.id));
    if (r.id >= (RobotId{1} << 30)) bad("robots", "ids must be below 2^30");
    if (r.pos && n && *r.pos >= *n) {
      bad("robot", "position " + std::to_string(*r.pos) + " outside the ring");
    }
  }
  if (!(p >= 0.0 && p <= 1.0)) bad("p", "must lie in [0, 1]");
  if (recurrence_bound < 1) bad("recurrence_bound", "must be at least 1");
  if (schedule == ScheduleKind::EventualMissing && n && missing_edge >= *n) {
    bad("missing_edge", "not an edge of the ring");
  }
  for (const Removal& r : removals.removals) {
    if (n && r.edge >= *n) {
      bad("removals", "edge " + std::to_string(r.edge) + " not in the ring");
    }
  }
  if (rounds < 1) bad("rounds", "must be at least 1");
  if (adv.kind == AdversarySpec::Confinement) {
    if (robots.size() != 2) bad("adversary", "confinement drives exactly two robots");
    if (n && *n < 4) bad("adversary", "confinement needs n >= 4");
  }
  if (!fields.empty()) {
    std::string msg = "invalid scenario:";
    for (const std::string& r : reasons) msg += "\n  " + r;
    throw ValidationError(msg, fields);
  }
}

std::vector<std::pair<std::string, std::string>> Scenario::echo() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("n", n ? std::to_string(*n) : std::string());
  out.emplace_back("algo", to_string(algo));
  std::string ids;
  for (std::size_t k = 0; k < robots.size(); ++k) {
    ids += (k ? "," : "") + std::to_string(robots[k].id);
  }
  out.emplace_back("robots", ids);
  for (const RobotSpec& r : robots) {
    if (r.pos || r.dir || r.chirality || r.i || r.nrpea || r.hmpea) {
      out.emplace_back("robot." + std::to_string(r.id), r.str());
    }
  }
  out.emplace_back("schedule", to_string(schedule));
  out.emplace_back("seed", std::to_string(seed));
  out.emplace_back("p", fmt_double(p));
  out.emplace_back("recurrence_bound", std::to_string(recurrence_bound));
  out.emplace_back("missing_edge", std::to_string(missing_edge));
  out.emplace_back("cutoff", std::to_string(cutoff));
  out.emplace_back("removals", removals.str());
  out.emplace_back("rounds", std::to_string(rounds));
  out.emplace_back("adversary", adversary);
  out.emplace_back("index_rule", to_string(options.index_rule));
  out.emplace_back("mutation", to_string(options.mutation));
  return out;
}

Scenario parse_scenario(std::istream& is, Scenario base) {
  Scenario s = std::move(base);
  std::string line;
  std::size_t number = 0;
  while (std::getline(is, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("scenario line " + std::to_string(number) +
                                ": expected key = value",
                            {"scenario"});
    }
    try {
      s.set(trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const ValidationError& e) {
      throw ValidationError("scenario line " + std::to_string(number) + ": " +
                                e.what(),
                            e.fields());
    }
  }
  return s;
}

Scenario load_scenario(const std::string& path, Scenario base) {
  std::ifstream is(path);
  if (!is) throw ValidationError("cannot open scenario " + path, {"scenario"});
  return parse_scenario(is, std::move(base));
}

EvolvingRing build_ring(const Scenario& s) {
  const std::size_t n = s.n.value();
  EvolvingRing ring = static_ring(n);
  switch (s.schedule) {
    case ScheduleKind::Static:
    case ScheduleKind::RemovalList:
      break;
    case ScheduleKind::Recurrent:
      ring = recurrent_random(n, s.p, s.recurrence_bound, s.seed);
      break;
    case ScheduleKind::EventualMissing:
      ring = eventual_missing(n, s.missing_edge, s.cutoff, s.p,
                              s.recurrence_bound, s.seed);
      break;
  }
  if (!s.removals.removals.empty()) ring = remove(ring, s.removals);
  return ring;
}

Configuration build_initial(const Scenario& s) {
  std::vector<RobotId> ids;
  for (const RobotSpec& r : s.robots) ids.push_back(r.id);
  Configuration c = fuzz_initial(s.n.value(), ids, s.seed);
  for (std::size_t k = 0; k < s.robots.size(); ++k) {
    const RobotSpec& spec = s.robots[k];
    RobotState& r = c.robots[k];
    if (spec.pos) r.position = *spec.pos;
    if (spec.dir) r.dir = *spec.dir;
    if (spec.chirality) r.chirality = *spec.chirality;
    if (spec.i) r.i = *spec.i;
    if (spec.nrpea) r.nrpea = *spec.nrpea;
    if (spec.hmpea) r.hmpea = *spec.hmpea;
  }
  return c;
}

std::unique_ptr<EdgeSource> build_source(const Scenario& s) {
  const AdversarySpec adv = parse_adversary(s.adversary);
  switch (adv.kind) {
    case AdversarySpec::None:
      return std::make_unique<ScheduleSource>(build_ring(s));
    case AdversarySpec::Confinement:
      return std::make_unique<ConfinementAdversary>(s.n.value(), adv.cap);
    case AdversarySpec::Greedy:
      return std::make_unique<GreedyConfinementAdversary>(s.n.value(), s.algo,
                                                          s.options, adv.cap);
    case AdversarySpec::Witness:
      return std::make_unique<WitnessAdversary>(Witness::load(adv.path));
  }
  return nullptr;
}

RunOutput run_scenario(const Scenario& input) {
  input.validate();
  Scenario s = input;
  const AdversarySpec adv = parse_adversary(s.adversary);
  std::unique_ptr<EdgeSource> source;
  Configuration initial;
  if (adv.kind == AdversarySpec::Witness) {
    Witness w = Witness::load(adv.path);
    std::vector<std::string> bad;
    if (s.n && *s.n != w.n) bad.push_back("n");
    if (!s.robots.empty()) {
      std::vector<RobotId> ids;
      for (const RobotSpec& r : s.robots) ids.push_back(r.id);
      if (ids != w.ids) bad.push_back("robots");
    }
    if (!bad.empty()) {
      throw ValidationError("scenario does not match the witness file", bad);
    }
    s.n = w.n;
    s.algo = w.algo;
    s.robots.clear();
    for (const RobotState& r : w.initial.robots) {
      RobotSpec spec;
      spec.id = r.id;
      spec.pos = r.position;
      spec.dir = r.dir;
      spec.chirality = r.chirality;
      spec.i = r.i;
      spec.nrpea = r.nrpea;
      spec.hmpea = r.hmpea;
      s.robots.push_back(spec);
    }
    initial = w.initial;
    source = std::make_unique<WitnessAdversary>(std::move(w));
  } else {
    initial = build_initial(s);
    source = build_source(s);
  }

  TraceHeader header;
  header.seed = s.seed;
  header.adversary = s.adversary;
  header.scenario = s.echo();
  RunOutput out;
  const Footprint f(s.n.value());
  out.trace = run(f, initial, *source, s.algo, s.options, s.rounds, header);
  out.trace.header.schedule = source->describe();

  if (const auto* c = dynamic_cast<const ConfinementAdversary*>(source.get())) {
    out.adversary_outcome =
        to_string(c->outcome()) + " after " +
        std::to_string(out.trace.horizon()) + " rounds";
  } else if (const auto* w = dynamic_cast<const WitnessAdversary*>(source.get())) {
    out.adversary_outcome = w->exhausted() ? "witness lost" : "witness followed";
  }
  return out;
}

}  // namespace ringsweep
