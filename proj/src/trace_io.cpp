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

#include "ringsweep/trace_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ringsweep {

using Json = nlohmann::ordered_json;

namespace {

Json robot_initial_json(const RobotState& r) {
  Json j;
  j["id"] = r.id;
  j["pos"] = r.position;
  j["dir"] = to_string(r.dir);
  j["chirality"] = to_string(r.chirality);
  j["i"] = r.i;
  j["nrpea"] = r.nrpea;
  j["hmpea"] = r.hmpea;
  return j;
}

Json header_json(const TraceHeader& h) {
  Json j;
  j["kind"] = "header";
  j["n"] = h.n;
  j["algo"] = to_string(h.algo);
  j["index_rule"] = to_string(h.options.index_rule);
  j["mutation"] = to_string(h.options.mutation);
  j["seed"] = h.seed;
  j["schedule"] = h.schedule;
  j["adversary"] = h.adversary;
  if (h.missing_edge) {
    j["missing_edge"] = {{"edge", h.missing_edge->edge},
                         {"cutoff", h.missing_edge->cutoff}};
  } else {
    j["missing_edge"] = nullptr;
  }
  Json sc = Json::object();
  for (const auto& [k, v] : h.scenario) sc[k] = v;
  j["scenario"] = sc;
  Json init = Json::array();
  for (const RobotState& r : h.initial) init.push_back(robot_initial_json(r));
  j["initial"] = init;
  return j;
}

Json round_json(const RoundRecord& r) {
  Json j;
  j["t"] = r.t;
  j["edges"] = r.edges.mask();
  Json robots = Json::array();
  for (const RobotRecord& rr : r.robots) {
    Json x;
    x["id"] = rr.id();
    x["pos"] = rr.position_before;
    x["gdir"] = to_string(rr.gdir());
    x["i"] = rr.state.i;
    x["nrpea"] = rr.state.nrpea;
    x["hmpea"] = rr.state.hmpea;
    x["moved"] = rr.moved;
    robots.push_back(x);
  }
  j["robots"] = robots;
  return j;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ValidationError("trace line " + std::to_string(line) + ": " + what,
                        {"trace"});
}

template <typename T>
T field(const Json& j, const char* key, std::size_t line) {
  if (!j.is_object() || !j.contains(key)) {
    fail(line, std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    fail(line, std::string("field '") + key + "' has the wrong type");
  }
}

TraceHeader parse_header(const Json& j, std::size_t line) {
  TraceHeader h;
  if (field<std::string>(j, "kind", line) != "header") {
    fail(line, "first line must be the header");
  }
  try {
    h.n = field<std::size_t>(j, "n", line);
    Footprint f(h.n);
    h.algo = parse_algorithm(field<std::string>(j, "algo", line));
    h.options.index_rule =
        parse_index_rule(field<std::string>(j, "index_rule", line));
    h.options.mutation = parse_mutation(field<std::string>(j, "mutation", line));
    h.seed = field<std::uint64_t>(j, "seed", line);
    h.schedule = field<std::string>(j, "schedule", line);
    h.adversary = field<std::string>(j, "adversary", line);
    if (j.contains("missing_edge") && !j["missing_edge"].is_null()) {
      const Json& m = j["missing_edge"];
      h.missing_edge = MissingEdge{field<EdgeIndex>(m, "edge", line),
                                   field<Round>(m, "cutoff", line)};
    }
    if (j.contains("scenario")) {
      for (const auto& [k, v] : j["scenario"].items()) {
        if (!v.is_string()) fail(line, "scenario values must be strings");
        h.scenario.emplace_back(k, v.get<std::string>());
      }
    }
    const Json init = field<Json>(j, "initial", line);
    if (!init.is_array() || init.empty()) fail(line, "no initial robots");
    for (const Json& r : init) {
      h.initial.push_back(make_robot(
          field<RobotId>(r, "id", line), field<NodeIndex>(r, "pos", line),
          parse_local_dir(field<std::string>(r, "dir", line)),
          parse_chirality(field<std::string>(r, "chirality", line)),
          field<std::int64_t>(r, "i", line),
          field<std::uint32_t>(r, "nrpea", line),
          field<bool>(r, "hmpea", line)));
    }
    Configuration{0, h.initial}.validate(f);
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    if (msg.rfind("trace line", 0) == 0) throw;
    fail(line, msg);
  }
  return h;
}

RoundRecord parse_round(const Json& j, const TraceHeader& h, const Footprint& f,
                        Round expected, std::size_t line) {
  RoundRecord r;
  r.t = field<Round>(j, "t", line);
  if (r.t != expected) {
    fail(line, "expected round " + std::to_string(expected) + ", got " +
                   std::to_string(r.t));
  }
  const auto mask = field<std::uint64_t>(j, "edges", line);
  if ((mask & ~f.all_edges().mask()) != 0) fail(line, "edge mask out of range");
  r.edges = EdgeSet(mask);
  const Json robots = field<Json>(j, "robots", line);
  if (!robots.is_array() || robots.size() != h.initial.size()) {
    fail(line, "robot list does not match the header");
  }
  std::vector<NodeIndex> pos;
  for (std::size_t k = 0; k < robots.size(); ++k) {
    const Json& x = robots[k];
    const RobotState& base = h.initial[k];
    if (field<RobotId>(x, "id", line) != base.id) {
      fail(line, "robot order differs from the header");
    }
    RobotRecord rr;
    rr.position_before = field<NodeIndex>(x, "pos", line);
    if (rr.position_before >= f.size()) fail(line, "position out of range");
    GlobalDir g;
    try {
      g = parse_global_dir(field<std::string>(x, "gdir", line));
    } catch (const ValidationError& e) {
      fail(line, e.what());
    }
    rr.state = base;
    rr.state.position = rr.position_before;
    rr.state.dir = to_local(g, base.chirality);
    rr.state.i = field<std::int64_t>(x, "i", line);
    rr.state.nrpea = field<std::uint32_t>(x, "nrpea", line);
    rr.state.hmpea = field<bool>(x, "hmpea", line);
    rr.moved = field<bool>(x, "moved", line);
    rr.position_after =
        rr.moved ? f.neighbour(rr.position_before, g) : rr.position_before;
    r.robots.push_back(rr);
  }
  Configuration pre;
  for (const RobotRecord& rr : r.robots) pre.robots.push_back(rr.state);
  for (std::size_t k = 0; k < r.robots.size(); ++k) {
    r.robots[k].snapshot = look(f, pre, k, r.edges);
  }
  return r;
}

}  // namespace

void write_trace(std::ostream& os, const Trace& trace) {
  os << header_json(trace.header).dump() << '\n';
  for (const RoundRecord& r : trace.rounds) os << round_json(r).dump() << '\n';
}

std::string trace_to_string(const Trace& trace) {
  std::ostringstream os;
  write_trace(os, trace);
  return os.str();
}

void save_trace(const std::string& path, const Trace& trace) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  write_trace(os, trace);
  if (!os) throw std::runtime_error("write failed for " + path);
}

Trace read_trace(std::istream& is) {
  Trace trace;
  std::string text;
  std::size_t line = 0;
  bool have_header = false;
  std::optional<Footprint> f;
  while (std::getline(is, text)) {
    ++line;
    if (text.empty()) continue;
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      fail(line, std::string("not valid JSON (") + e.what() + ")");
    }
    if (!have_header) {
      trace.header = parse_header(j, line);
      f.emplace(trace.header.n);
      have_header = true;
      continue;
    }
    trace.rounds.push_back(
        parse_round(j, trace.header, *f, trace.rounds.size(), line));
  }
  if (!have_header) fail(line == 0 ? 1 : line, "empty trace");
  return trace;
}

Trace load_trace(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ValidationError("cannot open trace " + path, {"trace"});
  return read_trace(is);
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace ringsweep
