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

#include "ringsweep/types.hpp"

namespace ringsweep {

std::string to_string(LocalDir d) { return d == LocalDir::Left ? "L" : "R"; }

std::string to_string(Chirality c) {
  return c == Chirality::RightIsClockwise ? "cw" : "ccw";
}

std::string to_string(GlobalDir d) {
  return d == GlobalDir::Clockwise ? "CW" : "CCW";
}

std::string to_string(Algorithm a) {
  return a == Algorithm::Pef3 ? "pef3" : "pef2";
}

LocalDir parse_local_dir(const std::string& s) {
  if (s == "L" || s == "l" || s == "left") return LocalDir::Left;
  if (s == "R" || s == "r" || s == "right") return LocalDir::Right;
  throw ValidationError("bad direction '" + s + "' (expected L or R)", {"dir"});
}

Chirality parse_chirality(const std::string& s) {
  if (s == "cw") return Chirality::RightIsClockwise;
  if (s == "ccw") return Chirality::RightIsCounterClockwise;
  throw ValidationError("bad chirality '" + s + "' (expected cw or ccw)",
                        {"chirality"});
}

GlobalDir parse_global_dir(const std::string& s) {
  if (s == "CW") return GlobalDir::Clockwise;
  if (s == "CCW") return GlobalDir::CounterClockwise;
  throw ValidationError("bad global direction '" + s + "' (expected CW or CCW)",
                        {"gdir"});
}

Algorithm parse_algorithm(const std::string& s) {
  if (s == "pef3" || s == "PEF3") return Algorithm::Pef3;
  if (s == "pef2" || s == "PEF2") return Algorithm::Pef2;
  throw ValidationError("bad algorithm '" + s + "' (expected pef3 or pef2)",
                        {"algo"});
}

ValidationError::ValidationError(const std::string& message,
                                 std::vector<std::string> fields)
    : std::invalid_argument(message), fields_(std::move(fields)) {}

}  // namespace ringsweep
