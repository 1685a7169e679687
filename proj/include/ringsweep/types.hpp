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
#include <stdexcept>
#include <string>
#include <vector>

namespace ringsweep {

using NodeIndex = std::uint32_t;
using EdgeIndex = std::uint32_t;
using Round = std::uint64_t;
using RobotId = std::uint32_t;

// Local port label chosen by a robot's own chirality.
enum class LocalDir : std::uint8_t { Left, Right };

enum class Chirality : std::uint8_t { RightIsClockwise, RightIsCounterClockwise };

// Direction as seen by an external observer; clockwise means increasing node
// index.
enum class GlobalDir : std::uint8_t { Clockwise, CounterClockwise };

enum class Algorithm : std::uint8_t { Pef3, Pef2 };

constexpr LocalDir opposite(LocalDir d) {
  return d == LocalDir::Left ? LocalDir::Right : LocalDir::Left;
}

constexpr GlobalDir opposite(GlobalDir d) {
  return d == GlobalDir::Clockwise ? GlobalDir::CounterClockwise
                                   : GlobalDir::Clockwise;
}

constexpr GlobalDir to_global(LocalDir d, Chirality c) {
  const bool right = d == LocalDir::Right;
  const bool right_is_cw = c == Chirality::RightIsClockwise;
  return right == right_is_cw ? GlobalDir::Clockwise
                              : GlobalDir::CounterClockwise;
}

constexpr LocalDir to_local(GlobalDir g, Chirality c) {
  const bool cw = g == GlobalDir::Clockwise;
  const bool right_is_cw = c == Chirality::RightIsClockwise;
  return cw == right_is_cw ? LocalDir::Right : LocalDir::Left;
}

std::string to_string(LocalDir d);
std::string to_string(Chirality c);
std::string to_string(GlobalDir d);
std::string to_string(Algorithm a);

LocalDir parse_local_dir(const std::string& s);
Chirality parse_chirality(const std::string& s);
GlobalDir parse_global_dir(const std::string& s);
Algorithm parse_algorithm(const std::string& s);

/// Raised on bad user input. `fields()` names every offending key so a
/// caller can report all of them at once.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& message,
                           std::vector<std::string> fields = {});
  const std::vector<std::string>& fields() const { return fields_; }

 private:
  std::vector<std::string> fields_;
};

}  // namespace ringsweep
