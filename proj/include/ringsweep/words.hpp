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
#include <optional>
#include <string>

#include "ringsweep/types.hpp"

namespace ringsweep {

/// A finite binary word of length 1..64, indexed from 1.
class BitWord {
 public:
  static constexpr std::size_t kMaxLength = 64;

  BitWord() = default;
  /// Parses a string of '0' and '1'.
  static BitWord from_string(const std::string& bits);

  std::size_t size() const { return size_; }
  bool at(std::size_t i) const { return (bits_ >> (i - 1)) & 1u; }
  /// Cyclic access with a 0-based offset, as a factor of the infinite
  /// power of this word.
  bool cyclic(std::size_t k) const { return at(k % size_ + 1); }

  void push_back(bool b);
  BitWord complement() const;
  std::string str() const;

  bool operator==(const BitWord&) const = default;

 private:
  std::uint64_t bits_ = 0;
  std::size_t size_ = 0;
};

/// binary(id) with every bit doubled, followed by 010. Ids must fit in 30
/// bits so the word stays within 64 bits.
BitWord transform_identifier(RobotId id);

inline std::size_t transformed_length(RobotId id) {
  std::size_t bits = 1;
  while ((id >> bits) != 0) ++bits;
  return 2 * bits + 3;
}

inline BitWord complement(const BitWord& w) { return w.complement(); }

struct CommonFactor {
  std::size_t length = 0;
  /// True when a common factor of length `bound` exists; `length` then
  /// equals the bound and the real maximum may be larger.
  bool reached_bound = false;
};

/// Longest common factor of u^omega and v^omega, capped at `bound`, by brute
/// force over every alignment of the two cycles.
CommonFactor max_common_factor_len(const BitWord& u, const BitWord& v,
                                   std::size_t bound);

/// Runs synchronized direction draws for two robots from read indices iA and
/// iB (any value; they are normalized first). Returns the 1-based number of
/// the first call after which the two global directions differ, or nothing
/// if they agree for `cap` calls.
std::optional<std::uint64_t> divergence_rounds(RobotId idA, std::int64_t iA,
                                               Chirality chirA, RobotId idB,
                                               std::int64_t iB, Chirality chirB,
                                               std::uint64_t cap);

}  // namespace ringsweep
