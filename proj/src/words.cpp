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

#include "ringsweep/words.hpp"

#include <algorithm>

namespace ringsweep {

BitWord BitWord::from_string(const std::string& bits) {
  if (bits.empty() || bits.size() > kMaxLength) {
    throw ValidationError("bit word must have 1..64 letters", {"word"});
  }
  BitWord w;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw ValidationError("bit word may only contain 0 and 1", {"word"});
    }
    w.push_back(c == '1');
  }
  return w;
}

void BitWord::push_back(bool b) {
  if (size_ == kMaxLength) throw std::length_error("bit word full");
  if (b) bits_ |= std::uint64_t{1} << size_;
  ++size_;
}

BitWord BitWord::complement() const {
  BitWord w = *this;
  const std::uint64_t mask =
      size_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size_) - 1;
  w.bits_ = ~bits_ & mask;
  return w;
}

std::string BitWord::str() const {
  std::string s;
  s.reserve(size_);
  for (std::size_t i = 1; i <= size_; ++i) s += at(i) ? '1' : '0';
  return s;
}

BitWord transform_identifier(RobotId id) {
  if (id >= (RobotId{1} << 30)) {
    throw ValidationError("robot id " + std::to_string(id) +
                              " too large (must be < 2^30)",
                          {"id"});
  }
  int top = 0;
  while ((id >> (top + 1)) != 0) ++top;
  BitWord w;
  for (int b = top; b >= 0; --b) {
    const bool bit = (id >> b) & 1u;
    w.push_back(bit);
    w.push_back(bit);
  }
  w.push_back(false);
  w.push_back(true);
  w.push_back(false);
  return w;
}

CommonFactor max_common_factor_len(const BitWord& u, const BitWord& v,
                                   std::size_t bound) {
  if (bound < 1) throw ValidationError("bound must be >= 1", {"bound"});
  CommonFactor best;
  for (std::size_t a = 0; a < u.size(); ++a) {
    for (std::size_t b = 0; b < v.size(); ++b) {
      std::size_t k = 0;
      while (k < bound && u.cyclic(a + k) == v.cyclic(b + k)) ++k;
      if (k > best.length) best.length = k;
      if (k == bound) {
        best.reached_bound = true;
        return best;
      }
    }
  }
  return best;
}

namespace {

std::int64_t normalized(std::int64_t i, std::int64_t ell) {
  return ((i - 1) % ell + ell) % ell + 1;
}

}  // namespace

std::optional<std::uint64_t> divergence_rounds(RobotId idA, std::int64_t iA,
                                               Chirality chirA, RobotId idB,
                                               std::int64_t iB, Chirality chirB,
                                               std::uint64_t cap) {
  const BitWord wa = transform_identifier(idA);
  const BitWord wb = transform_identifier(idB);
  const auto la = static_cast<std::int64_t>(wa.size());
  const auto lb = static_cast<std::int64_t>(wb.size());
  std::int64_t a = normalized(iA, la);
  std::int64_t b = normalized(iB, lb);
  const bool same_frame = chirA == chirB;
  for (std::uint64_t call = 1; call <= cap; ++call) {
    a = a % la + 1;
    b = b % lb + 1;
    const bool bits_equal = wa.at(static_cast<std::size_t>(a)) ==
                            wb.at(static_cast<std::size_t>(b));
    if (bits_equal != same_frame) return call;
  }
  return std::nullopt;
}

}  // namespace ringsweep
