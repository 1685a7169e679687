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
#include <iosfwd>
#include <string>

#include "ringsweep/engine.hpp"

namespace ringsweep {

/// Trace files are JSON Lines: a header object, then one object per round
/// with `t`, `edges` (bit k set when edge k is present) and `robots`. Each
/// robot entry holds the position before Move, the global direction, read
/// index and counters after Compute, and whether it moved.
void write_trace(std::ostream& os, const Trace& trace);
std::string trace_to_string(const Trace& trace);
void save_trace(const std::string& path, const Trace& trace);

/// Rebuilds the full round records, including Look snapshots, from the
/// file. Malformed input raises ValidationError naming the line.
Trace read_trace(std::istream& is);
Trace load_trace(const std::string& path);

/// 64-bit FNV-1a, used to pin golden files.
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace ringsweep
