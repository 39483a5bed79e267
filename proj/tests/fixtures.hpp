// Copyright 2026 The rieszmix Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include "rieszmix/cli.hpp"
#include "rieszmix/rieszmix.hpp"
#include "oracle.hpp"

namespace fixtures {

using namespace rieszmix;

inline Rational q(const char* text) { return parse_rational(text); }

inline LatticeFunction fn(const GroundSpace& s, std::initializer_list<Rational> values) {
  return LatticeFunction(s, std::vector<Rational>(values));
}

/// S1: uniform probability on a, b, c, d in one block.
inline GroundSpace s1() {
  return GroundSpace::build({{"a", q("1/4")}, {"b", q("1/4")}, {"c", q("1/4")}, {"d", q("1/4")}}, {{"a", "b", "c", "d"}});
}

/// S2: a..d of weight 1 in the first block; e (1) and f (3) in the second.
inline GroundSpace s2() {
  return GroundSpace::build(
      {{"a", q("1")}, {"b", q("1")}, {"c", q("1")}, {"d", q("1")}, {"e", q("1")}, {"f", q("3")}},
      {{"a", "b", "c", "d"}, {"e", "f"}});
}

inline Partition c1(const GroundSpace& s) { return build_partition(s, {{"a", "b"}, {"c", "d"}}, true); }
inline Partition c2(const GroundSpace& s) { return build_partition(s, {{"a", "c"}, {"b", "d"}}, true); }
inline Partition cd(const GroundSpace& s) { return build_partition(s, {{"a", "b"}, {"c", "d"}, {"e"}, {"f"}}, true); }

/// Oracle encodings: cell label per point, block index per point, weights.
inline oracle::Labels labels_of(const Partition& p) {
  oracle::Labels out(p.space().size());
  for (PointIndex i = 0; i < out.size(); ++i) out[i] = static_cast<int>(p.cell_of(i));
  return out;
}
inline oracle::Labels block_labels(const GroundSpace& s) {
  oracle::Labels out(s.size());
  for (PointIndex i = 0; i < out.size(); ++i) out[i] = static_cast<int>(s.block_of(i));
  return out;
}
inline oracle::Vec weights_of(const GroundSpace& s) { return {s.weights().begin(), s.weights().end()}; }

inline std::string fixture_path(const char* name) { return std::string(RIESZMIX_FIXTURE_DIR) + "/" + name; }

}  // namespace fixtures
