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

#include <vector>

#include "rieszmix/space.hpp"

namespace rieszmix {

/// Conditional expectation onto the functions constant on a partition's cells.
///
/// (Tf)(w) is the mu-weighted mean of f over the cell containing w. The operator is a
/// strictly positive projection with Te = e, and its range R(T) is the set of
/// cellwise-constant functions.
class CondExpectation {
 public:
  explicit CondExpectation(Partition partition) : partition_(std::move(partition)) {
    const GroundSpace& space = partition_.space();
    cell_masses_.reserve(partition_.cell_count());
    for (const auto& cell : partition_.cells()) {
      Rational mass = 0;
      for (PointIndex i : cell) mass += space.weight(i);
      cell_masses_.push_back(mass);
    }
  }

  /// T conditioning on the blocks.
  static CondExpectation over_blocks(const GroundSpace& space) { return CondExpectation(Partition::blocks(space)); }

  const Partition& partition() const { return partition_; }
  const GroundSpace& space() const { return partition_.space(); }
  const std::vector<Rational>& cell_masses() const { return cell_masses_; }

  /// Integral of f over cell c divided by the cell's mass.
  Rational cell_average(const LatticeFunction& f, std::size_t c) const {
    Rational acc = 0;
    for (PointIndex i : partition_.cell(c)) acc += f[i] * space().weight(i);
    return acc / cell_masses_[c];
  }

  LatticeFunction apply(const LatticeFunction& f) const {
    require_same_space(space(), f.space(), "cond_expect");
    std::vector<Rational> out(f.size());
    for (std::size_t c = 0; c < partition_.cell_count(); ++c) {
      Rational avg = cell_average(f, c);
      for (PointIndex i : partition_.cell(c)) out[i] = avg;
    }
    return LatticeFunction(space(), std::move(out));
  }

  LatticeFunction operator()(const LatticeFunction& f) const { return apply(f); }

  friend bool operator==(const CondExpectation& a, const CondExpectation& b) { return a.partition_ == b.partition_; }

 private:
  Partition partition_;
  std::vector<Rational> cell_masses_;
};

inline LatticeFunction cond_expect(const CondExpectation& t, const LatticeFunction& f) { return t.apply(f); }

/// f belongs to R(T): constant on every cell.
inline bool in_range(const CondExpectation& t, const LatticeFunction& f) {
  require_same_space(t.space(), f.space(), "in_range");
  for (const auto& cell : t.partition().cells())
    for (PointIndex i : cell)
      if (f[i] != f[cell.front()]) return false;
  return true;
}

/// TU = T = UT checked on the cell indicators of the common refinement of both
/// partitions; both sides are linear and factor through those cell averages.
inline bool compatible_by_composition(const CondExpectation& u, const CondExpectation& t) {
  require_same_space(u.space(), t.space(), "is_compatible");
  Partition meet = common_refinement(u.partition(), t.partition());
  for (std::size_t c = 0; c < meet.cell_count(); ++c) {
    std::vector<PointIndex> members(meet.cell(c).begin(), meet.cell(c).end());
    LatticeFunction basis = EventSet(u.space(), std::move(members)).indicator();
    LatticeFunction tf = t.apply(basis);
    if (!(t.apply(u.apply(basis)) == tf) || !(u.apply(tf) == tf)) return false;
  }
  return true;
}

inline bool compatible_by_refinement(const CondExpectation& u, const CondExpectation& t) {
  return refines(u.partition(), t.partition());
}

/// U is compatible with T. Both criteria are evaluated; disagreement is a defect.
inline bool is_compatible(const CondExpectation& u, const CondExpectation& t) {
  bool algebraic = compatible_by_composition(u, t);
  bool combinatorial = compatible_by_refinement(u, t);
  if (algebraic != combinatorial)
    throw Error(ErrorKind::inconsistent_criteria, std::string("operator composition says ") +
                                                      (algebraic ? "compatible" : "incompatible") +
                                                      " but partition refinement disagrees");
  return algebraic;
}

/// T(fg) == f T(g) for f in R(T).
inline bool averaging_check(const CondExpectation& t, const LatticeFunction& f, const LatticeFunction& g) {
  if (!in_range(t, f)) throw Error(ErrorKind::precondition, "averaging_check: f is not in the range of T");
  return t.apply(f * g) == f * t.apply(g);
}

}  // namespace rieszmix
