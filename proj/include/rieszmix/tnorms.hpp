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

#include <string_view>
#include <vector>

#include "rieszmix/conditional.hpp"

namespace rieszmix {

/// An element of R(T): a function constant on the cells of its owner.
class RangeElement {
 public:
  RangeElement(CondExpectation owner, LatticeFunction value) : owner_(std::move(owner)), value_(std::move(value)) {
    if (!in_range(owner_, value_)) throw Error(ErrorKind::precondition, "value is not constant on the owner's cells");
  }

  static RangeElement zero(const CondExpectation& owner) {
    return RangeElement(owner, LatticeFunction::zero(owner.space()));
  }

  const CondExpectation& owner() const { return owner_; }
  const LatticeFunction& value() const { return value_; }
  const Rational& at(PointIndex i) const { return value_[i]; }
  const Rational& cell_value(std::size_t c) const { return value_[owner_.partition().cell(c).front()]; }

  std::vector<Rational> cell_values() const {
    std::vector<Rational> out;
    for (std::size_t c = 0; c < owner_.partition().cell_count(); ++c) out.push_back(cell_value(c));
    return out;
  }

  friend RangeElement operator+(const RangeElement& a, const RangeElement& b) {
    check_owner(a, b);
    return RangeElement(a.owner_, a.value_ + b.value_);
  }
  friend RangeElement operator*(const RangeElement& a, const RangeElement& b) {
    check_owner(a, b);
    return RangeElement(a.owner_, a.value_ * b.value_);
  }
  friend RangeElement operator*(const Rational& c, const RangeElement& a) { return RangeElement(a.owner_, c * a.value_); }
  friend bool operator==(const RangeElement& a, const RangeElement& b) {
    return a.owner_ == b.owner_ && a.value_ == b.value_;
  }

  static void check_owner(const RangeElement& a, const RangeElement& b) {
    if (!(a.owner_ == b.owner_)) throw Error(ErrorKind::space_mismatch, "range elements of different operators");
  }

 private:
  CondExpectation owner_;
  LatticeFunction value_;
};

/// Cellwise order on R(T).
inline bool leq(const RangeElement& a, const RangeElement& b) {
  RangeElement::check_owner(a, b);
  return leq(a.value(), b.value());
}

inline RangeElement max(const RangeElement& a, const RangeElement& b) {
  RangeElement::check_owner(a, b);
  return RangeElement(a.owner(), sup(a.value(), b.value()));
}

struct Comparison {
  RangeElement lhs;
  RangeElement rhs;
  bool holds;
};

inline Comparison compare_le(RangeElement lhs, RangeElement rhs) {
  bool holds = leq(lhs, rhs);
  return {std::move(lhs), std::move(rhs), holds};
}

/// T|f|.
inline RangeElement tnorm_l1(const CondExpectation& t, const LatticeFunction& f) {
  return RangeElement(t, t.apply(magnitude(f)));
}

/// Least element g of R(T)_+ with |f| <= g; all weights are positive, so this is the cellwise max.
inline RangeElement tnorm_linf(const CondExpectation& t, const LatticeFunction& f) {
  require_same_space(t.space(), f.space(), "tnorm_linf");
  std::vector<Rational> out(f.size());
  for (const auto& cell : t.partition().cells()) {
    Rational m = 0;
    for (PointIndex i : cell) {
      Rational a = abs_value(f[i]);
      if (a > m) m = a;
    }
    for (PointIndex i : cell) out[i] = m;
  }
  return RangeElement(t, LatticeFunction(f.space(), std::move(out)));
}

enum class NormKind { l1, linf };

inline std::string_view to_string(NormKind p) { return p == NormKind::l1 ? "1" : "inf"; }

inline RangeElement tnorm(const CondExpectation& t, const LatticeFunction& f, NormKind p) {
  return p == NormKind::l1 ? tnorm_l1(t, f) : tnorm_linf(t, f);
}

/// ||gf||_{T,1} <= ||g||_{T,inf} ||f||_{T,1}.
inline Comparison holder_bound(const CondExpectation& t, const LatticeFunction& f, const LatticeFunction& g) {
  return compare_le(tnorm_l1(t, g * f), tnorm_linf(t, g) * tnorm_l1(t, f));
}

inline Comparison norm_comparison_values(const CondExpectation& t, const LatticeFunction& g) {
  return compare_le(tnorm_l1(t, g), tnorm_linf(t, g));
}

/// ||g||_{T,1} <= ||g||_{T,inf}.
inline bool norm_comparison(const CondExpectation& t, const LatticeFunction& g) {
  return norm_comparison_values(t, g).holds;
}

/// ||Sf||_{T,p} <= ||f||_{T,p} for S compatible with T.
inline Comparison jensen_check(const CondExpectation& t, const CondExpectation& s, const LatticeFunction& f, NormKind p) {
  if (!is_compatible(s, t)) throw Error(ErrorKind::incompatible, "jensen_check: S is not compatible with T");
  return compare_le(tnorm(t, s.apply(f), p), tnorm(t, f, p));
}

}  // namespace rieszmix
