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

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "rieszmix/tnorms.hpp"

namespace rieszmix {

enum class MixingMethod { brute, fast, classical, conditioned };

inline std::string_view to_string(MixingMethod m) {
  switch (m) {
    case MixingMethod::brute: return "brute";
    case MixingMethod::fast: return "fast";
    case MixingMethod::classical: return "classical";
    case MixingMethod::conditioned: return "conditioned";
  }
  return "unknown";
}

/// Optimizing events on one block. `p_event` is absent for the uniform coefficient.
struct BlockWitness {
  std::size_t block;
  std::optional<EventSet> p_event;
  EventSet q_event;
};

struct MixingReport {
  RangeElement coefficient;
  std::vector<BlockWitness> witnesses;  // one per block, in block order
  MixingMethod method;
  std::uint64_t enumeration_count;

  const Rational& block_value(std::size_t block) const {
    return coefficient.at(coefficient.owner().space().block_members(block).front());
  }
};

namespace detail {

/// T must condition on exactly the blocks, and U, V must be compatible with it.
inline void check_mixing_inputs(const CondExpectation& t, const CondExpectation& u, const CondExpectation& v) {
  require_same_space(t.space(), u.space(), "mixing coefficient");
  require_same_space(t.space(), v.space(), "mixing coefficient");
  if (!(t.partition() == Partition::blocks(t.space())))
    throw Error(ErrorKind::blocks_mismatch, "mixing coefficients need T to condition on the blocks");
  if (!is_compatible(u, t)) throw Error(ErrorKind::incompatible, "U is not compatible with T");
  if (!is_compatible(v, t)) throw Error(ErrorKind::incompatible, "V is not compatible with T");
}

inline std::size_t block_cell(const CondExpectation& t, std::size_t block) {
  return t.partition().cell_of(t.space().block_members(block).front());
}

/// Assembles per-block scalars into a block-constant element of R(T).
inline RangeElement assemble(const CondExpectation& t, const std::vector<Rational>& per_block) {
  const GroundSpace& space = t.space();
  std::vector<Rational> values(space.size());
  for (PointIndex i = 0; i < space.size(); ++i) values[i] = per_block[space.block_of(i)];
  return RangeElement(t, LatticeFunction(space, std::move(values)));
}

inline std::vector<LatticeFunction> indicators(const EventStream& events) {
  std::vector<LatticeFunction> out;
  out.reserve(events.size());
  for (auto ev : events) out.push_back(ev.indicator());
  return out;
}

/// U(Qe - TQe).
inline LatticeFunction centered_projection(const CondExpectation& t, const CondExpectation& u, const LatticeFunction& q) {
  return u.apply(q - t.apply(q));
}

}  // namespace detail

/// Block value of |T(PQe) - TPe * TQe| for the indicators of `p` and `q`.
inline Rational alpha_expression(const CondExpectation& t, std::size_t block, const EventSet& p, const EventSet& q) {
  const std::size_t c = detail::block_cell(t, block);
  LatticeFunction pe = p.indicator();
  LatticeFunction qe = q.indicator();
  return abs_value(t.cell_average(pe * qe, c) - t.cell_average(pe, c) * t.cell_average(qe, c));
}

/// Block value of ||UQe - TQe||_{T,inf}.
inline Rational phi_expression(const CondExpectation& t, const CondExpectation& u, std::size_t block, const EventSet& q) {
  LatticeFunction qe = q.indicator();
  return tnorm_linf(t, u.apply(qe) - t.apply(qe)).cell_value(detail::block_cell(t, block));
}

/// Strong mixing coefficient by exhaustive search over all event pairs of each block.
///
/// The supremum over the event family is taken blockwise: events on different blocks
/// do not interact because T conditions on the blocks. Ties keep the first pair in
/// (P-mask, Q-mask) order.
inline MixingReport alpha_brute(const CondExpectation& t, const CondExpectation& u, const CondExpectation& v) {
  detail::check_mixing_inputs(t, u, v);
  const GroundSpace& space = t.space();
  std::vector<Rational> per_block;
  std::vector<BlockWitness> witnesses;
  std::uint64_t count = 0;

  for (std::size_t b = 0; b < space.block_count(); ++b) {
    const std::size_t c = detail::block_cell(t, b);
    EventStream pe(u.partition(), b);
    EventStream qe(v.partition(), b);
    auto p_ind = detail::indicators(pe);
    auto q_ind = detail::indicators(qe);
    std::vector<Rational> tp, tq;
    for (const auto& f : p_ind) tp.push_back(t.cell_average(f, c));
    for (const auto& f : q_ind) tq.push_back(t.cell_average(f, c));

    Rational best = -1;
    std::uint64_t best_p = 0, best_q = 0;
    for (std::uint64_t i = 0; i < pe.size(); ++i) {
      for (std::uint64_t j = 0; j < qe.size(); ++j) {
        Rational val = abs_value(t.cell_average(p_ind[i] * q_ind[j], c) - tp[i] * tq[j]);
        if (val > best) {
          best = val;
          best_p = i;
          best_q = j;
        }
      }
    }
    count += pe.size() * qe.size();
    per_block.push_back(best);
    witnesses.push_back({b, pe[best_p], qe[best_q]});
  }
  return {detail::assemble(t, per_block), std::move(witnesses), MixingMethod::brute, count};
}

/// Set where U(Qe - TQe) > 0. It is a union of U-cells because U(.) lies in R(U).
inline EventSet positive_band(const CondExpectation& t, const CondExpectation& u, const EventSet& q) {
  if (!is_compatible(u, t)) throw Error(ErrorKind::incompatible, "positive_band: U is not compatible with T");
  LatticeFunction x = detail::centered_projection(t, u, q.indicator());
  std::vector<PointIndex> members;
  for (PointIndex i = 0; i < x.size(); ++i)
    if (x[i] > 0) members.push_back(i);
  return EventSet(q.space(), std::move(members));
}

/// Set where U(Qe - TQe) < 0.
inline EventSet negative_band(const CondExpectation& t, const CondExpectation& u, const EventSet& q) {
  if (!is_compatible(u, t)) throw Error(ErrorKind::incompatible, "negative_band: U is not compatible with T");
  LatticeFunction x = detail::centered_projection(t, u, q.indicator());
  std::vector<PointIndex> members;
  for (PointIndex i = 0; i < x.size(); ++i)
    if (x[i] < 0) members.push_back(i);
  return EventSet(q.space(), std::move(members));
}

/// Strong mixing coefficient enumerating Q only.
///
/// For fixed Q the supremum over P of |T P(Qe - TQe)| is T[X]^+ v T[X]^- with
/// X = U(Qe - TQe), attained at the band of X^+ (resp. X^-). The witness P is the band
/// that attains the larger side, so the defining expression reproduces the value.
inline MixingReport alpha_fast(const CondExpectation& t, const CondExpectation& u, const CondExpectation& v) {
  detail::check_mixing_inputs(t, u, v);
  const GroundSpace& space = t.space();
  std::vector<Rational> per_block;
  std::vector<BlockWitness> witnesses;
  std::uint64_t count = 0;

  for (std::size_t b = 0; b < space.block_count(); ++b) {
    const std::size_t c = detail::block_cell(t, b);
    EventStream qe(v.partition(), b);
    Rational best = -1;
    std::uint64_t best_q = 0;
    bool best_positive = true;
    for (auto it = qe.begin(); it != qe.end(); ++it) {
      LatticeFunction x = detail::centered_projection(t, u, (*it).indicator());
      Rational up = t.cell_average(positive_part(x), c);
      Rational down = t.cell_average(negative_part(x), c);
      bool positive = up >= down;
      Rational val = positive ? up : down;
      if (val > best) {
        best = val;
        best_q = it.mask();
        best_positive = positive;
      }
    }
    count += qe.size();
    EventSet q = qe[best_q];
    EventSet p = best_positive ? positive_band(t, u, q) : negative_band(t, u, q);
    per_block.push_back(best);
    witnesses.push_back({b, std::move(p), std::move(q)});
  }
  return {detail::assemble(t, per_block), std::move(witnesses), MixingMethod::fast, count};
}

/// Uniform mixing coefficient: sup over Q of ||UQe - TQe||_{T,inf}, blockwise.
inline MixingReport phi(const CondExpectation& t, const CondExpectation& u, const CondExpectation& v) {
  detail::check_mixing_inputs(t, u, v);
  const GroundSpace& space = t.space();
  std::vector<Rational> per_block;
  std::vector<BlockWitness> witnesses;
  std::uint64_t count = 0;

  for (std::size_t b = 0; b < space.block_count(); ++b) {
    const std::size_t c = detail::block_cell(t, b);
    EventStream qe(v.partition(), b);
    Rational best = -1;
    std::uint64_t best_q = 0;
    for (auto it = qe.begin(); it != qe.end(); ++it) {
      LatticeFunction q = (*it).indicator();
      Rational val = tnorm_linf(t, u.apply(q) - t.apply(q)).cell_value(c);
      if (val > best) {
        best = val;
        best_q = it.mask();
      }
    }
    count += qe.size();
    per_block.push_back(best);
    witnesses.push_back({b, std::nullopt, qe[best_q]});
  }
  return {detail::assemble(t, per_block), std::move(witnesses), MixingMethod::conditioned, count};
}

// Classical coefficients on one block under the normalized measure
// mu_b(A) = mu(A ∩ block) / mu(block). They use only point masses and set
// membership, never the operator classes above.

enum class PhiRoute { conditional_prob, linf_norm };

namespace detail {

struct BlockEvents {
  std::vector<PointIndex> points;               // block members
  std::vector<std::vector<bool>> membership;    // [event][k] : points[k] in event
  std::vector<Rational> mass;                   // normalized mass of each event
};

/// Unions of the cells of `p` inside the block, by subset mask over those cells.
inline BlockEvents block_events(const GroundSpace& space, const Partition& p, std::size_t block) {
  BlockEvents out;
  auto members = space.block_members(block);
  out.points.assign(members.begin(), members.end());
  const Rational& total = space.block_mass(block);

  std::vector<std::size_t> cell_ids;
  std::vector<std::size_t> local_cell(out.points.size());
  for (std::size_t k = 0; k < out.points.size(); ++k) {
    std::size_t c = p.cell_of(out.points[k]);
    auto it = std::find(cell_ids.begin(), cell_ids.end(), c);
    local_cell[k] = static_cast<std::size_t>(it - cell_ids.begin());
    if (it == cell_ids.end()) cell_ids.push_back(c);
  }
  if (cell_ids.size() > 62) throw Error(ErrorKind::infeasible_budget, "too many cells in block");
  const std::uint64_t n = std::uint64_t{1} << cell_ids.size();
  for (std::uint64_t mask = 0; mask < n; ++mask) {
    std::vector<bool> in(out.points.size());
    Rational m = 0;
    for (std::size_t k = 0; k < out.points.size(); ++k) {
      in[k] = (mask >> local_cell[k]) & 1U;
      if (in[k]) m += space.weight(out.points[k]);
    }
    out.membership.push_back(std::move(in));
    out.mass.push_back(m / total);
  }
  return out;
}

inline Rational joint_mass(const GroundSpace& space, const BlockEvents& a, std::size_t i, const BlockEvents& b,
                           std::size_t j, const Rational& total) {
  Rational m = 0;
  for (std::size_t k = 0; k < a.points.size(); ++k)
    if (a.membership[i][k] && b.membership[j][k]) m += space.weight(a.points[k]);
  return m / total;
}

inline void check_classical_inputs(const GroundSpace& space, const Partition& c, const Partition& d, std::size_t block) {
  require_same_space(space, c.space(), "classical coefficient");
  require_same_space(space, d.space(), "classical coefficient");
  space.check_block(block);
  if (!c.refines_blocks() || !d.refines_blocks())
    throw Error(ErrorKind::refinement_violation, "classical coefficient needs partitions refining the blocks");
}

}  // namespace detail

/// sup |mu_b(A ∩ B) - mu_b(A) mu_b(B)| over A measurable for `c`, B for `d`, inside the block.
inline Rational classical_alpha(const GroundSpace& space, const Partition& c, const Partition& d, std::size_t block = 0) {
  detail::check_classical_inputs(space, c, d, block);
  auto as = detail::block_events(space, c, block);
  auto bs = detail::block_events(space, d, block);
  const Rational& total = space.block_mass(block);
  Rational best = 0;
  for (std::size_t i = 0; i < as.mass.size(); ++i)
    for (std::size_t j = 0; j < bs.mass.size(); ++j) {
      Rational val = abs_value(detail::joint_mass(space, as, i, bs, j, total) - as.mass[i] * bs.mass[j]);
      if (val > best) best = val;
    }
  return best;
}

/// Classical uniform mixing coefficient phi(c, d) on one block.
///
/// conditional_prob: sup |mu_b(B|A) - mu_b(B)| over A with positive mass.
/// linf_norm: sup over B of the max over c-cells of |E_b[1_B | c] - mu_b(B)|.
inline Rational classical_phi(const GroundSpace& space, const Partition& c, const Partition& d, PhiRoute via,
                              std::size_t block = 0) {
  detail::check_classical_inputs(space, c, d, block);
  auto bs = detail::block_events(space, d, block);
  const Rational& total = space.block_mass(block);
  Rational best = 0;

  if (via == PhiRoute::conditional_prob) {
    auto as = detail::block_events(space, c, block);
    for (std::size_t i = 0; i < as.mass.size(); ++i) {
      if (as.mass[i] == 0) continue;  // only the empty event
      for (std::size_t j = 0; j < bs.mass.size(); ++j) {
        Rational cond = detail::joint_mass(space, as, i, bs, j, total) / as.mass[i];
        Rational val = abs_value(cond - bs.mass[j]);
        if (val > best) best = val;
      }
    }
    return best;
  }

  auto members = space.block_members(block);
  for (std::size_t j = 0; j < bs.mass.size(); ++j) {
    for (const auto& cell : c.cells()) {
      if (space.block_of(cell.front()) != block) continue;
      Rational cell_mass = 0, hit = 0;
      for (PointIndex i : cell) {
        cell_mass += space.weight(i);
        auto k = static_cast<std::size_t>(std::find(members.begin(), members.end(), i) - members.begin());
        if (bs.membership[j][k]) hit += space.weight(i);
      }
      Rational val = abs_value(hit / cell_mass - bs.mass[j]);
      if (val > best) best = val;
    }
  }
  return best;
}

}  // namespace rieszmix
