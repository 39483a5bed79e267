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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rieszmix/error.hpp"
#include "rieszmix/rational.hpp"

namespace rieszmix {

using PointIndex = std::size_t;
using IdSet = std::vector<std::string>;

struct WeightedPoint {
  std::string id;
  Rational weight;
};

/// A finite measure space with strictly positive point masses, partitioned into blocks.
///
/// The space is an immutable value shared by handle; two handles compare equal only
/// when they refer to the same constructed space, so every function, partition and
/// operator can check that its operands live on the same space.
class GroundSpace {
 public:
  static GroundSpace build(const std::vector<WeightedPoint>& points, const std::vector<IdSet>& blocks) {
    auto data = std::make_shared<Data>();
    data->ids.reserve(points.size());
    for (const auto& p : points) {
      if (p.weight <= 0)
        throw Error(ErrorKind::nonpositive_weight,
                    "point \"" + p.id + "\" has weight " + to_string(p.weight));
      if (!data->index.emplace(p.id, data->ids.size()).second)
        throw Error(ErrorKind::duplicate_id, "point id \"" + p.id + "\" appears twice");
      data->ids.push_back(p.id);
      data->weights.push_back(p.weight);
      data->total += p.weight;
    }
    if (points.empty()) throw Error(ErrorKind::not_a_partition, "space has no points");

    constexpr std::size_t unassigned = static_cast<std::size_t>(-1);
    data->block_of.assign(points.size(), unassigned);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (blocks[b].empty())
        throw Error(ErrorKind::not_a_partition, "block " + std::to_string(b) + " is empty");
      std::vector<PointIndex> members;
      Rational mass = 0;
      for (const auto& id : blocks[b]) {
        auto it = data->index.find(id);
        if (it == data->index.end())
          throw Error(ErrorKind::not_a_partition, "block " + std::to_string(b) + " names unknown point \"" + id + "\"");
        if (data->block_of[it->second] != unassigned)
          throw Error(ErrorKind::not_a_partition, "point \"" + id + "\" lies in more than one block");
        data->block_of[it->second] = b;
        members.push_back(it->second);
        mass += data->weights[it->second];
      }
      std::sort(members.begin(), members.end());
      data->blocks.push_back(std::move(members));
      data->block_mass.push_back(mass);
    }
    for (std::size_t i = 0; i < points.size(); ++i)
      if (data->block_of[i] == unassigned)
        throw Error(ErrorKind::not_a_partition, "point \"" + data->ids[i] + "\" lies in no block");

    GroundSpace space;
    space.data_ = std::move(data);
    return space;
  }

  std::size_t size() const { return data_->ids.size(); }
  const std::string& id(PointIndex i) const { return data_->ids.at(i); }
  const std::vector<std::string>& ids() const { return data_->ids; }
  const Rational& weight(PointIndex i) const { return data_->weights.at(i); }
  std::span<const Rational> weights() const { return data_->weights; }
  const Rational& total_mass() const { return data_->total; }

  std::optional<PointIndex> find(const std::string& id) const {
    auto it = data_->index.find(id);
    if (it == data_->index.end()) return std::nullopt;
    return it->second;
  }
  PointIndex index_of(const std::string& id) const {
    if (auto i = find(id)) return *i;
    throw Error(ErrorKind::unknown_id, "unknown point id \"" + id + "\"");
  }

  /// Blocks keep their input order; members are listed in point order.
  std::size_t block_count() const { return data_->blocks.size(); }
  std::span<const PointIndex> block_members(std::size_t block) const {
    check_block(block);
    return data_->blocks[block];
  }
  std::size_t block_of(PointIndex i) const { return data_->block_of.at(i); }
  const Rational& block_mass(std::size_t block) const {
    check_block(block);
    return data_->block_mass[block];
  }
  void check_block(std::size_t block) const {
    if (block >= data_->blocks.size())
      throw Error(ErrorKind::invalid_block, "block ordinal " + std::to_string(block) + " out of range (" +
                                                std::to_string(data_->blocks.size()) + " blocks)");
  }

  friend bool operator==(const GroundSpace& a, const GroundSpace& b) { return a.data_ == b.data_; }

 private:
  struct Data {
    std::vector<std::string> ids;
    std::vector<Rational> weights;
    std::unordered_map<std::string, PointIndex> index;
    std::vector<std::vector<PointIndex>> blocks;
    std::vector<std::size_t> block_of;
    std::vector<Rational> block_mass;
    Rational total = 0;
  };

  std::shared_ptr<const Data> data_;
};

inline void require_same_space(const GroundSpace& a, const GroundSpace& b, const char* what) {
  if (!(a == b)) throw Error(ErrorKind::space_mismatch, std::string(what) + ": operands live on different spaces");
}

/// A partition of the point set; the finite stand-in for a sub-sigma-algebra.
///
/// Cells are canonical: members ascend in point order and cells are ordered by their
/// smallest member, so two partitions with the same cells compare equal.
class Partition {
 public:
  static Partition from_indices(const GroundSpace& space, std::vector<std::vector<PointIndex>> cells) {
    constexpr std::size_t unassigned = static_cast<std::size_t>(-1);
    std::vector<std::size_t> owner(space.size(), unassigned);
    for (auto& cell : cells) {
      if (cell.empty()) throw Error(ErrorKind::not_a_partition, "partition has an empty cell");
      for (PointIndex i : cell) {
        if (i >= space.size()) throw Error(ErrorKind::not_a_partition, "cell member out of range");
        if (owner[i] != unassigned)
          throw Error(ErrorKind::not_a_partition, "point \"" + space.id(i) + "\" lies in more than one cell");
        owner[i] = 0;
      }
      std::sort(cell.begin(), cell.end());
    }
    for (PointIndex i = 0; i < space.size(); ++i)
      if (owner[i] == unassigned)
        throw Error(ErrorKind::not_a_partition, "point \"" + space.id(i) + "\" lies in no cell");
    std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });

    Partition p;
    p.space_ = space;
    p.cell_of_.assign(space.size(), 0);
    for (std::size_t c = 0; c < cells.size(); ++c)
      for (PointIndex i : cells[c]) p.cell_of_[i] = c;
    p.cells_ = std::move(cells);
    return p;
  }

  static Partition discrete(const GroundSpace& space) {
    std::vector<std::vector<PointIndex>> cells;
    for (PointIndex i = 0; i < space.size(); ++i) cells.push_back({i});
    return from_indices(space, std::move(cells));
  }

  static Partition trivial(const GroundSpace& space) {
    std::vector<PointIndex> all(space.size());
    for (PointIndex i = 0; i < space.size(); ++i) all[i] = i;
    return from_indices(space, {std::move(all)});
  }

  /// The blocks of the space as a partition.
  static Partition blocks(const GroundSpace& space) {
    std::vector<std::vector<PointIndex>> cells;
    for (std::size_t b = 0; b < space.block_count(); ++b) {
      auto m = space.block_members(b);
      cells.emplace_back(m.begin(), m.end());
    }
    return from_indices(space, std::move(cells));
  }

  const GroundSpace& space() const { return space_; }
  std::size_t cell_count() const { return cells_.size(); }
  const std::vector<std::vector<PointIndex>>& cells() const { return cells_; }
  std::span<const PointIndex> cell(std::size_t c) const { return cells_.at(c); }
  std::size_t cell_of(PointIndex i) const { return cell_of_.at(i); }

  /// Each cell lies inside a single block.
  bool refines_blocks() const {
    return std::all_of(cells_.begin(), cells_.end(), [&](const auto& cell) {
      return std::all_of(cell.begin(), cell.end(),
                         [&](PointIndex i) { return space_.block_of(i) == space_.block_of(cell.front()); });
    });
  }

  /// Ordinals of the cells inside `block`, ascending. Requires refines_blocks().
  std::vector<std::size_t> cells_in_block(std::size_t block) const {
    space_.check_block(block);
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < cells_.size(); ++c)
      if (space_.block_of(cells_[c].front()) == block) out.push_back(c);
    return out;
  }

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.space_ == b.space_ && a.cells_ == b.cells_;
  }

 private:
  Partition() = default;

  GroundSpace space_;
  std::vector<std::vector<PointIndex>> cells_;
  std::vector<std::size_t> cell_of_;
};

inline Partition build_partition(const GroundSpace& space, const std::vector<IdSet>& cells,
                                 bool require_block_refinement) {
  std::vector<std::vector<PointIndex>> indexed;
  indexed.reserve(cells.size());
  for (const auto& cell : cells) {
    std::vector<PointIndex> members;
    for (const auto& id : cell) {
      auto i = space.find(id);
      if (!i) throw Error(ErrorKind::unknown_id, "cell names unknown point \"" + id + "\"");
      members.push_back(*i);
    }
    indexed.push_back(std::move(members));
  }
  Partition p = Partition::from_indices(space, std::move(indexed));
  if (require_block_refinement && !p.refines_blocks()) {
    for (const auto& cell : p.cells()) {
      for (PointIndex i : cell) {
        if (space.block_of(i) != space.block_of(cell.front()))
          throw Error(ErrorKind::refinement_violation, "cell containing \"" + space.id(cell.front()) + "\" and \"" +
                                                           space.id(i) + "\" straddles two blocks");
      }
    }
  }
  return p;
}

/// True iff every cell of `p` lies inside some cell of `q`.
inline bool refines(const Partition& p, const Partition& q) {
  require_same_space(p.space(), q.space(), "refines");
  for (const auto& cell : p.cells()) {
    std::size_t target = q.cell_of(cell.front());
    for (PointIndex i : cell)
      if (q.cell_of(i) != target) return false;
  }
  return true;
}

/// Coarsest partition refining both.
inline Partition common_refinement(const Partition& p, const Partition& q) {
  require_same_space(p.space(), q.space(), "common_refinement");
  std::vector<std::vector<PointIndex>> cells;
  std::vector<std::pair<std::size_t, std::size_t>> keys;
  for (PointIndex i = 0; i < p.space().size(); ++i) {
    std::pair<std::size_t, std::size_t> key{p.cell_of(i), q.cell_of(i)};
    auto it = std::find(keys.begin(), keys.end(), key);
    if (it == keys.end()) {
      keys.push_back(key);
      cells.push_back({i});
    } else {
      cells[static_cast<std::size_t>(it - keys.begin())].push_back(i);
    }
  }
  return Partition::from_indices(p.space(), std::move(cells));
}

class EventSet;

/// A rational-valued function on the points; an element of the ambient f-algebra.
class LatticeFunction {
 public:
  LatticeFunction(GroundSpace space, std::vector<Rational> values) : space_(std::move(space)), values_(std::move(values)) {
    if (values_.size() != space_.size())
      throw Error(ErrorKind::precondition, "function has " + std::to_string(values_.size()) + " values for " +
                                               std::to_string(space_.size()) + " points");
  }

  static LatticeFunction constant(const GroundSpace& space, const Rational& c) {
    return LatticeFunction(space, std::vector<Rational>(space.size(), c));
  }
  static LatticeFunction zero(const GroundSpace& space) { return constant(space, 0); }
  /// The weak order unit e, which is also the algebraic unit.
  static LatticeFunction unit(const GroundSpace& space) { return constant(space, 1); }

  const GroundSpace& space() const { return space_; }
  std::size_t size() const { return values_.size(); }
  const Rational& operator[](PointIndex i) const { return values_[i]; }
  const std::vector<Rational>& values() const { return values_; }

  bool is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v == 0; });
  }
  bool is_nonnegative() const {
    return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v >= 0; });
  }

  template <class Fn>
  LatticeFunction map(Fn&& fn) const {
    std::vector<Rational> out;
    out.reserve(values_.size());
    for (const auto& v : values_) out.push_back(fn(v));
    return LatticeFunction(space_, std::move(out));
  }

  template <class Fn>
  static LatticeFunction zip(const LatticeFunction& f, const LatticeFunction& g, Fn&& fn) {
    require_same_space(f.space_, g.space_, "pointwise operation");
    std::vector<Rational> out;
    out.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out.push_back(fn(f.values_[i], g.values_[i]));
    return LatticeFunction(f.space_, std::move(out));
  }

  friend LatticeFunction operator+(const LatticeFunction& f, const LatticeFunction& g) {
    return zip(f, g, [](const Rational& a, const Rational& b) { return Rational(a + b); });
  }
  friend LatticeFunction operator-(const LatticeFunction& f, const LatticeFunction& g) {
    return zip(f, g, [](const Rational& a, const Rational& b) { return Rational(a - b); });
  }
  /// Pointwise product: the f-algebra multiplication with unit e.
  friend LatticeFunction operator*(const LatticeFunction& f, const LatticeFunction& g) {
    return zip(f, g, [](const Rational& a, const Rational& b) { return Rational(a * b); });
  }
  friend LatticeFunction operator*(const Rational& c, const LatticeFunction& f) {
    return f.map([&](const Rational& v) { return Rational(c * v); });
  }
  friend LatticeFunction operator-(const LatticeFunction& f) {
    return f.map([](const Rational& v) { return Rational(-v); });
  }

  friend bool operator==(const LatticeFunction& f, const LatticeFunction& g) {
    return f.space_ == g.space_ && f.values_ == g.values_;
  }

 private:
  GroundSpace space_;
  std::vector<Rational> values_;
};

inline LatticeFunction sup(const LatticeFunction& f, const LatticeFunction& g) {
  return LatticeFunction::zip(f, g, [](const Rational& a, const Rational& b) { return a < b ? b : a; });
}
inline LatticeFunction inf(const LatticeFunction& f, const LatticeFunction& g) {
  return LatticeFunction::zip(f, g, [](const Rational& a, const Rational& b) { return a < b ? a : b; });
}
inline LatticeFunction magnitude(const LatticeFunction& f) { return f.map(abs_value); }
inline LatticeFunction positive_part(const LatticeFunction& f) {
  return f.map([](const Rational& v) { return v > 0 ? v : Rational(0); });
}
inline LatticeFunction negative_part(const LatticeFunction& f) {
  return f.map([](const Rational& v) { return v < 0 ? Rational(-v) : Rational(0); });
}

/// Pointwise order f <= g.
inline bool leq(const LatticeFunction& f, const LatticeFunction& g) {
  require_same_space(f.space(), g.space(), "order comparison");
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] > g[i]) return false;
  return true;
}

enum class LatticeOp { sup, inf, plus, minus, times };

inline LatticeFunction lattice_combine(const LatticeFunction& f, const LatticeFunction& g, LatticeOp op) {
  switch (op) {
    case LatticeOp::sup: return sup(f, g);
    case LatticeOp::inf: return inf(f, g);
    case LatticeOp::plus: return f + g;
    case LatticeOp::minus: return f - g;
    case LatticeOp::times: return f * g;
  }
  throw Error(ErrorKind::precondition, "unknown lattice operation");
}

struct Decomposition {
  LatticeFunction plus;
  LatticeFunction minus;
  LatticeFunction abs;
};

/// f = plus - minus, abs = plus + minus, plus ∧ minus = 0.
inline Decomposition decompose(const LatticeFunction& f) {
  LatticeFunction plus = positive_part(f);
  LatticeFunction minus = negative_part(f);
  LatticeFunction abs = plus + minus;
  return {std::move(plus), std::move(minus), std::move(abs)};
}

/// A set of points; acts on functions as the band projection onto its indicator.
class EventSet {
 public:
  EventSet(GroundSpace space, std::vector<PointIndex> members) : space_(std::move(space)), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (!members_.empty() && members_.back() >= space_.size())
      throw Error(ErrorKind::precondition, "event member out of range");
  }

  static EventSet from_ids(const GroundSpace& space, const IdSet& ids) {
    std::vector<PointIndex> members;
    for (const auto& id : ids) members.push_back(space.index_of(id));
    return EventSet(space, std::move(members));
  }
  static EventSet empty(const GroundSpace& space) { return EventSet(space, {}); }
  static EventSet all(const GroundSpace& space) {
    std::vector<PointIndex> m(space.size());
    for (PointIndex i = 0; i < space.size(); ++i) m[i] = i;
    return EventSet(space, std::move(m));
  }

  const GroundSpace& space() const { return space_; }
  const std::vector<PointIndex>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool is_empty() const { return members_.empty(); }
  bool contains(PointIndex i) const { return std::binary_search(members_.begin(), members_.end(), i); }

  /// Member ids, sorted lexicographically.
  IdSet ids() const {
    IdSet out;
    for (PointIndex i : members_) out.push_back(space_.id(i));
    std::sort(out.begin(), out.end());
    return out;
  }

  LatticeFunction indicator() const {
    std::vector<Rational> v(space_.size(), Rational(0));
    for (PointIndex i : members_) v[i] = 1;
    return LatticeFunction(space_, std::move(v));
  }

  EventSet complement() const {
    std::vector<PointIndex> out;
    for (PointIndex i = 0; i < space_.size(); ++i)
      if (!contains(i)) out.push_back(i);
    return EventSet(space_, std::move(out));
  }

  friend bool operator==(const EventSet& a, const EventSet& b) {
    return a.space_ == b.space_ && a.members_ == b.members_;
  }

 private:
  GroundSpace space_;
  std::vector<PointIndex> members_;
};

/// The event is a union of cells of `p`.
inline bool is_measurable(const EventSet& a, const Partition& p) {
  require_same_space(a.space(), p.space(), "is_measurable");
  for (const auto& cell : p.cells()) {
    bool first = a.contains(cell.front());
    for (PointIndex i : cell)
      if (a.contains(i) != first) return false;
  }
  return true;
}

inline LatticeFunction band_apply(const EventSet& a, const LatticeFunction& f) {
  require_same_space(a.space(), f.space(), "band_apply");
  std::vector<Rational> out(f.size(), Rational(0));
  for (PointIndex i : a.members()) out[i] = f[i];
  return LatticeFunction(f.space(), std::move(out));
}

/// All unions of the cells of a block-refining partition inside one block.
///
/// Event `mask` contains cell j of the block (in canonical cell order) iff bit j is
/// set, so iteration runs from the empty event to the whole block.
class EventStream {
 public:
  EventStream(const Partition& u, std::size_t block) : partition_(u), block_(block) {
    u.space().check_block(block);
    if (!u.refines_blocks())
      throw Error(ErrorKind::refinement_violation, "event enumeration needs a partition refining the blocks");
    cells_ = u.cells_in_block(block);
    if (cells_.size() > 62)
      throw Error(ErrorKind::infeasible_budget, "block has " + std::to_string(cells_.size()) + " cells; at most 62 are enumerable");
  }

  std::size_t cell_count() const { return cells_.size(); }
  const std::vector<std::size_t>& cells() const { return cells_; }
  std::uint64_t size() const { return std::uint64_t{1} << cells_.size(); }
  std::size_t block() const { return block_; }

  EventSet operator[](std::uint64_t mask) const {
    std::vector<PointIndex> members;
    for (std::size_t j = 0; j < cells_.size(); ++j)
      if (mask >> j & 1U) {
        auto c = partition_.cell(cells_[j]);
        members.insert(members.end(), c.begin(), c.end());
      }
    return EventSet(partition_.space(), std::move(members));
  }

  /// Mask of the block-relative complement.
  std::uint64_t complement(std::uint64_t mask) const { return (size() - 1) & ~mask; }

  class iterator {
   public:
    using value_type = EventSet;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    iterator(const EventStream* s, std::uint64_t m) : stream_(s), mask_(m) {}
    EventSet operator*() const { return (*stream_)[mask_]; }
    iterator& operator++() {
      ++mask_;
      return *this;
    }
    iterator operator++(int) {
      auto old = *this;
      ++mask_;
      return old;
    }
    std::uint64_t mask() const { return mask_; }
    friend bool operator==(const iterator& a, const iterator& b) { return a.mask_ == b.mask_; }

   private:
    const EventStream* stream_ = nullptr;
    std::uint64_t mask_ = 0;
  };

  iterator begin() const { return {this, 0}; }
  iterator end() const { return {this, size()}; }

 private:
  Partition partition_;
  std::size_t block_;
  std::vector<std::size_t> cells_;
};

inline EventStream enumerate_events(const Partition& u, std::size_t block) { return EventStream(u, block); }

}  // namespace rieszmix
