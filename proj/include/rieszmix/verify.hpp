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
#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "rieszmix/mixing.hpp"
#include "rieszmix/spec_io.hpp"

namespace rieszmix {

// ---------------------------------------------------------------------------
// Check catalogue
// ---------------------------------------------------------------------------

/// Groups of checks selectable from the command line.
enum class CheckFamily {
  norm_axioms,
  holder,
  norm_comparison,
  jensen,
  alpha_bounds,
  alpha_le_phi,
  strong_inequality,
  composed_inequality,
  phi_inequality,
  factorization,
  alpha_oracle,
  phi_routes,
};

inline constexpr std::array<CheckFamily, 12> all_families = {
    CheckFamily::norm_axioms,       CheckFamily::holder,          CheckFamily::norm_comparison,
    CheckFamily::jensen,            CheckFamily::alpha_bounds,    CheckFamily::alpha_le_phi,
    CheckFamily::strong_inequality, CheckFamily::composed_inequality, CheckFamily::phi_inequality,
    CheckFamily::factorization,     CheckFamily::alpha_oracle,    CheckFamily::phi_routes,
};

enum class CheckId {
  l1_definiteness,
  l1_homogeneity,
  l1_triangle,
  linf_definiteness,
  linf_homogeneity,
  linf_triangle,
  holder,
  norm_comparison,
  jensen_l1,
  jensen_linf,
  alpha_bounds,
  alpha_le_phi,
  strong_inequality,
  composed_inequality,
  phi_inequality,
  alpha_factorization,
  phi_factorization,
  alpha_oracle,
  phi_routes,
};

inline constexpr std::array<CheckId, 19> all_checks = {
    CheckId::l1_definiteness,   CheckId::l1_homogeneity,      CheckId::l1_triangle,
    CheckId::linf_definiteness, CheckId::linf_homogeneity,    CheckId::linf_triangle,
    CheckId::holder,            CheckId::norm_comparison,     CheckId::jensen_l1,
    CheckId::jensen_linf,       CheckId::alpha_bounds,        CheckId::alpha_le_phi,
    CheckId::strong_inequality, CheckId::composed_inequality, CheckId::phi_inequality,
    CheckId::alpha_factorization, CheckId::phi_factorization, CheckId::alpha_oracle,
    CheckId::phi_routes,
};

inline std::string_view to_string(CheckFamily f) {
  switch (f) {
    case CheckFamily::norm_axioms: return "norm-axioms";
    case CheckFamily::holder: return "holder";
    case CheckFamily::norm_comparison: return "norm-comparison";
    case CheckFamily::jensen: return "jensen";
    case CheckFamily::alpha_bounds: return "alpha-bounds";
    case CheckFamily::alpha_le_phi: return "alpha-le-phi";
    case CheckFamily::strong_inequality: return "strong-inequality";
    case CheckFamily::composed_inequality: return "composed-inequality";
    case CheckFamily::phi_inequality: return "phi-inequality";
    case CheckFamily::factorization: return "factorization";
    case CheckFamily::alpha_oracle: return "alpha-oracle";
    case CheckFamily::phi_routes: return "phi-routes";
  }
  return "unknown";
}

inline std::optional<CheckFamily> family_from_string(std::string_view name) {
  for (auto f : all_families)
    if (to_string(f) == name) return f;
  return std::nullopt;
}

inline std::string_view to_string(CheckId id) {
  switch (id) {
    case CheckId::l1_definiteness: return "l1-definiteness";
    case CheckId::l1_homogeneity: return "l1-homogeneity";
    case CheckId::l1_triangle: return "l1-triangle";
    case CheckId::linf_definiteness: return "linf-definiteness";
    case CheckId::linf_homogeneity: return "linf-homogeneity";
    case CheckId::linf_triangle: return "linf-triangle";
    case CheckId::holder: return "holder";
    case CheckId::norm_comparison: return "norm-comparison";
    case CheckId::jensen_l1: return "jensen-l1";
    case CheckId::jensen_linf: return "jensen-linf";
    case CheckId::alpha_bounds: return "alpha-bounds";
    case CheckId::alpha_le_phi: return "alpha-le-phi";
    case CheckId::strong_inequality: return "strong-inequality";
    case CheckId::composed_inequality: return "composed-inequality";
    case CheckId::phi_inequality: return "phi-inequality";
    case CheckId::alpha_factorization: return "alpha-factorization";
    case CheckId::phi_factorization: return "phi-factorization";
    case CheckId::alpha_oracle: return "alpha-oracle";
    case CheckId::phi_routes: return "phi-routes";
  }
  return "unknown";
}

inline std::optional<CheckId> check_from_string(std::string_view name) {
  for (auto c : all_checks)
    if (to_string(c) == name) return c;
  return std::nullopt;
}

inline CheckFamily family_of(CheckId id) {
  switch (id) {
    case CheckId::l1_definiteness:
    case CheckId::l1_homogeneity:
    case CheckId::l1_triangle:
    case CheckId::linf_definiteness:
    case CheckId::linf_homogeneity:
    case CheckId::linf_triangle: return CheckFamily::norm_axioms;
    case CheckId::holder: return CheckFamily::holder;
    case CheckId::norm_comparison: return CheckFamily::norm_comparison;
    case CheckId::jensen_l1:
    case CheckId::jensen_linf: return CheckFamily::jensen;
    case CheckId::alpha_bounds: return CheckFamily::alpha_bounds;
    case CheckId::alpha_le_phi: return CheckFamily::alpha_le_phi;
    case CheckId::strong_inequality: return CheckFamily::strong_inequality;
    case CheckId::composed_inequality: return CheckFamily::composed_inequality;
    case CheckId::phi_inequality: return CheckFamily::phi_inequality;
    case CheckId::alpha_factorization:
    case CheckId::phi_factorization: return CheckFamily::factorization;
    case CheckId::alpha_oracle: return CheckFamily::alpha_oracle;
    case CheckId::phi_routes: return CheckFamily::phi_routes;
  }
  return CheckFamily::norm_axioms;
}

/// One-line statement of what a check asserts. Norms are the R(T)-valued ones.
inline std::string_view statement(CheckId id) {
  switch (id) {
    case CheckId::l1_definiteness: return "||f||_{T,1} vanishes on a cell exactly when f vanishes there";
    case CheckId::l1_homogeneity: return "||g f||_{T,1} = |g| ||f||_{T,1} for g in R(T)";
    case CheckId::l1_triangle: return "||f + h||_{T,1} <= ||f||_{T,1} + ||h||_{T,1}";
    case CheckId::linf_definiteness: return "||f||_{T,inf} vanishes on a cell exactly when f vanishes there";
    case CheckId::linf_homogeneity: return "||g f||_{T,inf} = |g| ||f||_{T,inf} for g in R(T)";
    case CheckId::linf_triangle: return "||f + h||_{T,inf} <= ||f||_{T,inf} + ||h||_{T,inf}";
    case CheckId::holder: return "||g f||_{T,1} <= ||g||_{T,inf} ||f||_{T,1}";
    case CheckId::norm_comparison: return "||g||_{T,1} <= ||g||_{T,inf}";
    case CheckId::jensen_l1: return "||S f||_{T,1} <= ||f||_{T,1} for S compatible with T";
    case CheckId::jensen_linf: return "||S f||_{T,inf} <= ||f||_{T,inf} for S compatible with T";
    case CheckId::alpha_bounds: return "alpha_T(U,V) <= sup_Q ||UQe - TQe||_{T,1} <= 2 alpha_T(U,V)";
    case CheckId::alpha_le_phi: return "alpha_T(U,V) <= phi_T(U,V)";
    case CheckId::strong_inequality: return "||Uf - Tf||_{T,1} <= 4 alpha_T(U,V) ||f||_{T,inf} for f in R(V)";
    case CheckId::composed_inequality: return "||UVg - Tg||_{T,1} <= 4 alpha_T(U,V) ||g||_{T,inf}";
    case CheckId::phi_inequality:
      return "||Uf - Tf||_{T,1} <= ||Uf - Tf||_{T,inf} <= 2 phi_T(U,V) ||f||_{T,inf} for f in R(V)";
    case CheckId::alpha_factorization: return "alpha_T(U,V) on block i equals the classical alpha under mu_i";
    case CheckId::phi_factorization: return "phi_T(U,V) on block i equals the classical phi under mu_i";
    case CheckId::alpha_oracle: return "positive-band alpha equals exhaustive-search alpha";
    case CheckId::phi_routes: return "classical phi via conditional probabilities equals phi via sup-norms";
  }
  return "";
}

// ---------------------------------------------------------------------------
// Results and witnesses
// ---------------------------------------------------------------------------

enum class Relation { le, eq, zero_iff };

inline std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::le: return "le";
    case Relation::eq: return "eq";
    case Relation::zero_iff: return "zero-iff";
  }
  return "unknown";
}

/// Everything needed to re-run a failed check: the instance as a space document,
/// the roles of its partitions and functions, the failing block and the optimal events.
struct Witness {
  CheckId check;
  std::size_t block = 0;
  std::vector<std::pair<std::string, IdSet>> events;
  Json params = Json::object();
  Json instance;
  Rational alpha_perturbation = 0;
};

struct CheckResult {
  CheckId id;
  Relation relation;
  bool holds;
  RangeElement lhs;
  std::optional<RangeElement> middle;
  RangeElement rhs;
  std::optional<Witness> witness;
};

struct VerifyOptions {
  /// Test hook: added to every strong mixing coefficient the checks consume.
  Rational alpha_perturbation = 0;
};

/// Cell values as rational strings; block order when the owner conditions on the blocks.
inline Json range_to_json(const RangeElement& r) {
  Json out = Json::array();
  const GroundSpace& space = r.owner().space();
  if (r.owner().partition() == Partition::blocks(space)) {
    for (std::size_t b = 0; b < space.block_count(); ++b) out.push_back(to_string(r.at(space.block_members(b).front())));
    return out;
  }
  for (const auto& v : r.cell_values()) out.push_back(to_string(v));
  return out;
}

inline Json to_json(const Witness& w) {
  Json events = Json::object();
  for (const auto& [name, ids] : w.events) events[name] = ids_to_json(ids);
  return Json{{"check", std::string(to_string(w.check))},
              {"block", w.block},
              {"events", std::move(events)},
              {"params", w.params},
              {"alpha_perturbation", to_string(w.alpha_perturbation)},
              {"instance", w.instance}};
}

inline Witness witness_from_json(const Json& j) {
  try {
    Witness w;
    auto id = check_from_string(j.at("check").get<std::string>());
    if (!id) throw Error(ErrorKind::parse, "unknown check \"" + j.at("check").get<std::string>() + "\"");
    w.check = *id;
    w.block = j.at("block").get<std::size_t>();
    for (const auto& item : j.at("events").items()) w.events.emplace_back(item.key(), item.value().get<IdSet>());
    w.params = j.at("params");
    w.alpha_perturbation = parse_rational(j.at("alpha_perturbation").get<std::string>());
    w.instance = j.at("instance");
    return w;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, std::string("malformed witness: ") + e.what());
  }
}

inline Json to_json(const CheckResult& r) {
  Json out{{"check", std::string(to_string(r.id))},
           {"relation", std::string(to_string(r.relation))},
           {"holds", r.holds},
           {"lhs", range_to_json(r.lhs)}};
  if (r.middle) out["middle"] = range_to_json(*r.middle);
  out["rhs"] = range_to_json(r.rhs);
  out["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  return out;
}

// ---------------------------------------------------------------------------
// Individual checks
// ---------------------------------------------------------------------------

/// Shared per-(T,U,V) quantities, computed once and reused by every mixing check.
struct MixingContext {
  CondExpectation t, u, v;
  MixingReport alpha;  // exhaustive search, perturbation applied
  MixingReport alpha_fast;
  MixingReport phi;
  RangeElement l1_gap;  // sup_Q ||UQe - TQe||_{T,1}
  std::vector<EventSet> l1_gap_witness;
  Rational perturbation;

  static MixingContext build(const CondExpectation& t, const CondExpectation& u, const CondExpectation& v,
                             const VerifyOptions& opts = {}) {
    MixingReport a = rieszmix::alpha_brute(t, u, v);
    if (opts.alpha_perturbation != 0)
      a.coefficient = RangeElement(t, a.coefficient.value() + LatticeFunction::constant(t.space(), opts.alpha_perturbation));
    MixingReport fast = rieszmix::alpha_fast(t, u, v);
    MixingReport p = rieszmix::phi(t, u, v);

    const GroundSpace& space = t.space();
    std::vector<Rational> gap;
    std::vector<EventSet> gap_witness;
    for (std::size_t b = 0; b < space.block_count(); ++b) {
      const std::size_t c = detail::block_cell(t, b);
      EventStream qe(v.partition(), b);
      Rational best = -1;
      std::uint64_t best_q = 0;
      for (auto it = qe.begin(); it != qe.end(); ++it) {
        LatticeFunction q = (*it).indicator();
        Rational val = tnorm_l1(t, u.apply(q) - t.apply(q)).cell_value(c);
        if (val > best) {
          best = val;
          best_q = it.mask();
        }
      }
      gap.push_back(best);
      gap_witness.push_back(qe[best_q]);
    }
    RangeElement l1 = detail::assemble(t, gap);
    return {t, u, v, std::move(a), std::move(fast), std::move(p), std::move(l1), std::move(gap_witness),
            opts.alpha_perturbation};
  }
};

namespace detail {

/// First point whose cell violates the relation, if any.
inline std::optional<PointIndex> first_violation(Relation rel, const RangeElement& lhs, const std::optional<RangeElement>& middle,
                                                 const RangeElement& rhs, const LatticeFunction* zero_probe) {
  const GroundSpace& space = lhs.owner().space();
  for (PointIndex i = 0; i < space.size(); ++i) {
    bool ok = true;
    switch (rel) {
      case Relation::le:
        ok = middle ? (lhs.at(i) <= middle->at(i) && middle->at(i) <= rhs.at(i)) : lhs.at(i) <= rhs.at(i);
        break;
      case Relation::eq: ok = lhs.at(i) == rhs.at(i); break;
      case Relation::zero_iff: {
        const Partition& p = lhs.owner().partition();
        bool f_zero = true;
        for (PointIndex j : p.cell(p.cell_of(i))) f_zero = f_zero && (*zero_probe)[j] == 0;
        ok = (lhs.at(i) == 0) == f_zero;
        break;
      }
    }
    if (!ok) return i;
  }
  return std::nullopt;
}

struct WitnessParts {
  std::vector<std::pair<std::string, const Partition*>> partitions;
  std::vector<std::pair<std::string, const LatticeFunction*>> functions;
  std::vector<std::pair<std::string, const MixingReport*>> reports;
  Json params = Json::object();
  Rational perturbation = 0;
};

inline CheckResult finish(CheckId id, Relation rel, RangeElement lhs, std::optional<RangeElement> middle, RangeElement rhs,
                          const WitnessParts& parts, const LatticeFunction* zero_probe = nullptr) {
  auto bad = first_violation(rel, lhs, middle, rhs, zero_probe);
  CheckResult result{id, rel, !bad.has_value(), std::move(lhs), std::move(middle), std::move(rhs), std::nullopt};
  if (!bad) return result;

  const GroundSpace& space = result.lhs.owner().space();
  Witness w;
  w.check = id;
  w.block = space.block_of(*bad);
  for (const auto& [name, report] : parts.reports) {
    const BlockWitness& bw = report->witnesses.at(w.block);
    if (bw.p_event) w.events.emplace_back(name + ".P", bw.p_event->ids());
    w.events.emplace_back(name + ".Q", bw.q_event.ids());
  }
  w.params = parts.params;
  w.alpha_perturbation = parts.perturbation;
  SpaceDocument doc{space, {}, {}};
  for (const auto& [name, p] : parts.partitions) doc.partitions.emplace_back(name, *p);
  for (const auto& [name, f] : parts.functions) doc.functions.emplace_back(name, *f);
  w.instance = to_json(doc);
  result.witness = std::move(w);
  return result;
}

inline WitnessParts mixing_parts(const MixingContext& ctx) {
  WitnessParts parts;
  parts.partitions = {{"T", &ctx.t.partition()}, {"U", &ctx.u.partition()}, {"V", &ctx.v.partition()}};
  parts.perturbation = ctx.perturbation;
  return parts;
}

inline CheckId norm_check_id(NormKind p, int axiom) {
  static constexpr CheckId l1[] = {CheckId::l1_definiteness, CheckId::l1_homogeneity, CheckId::l1_triangle};
  static constexpr CheckId linf[] = {CheckId::linf_definiteness, CheckId::linf_homogeneity, CheckId::linf_triangle};
  return p == NormKind::l1 ? l1[axiom] : linf[axiom];
}

inline Json norm_param(NormKind p) { return Json{{"p", std::string(to_string(p))}}; }

}  // namespace detail

inline CheckResult verify_norm_definiteness(const CondExpectation& t, const LatticeFunction& f, NormKind p) {
  detail::WitnessParts parts;
  parts.partitions = {{"T", &t.partition()}};
  parts.functions = {{"f", &f}};
  parts.params = detail::norm_param(p);
  return detail::finish(detail::norm_check_id(p, 0), Relation::zero_iff, tnorm(t, f, p), std::nullopt,
                        RangeElement::zero(t), parts, &f);
}

inline CheckResult verify_norm_homogeneity(const CondExpectation& t, const LatticeFunction& f, const LatticeFunction& g,
                                           NormKind p) {
  if (!in_range(t, g)) throw Error(ErrorKind::precondition, "homogeneity multiplier must lie in R(T)");
  detail::WitnessParts parts;
  parts.partitions = {{"T", &t.partition()}};
  parts.functions = {{"f", &f}, {"g", &g}};
  parts.params = detail::norm_param(p);
  RangeElement gm(t, magnitude(g));
  return detail::finish(detail::norm_check_id(p, 1), Relation::eq, tnorm(t, g * f, p), std::nullopt, gm * tnorm(t, f, p),
                        parts);
}

inline CheckResult verify_norm_triangle(const CondExpectation& t, const LatticeFunction& f, const LatticeFunction& h,
                                        NormKind p) {
  detail::WitnessParts parts;
  parts.partitions = {{"T", &t.partition()}};
  parts.functions = {{"f", &f}, {"h", &h}};
  parts.params = detail::norm_param(p);
  return detail::finish(detail::norm_check_id(p, 2), Relation::le, tnorm(t, f + h, p), std::nullopt,
                        tnorm(t, f, p) + tnorm(t, h, p), parts);
}

inline CheckResult verify_holder(const CondExpectation& t, const LatticeFunction& f, const LatticeFunction& g) {
  auto cmp = holder_bound(t, f, g);
  detail::WitnessParts parts;
  parts.partitions = {{"T", &t.partition()}};
  parts.functions = {{"f", &f}, {"g", &g}};
  return detail::finish(CheckId::holder, Relation::le, std::move(cmp.lhs), std::nullopt, std::move(cmp.rhs), parts);
}

inline CheckResult verify_norm_comparison(const CondExpectation& t, const LatticeFunction& g) {
  auto cmp = norm_comparison_values(t, g);
  detail::WitnessParts parts;
  parts.partitions = {{"T", &t.partition()}};
  parts.functions = {{"g", &g}};
  return detail::finish(CheckId::norm_comparison, Relation::le, std::move(cmp.lhs), std::nullopt, std::move(cmp.rhs),
                        parts);
}

inline CheckResult verify_jensen(const CondExpectation& t, const CondExpectation& s, const LatticeFunction& f, NormKind p) {
  auto cmp = jensen_check(t, s, f, p);
  detail::WitnessParts parts;
  parts.partitions = {{"T", &t.partition()}, {"S", &s.partition()}};
  parts.functions = {{"f", &f}};
  parts.params = detail::norm_param(p);
  return detail::finish(p == NormKind::l1 ? CheckId::jensen_l1 : CheckId::jensen_linf, Relation::le, std::move(cmp.lhs),
                        std::nullopt, std::move(cmp.rhs), parts);
}

inline CheckResult verify_alpha_bounds(const MixingContext& ctx) {
  auto parts = detail::mixing_parts(ctx);
  parts.reports = {{"alpha", &ctx.alpha}};
  return detail::finish(CheckId::alpha_bounds, Relation::le, ctx.alpha.coefficient, ctx.l1_gap,
                        Rational(2) * ctx.alpha.coefficient, parts);
}

inline CheckResult verify_alpha_le_phi(const MixingContext& ctx) {
  auto parts = detail::mixing_parts(ctx);
  parts.reports = {{"alpha", &ctx.alpha}, {"phi", &ctx.phi}};
  return detail::finish(CheckId::alpha_le_phi, Relation::le, ctx.alpha.coefficient, std::nullopt, ctx.phi.coefficient,
                        parts);
}

inline CheckResult verify_strong_inequality(const MixingContext& ctx, const LatticeFunction& f) {
  if (!in_range(ctx.v, f)) throw Error(ErrorKind::precondition, "strong mixing inequality needs f measurable for V");
  auto parts = detail::mixing_parts(ctx);
  parts.functions = {{"f", &f}};
  parts.reports = {{"alpha", &ctx.alpha}};
  return detail::finish(CheckId::strong_inequality, Relation::le, tnorm_l1(ctx.t, ctx.u.apply(f) - ctx.t.apply(f)),
                        std::nullopt, Rational(4) * ctx.alpha.coefficient * tnorm_linf(ctx.t, f), parts);
}

inline CheckResult verify_composed_inequality(const MixingContext& ctx, const LatticeFunction& g) {
  auto parts = detail::mixing_parts(ctx);
  parts.functions = {{"g", &g}};
  parts.reports = {{"alpha", &ctx.alpha}};
  return detail::finish(CheckId::composed_inequality, Relation::le,
                        tnorm_l1(ctx.t, ctx.u.apply(ctx.v.apply(g)) - ctx.t.apply(g)), std::nullopt,
                        Rational(4) * ctx.alpha.coefficient * tnorm_linf(ctx.t, g), parts);
}

inline CheckResult verify_phi_inequality(const MixingContext& ctx, const LatticeFunction& f) {
  if (!in_range(ctx.v, f)) throw Error(ErrorKind::precondition, "uniform mixing inequality needs f measurable for V");
  auto parts = detail::mixing_parts(ctx);
  parts.functions = {{"f", &f}};
  parts.reports = {{"phi", &ctx.phi}};
  LatticeFunction diff = ctx.u.apply(f) - ctx.t.apply(f);
  return detail::finish(CheckId::phi_inequality, Relation::le, tnorm_l1(ctx.t, diff), tnorm_linf(ctx.t, diff),
                        Rational(2) * ctx.phi.coefficient * tnorm_linf(ctx.t, f), parts);
}

inline CheckResult verify_alpha_factorization(const MixingContext& ctx) {
  std::vector<Rational> classical;
  for (std::size_t b = 0; b < ctx.t.space().block_count(); ++b)
    classical.push_back(classical_alpha(ctx.t.space(), ctx.u.partition(), ctx.v.partition(), b));
  auto parts = detail::mixing_parts(ctx);
  parts.reports = {{"alpha", &ctx.alpha}};
  return detail::finish(CheckId::alpha_factorization, Relation::eq, ctx.alpha.coefficient, std::nullopt,
                        detail::assemble(ctx.t, classical), parts);
}

inline CheckResult verify_phi_factorization(const MixingContext& ctx) {
  std::vector<Rational> classical;
  for (std::size_t b = 0; b < ctx.t.space().block_count(); ++b)
    classical.push_back(classical_phi(ctx.t.space(), ctx.u.partition(), ctx.v.partition(), PhiRoute::conditional_prob, b));
  auto parts = detail::mixing_parts(ctx);
  parts.reports = {{"phi", &ctx.phi}};
  return detail::finish(CheckId::phi_factorization, Relation::eq, ctx.phi.coefficient, std::nullopt,
                        detail::assemble(ctx.t, classical), parts);
}

inline CheckResult verify_alpha_oracle(const MixingContext& ctx) {
  auto parts = detail::mixing_parts(ctx);
  parts.reports = {{"alpha", &ctx.alpha}, {"alpha_fast", &ctx.alpha_fast}};
  return detail::finish(CheckId::alpha_oracle, Relation::eq, ctx.alpha_fast.coefficient, std::nullopt,
                        ctx.alpha.coefficient, parts);
}

inline CheckResult verify_phi_routes(const MixingContext& ctx) {
  std::vector<Rational> by_prob, by_norm;
  for (std::size_t b = 0; b < ctx.t.space().block_count(); ++b) {
    by_prob.push_back(classical_phi(ctx.t.space(), ctx.u.partition(), ctx.v.partition(), PhiRoute::conditional_prob, b));
    by_norm.push_back(classical_phi(ctx.t.space(), ctx.u.partition(), ctx.v.partition(), PhiRoute::linf_norm, b));
  }
  auto parts = detail::mixing_parts(ctx);
  return detail::finish(CheckId::phi_routes, Relation::eq, detail::assemble(ctx.t, by_prob), std::nullopt,
                        detail::assemble(ctx.t, by_norm), parts);
}

// Operator-level entry points that build the shared context themselves.

inline CheckResult verify_alpha_bounds(const CondExpectation& t, const CondExpectation& u, const CondExpectation& v,
                                       const VerifyOptions& opts = {}) {
  return verify_alpha_bounds(MixingContext::build(t, u, v, opts));
}
inline CheckResult verify_alpha_le_phi(const CondExpectation& t, const CondExpectation& u, const CondExpectation& v,
                                       const VerifyOptions& opts = {}) {
  return verify_alpha_le_phi(MixingContext::build(t, u, v, opts));
}
inline CheckResult verify_strong_inequality(const CondExpectation& t, const CondExpectation& u, const CondExpectation& v,
                                            const LatticeFunction& f, const VerifyOptions& opts = {}) {
  if (!in_range(v, f)) throw Error(ErrorKind::precondition, "strong mixing inequality needs f measurable for V");
  return verify_strong_inequality(MixingContext::build(t, u, v, opts), f);
}
inline CheckResult verify_composed_inequality(const CondExpectation& t, const CondExpectation& u, const CondExpectation& v,
                                              const LatticeFunction& g, const VerifyOptions& opts = {}) {
  return verify_composed_inequality(MixingContext::build(t, u, v, opts), g);
}
inline CheckResult verify_phi_inequality(const CondExpectation& t, const CondExpectation& u, const CondExpectation& v,
                                         const LatticeFunction& f, const VerifyOptions& opts = {}) {
  if (!in_range(v, f)) throw Error(ErrorKind::precondition, "uniform mixing inequality needs f measurable for V");
  return verify_phi_inequality(MixingContext::build(t, u, v, opts), f);
}
/// Both blockwise factorizations: strong coefficient first, then uniform.
inline std::vector<CheckResult> verify_factorization(const CondExpectation& t, const CondExpectation& u,
                                                     const CondExpectation& v, const VerifyOptions& opts = {}) {
  auto ctx = MixingContext::build(t, u, v, opts);
  std::vector<CheckResult> out;
  out.push_back(verify_alpha_factorization(ctx));
  out.push_back(verify_phi_factorization(ctx));
  return out;
}

/// Re-runs the check recorded in a witness on the instance it carries.
inline CheckResult rerun_witness(const Witness& w) {
  SpaceDocument doc = space_document_from_json(w.instance);
  CondExpectation t(doc.partition("T"));
  auto norm = [&] {
    return w.params.value("p", std::string("1")) == "1" ? NormKind::l1 : NormKind::linf;
  };
  auto mixing = [&] {
    return MixingContext::build(t, CondExpectation(doc.partition("U")), CondExpectation(doc.partition("V")),
                                VerifyOptions{w.alpha_perturbation});
  };
  switch (w.check) {
    case CheckId::l1_definiteness:
    case CheckId::linf_definiteness: return verify_norm_definiteness(t, doc.function("f"), norm());
    case CheckId::l1_homogeneity:
    case CheckId::linf_homogeneity: return verify_norm_homogeneity(t, doc.function("f"), doc.function("g"), norm());
    case CheckId::l1_triangle:
    case CheckId::linf_triangle: return verify_norm_triangle(t, doc.function("f"), doc.function("h"), norm());
    case CheckId::holder: return verify_holder(t, doc.function("f"), doc.function("g"));
    case CheckId::norm_comparison: return verify_norm_comparison(t, doc.function("g"));
    case CheckId::jensen_l1:
    case CheckId::jensen_linf: return verify_jensen(t, CondExpectation(doc.partition("S")), doc.function("f"), norm());
    case CheckId::alpha_bounds: return verify_alpha_bounds(mixing());
    case CheckId::alpha_le_phi: return verify_alpha_le_phi(mixing());
    case CheckId::strong_inequality: return verify_strong_inequality(mixing(), doc.function("f"));
    case CheckId::composed_inequality: return verify_composed_inequality(mixing(), doc.function("g"));
    case CheckId::phi_inequality: return verify_phi_inequality(mixing(), doc.function("f"));
    case CheckId::alpha_factorization: return verify_alpha_factorization(mixing());
    case CheckId::phi_factorization: return verify_phi_factorization(mixing());
    case CheckId::alpha_oracle: return verify_alpha_oracle(mixing());
    case CheckId::phi_routes: return verify_phi_routes(mixing());
  }
  throw Error(ErrorKind::precondition, "unknown check");
}

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

struct InstanceSpec {
  std::uint64_t seed = 0;
  std::size_t point_count = 8;
  std::size_t block_count = 2;
  std::size_t max_cells_per_block = 4;
  std::uint64_t weight_denominator_bound = 6;
  std::uint64_t function_value_bound = 5;
};

inline void validate(const InstanceSpec& spec) {
  if (spec.point_count < 1 || spec.block_count < 1)
    throw Error(ErrorKind::infeasible_budget, "need at least one point and one block");
  if (spec.block_count > spec.point_count)
    throw Error(ErrorKind::infeasible_budget, std::to_string(spec.block_count) + " blocks requested for " +
                                                  std::to_string(spec.point_count) + " points");
  if (spec.max_cells_per_block < 1) throw Error(ErrorKind::infeasible_budget, "max cells per block must be at least 1");
  if (spec.max_cells_per_block > spec.point_count)
    throw Error(ErrorKind::infeasible_budget, std::to_string(spec.max_cells_per_block) + " cells per block requested for " +
                                                  std::to_string(spec.point_count) + " points");
  if (spec.max_cells_per_block > 62) throw Error(ErrorKind::infeasible_budget, "at most 62 cells per block");
  if (spec.weight_denominator_bound < 1) throw Error(ErrorKind::infeasible_budget, "weight bound must be at least 1");
}

/// A verification instance: T conditions on the blocks; U and V refine them.
struct Instance {
  std::string label;
  std::optional<std::uint64_t> seed;
  GroundSpace space;
  CondExpectation t, u, v;
  std::vector<LatticeFunction> unrestricted;
  std::vector<LatticeFunction> v_measurable;
  std::vector<LatticeFunction> multipliers;  // elements of R(T)
};

namespace detail {

/// Portable draws: std distributions are implementation-defined, mt19937_64 is not.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, n).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % n;
  }
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

inline Partition random_refinement(const GroundSpace& space, std::size_t max_cells, Draw& draw) {
  std::vector<std::vector<PointIndex>> cells;
  for (std::size_t b = 0; b < space.block_count(); ++b) {
    auto m = space.block_members(b);
    std::vector<PointIndex> members(m.begin(), m.end());
    std::size_t k = 1 + draw.below(std::min(members.size(), max_cells));
    draw.shuffle(members);
    std::vector<std::vector<PointIndex>> local(k);
    for (std::size_t j = 0; j < members.size(); ++j) local[j < k ? j : draw.below(k)].push_back(members[j]);
    for (auto& c : local) cells.push_back(std::move(c));
  }
  return Partition::from_indices(space, std::move(cells));
}

inline Rational random_value(Draw& draw, std::uint64_t bound) {
  auto b = static_cast<std::int64_t>(bound);
  return Rational(draw.between(-b, b), draw.between(1, 3));
}

/// Random function constant on the cells of `p`.
inline LatticeFunction random_on_cells(const Partition& p, Draw& draw, std::uint64_t bound) {
  std::vector<Rational> values(p.space().size());
  for (const auto& cell : p.cells()) {
    Rational v = random_value(draw, bound);
    for (PointIndex i : cell) values[i] = v;
  }
  return LatticeFunction(p.space(), std::move(values));
}

}  // namespace detail

/// Deterministic in the seed.
inline Instance random_instance(const InstanceSpec& spec) {
  validate(spec);
  detail::Draw draw(spec.seed);
  const std::size_t n = spec.point_count;

  std::vector<PointIndex> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  draw.shuffle(order);
  std::vector<std::size_t> block_of(n);
  for (std::size_t k = 0; k < n; ++k) block_of[order[k]] = k < spec.block_count ? k : draw.below(spec.block_count);

  std::vector<WeightedPoint> points;
  std::vector<IdSet> blocks(spec.block_count);
  for (std::size_t i = 0; i < n; ++i) {
    auto num = draw.between(1, static_cast<std::int64_t>(spec.weight_denominator_bound));
    auto den = draw.between(1, static_cast<std::int64_t>(spec.weight_denominator_bound));
    points.push_back({"p" + std::to_string(i), Rational(num, den)});
    blocks[block_of[i]].push_back(points.back().id);
  }
  GroundSpace space = GroundSpace::build(points, blocks);
  CondExpectation t = CondExpectation::over_blocks(space);
  Partition up = detail::random_refinement(space, spec.max_cells_per_block, draw);
  Partition vp = detail::random_refinement(space, spec.max_cells_per_block, draw);
  Instance inst{"seed " + std::to_string(spec.seed), spec.seed, space, t, CondExpectation(up), CondExpectation(vp), {}, {}, {}};

  Partition discrete = Partition::discrete(space);
  inst.unrestricted.push_back(LatticeFunction::zero(space));
  for (int k = 0; k < 3; ++k) inst.unrestricted.push_back(detail::random_on_cells(discrete, draw, spec.function_value_bound));
  inst.v_measurable.push_back(LatticeFunction::unit(space));
  for (int k = 0; k < 3; ++k) inst.v_measurable.push_back(detail::random_on_cells(vp, draw, spec.function_value_bound));
  for (int k = 0; k < 2; ++k)
    inst.multipliers.push_back(detail::random_on_cells(t.partition(), draw, spec.function_value_bound));
  return inst;
}

/// Space document of a random instance: partitions "U", "V" and the random functions.
inline SpaceDocument instance_document(const Instance& inst) {
  SpaceDocument doc{inst.space, {{"U", inst.u.partition()}, {"V", inst.v.partition()}}, {}};
  for (std::size_t k = 1; k < inst.unrestricted.size(); ++k)
    doc.functions.emplace_back("g" + std::to_string(k - 1), inst.unrestricted[k]);
  return doc;
}

/// Instances over a space document, T conditioning on its blocks.
///
/// With `u` and `v` named, one instance; otherwise every ordered pair of the
/// document's block-refining partitions. Sample functions are the named functions,
/// the unit, zero, point indicators, and their V- and T-measurable projections.
inline std::vector<Instance> instances_from_document(const SpaceDocument& doc, const std::optional<std::string>& u = {},
                                                     const std::optional<std::string>& v = {}) {
  const GroundSpace& space = doc.space;
  CondExpectation t = CondExpectation::over_blocks(space);

  std::vector<std::pair<std::string, std::string>> pairs;
  if (u || v) {
    if (!u || !v) throw Error(ErrorKind::precondition, "name both U and V, or neither");
    pairs.emplace_back(*u, *v);
  } else {
    for (const auto& [a, pa] : doc.partitions)
      for (const auto& [b, pb] : doc.partitions)
        if (pa.refines_blocks() && pb.refines_blocks()) pairs.emplace_back(a, b);
    if (pairs.empty()) throw Error(ErrorKind::precondition, "the document has no partition refining its blocks");
  }

  std::vector<LatticeFunction> base{LatticeFunction::zero(space), LatticeFunction::unit(space)};
  for (const auto& [name, f] : doc.functions) base.push_back(f);
  for (PointIndex i = 0; i < space.size(); ++i) base.push_back(EventSet(space, {i}).indicator());

  auto signed_cells = [&](const Partition& p) {
    std::vector<Rational> values(space.size());
    for (std::size_t c = 0; c < p.cell_count(); ++c)
      for (PointIndex i : p.cell(c)) values[i] = Rational(c % 2 == 0 ? 1 : -1) * Rational(c + 1);
    return LatticeFunction(space, std::move(values));
  };

  std::vector<Instance> out;
  for (const auto& [un, vn] : pairs) {
    for (const auto* name : {&un, &vn}) {
      const Partition& p = doc.partition(*name);
      if (!p.refines_blocks())
        throw Error(ErrorKind::refinement_violation, "partition \"" + *name + "\" does not refine the blocks");
    }
    CondExpectation uo(doc.partition(un)), vo(doc.partition(vn));
    Instance inst{"U=" + un + " V=" + vn, std::nullopt, space, t, uo, vo, base, {}, {}};
    inst.v_measurable.push_back(LatticeFunction::unit(space));
    inst.v_measurable.push_back(signed_cells(vo.partition()));
    for (std::size_t c = 0; c < vo.partition().cell_count(); ++c) {
      auto cell = vo.partition().cell(c);
      inst.v_measurable.push_back(EventSet(space, {cell.begin(), cell.end()}).indicator());
    }
    for (const auto& [name, f] : doc.functions) inst.v_measurable.push_back(vo.apply(f));
    inst.multipliers.push_back(LatticeFunction::unit(space));
    inst.multipliers.push_back(signed_cells(t.partition()));
    for (const auto& [name, f] : doc.functions) inst.multipliers.push_back(t.apply(f));
    out.push_back(std::move(inst));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Suite
// ---------------------------------------------------------------------------

using FamilySet = std::vector<CheckFamily>;

inline bool selected(const FamilySet& families, CheckFamily f) {
  return families.empty() || std::find(families.begin(), families.end(), f) != families.end();
}

/// Enumeration counts of exhaustive alpha, positive-band alpha and phi, in that order.
using EnumerationCounts = std::array<std::uint64_t, 3>;

/// Runs every selected check on one instance, calling `sink` for each result in a fixed order.
/// Returns the enumeration counts when any mixing check ran, zeros otherwise.
template <class Sink>
EnumerationCounts run_checks(const Instance& inst, const FamilySet& families, const VerifyOptions& opts, Sink&& sink) {
  const CondExpectation& t = inst.t;
  std::vector<const LatticeFunction*> samples;
  for (const auto& f : inst.unrestricted) samples.push_back(&f);
  for (const auto& f : inst.v_measurable) samples.push_back(&f);

  if (selected(families, CheckFamily::norm_axioms)) {
    for (NormKind p : {NormKind::l1, NormKind::linf}) {
      for (const auto* f : samples) sink(verify_norm_definiteness(t, *f, p));
      for (const auto* f : samples)
        for (const auto& g : inst.multipliers) sink(verify_norm_homogeneity(t, *f, g, p));
      for (std::size_t i = 0; i < samples.size(); ++i)
        for (std::size_t j = i; j < samples.size(); ++j) sink(verify_norm_triangle(t, *samples[i], *samples[j], p));
    }
  }
  if (selected(families, CheckFamily::holder))
    for (const auto* f : samples)
      for (const auto* g : samples) sink(verify_holder(t, *f, *g));
  if (selected(families, CheckFamily::norm_comparison))
    for (const auto* g : samples) sink(verify_norm_comparison(t, *g));
  if (selected(families, CheckFamily::jensen))
    for (const CondExpectation* s : {&inst.u, &inst.v, &inst.t})
      for (NormKind p : {NormKind::l1, NormKind::linf})
        for (const auto* f : samples) sink(verify_jensen(t, *s, *f, p));

  static constexpr CheckFamily mixing_families[] = {
      CheckFamily::alpha_bounds,   CheckFamily::alpha_le_phi,  CheckFamily::strong_inequality,
      CheckFamily::composed_inequality, CheckFamily::phi_inequality, CheckFamily::factorization,
      CheckFamily::alpha_oracle,   CheckFamily::phi_routes};
  if (std::none_of(std::begin(mixing_families), std::end(mixing_families),
                   [&](CheckFamily f) { return selected(families, f); }))
    return {0, 0, 0};

  MixingContext ctx = MixingContext::build(t, inst.u, inst.v, opts);
  if (selected(families, CheckFamily::alpha_bounds)) sink(verify_alpha_bounds(ctx));
  if (selected(families, CheckFamily::alpha_le_phi)) sink(verify_alpha_le_phi(ctx));
  if (selected(families, CheckFamily::strong_inequality))
    for (const auto& f : inst.v_measurable) sink(verify_strong_inequality(ctx, f));
  if (selected(families, CheckFamily::composed_inequality))
    for (const auto* g : samples) sink(verify_composed_inequality(ctx, *g));
  if (selected(families, CheckFamily::phi_inequality))
    for (const auto& f : inst.v_measurable) sink(verify_phi_inequality(ctx, f));
  if (selected(families, CheckFamily::factorization)) {
    sink(verify_alpha_factorization(ctx));
    sink(verify_phi_factorization(ctx));
  }
  if (selected(families, CheckFamily::alpha_oracle)) sink(verify_alpha_oracle(ctx));
  if (selected(families, CheckFamily::phi_routes)) sink(verify_phi_routes(ctx));
  return {ctx.alpha.enumeration_count, ctx.alpha_fast.enumeration_count, ctx.phi.enumeration_count};
}

struct CheckTally {
  CheckId id;
  std::uint64_t evaluated = 0;
  std::uint64_t passed = 0;
};

struct InstanceSummary {
  std::size_t index;
  std::string label;
  std::optional<std::uint64_t> seed;
  std::size_t points;
  std::size_t blocks;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::uint64_t alpha_brute_enumeration = 0;
  std::uint64_t alpha_fast_enumeration = 0;
  std::uint64_t phi_enumeration = 0;
};

struct Violation {
  std::size_t instance;
  CheckResult result;
};

struct SuiteReport {
  std::vector<CheckTally> tallies;  // in all_checks order, only checks that ran
  std::vector<InstanceSummary> instances;
  std::optional<Violation> first_violation;
  std::chrono::microseconds elapsed{0};

  std::uint64_t total_checks() const {
    std::uint64_t n = 0;
    for (const auto& t : tallies) n += t.evaluated;
    return n;
  }
  std::uint64_t total_failures() const {
    std::uint64_t n = 0;
    for (const auto& t : tallies) n += t.evaluated - t.passed;
    return n;
  }
  bool all_passed() const { return total_failures() == 0; }
  std::uint64_t max_enumeration(std::uint64_t InstanceSummary::*field) const {
    std::uint64_t m = 0;
    for (const auto& s : instances) m = std::max(m, s.*field);
    return m;
  }
};

/// Worker count: RIESZMIX_THREADS if set to a positive integer, else the logical core count.
inline std::size_t parallelism() {
  if (const char* env = std::getenv("RIESZMIX_THREADS")) {
    char* end = nullptr;
    unsigned long n = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return n;
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

/// Runs the selected checks on every instance. Instances run concurrently; the merge
/// is ordered by instance index, so the report does not depend on scheduling.
inline SuiteReport run_instances(const std::vector<Instance>& instances, const FamilySet& families = {},
                                 const VerifyOptions& opts = {}, std::size_t threads = parallelism()) {
  const auto start = std::chrono::steady_clock::now();
  struct Outcome {
    std::vector<CheckTally> tallies;
    InstanceSummary summary{};
    std::optional<CheckResult> first_failure;
    std::exception_ptr error;
  };
  std::vector<Outcome> outcomes(instances.size());

  auto work = [&](std::size_t i) {
    Outcome& out = outcomes[i];
    const Instance& inst = instances[i];
    try {
      out.tallies.resize(all_checks.size());
      for (std::size_t k = 0; k < all_checks.size(); ++k) out.tallies[k].id = all_checks[k];
      out.summary = {i, inst.label, inst.seed, inst.space.size(), inst.space.block_count()};
      auto counts = run_checks(inst, families, opts, [&](CheckResult&& r) {
        auto& tally = out.tallies[static_cast<std::size_t>(r.id)];
        ++tally.evaluated;
        ++out.summary.checks;
        if (r.holds) {
          ++tally.passed;
        } else {
          ++out.summary.failures;
          if (!out.first_failure) out.first_failure = std::move(r);
        }
      });
      out.summary.alpha_brute_enumeration = counts[0];
      out.summary.alpha_fast_enumeration = counts[1];
      out.summary.phi_enumeration = counts[2];
    } catch (...) {
      out.error = std::current_exception();
    }
  };

  threads = std::max<std::size_t>(1, std::min(threads, instances.size()));
  if (threads == 1) {
    for (std::size_t i = 0; i < instances.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < instances.size(); i = next++) work(i);
      });
    for (auto& th : pool) th.join();
  }

  SuiteReport report;
  std::vector<CheckTally> totals(all_checks.size());
  for (std::size_t k = 0; k < all_checks.size(); ++k) totals[k].id = all_checks[k];
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    auto& out = outcomes[i];
    if (out.error) std::rethrow_exception(out.error);
    for (std::size_t k = 0; k < totals.size(); ++k) {
      totals[k].evaluated += out.tallies[k].evaluated;
      totals[k].passed += out.tallies[k].passed;
    }
    report.instances.push_back(out.summary);
    if (out.first_failure && !report.first_violation) report.first_violation = Violation{i, std::move(*out.first_failure)};
  }
  for (auto& t : totals)
    if (t.evaluated > 0) report.tallies.push_back(t);
  report.elapsed =
      std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start);
  return report;
}

inline SuiteReport run_suite(const std::vector<InstanceSpec>& specs, const FamilySet& families = {},
                             const VerifyOptions& opts = {}, std::size_t threads = parallelism()) {
  for (const auto& s : specs) validate(s);
  std::vector<Instance> instances;
  instances.reserve(specs.size());
  for (const auto& s : specs) instances.push_back(random_instance(s));
  return run_instances(instances, families, opts, threads);
}

inline Json to_json(const SuiteReport& report, bool include_timing = true) {
  Json checks = Json::array();
  for (const auto& t : report.tallies)
    checks.push_back({{"check", std::string(to_string(t.id))},
                      {"family", std::string(to_string(family_of(t.id)))},
                      {"statement", std::string(statement(t.id))},
                      {"evaluated", t.evaluated},
                      {"passed", t.passed},
                      {"failed", t.evaluated - t.passed}});
  Json instances = Json::array();
  for (const auto& s : report.instances) {
    Json j{{"index", s.index}, {"label", s.label}};
    j["seed"] = s.seed ? Json(*s.seed) : Json(nullptr);
    j["points"] = s.points;
    j["blocks"] = s.blocks;
    j["checks"] = s.checks;
    j["failures"] = s.failures;
    j["enumeration"] = {{"alpha_brute", s.alpha_brute_enumeration},
                        {"alpha_fast", s.alpha_fast_enumeration},
                        {"phi", s.phi_enumeration}};
    instances.push_back(std::move(j));
  }
  Json out{{"all_passed", report.all_passed()},
           {"instance_count", report.instances.size()},
           {"total_checks", report.total_checks()},
           {"total_failures", report.total_failures()},
           {"max_enumeration",
            {{"alpha_brute", report.max_enumeration(&InstanceSummary::alpha_brute_enumeration)},
             {"alpha_fast", report.max_enumeration(&InstanceSummary::alpha_fast_enumeration)},
             {"phi", report.max_enumeration(&InstanceSummary::phi_enumeration)}}},
           {"checks", std::move(checks)},
           {"instances", std::move(instances)}};
  if (report.first_violation) {
    Json v = to_json(report.first_violation->result);
    v["instance"] = report.first_violation->instance;
    out["first_violation"] = std::move(v);
  } else {
    out["first_violation"] = nullptr;
  }
  if (include_timing) out["timing"] = {{"elapsed_us", report.elapsed.count()}};
  return out;
}

}  // namespace rieszmix
