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

// Acceptance run: one PASS/FAIL line per criterion, each with its time budget.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "fixtures.hpp"
#include "oracle.hpp"

using namespace fixtures;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool ok;
  std::string detail;
};

std::string show(const std::vector<Rational>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + to_string(v[i]);
  return out + ")";
}

int cli_run(std::vector<std::string> args, std::string* stdout_text = nullptr) {
  args.insert(args.begin(), "rieszmix");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (stdout_text) *stdout_text = out.str();
  return code;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("rieszmix_acceptance_" + name)).string();
}

Verdict s1_chain() {
  auto a = s1();
  auto t = CondExpectation::over_blocks(a);
  CondExpectation u(c1(a));
  auto chain = verify_alpha_bounds(t, u, u);
  auto ph = phi(t, u, u);
  auto bl = block_labels(t.space()), ul = labels_of(u.partition());
  auto w = weights_of(a);

  Rational alpha = chain.lhs.cell_value(0), gap = chain.middle->cell_value(0), two_alpha = chain.rhs.cell_value(0);
  bool values = alpha == q("1/4") && gap == q("1/2") && ph.block_value(0) == q("1/2");
  bool oracle_ok = alpha == oracle::alpha(w, bl, ul, ul, 0) && gap == oracle::l1_gap(w, bl, ul, ul, 0) &&
                   ph.block_value(0) == oracle::phi(w, bl, ul, ul, 0);
  bool tight = chain.holds && gap == two_alpha;
  return {values && oracle_ok && tight, "alpha=" + to_string(alpha) + " phi=" + to_string(ph.block_value(0)) +
                                            " chain " + to_string(alpha) + " <= " + to_string(gap) +
                                            " <= " + to_string(two_alpha)};
}

Verdict s2_blocks() {
  auto b = s2();
  auto t = CondExpectation::over_blocks(b);
  CondExpectation u(cd(b));
  auto al = alpha_brute(t, u, u).coefficient.cell_values();
  auto ph = phi(t, u, u).coefficient.cell_values();
  auto fact = verify_factorization(t, u, u);
  auto w = weights_of(b);
  auto bl = block_labels(t.space()), ul = labels_of(u.partition());
  bool oracle_ok = true;
  for (int blk = 0; blk < 2; ++blk)
    oracle_ok = oracle_ok && al[blk] == oracle::alpha(w, bl, ul, ul, blk) && ph[blk] == oracle::phi(w, bl, ul, ul, blk);
  bool ok = al == std::vector<Rational>{q("1/4"), q("3/16")} && ph == std::vector<Rational>{q("1/2"), q("3/4")} &&
            fact.size() == 2 && fact[0].holds && fact[1].holds && oracle_ok;
  return {ok, "alpha=" + show(al) + " phi=" + show(ph)};
}

InstanceSpec varied_spec(std::uint64_t seed, std::size_t i) {
  std::size_t points = 4 + i % 9;             // 4..12
  std::size_t blocks = 1 + i % 3;             // 1..3
  std::size_t cells = 1 + (i / 3) % 4;        // 1..4
  return {seed, points, blocks, cells, 6, 5};
}

Verdict fast_equals_brute() {
  std::size_t mismatches = 0;
  std::uint64_t brute_work = 0, fast_work = 0;
  for (std::size_t i = 0; i < 500; ++i) {
    Instance inst = random_instance(varied_spec(1000 + i, i));
    auto brute = alpha_brute(inst.t, inst.u, inst.v);
    auto fast = alpha_fast(inst.t, inst.u, inst.v);
    if (!(brute.coefficient == fast.coefficient)) ++mismatches;
    brute_work += brute.enumeration_count;
    fast_work += fast.enumeration_count;
  }
  return {mismatches == 0, "500 instances, " + std::to_string(mismatches) + " mismatches, enumeration " +
                               std::to_string(brute_work) + " vs " + std::to_string(fast_work)};
}

Verdict inequality_suite() {
  std::vector<InstanceSpec> specs;
  for (std::size_t i = 0; i < 1000; ++i) specs.push_back(varied_spec(50000 + i, i));
  auto report = run_suite(specs);
  static constexpr CheckId required[] = {
      CheckId::l1_definiteness, CheckId::l1_homogeneity, CheckId::l1_triangle, CheckId::linf_definiteness,
      CheckId::linf_homogeneity, CheckId::linf_triangle, CheckId::holder, CheckId::norm_comparison,
      CheckId::jensen_l1, CheckId::jensen_linf, CheckId::alpha_bounds, CheckId::alpha_le_phi,
      CheckId::strong_inequality, CheckId::composed_inequality, CheckId::phi_inequality};
  bool covered = true;
  for (CheckId id : required) {
    bool ran = false;
    for (const auto& t : report.tallies) ran = ran || (t.id == id && t.evaluated > 0);
    covered = covered && ran;
  }
  return {report.all_passed() && covered && report.instances.size() == 1000,
          "1000 instances, " + std::to_string(report.total_checks()) + " checks, " +
              std::to_string(report.total_failures()) + " violations"};
}

Verdict phi_routes() {
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < 500; ++i) {
    std::size_t points = 2 + i % 11;  // 2..12
    InstanceSpec spec{7000 + i, points, 1, 1 + i % std::min<std::size_t>(4, points), 6, 5};
    Instance inst = random_instance(spec);
    Rational by_prob = classical_phi(inst.space, inst.u.partition(), inst.v.partition(), PhiRoute::conditional_prob);
    Rational by_norm = classical_phi(inst.space, inst.u.partition(), inst.v.partition(), PhiRoute::linf_norm);
    if (by_prob != by_norm) ++mismatches;
  }
  return {mismatches == 0, "500 single-block instances, " + std::to_string(mismatches) + " mismatches"};
}

/// Every set partition of {0..n-1}, by restricted growth strings.
std::vector<std::vector<std::vector<PointIndex>>> set_partitions(std::size_t n) {
  std::vector<std::vector<std::vector<PointIndex>>> out;
  std::vector<std::size_t> rgs(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
    if (i == n) {
      std::vector<std::vector<PointIndex>> cells(used);
      for (std::size_t k = 0; k < n; ++k) cells[rgs[k]].push_back(k);
      out.push_back(std::move(cells));
      return;
    }
    for (std::size_t c = 0; c <= used && c < n; ++c) {
      rgs[i] = c;
      rec(i + 1, std::max(used, c + 1));
    }
  };
  rec(0, 0);
  return out;
}

Verdict compatibility() {
  static constexpr std::size_t bell[] = {1, 1, 2, 5, 15, 52};
  std::size_t pairs = 0, disagreements = 0;
  bool counts_ok = true;
  for (std::size_t n = 1; n <= 5; ++n) {
    auto parts = set_partitions(n);
    counts_ok = counts_ok && parts.size() == bell[n];
    for (int weighting = 0; weighting < 2; ++weighting) {
      std::vector<WeightedPoint> pts;
      IdSet all;
      for (std::size_t i = 0; i < n; ++i) {
        pts.push_back({"w" + std::to_string(i), weighting == 0 ? Rational(1) : Rational(i + 1, 2 * i + 3)});
        all.push_back(pts.back().id);
      }
      GroundSpace space = GroundSpace::build(pts, {all});
      std::vector<CondExpectation> ops;
      for (const auto& cells : parts) ops.emplace_back(Partition::from_indices(space, cells));
      for (const auto& u : ops)
        for (const auto& t : ops) {
          ++pairs;
          if (compatible_by_composition(u, t) != compatible_by_refinement(u, t)) ++disagreements;
        }
    }
  }
  return {counts_ok && disagreements == 0,
          std::to_string(pairs) + " ordered pairs, " + std::to_string(disagreements) + " disagreements"};
}

Verdict self_test() {
  std::string report = temp_path("perturbed.json");
  int perturbed = cli_run({"verify", "--space", fixture_path("s1.json"), "--perturb-alpha", "--output", report});
  std::string replay_text;
  int replay = cli_run({"verify", "--replay", report, "--omit-timing"}, &replay_text);
  Json original = Json::parse(cli::read_file(report))["suite"]["first_violation"];
  original.erase("instance");
  Json replayed = Json::parse(replay_text)["replay"];
  bool witness_ok = !original["witness"].is_null() && replayed == original;
  std::filesystem::remove(report);
  int clean1 = cli_run({"verify", "--space", fixture_path("s1.json")});
  int clean2 = cli_run({"verify", "--space", fixture_path("s2.json")});
  return {perturbed == 1 && replay == 1 && witness_ok && clean1 == 0 && clean2 == 0,
          "perturbed exit " + std::to_string(perturbed) + ", replay exit " + std::to_string(replay) +
              ", clean exits " + std::to_string(clean1) + "/" + std::to_string(clean2) +
              (witness_ok ? ", witness reproduced" : ", witness differs")};
}

Verdict determinism() {
  std::string a = temp_path("gen_a.json"), b = temp_path("gen_b.json");
  bool gen_ok = true;
  for (const char* seed : {"0", "1", "42"}) {
    cli_run({"gen", "--seed", seed, "--points", "10", "--blocks", "3", "--output", a});
    cli_run({"gen", "--seed", seed, "--points", "10", "--blocks", "3", "--output", b});
    gen_ok = gen_ok && cli::read_file(a) == cli::read_file(b) && !cli::read_file(a).empty();
  }
  std::filesystem::remove(a);
  std::filesystem::remove(b);

  std::vector<InstanceSpec> specs;
  for (std::size_t i = 0; i < 40; ++i) specs.push_back(varied_spec(900 + i, i));
  std::string first = to_json(run_suite(specs), false).dump(2);
  std::string second = to_json(run_suite(specs), false).dump(2);
  std::string cli1, cli2;
  cli_run({"verify", "--random", "--seed", "3", "--instances", "20", "--omit-timing"}, &cli1);
  cli_run({"verify", "--random", "--seed", "3", "--instances", "20", "--omit-timing"}, &cli2);
  bool suite_ok = first == second && cli1 == cli2;
  return {gen_ok && suite_ok, std::string("gen ") + (gen_ok ? "identical" : "differs") + ", suite " +
                                  (suite_ok ? "identical" : "differs")};
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    double budget_s;
    Verdict (*run)();
  };
  const Criterion criteria[] = {
      {1, "S1 values and tight chain", 1, s1_chain},
      {2, "S2 blockwise values and factorization", 1, s2_blocks},
      {3, "fast alpha equals exhaustive alpha", 60, fast_equals_brute},
      {4, "inequality suite", 300, inequality_suite},
      {5, "classical phi routes agree", 30, phi_routes},
      {6, "compatibility criteria agree", 30, compatibility},
      {7, "perturbation self-test", 5, self_test},
      {8, "determinism", 10, determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    auto start = Clock::now();
    Verdict v{false, ""};
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    bool ok = v.ok && secs < c.budget_s;
    if (!ok) ++failures;
    std::printf("criterion %d %s: %s (%s; %.2f s of %.0f s)\n", c.number, c.name, ok ? "PASS" : "FAIL", v.detail.c_str(),
                secs, c.budget_s);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
