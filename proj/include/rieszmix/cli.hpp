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

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rieszmix/verify.hpp"

namespace rieszmix::cli {

inline constexpr int exit_pass = 0;
inline constexpr int exit_violation = 1;
inline constexpr int exit_input_error = 2;
inline constexpr int report_schema_version = 1;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot read \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes to a sibling temporary file, then renames it over `path`.
inline void write_file_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::io, "cannot write \"" + path + "\"");
    out << text;
    out.flush();
    if (!out) throw Error(ErrorKind::io, "cannot write \"" + path + "\"");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::io, "cannot write \"" + path + "\"");
  }
}

inline void emit(const Json& doc, const std::string& output, std::ostream& out) {
  std::string text = doc.dump(2) + "\n";
  if (output.empty() || output == "-")
    out << text;
  else
    write_file_atomic(output, text);
}

inline Json events_json(const BlockWitness& w) {
  Json out = Json::object();
  if (w.p_event) out["p"] = ids_to_json(w.p_event->ids());
  out["q"] = ids_to_json(w.q_event.ids());
  return out;
}

inline Json mixing_report_json(const std::string& coefficient, const MixingReport& report) {
  const GroundSpace& space = report.coefficient.owner().space();
  Json blocks = Json::array();
  for (std::size_t b = 0; b < space.block_count(); ++b) {
    Json members = Json::array();
    for (PointIndex i : space.block_members(b)) members.push_back(space.id(i));
    blocks.push_back({{"block", b},
                      {"members", std::move(members)},
                      {"value", to_string(report.block_value(b))},
                      {"witness", events_json(report.witnesses.at(b))}});
  }
  return Json{{"coefficient", coefficient},
              {"method", std::string(to_string(report.method))},
              {"enumeration_count", report.enumeration_count},
              {"blocks", std::move(blocks)}};
}

struct InstanceFlags {
  std::uint64_t seed = 0;
  std::size_t points = 8;
  std::size_t blocks = 2;
  std::size_t max_cells = 4;
  std::uint64_t weight_bound = 6;
  std::uint64_t value_bound = 5;

  void add_to(CLI::App& app) {
    app.add_option("--seed", seed, "Random seed (first instance)")->capture_default_str();
    app.add_option("--points", points, "Points per instance")->capture_default_str();
    app.add_option("--blocks", blocks, "Blocks per instance")->capture_default_str();
    app.add_option("--max-cells", max_cells, "Maximum U/V cells per block")->capture_default_str();
    app.add_option("--weight-bound", weight_bound, "Bound on weight numerators and denominators")->capture_default_str();
    app.add_option("--value-bound", value_bound, "Bound on sample function numerators")->capture_default_str();
  }
  InstanceSpec spec(std::uint64_t offset = 0) const {
    return {seed + offset, points, blocks, max_cells, weight_bound, value_bound};
  }
  Json echo() const {
    return {{"seed", seed},       {"points", points},           {"blocks", blocks},
            {"max_cells", max_cells}, {"weight_bound", weight_bound}, {"value_bound", value_bound}};
  }
};

inline constexpr std::string_view explain_text = R"(rieszmix checks (select with verify --check FAMILY)

Conditioning: T averages over the blocks; U and V average over partitions that
refine the blocks. Norms ||.||_{T,1} = T|.| and ||.||_{T,inf} (least block-constant
bound of |.|) take values in R(T), the block-constant functions, and every
comparison below is blockwise and exact.
)";

inline std::string explain() {
  std::ostringstream out;
  out << explain_text << '\n';
  for (auto family : all_families) {
    out << to_string(family) << '\n';
    for (auto id : all_checks)
      if (family_of(id) == family) out << "  " << to_string(id) << ": " << statement(id) << '\n';
  }
  return out.str();
}

/// Runs the command line; returns the process exit status.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Exact conditional mixing coefficients on finite measure spaces", "rieszmix"};
  app.require_subcommand(1);
  bool omit_timing = false;
  std::string output;

  auto* compute = app.add_subcommand("compute", "Compute alpha or phi for two named partitions");
  std::string space_path, coefficient, u_name, v_name, method = "brute";
  compute->add_option("--space", space_path, "Space file")->required();
  compute->add_option("--coefficient", coefficient, "alpha or phi")->required()->check(CLI::IsMember({"alpha", "phi"}));
  compute->add_option("--u", u_name, "Partition conditioning the first algebra")->required();
  compute->add_option("--v", v_name, "Partition conditioning the second algebra")->required();
  compute->add_option("--method", method, "brute or fast (alpha only)")->check(CLI::IsMember({"brute", "fast"}))
      ->capture_default_str();
  compute->add_option("--output", output, "Report path (default stdout)");
  compute->add_flag("--omit-timing", omit_timing, "Leave wall-clock fields out of the report");

  auto* verify = app.add_subcommand("verify", "Run the inequality checks on a space file or random instances");
  std::string verify_space, replay;
  std::optional<std::string> verify_u, verify_v;
  bool random = false, perturb = false;
  std::size_t instances = 1;
  std::vector<std::string> families;
  InstanceFlags vflags;
  verify->add_option("--space", verify_space, "Space file");
  verify->add_option("--u", verify_u, "Partition for U (default: every pair)");
  verify->add_option("--v", verify_v, "Partition for V (default: every pair)");
  verify->add_flag("--random", random, "Verify seeded random instances");
  verify->add_option("--instances", instances, "Number of random instances")->capture_default_str();
  vflags.add_to(*verify);
  verify->add_option("--check", families, "Check family to run (repeatable; default all)");
  verify->add_option("--replay", replay, "Re-run the witness in a report or witness file");
  verify->add_option("--output", output, "Report path (default stdout)");
  verify->add_flag("--omit-timing", omit_timing, "Leave wall-clock fields out of the report");
  verify->add_flag("--perturb-alpha", perturb, "")->group("");

  auto* gen = app.add_subcommand("gen", "Write a random space file");
  InstanceFlags gflags;
  gflags.add_to(*gen);
  std::string gen_output;
  gen->add_option("--output", gen_output, "Output path")->required();

  app.add_subcommand("explain", "Describe every check");

  Json command;
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_pass : exit_input_error;
  }

  const auto start = std::chrono::steady_clock::now();
  auto elapsed_us = [&] {
    return std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();
  };

  try {
    if (app.got_subcommand(compute)) {
      command = {{"name", "compute"}, {"space", space_path}, {"coefficient", coefficient},
                 {"u", u_name},       {"v", v_name},         {"method", method}};
      SpaceDocument doc = parse_space_spec(read_file(space_path));
      CondExpectation t = CondExpectation::over_blocks(doc.space);
      auto operator_for = [&](const std::string& name) {
        const Partition& p = doc.partition(name);
        if (!p.refines_blocks())
          throw Error(ErrorKind::refinement_violation, "partition \"" + name + "\" does not refine the blocks");
        return CondExpectation(p);
      };
      CondExpectation u = operator_for(u_name), v = operator_for(v_name);
      MixingReport report = coefficient == "phi"    ? phi(t, u, v)
                            : method == "fast"      ? alpha_fast(t, u, v)
                                                    : alpha_brute(t, u, v);
      Json doc_out{{"schema_version", report_schema_version},
                   {"command", command},
                   {"result", mixing_report_json(coefficient, report)}};
      if (!omit_timing) doc_out["timing"] = {{"elapsed_us", elapsed_us()}};
      emit(doc_out, output, out);
      return exit_pass;
    }

    if (app.got_subcommand(verify)) {
      command = {{"name", "verify"}};
      VerifyOptions opts;
      if (perturb) opts.alpha_perturbation = 1;

      if (!replay.empty()) {
        command["replay"] = replay;
        Json src = Json::parse(read_file(replay));
        const Json* w = &src;
        if (src.contains("suite")) w = &src["suite"]["first_violation"]["witness"];
        else if (src.contains("witness")) w = &src["witness"];
        if (w->is_null()) throw Error(ErrorKind::parse, "no witness in \"" + replay + "\"");
        CheckResult result = rerun_witness(witness_from_json(*w));
        Json doc_out{{"schema_version", report_schema_version}, {"command", command}, {"replay", to_json(result)}};
        if (!omit_timing) doc_out["timing"] = {{"elapsed_us", elapsed_us()}};
        emit(doc_out, output, out);
        return result.holds ? exit_pass : exit_violation;
      }

      FamilySet selection;
      Json echo_families = Json::array();
      for (const auto& name : families) {
        auto f = family_from_string(name);
        if (!f) throw Error(ErrorKind::parse, "unknown check family \"" + name + "\"");
        selection.push_back(*f);
        echo_families.push_back(name);
      }
      command["checks"] = echo_families;
      if (opts.alpha_perturbation != 0) command["alpha_perturbation"] = to_string(opts.alpha_perturbation);

      SuiteReport report;
      if (random == !verify_space.empty())
        throw Error(ErrorKind::precondition, "verify needs exactly one of --space or --random");
      if (random) {
        command["random"] = vflags.echo();
        command["random"]["instances"] = instances;
        std::vector<InstanceSpec> specs;
        for (std::size_t i = 0; i < instances; ++i) specs.push_back(vflags.spec(i));
        report = run_suite(specs, selection, opts);
      } else {
        command["space"] = verify_space;
        if (verify_u) command["u"] = *verify_u;
        if (verify_v) command["v"] = *verify_v;
        SpaceDocument doc = parse_space_spec(read_file(verify_space));
        report = run_instances(instances_from_document(doc, verify_u, verify_v), selection, opts);
      }
      Json doc_out{{"schema_version", report_schema_version}, {"command", command}, {"suite", to_json(report, false)}};
      if (!omit_timing) doc_out["timing"] = {{"elapsed_us", elapsed_us()}};
      emit(doc_out, output, out);
      return report.all_passed() ? exit_pass : exit_violation;
    }

    if (app.got_subcommand(gen)) {
      command = {{"name", "gen"}};
      command.update(gflags.echo());
      command["output"] = gen_output;
      SpaceDocument doc = instance_document(random_instance(gflags.spec()));
      write_file_atomic(gen_output, serialize_space_spec(doc));
      return exit_pass;
    }

    out << explain();
    return exit_pass;
  } catch (const Error& e) {
    Json doc_out{{"schema_version", report_schema_version},
                 {"command", command},
                 {"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.message()}}}};
    out << doc_out.dump(2) << "\n";
    err << "rieszmix: " << e.what() << "\n";
    return exit_input_error;
  } catch (const nlohmann::json::exception& e) {
    Json doc_out{{"schema_version", report_schema_version},
                 {"command", command},
                 {"error", {{"kind", "parse-error"}, {"message", e.what()}}}};
    out << doc_out.dump(2) << "\n";
    err << "rieszmix: " << e.what() << "\n";
    return exit_input_error;
  }
}

}  // namespace rieszmix::cli
