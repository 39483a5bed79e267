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

#include <json.hpp>

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rieszmix/conditional.hpp"

namespace rieszmix {

using Json = nlohmann::ordered_json;

/// A parsed space file: the space, its named partitions and named functions in file order.
///
/// File layout (JSON):
///   { "points":     [ {"id": "a", "weight": "1/4"}, ... ],
///     "blocks":     [ ["a", "b"], ... ],
///     "partitions": { "C1": [ ["a"], ["b"] ], ... },          optional
///     "functions":  { "f": { "a": "1", "b": "-1/2" }, ... } }  optional
/// Rationals are strings "p/q" or "p". Every function lists every point.
struct SpaceDocument {
  GroundSpace space;
  std::vector<std::pair<std::string, Partition>> partitions;
  std::vector<std::pair<std::string, LatticeFunction>> functions;

  const Partition& partition(const std::string& name) const {
    for (const auto& [n, p] : partitions)
      if (n == name) return p;
    throw Error(ErrorKind::unknown_reference, "no partition named \"" + name + "\"");
  }
  const LatticeFunction& function(const std::string& name) const {
    for (const auto& [n, f] : functions)
      if (n == name) return f;
    throw Error(ErrorKind::unknown_reference, "no function named \"" + name + "\"");
  }
};

namespace detail {

[[noreturn]] inline void fail_at(ErrorKind kind, const std::string& path, const std::string& message) {
  throw Error(kind, "at " + path + ": " + message);
}

inline void reject_unknown_fields(const Json& obj, std::initializer_list<std::string_view> allowed, const std::string& path) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || item.key() == a;
    if (!known) fail_at(ErrorKind::parse, path, "unknown field \"" + item.key() + "\"");
  }
}

inline Rational rational_field(const Json& node, const std::string& path) {
  try {
    if (node.is_string()) return parse_rational(node.get<std::string>());
    if (node.is_number_integer()) return parse_rational(node.dump());
  } catch (const Error& e) {
    fail_at(ErrorKind::parse, path, e.message());
  }
  fail_at(ErrorKind::parse, path, "expected a rational string \"p/q\"");
}

inline std::vector<IdSet> id_lists(const Json& node, const std::string& path) {
  if (!node.is_array()) fail_at(ErrorKind::parse, path, "expected a list of id lists");
  std::vector<IdSet> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const Json& cell = node[i];
    std::string cpath = path + "[" + std::to_string(i) + "]";
    if (!cell.is_array()) fail_at(ErrorKind::parse, cpath, "expected a list of point ids");
    IdSet ids;
    for (std::size_t j = 0; j < cell.size(); ++j) {
      if (!cell[j].is_string()) fail_at(ErrorKind::parse, cpath + "[" + std::to_string(j) + "]", "expected a point id string");
      ids.push_back(cell[j].get<std::string>());
    }
    out.push_back(std::move(ids));
  }
  return out;
}

inline std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace detail

inline SpaceDocument space_document_from_json(const Json& root) {
  using detail::fail_at;
  if (!root.is_object()) fail_at(ErrorKind::parse, "$", "expected an object");
  detail::reject_unknown_fields(root, {"points", "blocks", "partitions", "functions"}, "$");
  if (!root.contains("points")) fail_at(ErrorKind::parse, "$", "missing field \"points\"");
  if (!root.contains("blocks")) fail_at(ErrorKind::parse, "$", "missing field \"blocks\"");

  const Json& pts = root["points"];
  if (!pts.is_array()) fail_at(ErrorKind::parse, "points", "expected a list");
  std::vector<WeightedPoint> points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::string path = "points[" + std::to_string(i) + "]";
    const Json& p = pts[i];
    if (!p.is_object()) fail_at(ErrorKind::parse, path, "expected an object");
    detail::reject_unknown_fields(p, {"id", "weight"}, path);
    if (!p.contains("id") || !p["id"].is_string()) fail_at(ErrorKind::parse, path + ".id", "expected a string id");
    if (!p.contains("weight")) fail_at(ErrorKind::parse, path, "missing field \"weight\"");
    Rational w = detail::rational_field(p["weight"], path + ".weight");
    if (w <= 0) fail_at(ErrorKind::nonpositive_weight, path + ".weight", "weight must be positive, got " + to_string(w));
    points.push_back({p["id"].get<std::string>(), w});
  }

  auto blocks = detail::id_lists(root["blocks"], "blocks");
  SpaceDocument doc;
  try {
    doc.space = GroundSpace::build(points, blocks);
  } catch (const Error& e) {
    fail_at(e.kind(), e.kind() == ErrorKind::duplicate_id ? "points" : "blocks", e.message());
  }

  if (root.contains("partitions")) {
    const Json& parts = root["partitions"];
    if (!parts.is_object()) fail_at(ErrorKind::parse, "partitions", "expected an object of named partitions");
    for (const auto& item : parts.items()) {
      std::string path = "partitions." + item.key();
      auto cells = detail::id_lists(item.value(), path);
      try {
        doc.partitions.emplace_back(item.key(), build_partition(doc.space, cells, false));
      } catch (const Error& e) {
        fail_at(e.kind(), path, e.message());
      }
    }
  }

  if (root.contains("functions")) {
    const Json& fns = root["functions"];
    if (!fns.is_object()) fail_at(ErrorKind::parse, "functions", "expected an object of named functions");
    for (const auto& item : fns.items()) {
      std::string path = "functions." + item.key();
      if (!item.value().is_object()) fail_at(ErrorKind::parse, path, "expected an object mapping point ids to rationals");
      std::vector<Rational> values(doc.space.size());
      std::vector<bool> seen(doc.space.size(), false);
      for (const auto& entry : item.value().items()) {
        auto idx = doc.space.find(entry.key());
        if (!idx) fail_at(ErrorKind::unknown_id, path, "unknown point id \"" + entry.key() + "\"");
        values[*idx] = detail::rational_field(entry.value(), path + "." + entry.key());
        seen[*idx] = true;
      }
      for (PointIndex i = 0; i < doc.space.size(); ++i)
        if (!seen[i]) fail_at(ErrorKind::parse, path, "no value for point \"" + doc.space.id(i) + "\"");
      doc.functions.emplace_back(item.key(), LatticeFunction(doc.space, std::move(values)));
    }
  }
  return doc;
}

inline SpaceDocument parse_space_spec(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::parse, "syntax error at " + detail::line_column(text, e.byte > 0 ? e.byte - 1 : 0) + ": " +
                                      std::string(e.what()));
  }
  return space_document_from_json(root);
}

inline Json ids_to_json(const IdSet& ids) {
  Json out = Json::array();
  for (const auto& id : ids) out.push_back(id);
  return out;
}

inline Json partition_to_json(const Partition& p) {
  Json cells = Json::array();
  for (const auto& cell : p.cells()) {
    Json c = Json::array();
    for (PointIndex i : cell) c.push_back(p.space().id(i));
    cells.push_back(std::move(c));
  }
  return cells;
}

inline Json function_to_json(const LatticeFunction& f) {
  Json out = Json::object();
  for (PointIndex i = 0; i < f.size(); ++i) out[f.space().id(i)] = to_string(f[i]);
  return out;
}

inline Json to_json(const SpaceDocument& doc) {
  const GroundSpace& space = doc.space;
  Json root = Json::object();
  Json pts = Json::array();
  for (PointIndex i = 0; i < space.size(); ++i) pts.push_back({{"id", space.id(i)}, {"weight", to_string(space.weight(i))}});
  root["points"] = std::move(pts);
  Json blocks = Json::array();
  for (std::size_t b = 0; b < space.block_count(); ++b) {
    Json members = Json::array();
    for (PointIndex i : space.block_members(b)) members.push_back(space.id(i));
    blocks.push_back(std::move(members));
  }
  root["blocks"] = std::move(blocks);
  if (!doc.partitions.empty()) {
    Json parts = Json::object();
    for (const auto& [name, p] : doc.partitions) parts[name] = partition_to_json(p);
    root["partitions"] = std::move(parts);
  }
  if (!doc.functions.empty()) {
    Json fns = Json::object();
    for (const auto& [name, f] : doc.functions) fns[name] = function_to_json(f);
    root["functions"] = std::move(fns);
  }
  return root;
}

/// Canonical text form: two-space indented JSON with a trailing newline.
inline std::string serialize_space_spec(const SpaceDocument& doc) { return to_json(doc).dump(2) + "\n"; }

}  // namespace rieszmix
