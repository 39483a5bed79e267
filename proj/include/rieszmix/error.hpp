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

#include <stdexcept>
#include <string>
#include <string_view>

namespace rieszmix {

/// Classification of every validation failure the library can raise.
enum class ErrorKind {
  duplicate_id,
  nonpositive_weight,
  not_a_partition,
  refinement_violation,
  space_mismatch,
  unknown_id,
  invalid_block,
  precondition,
  incompatible,
  blocks_mismatch,
  inconsistent_criteria,
  infeasible_budget,
  parse,
  unknown_reference,
  io,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::duplicate_id: return "duplicate-id";
    case ErrorKind::nonpositive_weight: return "nonpositive-weight";
    case ErrorKind::not_a_partition: return "not-a-partition";
    case ErrorKind::refinement_violation: return "refinement-violation";
    case ErrorKind::space_mismatch: return "space-mismatch";
    case ErrorKind::unknown_id: return "unknown-id";
    case ErrorKind::invalid_block: return "invalid-block";
    case ErrorKind::precondition: return "precondition-violation";
    case ErrorKind::incompatible: return "incompatible";
    case ErrorKind::blocks_mismatch: return "partition-not-blocks";
    case ErrorKind::inconsistent_criteria: return "inconsistent-criteria";
    case ErrorKind::infeasible_budget: return "infeasible-budget";
    case ErrorKind::parse: return "parse-error";
    case ErrorKind::unknown_reference: return "unknown-reference";
    case ErrorKind::io: return "io-error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), message_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace rieszmix
