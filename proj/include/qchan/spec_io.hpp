// Copyright 2026 The qchan Authors
//
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

/**
 * @file spec_io.hpp
 * @brief JSON channel and state files.
 *
 * Channel file:
 *
 *     {"dim_in": 2, "dim_out": 2,
 *      "kraus": [ [[[1,0],[0,0]], [[0,0],[1,0]]] ]}
 *
 * State file:
 *
 *     {"dims": [2, 2], "pure": [[0.7071067811865476,0],[0,0],[0,0],[0.7071067811865476,0]]}
 *     {"dims": [2, 2], "density": [[[re,im], ...], ...]}
 *
 * Every complex entry is a two-element [re, im] array. Doubles are written
 * in shortest round-trip form, so write-then-read is bit-exact.
 */

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "qchan/channels.hpp"
#include "qchan/errors.hpp"
#include "qchan/states.hpp"

namespace qchan::io {

using json = nlohmann::ordered_json;

/// Malformed file: JSON syntax, missing field or bad entry. The message names
/// the line/column or the field path.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Parsed but not yet validated channel file.
struct ChannelSpec {
  Index dim_in = 0;
  Index dim_out = 0;
  std::vector<ComplexMatrix> kraus;
};

/// Parsed but not yet validated state file.
struct StateSpec {
  BipartiteDims dims;
  std::variant<ComplexVector, ComplexMatrix> data;  // pure amplitudes | density

  bool is_pure() const { return std::holds_alternative<ComplexVector>(data); }
};

json to_json(const ComplexMatrix& m);
json to_json(const ComplexVector& v);
json to_json(const KrausChannel& ch);
json to_json(const PureState& psi);
json to_json(const DensityMatrix& rho);

/// `where` prefixes error messages, e.g. "kraus[1]".
ComplexMatrix matrix_from_json(const json& j, const std::string& where);
ComplexVector vector_from_json(const json& j, const std::string& where);

/// Parses text; shapes are checked against dim_in / dim_out.
ChannelSpec parse_channel(std::string_view text);
StateSpec parse_state(std::string_view text);

/// Reads a whole file; ParseError if it cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

/// Pretty JSON with each [re, im] row kept on one line, newline-terminated.
std::string format_document(const json& doc);

/// "fnv1a64:" followed by 16 hex digits.
std::string digest(std::string_view bytes);

}  // namespace qchan::io
