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

#include "qchan/spec_io.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

namespace qchan::io {

namespace {

bool is_complex_entry(const json& j) {
  return j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number();
}

bool is_flat(const json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j) {
    if (!e.is_number() && !is_complex_entry(e)) return false;
  }
  return true;
}

void pretty(const json& j, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + json(key).dump() + ": ";
      pretty(value, depth + 1, out);
    }
    out += "\n" + close_pad + "}";
  } else if (j.is_array() && !j.empty() && !is_flat(j)) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i > 0) out += ",\n";
      out += pad;
      pretty(j[i], depth + 1, out);
    }
    out += "\n" + close_pad + "]";
  } else {
    out += j.dump();
  }
}

Complex entry_from_json(const json& j, const std::string& where) {
  if (!is_complex_entry(j)) {
    throw ParseError(where + ": expected a [re, im] pair of numbers");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Index positive_int(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  const json& v = doc[key];
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw ParseError(std::string("field '") + key + "' must be a positive integer");
  }
  return static_cast<Index>(v.get<long long>());
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("invalid JSON at line " + std::to_string(line) + ", column " +
                     std::to_string(col));
  }
}

}  // namespace

json to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const ComplexVector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

json to_json(const KrausChannel& ch) {
  json doc;
  doc["dim_in"] = ch.dim_in();
  doc["dim_out"] = ch.dim_out();
  json ops = json::array();
  for (const auto& x : ch.kraus()) ops.push_back(to_json(x));
  doc["kraus"] = std::move(ops);
  return doc;
}

json to_json(const PureState& psi) {
  json doc;
  doc["dims"] = {psi.dims().m, psi.dims().n};
  doc["pure"] = to_json(psi.amplitudes());
  return doc;
}

json to_json(const DensityMatrix& rho) {
  json doc;
  doc["dims"] = {rho.dims().m, rho.dims().n};
  doc["density"] = to_json(rho.matrix());
  return doc;
}

ComplexMatrix matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ParseError(where + ": expected a non-empty list of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) {
    throw ParseError(where + "[0]: expected a non-empty row of [re, im] entries");
  }
  const std::size_t cols = j[0].size();
  ComplexMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string row_where = where + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols) {
      throw ParseError(row_where + ": expected a row of " + std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Index>(r), static_cast<Index>(c)) =
          entry_from_json(j[r][c], row_where + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

ComplexVector vector_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ParseError(where + ": expected a non-empty list");
  ComplexVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Index>(i)) = entry_from_json(j[i], where + "[" + std::to_string(i) + "]");
  }
  return v;
}

ChannelSpec parse_channel(std::string_view text) {
  const json doc = parse_text(text);
  if (!doc.is_object()) throw ParseError("channel file must be a JSON object");
  ChannelSpec spec;
  spec.dim_in = positive_int(doc, "dim_in");
  spec.dim_out = positive_int(doc, "dim_out");
  if (!doc.contains("kraus")) throw ParseError("missing field 'kraus'");
  const json& ops = doc["kraus"];
  if (!ops.is_array() || ops.empty()) {
    throw ParseError("kraus: expected a non-empty list of matrices");
  }
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const std::string where = "kraus[" + std::to_string(k) + "]";
    ComplexMatrix x = matrix_from_json(ops[k], where);
    if (x.rows() != spec.dim_out || x.cols() != spec.dim_in) {
      throw ParseError(where + ": shape " + std::to_string(x.rows()) + "x" +
                       std::to_string(x.cols()) + " does not match dim_out x dim_in = " +
                       std::to_string(spec.dim_out) + "x" + std::to_string(spec.dim_in));
    }
    spec.kraus.push_back(std::move(x));
  }
  return spec;
}

StateSpec parse_state(std::string_view text) {
  const json doc = parse_text(text);
  if (!doc.is_object()) throw ParseError("state file must be a JSON object");
  if (!doc.contains("dims")) throw ParseError("missing field 'dims'");
  const json& dims = doc["dims"];
  if (!dims.is_array() || dims.size() != 2 || !dims[0].is_number_integer() ||
      !dims[1].is_number_integer() || dims[0].get<long long>() < 1 ||
      dims[1].get<long long>() < 1) {
    throw ParseError("dims: expected [m, n] with positive integers");
  }
  StateSpec spec;
  spec.dims = {static_cast<Index>(dims[0].get<long long>()),
               static_cast<Index>(dims[1].get<long long>())};
  const bool has_pure = doc.contains("pure");
  const bool has_density = doc.contains("density");
  if (has_pure == has_density) {
    throw ParseError("state file needs exactly one of 'pure' or 'density'");
  }
  if (has_pure) {
    ComplexVector v = vector_from_json(doc["pure"], "pure");
    if (v.size() != spec.dims.total()) {
      throw ParseError("pure: expected " + std::to_string(spec.dims.total()) +
                       " amplitudes, got " + std::to_string(v.size()));
    }
    spec.data = std::move(v);
  } else {
    ComplexMatrix m = matrix_from_json(doc["density"], "density");
    if (m.rows() != spec.dims.total() || m.cols() != spec.dims.total()) {
      throw ParseError("density: expected a " + std::to_string(spec.dims.total()) + "x" +
                       std::to_string(spec.dims.total()) + " matrix");
    }
    spec.data = std::move(m);
  }
  return spec;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw ParseError("failed writing '" + path + "'");
}

std::string format_document(const json& doc) {
  std::string out;
  pretty(doc, 0, out);
  out += "\n";
  return out;
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

}  // namespace qchan::io
