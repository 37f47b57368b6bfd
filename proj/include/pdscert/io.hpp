// Copyright 2026 The pdscert Authors
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

//! @file
//! Candidate-set files.
//!
//! A set file is a JSON object
//!
//!     {"group": "Z3^2", "elements": [[0,1],[0,2],[1,0],[2,0]]}
//!
//! where each element is an exponent vector in the canonical factor order
//! of the group (prime-power factors sorted by prime, then exponent).
//! Unknown fields are ignored.

#ifndef PDSCERT_IO_HPP
#define PDSCERT_IO_HPP

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "pdscert/errors.hpp"
#include "pdscert/group.hpp"
#include "pdscert/pds.hpp"

namespace pdscert {

inline CandidateSet parse_set(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed set file: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("set file must be a JSON object");
  if (!j.contains("group") || !j["group"].is_string()) throw ParseError("field 'group': missing or not a string");
  if (!j.contains("elements") || !j["elements"].is_array()) throw ParseError("field 'elements': missing or not an array");
  const GroupSpec group = GroupSpec::parse(j["group"].get<std::string>());
  std::vector<GroupElement> elements;
  const auto& arr = j["elements"];
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& e = arr[i];
    const std::string where = "field 'elements[" + std::to_string(i) + "]'";
    if (!e.is_array()) throw ParseError(where + ": not an array");
    std::vector<std::int64_t> values;
    for (const auto& x : e) {
      if (!x.is_number_integer()) throw ParseError(where + ": entries must be integers");
      values.push_back(x.get<std::int64_t>());
    }
    try {
      elements.push_back(group.checked_element(values));
    } catch (const ParseError& err) {
      throw ParseError(where + ": " + err.what());
    }
  }
  const std::size_t listed = elements.size();
  CandidateSet set(group, std::move(elements));
  if (set.size() != listed) throw ParseError("field 'elements': duplicate elements");
  return set;
}

inline CandidateSet read_set_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_set(ss.str());
}

/// Single-line JSON object; `extra` fields are appended after the two
/// required ones.
inline std::string format_set(const CandidateSet& set, const nlohmann::ordered_json& extra = nlohmann::ordered_json::object()) {
  nlohmann::ordered_json j;
  j["group"] = set.group().notation();
  j["elements"] = nlohmann::ordered_json::array();
  for (const auto& g : set.elements()) j["elements"].push_back(g.exponents());
  for (const auto& [key, value] : extra.items()) j[key] = value;
  return j.dump();
}

}  // namespace pdscert

#endif  // PDSCERT_IO_HPP
