// json_util.h

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Internal helpers for the file formats. Not installed.

#ifndef MADA_SRC_JSON_UTIL_H_
#define MADA_SRC_JSON_UTIL_H_

#include <string>

#include <json.hpp>

#include "mada/common.h"

namespace mada {

// Parses a JSON file; IoError when unreadable, ValidationError (naming the
// file) when malformed. OrderedJson keeps object key order from the file,
// which the ontology relies on for slot ordering.
template <typename JsonT>
JsonT load_json_file(const std::string& path) {
  std::string text = read_text_file(path);
  JsonT j = JsonT::parse(text, nullptr, false);
  if (j.is_discarded()) throw ValidationError(path + ": malformed JSON");
  return j;
}

inline void dump_json_file(const std::string& path, const nlohmann::json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace mada

#endif  // MADA_SRC_JSON_UTIL_H_
