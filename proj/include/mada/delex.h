// mada/delex.h

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

#ifndef MADA_DELEX_H_
#define MADA_DELEX_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mada/corpus.h"

namespace mada {

// Surface value -> the (domain, slot) pairs it can fill, collected from
// ontology closed sets, database records and corpus belief annotations.
// Placeholders are shared across domains ("<v.phone>", never
// "<hotel.phone>"), so the index is what decides whether an unannotated
// match is unambiguous enough to replace.
struct ValueIndex {
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> sources;

  static ValueIndex build(const Ontology& ontology, const VenueDatabase& db,
                          const std::vector<Dialog>& dialogs);

  void add(const std::string& value, const std::string& domain, const std::string& slot);
};

struct DelexResult {
  std::string text;
  std::vector<Substitution> substitutions;  // in occurrence order
};

// Replaces annotated slot values (and unambiguous index values) with
// "<v.slot>" placeholders. Matching is longest-first over token windows,
// scanning left to right without overlaps. When one annotated value fills
// several slots, occurrences take the slots in sorted (domain, slot) order.
DelexResult delexicalize(const std::string& utterance, const Belief& annotations,
                         const ValueIndex& index);

struct RelexResult {
  std::string text;
  std::vector<std::string> unfilled;  // placeholders with no value, left intact
};

// Replaces each "<v.slot>" token with values[slot]. Missing slots are
// reported, not dropped.
RelexResult relexicalize(const std::string& template_text,
                         const std::map<std::string, std::string>& values);

// Fills delex_response/substitutions for every turn's response.
void delexicalize_corpus(std::vector<Dialog>& dialogs, const ValueIndex& index, int jobs = 1);

// Span token vocabulary for downstream models: domain markers, act markers,
// slot names, placeholders. One token per line when written to a file.
std::vector<std::string> span_vocabulary(const Ontology& ontology);

}  // namespace mada

#endif  // MADA_DELEX_H_
