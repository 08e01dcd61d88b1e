// mada/statemap.h

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

#ifndef MADA_STATEMAP_H_
#define MADA_STATEMAP_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mada/spans.h"

namespace mada {

// S = <active domain, belief state, DB result, user action set>. User acts
// carry no values; the belief carries full values.
struct DialogState {
  std::string domain;
  BeliefState belief;
  DbVector db;
  std::vector<ActTriple> user_acts;  // sorted, deduplicated

  bool operator==(const DialogState&) const = default;
};

// Canonical textual serialization of a DialogState:
//   D=<domain>|DB=<bucket,booking>|AU=(d,a,s)(d,a,s)...|B=<dom>:<slot>=<value>;...&...
// Sections are sorted; structural characters inside names/values are
// backslash-escaped. The text form is the map key and the policy model's
// full-context id; coarser model contexts are sub-selections of sections.
struct StateKey {
  std::string text;

  static StateKey parse(const std::string& text);  // validates the shape

  // 1 = full key, 2 = D|DB|AU, 3 = D|AU, 4 = D.
  std::string level_context(int level) const;
  std::string domain() const;

  auto operator<=>(const StateKey&) const = default;
};

StateKey canonical_key(const DialogState& state);

// States for every turn of the dialog. The active domain chains through the
// turns: turn 0 defaults to the first user-act domain, else the first goal
// domain in ontology order, else the first ontology domain.
std::vector<DialogState> build_states(const Dialog& dialog, const Ontology& ontology,
                                      const VenueDatabase& db);
DialogState build_state(const Dialog& dialog, int turn, const Ontology& ontology,
                        const VenueDatabase& db);

struct ActionOccurrence {
  std::string action_span;
  int count = 0;
  std::vector<std::pair<std::string, int>> sources;  // (dialog_id, turn), sorted

  bool operator==(const ActionOccurrence&) const = default;
};

// V(S): every system action observed for each state key, with counts and
// provenance. Entries and sources are kept sorted, so building the map is
// independent of dialog order, byte for byte.
struct StateActionMap {
  std::map<std::string, std::vector<ActionOccurrence>> states;

  const std::vector<ActionOccurrence>* find(const std::string& key) const;

  void save(const std::string& path) const;
  static StateActionMap load(const std::string& path);
};

StateActionMap build_state_action_map(const std::vector<Dialog>& dialogs,
                                      const Ontology& ontology, const VenueDatabase& db,
                                      int jobs = 1);

}  // namespace mada

#endif  // MADA_STATEMAP_H_
