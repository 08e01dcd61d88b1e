// mada/corpus.h

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

#ifndef MADA_CORPUS_H_
#define MADA_CORPUS_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mada/common.h"

namespace mada {

// One domain's slot schema. `informable` keeps the declaration order from the
// ontology file; that order is the canonical slot order of belief spans.
// A slot present in `values` with a non-empty list is a closed set; an empty
// list (or no entry) means open vocabulary.
struct DomainSchema {
  std::vector<std::string> informable;
  std::map<std::string, std::vector<std::string>> values;
  std::vector<std::string> requestable;
  // Requestable then informable, first occurrence wins: the canonical slot
  // order of action spans.
  std::vector<std::string> action_slots;

  bool operator==(const DomainSchema&) const = default;
};

struct Ontology {
  std::vector<std::string> domains;  // fixed order, drives every canonical sort
  std::vector<std::string> acts;     // fixed order
  std::map<std::string, DomainSchema> schema;

  static Ontology load(const std::string& path);

  // Checks the structural invariants: unique symbols, act/domain marker
  // vocabularies disjoint, closed-set values disjoint from the same domain's
  // informable slot names. Throws ValidationError.
  void validate() const;

  bool has_domain(const std::string& d) const;
  bool has_act(const std::string& a) const;
  int domain_index(const std::string& d) const;  // -1 when unknown
  int act_index(const std::string& a) const;
  const DomainSchema& at(const std::string& d) const;  // throws when unknown
  bool informable_slot(const std::string& d, const std::string& s) const;
  bool action_slot(const std::string& d, const std::string& s) const;
  int informable_index(const std::string& d, const std::string& s) const;
  int action_slot_index(const std::string& d, const std::string& s) const;
};

using EntityRecord = std::map<std::string, std::string>;

struct VenueDatabase {
  // Domains with no entry here have no database (e.g. taxi).
  std::map<std::string, std::vector<EntityRecord>> records;

  static VenueDatabase load(const std::string& path, const Ontology& ontology);

  bool has_domain(const std::string& d) const;

  // The record's "name" value, else its "id" value, else nullptr.
  static const std::string* name_or_id(const EntityRecord& record);

  // A record matches when every constraint slot is present with an equal
  // value. The value "dontcare" matches anything.
  static bool matches(const EntityRecord& record,
                      const std::map<std::string, std::string>& constraints);

  std::vector<const EntityRecord*> match(
      const std::string& domain,
      const std::map<std::string, std::string>& constraints) const;
  int match_count(const std::string& domain,
                  const std::map<std::string, std::string>& constraints) const;

  // match()/match_count() with the constraints first narrowed to slots some
  // record of the domain actually carries: a slot the database does not track
  // (a booking time, say) cannot narrow a venue query.
  std::vector<const EntityRecord*> query(
      const std::string& domain,
      const std::map<std::string, std::string>& constraints) const;
  int query_count(const std::string& domain,
                  const std::map<std::string, std::string>& constraints) const;
};

// One dialog-act annotation. The slot may be empty (act with no argument).
struct ActTriple {
  std::string domain;
  std::string act;
  std::string slot;

  auto operator<=>(const ActTriple&) const = default;
};

// domain -> slot -> value, cumulative at each turn.
using Belief = std::map<std::string, std::map<std::string, std::string>>;

// One placeholder replacement made by delexicalization: `token` is the
// placeholder ("<v.slot>"), `value` the removed surface string.
struct Substitution {
  std::string token;
  std::string domain;
  std::string slot;
  std::string value;

  bool operator==(const Substitution&) const = default;
};

struct Turn {
  int index = 0;
  std::string user;
  std::vector<ActTriple> user_acts;
  Belief belief;
  std::vector<ActTriple> sys_acts;
  std::string response;
  // Present once the turn has passed through the delexicalization stage.
  std::optional<std::string> delex_response;
  std::vector<Substitution> substitutions;

  bool operator==(const Turn&) const = default;
};

struct GoalDomain {
  std::map<std::string, std::string> inform;
  std::vector<std::string> request;
  std::map<std::string, std::string> book;

  bool operator==(const GoalDomain&) const = default;
};

struct Dialog {
  std::string id;
  std::map<std::string, GoalDomain> goal;
  std::vector<Turn> turns;

  bool operator==(const Dialog&) const = default;
};

// Loads and validates a corpus file. All text is normalized (lowercased,
// whitespace-tokenized) on the way in. Every domain/act/slot symbol must
// resolve in the ontology; error messages name the file, dialog and turn.
std::vector<Dialog> load_corpus(const std::string& path, const Ontology& ontology);

void save_corpus(const std::string& path, const std::vector<Dialog>& dialogs);

struct SplitResult {
  std::vector<Dialog> train;
  std::vector<Dialog> dev;
  std::vector<Dialog> test;
};

// Deterministic shuffle-and-cut. Ratios must be positive and sum to 1 within
// 1e-9; train gets floor(n*r0) dialogs, dev floor(n*r1), test the remainder.
SplitResult split(const std::vector<Dialog>& dialogs, const std::array<double, 3>& ratios,
                  uint64_t seed);

}  // namespace mada

#endif  // MADA_CORPUS_H_
