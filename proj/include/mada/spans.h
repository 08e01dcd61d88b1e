// mada/spans.h

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

#ifndef MADA_SPANS_H_
#define MADA_SPANS_H_

#include <set>
#include <string>
#include <vector>

#include "mada/corpus.h"

namespace mada {

using BeliefState = Belief;

// A set of dialog-act triples in canonical order (ontology domain order, act
// order within a domain, action-slot order within an act). Construction
// normalizes: duplicates collapse, and a slot-free triple is dropped when the
// same (domain, act) also occurs with a slot, which makes span encoding and
// decoding exact inverses.
class SystemAction {
 public:
  SystemAction() = default;
  SystemAction(std::vector<ActTriple> triples, const Ontology& ontology);

  const std::vector<ActTriple>& triples() const { return triples_; }
  bool empty() const { return triples_.empty(); }
  std::set<std::string> act_types() const;
  std::set<std::string> slots() const;  // non-empty slots only

  auto operator<=>(const SystemAction&) const = default;

 private:
  std::vector<ActTriple> triples_;
};

// Belief span: "[domain] slot value..." with domains and slots in canonical
// order. Values may span several tokens; a token is read as a slot name only
// when it is in the current domain's informable slot vocabulary, which is why
// slot names and value tokens must be disjoint per domain.
Tokens encode_belief_span(const BeliefState& belief, const Ontology& ontology);
BeliefState decode_belief_span(const Tokens& span, const Ontology& ontology);

// Action span: "[domain] [act] slot...".
Tokens encode_action_span(const SystemAction& action, const Ontology& ontology);
SystemAction decode_action_span(const Tokens& span, const Ontology& ontology);

// String convenience wrappers over the token forms.
std::string belief_span_string(const BeliefState& belief, const Ontology& ontology);
BeliefState belief_from_span(const std::string& span, const Ontology& ontology);
std::string action_span_string(const SystemAction& action, const Ontology& ontology);
SystemAction action_from_span(const std::string& span, const Ontology& ontology);

// The domain holding the most recently changed slot value: the first domain
// (in ontology order) whose slots differ between prev and cur. Falls back to
// prev_domain when nothing changed.
std::string active_domain(const BeliefState& prev, const BeliefState& cur,
                          const std::string& prev_domain, const Ontology& ontology);

// One-hot bucket over DB match counts {0},{1},{2-3},{4-10},{>10} plus a
// booking bit.
struct DbVector {
  int bucket = 0;   // index into the five count buckets
  int booking = 0;  // 0 or 1

  static int bucket_for_count(int count);
  std::string text() const;  // "bucket,booking"

  auto operator<=>(const DbVector&) const = default;
};

// Match count of `domain`'s records against the belief's constraints for that
// domain ("dontcare" ignored). Domains without a database report the count-1
// bucket by convention.
DbVector db_vector(const BeliefState& belief, const std::string& domain,
                   const VenueDatabase& db, bool booking_ok);

}  // namespace mada

#endif  // MADA_SPANS_H_
