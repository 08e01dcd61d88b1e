// mada/policy.h

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

#ifndef MADA_POLICY_H_
#define MADA_POLICY_H_

#include <array>
#include <map>
#include <string>
#include <vector>

#include "mada/decode.h"
#include "mada/statemap.h"

namespace mada {

struct PolicyConfig {
  // Interpolation weights for the four context levels: full state key;
  // (domain, DB bucket, user acts); (domain, user acts); (domain).
  std::array<double, 4> lambdas{0.7, 0.15, 0.1, 0.05};
  double alpha = 0.01;  // add-alpha smoothing inside a level
  // Ontology act vocabulary, for the everything-unseen fallback.
  std::vector<std::string> acts;
};

struct TrainingPair {
  StateKey key;
  std::string action_span;  // canonical form

  bool operator==(const TrainingPair&) const = default;
};

// Count model over action-span token sequences: order-2 (bigram) counts kept
// independently at each backoff level. Scoring mixes the levels whose context
// was seen in training, weights renormalized; a level smooths internally with
// add-alpha over the span vocabulary.
struct ActionModel {
  static constexpr const char* kBos = "<s>";
  static constexpr const char* kEos = "</s>";

  struct ContextStats {
    int pairs = 0;
    std::map<std::string, int> actions;  // span -> count
    std::map<std::string, std::map<std::string, int>> bigrams;  // prev -> next -> count
    std::map<std::string, int> totals;   // prev -> total count
  };

  PolicyConfig config;
  std::vector<std::string> vocab;  // sorted span tokens plus the end marker
  std::array<std::map<std::string, ContextStats>, 4> levels;

  void save(const std::string& path) const;
  static ActionModel load(const std::string& path);
};

ActionModel train(const std::vector<TrainingPair>& pairs, const PolicyConfig& config);

// P(action | state) over the actions observed at any matching level,
// normalized to sum to 1. A state whose contexts were never seen at any level
// falls back to a uniform distribution over the act vocabulary's single-act
// spans in the state's domain.
std::map<std::string, double> action_distribution(const ActionModel& model, const StateKey& key);
std::map<std::string, double> action_distribution(const ActionModel& model,
                                                  const DialogState& state);

double distribution_entropy(const std::map<std::string, double>& dist);

// Token-level adapter for the decoders. The model must outlive the scorer.
SequenceScorer sequence_scorer(const ActionModel& model, const StateKey& key);
SequenceScorer sequence_scorer(const ActionModel& model, const DialogState& state);

// Delexicalized response templates per canonical action span.
struct TemplateBank {
  std::map<std::string, std::map<std::string, int>> templates;  // span -> text -> count

  void save(const std::string& path) const;
  static TemplateBank load(const std::string& path);
};

// Requires a delexicalized corpus (delex_response present on every turn).
TemplateBank build_template_bank(const std::vector<Dialog>& dialogs,
                                 const Ontology& ontology);

struct Realization {
  std::string matched_span;  // bank entry the template came from
  std::string text;          // the chosen template, still delexicalized
  std::vector<Substitution> substitutions;  // placeholder fillings from entity/booking
  std::vector<std::string> unfilled;        // placeholders with no value
};

// Picks the highest-count template for the action (ties: fewer tokens, then
// lexicographic). An action absent from the bank borrows the nearest entry by
// act-type overlap, then slot overlap. Values come from the entity record
// first, then the booking map; `domain` labels the substitution records.
Realization realize_response(const TemplateBank& bank, const SystemAction& action,
                             const Ontology& ontology, const std::string& domain,
                             const EntityRecord* entity,
                             const std::map<std::string, std::string>& booking);

}  // namespace mada

#endif  // MADA_POLICY_H_
