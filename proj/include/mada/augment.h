// mada/augment.h

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

#ifndef MADA_AUGMENT_H_
#define MADA_AUGMENT_H_

#include <string>
#include <vector>

#include "mada/rng.h"
#include "mada/statemap.h"

namespace mada {

struct AugmentConfig {
  int k = 3;  // per-group sample cap
  uint64_t seed = 0;
};

// Partitions a state's valid actions by act-type set. Same set, same group.
// Groups are ordered by their act-type-set key; members stay sorted.
std::vector<std::vector<SystemAction>> group_by_act(const std::vector<SystemAction>& valid,
                                                    const Ontology& ontology);

// min(k, |G|) actions from each group, uniformly without replacement.
std::vector<SystemAction> sample_action_set(
    const std::vector<std::vector<SystemAction>>& groups, const AugmentConfig& config,
    Rng& rng);

struct AugmentedPair {
  std::string dialog_id;
  int turn = 0;
  StateKey key;
  std::string action_span;
  bool ground_truth = false;

  bool operator==(const AugmentedPair&) const = default;
};

// Per-turn expansion: resamples V*(S_t) at every occurrence of a state. The
// observed action is always kept; when sampling would drop it, it replaces
// the last sampled member of its group. Sampling streams are derived per
// (dialog, turn), so the output is independent of traversal order and job
// count. A turn whose state key is missing from the map is an error.
std::vector<AugmentedPair> augment_corpus(const std::vector<Dialog>& dialogs,
                                          const StateActionMap& map, const Ontology& ontology,
                                          const VenueDatabase& db, const AugmentConfig& config,
                                          int jobs = 1);

// JSONL, one pair per line.
void save_pairs(const std::string& path, const std::vector<AugmentedPair>& pairs);
std::vector<AugmentedPair> load_pairs(const std::string& path);

}  // namespace mada

#endif  // MADA_AUGMENT_H_
