// mada/decode.h

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

#ifndef MADA_DECODE_H_
#define MADA_DECODE_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mada/spans.h"

namespace mada {

struct ActionModel;
struct DialogState;

// Token-level interface the decoders run against. Tokens are indices into
// `vocab`; ties anywhere are broken by that fixed order. `step` maps a prefix
// (without any begin marker) to log-probabilities over the whole vocabulary.
struct SequenceScorer {
  std::vector<std::string> vocab;
  int eos = 0;  // index of the end marker in vocab
  std::function<std::vector<double>(const std::vector<int>&)> step;
};

enum class DecodeMethod { kGreedy, kBeam, kDiverseBeam, kTopK, kTopP };

struct DecodeConfig {
  DecodeMethod method = DecodeMethod::kGreedy;
  int num_actions = 1;     // N: beam width / sample count
  double gamma = 0.2;      // diverse beam intra-sibling penalty
  int top_k = 0;           // 0 means "use num_actions"
  double top_p = 0.9;
  int max_length = 32;     // tokens per hypothesis, end marker excluded
  uint64_t seed = 0;

  void validate() const;  // N >= 1, gamma >= 0, k >= 1 (if set), 0 < p <= 1
};

// Tokens exclude the end marker; log_prob includes the end-marker step when
// the hypothesis finished by emitting it (not when cut at max_length).
struct Hypothesis {
  std::vector<int> tokens;
  double log_prob = 0.0;
  bool finished = false;
};

std::vector<Hypothesis> greedy(const SequenceScorer& scorer, const DecodeConfig& config);

// Standard beam search, no length normalization. Finished hypotheses leave
// the active beam for a completed pool; the search stops once the pool's N-th
// best score is at least the best active score (log-probs only decrease) or
// every active hypothesis has hit max_length. With a width no smaller than
// the number of finishable sequences this enumerates them exactly.
std::vector<Hypothesis> beam_search(const SequenceScorer& scorer, const DecodeConfig& config);

// Beam variant: children of one parent are ranked by score, and the child at
// rank r (1-based) has gamma*(r-1) subtracted for selection only. Reported
// log-probs are unpenalized; gamma = 0 reproduces beam_search exactly.
std::vector<Hypothesis> diverse_beam_search(const SequenceScorer& scorer,
                                            const DecodeConfig& config);

std::vector<Hypothesis> top_k_sample(const SequenceScorer& scorer, const DecodeConfig& config);
std::vector<Hypothesis> top_p_sample(const SequenceScorer& scorer, const DecodeConfig& config);

// The k highest-probability token indices (probability desc, index asc).
std::vector<int> top_k_indices(const std::vector<double>& probs, int k);

// Nucleus: the smallest prefix of the probability-sorted tokens whose mass
// reaches p. p >= 1 yields the full support (every token with mass > 0).
std::vector<int> nucleus_indices(const std::vector<double>& probs, double p);

// Runs the configured method over the policy scorer for `state` and returns
// the top distinct actions by rank, padding from lower-ranked hypotheses when
// duplicates or unparsable spans reduce the count. Throws when every
// hypothesis is unparsable.
std::vector<SystemAction> decode_multi_action(const ActionModel& model,
                                              const Ontology& ontology,
                                              const DialogState& state,
                                              const DecodeConfig& config);

}  // namespace mada

#endif  // MADA_DECODE_H_
