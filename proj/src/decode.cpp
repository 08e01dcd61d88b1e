// decode.cpp

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

#include "mada/decode.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "mada/policy.h"
#include "mada/rng.h"

namespace mada {

namespace {

struct BeamItem {
  std::vector<int> tokens;
  double log_prob = 0.0;  // true (unpenalized) cumulative log-prob
};

bool better_hypothesis(const Hypothesis& a, const Hypothesis& b) {
  if (a.log_prob != b.log_prob) return a.log_prob > b.log_prob;
  return a.tokens < b.tokens;
}

void sort_hypotheses(std::vector<Hypothesis>& hyps) {
  std::stable_sort(hyps.begin(), hyps.end(), better_hypothesis);
}

// Shared beam core. gamma = 0 is plain beam search; the penalty shifts only
// `selection`, never the reported score.
std::vector<Hypothesis> beam_core(const SequenceScorer& scorer, const DecodeConfig& config,
                                  double gamma) {
  config.validate();
  const int width = config.num_actions;
  std::vector<BeamItem> active{BeamItem{}};
  std::vector<Hypothesis> finished;

  for (int len = 0; len < config.max_length && !active.empty(); ++len) {
    // Candidate expansions: (selection score, parent index, token).
    struct Cand {
      double selection;
      double log_prob;
      std::size_t parent;
      int token;
    };
    std::vector<Cand> cands;
    for (std::size_t p = 0; p < active.size(); ++p) {
      std::vector<double> lp = scorer.step(active[p].tokens);

      // Rank this parent's children by raw score to apply the sibling penalty.
      std::vector<int> order(lp.size());
      for (std::size_t i = 0; i < lp.size(); ++i) order[i] = static_cast<int>(i);
      std::stable_sort(order.begin(), order.end(), [&lp](int a, int b) {
        if (lp[static_cast<std::size_t>(a)] != lp[static_cast<std::size_t>(b)])
          return lp[static_cast<std::size_t>(a)] > lp[static_cast<std::size_t>(b)];
        return a < b;
      });
      for (std::size_t rank = 0; rank < order.size(); ++rank) {
        int tok = order[rank];
        double step_lp = lp[static_cast<std::size_t>(tok)];
        if (!std::isfinite(step_lp)) continue;  // zero-probability token
        Cand c;
        c.log_prob = active[p].log_prob + step_lp;
        // The sibling penalty is a per-step pruning bias, not part of the
        // carried score: it must not compound, or every surviving path would
        // pay for its ancestors' ranks and distinct parents could never
        // outbid a kept parent's runner-up child.
        c.selection = c.log_prob - gamma * static_cast<double>(rank);
        c.parent = p;
        c.token = tok;
        cands.push_back(c);
      }
    }
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
      if (a.selection != b.selection) return a.selection > b.selection;
      if (a.parent != b.parent) return a.parent < b.parent;
      return a.token < b.token;
    });

    std::vector<BeamItem> next;
    for (const Cand& c : cands) {
      if (c.token == scorer.eos) {
        // Finished hypotheses bypass width selection into an uncapped pool.
        Hypothesis h;
        h.tokens = active[c.parent].tokens;
        h.log_prob = c.log_prob;
        h.finished = true;
        finished.push_back(std::move(h));
        continue;
      }
      if (static_cast<int>(next.size()) >= width) continue;
      BeamItem item;
      item.tokens = active[c.parent].tokens;
      item.tokens.push_back(c.token);
      item.log_prob = c.log_prob;
      next.push_back(std::move(item));
    }
    active = std::move(next);

    // Early stop: scores only decrease, so once the pool's N-th best strictly
    // beats every active prefix no active line can still enter the top N.
    // (A tie must keep searching: a descendant could match it and win the
    // token-order tiebreak.)
    if (static_cast<int>(finished.size()) >= width && !active.empty()) {
      std::vector<double> pool;
      pool.reserve(finished.size());
      for (const Hypothesis& h : finished) pool.push_back(h.log_prob);
      std::sort(pool.begin(), pool.end(), std::greater<>());
      double nth = pool[static_cast<std::size_t>(width - 1)];
      double best_active = active.front().log_prob;
      for (const BeamItem& item : active) best_active = std::max(best_active, item.log_prob);
      if (nth > best_active) active.clear();
    }
  }

  // Length-capped survivors complete without an end-marker factor.
  for (const BeamItem& item : active) {
    Hypothesis h;
    h.tokens = item.tokens;
    h.log_prob = item.log_prob;
    h.finished = false;
    finished.push_back(std::move(h));
  }

  sort_hypotheses(finished);
  if (static_cast<int>(finished.size()) > width) {
    finished.resize(static_cast<std::size_t>(width));
  }
  return finished;
}

// One ancestral rollout restricted to `allowed` at each step.
Hypothesis rollout(const SequenceScorer& scorer, const DecodeConfig& config, Rng& rng,
                   bool nucleus) {
  Hypothesis h;
  for (int len = 0; len < config.max_length; ++len) {
    std::vector<double> lp = scorer.step(h.tokens);
    std::vector<double> probs(lp.size());
    for (std::size_t i = 0; i < lp.size(); ++i) probs[i] = std::exp(lp[i]);

    std::vector<int> allowed;
    if (nucleus) {
      allowed = nucleus_indices(probs, config.top_p);
    } else {
      int k = config.top_k > 0 ? config.top_k : config.num_actions;
      allowed = top_k_indices(probs, k);
    }

    // Renormalize over the allowed set and draw by inverse CDF.
    double total = 0.0;
    for (int idx : allowed) total += probs[static_cast<std::size_t>(idx)];
    int chosen = allowed.back();
    if (total > 0.0) {
      double u = rng.uniform01() * total;
      double acc = 0.0;
      for (int idx : allowed) {
        acc += probs[static_cast<std::size_t>(idx)];
        if (u < acc) {
          chosen = idx;
          break;
        }
      }
    } else {
      chosen = allowed[static_cast<std::size_t>(rng.bounded(allowed.size()))];
    }

    h.log_prob += lp[static_cast<std::size_t>(chosen)];
    if (chosen == scorer.eos) {
      h.finished = true;
      return h;
    }
    h.tokens.push_back(chosen);
  }
  return h;  // cut at max_length, no end-marker factor was added
}

std::vector<Hypothesis> sample_many(const SequenceScorer& scorer, const DecodeConfig& config,
                                    bool nucleus) {
  config.validate();
  std::vector<Hypothesis> out;
  out.reserve(static_cast<std::size_t>(config.num_actions));
  for (int n = 0; n < config.num_actions; ++n) {
    // Independent per-rollout stream: rollout i is stable under N changes.
    Rng rng(mix_seed({config.seed, static_cast<uint64_t>(n)}));
    out.push_back(rollout(scorer, config, rng, nucleus));
  }
  sort_hypotheses(out);
  return out;
}

}  // namespace

void DecodeConfig::validate() const {
  if (num_actions < 1) throw ValidationError("decode: num_actions must be at least 1");
  if (gamma < 0.0) throw ValidationError("decode: gamma must be non-negative");
  if (top_k < 0) throw ValidationError("decode: top_k must be at least 1 when set");
  if (!(top_p > 0.0)) throw ValidationError("decode: top_p must be in (0, 1]");
  if (top_p > 1.0) throw ValidationError("decode: top_p must be in (0, 1]");
  if (max_length < 1) throw ValidationError("decode: max_length must be at least 1");
}

std::vector<Hypothesis> greedy(const SequenceScorer& scorer, const DecodeConfig& config) {
  config.validate();
  Hypothesis h;
  for (int len = 0; len < config.max_length; ++len) {
    std::vector<double> lp = scorer.step(h.tokens);
    std::size_t best = 0;
    for (std::size_t i = 1; i < lp.size(); ++i) {
      if (lp[i] > lp[best]) best = i;  // ties keep the lowest index
    }
    h.log_prob += lp[best];
    if (static_cast<int>(best) == scorer.eos) {
      h.finished = true;
      return {h};
    }
    h.tokens.push_back(static_cast<int>(best));
  }
  return {h};
}

std::vector<Hypothesis> beam_search(const SequenceScorer& scorer, const DecodeConfig& config) {
  return beam_core(scorer, config, 0.0);
}

std::vector<Hypothesis> diverse_beam_search(const SequenceScorer& scorer,
                                            const DecodeConfig& config) {
  return beam_core(scorer, config, config.gamma);
}

std::vector<Hypothesis> top_k_sample(const SequenceScorer& scorer, const DecodeConfig& config) {
  return sample_many(scorer, config, /*nucleus=*/false);
}

std::vector<Hypothesis> top_p_sample(const SequenceScorer& scorer, const DecodeConfig& config) {
  return sample_many(scorer, config, /*nucleus=*/true);
}

std::vector<int> top_k_indices(const std::vector<double>& probs, int k) {
  if (k < 1) throw ValidationError("decode: top_k must be at least 1");
  std::vector<int> order(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&probs](int a, int b) {
    if (probs[static_cast<std::size_t>(a)] != probs[static_cast<std::size_t>(b)])
      return probs[static_cast<std::size_t>(a)] > probs[static_cast<std::size_t>(b)];
    return a < b;
  });
  if (static_cast<std::size_t>(k) < order.size()) order.resize(static_cast<std::size_t>(k));
  return order;
}

std::vector<int> nucleus_indices(const std::vector<double>& probs, double p) {
  if (!(p > 0.0) || p > 1.0) throw ValidationError("decode: top_p must be in (0, 1]");
  std::vector<int> order(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&probs](int a, int b) {
    if (probs[static_cast<std::size_t>(a)] != probs[static_cast<std::size_t>(b)])
      return probs[static_cast<std::size_t>(a)] > probs[static_cast<std::size_t>(b)];
    return a < b;
  });
  if (p >= 1.0) {
    // Full support: drop zero-mass tokens only.
    std::vector<int> out;
    for (int idx : order) {
      if (probs[static_cast<std::size_t>(idx)] > 0.0) out.push_back(idx);
    }
    return out.empty() ? order : out;
  }
  std::vector<int> out;
  double acc = 0.0;
  for (int idx : order) {
    out.push_back(idx);
    acc += probs[static_cast<std::size_t>(idx)];
    if (acc >= p) break;
  }
  return out;
}

std::vector<SystemAction> decode_multi_action(const ActionModel& model,
                                              const Ontology& ontology,
                                              const DialogState& state,
                                              const DecodeConfig& config) {
  config.validate();
  SequenceScorer scorer = sequence_scorer(model, state);

  std::vector<Hypothesis> hyps;
  switch (config.method) {
    case DecodeMethod::kGreedy: {
      hyps = greedy(scorer, config);
      break;
    }
    case DecodeMethod::kBeam:
      hyps = beam_search(scorer, config);
      break;
    case DecodeMethod::kDiverseBeam:
      hyps = diverse_beam_search(scorer, config);
      break;
    case DecodeMethod::kTopK:
      hyps = top_k_sample(scorer, config);
      break;
    case DecodeMethod::kTopP:
      hyps = top_p_sample(scorer, config);
      break;
  }

  std::vector<SystemAction> out;
  std::set<SystemAction> seen;
  for (const Hypothesis& h : hyps) {
    Tokens span;
    span.reserve(h.tokens.size());
    for (int idx : h.tokens) span.push_back(scorer.vocab[static_cast<std::size_t>(idx)]);
    SystemAction action;
    try {
      action = decode_action_span(span, ontology);
    } catch (const ValidationError&) {
      continue;  // malformed sample; lower ranks fill the gap
    }
    if (action.empty() || !seen.insert(action).second) continue;
    out.push_back(std::move(action));
    if (static_cast<int>(out.size()) >= config.num_actions) break;
  }
  if (out.empty()) {
    throw ValidationError("decode: no hypothesis parsed as an action span");
  }
  return out;
}

}  // namespace mada
