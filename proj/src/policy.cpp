// policy.cpp

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

#include "mada/policy.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "json_util.h"

namespace mada {

namespace {

using Json = nlohmann::json;

// Per-state view of the model: the four level contexts, restricted to the
// ones that occurred in training, with weights renormalized. When no level
// matched, `uniform` signals the flat fallback over the vocabulary.
struct LevelView {
  std::vector<const ActionModel::ContextStats*> stats;
  std::vector<double> weights;
  bool uniform = false;
};

LevelView level_view(const ActionModel& model, const StateKey& key) {
  LevelView view;
  double total = 0.0;
  for (int level = 1; level <= 4; ++level) {
    auto& contexts = model.levels[static_cast<std::size_t>(level - 1)];
    auto it = contexts.find(key.level_context(level));
    if (it == contexts.end()) continue;
    view.stats.push_back(&it->second);
    view.weights.push_back(model.config.lambdas[static_cast<std::size_t>(level - 1)]);
    total += view.weights.back();
  }
  if (view.stats.empty() || total <= 0.0) {
    view.uniform = true;
    return view;
  }
  for (double& w : view.weights) w /= total;
  return view;
}

// Interpolated P(next | prev) under the visible levels. Inside a level the
// estimate is (c + alpha) / (total + alpha * |V|); an untrained prev row
// degenerates to the uniform 1/|V|.
double token_prob(const LevelView& view, double alpha, std::size_t vocab_size,
                  const std::string& prev, const std::string& next) {
  double v = static_cast<double>(vocab_size);
  if (view.uniform) return 1.0 / v;
  double p = 0.0;
  for (std::size_t i = 0; i < view.stats.size(); ++i) {
    const auto& stats = *view.stats[i];
    double c = 0.0, total = 0.0;
    auto row = stats.bigrams.find(prev);
    if (row != stats.bigrams.end()) {
      total = static_cast<double>(stats.totals.at(prev));
      auto cell = row->second.find(next);
      if (cell != row->second.end()) c = static_cast<double>(cell->second);
    }
    double denom = total + alpha * v;
    double level_p = denom > 0.0 ? (c + alpha) / denom : 1.0 / v;
    p += view.weights[i] * level_p;
  }
  return p;
}

double sequence_log_prob(const LevelView& view, const ActionModel& model,
                         const std::string& span) {
  Tokens tokens = tokenize(span);
  tokens.push_back(ActionModel::kEos);
  std::string prev = ActionModel::kBos;
  double lp = 0.0;
  for (const std::string& tok : tokens) {
    lp += std::log(token_prob(view, model.config.alpha, model.vocab.size(), prev, tok));
    prev = tok;
  }
  return lp;
}

}  // namespace

ActionModel train(const std::vector<TrainingPair>& pairs, const PolicyConfig& config) {
  if (pairs.empty()) throw ValidationError("policy: empty training set");
  ActionModel model;
  model.config = config;

  std::set<std::string> vocab;
  vocab.insert(ActionModel::kEos);
  for (const TrainingPair& p : pairs) {
    for (const std::string& tok : tokenize(p.action_span)) vocab.insert(tok);
  }
  model.vocab.assign(vocab.begin(), vocab.end());

  for (const TrainingPair& p : pairs) {
    std::string span = normalize_text(p.action_span);
    Tokens tokens = tokenize(span);
    tokens.push_back(ActionModel::kEos);
    for (int level = 1; level <= 4; ++level) {
      ActionModel::ContextStats& stats =
          model.levels[static_cast<std::size_t>(level - 1)][p.key.level_context(level)];
      stats.pairs += 1;
      stats.actions[span] += 1;
      std::string prev = ActionModel::kBos;
      for (const std::string& tok : tokens) {
        stats.bigrams[prev][tok] += 1;
        stats.totals[prev] += 1;
        prev = tok;
      }
    }
  }
  return model;
}

std::map<std::string, double> action_distribution(const ActionModel& model,
                                                  const StateKey& key) {
  LevelView view = level_view(model, key);

  std::map<std::string, double> out;
  if (view.uniform) {
    // Nothing matched at any level: uniform over the act vocabulary's
    // single-act spans in the state's domain.
    const std::string domain = key.domain();
    if (model.config.acts.empty()) {
      throw ValidationError("policy: unseen state and no act vocabulary configured");
    }
    double p = 1.0 / static_cast<double>(model.config.acts.size());
    for (const std::string& act : model.config.acts) {
      out["[" + domain + "] [" + act + "]"] = p;
    }
    return out;
  }

  std::set<std::string> candidates;
  for (const auto* stats : view.stats) {
    for (const auto& [span, count] : stats->actions) candidates.insert(span);
  }
  double total = 0.0;
  for (const std::string& span : candidates) {
    double p = std::exp(sequence_log_prob(view, model, span));
    out[span] = p;
    total += p;
  }
  for (auto& [span, p] : out) p /= total;
  return out;
}

std::map<std::string, double> action_distribution(const ActionModel& model,
                                                  const DialogState& state) {
  return action_distribution(model, canonical_key(state));
}

double distribution_entropy(const std::map<std::string, double>& dist) {
  double h = 0.0;
  for (const auto& [span, p] : dist) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

SequenceScorer sequence_scorer(const ActionModel& model, const StateKey& key) {
  SequenceScorer scorer;
  scorer.vocab = model.vocab;
  auto eos_it = std::find(scorer.vocab.begin(), scorer.vocab.end(), ActionModel::kEos);
  scorer.eos = static_cast<int>(eos_it - scorer.vocab.begin());

  // The view holds pointers into the model; the model must outlive the scorer.
  LevelView view = level_view(model, key);
  double alpha = model.config.alpha;
  std::vector<std::string> vocab = model.vocab;
  scorer.step = [view, alpha, vocab](const std::vector<int>& prefix) {
    std::string prev =
        prefix.empty() ? ActionModel::kBos : vocab[static_cast<std::size_t>(prefix.back())];
    std::vector<double> out(vocab.size());
    for (std::size_t i = 0; i < vocab.size(); ++i) {
      out[i] = std::log(token_prob(view, alpha, vocab.size(), prev, vocab[i]));
    }
    return out;
  };
  return scorer;
}

SequenceScorer sequence_scorer(const ActionModel& model, const DialogState& state) {
  return sequence_scorer(model, canonical_key(state));
}

void ActionModel::save(const std::string& path) const {
  Json j;
  j["version"] = 1;
  j["alpha"] = config.alpha;
  j["lambda"] = config.lambdas;
  j["acts"] = config.acts;
  j["vocab"] = vocab;
  Json level_arr = Json::array();
  for (const auto& contexts : levels) {
    Json cj = Json::object();
    for (const auto& [ctx, stats] : contexts) {
      Json sj;
      sj["pairs"] = stats.pairs;
      sj["actions"] = stats.actions;
      sj["bigrams"] = stats.bigrams;
      cj[ctx] = sj;
    }
    level_arr.push_back(cj);
  }
  j["levels"] = level_arr;
  dump_json_file(path, j);
}

ActionModel ActionModel::load(const std::string& path) {
  Json j = load_json_file<Json>(path);
  ActionModel model;
  try {
    if (j.at("version").get<int>() != 1) {
      throw ValidationError(path + ": unsupported model version");
    }
    model.config.alpha = j.at("alpha").get<double>();
    auto lambdas = j.at("lambda").get<std::vector<double>>();
    if (lambdas.size() != 4) throw ValidationError(path + ": lambda must have 4 entries");
    std::copy(lambdas.begin(), lambdas.end(), model.config.lambdas.begin());
    model.config.acts = j.at("acts").get<std::vector<std::string>>();
    model.vocab = j.at("vocab").get<std::vector<std::string>>();
    const auto& level_arr = j.at("levels");
    if (level_arr.size() != 4) throw ValidationError(path + ": levels must have 4 entries");
    for (std::size_t l = 0; l < 4; ++l) {
      for (const auto& [ctx, sj] : level_arr[l].items()) {
        ActionModel::ContextStats stats;
        stats.pairs = sj.at("pairs").get<int>();
        stats.actions = sj.at("actions").get<std::map<std::string, int>>();
        stats.bigrams =
            sj.at("bigrams").get<std::map<std::string, std::map<std::string, int>>>();
        for (const auto& [prev, row] : stats.bigrams) {
          int total = 0;
          for (const auto& [tok, c] : row) total += c;
          stats.totals[prev] = total;
        }
        model.levels[l][ctx] = std::move(stats);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
  return model;
}

TemplateBank build_template_bank(const std::vector<Dialog>& dialogs,
                                 const Ontology& ontology) {
  TemplateBank bank;
  for (const Dialog& d : dialogs) {
    for (const Turn& t : d.turns) {
      if (!t.delex_response.has_value()) {
        throw ValidationError("dialog " + d.id + " turn " + std::to_string(t.index) +
                              ": template bank needs a delexicalized corpus");
      }
      // The bank key is the canonical span so lookups from training and
      // decoding land on the same entry.
      std::string span = action_span_string(SystemAction(t.sys_acts, ontology), ontology);
      bank.templates[span][*t.delex_response] += 1;
    }
  }
  return bank;
}

void TemplateBank::save(const std::string& path) const {
  Json j;
  j["version"] = 1;
  j["templates"] = templates;
  dump_json_file(path, j);
}

TemplateBank TemplateBank::load(const std::string& path) {
  Json j = load_json_file<Json>(path);
  TemplateBank bank;
  try {
    if (j.at("version").get<int>() != 1) {
      throw ValidationError(path + ": unsupported template bank version");
    }
    bank.templates =
        j.at("templates").get<std::map<std::string, std::map<std::string, int>>>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
  return bank;
}

Realization realize_response(const TemplateBank& bank, const SystemAction& action,
                             const Ontology& ontology, const std::string& domain,
                             const EntityRecord* entity,
                             const std::map<std::string, std::string>& booking) {
  if (bank.templates.empty()) throw ValidationError("realize: empty template bank");
  std::string span = action_span_string(action, ontology);

  auto entry = bank.templates.find(span);
  if (entry == bank.templates.end()) {
    // Nearest bank action: most shared act types, then fewest act-type
    // differences, then most shared slots, then lexicographic span.
    std::set<std::string> acts = action.act_types();
    std::set<std::string> slots = action.slots();
    auto overlap = [](const std::set<std::string>& a, const std::set<std::string>& b) {
      int n = 0;
      for (const std::string& x : a) n += b.count(x) ? 1 : 0;
      return n;
    };
    int best_act = -1, best_diff = 0, best_slot = -1;
    for (auto it = bank.templates.begin(); it != bank.templates.end(); ++it) {
      SystemAction cand = action_from_span(it->first, ontology);
      std::set<std::string> cand_acts = cand.act_types();
      int act_overlap = overlap(acts, cand_acts);
      int act_diff = static_cast<int>(acts.size() + cand_acts.size()) - 2 * act_overlap;
      int slot_overlap = overlap(slots, cand.slots());
      bool better = false;
      if (act_overlap != best_act) {
        better = act_overlap > best_act;
      } else if (act_diff != best_diff) {
        better = act_diff < best_diff;
      } else if (slot_overlap != best_slot) {
        better = slot_overlap > best_slot;
      }
      if (better) {
        best_act = act_overlap;
        best_diff = act_diff;
        best_slot = slot_overlap;
        entry = it;
      }
    }
  }

  // Highest count wins; ties prefer the shortest template, then lexicographic.
  const std::string* best_template = nullptr;
  int best_count = -1;
  std::size_t best_len = 0;
  for (const auto& [text, count] : entry->second) {
    std::size_t len = tokenize(text).size();
    bool better = count > best_count ||
                  (count == best_count && (len < best_len ||
                                           (len == best_len && text < *best_template)));
    if (better) {
      best_template = &text;
      best_count = count;
      best_len = len;
    }
  }

  Realization out;
  out.matched_span = entry->first;
  out.text = *best_template;
  for (const std::string& tok : tokenize(out.text)) {
    if (!(tok.size() > 4 && tok.compare(0, 3, "<v.") == 0 && tok.back() == '>')) continue;
    std::string slot = tok.substr(3, tok.size() - 4);
    const std::string* value = nullptr;
    if (entity != nullptr) {
      auto it = entity->find(slot);
      if (it != entity->end()) value = &it->second;
    }
    if (value == nullptr) {
      auto it = booking.find(slot);
      if (it != booking.end()) value = &it->second;
    }
    if (value == nullptr) {
      out.unfilled.push_back(tok);
      continue;
    }
    out.substitutions.push_back({tok, domain, slot, *value});
  }
  return out;
}

}  // namespace mada
