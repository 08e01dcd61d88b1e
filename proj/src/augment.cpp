// augment.cpp

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

#include "mada/augment.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "json_util.h"

namespace mada {

namespace {

using Json = nlohmann::json;

std::string act_set_key(const SystemAction& action) {
  std::string key;
  for (const std::string& a : action.act_types()) key += a + "|";
  return key;
}

}  // namespace

std::vector<std::vector<SystemAction>> group_by_act(const std::vector<SystemAction>& valid,
                                                    const Ontology&) {
  std::map<std::string, std::vector<SystemAction>> groups;
  for (const SystemAction& a : valid) groups[act_set_key(a)].push_back(a);
  std::vector<std::vector<SystemAction>> out;
  for (auto& [key, members] : groups) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

std::vector<SystemAction> sample_action_set(
    const std::vector<std::vector<SystemAction>>& groups, const AugmentConfig& config,
    Rng& rng) {
  if (config.k < 1) throw ValidationError("augment: k must be >= 1");
  std::vector<SystemAction> out;
  for (const auto& group : groups) {
    std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(config.k), group.size());
    for (std::size_t idx : sample_indices(group.size(), take, rng)) {
      out.push_back(group[idx]);
    }
  }
  return out;
}

std::vector<AugmentedPair> augment_corpus(const std::vector<Dialog>& dialogs,
                                          const StateActionMap& map, const Ontology& ontology,
                                          const VenueDatabase& db, const AugmentConfig& config,
                                          int jobs) {
  std::vector<std::vector<AugmentedPair>> per_dialog(dialogs.size());
  parallel_for(dialogs.size(), jobs, [&](std::size_t i) {
    const Dialog& d = dialogs[i];
    std::vector<DialogState> states = build_states(d, ontology, db);
    for (std::size_t t = 0; t < d.turns.size(); ++t) {
      StateKey key = canonical_key(states[t]);
      const std::vector<ActionOccurrence>* entry = map.find(key.text);
      if (entry == nullptr) {
        std::ostringstream os;
        os << "dialog " << d.id << " turn " << t
           << ": state key missing from the state-action map (corpus/map mismatch)";
        throw ValidationError(os.str());
      }
      SystemAction gt(d.turns[t].sys_acts, ontology);
      std::string gt_span = action_span_string(gt, ontology);

      std::vector<SystemAction> valid;
      valid.reserve(entry->size());
      for (const ActionOccurrence& occ : *entry) {
        valid.push_back(action_from_span(occ.action_span, ontology));
      }
      std::vector<std::vector<SystemAction>> groups = group_by_act(valid, ontology);

      // Every turn draws from its own stream, so the expansion is resampled
      // per occurrence and insensitive to traversal order.
      Rng rng(mix_seed({config.seed, fnv1a64(d.id), static_cast<uint64_t>(t)}));
      std::string gt_group = act_set_key(gt);
      std::vector<SystemAction> sampled;
      bool gt_sampled = false;
      for (const auto& group : groups) {
        std::size_t take =
            std::min<std::size_t>(static_cast<std::size_t>(config.k), group.size());
        std::vector<std::size_t> picks = sample_indices(group.size(), take, rng);
        std::vector<SystemAction> members;
        for (std::size_t idx : picks) members.push_back(group[idx]);
        bool is_gt_group = !group.empty() && act_set_key(group.front()) == gt_group;
        if (is_gt_group) {
          auto found = std::find(members.begin(), members.end(), gt);
          if (found == members.end()) {
            // Keep the observed action: it displaces the last sampled member.
            members.back() = gt;
          }
          gt_sampled = true;
        }
        sampled.insert(sampled.end(), members.begin(), members.end());
      }
      if (!gt_sampled) {
        // The map is sound, so the ground truth's group always exists when
        // the map was built from this corpus; guard anyway.
        sampled.push_back(gt);
      }

      std::set<std::string> seen;
      std::vector<AugmentedPair> turn_pairs;
      for (const SystemAction& a : sampled) {
        std::string span = action_span_string(a, ontology);
        if (!seen.insert(span).second) continue;
        AugmentedPair p;
        p.dialog_id = d.id;
        p.turn = static_cast<int>(t);
        p.key = key;
        p.action_span = span;
        p.ground_truth = span == gt_span;
        turn_pairs.push_back(std::move(p));
      }
      // Ground truth first, then the rest by span.
      std::sort(turn_pairs.begin(), turn_pairs.end(),
                [](const AugmentedPair& a, const AugmentedPair& b) {
                  if (a.ground_truth != b.ground_truth) return a.ground_truth;
                  return a.action_span < b.action_span;
                });
      per_dialog[i].insert(per_dialog[i].end(), turn_pairs.begin(), turn_pairs.end());
    }
  });

  std::vector<AugmentedPair> out;
  for (auto& pairs : per_dialog) {
    out.insert(out.end(), std::make_move_iterator(pairs.begin()),
               std::make_move_iterator(pairs.end()));
  }
  return out;
}

void save_pairs(const std::string& path, const std::vector<AugmentedPair>& pairs) {
  std::string text;
  for (const AugmentedPair& p : pairs) {
    Json j{{"dialog_id", p.dialog_id},
           {"turn", p.turn},
           {"state_key", p.key.text},
           {"action_span", p.action_span},
           {"origin", p.ground_truth ? "gt" : "aug"}};
    text += j.dump();
    text += "\n";
  }
  write_text_file(path, text);
}

std::vector<AugmentedPair> load_pairs(const std::string& path) {
  std::vector<AugmentedPair> out;
  std::istringstream in(read_text_file(path));
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      throw ValidationError(path + ": malformed JSON on line " + std::to_string(line_no));
    }
    try {
      AugmentedPair p;
      p.dialog_id = j.at("dialog_id").get<std::string>();
      p.turn = j.at("turn").get<int>();
      p.key = StateKey::parse(j.at("state_key").get<std::string>());
      p.action_span = j.at("action_span").get<std::string>();
      p.ground_truth = j.at("origin").get<std::string>() == "gt";
      out.push_back(std::move(p));
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(path + ": line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace mada
