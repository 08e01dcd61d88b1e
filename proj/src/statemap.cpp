// statemap.cpp

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

#include "mada/statemap.h"

#include <algorithm>
#include <cstring>

#include "json_util.h"

namespace mada {

namespace {

using Json = nlohmann::json;

const char kEscapable[] = "\\|&;,=:()";

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (std::strchr(kEscapable, c) != nullptr) out += '\\';
    out += c;
  }
  return out;
}

// Splits on unescaped '|'.
std::vector<std::string> split_sections(const std::string& text) {
  std::vector<std::string> out(1);
  bool escaped = false;
  for (char c : text) {
    if (escaped) {
      out.back() += c;
      escaped = false;
      continue;
    }
    if (c == '\\') {
      out.back() += c;
      escaped = true;
      continue;
    }
    if (c == '|') {
      out.emplace_back();
      continue;
    }
    out.back() += c;
  }
  return out;
}

}  // namespace

StateKey StateKey::parse(const std::string& text) {
  std::vector<std::string> sections = split_sections(text);
  const char* prefixes[] = {"D=", "DB=", "AU=", "B="};
  if (sections.size() != 4) throw ValidationError("malformed state key '" + text + "'");
  for (int i = 0; i < 4; ++i) {
    if (sections[i].rfind(prefixes[i], 0) != 0) {
      throw ValidationError("malformed state key '" + text + "'");
    }
  }
  return StateKey{text};
}

std::string StateKey::level_context(int level) const {
  std::vector<std::string> sections = split_sections(text);
  switch (level) {
    case 1:
      return text;
    case 2:
      return sections[0] + "|" + sections[1] + "|" + sections[2];
    case 3:
      return sections[0] + "|" + sections[2];
    case 4:
      return sections[0];
    default:
      throw ValidationError("state key level out of range");
  }
}

std::string StateKey::domain() const {
  std::string section = split_sections(text)[0];
  std::string raw = section.substr(2);
  std::string out;
  bool escaped = false;
  for (char c : raw) {
    if (!escaped && c == '\\') {
      escaped = true;
      continue;
    }
    out += c;
    escaped = false;
  }
  return out;
}

StateKey canonical_key(const DialogState& state) {
  std::string text = "D=" + escape(state.domain);
  text += "|DB=" + state.db.text();
  text += "|AU=";
  for (const ActTriple& t : state.user_acts) {
    text += "(" + escape(t.domain) + "," + escape(t.act) + "," + escape(t.slot) + ")";
  }
  text += "|B=";
  bool first_domain = true;
  for (const auto& [domain, slots] : state.belief) {
    if (slots.empty()) continue;
    if (!first_domain) text += "&";
    first_domain = false;
    text += escape(domain) + ":";
    bool first_slot = true;
    for (const auto& [slot, value] : slots) {
      if (!first_slot) text += ";";
      first_slot = false;
      text += escape(slot) + "=" + escape(value);
    }
  }
  return StateKey{text};
}

std::vector<DialogState> build_states(const Dialog& dialog, const Ontology& ontology,
                                      const VenueDatabase& db) {
  std::vector<DialogState> out;
  out.reserve(dialog.turns.size());

  // First-turn fallback: first user-act domain, else first goal domain in
  // ontology order, else the first ontology domain.
  std::string prev_domain;
  if (!dialog.turns.empty() && !dialog.turns.front().user_acts.empty()) {
    prev_domain = dialog.turns.front().user_acts.front().domain;
  } else {
    for (const std::string& d : ontology.domains) {
      if (dialog.goal.count(d)) {
        prev_domain = d;
        break;
      }
    }
  }
  if (prev_domain.empty()) prev_domain = ontology.domains.front();

  BeliefState prev_belief;
  for (const Turn& turn : dialog.turns) {
    DialogState state;
    state.belief = turn.belief;
    state.domain = active_domain(prev_belief, turn.belief, prev_domain, ontology);

    bool booking_ok = true;
    if (db.has_domain(state.domain)) {
      std::map<std::string, std::string> constraints;
      auto it = turn.belief.find(state.domain);
      if (it != turn.belief.end()) constraints = it->second;
      booking_ok = db.query_count(state.domain, constraints) > 0;
    }
    state.db = db_vector(turn.belief, state.domain, db, booking_ok);

    state.user_acts = turn.user_acts;
    std::sort(state.user_acts.begin(), state.user_acts.end());
    state.user_acts.erase(std::unique(state.user_acts.begin(), state.user_acts.end()),
                          state.user_acts.end());

    prev_belief = turn.belief;
    prev_domain = state.domain;
    out.push_back(std::move(state));
  }
  return out;
}

DialogState build_state(const Dialog& dialog, int turn, const Ontology& ontology,
                        const VenueDatabase& db) {
  if (turn < 0 || turn >= static_cast<int>(dialog.turns.size())) {
    throw ValidationError("dialog " + dialog.id + ": turn index out of range");
  }
  return build_states(dialog, ontology, db)[static_cast<std::size_t>(turn)];
}

const std::vector<ActionOccurrence>* StateActionMap::find(const std::string& key) const {
  auto it = states.find(key);
  return it == states.end() ? nullptr : &it->second;
}

void StateActionMap::save(const std::string& path) const {
  Json out;
  out["version"] = 1;
  Json st = Json::object();
  for (const auto& [key, actions] : states) {
    Json arr = Json::array();
    for (const ActionOccurrence& a : actions) {
      Json sources = Json::array();
      for (const auto& [id, turn] : a.sources) sources.push_back(Json::array({id, turn}));
      arr.push_back(Json{{"action_span", a.action_span}, {"count", a.count}, {"sources", sources}});
    }
    st[key] = arr;
  }
  out["states"] = st;
  dump_json_file(path, out);
}

StateActionMap StateActionMap::load(const std::string& path) {
  Json j = load_json_file<Json>(path);
  StateActionMap map;
  try {
    for (const auto& [key, actions] : j.at("states").items()) {
      StateKey::parse(key);
      std::vector<ActionOccurrence>& list = map.states[key];
      for (const auto& aj : actions) {
        ActionOccurrence occ;
        occ.action_span = aj.at("action_span").get<std::string>();
        occ.count = aj.at("count").get<int>();
        for (const auto& src : aj.at("sources")) {
          occ.sources.emplace_back(src.at(0).get<std::string>(), src.at(1).get<int>());
        }
        list.push_back(std::move(occ));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
  return map;
}

StateActionMap build_state_action_map(const std::vector<Dialog>& dialogs,
                                      const Ontology& ontology, const VenueDatabase& db,
                                      int jobs) {
  struct TurnEntry {
    std::string key;
    std::string span;
    std::string dialog_id;
    int turn;
  };
  std::vector<std::vector<TurnEntry>> per_dialog(dialogs.size());
  parallel_for(dialogs.size(), jobs, [&](std::size_t i) {
    const Dialog& d = dialogs[i];
    std::vector<DialogState> states = build_states(d, ontology, db);
    for (std::size_t t = 0; t < d.turns.size(); ++t) {
      SystemAction action(d.turns[t].sys_acts, ontology);
      per_dialog[i].push_back({canonical_key(states[t]).text,
                               action_span_string(action, ontology), d.id,
                               static_cast<int>(t)});
    }
  });

  // span -> (count, sources); both layers sorted, so the result is identical
  // for any dialog order.
  std::map<std::string, std::map<std::string, ActionOccurrence>> acc;
  for (const auto& entries : per_dialog) {
    for (const TurnEntry& e : entries) {
      ActionOccurrence& occ = acc[e.key][e.span];
      occ.action_span = e.span;
      occ.count += 1;
      occ.sources.emplace_back(e.dialog_id, e.turn);
    }
  }
  StateActionMap map;
  for (auto& [key, spans] : acc) {
    std::vector<ActionOccurrence>& list = map.states[key];
    for (auto& [span, occ] : spans) {
      std::sort(occ.sources.begin(), occ.sources.end());
      list.push_back(std::move(occ));
    }
  }
  return map;
}

}  // namespace mada
