// corpus.cpp

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

#include "mada/corpus.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "mada/rng.h"
#include "json_util.h"

namespace mada {

namespace {

using OrderedJson = nlohmann::ordered_json;
using Json = nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

std::string turn_context(const std::string& path, const std::string& dialog_id, int turn) {
  std::ostringstream os;
  os << path << ": dialog " << dialog_id << " turn " << turn;
  return os.str();
}

// Value tokens may not collide with the domain's informable slot names:
// belief-span decoding reads any slot-vocabulary token as a slot boundary.
void check_value_tokens(const std::string& where, const Ontology& ontology,
                        const std::string& domain, const std::string& value) {
  for (const std::string& tok : tokenize(value)) {
    if (ontology.informable_slot(domain, tok)) {
      fail(where, "value '" + value + "' contains slot name '" + tok + "' of domain '" +
                      domain + "'");
    }
  }
}

std::vector<ActTriple> parse_act_list(const OrderedJson& j, const std::string& where,
                                      const Ontology& ontology, const char* field) {
  std::vector<ActTriple> out;
  if (!j.is_array()) fail(where, std::string(field) + " must be an array");
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 3) {
      fail(where, std::string(field) + " entries must be [domain, act, slot] triples");
    }
    ActTriple t{normalize_text(item[0].get<std::string>()),
                normalize_text(item[1].get<std::string>()),
                normalize_text(item[2].get<std::string>())};
    if (!ontology.has_domain(t.domain)) fail(where, "unknown domain '" + t.domain + "'");
    if (!ontology.has_act(t.act)) fail(where, "unknown act '" + t.act + "'");
    if (!t.slot.empty() && !ontology.action_slot(t.domain, t.slot)) {
      fail(where, "unknown slot '" + t.slot + "' for domain '" + t.domain + "'");
    }
    out.push_back(std::move(t));
  }
  return out;
}

Belief parse_belief(const OrderedJson& j, const std::string& where, const Ontology& ontology) {
  Belief out;
  if (!j.is_object()) fail(where, "belief must be an object");
  for (const auto& [domain_raw, slots] : j.items()) {
    std::string domain = normalize_text(domain_raw);
    if (!ontology.has_domain(domain)) fail(where, "unknown domain '" + domain + "'");
    if (!slots.is_object()) fail(where, "belief for '" + domain + "' must be an object");
    for (const auto& [slot_raw, value_raw] : slots.items()) {
      std::string slot = normalize_text(slot_raw);
      if (!ontology.informable_slot(domain, slot)) {
        fail(where, "unknown slot '" + slot + "' for domain '" + domain + "'");
      }
      std::string value = normalize_text(value_raw.template get<std::string>());
      if (value.empty()) fail(where, "empty value for slot '" + slot + "'");
      check_value_tokens(where, ontology, domain, value);
      out[domain][slot] = value;
    }
  }
  // Drop empty domain entries; a belief state never carries one.
  for (auto it = out.begin(); it != out.end();) {
    it = it->second.empty() ? out.erase(it) : std::next(it);
  }
  return out;
}

std::vector<Substitution> parse_substitutions(const OrderedJson& j, const std::string& where) {
  std::vector<Substitution> out;
  if (!j.is_array()) fail(where, "substitutions must be an array");
  for (const auto& item : j) {
    Substitution s;
    s.token = item.at("token").get<std::string>();
    s.domain = item.at("domain").get<std::string>();
    s.slot = item.at("slot").get<std::string>();
    s.value = item.at("value").get<std::string>();
    out.push_back(std::move(s));
  }
  return out;
}

GoalDomain parse_goal_domain(const OrderedJson& j, const std::string& where,
                             const Ontology& ontology, const std::string& domain) {
  GoalDomain g;
  if (!j.is_object()) fail(where, "goal for '" + domain + "' must be an object");
  if (j.contains("inform")) {
    for (const auto& [slot_raw, value] : j.at("inform").items()) {
      std::string slot = normalize_text(slot_raw);
      if (!ontology.informable_slot(domain, slot)) {
        fail(where, "unknown goal slot '" + slot + "' for domain '" + domain + "'");
      }
      g.inform[slot] = normalize_text(value.template get<std::string>());
    }
  }
  if (j.contains("request")) {
    for (const auto& slot_raw : j.at("request")) {
      std::string slot = normalize_text(slot_raw.template get<std::string>());
      if (!ontology.action_slot(domain, slot)) {
        fail(where, "unknown requested slot '" + slot + "' for domain '" + domain + "'");
      }
      g.request.push_back(slot);
    }
    std::sort(g.request.begin(), g.request.end());
    g.request.erase(std::unique(g.request.begin(), g.request.end()), g.request.end());
  }
  if (j.contains("book")) {
    for (const auto& [slot_raw, value] : j.at("book").items()) {
      g.book[normalize_text(slot_raw)] = normalize_text(value.template get<std::string>());
    }
  }
  return g;
}

Json acts_to_json(const std::vector<ActTriple>& acts) {
  Json arr = Json::array();
  for (const ActTriple& t : acts) arr.push_back(Json::array({t.domain, t.act, t.slot}));
  return arr;
}

Json turn_to_json(const Turn& t) {
  Json j;
  j["user"] = t.user;
  j["user_acts"] = acts_to_json(t.user_acts);
  j["belief"] = t.belief;
  j["sys_acts"] = acts_to_json(t.sys_acts);
  j["response"] = t.response;
  if (t.delex_response.has_value()) {
    j["delex_response"] = *t.delex_response;
    Json subs = Json::array();
    for (const Substitution& s : t.substitutions) {
      subs.push_back(
          Json{{"token", s.token}, {"domain", s.domain}, {"slot", s.slot}, {"value", s.value}});
    }
    j["substitutions"] = subs;
  }
  return j;
}

}  // namespace

Ontology Ontology::load(const std::string& path) {
  OrderedJson j = load_json_file<OrderedJson>(path);
  Ontology ont;
  try {
    for (const auto& d : j.at("domains")) ont.domains.push_back(normalize_text(d.get<std::string>()));
    for (const auto& a : j.at("acts")) ont.acts.push_back(normalize_text(a.get<std::string>()));
    const auto& informable = j.at("informable");
    const auto& requestable = j.at("requestable");
    for (const std::string& domain : ont.domains) {
      DomainSchema& schema = ont.schema[domain];
      if (informable.contains(domain)) {
        for (const auto& [slot_raw, values] : informable.at(domain).items()) {
          std::string slot = normalize_text(slot_raw);
          schema.informable.push_back(slot);
          std::vector<std::string>& vs = schema.values[slot];
          for (const auto& v : values) vs.push_back(normalize_text(v.template get<std::string>()));
        }
      }
      if (requestable.contains(domain)) {
        for (const auto& s : requestable.at(domain)) {
          schema.requestable.push_back(normalize_text(s.template get<std::string>()));
        }
      }
      schema.action_slots = schema.requestable;
      for (const std::string& slot : schema.informable) {
        if (std::find(schema.action_slots.begin(), schema.action_slots.end(), slot) ==
            schema.action_slots.end()) {
          schema.action_slots.push_back(slot);
        }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
  try {
    ont.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
  return ont;
}

void Ontology::validate() const {
  if (domains.empty()) throw ValidationError("ontology has no domains");
  if (acts.empty()) throw ValidationError("ontology has no acts");
  std::set<std::string> domain_set(domains.begin(), domains.end());
  if (domain_set.size() != domains.size()) throw ValidationError("duplicate domain name");
  std::set<std::string> act_set(acts.begin(), acts.end());
  if (act_set.size() != acts.size()) throw ValidationError("duplicate act name");
  for (const std::string& a : acts) {
    // Bracketed markers share one namespace in spans.
    if (domain_set.count(a)) throw ValidationError("act '" + a + "' collides with a domain name");
  }
  for (const std::string& d : domains) {
    if (schema.count(d) == 0) throw ValidationError("domain '" + d + "' has no schema");
    const DomainSchema& s = schema.at(d);
    std::set<std::string> slot_set(s.informable.begin(), s.informable.end());
    if (slot_set.size() != s.informable.size()) {
      throw ValidationError("duplicate informable slot in domain '" + d + "'");
    }
    for (const auto& [slot, values] : s.values) {
      for (const std::string& v : values) {
        if (v.empty()) throw ValidationError("empty value for slot '" + slot + "'");
        for (const std::string& tok : tokenize(v)) {
          if (slot_set.count(tok)) {
            throw ValidationError("value '" + v + "' of domain '" + d +
                                  "' collides with slot name '" + tok + "'");
          }
        }
      }
    }
  }
}

bool Ontology::has_domain(const std::string& d) const { return schema.count(d) != 0; }

bool Ontology::has_act(const std::string& a) const {
  return std::find(acts.begin(), acts.end(), a) != acts.end();
}

int Ontology::domain_index(const std::string& d) const {
  auto it = std::find(domains.begin(), domains.end(), d);
  return it == domains.end() ? -1 : static_cast<int>(it - domains.begin());
}

int Ontology::act_index(const std::string& a) const {
  auto it = std::find(acts.begin(), acts.end(), a);
  return it == acts.end() ? -1 : static_cast<int>(it - acts.begin());
}

const DomainSchema& Ontology::at(const std::string& d) const {
  auto it = schema.find(d);
  if (it == schema.end()) throw ValidationError("unknown domain '" + d + "'");
  return it->second;
}

bool Ontology::informable_slot(const std::string& d, const std::string& s) const {
  auto it = schema.find(d);
  if (it == schema.end()) return false;
  const auto& inf = it->second.informable;
  return std::find(inf.begin(), inf.end(), s) != inf.end();
}

bool Ontology::action_slot(const std::string& d, const std::string& s) const {
  return action_slot_index(d, s) >= 0;
}

int Ontology::informable_index(const std::string& d, const std::string& s) const {
  auto it = schema.find(d);
  if (it == schema.end()) return -1;
  const auto& inf = it->second.informable;
  auto pos = std::find(inf.begin(), inf.end(), s);
  return pos == inf.end() ? -1 : static_cast<int>(pos - inf.begin());
}

int Ontology::action_slot_index(const std::string& d, const std::string& s) const {
  auto it = schema.find(d);
  if (it == schema.end()) return -1;
  const auto& slots = it->second.action_slots;
  auto pos = std::find(slots.begin(), slots.end(), s);
  return pos == slots.end() ? -1 : static_cast<int>(pos - slots.begin());
}

VenueDatabase VenueDatabase::load(const std::string& path, const Ontology& ontology) {
  Json j = load_json_file<Json>(path);
  if (!j.is_object()) throw ValidationError(path + ": database must map domains to record lists");
  VenueDatabase db;
  for (const auto& [domain_raw, records] : j.items()) {
    std::string domain = normalize_text(domain_raw);
    if (!ontology.has_domain(domain)) {
      throw ValidationError(path + ": unknown domain '" + domain + "'");
    }
    std::set<std::string> keys;
    for (const auto& rec : records) {
      EntityRecord out;
      for (const auto& [slot_raw, value] : rec.items()) {
        std::string slot = normalize_text(slot_raw);
        if (!ontology.action_slot(domain, slot)) {
          throw ValidationError(path + ": unknown slot '" + slot + "' for domain '" + domain +
                                "'");
        }
        std::string v = normalize_text(value.template get<std::string>());
        for (const std::string& tok : tokenize(v)) {
          if (ontology.informable_slot(domain, tok)) {
            throw ValidationError(path + ": value '" + v + "' in domain '" + domain +
                                  "' collides with slot name '" + tok + "'");
          }
        }
        out[slot] = v;
      }
      const std::string* key = name_or_id(out);
      if (key == nullptr) {
        throw ValidationError(path + ": record in domain '" + domain +
                              "' has neither name nor id");
      }
      if (!keys.insert(*key).second) {
        throw ValidationError(path + ": duplicate name/id '" + *key + "' in domain '" + domain +
                              "'");
      }
      db.records[domain].push_back(std::move(out));
    }
  }
  return db;
}

bool VenueDatabase::has_domain(const std::string& d) const { return records.count(d) != 0; }

const std::string* VenueDatabase::name_or_id(const EntityRecord& record) {
  auto it = record.find("name");
  if (it != record.end()) return &it->second;
  it = record.find("id");
  if (it != record.end()) return &it->second;
  return nullptr;
}

bool VenueDatabase::matches(const EntityRecord& record,
                            const std::map<std::string, std::string>& constraints) {
  for (const auto& [slot, value] : constraints) {
    if (value == "dontcare") continue;
    auto it = record.find(slot);
    if (it == record.end() || it->second != value) return false;
  }
  return true;
}

std::vector<const EntityRecord*> VenueDatabase::match(
    const std::string& domain, const std::map<std::string, std::string>& constraints) const {
  std::vector<const EntityRecord*> out;
  auto it = records.find(domain);
  if (it == records.end()) return out;
  for (const EntityRecord& r : it->second) {
    if (matches(r, constraints)) out.push_back(&r);
  }
  return out;
}

int VenueDatabase::match_count(const std::string& domain,
                               const std::map<std::string, std::string>& constraints) const {
  return static_cast<int>(match(domain, constraints).size());
}

std::vector<const EntityRecord*> VenueDatabase::query(
    const std::string& domain, const std::map<std::string, std::string>& constraints) const {
  std::map<std::string, std::string> tracked;
  auto it = records.find(domain);
  if (it != records.end()) {
    for (const auto& [slot, value] : constraints) {
      for (const EntityRecord& r : it->second) {
        if (r.count(slot) != 0) {
          tracked.emplace(slot, value);
          break;
        }
      }
    }
  }
  return match(domain, tracked);
}

int VenueDatabase::query_count(const std::string& domain,
                               const std::map<std::string, std::string>& constraints) const {
  return static_cast<int>(query(domain, constraints).size());
}

std::vector<Dialog> load_corpus(const std::string& path, const Ontology& ontology) {
  OrderedJson j = load_json_file<OrderedJson>(path);
  if (!j.is_object() || !j.contains("dialogs") || !j.at("dialogs").is_array()) {
    throw ValidationError(path + ": expected top-level object with a 'dialogs' array");
  }
  std::vector<Dialog> dialogs;
  std::set<std::string> seen_ids;
  try {
  for (const auto& dj : j.at("dialogs")) {
    Dialog d;
    if (!dj.contains("dialog_id")) throw ValidationError(path + ": dialog without dialog_id");
    d.id = normalize_text(dj.at("dialog_id").get<std::string>());
    std::string dwhere = path + ": dialog " + d.id;
    if (d.id.empty()) fail(path, "empty dialog_id");
    if (!seen_ids.insert(d.id).second) fail(dwhere, "duplicate dialog_id");
    if (dj.contains("goal")) {
      for (const auto& [domain_raw, gj] : dj.at("goal").items()) {
        std::string domain = normalize_text(domain_raw);
        if (!ontology.has_domain(domain)) fail(dwhere, "unknown goal domain '" + domain + "'");
        d.goal[domain] = parse_goal_domain(gj, dwhere, ontology, domain);
      }
    }
    if (!dj.contains("turns") || !dj.at("turns").is_array() || dj.at("turns").empty()) {
      fail(dwhere, "dialog needs at least one turn");
    }
    int index = 0;
    for (const auto& tj : dj.at("turns")) {
      std::string where = turn_context(path, d.id, index);
      Turn t;
      t.index = index++;
      t.user = normalize_text(tj.value("user", std::string()));
      t.response = normalize_text(tj.value("response", std::string()));
      if (tj.contains("user_acts")) {
        t.user_acts = parse_act_list(tj.at("user_acts"), where, ontology, "user_acts");
      }
      if (tj.contains("sys_acts")) {
        t.sys_acts = parse_act_list(tj.at("sys_acts"), where, ontology, "sys_acts");
      }
      if (tj.contains("belief")) t.belief = parse_belief(tj.at("belief"), where, ontology);
      if (tj.contains("delex_response")) {
        t.delex_response = normalize_text(tj.at("delex_response").get<std::string>());
        if (tj.contains("substitutions")) {
          t.substitutions = parse_substitutions(tj.at("substitutions"), where);
        }
      }
      d.turns.push_back(std::move(t));
    }
    dialogs.push_back(std::move(d));
  }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
  return dialogs;
}

void save_corpus(const std::string& path, const std::vector<Dialog>& dialogs) {
  Json out;
  Json arr = Json::array();
  for (const Dialog& d : dialogs) {
    Json dj;
    dj["dialog_id"] = d.id;
    Json goal = Json::object();
    for (const auto& [domain, g] : d.goal) {
      Json gj;
      gj["inform"] = g.inform;
      gj["request"] = g.request;
      gj["book"] = g.book;
      goal[domain] = gj;
    }
    dj["goal"] = goal;
    Json turns = Json::array();
    for (const Turn& t : d.turns) turns.push_back(turn_to_json(t));
    dj["turns"] = turns;
    arr.push_back(std::move(dj));
  }
  out["dialogs"] = arr;
  dump_json_file(path, out);
}

SplitResult split(const std::vector<Dialog>& dialogs, const std::array<double, 3>& ratios,
                  uint64_t seed) {
  double sum = 0.0;
  for (double r : ratios) {
    if (r <= 0.0) throw ValidationError("split ratios must be positive");
    sum += r;
  }
  if (std::fabs(sum - 1.0) > 1e-9) throw ValidationError("split ratios must sum to 1");

  std::vector<std::size_t> order(dialogs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.bounded(order.size() - i));
    std::swap(order[i], order[j]);
  }

  std::size_t n = dialogs.size();
  std::size_t n_train = static_cast<std::size_t>(std::floor(static_cast<double>(n) * ratios[0]));
  std::size_t n_dev = static_cast<std::size_t>(std::floor(static_cast<double>(n) * ratios[1]));
  if (n_train + n_dev > n) n_dev = n - n_train;

  SplitResult out;
  for (std::size_t i = 0; i < n; ++i) {
    const Dialog& d = dialogs[order[i]];
    if (i < n_train) {
      out.train.push_back(d);
    } else if (i < n_train + n_dev) {
      out.dev.push_back(d);
    } else {
      out.test.push_back(d);
    }
  }
  return out;
}

}  // namespace mada
