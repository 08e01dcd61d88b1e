// spans.cpp

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

#include "mada/spans.h"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

namespace mada {

namespace {

bool is_marker(const std::string& tok) {
  return tok.size() >= 3 && tok.front() == '[' && tok.back() == ']';
}

std::string marker_name(const std::string& tok) { return tok.substr(1, tok.size() - 2); }

std::string marker(const std::string& name) { return "[" + name + "]"; }

[[noreturn]] void span_fail(const char* kind, const Tokens& span, const std::string& what) {
  throw ValidationError(std::string(kind) + " span '" + join(span) + "': " + what);
}

}  // namespace

SystemAction::SystemAction(std::vector<ActTriple> triples, const Ontology& ontology) {
  for (const ActTriple& t : triples) {
    if (!ontology.has_domain(t.domain)) {
      throw ValidationError("action references unknown domain '" + t.domain + "'");
    }
    if (!ontology.has_act(t.act)) {
      throw ValidationError("action references unknown act '" + t.act + "'");
    }
    if (!t.slot.empty() && !ontology.action_slot(t.domain, t.slot)) {
      throw ValidationError("action references unknown slot '" + t.slot + "' in domain '" +
                            t.domain + "'");
    }
  }
  // A slot-free triple is redundant once the same (domain, act) has a slot.
  // Collect the slotted pairs before the move loop below guts the source.
  std::set<std::pair<std::string, std::string>> slotted;
  for (const ActTriple& t : triples) {
    if (!t.slot.empty()) slotted.insert({t.domain, t.act});
  }
  for (ActTriple& t : triples) {
    if (t.slot.empty() && slotted.count({t.domain, t.act})) continue;
    triples_.push_back(std::move(t));
  }
  std::sort(triples_.begin(), triples_.end(), [&](const ActTriple& a, const ActTriple& b) {
    int ad = ontology.domain_index(a.domain), bd = ontology.domain_index(b.domain);
    if (ad != bd) return ad < bd;
    int aa = ontology.act_index(a.act), ba = ontology.act_index(b.act);
    if (aa != ba) return aa < ba;
    // Empty slots cannot coexist with named ones after the filter above.
    return ontology.action_slot_index(a.domain, a.slot) <
           ontology.action_slot_index(b.domain, b.slot);
  });
  triples_.erase(std::unique(triples_.begin(), triples_.end()), triples_.end());
}

std::set<std::string> SystemAction::act_types() const {
  std::set<std::string> out;
  for (const ActTriple& t : triples_) out.insert(t.act);
  return out;
}

std::set<std::string> SystemAction::slots() const {
  std::set<std::string> out;
  for (const ActTriple& t : triples_) {
    if (!t.slot.empty()) out.insert(t.slot);
  }
  return out;
}

Tokens encode_belief_span(const BeliefState& belief, const Ontology& ontology) {
  Tokens out;
  for (const std::string& domain : ontology.domains) {
    auto it = belief.find(domain);
    if (it == belief.end() || it->second.empty()) continue;
    out.push_back(marker(domain));
    for (const std::string& slot : ontology.at(domain).informable) {
      auto vit = it->second.find(slot);
      if (vit == it->second.end()) continue;
      out.push_back(slot);
      for (const std::string& tok : tokenize(vit->second)) out.push_back(tok);
    }
  }
  return out;
}

BeliefState decode_belief_span(const Tokens& span, const Ontology& ontology) {
  BeliefState out;
  std::string domain;
  std::string slot;
  Tokens value;
  auto flush_value = [&]() {
    if (slot.empty()) return;
    if (value.empty()) span_fail("belief", span, "slot '" + slot + "' has no value");
    out[domain][slot] = join(value);
    slot.clear();
    value.clear();
  };
  for (const std::string& tok : span) {
    if (is_marker(tok)) {
      flush_value();
      domain = marker_name(tok);
      if (!ontology.has_domain(domain)) {
        span_fail("belief", span, "unknown domain marker '" + domain + "'");
      }
      continue;
    }
    if (domain.empty()) span_fail("belief", span, "token '" + tok + "' before any domain marker");
    if (ontology.informable_slot(domain, tok)) {
      // Slot names and value tokens are disjoint per domain, so this token
      // can only open a new slot.
      flush_value();
      slot = tok;
      continue;
    }
    if (slot.empty()) span_fail("belief", span, "value token '" + tok + "' with no slot");
    value.push_back(tok);
  }
  flush_value();
  for (auto it = out.begin(); it != out.end();) {
    it = it->second.empty() ? out.erase(it) : std::next(it);
  }
  return out;
}

Tokens encode_action_span(const SystemAction& action, const Ontology&) {
  // Triples are already in canonical order from construction.
  Tokens out;
  std::string domain;
  std::string act;
  for (const ActTriple& t : action.triples()) {
    if (t.domain != domain) {
      out.push_back(marker(t.domain));
      domain = t.domain;
      act.clear();
    }
    if (t.act != act) {
      out.push_back(marker(t.act));
      act = t.act;
    }
    if (!t.slot.empty()) out.push_back(t.slot);
  }
  return out;
}

SystemAction decode_action_span(const Tokens& span, const Ontology& ontology) {
  std::vector<ActTriple> triples;
  std::string domain;
  std::string act;
  bool act_has_slot = false;
  auto close_act = [&]() {
    if (!act.empty() && !act_has_slot) triples.push_back({domain, act, ""});
  };
  for (const std::string& tok : span) {
    if (is_marker(tok)) {
      std::string name = marker_name(tok);
      if (ontology.has_domain(name)) {
        close_act();
        domain = name;
        act.clear();
        act_has_slot = false;
        continue;
      }
      if (ontology.has_act(name)) {
        if (domain.empty()) {
          span_fail("action", span, "act marker '" + name + "' before any domain marker");
        }
        close_act();
        act = name;
        act_has_slot = false;
        continue;
      }
      span_fail("action", span, "unknown marker '" + name + "'");
    }
    if (act.empty()) span_fail("action", span, "slot token '" + tok + "' before any act marker");
    if (!ontology.action_slot(domain, tok)) {
      span_fail("action", span, "unknown slot '" + tok + "' for domain '" + domain + "'");
    }
    triples.push_back({domain, act, tok});
    act_has_slot = true;
  }
  close_act();
  return SystemAction(std::move(triples), ontology);
}

std::string belief_span_string(const BeliefState& belief, const Ontology& ontology) {
  return join(encode_belief_span(belief, ontology));
}

BeliefState belief_from_span(const std::string& span, const Ontology& ontology) {
  return decode_belief_span(tokenize(span), ontology);
}

std::string action_span_string(const SystemAction& action, const Ontology& ontology) {
  return join(encode_action_span(action, ontology));
}

SystemAction action_from_span(const std::string& span, const Ontology& ontology) {
  return decode_action_span(tokenize(span), ontology);
}

std::string active_domain(const BeliefState& prev, const BeliefState& cur,
                          const std::string& prev_domain, const Ontology& ontology) {
  static const std::map<std::string, std::string> kEmpty;
  for (const std::string& domain : ontology.domains) {
    auto cit = cur.find(domain);
    if (cit == cur.end()) continue;
    auto pit = prev.find(domain);
    const auto& before = pit == prev.end() ? kEmpty : pit->second;
    for (const auto& [slot, value] : cit->second) {
      auto bit = before.find(slot);
      if (bit == before.end() || bit->second != value) return domain;
    }
  }
  return prev_domain;
}

int DbVector::bucket_for_count(int count) {
  if (count <= 0) return 0;
  if (count == 1) return 1;
  if (count <= 3) return 2;
  if (count <= 10) return 3;
  return 4;
}

std::string DbVector::text() const {
  std::ostringstream os;
  os << bucket << "," << booking;
  return os.str();
}

DbVector db_vector(const BeliefState& belief, const std::string& domain, const VenueDatabase& db,
                   bool booking_ok) {
  DbVector out;
  out.booking = booking_ok ? 1 : 0;
  if (!db.has_domain(domain)) {
    out.bucket = DbVector::bucket_for_count(1);
    return out;
  }
  std::map<std::string, std::string> constraints;
  auto it = belief.find(domain);
  if (it != belief.end()) constraints = it->second;
  out.bucket = DbVector::bucket_for_count(db.query_count(domain, constraints));
  return out;
}

}  // namespace mada
