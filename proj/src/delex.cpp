// delex.cpp

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

#include "mada/delex.h"

#include <algorithm>
#include <set>

namespace mada {

namespace {

bool is_placeholder(const std::string& tok) {
  return tok.size() > 4 && tok.compare(0, 3, "<v.") == 0 && tok.back() == '>';
}

std::string placeholder_slot(const std::string& tok) { return tok.substr(3, tok.size() - 4); }

std::string placeholder(const std::string& slot) { return "<v." + slot + ">"; }

// One replaceable value: its token form and the (domain, slot) list its
// occurrences cycle through, already sorted.
struct Candidate {
  Tokens tokens;
  std::vector<std::pair<std::string, std::string>> slots;
  std::size_t used = 0;  // occurrences consumed so far
};

}  // namespace

void ValueIndex::add(const std::string& value, const std::string& domain,
                     const std::string& slot) {
  std::string v = normalize_text(value);
  if (v.empty()) return;
  auto& list = sources[v];
  std::pair<std::string, std::string> entry{domain, slot};
  auto it = std::lower_bound(list.begin(), list.end(), entry);
  if (it == list.end() || *it != entry) list.insert(it, entry);
}

ValueIndex ValueIndex::build(const Ontology& ontology, const VenueDatabase& db,
                             const std::vector<Dialog>& dialogs) {
  ValueIndex index;
  for (const auto& [domain, schema] : ontology.schema) {
    for (const auto& [slot, values] : schema.values) {
      for (const std::string& v : values) index.add(v, domain, slot);
    }
  }
  for (const auto& [domain, records] : db.records) {
    for (const EntityRecord& r : records) {
      for (const auto& [slot, value] : r) index.add(value, domain, slot);
    }
  }
  for (const Dialog& d : dialogs) {
    for (const Turn& t : d.turns) {
      for (const auto& [domain, slots] : t.belief) {
        for (const auto& [slot, value] : slots) index.add(value, domain, slot);
      }
    }
  }
  return index;
}

DelexResult delexicalize(const std::string& utterance, const Belief& annotations,
                         const ValueIndex& index) {
  // Annotated values take their slots from the annotation; anything else in
  // the index is replaceable only when a single (domain, slot) can emit it.
  std::map<std::string, Candidate> candidates;
  for (const auto& [domain, slots] : annotations) {
    for (const auto& [slot, value] : slots) {
      Candidate& c = candidates[value];
      c.slots.emplace_back(domain, slot);
    }
  }
  for (auto& [value, c] : candidates) {
    c.tokens = tokenize(value);
    std::sort(c.slots.begin(), c.slots.end());
    c.slots.erase(std::unique(c.slots.begin(), c.slots.end()), c.slots.end());
  }
  for (const auto& [value, sources] : index.sources) {
    if (sources.size() != 1 || candidates.count(value)) continue;
    Candidate c;
    c.tokens = tokenize(value);
    c.slots.push_back(sources.front());
    candidates.emplace(value, std::move(c));
  }

  Tokens tokens = tokenize(utterance);
  std::size_t max_len = 0;
  for (const auto& [value, c] : candidates) max_len = std::max(max_len, c.tokens.size());

  DelexResult out;
  Tokens result;
  std::size_t pos = 0;
  while (pos < tokens.size()) {
    Candidate* hit = nullptr;
    std::size_t hit_len = 0;
    // Longest window first; candidate token sequences are unique, so a
    // window matches at most one candidate.
    std::size_t window = std::min(max_len, tokens.size() - pos);
    for (std::size_t len = window; len >= 1 && hit == nullptr; --len) {
      Tokens probe(tokens.begin() + pos, tokens.begin() + pos + len);
      auto it = candidates.find(join(probe));
      if (it != candidates.end() && !is_placeholder(probe.front())) {
        hit = &it->second;
        hit_len = len;
      }
    }
    if (hit == nullptr) {
      result.push_back(tokens[pos]);
      ++pos;
      continue;
    }
    const auto& slot_list = hit->slots;
    const auto& [domain, slot] = slot_list[std::min(hit->used, slot_list.size() - 1)];
    ++hit->used;
    result.push_back(placeholder(slot));
    out.substitutions.push_back(
        {placeholder(slot), domain, slot, join(Tokens(tokens.begin() + pos,
                                                      tokens.begin() + pos + hit_len))});
    pos += hit_len;
  }
  out.text = join(result);
  return out;
}

RelexResult relexicalize(const std::string& template_text,
                         const std::map<std::string, std::string>& values) {
  RelexResult out;
  Tokens result;
  for (const std::string& tok : tokenize(template_text)) {
    if (!is_placeholder(tok)) {
      result.push_back(tok);
      continue;
    }
    auto it = values.find(placeholder_slot(tok));
    if (it == values.end()) {
      result.push_back(tok);
      out.unfilled.push_back(tok);
      continue;
    }
    for (const std::string& vtok : tokenize(it->second)) result.push_back(vtok);
  }
  out.text = join(result);
  return out;
}

void delexicalize_corpus(std::vector<Dialog>& dialogs, const ValueIndex& index, int jobs) {
  parallel_for(dialogs.size(), jobs, [&](std::size_t i) {
    for (Turn& t : dialogs[i].turns) {
      DelexResult r = delexicalize(t.response, t.belief, index);
      t.delex_response = r.text;
      t.substitutions = std::move(r.substitutions);
    }
  });
}

std::vector<std::string> span_vocabulary(const Ontology& ontology) {
  std::vector<std::string> out;
  for (const std::string& d : ontology.domains) out.push_back("[" + d + "]");
  for (const std::string& a : ontology.acts) out.push_back("[" + a + "]");
  std::vector<std::string> slots;
  std::set<std::string> seen;
  for (const std::string& d : ontology.domains) {
    for (const std::string& s : ontology.at(d).action_slots) {
      if (seen.insert(s).second) slots.push_back(s);
    }
  }
  for (const std::string& s : slots) out.push_back(s);
  for (const std::string& s : slots) out.push_back(placeholder(s));
  return out;
}

}  // namespace mada
