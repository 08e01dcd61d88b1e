// metrics.cpp

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

#include "mada/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json_util.h"

namespace mada {

namespace {

using Json = nlohmann::json;

// matched/total clipped n-gram counts for one candidate/reference pair.
void count_ngrams(const Tokens& cand, const Tokens& ref, int n, long long& matched,
                  long long& total) {
  if (static_cast<int>(cand.size()) < n) return;
  std::map<std::string, int> ref_counts;
  for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= ref.size(); ++i) {
    std::string key = ref[i];
    for (int j = 1; j < n; ++j) key += " " + ref[i + static_cast<std::size_t>(j)];
    ref_counts[key] += 1;
  }
  for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= cand.size(); ++i) {
    std::string key = cand[i];
    for (int j = 1; j < n; ++j) key += " " + cand[i + static_cast<std::size_t>(j)];
    total += 1;
    auto it = ref_counts.find(key);
    if (it != ref_counts.end() && it->second > 0) {
      matched += 1;
      it->second -= 1;
    }
  }
}

Json substitutions_json(const std::vector<Substitution>& subs) {
  Json arr = Json::array();
  for (const Substitution& s : subs) {
    arr.push_back({{"token", s.token}, {"domain", s.domain}, {"slot", s.slot},
                   {"value", s.value}});
  }
  return arr;
}

std::vector<Substitution> substitutions_from_json(const Json& arr) {
  std::vector<Substitution> out;
  for (const Json& sj : arr) {
    Substitution s;
    s.token = sj.at("token").get<std::string>();
    s.domain = sj.at("domain").get<std::string>();
    s.slot = sj.at("slot").get<std::string>();
    s.value = sj.at("value").get<std::string>();
    out.push_back(std::move(s));
  }
  return out;
}

bool contains_tokens(const Tokens& haystack, const Tokens& needle) {
  if (needle.empty() || haystack.size() < needle.size()) return false;
  for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
    if (std::equal(needle.begin(), needle.end(), haystack.begin() + static_cast<long>(i)))
      return true;
  }
  return false;
}

std::string format_row(const char* name, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%-12s %10.2f\n", name, value);
  return buf;
}

std::string format_pair_row(const char* name, double raw, double augmented) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%-12s %10.2f %10.2f %+10.2f\n", name, raw, augmented,
                augmented - raw);
  return buf;
}

}  // namespace

double bleu(const std::vector<std::string>& candidates,
            const std::vector<std::string>& references) {
  if (candidates.size() != references.size()) {
    throw ValidationError("bleu: candidate and reference counts differ");
  }
  if (candidates.empty()) throw ValidationError("bleu: empty input");

  long long cand_len = 0, ref_len = 0;
  long long matched[5] = {0, 0, 0, 0, 0};
  long long total[5] = {0, 0, 0, 0, 0};
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    Tokens cand = tokenize(candidates[i]);
    Tokens ref = tokenize(references[i]);
    cand_len += static_cast<long long>(cand.size());
    ref_len += static_cast<long long>(ref.size());
    for (int n = 1; n <= 4; ++n) count_ngrams(cand, ref, n, matched[n], total[n]);
  }

  if (cand_len == 0) return 0.0;          // nothing produced
  if (matched[1] == 0) return 0.0;        // unigram precision is unsmoothed

  double log_sum = 0.0;
  for (int n = 1; n <= 4; ++n) {
    double p;
    if (n == 1) {
      p = static_cast<double>(matched[1]) / static_cast<double>(total[1]);
    } else if (matched[n] > 0) {
      p = static_cast<double>(matched[n]) / static_cast<double>(total[n]);
    } else {
      // Zero matches smooth to (m+1)/(t+1); no n-grams at all gives 1.
      p = 1.0 / static_cast<double>(total[n] + 1);
    }
    log_sum += 0.25 * std::log(p);
  }

  double bp = 1.0;
  if (cand_len < ref_len) {
    bp = std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(cand_len));
  }
  return 100.0 * bp * std::exp(log_sum);
}

void save_predictions(const std::string& path, const std::vector<Prediction>& predictions) {
  std::string out;
  for (const Prediction& p : predictions) {
    Json j;
    j["dialog_id"] = p.dialog_id;
    j["turn"] = p.turn;
    j["response"] = p.response;
    j["action_span"] = p.action_span;
    j["substitutions"] = substitutions_json(p.substitutions);
    out += j.dump();
    out += "\n";
  }
  write_text_file(path, out);
}

std::vector<Prediction> load_predictions(const std::string& path) {
  std::string text = read_text_file(path);
  std::vector<Prediction> out;
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      Json j = Json::parse(line);
      Prediction p;
      p.dialog_id = j.at("dialog_id").get<std::string>();
      p.turn = j.at("turn").get<int>();
      p.response = j.at("response").get<std::string>();
      p.action_span = j.at("action_span").get<std::string>();
      p.substitutions = substitutions_from_json(j.at("substitutions"));
      out.push_back(std::move(p));
    } catch (const Json::exception& e) {
      throw ValidationError(path + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

InformSuccess inform_success(const std::vector<Dialog>& dialogs,
                             const std::vector<Prediction>& predictions,
                             const VenueDatabase& db) {
  if (dialogs.empty()) throw ValidationError("evaluate: empty corpus");

  std::map<std::pair<std::string, int>, const Prediction*> by_turn;
  for (const Prediction& p : predictions) {
    if (!by_turn.emplace(std::make_pair(p.dialog_id, p.turn), &p).second) {
      throw ValidationError("evaluate: duplicate prediction for dialog " + p.dialog_id +
                            " turn " + std::to_string(p.turn));
    }
  }

  int informed_dialogs = 0;
  int successful_dialogs = 0;
  for (const Dialog& d : dialogs) {
    std::vector<const Prediction*> preds;
    for (const Turn& t : d.turns) {
      auto it = by_turn.find(std::make_pair(d.id, t.index));
      if (it == by_turn.end()) {
        throw ValidationError("evaluate: missing prediction for dialog " + d.id + " turn " +
                              std::to_string(t.index));
      }
      preds.push_back(it->second);
    }

    // Surfaced token streams: placeholders replaced by their substitution
    // values, for matching venue names mentioned without annotation.
    std::vector<Tokens> surfaced;
    for (const Prediction* p : preds) {
      std::map<std::string, std::string> fill;
      for (const Substitution& s : p->substitutions) fill.emplace(s.token, s.value);
      Tokens toks;
      for (const std::string& tok : tokenize(p->response)) {
        auto it = fill.find(tok);
        if (it == fill.end()) {
          toks.push_back(tok);
        } else {
          for (const std::string& vt : tokenize(it->second)) toks.push_back(vt);
        }
      }
      surfaced.push_back(std::move(toks));
    }

    bool informed = true;
    for (const auto& [domain, goal] : d.goal) {
      if (!db.has_domain(domain)) continue;  // no database to offer from

      // Entities offered for this domain, by annotation or by surface match.
      std::set<const EntityRecord*> offered;
      for (const Prediction* p : preds) {
        for (const Substitution& s : p->substitutions) {
          if (s.domain != domain || (s.slot != "name" && s.slot != "id")) continue;
          std::string value = normalize_text(s.value);
          for (const EntityRecord& r : db.records.at(domain)) {
            const std::string* key = VenueDatabase::name_or_id(r);
            if (key != nullptr && normalize_text(*key) == value) offered.insert(&r);
          }
        }
      }
      for (const EntityRecord& r : db.records.at(domain)) {
        const std::string* key = VenueDatabase::name_or_id(r);
        if (key == nullptr) continue;
        Tokens name_toks = tokenize(*key);
        for (const Tokens& toks : surfaced) {
          if (contains_tokens(toks, name_toks)) {
            offered.insert(&r);
            break;
          }
        }
      }

      bool domain_ok = false;
      for (const EntityRecord* r : offered) {
        if (VenueDatabase::matches(*r, goal.inform)) {
          domain_ok = true;
          break;
        }
      }
      if (!domain_ok) {
        informed = false;
        break;
      }
    }

    bool successful = informed;
    if (successful) {
      for (const auto& [domain, goal] : d.goal) {
        for (const std::string& slot : goal.request) {
          std::string placeholder = "<v." + slot + ">";
          bool produced = false;
          for (const Prediction* p : preds) {
            for (const std::string& tok : tokenize(p->response)) {
              if (tok == placeholder) {
                produced = true;
                break;
              }
            }
            if (produced) break;
            for (const Substitution& s : p->substitutions) {
              if (s.slot == slot) {
                produced = true;
                break;
              }
            }
            if (produced) break;
          }
          if (!produced) {
            successful = false;
            break;
          }
        }
        if (!successful) break;
      }
    }

    informed_dialogs += informed ? 1 : 0;
    successful_dialogs += successful ? 1 : 0;
  }

  InformSuccess out;
  double n = static_cast<double>(dialogs.size());
  out.inform = 100.0 * static_cast<double>(informed_dialogs) / n;
  out.success = 100.0 * static_cast<double>(successful_dialogs) / n;
  return out;
}

double combined_score(double inform, double success, double bleu) {
  return (inform + success) * 0.5 + bleu;
}

Diversity act_slot_diversity(const std::vector<std::vector<SystemAction>>& per_turn_actions) {
  if (per_turn_actions.empty()) throw ValidationError("diversity: no turns");
  double act_sum = 0.0, slot_sum = 0.0;
  for (const auto& actions : per_turn_actions) {
    if (actions.empty()) throw ValidationError("diversity: a turn has no actions");
    std::set<std::string> acts, slots;
    for (const SystemAction& a : actions) {
      for (const std::string& act : a.act_types()) acts.insert(act);
      for (const std::string& slot : a.slots()) slots.insert(slot);
    }
    act_sum += static_cast<double>(acts.size());
    slot_sum += static_cast<double>(slots.size());
  }
  Diversity out;
  out.act_number = act_sum / static_cast<double>(per_turn_actions.size());
  out.slot_number = slot_sum / static_cast<double>(per_turn_actions.size());
  return out;
}

void save_report(const std::string& path, const Report& report) {
  Json j;
  j["version"] = 1;
  j["inform"] = report.inform;
  j["success"] = report.success;
  j["bleu"] = report.bleu;
  j["combined"] = report.combined;
  j["act_number"] = report.act_number;
  j["slot_number"] = report.slot_number;
  dump_json_file(path, j);
}

Report load_report(const std::string& path) {
  Json j = load_json_file<Json>(path);
  Report r;
  try {
    if (j.at("version").get<int>() != 1) {
      throw ValidationError(path + ": unsupported report version");
    }
    r.inform = j.at("inform").get<double>();
    r.success = j.at("success").get<double>();
    r.bleu = j.at("bleu").get<double>();
    r.combined = j.at("combined").get<double>();
    r.act_number = j.at("act_number").get<double>();
    r.slot_number = j.at("slot_number").get<double>();
  } catch (const Json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
  return r;
}

std::string report_table(const Report& report) {
  std::string out;
  out += format_row("inform", report.inform);
  out += format_row("success", report.success);
  out += format_row("bleu", report.bleu);
  out += format_row("combined", report.combined);
  out += format_row("act_number", report.act_number);
  out += format_row("slot_number", report.slot_number);
  return out;
}

std::string comparison_table(const Report& raw, const Report& augmented) {
  char header[96];
  std::snprintf(header, sizeof(header), "%-12s %10s %10s %10s\n", "metric", "raw",
                "augmented", "delta");
  std::string out = header;
  out += format_pair_row("inform", raw.inform, augmented.inform);
  out += format_pair_row("success", raw.success, augmented.success);
  out += format_pair_row("bleu", raw.bleu, augmented.bleu);
  out += format_pair_row("combined", raw.combined, augmented.combined);
  out += format_pair_row("act_number", raw.act_number, augmented.act_number);
  out += format_pair_row("slot_number", raw.slot_number, augmented.slot_number);
  return out;
}

}  // namespace mada
