// Acceptance gate: one pass/fail line per shipped criterion, nonzero exit on
// any failure. Each check is self-contained and uses only public headers.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.h"
#include "mada/augment.h"
#include "mada/decode.h"
#include "mada/delex.h"
#include "mada/metrics.h"
#include "mada/policy.h"
#include "mada/rng.h"

using namespace mada;
using mada::test::data_path;
using mada::test::load_fixture;
using mada::test::make_temp_dir;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << ": " << index << " " << name;
  if (!ok && !detail.empty()) std::cout << " (" << detail << ")";
  std::cout << "\n";
  if (!ok) ++failures;
}

template <typename Fn>
void run_criterion(int index, const std::string& name, Fn fn) {
  std::string detail;
  bool ok = false;
  try {
    ok = fn(detail);
  } catch (const std::exception& e) {
    detail = e.what();
  }
  report(index, name, ok, detail);
}

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

// ---------------------------------------------------------------------------
// shared model-building helpers

std::vector<TrainingPair> ground_truth_pairs(const std::vector<Dialog>& dialogs,
                                             const Ontology& ontology,
                                             const VenueDatabase& db) {
  std::vector<TrainingPair> pairs;
  for (const Dialog& d : dialogs) {
    std::vector<DialogState> states = build_states(d, ontology, db);
    for (const Turn& t : d.turns) {
      pairs.push_back({canonical_key(states[static_cast<std::size_t>(t.index)]),
                       action_span_string(SystemAction(t.sys_acts, ontology), ontology)});
    }
  }
  return pairs;
}

std::vector<TrainingPair> augmented_pairs(const std::vector<Dialog>& dialogs,
                                          const Ontology& ontology, const VenueDatabase& db) {
  StateActionMap map = build_state_action_map(dialogs, ontology, db);
  std::vector<TrainingPair> pairs;
  for (const AugmentedPair& p :
       augment_corpus(dialogs, map, ontology, db, AugmentConfig{})) {
    pairs.push_back({p.key, p.action_span});
  }
  return pairs;
}

// 200 one-turn dialogs sharing a single hotel state; action i%20 picks from
// the pool with a 17/1/1/1 split, so one action dominates the ground truth.
std::vector<Dialog> synthetic_corpus(const std::vector<std::vector<ActTriple>>& pool) {
  std::vector<Dialog> out;
  for (int i = 0; i < 200; ++i) {
    char id[16];
    std::snprintf(id, sizeof(id), "s%03d", i);
    Dialog d;
    d.id = id;
    Turn t;
    t.index = 0;
    t.user = "i need a place to stay in the north";
    t.user_acts = {{"hotel", "inform", "area"}};
    t.belief = {{"hotel", {{"area", "north"}}}};
    int m = i % 20;
    t.sys_acts = m < 17 ? pool[0] : pool[static_cast<std::size_t>(1 + (m - 17))];
    t.response = "ok .";
    d.turns.push_back(std::move(t));
    out.push_back(std::move(d));
  }
  return out;
}

Diversity decode_diversity(const ActionModel& model, const std::vector<Dialog>& dialogs,
                           const Ontology& ontology, const VenueDatabase& db,
                           const DecodeConfig& base) {
  std::vector<std::vector<SystemAction>> per_turn;
  for (const Dialog& d : dialogs) {
    std::vector<DialogState> states = build_states(d, ontology, db);
    for (const Turn& t : d.turns) {
      DecodeConfig config = base;
      config.seed =
          mix_seed({base.seed, fnv1a64(d.id), static_cast<uint64_t>(t.index)});
      per_turn.push_back(
          decode_multi_action(model, ontology, states[static_cast<std::size_t>(t.index)],
                              config));
    }
  }
  return act_slot_diversity(per_turn);
}

// ---------------------------------------------------------------------------
// decoder oracle helpers (mirrors of the unit-test versions)

SequenceScorer random_scorer(uint64_t case_seed, int vocab_size) {
  SequenceScorer s;
  s.vocab.push_back("</s>");
  for (int i = 1; i < vocab_size; ++i) s.vocab.push_back("t" + std::to_string(i));
  s.eos = 0;
  s.step = [case_seed, vocab_size](const std::vector<int>& prefix) {
    std::string ctx;
    for (int t : prefix) {
      ctx += std::to_string(t);
      ctx += ",";
    }
    Rng rng(mix_seed({case_seed, fnv1a64(ctx)}));
    std::vector<double> probs(static_cast<std::size_t>(vocab_size));
    double total = 0.0;
    for (double& v : probs) {
      v = rng.uniform01() + 0.01;
      total += v;
    }
    std::vector<double> lp(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) lp[i] = std::log(probs[i] / total);
    return lp;
  };
  return s;
}

void enumerate_all(const SequenceScorer& scorer, int max_length, std::vector<int>& prefix,
                   double lp, std::vector<Hypothesis>& out) {
  if (static_cast<int>(prefix.size()) == max_length) {
    out.push_back({prefix, lp, false});
    return;
  }
  std::vector<double> step = scorer.step(prefix);
  out.push_back({prefix, lp + step[static_cast<std::size_t>(scorer.eos)], true});
  for (int t = 0; t < static_cast<int>(step.size()); ++t) {
    if (t == scorer.eos) continue;
    prefix.push_back(t);
    enumerate_all(scorer, max_length, prefix, lp + step[static_cast<std::size_t>(t)], out);
    prefix.pop_back();
  }
}

std::vector<Hypothesis> enumeration_oracle(const SequenceScorer& scorer, int max_length) {
  std::vector<Hypothesis> out;
  std::vector<int> prefix;
  enumerate_all(scorer, max_length, prefix, 0.0, out);
  std::stable_sort(out.begin(), out.end(), [](const Hypothesis& a, const Hypothesis& b) {
    if (a.log_prob != b.log_prob) return a.log_prob > b.log_prob;
    return a.tokens < b.tokens;
  });
  return out;
}

// ---------------------------------------------------------------------------
// command-line pipeline helpers

int run_cli(const std::string& args, std::string& output) {
  std::string cmd = std::string(MADA_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return -1;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) output.append(buf, n);
  int status = pclose(pipe);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* const kArtifacts[] = {"split/train.json", "split/dev.json",  "split/test.json",
                                  "delexed.json",     "vocab.txt",       "map.json",
                                  "aug.jsonl",        "model_raw.json",  "model_aug.json",
                                  "bank.json",        "actions.jsonl",   "preds.jsonl",
                                  "report.json"};

bool run_pipeline(const std::string& dir, int jobs, std::string& detail) {
  std::string common = "--ontology " + data_path("ontology.json") + " --database " +
                       data_path("database.json");
  std::string raw_in = common + " --corpus " + data_path("corpus.json");
  std::string delexed_in = common + " --corpus " + dir + "/delexed.json";
  std::string j = " --jobs " + std::to_string(jobs);

  std::vector<std::string> steps{
      "ingest " + raw_in + " --out " + dir + "/split --ratios 0.5,0.25,0.25 --seed 3",
      "delex " + raw_in + " --out " + dir + "/delexed.json --vocab-out " + dir +
          "/vocab.txt" + j,
      "build-map " + delexed_in + " --out " + dir + "/map.json" + j,
      "augment " + delexed_in + " --map " + dir + "/map.json --out " + dir +
          "/aug.jsonl --k 3 --seed 0" + j,
      "train " + delexed_in + " --raw --out " + dir + "/model_raw.json --bank-out " + dir +
          "/bank.json",
      "train " + delexed_in + " --augmented " + dir + "/aug.jsonl --out " + dir +
          "/model_aug.json",
      "decode " + delexed_in + " --model " + dir +
          "/model_aug.json --method top-k --num-actions 5 --seed 1 --out " + dir +
          "/actions.jsonl" + j,
      "realize " + delexed_in + " --actions " + dir + "/actions.jsonl --bank " + dir +
          "/bank.json --out " + dir + "/preds.jsonl",
      "evaluate " + delexed_in + " --predictions " + dir + "/preds.jsonl --actions " + dir +
          "/actions.jsonl --out " + dir + "/report.json",
  };
  for (const std::string& step : steps) {
    std::string output;
    int code = run_cli(step, output);
    if (code != 0) {
      detail = "step '" + step.substr(0, step.find(' ')) + "' exited " +
               std::to_string(code) + ": " + output.substr(0, 200);
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// criteria

bool combined_score_arithmetic(std::string& detail) {
  double first = combined_score(87.9, 78.0, 30.4);
  double second = combined_score(89.2, 77.9, 18.6);
  std::ostringstream os;
  os << "got " << first << " and " << second;
  detail = os.str();
  return near(first, 113.35, 1e-9) && near(first, 113.4, 0.05 + 1e-9) &&
         near(second, 102.15, 1e-9) && near(second, 102.2, 0.05 + 1e-9);
}

bool augmentation_balances_the_policy(std::string& detail) {
  auto f = load_fixture("balance_corpus.json");
  PolicyConfig config;
  config.alpha = 0.0;  // count ratios, no smoothing

  ActionModel raw = train(ground_truth_pairs(f.dialogs, f.ontology, f.db), config);
  ActionModel augmented = train(augmented_pairs(f.dialogs, f.ontology, f.db), config);

  StateKey key = canonical_key(build_state(f.dialogs[0], 0, f.ontology, f.db));
  std::map<std::string, double> raw_dist = action_distribution(raw, key);
  std::map<std::string, double> aug_dist = action_distribution(augmented, key);

  const std::string rare = "[hotel] [recommend] name [offerbook]";
  auto raw_it = raw_dist.find(rare);
  auto aug_it = aug_dist.find(rare);
  if (raw_it == raw_dist.end() || aug_it == aug_dist.end()) {
    detail = "rare action missing from a distribution";
    return false;
  }
  double h_raw = distribution_entropy(raw_dist);
  double h_aug = distribution_entropy(aug_dist);
  std::ostringstream os;
  os << "raw " << raw_it->second << " aug " << aug_it->second << " entropy " << h_raw
     << " -> " << h_aug;
  detail = os.str();
  return near(raw_it->second, 0.1, 0.01) && near(aug_it->second, 0.5, 0.01) &&
         h_aug > h_raw;
}

bool augmentation_raises_decoded_diversity(std::string& detail) {
  std::vector<std::vector<ActTriple>> pool{
      {{"hotel", "inform", "choice"}, {"hotel", "inform", "area"}},
      {{"hotel", "request", "stars"}, {"hotel", "request", "parking"}},
      {{"hotel", "recommend", "name"},
       {"hotel", "recommend", "pricerange"},
       {"hotel", "offerbook", ""}},
      {{"hotel", "select", "internet"}, {"hotel", "select", "type"}}};
  auto f = load_fixture();
  std::vector<Dialog> dialogs = synthetic_corpus(pool);

  ActionModel raw = train(ground_truth_pairs(dialogs, f.ontology, f.db), PolicyConfig{});
  ActionModel augmented =
      train(augmented_pairs(dialogs, f.ontology, f.db), PolicyConfig{});

  DecodeConfig base;
  base.method = DecodeMethod::kTopK;
  base.num_actions = 5;

  std::ostringstream os;
  bool ok = true;
  for (uint64_t seed = 0; seed < 5; ++seed) {
    base.seed = seed;
    Diversity r = decode_diversity(raw, dialogs, f.ontology, f.db, base);
    Diversity a = decode_diversity(augmented, dialogs, f.ontology, f.db, base);
    ok = ok && a.act_number > r.act_number && a.slot_number > r.slot_number;
    os << " seed" << seed << " act " << r.act_number << "<" << a.act_number << " slot "
       << r.slot_number << "<" << a.slot_number;
  }
  detail = os.str();
  return ok;
}

bool greedy_single_act_decodes_one_act(std::string& detail) {
  std::vector<std::vector<ActTriple>> pool{
      {{"hotel", "inform", "choice"}, {"hotel", "inform", "area"}},
      {{"hotel", "request", "stars"}, {"hotel", "request", "parking"}},
      {{"hotel", "recommend", "name"}},
      {{"hotel", "select", "internet"}, {"hotel", "select", "type"}}};
  auto f = load_fixture();
  std::vector<Dialog> dialogs = synthetic_corpus(pool);
  ActionModel model = train(ground_truth_pairs(dialogs, f.ontology, f.db), PolicyConfig{});

  DecodeConfig base;  // greedy, one action per turn
  Diversity d = decode_diversity(model, dialogs, f.ontology, f.db, base);
  std::ostringstream os;
  os << "act_number " << d.act_number;
  detail = os.str();
  return d.act_number == 1.0;
}

bool decoder_oracle_suite(std::string& detail) {
  // Beam equals exhaustive enumeration; zero-penalty diverse beam bit-equals
  // plain beam.
  for (uint64_t cs = 0; cs < 1000; ++cs) {
    int vocab_size = 2 + static_cast<int>(cs % 4);
    int max_length = 1 + static_cast<int>((cs / 4) % 4);
    SequenceScorer scorer = random_scorer(cs, vocab_size);
    std::vector<Hypothesis> oracle = enumeration_oracle(scorer, max_length);

    DecodeConfig cfg;
    cfg.num_actions = static_cast<int>(oracle.size());
    cfg.max_length = max_length;
    cfg.gamma = 0.0;
    std::vector<Hypothesis> beam = beam_search(scorer, cfg);
    std::vector<Hypothesis> diverse = diverse_beam_search(scorer, cfg);
    if (beam.size() != oracle.size() || diverse.size() != beam.size()) {
      detail = "case " + std::to_string(cs) + ": size mismatch";
      return false;
    }
    for (std::size_t i = 0; i < beam.size(); ++i) {
      if (beam[i].tokens != oracle[i].tokens ||
          std::fabs(beam[i].log_prob - oracle[i].log_prob) > 1e-9 ||
          beam[i].finished != oracle[i].finished) {
        detail = "case " + std::to_string(cs) + ": beam differs from enumeration at rank " +
                 std::to_string(i);
        return false;
      }
      if (diverse[i].tokens != beam[i].tokens || diverse[i].log_prob != beam[i].log_prob ||
          diverse[i].finished != beam[i].finished) {
        detail = "case " + std::to_string(cs) + ": gamma=0 diverse beam differs";
        return false;
      }
    }
  }

  // Nucleus selection equals a cumulative-sum oracle.
  for (uint64_t cs = 0; cs < 1000; ++cs) {
    Rng rng(mix_seed({404, cs}));
    std::size_t n = 2 + rng.bounded(5);
    std::vector<double> probs(n);
    double total = 0.0;
    for (double& v : probs) {
      v = rng.uniform01() + 1e-6;
      total += v;
    }
    for (double& v : probs) v /= total;
    double p = 0.05 + 0.9 * rng.uniform01();

    std::vector<int> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&probs](int a, int b) {
      if (probs[static_cast<std::size_t>(a)] != probs[static_cast<std::size_t>(b)])
        return probs[static_cast<std::size_t>(a)] > probs[static_cast<std::size_t>(b)];
      return a < b;
    });
    std::vector<int> expected;
    double acc = 0.0;
    for (int idx : order) {
      expected.push_back(idx);
      acc += probs[static_cast<std::size_t>(idx)];
      if (acc >= p) break;
    }
    if (nucleus_indices(probs, p) != expected) {
      detail = "nucleus case " + std::to_string(cs) + " differs from the cumsum oracle";
      return false;
    }
  }

  // Samples stay inside their support over 10,000 draws.
  SequenceScorer s;
  s.vocab = {"</s>", "a", "b", "c"};
  s.eos = 0;
  s.step = [](const std::vector<int>& prefix) {
    std::vector<double> probs =
        prefix.empty() ? std::vector<double>{0.0, 0.5, 0.3, 0.2}
                       : std::vector<double>{1.0, 0.0, 0.0, 0.0};
    std::vector<double> lp(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) lp[i] = std::log(probs[i]);
    return lp;
  };
  DecodeConfig cfg;
  cfg.num_actions = 10000;
  cfg.seed = 5;
  cfg.method = DecodeMethod::kTopK;
  cfg.top_k = 2;
  for (const Hypothesis& h : top_k_sample(s, cfg)) {
    if (h.tokens.size() != 1 || h.tokens[0] == 3 || h.tokens[0] == 0) {
      detail = "top-k draw left the top-2 support";
      return false;
    }
  }
  cfg.method = DecodeMethod::kTopP;
  cfg.top_p = 0.79;
  for (const Hypothesis& h : top_p_sample(s, cfg)) {
    if (h.tokens.size() != 1 || h.tokens[0] == 3 || h.tokens[0] == 0) {
      detail = "top-p draw left the 0.79 nucleus";
      return false;
    }
  }
  return true;
}

bool span_round_trips(std::string& detail) {
  auto f = load_fixture();

  SystemAction request({{"hotel", "request", "price"}, {"hotel", "request", "area"}},
                       f.ontology);
  if (action_span_string(request, f.ontology) != "[hotel] [request] price area" ||
      !(action_from_span("[hotel] [request] price area", f.ontology) == request)) {
    detail = "literal action example failed";
    return false;
  }
  BeliefState belief{{"restaurant", {{"name", "curry garden"}}}};
  std::string span = belief_span_string(belief, f.ontology);
  if (span.rfind("[restaurant] name curry garden", 0) != 0 ||
      !(belief_from_span(span, f.ontology) == belief)) {
    detail = "literal belief example failed";
    return false;
  }

  Rng rng(60);
  for (int iter = 0; iter < 5000; ++iter) {
    BeliefState b;
    std::size_t n_domains = 1 + rng.bounded(3);
    for (std::size_t i = 0; i < n_domains; ++i) {
      const std::string& domain =
          f.ontology.domains[static_cast<std::size_t>(rng.bounded(f.ontology.domains.size()))];
      const auto& informable = f.ontology.at(domain).informable;
      std::size_t n_slots = 1 + rng.bounded(informable.size());
      Rng slot_rng(rng.next());
      for (std::size_t si : sample_indices(informable.size(), n_slots, slot_rng)) {
        std::string value;
        std::size_t n_tokens = 1 + rng.bounded(3);
        for (std::size_t w = 0; w < n_tokens; ++w) {
          if (w) value += " ";
          value += "v" + std::to_string(rng.bounded(50));
        }
        b[domain][informable[si]] = value;
      }
    }
    if (!(belief_from_span(belief_span_string(b, f.ontology), f.ontology) == b)) {
      detail = "belief round-trip failed at iteration " + std::to_string(iter);
      return false;
    }
  }
  for (int iter = 0; iter < 5000; ++iter) {
    std::vector<ActTriple> triples;
    std::size_t n = 1 + rng.bounded(6);
    for (std::size_t i = 0; i < n; ++i) {
      const std::string& domain =
          f.ontology.domains[static_cast<std::size_t>(rng.bounded(f.ontology.domains.size()))];
      const std::string& act =
          f.ontology.acts[static_cast<std::size_t>(rng.bounded(f.ontology.acts.size()))];
      std::string slot;
      const auto& slots = f.ontology.at(domain).action_slots;
      if (!slots.empty() && rng.bounded(4) != 0) {
        slot = slots[static_cast<std::size_t>(rng.bounded(slots.size()))];
      }
      triples.push_back({domain, act, slot});
    }
    SystemAction action(triples, f.ontology);
    if (!(action_from_span(action_span_string(action, f.ontology), f.ontology) == action)) {
      detail = "action round-trip failed at iteration " + std::to_string(iter);
      return false;
    }
  }
  return true;
}

bool delex_round_trip(std::string& detail) {
  for (const char* corpus : {"corpus.json", "balance_corpus.json"}) {
    auto f = load_fixture(corpus);
    ValueIndex index = ValueIndex::build(f.ontology, f.db, f.dialogs);
    delexicalize_corpus(f.dialogs, index);
    for (const Dialog& d : f.dialogs) {
      for (const Turn& t : d.turns) {
        std::map<std::string, std::string> values;
        for (const Substitution& s : t.substitutions) values[s.slot] = s.value;
        RelexResult r = relexicalize(*t.delex_response, values);
        if (r.text != t.response) {
          detail = std::string(corpus) + " " + d.id + " turn " + std::to_string(t.index) +
                   " did not reconstruct";
          return false;
        }
        // Placeholders may stay unfilled only when the raw response already
        // carried them (pre-delexicalized reference numbers and the like).
        for (const std::string& u : r.unfilled) {
          if (t.response.find(u) == std::string::npos) {
            detail = std::string(corpus) + " " + d.id + " turn " + std::to_string(t.index) +
                     " left '" + u + "' unfilled";
            return false;
          }
        }
      }
    }
  }
  return true;
}

bool state_map_soundness(std::string& detail) {
  auto f = load_fixture();
  auto g = load_fixture("balance_corpus.json");
  std::vector<Dialog> all = f.dialogs;
  all.insert(all.end(), g.dialogs.begin(), g.dialogs.end());

  StateActionMap map = build_state_action_map(all, f.ontology, f.db);
  for (const Dialog& d : all) {
    std::vector<DialogState> states = build_states(d, f.ontology, f.db);
    for (const Turn& t : d.turns) {
      StateKey key = canonical_key(states[static_cast<std::size_t>(t.index)]);
      const std::vector<ActionOccurrence>* actions = map.find(key.text);
      std::string span =
          action_span_string(SystemAction(t.sys_acts, f.ontology), f.ontology);
      bool found = false;
      if (actions != nullptr) {
        for (const ActionOccurrence& occ : *actions) {
          if (occ.action_span == span) found = true;
        }
      }
      if (!found) {
        detail = d.id + " turn " + std::to_string(t.index) + " action not in its state set";
        return false;
      }
    }
  }

  std::vector<Dialog> shuffled = all;
  std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937(99));
  StateActionMap reshuffled = build_state_action_map(shuffled, f.ontology, f.db);
  if (!(reshuffled.states == map.states)) {
    detail = "map depends on dialog order";
    return false;
  }
  return true;
}

bool pipeline_determinism(std::string& detail) {
  std::string first = make_temp_dir();
  std::string second = make_temp_dir();
  std::string threaded = make_temp_dir();
  if (!run_pipeline(first, 1, detail) || !run_pipeline(second, 1, detail) ||
      !run_pipeline(threaded, 4, detail)) {
    return false;
  }
  for (const char* name : kArtifacts) {
    std::string baseline = read_text_file(first + "/" + name);
    if (read_text_file(second + "/" + name) != baseline) {
      detail = std::string(name) + " differs between identical runs";
      return false;
    }
    if (read_text_file(threaded + "/" + name) != baseline) {
      detail = std::string(name) + " differs under --jobs 4";
      return false;
    }
  }
  return true;
}

bool metric_fixtures(std::string& detail) {
  auto f = load_fixture();
  std::vector<std::string> responses;
  for (const Dialog& d : f.dialogs) {
    for (const Turn& t : d.turns) responses.push_back(t.response);
  }
  if (!near(bleu(responses, responses), 100.0, 1e-9)) {
    detail = "self-bleu is not 100";
    return false;
  }

  Dialog d;
  d.id = "x001";
  d.goal["hotel"].inform = {{"area", "north"}, {"parking", "yes"}};
  d.goal["hotel"].request = {"phone"};
  Turn t;
  t.index = 0;
  d.turns.push_back(t);

  Substitution name{"<v.name>", "hotel", "name", "acorn guest house"};
  Substitution phone{"<v.phone>", "hotel", "phone", "01223353888"};
  auto predict = [](const std::string& response, const std::vector<Substitution>& subs) {
    Prediction p;
    p.dialog_id = "x001";
    p.turn = 0;
    p.response = response;
    p.substitutions = subs;
    return p;
  };

  InformSuccess full = inform_success(
      {d}, {predict("the <v.name> has phone <v.phone> .", {name, phone})}, f.db);
  InformSuccess bare =
      inform_success({d}, {predict("the <v.name> is lovely .", {name})}, f.db);
  Dialog strict = d;
  strict.goal["hotel"].inform = {{"area", "north"}, {"parking", "no"}};
  InformSuccess wrong = inform_success(
      {strict}, {predict("the <v.name> has phone <v.phone> .", {name, phone})}, f.db);

  std::ostringstream os;
  os << "got (" << full.inform << "," << full.success << ") (" << bare.inform << ","
     << bare.success << ") (" << wrong.inform << "," << wrong.success << ")";
  detail = os.str();
  return full.inform == 100.0 && full.success == 100.0 && bare.inform == 100.0 &&
         bare.success == 0.0 && wrong.inform == 0.0 && wrong.success == 0.0;
}

}  // namespace

int main() {
  run_criterion(1, "combined-score arithmetic", combined_score_arithmetic);
  run_criterion(2, "augmentation balances the action policy", augmentation_balances_the_policy);
  run_criterion(3, "augmentation raises decoded diversity", augmentation_raises_decoded_diversity);
  run_criterion(4, "greedy single-act corpora decode one act", greedy_single_act_decodes_one_act);
  run_criterion(5, "decoder oracle suite", decoder_oracle_suite);
  run_criterion(6, "span round-trips", span_round_trips);
  run_criterion(7, "delexicalization round-trip", delex_round_trip);
  run_criterion(8, "state-action map soundness", state_map_soundness);
  run_criterion(9, "pipeline determinism", pipeline_determinism);
  run_criterion(10, "metric fixtures", metric_fixtures);

  if (failures != 0) {
    std::cout << failures << " criteria failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
