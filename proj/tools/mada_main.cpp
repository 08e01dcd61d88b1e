// mada_main.cpp

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

// Command-line front end for the pipeline:
//   ingest -> delex -> build-map -> augment -> train -> decode -> realize
//   -> evaluate -> report
// Exit codes: 0 success, 1 invalid input or arguments, 2 file I/O failure.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mada/augment.h"
#include "mada/corpus.h"
#include "mada/decode.h"
#include "mada/delex.h"
#include "mada/metrics.h"
#include "mada/policy.h"
#include "mada/rng.h"
#include "mada/spans.h"
#include "mada/statemap.h"

namespace {

using Json = nlohmann::json;
using namespace mada;

// Inputs shared by the corpus-processing commands.
struct CommonInputs {
  std::string ontology;
  std::string database;
  std::string corpus;
};

void add_common_inputs(CLI::App* cmd, CommonInputs& in) {
  cmd->add_option("--ontology", in.ontology, "Ontology JSON file")->required();
  cmd->add_option("--database", in.database, "Venue database JSON file")->required();
  cmd->add_option("--corpus", in.corpus, "Corpus JSON file")->required();
}

struct LoadedInputs {
  Ontology ontology;
  VenueDatabase db;
  std::vector<Dialog> dialogs;
};

LoadedInputs load_inputs(const CommonInputs& in) {
  LoadedInputs out;
  out.ontology = Ontology::load(in.ontology);
  out.db = VenueDatabase::load(in.database, out.ontology);
  out.dialogs = load_corpus(in.corpus, out.ontology);
  return out;
}

int count_turns(const std::vector<Dialog>& dialogs) {
  int n = 0;
  for (const Dialog& d : dialogs) n += static_cast<int>(d.turns.size());
  return n;
}

// One decoded turn: the ranked action spans for a dialog turn.
struct ActionSetLine {
  std::string dialog_id;
  int turn = 0;
  std::string state_key;
  std::vector<std::string> actions;
};

void save_action_sets(const std::string& path, const std::vector<ActionSetLine>& lines) {
  std::string out;
  for (const ActionSetLine& line : lines) {
    Json j;
    j["dialog_id"] = line.dialog_id;
    j["turn"] = line.turn;
    j["state_key"] = line.state_key;
    j["actions"] = line.actions;
    out += j.dump();
    out += "\n";
  }
  write_text_file(path, out);
}

std::vector<ActionSetLine> load_action_sets(const std::string& path) {
  std::string text = read_text_file(path);
  std::vector<ActionSetLine> out;
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      Json j = Json::parse(line);
      ActionSetLine entry;
      entry.dialog_id = j.at("dialog_id").get<std::string>();
      entry.turn = j.at("turn").get<int>();
      entry.state_key = j.at("state_key").get<std::string>();
      entry.actions = j.at("actions").get<std::vector<std::string>>();
      if (entry.actions.empty()) {
        throw ValidationError(path + " line " + std::to_string(line_no) +
                              ": empty action list");
      }
      out.push_back(std::move(entry));
    } catch (const Json::exception& e) {
      throw ValidationError(path + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

// Indexes per-turn records and checks exactly one record per corpus turn.
template <typename T>
std::map<std::pair<std::string, int>, const T*> index_by_turn(
    const std::vector<T>& items, const std::vector<Dialog>& dialogs, const std::string& what) {
  std::map<std::pair<std::string, int>, const T*> by_turn;
  for (const T& item : items) {
    if (!by_turn.emplace(std::make_pair(item.dialog_id, item.turn), &item).second) {
      throw ValidationError("duplicate " + what + " for dialog " + item.dialog_id + " turn " +
                            std::to_string(item.turn));
    }
  }
  for (const Dialog& d : dialogs) {
    for (const Turn& t : d.turns) {
      if (by_turn.find(std::make_pair(d.id, t.index)) == by_turn.end()) {
        throw ValidationError("missing " + what + " for dialog " + d.id + " turn " +
                              std::to_string(t.index));
      }
    }
  }
  return by_turn;
}

// ---------------------------------------------------------------------------
// ingest

struct IngestOpts {
  CommonInputs in;
  std::string out_dir;
  std::vector<double> ratios{0.8, 0.1, 0.1};
  uint64_t seed = 0;
};

void run_ingest(const IngestOpts& opts) {
  if (opts.ratios.size() != 3) {
    throw ValidationError("ingest: --ratios needs exactly three values");
  }
  LoadedInputs in = load_inputs(opts.in);
  std::array<double, 3> ratios{opts.ratios[0], opts.ratios[1], opts.ratios[2]};
  SplitResult splits = split(in.dialogs, ratios, opts.seed);

  std::filesystem::create_directories(opts.out_dir);
  save_corpus(opts.out_dir + "/train.json", splits.train);
  save_corpus(opts.out_dir + "/dev.json", splits.dev);
  save_corpus(opts.out_dir + "/test.json", splits.test);

  std::cout << "ingested " << in.dialogs.size() << " dialogs (" << count_turns(in.dialogs)
            << " turns): train " << splits.train.size() << ", dev " << splits.dev.size()
            << ", test " << splits.test.size() << "\n";
}

void setup_ingest(CLI::App& app) {
  auto opts = std::make_shared<IngestOpts>();
  CLI::App* cmd =
      app.add_subcommand("ingest", "Validate and normalize a corpus, then split it");
  add_common_inputs(cmd, opts->in);
  cmd->add_option("--out", opts->out_dir, "Output directory for train/dev/test.json")
      ->required();
  cmd->add_option("--ratios", opts->ratios, "Train,dev,test ratios (default 0.8,0.1,0.1)")
      ->delimiter(',')
      ->expected(3);
  cmd->add_option("--seed", opts->seed, "Shuffle seed (default 0)");
  cmd->callback([opts]() { run_ingest(*opts); });
}

// ---------------------------------------------------------------------------
// delex

struct DelexOpts {
  CommonInputs in;
  std::string out;
  std::string vocab_out;
  int jobs = 1;
};

void run_delex(const DelexOpts& opts) {
  LoadedInputs in = load_inputs(opts.in);
  ValueIndex index = ValueIndex::build(in.ontology, in.db, in.dialogs);
  delexicalize_corpus(in.dialogs, index, opts.jobs);
  save_corpus(opts.out, in.dialogs);

  if (!opts.vocab_out.empty()) {
    std::string vocab;
    for (const std::string& token : span_vocabulary(in.ontology)) {
      vocab += token;
      vocab += "\n";
    }
    write_text_file(opts.vocab_out, vocab);
  }

  int substitutions = 0;
  for (const Dialog& d : in.dialogs) {
    for (const Turn& t : d.turns) substitutions += static_cast<int>(t.substitutions.size());
  }
  std::cout << "delexicalized " << in.dialogs.size() << " dialogs ("
            << count_turns(in.dialogs) << " turns), " << substitutions
            << " substitutions\n";
}

void setup_delex(CLI::App& app) {
  auto opts = std::make_shared<DelexOpts>();
  CLI::App* cmd = app.add_subcommand("delex", "Delexicalize every system response");
  add_common_inputs(cmd, opts->in);
  cmd->add_option("--out", opts->out, "Output corpus JSON file")->required();
  cmd->add_option("--vocab-out", opts->vocab_out, "Also write the span token vocabulary");
  cmd->add_option("--jobs", opts->jobs, "Worker threads (default 1)")
      ->check(CLI::PositiveNumber);
  cmd->callback([opts]() { run_delex(*opts); });
}

// ---------------------------------------------------------------------------
// build-map

struct BuildMapOpts {
  CommonInputs in;
  std::string out;
  int jobs = 1;
};

void run_build_map(const BuildMapOpts& opts) {
  LoadedInputs in = load_inputs(opts.in);
  StateActionMap map = build_state_action_map(in.dialogs, in.ontology, in.db, opts.jobs);
  map.save(opts.out);

  std::size_t multi = 0, max_actions = 0, total_actions = 0;
  for (const auto& [key, actions] : map.states) {
    if (actions.size() > 1) ++multi;
    max_actions = std::max(max_actions, actions.size());
    total_actions += actions.size();
  }
  std::cout << "state-action map: " << map.states.size() << " states, " << multi
            << " with multiple actions, max " << max_actions << ", mean "
            << (map.states.empty()
                    ? 0.0
                    : static_cast<double>(total_actions) /
                          static_cast<double>(map.states.size()))
            << " actions per state\n";
}

void setup_build_map(CLI::App& app) {
  auto opts = std::make_shared<BuildMapOpts>();
  CLI::App* cmd =
      app.add_subcommand("build-map", "Collect the valid actions observed per dialog state");
  add_common_inputs(cmd, opts->in);
  cmd->add_option("--out", opts->out, "Output map JSON file")->required();
  cmd->add_option("--jobs", opts->jobs, "Worker threads (default 1)")
      ->check(CLI::PositiveNumber);
  cmd->callback([opts]() { run_build_map(*opts); });
}

// ---------------------------------------------------------------------------
// augment

struct AugmentOpts {
  CommonInputs in;
  std::string map_path;
  std::string out;
  int k = 3;
  uint64_t seed = 0;
  int jobs = 1;
};

void run_augment(const AugmentOpts& opts) {
  LoadedInputs in = load_inputs(opts.in);
  StateActionMap map = opts.map_path.empty()
                           ? build_state_action_map(in.dialogs, in.ontology, in.db, opts.jobs)
                           : StateActionMap::load(opts.map_path);
  AugmentConfig config;
  config.k = opts.k;
  config.seed = opts.seed;
  std::vector<AugmentedPair> pairs =
      augment_corpus(in.dialogs, map, in.ontology, in.db, config, opts.jobs);
  save_pairs(opts.out, pairs);

  int turns = count_turns(in.dialogs);
  std::cout << "augmented " << turns << " turns to " << pairs.size() << " pairs ("
            << (turns == 0 ? 0.0
                           : static_cast<double>(pairs.size()) / static_cast<double>(turns))
            << "x)\n";
}

void setup_augment(CLI::App& app) {
  auto opts = std::make_shared<AugmentOpts>();
  CLI::App* cmd =
      app.add_subcommand("augment", "Expand each turn with sampled valid actions");
  add_common_inputs(cmd, opts->in);
  cmd->add_option("--map", opts->map_path,
                  "State-action map JSON (rebuilt from the corpus when omitted)");
  cmd->add_option("--out", opts->out, "Output training pairs JSONL file")->required();
  cmd->add_option("--k", opts->k, "Per-group sample cap (default 3)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", opts->seed, "Sampling seed (default 0)");
  cmd->add_option("--jobs", opts->jobs, "Worker threads (default 1)")
      ->check(CLI::PositiveNumber);
  cmd->callback([opts]() { run_augment(*opts); });
}

// ---------------------------------------------------------------------------
// train

struct TrainOpts {
  CommonInputs in;
  bool raw = false;
  std::string augmented;
  std::string out;
  std::string bank_out;
  double alpha = 0.01;
  std::vector<double> lambdas{0.7, 0.15, 0.1, 0.05};
};

void run_train(const TrainOpts& opts) {
  if (opts.raw == !opts.augmented.empty()) {
    throw ValidationError("train: pass exactly one of --raw or --augmented");
  }
  if (opts.lambdas.size() != 4) {
    throw ValidationError("train: --lambda needs exactly four values");
  }
  double lambda_sum = 0.0;
  for (double l : opts.lambdas) {
    if (l < 0.0) throw ValidationError("train: --lambda values must be non-negative");
    lambda_sum += l;
  }
  if (lambda_sum <= 0.0) throw ValidationError("train: --lambda values must not all be zero");
  if (opts.alpha < 0.0) throw ValidationError("train: --alpha must be non-negative");

  LoadedInputs in = load_inputs(opts.in);

  std::vector<TrainingPair> pairs;
  if (opts.raw) {
    for (const Dialog& d : in.dialogs) {
      std::vector<DialogState> states = build_states(d, in.ontology, in.db);
      for (std::size_t t = 0; t < d.turns.size(); ++t) {
        TrainingPair p;
        p.key = canonical_key(states[t]);
        p.action_span =
            action_span_string(SystemAction(d.turns[t].sys_acts, in.ontology), in.ontology);
        pairs.push_back(std::move(p));
      }
    }
  } else {
    for (const AugmentedPair& ap : load_pairs(opts.augmented)) {
      pairs.push_back(TrainingPair{ap.key, ap.action_span});
    }
  }

  PolicyConfig config;
  config.alpha = opts.alpha;
  std::copy(opts.lambdas.begin(), opts.lambdas.end(), config.lambdas.begin());
  config.acts = in.ontology.acts;
  ActionModel model = train(pairs, config);
  model.save(opts.out);

  std::cout << "trained on " << pairs.size() << " pairs: vocab " << model.vocab.size()
            << " tokens, contexts " << model.levels[0].size() << "/" << model.levels[1].size()
            << "/" << model.levels[2].size() << "/" << model.levels[3].size() << "\n";

  if (!opts.bank_out.empty()) {
    TemplateBank bank = build_template_bank(in.dialogs, in.ontology);
    bank.save(opts.bank_out);
    std::cout << "template bank: " << bank.templates.size() << " actions\n";
  }
}

void setup_train(CLI::App& app) {
  auto opts = std::make_shared<TrainOpts>();
  CLI::App* cmd = app.add_subcommand("train", "Fit the action policy model");
  add_common_inputs(cmd, opts->in);
  CLI::Option* raw = cmd->add_flag("--raw", opts->raw, "Train on the corpus ground truth");
  cmd->add_option("--augmented", opts->augmented, "Train on augmented pairs (JSONL)")
      ->excludes(raw);
  cmd->add_option("--out", opts->out, "Output model JSON file")->required();
  cmd->add_option("--bank-out", opts->bank_out,
                  "Also write a response template bank (needs a delexicalized corpus)");
  cmd->add_option("--alpha", opts->alpha, "Add-alpha smoothing (default 0.01)");
  cmd->add_option("--lambda", opts->lambdas,
                  "Backoff level weights (default 0.7,0.15,0.1,0.05)")
      ->delimiter(',')
      ->expected(4);
  cmd->callback([opts]() { run_train(*opts); });
}

// ---------------------------------------------------------------------------
// decode

struct DecodeOpts {
  CommonInputs in;
  std::string model_path;
  std::string out;
  DecodeMethod method = DecodeMethod::kGreedy;
  int num_actions = 1;
  double gamma = 0.2;
  int top_k = 0;
  double top_p = 0.9;
  int max_length = 32;
  uint64_t seed = 0;
  int jobs = 1;
};

void run_decode(const DecodeOpts& opts) {
  LoadedInputs in = load_inputs(opts.in);
  ActionModel model = ActionModel::load(opts.model_path);

  DecodeConfig base;
  base.method = opts.method;
  base.num_actions = opts.num_actions;
  base.gamma = opts.gamma;
  base.top_k = opts.top_k;
  base.top_p = opts.top_p;
  base.max_length = opts.max_length;
  base.seed = opts.seed;
  base.validate();

  std::vector<std::vector<ActionSetLine>> per_dialog(in.dialogs.size());
  parallel_for(in.dialogs.size(), opts.jobs, [&](std::size_t i) {
    const Dialog& d = in.dialogs[i];
    std::vector<DialogState> states = build_states(d, in.ontology, in.db);
    for (std::size_t t = 0; t < d.turns.size(); ++t) {
      DecodeConfig config = base;
      // Per-turn sampling stream, stable under corpus order and job count.
      config.seed = mix_seed({base.seed, fnv1a64(d.id),
                              static_cast<uint64_t>(d.turns[t].index)});
      std::vector<SystemAction> actions =
          decode_multi_action(model, in.ontology, states[t], config);
      ActionSetLine line;
      line.dialog_id = d.id;
      line.turn = d.turns[t].index;
      line.state_key = canonical_key(states[t]).text;
      for (const SystemAction& a : actions) {
        line.actions.push_back(action_span_string(a, in.ontology));
      }
      per_dialog[i].push_back(std::move(line));
    }
  });

  std::vector<ActionSetLine> lines;
  std::vector<std::vector<SystemAction>> per_turn;
  for (std::vector<ActionSetLine>& dialog_lines : per_dialog) {
    for (ActionSetLine& line : dialog_lines) {
      std::vector<SystemAction> actions;
      for (const std::string& span : line.actions) {
        actions.push_back(action_from_span(span, in.ontology));
      }
      per_turn.push_back(std::move(actions));
      lines.push_back(std::move(line));
    }
  }
  save_action_sets(opts.out, lines);

  Diversity div = act_slot_diversity(per_turn);
  std::cout << "decoded " << lines.size() << " turns: act_number " << div.act_number
            << ", slot_number " << div.slot_number << "\n";
}

void setup_decode(CLI::App& app) {
  auto opts = std::make_shared<DecodeOpts>();
  CLI::App* cmd = app.add_subcommand("decode", "Decode action sets for every corpus turn");
  add_common_inputs(cmd, opts->in);
  cmd->add_option("--model", opts->model_path, "Trained model JSON file")->required();
  cmd->add_option("--out", opts->out, "Output action sets JSONL file")->required();
  std::map<std::string, DecodeMethod> methods{{"greedy", DecodeMethod::kGreedy},
                                              {"beam", DecodeMethod::kBeam},
                                              {"diverse-beam", DecodeMethod::kDiverseBeam},
                                              {"top-k", DecodeMethod::kTopK},
                                              {"top-p", DecodeMethod::kTopP}};
  cmd->add_option("--method", opts->method,
                  "greedy, beam, diverse-beam, top-k or top-p (default greedy)")
      ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
  cmd->add_option("--num-actions", opts->num_actions,
                  "Actions per turn: beam width / sample count (default 1)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--gamma", opts->gamma, "Diverse beam sibling penalty (default 0.2)");
  cmd->add_option("--top-k", opts->top_k, "Top-k cutoff (default: num-actions)");
  cmd->add_option("--top-p", opts->top_p, "Nucleus mass (default 0.9)");
  cmd->add_option("--max-length", opts->max_length, "Max span tokens (default 32)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", opts->seed, "Sampling seed (default 0)");
  cmd->add_option("--jobs", opts->jobs, "Worker threads (default 1)")
      ->check(CLI::PositiveNumber);
  cmd->callback([opts]() { run_decode(*opts); });
}

// ---------------------------------------------------------------------------
// realize

struct RealizeOpts {
  CommonInputs in;
  std::string actions;
  std::string bank;
  std::string out;
};

void run_realize(const RealizeOpts& opts) {
  LoadedInputs in = load_inputs(opts.in);
  TemplateBank bank = TemplateBank::load(opts.bank);
  std::vector<ActionSetLine> lines = load_action_sets(opts.actions);
  auto by_turn = index_by_turn(lines, in.dialogs, "action set");

  std::vector<Prediction> predictions;
  int unfilled = 0;
  for (const Dialog& d : in.dialogs) {
    std::vector<DialogState> states = build_states(d, in.ontology, in.db);
    for (std::size_t t = 0; t < d.turns.size(); ++t) {
      const ActionSetLine& line = *by_turn.at(std::make_pair(d.id, d.turns[t].index));
      const std::string& top_span = line.actions.front();
      SystemAction action = action_from_span(top_span, in.ontology);
      const DialogState& state = states[t];

      // First matching venue for the current constraints, if any.
      const EntityRecord* entity = nullptr;
      std::map<std::string, std::string> constraints;
      auto belief_it = state.belief.find(state.domain);
      if (belief_it != state.belief.end()) constraints = belief_it->second;
      std::vector<const EntityRecord*> matches = in.db.query(state.domain, constraints);
      if (!matches.empty()) entity = matches.front();

      std::map<std::string, std::string> booking;
      auto goal_it = d.goal.find(state.domain);
      if (goal_it != d.goal.end()) booking = goal_it->second.book;

      Realization r =
          realize_response(bank, action, in.ontology, state.domain, entity, booking);
      unfilled += static_cast<int>(r.unfilled.size());

      Prediction p;
      p.dialog_id = d.id;
      p.turn = d.turns[t].index;
      p.response = r.text;
      p.action_span = top_span;
      p.substitutions = r.substitutions;
      predictions.push_back(std::move(p));
    }
  }
  save_predictions(opts.out, predictions);

  std::cout << "realized " << predictions.size() << " turns, " << unfilled
            << " unfilled placeholders\n";
}

void setup_realize(CLI::App& app) {
  auto opts = std::make_shared<RealizeOpts>();
  CLI::App* cmd =
      app.add_subcommand("realize", "Turn top-ranked actions into response predictions");
  add_common_inputs(cmd, opts->in);
  cmd->add_option("--actions", opts->actions, "Decoded action sets JSONL file")->required();
  cmd->add_option("--bank", opts->bank, "Response template bank JSON file")->required();
  cmd->add_option("--out", opts->out, "Output predictions JSONL file")->required();
  cmd->callback([opts]() { run_realize(*opts); });
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateOpts {
  CommonInputs in;
  std::string predictions;
  std::string actions;
  std::string out;
};

void run_evaluate(const EvaluateOpts& opts) {
  LoadedInputs in = load_inputs(opts.in);
  std::vector<Prediction> predictions = load_predictions(opts.predictions);
  auto by_turn = index_by_turn(predictions, in.dialogs, "prediction");

  std::vector<std::string> candidates, references;
  for (const Dialog& d : in.dialogs) {
    for (const Turn& t : d.turns) {
      if (!t.delex_response.has_value()) {
        throw ValidationError("evaluate: dialog " + d.id + " turn " +
                              std::to_string(t.index) +
                              " has no delexicalized response; run the delex step first");
      }
      candidates.push_back(by_turn.at(std::make_pair(d.id, t.index))->response);
      references.push_back(*t.delex_response);
    }
  }

  double bleu_score = bleu(candidates, references);
  InformSuccess is = inform_success(in.dialogs, predictions, in.db);

  std::vector<std::vector<SystemAction>> per_turn;
  if (!opts.actions.empty()) {
    std::vector<ActionSetLine> lines = load_action_sets(opts.actions);
    auto actions_by_turn = index_by_turn(lines, in.dialogs, "action set");
    for (const Dialog& d : in.dialogs) {
      for (const Turn& t : d.turns) {
        const ActionSetLine& line = *actions_by_turn.at(std::make_pair(d.id, t.index));
        std::vector<SystemAction> actions;
        for (const std::string& span : line.actions) {
          actions.push_back(action_from_span(span, in.ontology));
        }
        per_turn.push_back(std::move(actions));
      }
    }
  } else {
    for (const Dialog& d : in.dialogs) {
      for (const Turn& t : d.turns) {
        const Prediction* p = by_turn.at(std::make_pair(d.id, t.index));
        per_turn.push_back({action_from_span(p->action_span, in.ontology)});
      }
    }
  }
  Diversity div = act_slot_diversity(per_turn);

  Report report;
  report.inform = is.inform;
  report.success = is.success;
  report.bleu = bleu_score;
  report.combined = combined_score(is.inform, is.success, bleu_score);
  report.act_number = div.act_number;
  report.slot_number = div.slot_number;

  if (!opts.out.empty()) save_report(opts.out, report);
  std::cout << report_table(report);
}

void setup_evaluate(CLI::App& app) {
  auto opts = std::make_shared<EvaluateOpts>();
  CLI::App* cmd = app.add_subcommand(
      "evaluate", "Score predictions against a delexicalized reference corpus");
  add_common_inputs(cmd, opts->in);
  cmd->add_option("--predictions", opts->predictions, "Predictions JSONL file")->required();
  cmd->add_option("--actions", opts->actions,
                  "Decoded action sets JSONL for diversity (default: prediction actions)");
  cmd->add_option("--out", opts->out, "Output report JSON file");
  cmd->callback([opts]() { run_evaluate(*opts); });
}

// ---------------------------------------------------------------------------
// report

struct ReportOpts {
  std::string raw;
  std::string augmented;
  std::string out;
};

void run_report(const ReportOpts& opts) {
  Report raw = load_report(opts.raw);
  Report augmented = load_report(opts.augmented);
  std::string table = comparison_table(raw, augmented);
  if (!opts.out.empty()) write_text_file(opts.out, table);
  std::cout << table;
}

void setup_report(CLI::App& app) {
  auto opts = std::make_shared<ReportOpts>();
  CLI::App* cmd =
      app.add_subcommand("report", "Compare a raw-trained and an augmented-trained report");
  cmd->add_option("--raw", opts->raw, "Report JSON from the raw-trained run")->required();
  cmd->add_option("--augmented", opts->augmented, "Report JSON from the augmented run")
      ->required();
  cmd->add_option("--out", opts->out, "Also write the table to a file");
  cmd->callback([opts]() { run_report(*opts); });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Action mapping, augmentation, policy training and evaluation for "
               "task-oriented dialog corpora"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI/TOML file");
  app.set_version_flag("--version", "mada 0.1.0");

  setup_ingest(app);
  setup_delex(app);
  setup_build_map(app);
  setup_augment(app);
  setup_train(app);
  setup_decode(app);
  setup_realize(app);
  setup_evaluate(app);
  setup_report(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const mada::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mada::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
