// mada/metrics.h

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

#ifndef MADA_METRICS_H_
#define MADA_METRICS_H_

#include <string>
#include <vector>

#include "mada/spans.h"

namespace mada {

// Corpus-level BLEU-4 over whitespace tokens, scaled to 0..100. Uniform 1/4
// weights, brevity penalty, and add-1 smoothing of zero n-gram matches for
// n >= 2. bleu(x, x) == 100 for non-empty x; all-empty candidates score 0.
double bleu(const std::vector<std::string>& candidates,
            const std::vector<std::string>& references);

// One system output per corpus turn. `response` is the delexicalized text;
// substitutions record the values that fill its placeholders.
struct Prediction {
  std::string dialog_id;
  int turn = 0;
  std::string response;
  std::string action_span;
  std::vector<Substitution> substitutions;

  bool operator==(const Prediction&) const = default;
};

void save_predictions(const std::string& path, const std::vector<Prediction>& predictions);
std::vector<Prediction> load_predictions(const std::string& path);

struct InformSuccess {
  double inform = 0.0;   // percent
  double success = 0.0;  // percent
};

// A dialog informs a goal domain when some offered entity (tracked through
// <v.name>/<v.id> substitution records, or by surface match against the
// domain's records) satisfies the goal constraints; domains without a
// database pass by convention. It succeeds when additionally every requested
// slot's placeholder was produced. A dialog counts only if all its goal
// domains pass. Every turn must have a prediction.
InformSuccess inform_success(const std::vector<Dialog>& dialogs,
                             const std::vector<Prediction>& predictions,
                             const VenueDatabase& db);

// (Inform + Success) * 0.5 + BLEU.
double combined_score(double inform, double success, double bleu);

struct Diversity {
  double act_number = 0.0;   // mean per-turn |union of act types|
  double slot_number = 0.0;  // mean per-turn |union of slot names|
};

// Each turn must carry at least one action.
Diversity act_slot_diversity(const std::vector<std::vector<SystemAction>>& per_turn_actions);

struct Report {
  double inform = 0.0;
  double success = 0.0;
  double bleu = 0.0;
  double combined = 0.0;
  double act_number = 0.0;
  double slot_number = 0.0;
};

void save_report(const std::string& path, const Report& report);
Report load_report(const std::string& path);

// Plain-text table, one metric per row.
std::string report_table(const Report& report);

// Side-by-side raw-vs-augmented table.
std::string comparison_table(const Report& raw, const Report& augmented);

}  // namespace mada

#endif  // MADA_METRICS_H_
