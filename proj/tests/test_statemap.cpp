#include "mada/statemap.h"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "helpers.h"

using namespace mada;
using mada::test::load_fixture;
using mada::test::make_temp_dir;

namespace {

// The canonical key of the shared d001/d004 first-turn state, written out by
// hand from the serialization rules.
const char* kHotelKey =
    "D=hotel|DB=3,1"
    "|AU=(hotel,inform,area)(hotel,inform,internet)(hotel,inform,parking)"
    "(hotel,inform,pricerange)(hotel,inform,stars)"
    "|B=hotel:area=north;internet=yes;parking=yes;pricerange=moderate;stars=4";

}  // namespace

TEST_CASE("statemap: canonical key serialization matches the hand oracle") {
  auto f = load_fixture();
  DialogState s = build_state(f.dialogs[0], 0, f.ontology, f.db);
  CHECK(s.domain == "hotel");
  CHECK(s.db == DbVector{3, 1});
  CHECK(canonical_key(s).text == kHotelKey);

  // Insertion order of the user acts cannot matter.
  DialogState shuffled = s;
  std::reverse(shuffled.user_acts.begin(), shuffled.user_acts.end());
  std::sort(shuffled.user_acts.begin(), shuffled.user_acts.end());
  CHECK(canonical_key(shuffled) == canonical_key(s));

  // One changed belief value changes the key.
  DialogState other = s;
  other.belief["hotel"]["area"] = "south";
  CHECK(canonical_key(other).text != canonical_key(s).text);
}

TEST_CASE("statemap: multi-domain key escapes structural characters") {
  auto f = load_fixture();
  DialogState s = build_state(f.dialogs[1], 2, f.ontology, f.db);
  CHECK(s.domain == "taxi");
  CHECK(canonical_key(s).text ==
        "D=taxi|DB=1,1"
        "|AU=(taxi,inform,destination)(taxi,inform,leave)"
        "|B=restaurant:area=centre;day=saturday;food=indian;name=curry garden;people=2;"
        "pricerange=expensive;time=18\\:00"
        "&taxi:destination=kings street;leave=20\\:00");
}

TEST_CASE("statemap: keys with escaped separators still parse and split") {
  DialogState s;
  s.domain = "hotel";
  s.db = DbVector{1, 1};
  s.belief = {{"hotel", {{"name", "a|b;c=d,e:f(g)"}}}};
  StateKey key = canonical_key(s);
  CHECK(key.text.find("a\\|b\\;c\\=d\\,e\\:f\\(g\\)") != std::string::npos);

  StateKey parsed = StateKey::parse(key.text);
  CHECK(parsed == key);
  CHECK(key.domain() == "hotel");
  CHECK(key.level_context(1) == key.text);
  CHECK(key.level_context(4) == "D=hotel");

  DialogState odd;
  odd.domain = "ho|tel";
  odd.db = DbVector{0, 0};
  StateKey odd_key = canonical_key(odd);
  CHECK(odd_key.domain() == "ho|tel");
  CHECK_NOTHROW(StateKey::parse(odd_key.text));
}

TEST_CASE("statemap: key parsing rejects malformed text") {
  CHECK_THROWS_AS(StateKey::parse(""), ValidationError);
  CHECK_THROWS_AS(StateKey::parse("D=hotel|DB=1,1|AU="), ValidationError);
  CHECK_THROWS_AS(StateKey::parse("X=hotel|DB=1,1|AU=|B="), ValidationError);
  CHECK_THROWS_AS(StateKey::parse("D=hotel|DB=1,1|AU=|B=|extra="), ValidationError);
  CHECK_THROWS_AS(StateKey{kHotelKey}.level_context(0), ValidationError);
  CHECK_THROWS_AS(StateKey{kHotelKey}.level_context(5), ValidationError);
}

TEST_CASE("statemap: level contexts are section sub-selections") {
  StateKey key{kHotelKey};
  CHECK(key.level_context(1) == std::string(kHotelKey));
  CHECK(key.level_context(2) ==
        "D=hotel|DB=3,1"
        "|AU=(hotel,inform,area)(hotel,inform,internet)(hotel,inform,parking)"
        "(hotel,inform,pricerange)(hotel,inform,stars)");
  CHECK(key.level_context(3) ==
        "D=hotel"
        "|AU=(hotel,inform,area)(hotel,inform,internet)(hotel,inform,parking)"
        "(hotel,inform,pricerange)(hotel,inform,stars)");
  CHECK(key.level_context(4) == "D=hotel");
}

TEST_CASE("statemap: states chain the active domain through the dialog") {
  auto f = load_fixture();

  std::vector<DialogState> d001 = build_states(f.dialogs[0], f.ontology, f.db);
  REQUIRE(d001.size() == 2);
  CHECK(d001[0].domain == "hotel");
  CHECK(d001[1].domain == "hotel");
  CHECK(d001[1].db == DbVector{1, 1});  // the named venue is the only match

  std::vector<DialogState> d002 = build_states(f.dialogs[1], f.ontology, f.db);
  CHECK(d002[0].domain == "restaurant");
  CHECK(d002[1].domain == "restaurant");
  CHECK(d002[2].domain == "taxi");

  std::vector<DialogState> d003 = build_states(f.dialogs[2], f.ontology, f.db);
  CHECK(d003[0].domain == "attraction");
  CHECK(d003[1].domain == "train");
  CHECK(d003[2].domain == "train");
  CHECK(d003[1].db == DbVector{1, 1});  // tr7075 alone fits the constraints

  CHECK_THROWS_AS(build_state(f.dialogs[0], 2, f.ontology, f.db), ValidationError);
  CHECK_THROWS_AS(build_state(f.dialogs[0], -1, f.ontology, f.db), ValidationError);
}

TEST_CASE("statemap: first-turn domain falls back to goal then ontology order") {
  auto f = load_fixture();

  Dialog bare;
  bare.id = "t1";
  bare.turns.emplace_back();
  std::vector<DialogState> no_goal = build_states(bare, f.ontology, f.db);
  CHECK(no_goal[0].domain == "restaurant");
  CHECK(no_goal[0].user_acts.empty());
  CHECK(no_goal[0].belief.empty());

  Dialog with_goal = bare;
  with_goal.goal["taxi"] = GoalDomain{};
  with_goal.goal["train"] = GoalDomain{};
  CHECK(build_states(with_goal, f.ontology, f.db)[0].domain == "train");

  // An empty-state key still has all four sections.
  StateKey key = canonical_key(no_goal[0]);
  CHECK(key.text == "D=restaurant|DB=3,1|AU=|B=");
  CHECK_NOTHROW(StateKey::parse(key.text));
}

TEST_CASE("statemap: map collects the one-to-many state of the fixture") {
  auto f = load_fixture();
  StateActionMap map = build_state_action_map(f.dialogs, f.ontology, f.db);

  // Nine turns, one shared state.
  CHECK(map.states.size() == 8);

  const std::vector<ActionOccurrence>* shared = map.find(kHotelKey);
  REQUIRE(shared != nullptr);
  REQUIRE(shared->size() == 2);
  CHECK((*shared)[0].action_span == "[hotel] [inform] choice [reqmore]");
  CHECK((*shared)[1].action_span == "[hotel] [recommend] price name [offerbook]");
  CHECK((*shared)[0].count == 1);
  CHECK((*shared)[1].count == 1);
  CHECK((*shared)[0].sources ==
        std::vector<std::pair<std::string, int>>{{"d004", 0}});
  CHECK((*shared)[1].sources ==
        std::vector<std::pair<std::string, int>>{{"d001", 0}});

  CHECK(map.find("D=hotel|DB=0,0|AU=|B=") == nullptr);

  int multi = 0;
  for (const auto& [key, actions] : map.states) {
    if (actions.size() > 1) ++multi;
  }
  CHECK(multi == 1);
}

TEST_CASE("statemap: every observed action is in its state's valid set") {
  auto f = load_fixture();
  StateActionMap map = build_state_action_map(f.dialogs, f.ontology, f.db);
  for (const Dialog& d : f.dialogs) {
    std::vector<DialogState> states = build_states(d, f.ontology, f.db);
    for (std::size_t t = 0; t < d.turns.size(); ++t) {
      std::string span =
          action_span_string(SystemAction(d.turns[t].sys_acts, f.ontology), f.ontology);
      const std::vector<ActionOccurrence>* actions = map.find(canonical_key(states[t]).text);
      REQUIRE(actions != nullptr);
      bool found = false;
      for (const ActionOccurrence& a : *actions) found = found || a.action_span == span;
      CHECK(found);
    }
  }
}

TEST_CASE("statemap: map building is order and job-count independent") {
  auto f = load_fixture();
  StateActionMap map = build_state_action_map(f.dialogs, f.ontology, f.db, 1);

  std::vector<Dialog> shuffled = f.dialogs;
  std::reverse(shuffled.begin(), shuffled.end());
  StateActionMap reversed = build_state_action_map(shuffled, f.ontology, f.db, 1);
  CHECK(reversed.states == map.states);

  StateActionMap parallel = build_state_action_map(f.dialogs, f.ontology, f.db, 4);
  CHECK(parallel.states == map.states);
}

TEST_CASE("statemap: the 9-to-1 fixture counts occurrences") {
  auto f = load_fixture("balance_corpus.json");
  StateActionMap map = build_state_action_map(f.dialogs, f.ontology, f.db);
  REQUIRE(map.states.size() == 1);

  const std::vector<ActionOccurrence>& actions = map.states.begin()->second;
  REQUIRE(actions.size() == 2);
  CHECK(actions[0].action_span == "[hotel] [inform] choice [request] stars");
  CHECK(actions[0].count == 9);
  CHECK(actions[0].sources.size() == 9);
  CHECK(actions[1].action_span == "[hotel] [recommend] name [offerbook]");
  CHECK(actions[1].count == 1);
  CHECK(actions[1].sources ==
        std::vector<std::pair<std::string, int>>{{"b010", 0}});
}

TEST_CASE("statemap: map save/load round-trips byte for byte") {
  auto f = load_fixture();
  StateActionMap map = build_state_action_map(f.dialogs, f.ontology, f.db);

  std::string dir = make_temp_dir();
  std::string path = dir + "/map.json";
  map.save(path);
  StateActionMap loaded = StateActionMap::load(path);
  CHECK(loaded.states == map.states);

  std::string path2 = dir + "/map2.json";
  loaded.save(path2);
  CHECK(read_text_file(path) == read_text_file(path2));

  CHECK_THROWS_AS(StateActionMap::load(dir + "/missing.json"), IoError);
}
