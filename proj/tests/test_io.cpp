#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "privbeh/checker.hpp"
#include "privbeh/io.hpp"
#include "privbeh/query.hpp"
#include "privbeh/semantics.hpp"
#include "privbeh/synthesis.hpp"

#include "helpers.hpp"

using namespace privbeh;
using Catch::Matchers::ContainsSubstring;

namespace {

std::vector<DisclosureRecord> records_from(const std::string& text) {
  std::istringstream in(text);
  return load_records(in);
}

const std::string kHeader =
    "user_id,scenario_id,information_type,trust_source,recipient_role,decision\n";

std::string replace_first(std::string text, const std::string& from,
                          const std::string& to) {
  const auto at = text.find(from);
  REQUIRE(at != std::string::npos);
  return text.replace(at, from.size(), to);
}

Network load_from(const std::string& text) {
  std::istringstream in(text);
  return load_model(in);
}

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t count = 0;
  for (auto at = text.find(needle); at != std::string::npos;
       at = text.find(needle, at + needle.size())) {
    ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("record loading accepts well-formed rows") {
  const auto records = records_from(kHeader +
                                    "89,1,relationship,expert,family,1\n"
                                    "89,2,health,family,family,0\n");
  REQUIRE(records.size() == 2);
  CHECK(records[0].user_id == "89");
  CHECK(records[0].scenario_id == 1);
  CHECK(records[0].info_type == InformationType::Relationship);
  CHECK(records[0].trust_source == TrustSource::Expert);
  CHECK(records[0].recipient_role == RecipientRole::Family);
  CHECK(records[0].shared);
  CHECK_FALSE(records[1].shared);
}

TEST_CASE("record loading trims fields and skips blank lines") {
  const auto records = records_from(kHeader +
                                    "\n"
                                    "  89 , 3 ,\thealth , self , online , 1 \n"
                                    "   \n");
  REQUIRE(records.size() == 1);
  CHECK(records[0].user_id == "89");
  CHECK(records[0].scenario_id == 3);
  CHECK(records[0].trust_source == TrustSource::SelfSearch);
  CHECK(records[0].recipient_role == RecipientRole::OnlineService);
}

TEST_CASE("record loading rejects a wrong header") {
  CHECK_THROWS_MATCHES(records_from("id,decision\n89,1\n"), IoError,
                       Catch::Matchers::MessageMatches(
                           ContainsSubstring("unexpected header 'id,decision'")));
  CHECK_THROWS_AS(records_from(""), IoError);
}

TEST_CASE("record errors carry the row number") {
  // Row 1 is the header, so the first data row is row 2.
  CHECK_THROWS_MATCHES(
      records_from(kHeader + "89,1,health,self,online\n"), IoError,
      Catch::Matchers::MessageMatches(
          ContainsSubstring("row 2: expected 6 fields, got 5")));
  CHECK_THROWS_MATCHES(
      records_from(kHeader + "89,1,health,self,online,1\n"
                             "89,x,health,self,online,1\n"),
      IoError,
      Catch::Matchers::MessageMatches(
          ContainsSubstring("row 3: scenario_id 'x' is not an integer")));
  CHECK_THROWS_MATCHES(
      records_from(kHeader + ",1,health,self,online,1\n"), IoError,
      Catch::Matchers::MessageMatches(ContainsSubstring("row 2: empty user_id")));
  CHECK_THROWS_MATCHES(
      records_from(kHeader + "89,1,wealth,self,online,1\n"), IoError,
      Catch::Matchers::MessageMatches(ContainsSubstring("row 2:")));
  CHECK_THROWS_MATCHES(
      records_from(kHeader + "89,1,health,self,online,yes\n"), IoError,
      Catch::Matchers::MessageMatches(
          ContainsSubstring("row 2: decision 'yes' must be 1 or 0")));
}

TEST_CASE("blank lines still advance the row counter") {
  CHECK_THROWS_MATCHES(
      records_from(kHeader + "\n89,1,health,self,online,2\n"), IoError,
      Catch::Matchers::MessageMatches(ContainsSubstring("row 3:")));
}

TEST_CASE("conflicting repeats of a triple are rejected, consistent ones kept") {
  CHECK_THROWS_MATCHES(
      records_from(kHeader + "89,1,health,self,online,1\n"
                             "89,9,health,self,online,0\n"),
      IoError,
      Catch::Matchers::MessageMatches(ContainsSubstring(
          "row 3: user 89 repeats a scenario triple with a conflicting decision "
          "(first seen at row 2)")));

  // Same decision twice is fine, and both records survive.
  const auto records = records_from(kHeader + "89,1,health,self,online,1\n"
                                              "89,9,health,self,online,1\n");
  CHECK(records.size() == 2);

  // A different user may disagree about the same triple.
  const auto two_users = records_from(kHeader + "89,1,health,self,online,1\n"
                                                "90,1,health,self,online,0\n");
  CHECK(two_users.size() == 2);
}

TEST_CASE("the bundled survey file loads") {
  const auto records = load_records_file(testing::data_path("survey_records.csv"));
  CHECK(records.size() == 16);
  const auto for_user = [&records](const std::string& id) {
    return std::count_if(records.begin(), records.end(),
                         [&id](const DisclosureRecord& r) { return r.user_id == id; });
  };
  CHECK(for_user("89") == 8);
  CHECK(for_user("242") == 8);
}

TEST_CASE("file-level record errors name the path") {
  CHECK_THROWS_MATCHES(load_records_file("/nonexistent/records.csv"), IoError,
                       Catch::Matchers::MessageMatches(
                           ContainsSubstring("/nonexistent/records.csv")));
}

TEST_CASE("select bindings round-trip through their string form") {
  SelectBinding select{"day", 1, 7};
  CHECK(select_str(select) == "day : [1, 7]");
  const SelectBinding back = parse_select("day : [1, 7]");
  CHECK(back.var == "day");
  CHECK(back.lo == 1);
  CHECK(back.hi == 7);

  const SelectBinding negative = parse_select("k : [-3, -1]");
  CHECK(negative.lo == -3);
  CHECK(negative.hi == -1);
  CHECK(select_str(negative) == "k : [-3, -1]");

  CHECK_THROWS_AS(parse_select("day [1, 7]"), ParseError);
  CHECK_THROWS_AS(parse_select("day : [1 7]"), ParseError);
  CHECK_THROWS_MATCHES(parse_select("day : [1, 7] x"), ParseError,
                       Catch::Matchers::MessageMatches(
                           ContainsSubstring("unexpected 'x' after select range")));
}

TEST_CASE("model files round-trip and re-saving is byte-identical") {
  const Network network = testing::user89();
  const std::string first = model_to_string(network);
  CHECK_THAT(first, ContainsSubstring("\"format\": \"privbeh-model\""));
  CHECK_THAT(first, ContainsSubstring("\"version\": 1"));

  const Network reloaded = load_from(first);
  REQUIRE(reloaded.processes.size() == network.processes.size());
  CHECK(reloaded.channels.size() == network.channels.size());
  CHECK(model_to_string(reloaded) == first);

  // Round-tripping again stays on the same bytes.
  CHECK(model_to_string(load_from(model_to_string(reloaded))) == first);
}

TEST_CASE("guards, selects and updates survive the model file") {
  const Network network = testing::user242_guarded(1, 7, true);
  const std::string text = model_to_string(network);
  CHECK_THAT(text, ContainsSubstring("day : [1, 7]"));
  CHECK_THAT(text, ContainsSubstring("day >= 1 and day <= 5"));
  CHECK_THAT(text, ContainsSubstring("counter := counter + 1"));
  CHECK_THAT(text, ContainsSubstring("counter >= 2"));

  const Network reloaded = load_from(text);
  const Automaton& user = reloaded.processes[0];
  bool saw_select = false;
  bool saw_window = false;
  for (const Edge& edge : user.edges) {
    if (edge.select) {
      CHECK(select_str(*edge.select) == "day : [1, 7]");
      saw_select = true;
    }
    if (edge.guard.str() == "day >= 1 and day <= 5") saw_window = true;
  }
  CHECK(saw_select);
  CHECK(saw_window);
  REQUIRE(reloaded.variables.size() == 2);
  CHECK(reloaded.variables[0].name == "counter");
  CHECK(reloaded.variables[0].max == 2);
  CHECK(model_to_string(reloaded) == text);
}

TEST_CASE("model loading rejects broken files with precise messages") {
  const std::string good = model_to_string(testing::user89());

  CHECK_THROWS_MATCHES(load_from("not json at all"), IoError,
                       Catch::Matchers::MessageMatches(
                           ContainsSubstring("model file is not valid JSON")));
  CHECK_THROWS_MATCHES(
      load_from(replace_first(good, "privbeh-model", "something-else")), IoError,
      Catch::Matchers::MessageMatches(
          ContainsSubstring("not a privbeh model file")));
  CHECK_THROWS_MATCHES(
      load_from(replace_first(good, "\"version\": 1", "\"version\": 2")), IoError,
      Catch::Matchers::MessageMatches(
          ContainsSubstring("schema version mismatch: expected 1, got 2")));
}

TEST_CASE("model loading names the offending process and edge") {
  const std::string minimal = R"({
    "format": "privbeh-model",
    "version": 1,
    "channels": [],
    "variables": [],
    "processes": [
      {
        "name": "p",
        "aliases": [],
        "locations": [
          {"name": "A", "initial": true, "committed": false, "urgent": false,
           "aliases": []}
        ],
        "edges": [
          {"source": "A", "target": "A", "select": "", "guard": "",
           "sync": "", "update": ""}
        ]
      }
    ]
  })";
  CHECK(load_from(minimal).processes.size() == 1);

  CHECK_THROWS_MATCHES(
      load_from(replace_first(minimal, "\"target\": \"A\"", "\"target\": \"B\"")),
      IoError,
      Catch::Matchers::MessageMatches(
          ContainsSubstring("process 'p' edge #1: unknown location 'B'")));
  CHECK_THROWS_MATCHES(
      load_from(replace_first(minimal, "\"guard\": \"\"", "\"guard\": \"x <\"")),
      IoError,
      Catch::Matchers::MessageMatches(ContainsSubstring("process 'p' edge #1")));
  CHECK_THROWS_MATCHES(
      load_from(replace_first(minimal, "\"initial\": true", "\"initial\": false")),
      IoError,
      Catch::Matchers::MessageMatches(ContainsSubstring("invalid model:")));
  CHECK_THROWS_MATCHES(
      load_from(replace_first(minimal, "\"channels\": []",
                              "\"channels\": [{\"name\": \"c\", \"kind\": \"weird\"}]")),
      IoError,
      Catch::Matchers::MessageMatches(
          ContainsSubstring("channel 'c' has unknown kind 'weird'")));
  // A structurally wrong file (missing required keys) is still an IoError.
  CHECK_THROWS_MATCHES(
      load_from(replace_first(minimal, "\"name\": \"A\", ", "")), IoError,
      Catch::Matchers::MessageMatches(ContainsSubstring("malformed model file")));
}

TEST_CASE("file-level model errors name the path") {
  CHECK_THROWS_MATCHES(load_model_file("/nonexistent/u.model"), IoError,
                       Catch::Matchers::MessageMatches(
                           ContainsSubstring("/nonexistent/u.model")));
}

TEST_CASE("dot export renders the behavioral model") {
  const Network network = testing::user89();
  std::ostringstream out;
  export_dot(network.processes[0], out);
  const std::string dot = out.str();
  CHECK_THAT(dot, ContainsSubstring("digraph user {"));
  CHECK_THAT(dot, ContainsSubstring("\"__initial\" [shape=point, label=\"\"];"));
  CHECK_THAT(dot, ContainsSubstring("\"__initial\" -> \"Idle\";"));
  CHECK_THAT(dot, ContainsSubstring("\"Idle\" -> \"s1\" [label=\"health!\"];"));
  CHECK_THAT(dot, ContainsSubstring("\"Share\" -> \"Idle\" [label=\"done!\"];"));
  // Idle and Share are committed; the intermediates are plain.
  CHECK_THAT(dot, ContainsSubstring("\"Idle\" [peripheries=2];"));
  CHECK_THAT(dot, ContainsSubstring("\"Share\" [peripheries=2];"));
  CHECK_THAT(dot, ContainsSubstring("\"s1\";"));
  CHECK(count_of(dot, "peripheries") == 2);
}

TEST_CASE("dot export marks committed and urgent locations and joins labels") {
  Automaton automaton;
  automaton.name = "demo";
  Location start;
  start.name = "Start";
  start.initial = true;
  Location hot;
  hot.name = "Hot";
  hot.committed = true;
  Location soon;
  soon.name = "Soon";
  soon.urgent = true;
  automaton.locations = {start, hot, soon};
  Edge edge;
  edge.source = 0;
  edge.target = 1;
  edge.select = SelectBinding{"v", 1, 2};
  edge.guard = parse_guard("x < 1");
  edge.sync = SyncAction::parse("c!");
  edge.update = parse_update("x := x + 1");
  automaton.edges.push_back(edge);

  std::ostringstream out;
  export_dot(automaton, out);
  const std::string dot = out.str();
  CHECK_THAT(dot, ContainsSubstring("\"Hot\" [peripheries=2];"));
  CHECK_THAT(dot, ContainsSubstring("\"Soon\" [style=dashed];"));
  CHECK_THAT(dot, ContainsSubstring(
                      "[label=\"v : [1, 2] / x < 1 / c! / x := x + 1\"]"));
}

TEST_CASE("dot export of an empty-language model is a single node") {
  const std::vector<DisclosureRecord> nothing_shared = {
      {"7", 1, InformationType::Health, TrustSource::Family, RecipientRole::Family,
       false}};
  const SymbolMapping mapping;
  const Automaton automaton = dfa_to_behavioral(
      words_to_min_dfa(shared_words(nothing_shared, "7", mapping)), mapping, "user");
  std::ostringstream out;
  export_dot(automaton, out);
  const std::string dot = out.str();
  CHECK_THAT(dot, ContainsSubstring("\"Idle\";"));
  // Only the initial marker arrow; the automaton itself has no edges.
  CHECK(count_of(dot, "->") == 1);
}

TEST_CASE("dot files are written one per process") {
  const auto dir = std::filesystem::temp_directory_path() / "privbeh_dot_test";
  std::filesystem::remove_all(dir);
  export_dot_files(testing::user89(), dir.string());
  for (const std::string name :
       {"user", "information_type", "trust_source", "recipient_role"}) {
    CHECK(std::filesystem::exists(dir / (name + ".dot")));
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("describe_config lists processes and declared variables") {
  const Network plain = testing::user89();
  CHECK(describe_config(plain, initial_config(plain)) ==
        "user=Idle information_type=Information_Type trust_source=Trust_Source "
        "recipient_role=Recipient_Role");

  const Network guarded = testing::user242_guarded(1, 5, false);
  const std::string text = describe_config(guarded, initial_config(guarded));
  CHECK_THAT(text, ContainsSubstring("user=Idle"));
  CHECK_THAT(text, ContainsSubstring(" | counter=0 day=1"));
}

TEST_CASE("trace text renders steps, deadlocks and lassos") {
  const Network network = testing::user89();
  Trace empty;
  empty.initial = initial_config(network);
  std::ostringstream no_steps;
  write_trace_text(network, empty, no_steps);
  CHECK(no_steps.str() ==
        "initial: user=Idle information_type=Information_Type "
        "trust_source=Trust_Source recipient_role=Recipient_Role\n");

  const Verdict verdict = check(network, bind(parse_query("E<> user.Share"), network));
  REQUIRE(verdict.trace.has_value());
  std::ostringstream out;
  write_trace_text(network, *verdict.trace, out);
  const std::string text = out.str();
  CHECK_THAT(text, ContainsSubstring("initial: user=Idle"));
  CHECK_THAT(text, ContainsSubstring("step 1: "));
  CHECK_THAT(text, ContainsSubstring("state 3: user=Share"));
  CHECK(count_of(text, "\n") == 7);
  CHECK(count_of(text, "deadlocked") == 0);

  Trace flagged = *verdict.trace;
  flagged.deadlocked = true;
  std::ostringstream dead;
  write_trace_text(network, flagged, dead, 1);
  CHECK_THAT(dead.str(), ContainsSubstring(
                             "deadlocked: no enabled transitions from the final state\n"));
  CHECK_THAT(dead.str(), ContainsSubstring("cycle: the final state repeats state 1\n"));
}

TEST_CASE("trace json round-trips byte-for-byte and replays") {
  const Network network = testing::user89();
  const Trace trace = simulate(network, 11, 6);
  REQUIRE(trace.steps.size() == 6);

  std::ostringstream out;
  write_trace_json(network, trace, out);
  const std::string text = out.str();
  CHECK_THAT(text, ContainsSubstring("\"format\": \"privbeh-trace\""));

  std::istringstream in(text);
  const Trace reloaded = read_trace_json(network, in);
  CHECK(replay_ok(network, reloaded));
  std::ostringstream again;
  write_trace_json(network, reloaded, again);
  CHECK(again.str() == text);
}

TEST_CASE("trace json carries select values") {
  const Network network = testing::user242_guarded(1, 5, true);
  const Configuration initial = initial_config(network);
  const std::vector<Step> choices = successors(network, initial);
  const auto chosen =
      std::find_if(choices.begin(), choices.end(), [](const Step& step) {
        return step.initiator.select_value.has_value();
      });
  REQUIRE(chosen != choices.end());

  Trace trace;
  trace.initial = initial;
  trace.steps.push_back({*chosen, apply_step(network, initial, *chosen)});
  std::ostringstream out;
  write_trace_json(network, trace, out);
  CHECK_THAT(out.str(),
             ContainsSubstring("\"select\": " +
                               std::to_string(*chosen->initiator.select_value)));

  std::istringstream in(out.str());
  const Trace reloaded = read_trace_json(network, in);
  CHECK(reloaded == trace);
  CHECK(replay_ok(network, reloaded));
}

TEST_CASE("trace json rejects stale references") {
  const Network network = testing::user89();
  // The shortest witness starts with the user's first edge, so the payload is
  // guaranteed to mention edge index 0.
  const Verdict verdict = check(network, bind(parse_query("E<> user.Share"), network));
  REQUIRE(verdict.trace.has_value());
  std::ostringstream out;
  write_trace_json(network, *verdict.trace, out);
  const std::string text = out.str();

  const auto load_trace = [&network](const std::string& body) {
    std::istringstream in(body);
    return read_trace_json(network, in);
  };
  CHECK_THROWS_MATCHES(load_trace(replace_first(text, "privbeh-trace", "nope")),
                       IoError,
                       Catch::Matchers::MessageMatches(
                           ContainsSubstring("not a privbeh trace file")));
  CHECK_THROWS_MATCHES(load_trace(replace_first(text, "\"Idle\"", "\"Zzz\"")),
                       IoError,
                       Catch::Matchers::MessageMatches(
                           ContainsSubstring("trace names unknown location 'Zzz'")));
  CHECK_THROWS_MATCHES(
      load_trace(replace_first(text, "\"edge\": 0", "\"edge\": 99")), IoError,
      Catch::Matchers::MessageMatches(ContainsSubstring("past the end")));
  CHECK_THROWS_MATCHES(load_trace("{}"), IoError,
                       Catch::Matchers::MessageMatches(
                           ContainsSubstring("not a privbeh trace file")));
  CHECK_THROWS_AS(load_trace("["), IoError);
}

TEST_CASE("trace json rejects unknown variables") {
  const Network network = testing::user242_guarded(1, 5, true);
  const Trace trace = simulate(network, 3, 4);
  std::ostringstream out;
  write_trace_json(network, trace, out);
  std::istringstream in(replace_first(out.str(), "\"counter\"", "\"cnt\""));
  CHECK_THROWS_MATCHES(read_trace_json(network, in), IoError,
                       Catch::Matchers::MessageMatches(
                           ContainsSubstring("trace names unknown variable 'cnt'")));
}
