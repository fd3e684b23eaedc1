#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "privbeh/automaton.hpp"
#include "privbeh/expr.hpp"
#include "privbeh/factors.hpp"

using namespace privbeh;

TEST_CASE("factor tokens round-trip") {
  for (const auto value : kInformationTypes) {
    CHECK(information_type_from_token(token_of(value)) == value);
  }
  for (const auto value : kTrustSources) {
    CHECK(trust_source_from_token(token_of(value)) == value);
  }
  for (const auto value : kRecipientRoles) {
    CHECK(recipient_role_from_token(token_of(value)) == value);
  }
  CHECK(token_of(TrustSource::SelfSearch) == "self");
  CHECK(token_of(RecipientRole::OnlineService) == "online");
  CHECK_THROWS_WITH(information_type_from_token("wealth"),
                    Catch::Matchers::ContainsSubstring("wealth"));
  CHECK_THROWS_AS(trust_source_from_token("Family"), IoError);  // tokens are lowercase
}

TEST_CASE("all_factor_triples enumerates 48 distinct combinations") {
  const auto triples = all_factor_triples();
  REQUIRE(triples.size() == 48);
  const std::set<FactorTriple> unique(triples.begin(), triples.end());
  CHECK(unique.size() == 48);
  CHECK(triples.front() ==
        FactorTriple{InformationType::Health, TrustSource::Family, RecipientRole::Family});
  CHECK(triples.back() == FactorTriple{InformationType::Relationship,
                                       TrustSource::SelfSearch,
                                       RecipientRole::OnlineService});
}

TEST_CASE("guard evaluation over valuations") {
  const GuardExpr day_window = parse_guard("1 <= day and day <= 5");
  Valuation valuation;
  valuation.set("day", 3);
  CHECK(eval_guard(day_window, valuation));
  valuation.set("day", 6);
  CHECK_FALSE(eval_guard(day_window, valuation));
  valuation.set("day", 0);
  CHECK_FALSE(eval_guard(day_window, valuation));

  const GuardExpr cap = parse_guard("counter < 2");
  Valuation counters;
  counters.set("counter", 1);
  CHECK(eval_guard(cap, counters));
  counters.set("counter", 2);
  CHECK_FALSE(eval_guard(cap, counters));

  CHECK(eval_guard(GuardExpr::literal_true(), Valuation{}));
  CHECK_THROWS_AS(eval_guard(cap, Valuation{}), ModelError);  // counter unbound
}

TEST_CASE("guard parsing: precedence, constant-first atoms, round-trip") {
  const GuardExpr guard = parse_guard("a < 1 or b < 2 and not c == 3");
  REQUIRE(guard.kind() == GuardExpr::Kind::Or);
  CHECK(guard.lhs().kind() == GuardExpr::Kind::Cmp);
  REQUIRE(guard.rhs().kind() == GuardExpr::Kind::And);
  CHECK(guard.rhs().rhs().kind() == GuardExpr::Kind::Not);

  // Constant-first comparisons are stored mirrored.
  CHECK(parse_guard("1 <= day").str() == "day >= 1");
  CHECK(parse_guard("3 > x").str() == "x < 3");

  // Keywords are case-insensitive, identifiers are not.
  CHECK(parse_guard("x < 1 AND y < 2").kind() == GuardExpr::Kind::And);
  CHECK(parse_guard("TRUE").is_literal_true());
  CHECK(parse_guard("").is_literal_true());

  for (const char* text : {"1 <= day and day <= 5", "counter < 2",
                           "not (a == 1 or b != 2)", "x >= -3"}) {
    const GuardExpr parsed = parse_guard(text);
    CHECK(parse_guard(parsed.str()).structurally_equal(parsed));
  }

  CHECK_THROWS_AS(parse_guard("day <"), ParseError);
  CHECK_THROWS_AS(parse_guard("day"), ParseError);
  CHECK_THROWS_AS(parse_guard("x < 1 x"), ParseError);
  try {
    parse_guard("x < ?");
    FAIL("expected ParseError");
  } catch (const ParseError& error) {
    CHECK(error.position == 4);
  }
}

TEST_CASE("updates apply left to right and respect declared bounds") {
  const std::vector<VariableDecl> decls = {{"counter", 0, 2, 0}, {"x", 0, 10, 0},
                                           {"y", 0, 10, 0}};

  const UpdateStmt bump = parse_update("counter := counter + 1");
  Valuation valuation;
  valuation.set("counter", 1);
  CHECK(apply_update(bump, valuation, decls).get("counter") == 2);

  valuation.set("counter", 2);
  try {
    apply_update(bump, valuation, decls);
    FAIL("expected BoundsError");
  } catch (const BoundsError& error) {
    CHECK(error.variable == "counter");
    CHECK(error.value == 3);
    CHECK(error.min == 0);
    CHECK(error.max == 2);
  }

  // Later assignments see earlier ones.
  Valuation start;
  start.set("x", 0);
  start.set("y", 5);
  const Valuation result = apply_update(parse_update("x := x + 1, y := x"), start, decls);
  CHECK(result.get("x") == 1);
  CHECK(result.get("y") == 1);

  const UpdateStmt multi = parse_update("x := 2 * x + 1, y := x - 1");
  CHECK(parse_update(multi.str()) == multi);
  CHECK(parse_update("").empty());
  CHECK_THROWS_AS(parse_update("x := "), ParseError);
  CHECK_THROWS_AS(parse_update("x = 1"), ParseError);
}

TEST_CASE("sync action text forms") {
  CHECK(SyncAction::emit("health").str() == "health!");
  CHECK(SyncAction::receive("done").str() == "done?");
  CHECK(SyncAction::none().str().empty());
  CHECK(SyncAction::parse("health!") == SyncAction::emit("health"));
  CHECK(SyncAction::parse("done?") == SyncAction::receive("done"));
  CHECK(SyncAction::parse("") == SyncAction::none());
  CHECK_THROWS_AS(SyncAction::parse("health"), ModelError);
  CHECK_THROWS_AS(SyncAction::parse("!"), ModelError);
}

namespace {

Automaton two_state(const std::string& name) {
  Automaton automaton;
  automaton.name = name;
  Location a;
  a.name = "A";
  a.initial = true;
  Location b;
  b.name = "B";
  automaton.locations = {a, b};
  Edge edge;
  edge.source = 0;
  edge.target = 1;
  automaton.edges = {edge};
  return automaton;
}

}  // namespace

TEST_CASE("automaton validation") {
  CHECK_NOTHROW(two_state("p").validate());

  Automaton duplicate = two_state("p");
  duplicate.locations[1].name = "A";
  CHECK_THROWS_WITH(duplicate.validate(), Catch::Matchers::ContainsSubstring("A"));

  Automaton two_initial = two_state("p");
  two_initial.locations[1].initial = true;
  CHECK_THROWS_AS(two_initial.validate(), ModelError);

  Automaton no_initial = two_state("p");
  no_initial.locations[0].initial = false;
  CHECK_THROWS_AS(no_initial.validate(), ModelError);

  Automaton both_flags = two_state("p");
  both_flags.locations[0].committed = true;
  both_flags.locations[0].urgent = true;
  CHECK_THROWS_AS(both_flags.validate(), ModelError);

  Automaton dangling = two_state("p");
  dangling.edges[0].target = 7;
  CHECK_THROWS_AS(dangling.validate(), ModelError);

  Automaton empty_select = two_state("p");
  empty_select.edges[0].select = SelectBinding{"v", 5, 1};
  CHECK_THROWS_AS(empty_select.validate(), ModelError);
}

TEST_CASE("location resolution is case-insensitive and alias-aware") {
  Automaton automaton = two_state("user");
  automaton.locations[1].aliases = {"Online"};

  CHECK(automaton.find_location("A") == 0);
  CHECK_FALSE(automaton.find_location("a").has_value());  // exact lookup
  CHECK(automaton.resolve_location("a") == 0);
  CHECK(automaton.resolve_location("online") == 1);
  CHECK_FALSE(automaton.resolve_location("C").has_value());

  Automaton clash = automaton;
  clash.locations[0].aliases = {"b"};  // collides with location B modulo case
  CHECK_THROWS_AS(clash.resolve_location("b"), ModelError);
}

TEST_CASE("network validation") {
  Network network;
  network.processes = {two_state("p"), two_state("q")};
  network.processes[0].edges[0].sync = SyncAction::emit("ping");
  network.processes[1].edges[0].sync = SyncAction::receive("ping");
  network.channels = {{"ping", ChannelKind::Binary}};
  CHECK_NOTHROW(network.validate());

  Network unknown_channel = network;
  unknown_channel.channels.clear();
  CHECK_THROWS_WITH(unknown_channel.validate(),
                    Catch::Matchers::ContainsSubstring("ping"));

  Network duplicate_process = network;
  duplicate_process.processes[1].name = "p";
  CHECK_THROWS_AS(duplicate_process.validate(), ModelError);

  Network alias_clash = network;
  alias_clash.processes[1].aliases = {"p"};
  CHECK_THROWS_AS(alias_clash.validate(), ModelError);

  Network unknown_variable = network;
  unknown_variable.processes[0].edges[0].guard = parse_guard("day < 5");
  CHECK_THROWS_WITH(unknown_variable.validate(),
                    Catch::Matchers::ContainsSubstring("day"));

  Network bad_init = network;
  bad_init.variables = {{"day", 1, 7, 9}};
  CHECK_THROWS_AS(bad_init.validate(), ModelError);

  Network bad_select = network;
  bad_select.variables = {{"day", 1, 7, 1}};
  bad_select.processes[0].edges[0].select = SelectBinding{"day", 0, 7};  // below min
  CHECK_THROWS_AS(bad_select.validate(), ModelError);

  Network ok_select = network;
  ok_select.variables = {{"day", 1, 7, 1}};
  ok_select.processes[0].edges[0].select = SelectBinding{"day", 2, 5};
  CHECK_NOTHROW(ok_select.validate());

  CHECK(network.initial_valuation() == Valuation{});
  Network with_vars = network;
  with_vars.variables = {{"counter", 0, 2, 0}, {"day", 1, 7, 1}};
  const Valuation initial = with_vars.initial_valuation();
  CHECK(initial.get("counter") == 0);
  CHECK(initial.get("day") == 1);
}
