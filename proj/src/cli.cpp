#include "privbeh/cli.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

#include <CLI11.hpp>

#include "privbeh/checker.hpp"
#include "privbeh/errors.hpp"
#include "privbeh/io.hpp"
#include "privbeh/query.hpp"
#include "privbeh/semantics.hpp"
#include "privbeh/synthesis.hpp"

namespace privbeh::cli {

namespace {

std::string trimmed_copy(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t\r\n");
  return text.substr(begin, end - begin + 1);
}

std::string default_out_dir() {
  const char* env = std::getenv("PRIVBEH_OUT_DIR");
  return (env != nullptr && *env != '\0') ? env : ".";
}

std::string verdict_word(bool satisfied) {
  return satisfied ? "Satisfied" : "Not Satisfied";
}

int run_build(const std::string& records_path, const std::string& user_id,
              std::string model_path, const std::string& dot_dir, std::ostream& out) {
  const std::vector<DisclosureRecord> records = load_records_file(records_path);
  const Network network = synthesize_network(records, user_id);
  if (model_path.empty()) {
    model_path = default_out_dir() + "/user_" + user_id + ".model";
  }
  save_model_file(network, model_path);
  out << "wrote " << model_path << "\n";
  if (!dot_dir.empty()) {
    export_dot_files(network, dot_dir);
    for (const Automaton& process : network.processes) {
      out << "wrote " << dot_dir << "/" << process.name << ".dot\n";
    }
  }
  return 0;
}

int run_check(const std::string& model_path, const std::string& query_text,
              const std::string& trace_path, bool stats, std::ostream& out,
              std::ostream& err) {
  const Network network = load_model_file(model_path);
  const Verdict verdict = check(network, bind(parse_query(query_text), network));
  out << verdict_word(verdict.satisfied) << "\n";
  if (verdict.trace) {
    out << (verdict.satisfied ? "witness:" : "counterexample:") << "\n";
    write_trace_text(network, *verdict.trace, out, verdict.lasso_start);
  }
  if (stats) {
    out << "states explored: " << verdict.stats.states_explored << "\n";
    out << "transitions: " << verdict.stats.transitions << "\n";
  }
  if (!trace_path.empty()) {
    if (verdict.trace) {
      std::ofstream file(trace_path);
      if (!file) throw IoError("cannot open " + trace_path + " for writing");
      write_trace_json(network, *verdict.trace, file);
    } else {
      err << "note: the verdict carries no trace; " << trace_path << " was not written\n";
    }
  }
  return verdict.satisfied ? 0 : 1;
}

int run_suite(const std::string& model_path, const std::string& queries_path,
              std::ostream& out) {
  const Network network = load_model_file(model_path);
  std::ifstream file(queries_path);
  if (!file) throw IoError("cannot open " + queries_path);
  std::vector<std::string> lines;
  std::vector<Query> queries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(file, line)) {
    ++lineno;
    const std::string text = trimmed_copy(line);
    if (text.empty() || text.front() == '#') continue;
    try {
      queries.push_back(parse_query(text));
    } catch (const ParseError& parse_error) {
      throw IoError(queries_path + " line " + std::to_string(lineno) + ": " +
                    parse_error.what());
    }
    lines.push_back(text);
  }
  const std::vector<Verdict> verdicts = check_suite(network, queries);
  std::size_t satisfied_count = 0;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    if (verdicts[i].satisfied) ++satisfied_count;
    std::string cell = verdict_word(verdicts[i].satisfied);
    cell.resize(13, ' ');
    out << "#" << (i + 1) << "  " << cell << "  " << lines[i] << "\n";
  }
  out << verdicts.size() << (verdicts.size() == 1 ? " query: " : " queries: ")
      << satisfied_count << " satisfied, " << (verdicts.size() - satisfied_count)
      << " not satisfied\n";
  return satisfied_count == verdicts.size() ? 0 : 1;
}

int run_simulate_random(const Network& network, std::uint64_t seed, std::size_t steps,
                        std::ostream& out) {
  const Trace trace = simulate(network, seed, steps);
  write_trace_text(network, trace, out);
  return 0;
}

int run_simulate_interactive(const Network& network, std::istream& in,
                             std::ostream& out) {
  Configuration config = initial_config(network);
  out << "state: " << describe_config(network, config) << "\n";
  std::string line;
  for (;;) {
    out << "> " << std::flush;
    if (!std::getline(in, line)) break;
    std::istringstream words(line);
    std::string command;
    words >> command;
    if (command.empty()) continue;
    if (command == "quit") break;
    if (command == "reset") {
      config = initial_config(network);
      out << "state: " << describe_config(network, config) << "\n";
    } else if (command == "list") {
      const std::vector<std::string> choices = step_choices(network, config);
      if (choices.empty()) {
        out << "no enabled transitions\n";
        continue;
      }
      for (std::size_t i = 0; i < choices.size(); ++i) {
        out << "  [" << i << "] " << choices[i] << "\n";
      }
    } else if (command == "take") {
      const std::vector<Step> options = successors(network, config);
      if (options.empty()) {
        out << "no enabled transitions\n";
        continue;
      }
      std::size_t index = 0;
      if (!(words >> index) || index >= options.size()) {
        out << "invalid choice; `list` shows " << options.size()
            << (options.size() == 1 ? " option\n" : " options\n");
        continue;
      }
      config = apply_step(network, config, options[index]);
      out << "step: " << describe_step(network, options[index]) << "\n";
      out << "state: " << describe_config(network, config) << "\n";
    } else {
      out << "commands: list | take <i> | reset | quit\n";
    }
  }
  return 0;
}

int run_export(const std::string& model_path, std::string dot_dir, std::ostream& out) {
  const Network network = load_model_file(model_path);
  if (dot_dir.empty()) dot_dir = default_out_dir();
  export_dot_files(network, dot_dir);
  for (const Automaton& process : network.processes) {
    out << "wrote " << dot_dir << "/" << process.name << ".dot\n";
  }
  return 0;
}

int run_oracle(const std::string& records_path, const std::string& user_id,
               std::ostream& out) {
  const std::vector<DisclosureRecord> records = load_records_file(records_path);
  const Network network = synthesize_network(records, user_id);
  const Exploration exploration = explore(network);
  std::set<FactorTriple> shared;
  for (const DisclosureRecord& record : records_for_user(records, user_id)) {
    if (record.shared) shared.insert(record.triple());
  }
  // A user with no shared rows synthesizes to a lone Idle location; every
  // reachability query is then trivially unsatisfied.
  const bool has_share = network.processes.front().find_location("Share").has_value();
  std::size_t mismatches = 0;
  for (const InformationType info : kInformationTypes) {
    for (const TrustSource trust : kTrustSources) {
      for (const RecipientRole role : kRecipientRoles) {
        const bool expected = shared.count({info, trust, role}) != 0;
        bool actual = false;
        if (has_share) {
          const std::string text = "E<> (user.Share and information_type." +
                                   spoke_name(info) + " and trust_source." +
                                   spoke_name(trust) + " and recipient_role." +
                                   spoke_name(role) + ")";
          actual = check(network, exploration, bind(parse_query(text), network)).satisfied;
        }
        if (actual != expected) {
          ++mismatches;
          out << "mismatch: (" << token_of(info) << ", " << token_of(trust) << ", "
              << token_of(role) << "): records say "
              << (expected ? "shared" : "not shared") << ", model says "
              << verdict_word(actual) << "\n";
        }
      }
    }
  }
  out << "checked 48 triples for user " << user_id << ": " << mismatches
      << (mismatches == 1 ? " mismatch" : " mismatches") << "\n";
  return mismatches == 0 ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"privacy-disclosure behavior models: build, check, simulate, export"};
  app.name("privbeh");
  app.require_subcommand(1);

  std::string records_path;
  std::string build_user;
  std::string build_out;
  std::string build_dot;
  CLI::App* build = app.add_subcommand("build", "synthesize a model from disclosure records");
  build->add_option("--records", records_path, "disclosure-record CSV")->required();
  build->add_option("--user", build_user, "user id to model")->required();
  build->add_option("--out", build_out,
                    "model file to write (default $PRIVBEH_OUT_DIR/user_<id>.model)");
  build->add_option("--dot", build_dot, "also export one DOT file per process here");

  std::string check_model;
  std::string query_text;
  std::string trace_path;
  bool stats = false;
  CLI::App* check_cmd = app.add_subcommand("check", "decide one query against a model");
  check_cmd->add_option("--model", check_model, "model file")->required();
  check_cmd->add_option("--query", query_text, "query text, e.g. \"E<> user.Share\"")
      ->required();
  check_cmd->add_option("--trace", trace_path,
                        "write the witness/counterexample trace as JSON");
  check_cmd->add_flag("--stats", stats, "print states/transitions of the exploration");

  std::string suite_model;
  std::string queries_path;
  CLI::App* suite = app.add_subcommand("suite", "run a file of queries, one per line");
  suite->add_option("--model", suite_model, "model file")->required();
  suite->add_option("--queries", queries_path, "query file (# starts a comment)")
      ->required();

  std::string sim_model;
  std::uint64_t seed = 0;
  std::size_t steps = 50;
  bool interactive = false;
  CLI::App* sim = app.add_subcommand("simulate", "random walk or interactive stepping");
  sim->add_option("--model", sim_model, "model file")->required();
  CLI::Option* seed_opt = sim->add_option("--seed", seed, "random seed (default 0)");
  CLI::Option* steps_opt = sim->add_option("--steps", steps, "maximum steps (default 50)");
  CLI::Option* inter_opt =
      sim->add_flag("--interactive", interactive, "step REPL: list, take <i>, reset, quit");
  inter_opt->excludes(seed_opt);
  inter_opt->excludes(steps_opt);

  std::string export_model;
  std::string export_dir;
  CLI::App* export_cmd = app.add_subcommand("export", "write DOT files for a model");
  export_cmd->add_option("--model", export_model, "model file")->required();
  export_cmd->add_option("--dot", export_dir, "output directory (default $PRIVBEH_OUT_DIR)");

  std::string oracle_records;
  std::string oracle_user;
  CLI::App* oracle =
      app.add_subcommand("oracle", "brute-force all 48 factor triples against the records");
  oracle->add_option("--records", oracle_records, "disclosure-record CSV")->required();
  oracle->add_option("--user", oracle_user, "user id to cross-check")->required();

  try {
    // CLI11's vector overload consumes arguments back to front.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& parse_error) {
    const int code = app.exit(parse_error, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (build->parsed()) return run_build(records_path, build_user, build_out, build_dot, out);
    if (check_cmd->parsed())
      return run_check(check_model, query_text, trace_path, stats, out, err);
    if (suite->parsed()) return run_suite(suite_model, queries_path, out);
    if (sim->parsed()) {
      const Network network = load_model_file(sim_model);
      return interactive ? run_simulate_interactive(network, in, out)
                         : run_simulate_random(network, seed, steps, out);
    }
    if (export_cmd->parsed()) return run_export(export_model, export_dir, out);
    if (oracle->parsed()) return run_oracle(oracle_records, oracle_user, out);
  } catch (const Error& error) {
    err << "error: " << error.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace privbeh::cli
