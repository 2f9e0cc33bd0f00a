// ultra: centers of distances of finite ultrametric spaces.
//
// Exit codes: 0 success, 1 domain error (bad mathematics, failed validation),
// 2 structural error (unreadable or malformed input, usage errors),
// 3 internal invariant breach (a bug; please report the dump).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "ultra/center.hpp"
#include "ultra/constructions.hpp"
#include "ultra/errors.hpp"
#include "ultra/explore.hpp"
#include "ultra/io.hpp"
#include "ultra/partition.hpp"

namespace {

using namespace ultra;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw StructuralError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw StructuralError("cannot write '" + path + "'");
  file << text;
}

std::size_t default_cap() {
  if (const char* env = std::getenv("ULTRA_ENUM_CAP")) {
    const long value = std::strtol(env, nullptr, 10);
    if (value >= 1) return static_cast<std::size_t>(value);
  }
  return 9;
}

UltrametricSpace load_space(const std::string& path) {
  return UltrametricSpace::create(parse_space_auto(read_input(path)));
}

std::vector<Rational> parse_value_list(const std::string& csv) {
  std::vector<Rational> values;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) values.push_back(Rational::parse(item));
  }
  return values;
}

struct CliState {
  std::string input = "-";
  std::string output;
  std::string format;
  std::size_t cap = default_cap();
  unsigned workers = 0;
  bool dot = false;
  std::string spec_text;
  std::size_t enum_n = 0;
  std::size_t n_max = 0;
  int conjecture_id = 0;
  unsigned level = 2;
  unsigned alphabet = 4;
  std::string set_csv;
  std::uint64_t seed = 42;
  std::size_t count = 200;
  std::size_t max_n = 32;

  CLI::App* validate = nullptr;
  CLI::App* center = nullptr;
  CLI::App* partition = nullptr;
  CLI::App* tree = nullptr;
  CLI::App* realize = nullptr;
  CLI::App* generate = nullptr;
  CLI::App* enumerate = nullptr;
  CLI::App* bound_check = nullptr;
  CLI::App* conjecture = nullptr;
  CLI::App* property_test = nullptr;
};

void register_cli(CLI::App& app, CliState& state) {
  const auto io_options = [&](CLI::App* cmd, const char* input_help,
                              std::vector<std::string> formats) {
    cmd->add_option("input,--input,-i", state.input, input_help);
    cmd->add_option("--output,-o", state.output, "write here instead of stdout");
    const std::string help = "one of: " + CLI::detail::join(formats, ", ") +
                             " (default " + formats.front() + ")";
    cmd->add_option("--format,-f", state.format, help)
        ->check(CLI::IsMember(std::move(formats)));
  };

  state.validate = app.add_subcommand("validate", "check the ultrametric axioms of a space file");
  io_options(state.validate, "space file, JSON or CSV ('-' = stdin)", {"text", "json"});

  state.center = app.add_subcommand("center", "compute C(X) by all three algorithms");
  io_options(state.center, "space file", {"text", "json"});

  state.partition = app.add_subcommand("partition", "diametrical partition of a space");
  io_options(state.partition, "space file", {"json", "dot", "text"});

  state.tree = app.add_subcommand("tree", "representing tree of a space");
  io_options(state.tree, "space file", {"json", "dot"});
  state.tree->add_flag("--dot", state.dot, "shorthand for --format dot");

  state.realize = app.add_subcommand("realize", "space represented by a valid tree file");
  io_options(state.realize, "tree JSON file", {"json", "csv"});

  state.generate = app.add_subcommand("generate", "build a space from a construction spec");
  state.generate->add_option("spec", state.spec_text, "construction spec JSON string");
  state.generate->add_option("--input,-i", state.input, "construction spec file");
  state.generate->add_option("--output,-o", state.output, "write here instead of stdout");
  state.generate->add_option("--format,-f", state.format, "one of: json, csv (default json)")
      ->check(CLI::IsMember({"json", "csv"}));

  state.enumerate = app.add_subcommand("enumerate", "all n-point spaces up to weak similarity");
  state.enumerate->add_option("n,--n", state.enum_n, "point count")->required();
  state.enumerate->add_option("--cap", state.cap, "enumeration cap (env ULTRA_ENUM_CAP, default 9)");
  state.enumerate->add_option("--workers", state.workers, "worker threads (0 = hardware)");
  state.enumerate->add_option("--output,-o", state.output, "write here instead of stdout");
  state.enumerate->add_option("--format,-f", state.format, "one of: jsonl, text (default jsonl)")
      ->check(CLI::IsMember({"jsonl", "text"}));

  state.bound_check = app.add_subcommand("bound-check", "max |C| table for n = 1..n_max");
  state.bound_check->add_option("n_max,--n-max", state.n_max, "largest point count")->required();
  state.bound_check->add_option("--cap", state.cap, "enumeration cap");
  state.bound_check->add_option("--workers", state.workers, "worker threads");
  state.bound_check->add_option("--output,-o", state.output, "write here instead of stdout");
  state.bound_check->add_option("--format,-f", state.format, "one of: text, json (default text)")
      ->check(CLI::IsMember({"text", "json"}));

  state.conjecture = app.add_subcommand("conjecture", "evidence harness for the three conjectures");
  state.conjecture->add_option("id,--id", state.conjecture_id, "conjecture number: 1, 2 or 3")
      ->required();
  state.conjecture->add_option("--l", state.level, "spaces have 2^l points (default 2)");
  state.conjecture->add_option("--alphabet", state.alphabet,
                               "label alphabet size for conjecture 2 (default 4)");
  state.conjecture->add_option("--set", state.set_csv,
                               "comma-separated target set for conjecture 3, e.g. 0,1,2");
  state.conjecture->add_option("--cap", state.cap, "enumeration cap");
  state.conjecture->add_option("--workers", state.workers, "worker threads");
  state.conjecture->add_option("--output,-o", state.output, "write here instead of stdout");
  state.conjecture->add_option("--format,-f", state.format, "one of: text, json (default text)")
      ->check(CLI::IsMember({"text", "json"}));

  state.property_test =
      app.add_subcommand("property-test", "randomized self-check of the library invariants");
  state.property_test->add_option("--seed", state.seed, "RNG seed (default 42)");
  state.property_test->add_option("--count", state.count, "number of random spaces (default 200)");
  state.property_test->add_option("--max-n", state.max_n, "largest random space (default 32)");
  state.property_test->add_option("--output,-o", state.output, "write here instead of stdout");

  app.require_subcommand(1);
}

int run_validate(const CliState& state) {
  const SpaceData data = parse_space_auto(read_input(state.input));
  const SpaceValidation report = validate_space(data);
  write_output(state.output, state.format == "json" ? validation_to_json(report)
                                                    : validation_to_text(report));
  return report.valid ? 0 : 1;
}

int run_center(const CliState& state) {
  const auto space = load_space(state.input);
  const CenterReport report = center_report(space);
  const DistanceSet brute = center_bruteforce(space);
  const DistanceSet recursive = center_recursive(space);
  const bool tree_applicable = space.size() >= 2;
  const DistanceSet tree =
      tree_applicable ? center_from_tree(build_representing_tree(space)) : brute;
  if (brute != recursive || brute != tree || brute != report.center) {
    throw InternalError("center algorithms disagree: bruteforce " + brute.str() + ", recursive " +
                        recursive.str() + ", tree " + tree.str());
  }
  if (state.format == "json") {
    write_output(state.output, center_report_to_json(report));
    return 0;
  }
  std::ostringstream text;
  text << "C = " << report.center.str() << "\n";
  text << "bruteforce: " << brute.str() << "\n";
  text << "recursive:  " << recursive.str() << "\n";
  if (tree_applicable) {
    text << "tree:       " << tree.str() << "\n";
    text << "all three algorithms agree\n";
  } else {
    text << "tree:       (not defined for a one-point space)\n";
    text << "both applicable algorithms agree\n";
  }
  text << "|C| = " << report.center.size() << ", n = " << report.n
       << ", bound 1 + floor(log2 n) = " << report.bound << "\n";
  write_output(state.output, text.str());
  return 0;
}

int run_partition(const CliState& state) {
  const auto space = load_space(state.input);
  const Partition partition = diametrical_partition(space);
  if (state.format == "dot") {
    if (space.size() > 128) {
      throw DomainError("the diametrical graph has quadratically many edges; refusing n > 128");
    }
    write_output(state.output, diametrical_graph_to_dot(space, partition));
  } else if (state.format == "text") {
    std::ostringstream text;
    text << "separation: " << partition.separation.str() << "\n";
    for (const auto& part : partition.parts) {
      text << "part:";
      for (std::size_t p : part) text << " " << space.point(p);
      text << "\n";
    }
    write_output(state.output, text.str());
  } else {
    write_output(state.output, partition_to_json(space, partition));
  }
  return 0;
}

int run_tree(const CliState& state) {
  const auto space = load_space(state.input);
  const RepresentingTree tree = build_representing_tree(space);
  if (state.dot || state.format == "dot") {
    write_output(state.output, tree_to_dot(tree.skeleton()));
  } else {
    write_output(state.output, tree_to_json(tree));
  }
  return 0;
}

int run_realize(const CliState& state) {
  const ParsedTree parsed = parse_tree_json(read_input(state.input));
  UltrametricSpace space = realize_space(parsed.tree);
  if (parsed.declared_points) space = reorder_points(space, *parsed.declared_points);
  write_output(state.output,
               state.format == "csv" ? space_to_csv(space) : space_to_json(space));
  return 0;
}

int run_generate(const CliState& state) {
  if (!state.spec_text.empty() && state.input != "-") {
    throw StructuralError("give the construction spec either inline or via --input, not both");
  }
  const std::string text = state.spec_text.empty() ? read_input(state.input) : state.spec_text;
  const ConstructionSpec spec = parse_construction_spec(text);
  const UltrametricSpace space = build(spec);
  write_output(state.output,
               state.format == "csv" ? space_to_csv(space) : space_to_json(space));
  return 0;
}

int run_enumerate(const CliState& state) {
  const EnumerationOptions options{state.cap, state.workers};
  const auto classes = enumerate_classes(state.enum_n, options);
  std::ostringstream text;
  if (state.format == "text") {
    text << classes.size() << " classes of " << state.enum_n << "-point spaces\n";
    for (const auto& cls : classes) text << "|C| = " << cls.center_size << "  " << cls.key << "\n";
  } else {
    for (const auto& cls : classes) text << enumeration_class_to_json_line(cls);
  }
  write_output(state.output, text.str());
  return 0;
}

int run_bound_check(const CliState& state) {
  const EnumerationOptions options{state.cap, state.workers};
  const BoundTable table = max_center_table(state.n_max, options);
  write_output(state.output, state.format == "json" ? bound_table_to_json(table)
                                                    : bound_table_to_text(table));
  return 0;
}

int run_conjecture(const CliState& state) {
  const EnumerationOptions options{state.cap, state.workers};
  ConjectureReport report;
  switch (state.conjecture_id) {
    case 1: report = check_conjecture_1(state.level, options); break;
    case 2: report = check_conjecture_2(state.level, state.alphabet, options); break;
    case 3:
      if (state.set_csv.empty()) throw StructuralError("conjecture 3 needs --set");
      report = check_conjecture_3(DistanceSet::of(parse_value_list(state.set_csv)));
      break;
    default: throw StructuralError("conjecture id must be 1, 2 or 3");
  }
  write_output(state.output, state.format == "json" ? conjecture_report_to_json(report)
                                                    : conjecture_report_to_text(report));
  return 0;
}

int run_property_test(const CliState& state) {
  std::mt19937_64 rng(state.seed);
  std::size_t ball_probes = 0;
  for (std::size_t round = 0; round < state.count; ++round) {
    const auto space = random_space(rng, state.max_n);
    const CenterReport report = center_report(space);  // asserts every bound
    const DistanceSet brute = center_bruteforce(space);
    if (brute != center_recursive(space) ||
        brute != center_from_tree(build_representing_tree(space)) || brute != report.center) {
      throw InternalError("center algorithms disagree on a random space (seed " +
                          std::to_string(state.seed) + ", round " + std::to_string(round) + ")");
    }
    const Partition partition = diametrical_partition(space);
    if (!is_complete_multipartite_certificate(space, partition.parts)) {
      throw InternalError("diametrical partition failed its certificate (seed " +
                          std::to_string(state.seed) + ")");
    }
    const auto grown = add_point(space);
    if (center_bruteforce(grown) != brute || grown.size() != space.size() + 1) {
      throw InternalError("add_point changed the center (seed " + std::to_string(state.seed) +
                          ")");
    }
    const auto ball = open_ball(space, 0, partition.separation);
    for (std::size_t member : ball) {
      if (open_ball(space, member, partition.separation) != ball) {
        throw InternalError("open-ball center invariance failed (seed " +
                            std::to_string(state.seed) + ")");
      }
      ++ball_probes;
    }
  }
  std::ostringstream text;
  text << "ok: " << state.count << " random spaces (seed " << state.seed << ", max n "
       << state.max_n << ")\n"
       << "checked: triple agreement, report bounds, partition certificate, "
          "add_point preservation, "
       << ball_probes << " ball-invariance probes\n";
  write_output(state.output, text.str());
  return 0;
}

int dispatch(const CliState& state) {
  if (state.validate->parsed()) return run_validate(state);
  if (state.center->parsed()) return run_center(state);
  if (state.partition->parsed()) return run_partition(state);
  if (state.tree->parsed()) return run_tree(state);
  if (state.realize->parsed()) return run_realize(state);
  if (state.generate->parsed()) return run_generate(state);
  if (state.enumerate->parsed()) return run_enumerate(state);
  if (state.bound_check->parsed()) return run_bound_check(state);
  if (state.conjecture->parsed()) return run_conjecture(state);
  if (state.property_test->parsed()) return run_property_test(state);
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"centers of distances of finite ultrametric spaces"};
  CliState state;
  register_cli(app, state);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? 0 : 2;  // bad usage is a structural failure
  }

  try {
    return dispatch(state);
  } catch (const InternalError& error) {
    std::cerr << "internal invariant breach (this is a bug, please report it):\n  "
              << error.what() << "\n";
    return 3;
  } catch (const StructuralError& error) {
    std::cerr << "structural error: " << error.what() << "\n";
    return 2;
  } catch (const ResourceError& error) {
    std::cerr << "resource error: " << error.what() << "\n";
    return 1;
  } catch (const DomainError& error) {
    std::cerr << "domain error: " << error.what() << "\n";
    return 1;
  } catch (const std::exception& error) {
    std::cerr << "unexpected error (this is a bug, please report it): " << error.what() << "\n";
    return 3;
  }
}
