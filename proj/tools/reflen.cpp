#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "reflen/commands.hpp"
#include "reflen/error.hpp"

namespace {

int fail(int code, const std::string& kind, const std::string& message, bool json) {
  std::cerr << "reflen: " << message << '\n';
  if (json) {
    nlohmann::ordered_json j;
    j["schema"] = "reflen.error/1";
    j["kind"] = kind;
    j["message"] = message;
    std::cout << j.dump(2) << '\n';
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace reflen;

  CLI::App app{"reflen: length and codimension orders on finite complex reflection groups"};
  app.require_subcommand(0, 1);

  RunConfig config;
  std::string output = "table", poset = "perp", cache_dir, table1_range;
  bool elements = false;

  auto add_common = [&](CLI::App* cmd, bool with_group) {
    if (with_group) cmd->add_option("-g,--group", config.group, "G(m,p,n), G<k> or a JSON generator file")->required();
    cmd->add_option("--budget", config.budget, "maximum group order to enumerate")->check(CLI::PositiveNumber);
    cmd->add_option("--element-budget", config.element_budget, "maximum order for element-level output")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--cache-dir", cache_dir, "group table cache (default $REFLEN_CACHE_DIR)");
    cmd->add_option("-o,--output", output, "table, json or dot");
  };

  auto* analyze = app.add_subcommand("analyze", "lengths, codimensions, atoms and the coincidence report");
  add_common(analyze, true);

  auto* posets = app.add_subcommand("poset", "cover graph of the class orders");
  add_common(posets, true);
  posets->add_option("--poset", poset, "perp, ell or both");

  auto* cohom = app.add_subcommand("cohom", "volume-form generators tagged by codimension atoms");
  add_common(cohom, true);
  cohom->add_flag("--elements", elements, "one generator per atom element instead of per class");
  cohom->add_flag("--symbolic", config.symbolic_atoms, "G(m,p,n) atom families without enumeration");

  auto* t1 = app.add_subcommand("table1", "summary rows for exceptional groups");
  add_common(t1, false);
  t1->add_option("range", table1_range, "indices such as 23-28 or 4,8,23..28")->default_val("23-28");

  app.add_option("--table1", table1_range, "shorthand for the table1 subcommand");
  add_common(&app, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const bool json = output == "json";
  try {
    config.output = parse_output_format(output);
    config.poset = parse_poset_kind(poset);
    config.generators = elements ? GeneratorMode::Element : GeneratorMode::Class;
    if (!cache_dir.empty()) {
      config.cache_dir = cache_dir;
    } else if (const char* env = std::getenv("REFLEN_CACHE_DIR"); env && *env) {
      config.cache_dir = env;
    }

    CommandOutput out;
    if (*analyze) {
      out = cmd_analyze(config);
    } else if (*posets) {
      out = cmd_poset(config);
    } else if (*cohom) {
      out = cmd_cohom(config);
    } else if (*t1 || !table1_range.empty()) {
      out = cmd_table1(parse_index_range(table1_range), config);
    } else {
      std::cout << app.help();
      return 2;
    }
    for (const auto& note : out.notes) std::cerr << note << '\n';
    std::cout << out.text;
    return out.exit_code;
  } catch (const ParseError& e) {
    return fail(2, "parse", e.what(), json);
  } catch (const InvalidArgument& e) {
    return fail(2, "config", e.what(), json);
  } catch (const BudgetExceeded& e) {
    return fail(3, "budget", e.what(), json);
  } catch (const PosetViolation& e) {
    return fail(4, "poset", e.what(), json);
  } catch (const std::exception& e) {
    return fail(4, "invariant", e.what(), json);
  }
}
