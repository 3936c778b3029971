#include "doctest.h"

#include <array>
#include <filesystem>
#include <fstream>
#include <random>

#include "reflen/commands.hpp"
#include "reflen/error.hpp"

using namespace reflen;

namespace {

std::filesystem::path fresh_dir() {
  std::random_device rd;
  auto dir = std::filesystem::temp_directory_path() / ("reflen-cmd-" + std::to_string(rd()));
  std::filesystem::remove_all(dir);
  return dir;
}

RunConfig config_for(const std::string& group, OutputFormat out = OutputFormat::Json) {
  RunConfig c;
  c.group = group;
  c.output = out;
  return c;
}

}  // namespace

TEST_CASE("parse helpers") {
  CHECK(parse_index_range("23-28") == std::vector<int>{23, 24, 25, 26, 27, 28});
  CHECK(parse_index_range("4,8,23..24") == std::vector<int>{4, 8, 23, 24});
  CHECK(parse_index_range("12") == std::vector<int>{12});
  CHECK_THROWS_AS(parse_index_range("3-5"), ParseError);
  CHECK_THROWS_AS(parse_index_range("28-23"), ParseError);
  CHECK_THROWS_AS(parse_index_range("x"), ParseError);
  CHECK_THROWS_AS(parse_index_range(""), ParseError);
  CHECK(parse_output_format("dot") == OutputFormat::Dot);
  CHECK_THROWS_AS(parse_output_format("xml"), ParseError);
  CHECK(parse_poset_kind("both") == PosetKind::Both);
  CHECK_THROWS_AS(parse_poset_kind("left"), ParseError);
}

TEST_CASE("analyze") {
  const auto trivial = nlohmann::json::parse(cmd_analyze(config_for("G(1,1,2)")).text);
  CHECK(trivial["order"] == 2);
  CHECK(trivial["coincidence"]["coincide"] == true);
  CHECK(trivial["coincidence"]["max_length"] == 1);

  const auto j = nlohmann::json::parse(cmd_analyze(config_for("G(4,2,2)")).text);
  CHECK(j["schema"] == "reflen.analysis/1");
  CHECK(j["coincidence"]["coincide"] == false);
  CHECK(j["counterexample"]["length"] == 3);
  CHECK(j["counterexample"]["codim"] == 2);
  const auto witness_class = j["counterexample"]["class"].get<std::size_t>();
  bool listed = false;
  for (const auto& w : j["witness_classes"]) listed |= w.get<std::size_t>() == witness_class;
  CHECK(listed);

  const auto g23 = nlohmann::json::parse(cmd_analyze(config_for("G23")).text);
  CHECK(g23["num_classes"] == 10);
  CHECK(g23["coincidence"]["length_ne_codim"] == 0);
  CHECK(g23["coincidence"]["nonreflection_atoms"] == 0);
  CHECK(g23["coincidence"]["max_length"] == 3);

  CHECK_THROWS_AS(cmd_analyze(config_for("G(4,3,2)")), ParseError);
  CHECK_THROWS_AS(cmd_analyze(config_for("G99")), ParseError);
  CHECK_THROWS_AS(cmd_analyze(config_for("G(4,2,2)", OutputFormat::Dot)), ParseError);
  auto small = config_for("G25");
  small.budget = 100;
  CHECK_THROWS_AS(cmd_analyze(small), BudgetExceeded);
}

TEST_CASE("analyze is deterministic and cache round trips") {
  const auto dir = fresh_dir();
  auto config = config_for("G25");
  config.cache_dir = dir;
  const auto first = cmd_analyze(config);
  REQUIRE(first.notes.size() == 1);
  CHECK(first.notes[0].starts_with("cache stored"));
  const auto second = cmd_analyze(config);
  REQUIRE(second.notes.size() == 1);
  CHECK(second.notes[0].starts_with("cache hit"));
  CHECK(first.text == second.text);
  CHECK(cmd_analyze(config_for("G25")).text == first.text);
  std::filesystem::remove_all(dir);
}

TEST_CASE("table1") {
  RunConfig config;
  const auto r = table1(parse_index_range("23-28"), config);
  REQUIRE(r.rows.size() == 6);
  CHECK(r.refused.empty());
  const std::vector<std::array<std::size_t, 5>> expected = {
      {10, 0, 0, 3, 3}, {12, 2, 2, 3, 4}, {24, 3, 1, 3, 4}, {48, 9, 5, 3, 4}, {34, 12, 12, 3, 5}, {25, 0, 0, 4, 4}};
  for (std::size_t i = 0; i < 6; ++i) {
    const auto& row = r.rows[i];
    CHECK(row.index == static_cast<int>(23 + i));
    CHECK(std::array<std::size_t, 5>{row.classes, row.length_ne_codim, row.nonreflection_atoms, row.dim,
                                     static_cast<std::size_t>(row.max_length)} == expected[i]);
  }
  const auto refused = cmd_table1({34}, config);
  CHECK(refused.exit_code == 3);
  REQUIRE(refused.notes.size() == 1);
  CHECK(refused.notes[0].find("G34 refused") != std::string::npos);
  CHECK(refused.text.find("refused") != std::string::npos);
}

TEST_CASE("poset command") {
  auto config = config_for("G(2,1,2)", OutputFormat::Dot);
  const auto dot = cmd_poset(config).text;
  std::size_t nodes = 0;
  for (std::size_t pos = 0; (pos = dot.find("label=", pos)) != std::string::npos; ++pos) ++nodes;
  CHECK(nodes == 5);
  config.output = OutputFormat::Json;
  const auto j = nlohmann::json::parse(cmd_poset(config).text);
  CHECK(j["classes"].size() == 5);
  config.output = OutputFormat::Table;
  config.poset = PosetKind::Both;
  const auto text = cmd_poset(config).text;
  CHECK(text.find("codimension order covers") != std::string::npos);
  CHECK(text.find("length order covers") != std::string::npos);
}

TEST_CASE("cohom command") {
  const auto g313 = nlohmann::json::parse(cmd_cohom(config_for("G(3,1,3)")).text);
  CHECK(g313["max_degree"] == 1);
  const auto g333 = nlohmann::json::parse(cmd_cohom(config_for("G(3,3,3)")).text);
  CHECK(g333["max_degree"] == 3);
  const auto g25 = nlohmann::json::parse(cmd_cohom(config_for("G25")).text);
  CHECK(g25["includes_degree_gt_one"] == true);

  auto symbolic = config_for("G(5,5,30)");
  symbolic.symbolic_atoms = true;
  const auto fam = nlohmann::json::parse(cmd_cohom(symbolic).text);
  CHECK(fam["max_degree"] == 5);
  symbolic.group = "G25";
  CHECK_THROWS_AS(cmd_cohom(symbolic), InvalidArgument);

  auto elements = config_for("G26");
  elements.generators = GeneratorMode::Element;
  elements.element_budget = 1000;
  CHECK_THROWS_AS(cmd_cohom(elements), BudgetExceeded);
}

TEST_CASE("explicit generator files") {
  const auto dir = fresh_dir();
  std::filesystem::create_directories(dir);
  const auto path = dir / "s3.json";
  {
    std::ofstream out(path);
    out << R"({"name": "S3", "generators": [[["0","1","0"],["1","0","0"],["0","0","1"]],
                                              [["1","0","0"],["0","0","1"],["0","1","0"]]]})";
  }
  const auto j = nlohmann::json::parse(cmd_analyze(config_for(path.string())).text);
  CHECK(j["group"] == "S3");
  CHECK(j["order"] == 6);
  CHECK(j["coincidence"]["coincide"] == true);
  CHECK_THROWS_AS(cmd_analyze(config_for((dir / "missing.json").string())), ParseError);
  std::filesystem::remove_all(dir);
}
