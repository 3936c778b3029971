// Command implementations behind the reflen executable. Each returns the
// exact text written to stdout so runs can be compared byte for byte.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "reflen/cohom.hpp"
#include "reflen/matgroup.hpp"
#include "reflen/ordertheory.hpp"

namespace reflen {

enum class OutputFormat { Table, Json, Dot };

struct RunConfig {
  std::string group;
  std::uint64_t budget = kDefaultBudget;           // enumeration
  std::uint64_t element_budget = kElementBudget;   // element-level outputs
  std::optional<std::filesystem::path> cache_dir;
  OutputFormat output = OutputFormat::Table;
  PosetKind poset = PosetKind::Perp;
  GeneratorMode generators = GeneratorMode::Class;
  bool symbolic_atoms = false;                     // G(m,p,n) atom families without enumeration
};

/// Throws ParseError.
OutputFormat parse_output_format(const std::string& s);
PosetKind parse_poset_kind(const std::string& s);
/// "23-28", "23..28", "4,8,23-28".
std::vector<int> parse_index_range(const std::string& s);

/// Path of the cache file for a spec inside `dir`.
std::filesystem::path cache_path(const std::filesystem::path& dir, const GroupSpec& spec);

struct LoadedGroup {
  GroupTable table;
  bool cache_hit = false;
  std::optional<std::filesystem::path> cache_file;
};

/// Enumerates or loads from the cache directory, storing on a miss.
LoadedGroup load_group(const GroupSpec& spec, const std::optional<std::filesystem::path>& cache_dir);

struct Analysis {
  LoadedGroup group;
  CacTensor cac;
  OrderTables orders;
  CoincidenceReport report;
  LemmaReport lemmas;
};

/// Full class-level analysis. Throws InvariantViolation if any lemma check fails.
Analysis analyze(const GroupSpec& spec, const std::optional<std::filesystem::path>& cache_dir);

nlohmann::ordered_json analysis_json(const Analysis& a);

struct CommandOutput {
  std::string text;
  int exit_code = 0;
  std::vector<std::string> notes;  // for stderr: cache activity, refusals
};

CommandOutput cmd_analyze(const RunConfig& config);
CommandOutput cmd_table1(const std::vector<int>& indices, const RunConfig& config);
CommandOutput cmd_poset(const RunConfig& config);
CommandOutput cmd_cohom(const RunConfig& config);

struct Table1Row {
  int index = 0;
  std::size_t classes = 0;
  std::size_t length_ne_codim = 0;
  std::size_t nonreflection_atoms = 0;
  std::size_t dim = 0;
  int max_length = 0;
};

/// One row per index, or the refusal message when the group is over budget.
struct Table1Result {
  std::vector<Table1Row> rows;
  std::vector<std::pair<int, std::string>> refused;
};

Table1Result table1(const std::vector<int>& indices, const RunConfig& config);

}  // namespace reflen
