#include <map>
#include <numeric>
#include <mutex>
#include <sstream>

#include "reflen/error.hpp"
#include "reflen/matgroup.hpp"

namespace reflen {

// Defined in the file generated from data/exceptional_groups.txt.
extern const char* const kExceptionalDataText;

namespace {

struct KnownGroup {
  int dim;
  std::uint64_t order;
};

const std::map<int, KnownGroup>& known_groups() {
  static const std::map<int, KnownGroup> table = {
      {4, {2, 24}},       {5, {2, 72}},        {6, {2, 48}},          {7, {2, 144}},       {8, {2, 96}},
      {9, {2, 192}},      {10, {2, 288}},      {11, {2, 576}},        {12, {2, 48}},       {13, {2, 96}},
      {14, {2, 144}},     {15, {2, 288}},      {16, {2, 600}},        {17, {2, 1200}},     {18, {2, 1800}},
      {19, {2, 3600}},    {20, {2, 360}},      {21, {2, 720}},        {22, {2, 240}},      {23, {3, 120}},
      {24, {3, 336}},     {25, {3, 648}},      {26, {3, 1296}},       {27, {3, 2160}},     {28, {4, 1152}},
      {29, {4, 7680}},    {30, {4, 14400}},    {31, {4, 46080}},      {32, {4, 155520}},   {33, {5, 51840}},
      {34, {6, 39191040}}, {35, {6, 51840}},   {36, {7, 2903040}},    {37, {8, 696729600}},
  };
  return table;
}

struct ParsedData {
  std::string version;
  std::map<int, std::vector<CycloMatrix>> groups;
};

ParsedData parse_data(const std::string& text) {
  ParsedData out;
  std::istringstream in(text);
  std::string tok;
  int current = -1;
  std::size_t dim = 0;
  auto fail = [](const std::string& why) { throw InvariantViolation("embedded exceptional data: " + why); };
  while (in >> tok) {
    if (tok[0] == '#') {
      std::getline(in, tok);
      continue;
    }
    if (tok == "version") {
      in >> out.version;
    } else if (tok == "group") {
      in >> current >> tok >> dim;
      if (tok != "dim" || !known_groups().contains(current)) fail("bad group header");
      out.groups[current];
    } else if (tok == "gen") {
      if (current < 0) fail("generator outside a group");
      std::vector<CycloNum> entries;
      for (std::size_t k = 0; k < dim * dim; ++k) {
        if (!(in >> tok)) fail("truncated generator");
        try {
          entries.push_back(parse_cyclo(tok));
        } catch (const ParseError& e) {
          fail(e.what());
        }
      }
      out.groups[current].emplace_back(dim, std::move(entries));
    } else {
      fail("unexpected token '" + tok + "'");
    }
  }
  return out;
}

const ParsedData& data() {
  static const ParsedData parsed = parse_data(kExceptionalDataText);
  return parsed;
}

}  // namespace

std::optional<std::uint64_t> known_exceptional_order(int index) {
  const auto it = known_groups().find(index);
  if (it == known_groups().end()) return std::nullopt;
  return it->second.order;
}

int exceptional_dim(int index) {
  const auto it = known_groups().find(index);
  if (it == known_groups().end()) throw InvalidArgument("no exceptional group G" + std::to_string(index));
  return it->second.dim;
}

std::string exceptional_data_version() { return data().version; }

std::vector<CycloMatrix> load_exceptional(int index, std::uint64_t budget) {
  const auto order = known_exceptional_order(index);
  if (!order) throw InvalidArgument("no exceptional group G" + std::to_string(index) + " (expected 4..37)");
  if (*order > budget)
    throw BudgetExceeded("G" + std::to_string(index) + " has order " + std::to_string(*order) +
                         ", above the budget of " + std::to_string(budget));
  const auto it = data().groups.find(index);
  if (it == data().groups.end()) throw InvalidArgument("no embedded generators for G" + std::to_string(index));
  std::uint32_t N = 1;
  for (const auto& g : it->second) N = std::lcm(N, g.conductor());
  std::vector<CycloMatrix> gens;
  for (const auto& g : it->second) gens.push_back(g.embed(N));
  return gens;
}

}  // namespace reflen
