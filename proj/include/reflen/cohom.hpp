// Volume forms tagged by codimension atoms, and the twisting-constant
// nonvanishing criterion of the volume algebra.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "reflen/matgroup.hpp"
#include "reflen/monomial.hpp"
#include "reflen/ordertheory.hpp"

namespace reflen {

struct CohomGenerator {
  std::uint32_t tag = 0;          // element index in the group table
  std::size_t class_index = 0;
  std::uint32_t class_rep = 0;
  std::vector<CycloVector> vol;   // covectors whose wedge spans the top power of the perp space
  int degree = 0;                 // codim(tag)
  bool reflection = false;
};

struct GeneratorReport {
  std::string group;
  std::vector<CohomGenerator> generators;
  int max_degree = 0;
  std::map<int, std::size_t> degree_histogram;
  bool includes_degree_gt_one = false;
};

enum class GeneratorMode { Class, Element };

/// Monomial forms for diagonal elements (v_i* for each moved coordinate) and
/// transposition-type reflections (v_i* - zeta^c v_j*, i < j); nullopt otherwise.
std::optional<std::vector<CycloVector>> monomial_volume_form(const MonomialElt& g);

/// The element as (perm, exps) if its matrix is monomial with entries in the
/// powers of zeta_conductor.
std::optional<MonomialElt> as_monomial(const CycloMatrix& g);

/// Monomial form when one applies, otherwise the reduced row echelon basis
/// of the rows of g - I. Checks the form annihilates V^g and has codim(g)
/// independent covectors; throws InvariantViolation if not.
CohomGenerator volume_form(const GroupTable& table, std::uint32_t g);

/// One generator per atom class (class mode) or per atom element (element
/// mode, refused above `budget` elements with BudgetExceeded).
GeneratorReport generator_set(const GroupTable& table, const std::vector<char>& atom_flags,
                              GeneratorMode mode = GeneratorMode::Class, std::uint64_t budget = kElementBudget);

/// theta(g, h) != 0, i.e. codim(g) + codim(h) = codim(g h).
bool twisting_nonzero(const GroupTable& table, std::uint32_t g, std::uint32_t h);

/// Nonvanishing of the iterated product g_1 ... g_k of volume forms:
/// every prefix step satisfies twisting_nonzero. Requires k >= 1.
bool chain_twisting_nonzero(const GroupTable& table, std::span<const std::uint32_t> elements);

/// {schema, group, generators: [{class_rep, degree, vol}], max_degree,
///  degree_histogram, includes_degree_gt_one}; element mode adds "element".
nlohmann::ordered_json to_json(const GeneratorReport& report, GeneratorMode mode = GeneratorMode::Class);

}  // namespace reflen
