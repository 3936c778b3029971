// Compact arithmetic and cycle-sum combinatorics for the monomial groups
// G(m,p,n).

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "reflen/cyclo.hpp"

namespace reflen {

struct GmpnParams {
  int m = 1;
  int p = 1;
  int n = 1;

  /// Throws InvalidArgument unless m, p, n >= 1 and p | m.
  GmpnParams(int m, int p, int n);

  /// m^n * n! / p, or nullopt when it does not fit in 64 bits.
  std::optional<std::uint64_t> order() const;
  std::string name() const;

  friend bool operator==(const GmpnParams&, const GmpnParams&) = default;
};

/// The element (perm, exps) sends basis vector v_i to zeta_m^{exps[i]} v_{perm[i]}.
/// Indices are 0-based internally; the text form uses 1-based one-line notation.
struct MonomialElt {
  int m = 1;
  std::vector<int> perm;
  std::vector<int> exps;

  static MonomialElt identity(int m, int n);
  /// Validates that perm is a bijection and reduces exps mod m.
  MonomialElt(int m, std::vector<int> perm, std::vector<int> exps);
  MonomialElt() = default;

  int n() const { return static_cast<int>(perm.size()); }
  bool is_identity() const;
  bool is_diagonal() const;
  /// Sum of all exponents mod m; the element has determinant
  /// sign(perm) * zeta_m^{exponent_sum}.
  int exponent_sum() const;
  bool in_group(const GmpnParams& g) const;

  friend bool operator==(const MonomialElt&, const MonomialElt&) = default;
  friend auto operator<=>(const MonomialElt&, const MonomialElt&) = default;
};

nlohmann::json to_json(const MonomialElt& g);
MonomialElt monomial_from_json(const nlohmann::json& j);

/// Product "apply h, then g".
MonomialElt mono_mul(const MonomialElt& g, const MonomialElt& h);
MonomialElt mono_inv(const MonomialElt& g);

struct CycleSum {
  std::vector<int> orbit;  // sorted coordinate indices
  int sum = 0;             // mod m
  friend bool operator==(const CycleSum&, const CycleSum&) = default;
  friend auto operator<=>(const CycleSum&, const CycleSum&) = default;
};

/// One entry per cycle of perm, ordered by least index in the orbit.
using CycleSumProfile = std::vector<CycleSum>;

CycleSumProfile cycle_sums(const MonomialElt& g);

/// n minus the number of cycles whose sum is 0 mod m.
int mono_codim(const MonomialElt& g);

/// det(g) = 1 test for diagonal elements, as sum of exps = 0 mod m.
bool mono_det_is_one_diagonal(const MonomialElt& g);

CycloMatrix mono_to_matrix(const MonomialElt& g);

/// Standard generating reflections of G(m,p,n).
std::vector<MonomialElt> gmpn_generators(const GmpnParams& g);

/// Every element of G(m,p,n), in lexicographic (perm, exps) order. Throws
/// BudgetExceeded when the order exceeds `budget`.
std::vector<MonomialElt> enumerate_gmpn(const GmpnParams& g, std::uint64_t budget);

/// Transposition-type reflections first (i < j, then a), then diagonal ones.
std::vector<MonomialElt> enumerate_reflections(const GmpnParams& g);

/// Diagonal, nonidentity, p divides the sum of the nonzero exponents, and no
/// proper nonempty sub-multiset of them sums to a multiple of p.
bool is_p_connected(const MonomialElt& g, int p);

enum class AtomKind { TranspositionReflection, DiagonalReflection, PConnected };

struct GmpnAtom {
  MonomialElt element;
  AtomKind kind;
};

/// Codimension atoms of G(m,p,n) by exhaustive enumeration.
std::vector<GmpnAtom> gmpn_codim_atoms(const GmpnParams& g, std::uint64_t budget);

/// Family-level description of the atoms, for groups too large to list.
struct AtomFamily {
  AtomKind kind;
  /// For PConnected: the multiset of nonzero exponents, sorted. For diagonal
  /// reflections: the single exponent. Empty for transposition reflections.
  std::vector<int> exponents;
  std::uint64_t count = 0;  // number of elements in the family
};

std::vector<AtomFamily> gmpn_atom_families(const GmpnParams& g);

/// An element with reflection length exceeding codimension when one exists
/// by the explicit constructions; nullopt means length equals codimension.
std::optional<MonomialElt> counterexample(const GmpnParams& g);

std::string to_string(AtomKind k);

}  // namespace reflen
