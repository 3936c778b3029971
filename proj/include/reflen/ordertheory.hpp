// Class-level length and codimension orders: class algebra constants,
// layered reflection length, the two relations, atoms and covers.

#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "reflen/kernels.hpp"
#include "reflen/matgroup.hpp"

namespace reflen {

/// Element-level oracles (BFS, per-element posets) refuse larger groups by default.
inline constexpr std::uint64_t kElementBudget = 10'000;

/// Square boolean matrix on class indices; (a, c) means a <= c.
class ClassRelation {
public:
  ClassRelation() = default;
  explicit ClassRelation(std::size_t n) : n_(n), bits_(n * n, 0) {}

  std::size_t size() const { return n_; }
  bool operator()(std::size_t a, std::size_t c) const { return bits_[a * n_ + c] != 0; }
  void set(std::size_t a, std::size_t c, bool v = true) { bits_[a * n_ + c] = v ? 1 : 0; }
  bool operator==(const ClassRelation&) const = default;

private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> bits_;
};

struct CoverEdge {
  std::size_t lower = 0;
  std::size_t upper = 0;
  bool operator==(const CoverEdge&) const = default;
};

/// On-demand cac(X, Y, C) by iterating X. Thread-safe; results are memoized.
class CacOracle {
public:
  explicit CacOracle(const GroupTable& table) : table_(&table) {}
  std::uint64_t operator()(std::size_t x, std::size_t y, std::size_t c) const;
  std::size_t memo_size() const;

private:
  const GroupTable* table_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::uint64_t, std::uint64_t> memo_;
};

std::vector<int> class_codims(const GroupTable& table);

/// L(0) = {1}, L(1) = reflection classes, and C joins L(k+1) when
/// cac(X, Y, C) > 0 for some X in L(1), Y in L(k). Throws InvalidArgument
/// when the layers stall, i.e. the group is not generated by reflections.
std::vector<int> reflection_length_by_layers(const GroupTable& table, const CacTensor& cac);

/// Per-element reflection length by breadth-first search. Throws
/// BudgetExceeded above `budget` and InvalidArgument if some element is unreachable.
std::vector<int> bfs_reflection_length(const GroupTable& table, std::uint64_t budget = kElementBudget,
                                       Exec exec = Exec::Parallel);

/// A <= C iff cac(A, X, C) > 0 for some X with grade(A) + grade(X) = grade(C).
/// With grade = codim this is the codimension order, with grade = length the
/// length order.
ClassRelation graded_relation(const GroupTable& table, const CacTensor& cac, const std::vector<int>& grade);

/// C is flagged when it is not the identity and admits no pair of nonidentity
/// classes X, Y with cac(X, Y, C) > 0 and codims adding.
std::vector<char> codim_atoms(const GroupTable& table, const CacTensor& cac);

/// Throws PosetViolation naming the first failed axiom.
void validate_poset(const ClassRelation& rel, std::string_view name);

/// Transitive reduction of the strict relation, after validate_poset.
std::vector<CoverEdge> cover_relations(const ClassRelation& rel, std::string_view name = "relation");

struct OrderTables {
  std::vector<int> length_by_class;
  std::vector<int> codim_by_class;
  ClassRelation leq_ell;
  ClassRelation leq_perp;
  std::vector<char> atom_flags_perp;
  std::vector<CoverEdge> covers_ell;
  std::vector<CoverEdge> covers_perp;
};

/// Builds every table and checks the basic invariants (codim <= length,
/// grade 0 only at the identity, length 1 exactly on reflection classes, both
/// relations partial orders). Throws InvariantViolation or PosetViolation.
OrderTables compute_order_tables(const GroupTable& table, const CacTensor& cac);
OrderTables compute_order_tables(const GroupTable& table, Exec exec = Exec::Parallel);

struct CoincidenceReport {
  std::size_t length_ne_codim = 0;
  std::size_t nonreflection_atoms = 0;
  int max_length = 0;
  bool coincide = false;
};

/// Throws InvariantViolation if the two coincidence criteria disagree.
CoincidenceReport coincidence_report(const GroupTable& table, const OrderTables& orders);

struct LemmaReport {
  bool length_equals_codim = false;        // everywhere
  bool atoms_length_equals_codim = false;  // on codimension atoms
  bool atoms_are_reflections = false;
  bool every_element_descends = false;     // some reflection s lowers codim(g s), checked per element
  std::optional<std::uint32_t> non_descending_witness;
  bool equivalent = false;                 // the four flags above agree
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Checks, on classes: length order implies codim order below classes with
/// length = codim; the four coincidence criteria agree; codim and length are
/// subadditive on every cac-witnessed product; both orders are monotone in
/// their grades. Violations are listed, never thrown.
LemmaReport verify_order_lemmas(const GroupTable& table, const CacTensor& cac, const OrderTables& orders,
                                Exec exec = Exec::Parallel);

enum class PosetKind { Perp, Ell, Both };

/// {schema, group, order, classes: [{rep, size, length, codim, atom_perp}],
///  leq_perp, leq_ell, covers: {perp, ell}}
nlohmann::ordered_json poset_json(const GroupTable& table, const OrderTables& orders);

/// Cover graph with nodes labeled "rep:length/codim"; codimension atoms are filled.
std::string poset_dot(const GroupTable& table, const OrderTables& orders, PosetKind kind);

}  // namespace reflen
