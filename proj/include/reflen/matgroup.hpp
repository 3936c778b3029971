// Finite matrix groups over cyclotomic fields: closure, conjugacy classes,
// codimension, and the embedded exceptional generator data.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "reflen/cyclo.hpp"
#include "reflen/monomial.hpp"

namespace reflen {

inline constexpr std::uint64_t kDefaultBudget = 2'000'000;

struct GroupSpec {
  enum class Kind { Monomial, Exceptional, Explicit };

  Kind kind = Kind::Explicit;
  std::optional<GmpnParams> gmpn;           // Monomial
  int index = 0;                            // Exceptional, 4..37
  std::vector<CycloMatrix> generators;      // Explicit
  std::string label;                        // Explicit, optional display name
  std::size_t dim = 0;                      // Explicit with no generators
  std::uint64_t budget = kDefaultBudget;

  static GroupSpec monomial(GmpnParams p, std::uint64_t budget = kDefaultBudget);
  static GroupSpec exceptional(int index, std::uint64_t budget = kDefaultBudget);
  /// `dim` is only consulted when `gens` is empty.
  static GroupSpec explicit_gens(std::vector<CycloMatrix> gens, std::string label = "explicit",
                                 std::uint64_t budget = kDefaultBudget, std::size_t dim = 1);

  /// "G(4,2,2)", "G24", or the explicit label.
  std::string name() const;
};

/// Accepts "G(m,p,n)", "G<k>", "G_<k>", "ST<k>" or a bare index "<k>".
/// Throws ParseError.
GroupSpec parse_group_spec(std::string_view text, std::uint64_t budget = kDefaultBudget);

/// Reads {"name": ..., "generators": [[[entry, ...], ...], ...]} with GAP-style
/// entries. Throws ParseError.
GroupSpec explicit_spec_from_json(const nlohmann::json& j, std::uint64_t budget = kDefaultBudget);

/// Shephard-Todd order of G_index, 4 <= index <= 37.
std::optional<std::uint64_t> known_exceptional_order(int index);
int exceptional_dim(int index);
std::string exceptional_data_version();

/// Embedded generating reflections. Throws InvalidArgument for an unknown
/// index and BudgetExceeded when the known order exceeds `budget`.
std::vector<CycloMatrix> load_exceptional(int index, std::uint64_t budget = kDefaultBudget);

/// Generators of any spec, all sharing one conductor.
std::vector<CycloMatrix> spec_generators(const GroupSpec& spec);

/// rank(g - I).
int elt_codim(const CycloMatrix& g);

struct FixedPerp {
  std::vector<CycloVector> fixed;  // basis of ker(g - I)
  std::vector<CycloVector> perp;   // covectors: RREF rows of (g - I)
};

FixedPerp fixed_and_perp_bases(const CycloMatrix& g);

struct ClassInfo {
  std::uint32_t rep = 0;   // least element index in the class
  std::uint32_t size = 0;
  int codim = 0;
  bool reflection = false;
};

/// Images of the group modulo a prime q = 1 (mod conductor), with q coprime
/// to every generator denominator. Reduction is injective on a finite
/// subgroup at such a prime, so images serve as exact element keys.
struct ModularField {
  std::uint32_t q = 0;
  std::uint32_t omega = 0;  // primitive conductor-th root of unity mod q
  std::uint32_t conductor = 1;

  static ModularField choose(std::uint32_t conductor, std::span<const CycloMatrix> gens);
  std::uint32_t reduce(const CycloNum& x) const;  // throws InvalidArgument if not integral at q
  std::vector<std::uint32_t> reduce(const CycloMatrix& m) const;
};

class GroupTable {
public:
  /// Breadth-first closure under left multiplication by the generators.
  static GroupTable enumerate(const GroupSpec& spec);

  std::string name() const { return name_; }
  std::size_t order() const { return parent_.size(); }
  std::size_t dim() const { return dim_; }
  std::uint32_t conductor() const { return conductor_; }
  const std::vector<CycloMatrix>& generators() const { return gens_; }
  const ModularField& field() const { return field_; }

  static constexpr std::uint32_t identity() { return 0; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  /// Allocation-free variant; `scratch` must hold dim()^2 entries.
  std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::span<std::uint32_t> scratch) const;
  std::uint32_t inv(std::uint32_t a) const { return inv_[a]; }
  std::uint32_t element_order(std::uint32_t a) const;
  int codim(std::uint32_t a) const { return codim_[a]; }
  std::span<const std::uint32_t> image(std::uint32_t a) const {
    return {images_.data() + std::size_t{a} * dim_ * dim_, dim_ * dim_};
  }

  std::size_t num_classes() const { return classes_.size(); }
  const std::vector<ClassInfo>& classes() const { return classes_; }
  std::uint32_t class_of(std::uint32_t a) const { return class_of_[a]; }
  std::span<const std::uint32_t> class_members(std::size_t c) const {
    return {members_.data() + member_offset_[c], member_offset_[c + 1] - member_offset_[c]};
  }
  /// Element indices of all reflections, ascending.
  std::vector<std::uint32_t> reflections() const;
  std::vector<std::size_t> reflection_classes() const;

  /// Exact matrix, rebuilt from the closure word.
  CycloMatrix element(std::uint32_t a) const;
  /// Generator indices w with element(a) = gens[w[0]] * gens[w[1]] * ...
  std::vector<std::uint32_t> word(std::uint32_t a) const;
  std::optional<std::uint32_t> index_of(const CycloMatrix& m) const;
  std::optional<std::uint32_t> index_of_image(std::span<const std::uint32_t> img) const;

  void save(const std::filesystem::path& path, std::string_view key) const;
  /// nullopt when the file is missing, unreadable, or written under another key.
  static std::optional<GroupTable> load(const std::filesystem::path& path, std::string_view key);

private:
  GroupTable() = default;
  void rebuild_hash();
  std::uint32_t insert_or_find(const std::uint32_t* img, bool& inserted);
  void compute_inverses();
  void compute_classes();
  void compute_codims();

  std::string name_;
  std::size_t dim_ = 0;
  std::uint32_t conductor_ = 1;
  std::vector<CycloMatrix> gens_;
  std::vector<std::vector<std::uint32_t>> gen_images_;
  ModularField field_;

  std::vector<std::uint32_t> images_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> via_gen_;
  std::vector<std::uint32_t> inv_;
  std::vector<std::uint8_t> codim_;
  std::vector<std::uint32_t> class_of_;
  std::vector<ClassInfo> classes_;
  std::vector<std::uint32_t> members_;
  std::vector<std::size_t> member_offset_;

  std::vector<std::uint32_t> slots_;  // open addressing, UINT32_MAX = empty
};

GroupTable enumerate_group(const GroupSpec& spec);

/// Cache key for a spec: name, data version and generator text.
std::string cache_key(const GroupSpec& spec);

}  // namespace reflen
