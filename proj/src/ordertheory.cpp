#include "reflen/ordertheory.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "reflen/error.hpp"

namespace reflen {

namespace {

constexpr std::size_t kMaxListedViolations = 20;

std::string class_label(const GroupTable& t, std::size_t c) { return "class " + std::to_string(t.classes()[c].rep); }

void note(LemmaReport& r, std::string what) {
  if (r.violations.size() < kMaxListedViolations) r.violations.push_back(std::move(what));
}

void check_tensor(const GroupTable& t, const CacTensor& cac) {
  const std::size_t k = t.num_classes();
  if (cac.num_classes() != k) throw InvariantViolation(t.name() + ": cac tensor has the wrong shape");
  for (std::size_t c = 0; c < k; ++c) {
    std::uint64_t total = 0;
    for (std::size_t x = 0; x < k; ++x) {
      for (std::size_t y = 0; y < k; ++y) {
        if (cac.at(x, y, c) > t.classes()[x].size)
          throw InvariantViolation(t.name() + ": cac exceeds the class size");
        total += cac.at(x, y, c);
      }
    }
    if (total != t.order()) throw InvariantViolation(t.name() + ": cac slice does not sum to the group order");
  }
}

}  // namespace

std::uint64_t CacOracle::operator()(std::size_t x, std::size_t y, std::size_t c) const {
  const std::size_t k = table_->num_classes();
  const std::uint64_t key = (std::uint64_t{x} * k + y) * k + c;
  {
    std::lock_guard lock(mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  const std::uint32_t rep = table_->classes()[c].rep;
  std::uint64_t count = 0;
  for (std::uint32_t u : table_->class_members(x))
    if (table_->class_of(table_->mul(table_->inv(u), rep)) == y) ++count;
  std::lock_guard lock(mutex_);
  memo_.emplace(key, count);
  return count;
}

std::size_t CacOracle::memo_size() const {
  std::lock_guard lock(mutex_);
  return memo_.size();
}

std::vector<int> class_codims(const GroupTable& t) {
  std::vector<int> out;
  out.reserve(t.num_classes());
  for (const auto& c : t.classes()) out.push_back(c.codim);
  return out;
}

std::vector<int> reflection_length_by_layers(const GroupTable& t, const CacTensor& cac) {
  const std::size_t k = t.num_classes();
  std::vector<int> length(k, -1);
  length[0] = 0;
  std::vector<std::size_t> layer;
  for (std::size_t c : t.reflection_classes()) {
    length[c] = 1;
    layer.push_back(c);
  }
  const std::vector<std::size_t> refl = layer;
  std::size_t assigned = 1 + layer.size();
  for (int level = 1; assigned < k; ++level) {
    std::vector<std::size_t> next;
    for (std::size_t c = 0; c < k; ++c) {
      if (length[c] >= 0) continue;
      const bool reached = std::any_of(refl.begin(), refl.end(), [&](std::size_t x) {
        return std::any_of(layer.begin(), layer.end(), [&](std::size_t y) { return cac.at(x, y, c) > 0; });
      });
      if (reached) next.push_back(c);
    }
    if (next.empty())
      throw InvalidArgument(t.name() + ": " + std::to_string(k - assigned) +
                            " classes are not products of reflections; the group is not a reflection group");
    for (std::size_t c : next) length[c] = level + 1;
    assigned += next.size();
    layer = std::move(next);
  }
  return length;
}

std::vector<int> bfs_reflection_length(const GroupTable& t, std::uint64_t budget, Exec exec) {
  if (t.order() > budget)
    throw BudgetExceeded(t.name() + " has order " + std::to_string(t.order()) + ", above the element budget of " +
                         std::to_string(budget));
  auto dist = reflection_distances(t, exec);
  if (std::find(dist.begin(), dist.end(), -1) != dist.end())
    throw InvalidArgument(t.name() + ": the reflections do not generate the group");
  return dist;
}

ClassRelation graded_relation(const GroupTable& t, const CacTensor& cac, const std::vector<int>& grade) {
  const std::size_t k = t.num_classes();
  ClassRelation rel(k);
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t a = 0; a < k; ++a) {
      const int need = grade[c] - grade[a];
      if (need < 0) continue;
      for (std::size_t x = 0; x < k; ++x) {
        if (grade[x] == need && cac.at(a, x, c) > 0) {
          rel.set(a, c);
          break;
        }
      }
    }
  }
  return rel;
}

std::vector<char> codim_atoms(const GroupTable& t, const CacTensor& cac) {
  const std::size_t k = t.num_classes();
  const auto codim = class_codims(t);
  std::vector<char> atom(k, 0);
  for (std::size_t c = 1; c < k; ++c) {
    bool splits = false;
    for (std::size_t x = 1; x < k && !splits; ++x)
      for (std::size_t y = 1; y < k && !splits; ++y)
        splits = codim[x] + codim[y] == codim[c] && cac.at(x, y, c) > 0;
    atom[c] = splits ? 0 : 1;
  }
  return atom;
}

void validate_poset(const ClassRelation& rel, std::string_view name) {
  const std::size_t n = rel.size();
  const std::string what(name);
  for (std::size_t a = 0; a < n; ++a)
    if (!rel(a, a)) throw PosetViolation(what + " is not reflexive at class index " + std::to_string(a));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (rel(a, b) && rel(b, a))
        throw PosetViolation(what + " is not antisymmetric on class indices " + std::to_string(a) + ", " +
                             std::to_string(b));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!rel(a, b)) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (rel(b, c) && !rel(a, c))
          throw PosetViolation(what + " is not transitive on class indices " + std::to_string(a) + " <= " +
                               std::to_string(b) + " <= " + std::to_string(c));
    }
}

std::vector<CoverEdge> cover_relations(const ClassRelation& rel, std::string_view name) {
  validate_poset(rel, name);
  const std::size_t n = rel.size();
  std::vector<CoverEdge> edges;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < n; ++c) {
      if (a == c || !rel(a, c)) continue;
      bool between = false;
      for (std::size_t b = 0; b < n && !between; ++b) between = b != a && b != c && rel(a, b) && rel(b, c);
      if (!between) edges.push_back({a, c});
    }
  return edges;
}

OrderTables compute_order_tables(const GroupTable& t, const CacTensor& cac) {
  check_tensor(t, cac);
  OrderTables o;
  o.codim_by_class = class_codims(t);
  o.length_by_class = reflection_length_by_layers(t, cac);
  const std::size_t k = t.num_classes();
  for (std::size_t c = 0; c < k; ++c) {
    const int l = o.length_by_class[c];
    const int d = o.codim_by_class[c];
    if (d > l) throw InvariantViolation(t.name() + ": codim exceeds length on " + class_label(t, c));
    if ((l == 0) != (c == 0) || (d == 0) != (c == 0))
      throw InvariantViolation(t.name() + ": grade 0 away from the identity at " + class_label(t, c));
    if ((l == 1) != t.classes()[c].reflection)
      throw InvariantViolation(t.name() + ": length 1 does not match the reflections at " + class_label(t, c));
  }
  o.leq_perp = graded_relation(t, cac, o.codim_by_class);
  o.leq_ell = graded_relation(t, cac, o.length_by_class);
  o.atom_flags_perp = codim_atoms(t, cac);
  o.covers_perp = cover_relations(o.leq_perp, t.name() + " codimension order");
  o.covers_ell = cover_relations(o.leq_ell, t.name() + " length order");
  return o;
}

OrderTables compute_order_tables(const GroupTable& t, Exec exec) { return compute_order_tables(t, cac_sweep(t, exec)); }

CoincidenceReport coincidence_report(const GroupTable& t, const OrderTables& o) {
  CoincidenceReport r;
  for (std::size_t c = 0; c < t.num_classes(); ++c) {
    if (o.length_by_class[c] != o.codim_by_class[c]) ++r.length_ne_codim;
    if (o.atom_flags_perp[c] && !t.classes()[c].reflection) ++r.nonreflection_atoms;
    r.max_length = std::max(r.max_length, o.length_by_class[c]);
  }
  r.coincide = r.length_ne_codim == 0;
  if (r.coincide != (r.nonreflection_atoms == 0))
    throw InvariantViolation(t.name() + ": length = codim disagrees with the atom criterion");
  return r;
}

LemmaReport verify_order_lemmas(const GroupTable& t, const CacTensor& cac, const OrderTables& o, Exec exec) {
  LemmaReport r;
  const std::size_t k = t.num_classes();
  const auto& len = o.length_by_class;
  const auto& cod = o.codim_by_class;

  r.length_equals_codim = len == cod;
  r.atoms_length_equals_codim = true;
  r.atoms_are_reflections = true;
  for (std::size_t c = 0; c < k; ++c) {
    if (!o.atom_flags_perp[c]) continue;
    if (len[c] != cod[c]) r.atoms_length_equals_codim = false;
    if (!t.classes()[c].reflection) r.atoms_are_reflections = false;
  }
  r.non_descending_witness = first_non_descending(t, exec);
  r.every_element_descends = !r.non_descending_witness;
  r.equivalent = r.length_equals_codim == r.atoms_length_equals_codim &&
                 r.length_equals_codim == r.atoms_are_reflections &&
                 r.length_equals_codim == r.every_element_descends;
  if (!r.equivalent) note(r, "the four coincidence criteria disagree");

  for (std::size_t c = 0; c < k; ++c) {
    if (cod[c] > len[c]) note(r, "codim > length on " + class_label(t, c));
    for (std::size_t a = 0; a < k; ++a) {
      if (len[c] == cod[c] && o.leq_ell(a, c) && !o.leq_perp(a, c))
        note(r, "length order without codim order: " + class_label(t, a) + " below " + class_label(t, c));
      if (o.leq_perp(a, c) && cod[a] > cod[c]) note(r, "codim order not monotone at " + class_label(t, c));
      if (o.leq_ell(a, c) && len[a] > len[c]) note(r, "length order not monotone at " + class_label(t, c));
      for (std::size_t y = 0; y < k; ++y) {
        if (cac.at(a, y, c) == 0) continue;
        if (cod[c] > cod[a] + cod[y]) note(r, "codim not subadditive at " + class_label(t, c));
        if (len[c] > len[a] + len[y]) note(r, "length not subadditive at " + class_label(t, c));
      }
    }
  }
  return r;
}

nlohmann::ordered_json poset_json(const GroupTable& t, const OrderTables& o) {
  using nlohmann::ordered_json;
  const std::size_t k = t.num_classes();
  ordered_json j;
  j["schema"] = "reflen.poset/1";
  j["group"] = t.name();
  j["order"] = t.order();
  ordered_json classes = ordered_json::array();
  for (std::size_t c = 0; c < k; ++c) {
    classes.push_back({{"rep", t.classes()[c].rep},
                       {"size", t.classes()[c].size},
                       {"length", o.length_by_class[c]},
                       {"codim", o.codim_by_class[c]},
                       {"atom_perp", o.atom_flags_perp[c] != 0}});
  }
  j["classes"] = std::move(classes);
  auto matrix = [k](const ClassRelation& rel) {
    ordered_json rows = ordered_json::array();
    for (std::size_t a = 0; a < k; ++a) {
      ordered_json row = ordered_json::array();
      for (std::size_t c = 0; c < k; ++c) row.push_back(rel(a, c) ? 1 : 0);
      rows.push_back(std::move(row));
    }
    return rows;
  };
  auto edges = [](const std::vector<CoverEdge>& es) {
    ordered_json out = ordered_json::array();
    for (const auto& e : es) out.push_back({e.lower, e.upper});
    return out;
  };
  j["leq_perp"] = matrix(o.leq_perp);
  j["leq_ell"] = matrix(o.leq_ell);
  j["covers"] = {{"perp", edges(o.covers_perp)}, {"ell", edges(o.covers_ell)}};
  return j;
}

std::string poset_dot(const GroupTable& t, const OrderTables& o, PosetKind kind) {
  std::ostringstream out;
  std::string id = t.name();
  std::replace_if(id.begin(), id.end(), [](char ch) { return !std::isalnum(static_cast<unsigned char>(ch)); }, '_');
  out << "digraph " << id << " {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t c = 0; c < t.num_classes(); ++c) {
    out << "  c" << c << " [label=\"" << t.classes()[c].rep << ':' << o.length_by_class[c] << '/'
        << o.codim_by_class[c] << '"';
    if (o.atom_flags_perp[c]) out << ", style=filled, fillcolor=" << (t.classes()[c].reflection ? "gray90" : "gold");
    out << "];\n";
  }
  if (kind != PosetKind::Ell)
    for (const auto& e : o.covers_perp) out << "  c" << e.lower << " -> c" << e.upper << ";\n";
  if (kind != PosetKind::Perp)
    for (const auto& e : o.covers_ell)
      out << "  c" << e.lower << " -> c" << e.upper << (kind == PosetKind::Both ? " [style=dashed, color=blue]" : "")
          << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace reflen
