#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <thread>

#include "reflen/error.hpp"
#include "reflen/ordertheory.hpp"

using namespace reflen;

namespace {

struct Analysed {
  GroupTable table;
  CacTensor cac;
  OrderTables orders;
};

const Analysed& analysed(const std::string& spec) {
  static std::map<std::string, Analysed> cache;
  auto it = cache.find(spec);
  if (it == cache.end()) {
    auto t = enumerate_group(parse_group_spec(spec));
    auto cac = cac_sweep(t);
    auto orders = compute_order_tables(t, cac);
    it = cache.emplace(spec, Analysed{std::move(t), std::move(cac), std::move(orders)}).first;
  }
  return it->second;
}

std::vector<std::string> small_gmpn(std::uint64_t max_order) {
  std::vector<std::string> out;
  for (int n = 1; n <= 6; ++n)
    for (int m = 1; m <= 12; ++m)
      for (int p = 1; p <= m; ++p) {
        if (m % p) continue;
        const auto ord = GmpnParams(m, p, n).order();
        if (ord && *ord <= max_order) out.push_back(GmpnParams(m, p, n).name());
      }
  return out;
}

std::vector<std::string> rank_two() {
  std::vector<std::string> out;
  for (int k = 4; k <= 22; ++k) out.push_back("G" + std::to_string(k));
  return out;
}

// Pair count straight from the definition, with exact products.
std::uint64_t cac_by_pairs(const GroupTable& t, std::size_t x, std::size_t y, std::size_t c) {
  const CycloMatrix rep = t.element(t.classes()[c].rep);
  std::uint64_t n = 0;
  for (auto u : t.class_members(x))
    for (auto v : t.class_members(y))
      if (t.element(u) * t.element(v) == rep) ++n;
  return n;
}

// Element-level codimension order straight from the definition.
bool perp_by_elements(const GroupTable& t, std::size_t a, std::size_t c) {
  const auto rep = t.classes()[c].rep;
  for (auto u : t.class_members(a))
    if (t.codim(u) + t.codim(t.mul(t.inv(u), rep)) == t.codim(rep)) return true;
  return false;
}

bool atom_by_elements(const GroupTable& t, std::size_t c) {
  if (c == 0) return false;
  const auto rep = t.classes()[c].rep;
  for (std::uint32_t u = 1; u < t.order(); ++u) {
    const auto w = t.mul(t.inv(u), rep);
    if (w != 0 && t.codim(u) + t.codim(w) == t.codim(rep)) return false;
  }
  return true;
}

CycloNum det(CycloMatrix m) {
  const std::size_t n = m.dim();
  CycloNum d = CycloNum::from_int(m.conductor(), 1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m(piv, col).is_zero()) ++piv;
    if (piv == n) return CycloNum(m.conductor());
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        const CycloNum tmp = m(col, j);
        m.set(col, j, m(piv, j));
        m.set(piv, j, tmp);
      }
      d = -d;
    }
    const CycloNum inv = m(col, col).inverse();
    d = d * m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const CycloNum f = m(r, col) * inv;
      if (f.is_zero()) continue;
      for (std::size_t j = col; j < n; ++j) m.set(r, j, m(r, j) - f * m(col, j));
    }
  }
  return d;
}

ClassRelation chain(std::size_t n) {
  ClassRelation r(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = a; c < n; ++c) r.set(a, c);
  return r;
}

std::size_t class_of_monomial(const GroupTable& t, const MonomialElt& g) {
  const auto idx = t.index_of(mono_to_matrix(g));
  REQUIRE(idx.has_value());
  return t.class_of(*idx);
}

}  // namespace

TEST_CASE("cac basics") {
  const auto& a = analysed("G(3,1,2)");
  const auto& t = a.table;
  CacOracle cac(t);
  CHECK(cac(0, 0, 0) == 1);
  CHECK(a.cac.at(0, 0, 0) == 1);
  for (std::size_t x = 0; x < t.num_classes(); ++x) {
    const std::size_t xinv = t.class_of(t.inv(t.classes()[x].rep));
    CHECK(cac(x, xinv, 0) == t.classes()[x].size);
  }
}

TEST_CASE("cac tensor, memo oracle and pair counting agree") {
  for (const char* spec : {"G(4,2,2)", "G(3,3,3)", "G4", "G8", "G12"}) {
    const auto& a = analysed(spec);
    const auto& t = a.table;
    CacOracle cac(t);
    const std::size_t k = t.num_classes();
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t x = 0; x < k; ++x)
        for (std::size_t y = 0; y < k; ++y) {
          CHECK(cac(x, y, c) == a.cac.at(x, y, c));
          CHECK(cac(x, y, c) <= t.classes()[x].size);
        }
    CHECK(cac.memo_size() == k * k * k);
    // spot the definition on a few triples, exact products are slow
    for (std::size_t c = 0; c < k; c += 3)
      for (std::size_t x = 0; x < k; x += 2)
        for (std::size_t y = 0; y < k; y += 3) CHECK(cac_by_pairs(t, x, y, c) == a.cac.at(x, y, c));
  }
}

TEST_CASE("cac oracle under concurrent queries") {
  const auto& a = analysed("G25");
  CacOracle cac(a.table);
  const std::size_t k = a.table.num_classes();
  std::vector<std::thread> threads;
  std::vector<int> bad(4, 0);
  for (int w = 0; w < 4; ++w)
    threads.emplace_back([&, w] {
      for (std::size_t c = w % 2; c < k; c += 2)
        for (std::size_t x = 0; x < k; ++x)
          for (std::size_t y = 0; y < k; y += 5)
            if (cac(x, y, c) != a.cac.at(x, y, c)) ++bad[w];
    });
  for (auto& th : threads) th.join();
  CHECK(std::count(bad.begin(), bad.end(), 0) == 4);
}

TEST_CASE("serial and parallel kernels agree") {
  for (const char* spec : {"G(4,2,3)", "G(3,3,3)", "G8", "G24", "G26"}) {
    const auto t = enumerate_group(parse_group_spec(spec));
    CHECK(cac_sweep(t, Exec::Serial) == cac_sweep(t, Exec::Parallel));
    CHECK(reflection_distances(t, Exec::Serial) == reflection_distances(t, Exec::Parallel));
    CHECK(first_non_descending(t, Exec::Serial) == first_non_descending(t, Exec::Parallel));
  }
}

TEST_CASE("layered lengths match breadth-first search") {
  auto specs = small_gmpn(2000);
  for (auto& s : rank_two()) specs.push_back(s);
  for (const char* s : {"G23", "G24", "G25", "G26", "G27", "G28", "G29"}) specs.push_back(s);
  for (const auto& spec : specs) {
    const auto& a = analysed(spec);
    const auto bfs = bfs_reflection_length(a.table);
    for (std::uint32_t x = 0; x < a.table.order(); ++x)
      CHECK_MESSAGE(bfs[x] == a.orders.length_by_class[a.table.class_of(x)], spec);
  }
}

TEST_CASE("bfs budget and identity") {
  const auto& a = analysed("G(2,1,2)");
  CHECK(bfs_reflection_length(a.table)[0] == 0);
  CHECK_THROWS_AS(bfs_reflection_length(a.table, 7), BudgetExceeded);
}

TEST_CASE("G8: the length-three element") {
  const auto& a = analysed("G8");
  const auto& t = a.table;
  const auto gens = load_exceptional(8);
  const CycloMatrix g = gens[0] * (gens[0] * gens[1] * gens[1] * mat_inverse(gens[0])) * gens[1];
  const std::size_t cg = t.class_of(*t.index_of(g));
  std::uint64_t two_reflection_products = 0;
  for (auto x : t.reflection_classes())
    for (auto y : t.reflection_classes()) two_reflection_products += a.cac.at(x, y, cg);
  CHECK(two_reflection_products == 0);
  CHECK(a.orders.length_by_class[cg] == 3);
  CHECK(a.orders.codim_by_class[cg] == 2);
  CHECK(a.orders.atom_flags_perp[cg]);
}

TEST_CASE("G12: ST has length three") {
  const auto& a = analysed("G12");
  const auto& t = a.table;
  const auto gens = load_exceptional(12);
  const std::size_t c = t.class_of(*t.index_of(gens[0] * gens[1]));
  CHECK(a.orders.length_by_class[c] == 3);
  CHECK(a.orders.codim_by_class[c] == 2);
  const std::size_t ct = t.class_of(*t.index_of(gens[1]));
  CHECK(a.orders.length_by_class[ct] == 2);
}

TEST_CASE("maximum lengths") {
  CHECK(coincidence_report(analysed("G27").table, analysed("G27").orders).max_length == 5);
  for (const char* spec : {"G23", "G24", "G25", "G26", "G27", "G28", "G29"}) {
    const auto& a = analysed(spec);
    CHECK(coincidence_report(a.table, a.orders).max_length <= 2 * static_cast<int>(a.table.dim()) - 1);
  }
}

TEST_CASE("infinite-family counterexamples") {
  struct Case {
    int m, p, n, len, codim;
  };
  for (const auto& cs : {Case{4, 2, 2, 3, 2}, Case{4, 2, 3, 3, 2}, Case{6, 2, 2, 3, 2}, Case{6, 3, 2, 3, 2},
                         Case{3, 3, 3, 4, 3}, Case{4, 4, 3, 4, 3}}) {
    const GmpnParams params(cs.m, cs.p, cs.n);
    const auto& a = analysed(params.name());
    const auto g = counterexample(params);
    REQUIRE(g.has_value());
    const auto idx = *a.table.index_of(mono_to_matrix(*g));
    CHECK(a.orders.length_by_class[a.table.class_of(idx)] == cs.len);
    CHECK(a.orders.codim_by_class[a.table.class_of(idx)] == cs.codim);
    CHECK(bfs_reflection_length(a.table)[idx] == cs.len);
  }
}

TEST_CASE("codimension order examples") {
  {
    const auto& a = analysed("G(4,2,2)");
    const auto c = class_of_monomial(a.table, *counterexample(GmpnParams(4, 2, 2)));
    for (auto r : a.table.reflection_classes()) CHECK_FALSE(a.orders.leq_perp(r, c));
    CHECK(a.orders.atom_flags_perp[c]);
  }
  for (int m = 2; m <= 8; ++m) {
    const auto& a = analysed(GmpnParams(m, m, 2).name());
    for (std::size_t c = 0; c < a.table.num_classes(); ++c) CHECK(a.orders.leq_perp(0, c));
    for (int e = 1; e < m; ++e) {
      const auto c = class_of_monomial(a.table, MonomialElt(m, {0, 1}, {e, m - e}));
      const auto refl = a.table.reflection_classes();
      CHECK(std::any_of(refl.begin(), refl.end(), [&](std::size_t r) { return a.orders.leq_perp(r, c); }));
    }
  }
}

TEST_CASE("class relations match the element-level definition") {
  auto specs = small_gmpn(400);
  for (const char* s : {"G4", "G5", "G6", "G8", "G12", "G13", "G23"}) specs.push_back(s);
  for (const auto& spec : specs) {
    const auto& a = analysed(spec);
    const std::size_t k = a.table.num_classes();
    for (std::size_t c = 0; c < k; ++c) {
      CHECK_MESSAGE(a.orders.atom_flags_perp[c] == atom_by_elements(a.table, c), spec);
      for (std::size_t x = 0; x < k; ++x) CHECK_MESSAGE(a.orders.leq_perp(x, c) == perp_by_elements(a.table, x, c), spec);
    }
  }
}

TEST_CASE("atom counts") {
  for (auto [spec, expected] : {std::pair{"G24", 2}, std::pair{"G25", 1}}) {
    const auto& a = analysed(spec);
    CHECK(coincidence_report(a.table, a.orders).nonreflection_atoms == static_cast<std::size_t>(expected));
    for (auto r : a.table.reflection_classes()) CHECK(a.orders.atom_flags_perp[r]);
  }
}

TEST_CASE("coincidence reports") {
  const auto g23 = coincidence_report(analysed("G23").table, analysed("G23").orders);
  CHECK(g23.length_ne_codim == 0);
  CHECK(g23.nonreflection_atoms == 0);
  CHECK(g23.max_length == 3);
  CHECK(g23.coincide);
  const auto g26 = coincidence_report(analysed("G26").table, analysed("G26").orders);
  CHECK(g26.length_ne_codim == 9);
  CHECK(g26.nonreflection_atoms == 5);
  CHECK(g26.max_length == 4);
  CHECK_FALSE(g26.coincide);

  const auto& a = analysed("G(3,1,3)");
  const auto r = coincidence_report(a.table, a.orders);
  const auto bfs = bfs_reflection_length(a.table);
  CHECK(r.coincide);
  CHECK(r.nonreflection_atoms == 0);
  CHECK(r.max_length == *std::max_element(bfs.begin(), bfs.end()));
}

TEST_CASE("cover relations") {
  CHECK(cover_relations(chain(3)) == std::vector<CoverEdge>{{0, 1}, {1, 2}});
  CHECK(cover_relations(chain(1)).empty());

  ClassRelation not_reflexive = chain(3);
  not_reflexive.set(1, 1, false);
  CHECK_THROWS_AS(validate_poset(not_reflexive, "r"), PosetViolation);
  ClassRelation cyclic = chain(2);
  cyclic.set(1, 0);
  CHECK_THROWS_AS(cover_relations(cyclic), PosetViolation);
  ClassRelation broken(3);
  for (std::size_t i = 0; i < 3; ++i) broken.set(i, i);
  broken.set(0, 1);
  broken.set(1, 2);
  CHECK_THROWS_AS(validate_poset(broken, "r"), PosetViolation);

  const auto& a = analysed("G(2,1,2)");
  const std::size_t k = a.table.num_classes();
  CHECK(k == 5);
  std::set<std::pair<std::size_t, std::size_t>> brute;
  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = 0; y < k; ++y) {
      if (x == y || !a.orders.leq_perp(x, y)) continue;
      bool empty = true;
      for (std::size_t z = 0; z < k; ++z)
        if (z != x && z != y && a.orders.leq_perp(x, z) && a.orders.leq_perp(z, y)) empty = false;
      if (empty) brute.emplace(x, y);
    }
  std::set<std::pair<std::size_t, std::size_t>> got;
  for (const auto& e : a.orders.covers_perp) got.emplace(e.lower, e.upper);
  CHECK(got == brute);
}

TEST_CASE("non-reflection groups are rejected by the layering") {
  const CycloNum z = CycloNum::root_of_unity(3, 1), zero(3);
  const auto spec = GroupSpec::explicit_gens({CycloMatrix(2, {z, zero, zero, z * z})}, "C3");
  const auto t = enumerate_group(spec);
  CHECK(t.order() == 3);
  CHECK_THROWS_AS(reflection_length_by_layers(t, cac_sweep(t)), InvalidArgument);
  CHECK_THROWS_AS(bfs_reflection_length(t), InvalidArgument);
}

TEST_CASE("trivial group") {
  const auto t = enumerate_group(GroupSpec::explicit_gens({}, "trivial"));
  const auto o = compute_order_tables(t);
  CHECK(o.length_by_class == std::vector<int>{0});
  CHECK(o.covers_perp.empty());
  const auto r = coincidence_report(t, o);
  CHECK(r.coincide);
  CHECK(r.max_length == 0);
}

TEST_CASE("order lemmas and the coincidence criteria") {
  const auto check_all = [](const std::string& spec, bool expected) {
    const auto& a = analysed(spec);
    const auto r = verify_order_lemmas(a.table, a.cac, a.orders);
    CHECK_MESSAGE(r.ok(), spec);
    CHECK_MESSAGE(r.equivalent, spec);
    CHECK_MESSAGE(r.length_equals_codim == expected, spec);
    CHECK_MESSAGE(r.atoms_length_equals_codim == expected, spec);
    CHECK_MESSAGE(r.atoms_are_reflections == expected, spec);
    CHECK_MESSAGE(r.every_element_descends == expected, spec);
  };
  check_all("G(3,1,2)", true);
  check_all("G(4,2,2)", false);
  check_all("G23", true);
  CHECK_FALSE(verify_order_lemmas(analysed("G23").table, analysed("G23").cac, analysed("G23").orders)
                  .non_descending_witness.has_value());

  const auto w = verify_order_lemmas(analysed("G8").table, analysed("G8").cac, analysed("G8").orders);
  REQUIRE(w.non_descending_witness.has_value());
  const auto& t8 = analysed("G8").table;
  for (auto s : t8.reflections()) CHECK(t8.codim(t8.mul(*w.non_descending_witness, s)) >= t8.codim(*w.non_descending_witness));
}

TEST_CASE("property sweep") {
  auto specs = small_gmpn(2000);
  for (auto& s : rank_two()) specs.push_back(s);
  for (const char* s : {"G23", "G24", "G25", "G26", "G27", "G28"}) specs.push_back(s);
  for (const auto& spec : specs) {
    const auto& a = analysed(spec);
    const auto& t = a.table;
    const auto& o = a.orders;
    const std::size_t k = t.num_classes();
    const auto lemmas = verify_order_lemmas(t, a.cac, o);
    CHECK_MESSAGE(lemmas.ok(), spec);
    CHECK_MESSAGE(lemmas.equivalent, spec);

    std::set<std::size_t> identity_covers;
    for (const auto& e : o.covers_perp)
      if (e.lower == 0) identity_covers.insert(e.upper);
    for (std::size_t c = 0; c < k; ++c) {
      CHECK_MESSAGE(o.codim_by_class[c] <= o.length_by_class[c], spec);
      CHECK_MESSAGE(static_cast<bool>(o.atom_flags_perp[c]) == identity_covers.contains(c), spec);
    }
  }
}

TEST_CASE("length parity when every reflection is an involution") {
  auto specs = small_gmpn(2000);
  for (auto& s : rank_two()) specs.push_back(s);
  for (const char* s : {"G23", "G24", "G27", "G28"}) specs.push_back(s);
  std::size_t checked = 0;
  for (const auto& spec : specs) {
    const auto& a = analysed(spec);
    const auto& t = a.table;
    const auto refl = t.reflections();
    if (!std::all_of(refl.begin(), refl.end(), [&](auto s) { return t.element_order(s) == 2; })) continue;
    ++checked;
    for (std::size_t c = 0; c < t.num_classes(); ++c) {
      const long sign = a.orders.length_by_class[c] % 2 ? -1 : 1;
      CHECK_MESSAGE(det(t.element(t.classes()[c].rep)) == CycloNum::from_int(t.conductor(), sign), spec);
    }
  }
  CHECK(checked > 10);
}

TEST_CASE("rank-two groups") {
  for (const auto& spec : rank_two()) {
    const auto& a = analysed(spec);
    const auto& t = a.table;
    const auto& o = a.orders;
    std::set<std::uint32_t> refl_orders;
    for (auto s : t.reflections()) refl_orders.insert(t.element_order(s));
    for (std::size_t c = 1; c < t.num_classes(); ++c) {
      const bool nonref_atom = o.atom_flags_perp[c] && !t.classes()[c].reflection;
      CHECK_MESSAGE(nonref_atom == (o.length_by_class[c] > o.codim_by_class[c]), spec);
      const auto& cl = t.classes()[c];
      if (cl.size == 1 && !refl_orders.contains(t.element_order(cl.rep)))
        CHECK_MESSAGE(o.length_by_class[c] > 2, spec);
    }
    CHECK_FALSE_MESSAGE(coincidence_report(t, o).coincide, spec);
  }
}

TEST_CASE("monomial atoms match the class-level atoms") {
  for (const auto& spec : small_gmpn(2000)) {
    const auto& a = analysed(spec);
    const auto& t = a.table;
    const auto params = *parse_group_spec(spec).gmpn;
    const auto atoms = gmpn_codim_atoms(params, kElementBudget);
    std::set<std::size_t> classes;
    for (const auto& atom : atoms) classes.insert(class_of_monomial(t, atom.element));
    std::size_t flagged_size = 0;
    for (std::size_t c = 0; c < t.num_classes(); ++c) {
      CHECK_MESSAGE(static_cast<bool>(a.orders.atom_flags_perp[c]) == classes.contains(c), spec);
      if (a.orders.atom_flags_perp[c]) flagged_size += t.classes()[c].size;
    }
    CHECK_MESSAGE(flagged_size == atoms.size(), spec);
  }
}

TEST_CASE("poset export") {
  const auto& a = analysed("G(2,1,2)");
  const auto dot = poset_dot(a.table, a.orders, PosetKind::Perp);
  CHECK(std::count(dot.begin(), dot.end(), '\n') == static_cast<long>(4 + 5 + a.orders.covers_perp.size()));
  CHECK(dot.find("label=\"0:0/0\"") != std::string::npos);
  const auto j = poset_json(a.table, a.orders);
  CHECK(j["schema"] == "reflen.poset/1");
  CHECK(j["group"] == "G(2,1,2)");
  CHECK(j["order"] == 8);
  CHECK(j["classes"].size() == 5);
  CHECK(j["leq_perp"].size() == 5);
  CHECK(j["covers"]["perp"].size() == a.orders.covers_perp.size());
  CHECK(j.dump() == poset_json(a.table, a.orders).dump());

  const auto t = enumerate_group(GroupSpec::explicit_gens({}, "trivial"));
  const auto o = compute_order_tables(t);
  const auto trivial = poset_dot(t, o, PosetKind::Both);
  CHECK(trivial.find("->") == std::string::npos);
  CHECK(trivial.find("c0 [") != std::string::npos);

  const auto& g24 = analysed("G24");
  std::size_t identity_covers = 0;
  for (const auto& e : g24.orders.covers_perp) identity_covers += e.lower == 0;
  CHECK(identity_covers == g24.table.reflection_classes().size() + 2);
}
