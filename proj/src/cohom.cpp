#include "reflen/cohom.hpp"

#include <algorithm>

#include "reflen/error.hpp"

namespace reflen {

namespace {

CycloVector unit_covector(std::size_t n, std::size_t i, std::uint32_t conductor) {
  CycloVector v(n, CycloNum(conductor));
  v[i] = CycloNum::from_int(conductor, 1);
  return v;
}

std::optional<int> root_exponent(const CycloNum& x, std::uint32_t conductor) {
  for (std::uint32_t k = 0; k < conductor; ++k)
    if (x == CycloNum::root_of_unity(conductor, k)) return static_cast<int>(k);
  return std::nullopt;
}

void check_form(const CycloMatrix& g, const std::vector<CycloVector>& vol, int codim) {
  const std::size_t n = g.dim();
  if (static_cast<int>(vol.size()) != codim) throw InvariantViolation("volume form has the wrong number of covectors");
  CycloMatrix stacked(n, g.conductor());
  for (std::size_t r = 0; r < vol.size(); ++r)
    for (std::size_t c = 0; c < n; ++c) stacked.set(r, c, vol[r][c]);
  if (static_cast<int>(mat_rank(stacked)) != codim) throw InvariantViolation("volume form covectors are dependent");
  for (const auto& v : fixed_and_perp_bases(g).fixed) {
    const CycloVector img = mat_vec(stacked, v);
    if (std::any_of(img.begin(), img.end(), [](const CycloNum& x) { return !x.is_zero(); }))
      throw InvariantViolation("volume form does not vanish on the fixed space");
  }
}

}  // namespace

std::optional<std::vector<CycloVector>> monomial_volume_form(const MonomialElt& g) {
  const std::size_t n = g.perm.size();
  const auto N = static_cast<std::uint32_t>(g.m);
  std::vector<CycloVector> vol;
  if (g.is_diagonal()) {
    for (std::size_t i = 0; i < n; ++i)
      if (g.exps[i] != 0) vol.push_back(unit_covector(n, i, N));
    return vol;
  }
  std::vector<std::size_t> moved;
  for (std::size_t i = 0; i < n; ++i)
    if (g.perm[i] != static_cast<int>(i)) moved.push_back(i);
  if (moved.size() != 2) return std::nullopt;
  const std::size_t i = moved[0], j = moved[1];
  for (std::size_t k = 0; k < n; ++k)
    if (k != i && k != j && g.exps[k] != 0) return std::nullopt;
  if ((g.exps[i] + g.exps[j]) % g.m != 0) return std::nullopt;
  // Fixed vectors satisfy x_j = zeta^{a_i} x_i, so v_i* - zeta^{a_j} v_j* cuts out the hyperplane.
  CycloVector f = unit_covector(n, i, N);
  f[j] = -CycloNum::root_of_unity(N, g.exps[j]);
  vol.push_back(std::move(f));
  return vol;
}

std::optional<MonomialElt> as_monomial(const CycloMatrix& g) {
  const std::size_t n = g.dim();
  std::vector<int> perm(n, -1), exps(n, 0);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < n; ++r) {
      if (g(r, c).is_zero()) continue;
      if (perm[c] >= 0) return std::nullopt;
      const auto k = root_exponent(g(r, c), g.conductor());
      if (!k) return std::nullopt;
      perm[c] = static_cast<int>(r);
      exps[c] = *k;
    }
    if (perm[c] < 0) return std::nullopt;
  }
  try {
    return MonomialElt(static_cast<int>(g.conductor()), std::move(perm), std::move(exps));
  } catch (const Error&) {
    return std::nullopt;
  }
}

CohomGenerator volume_form(const GroupTable& t, std::uint32_t g) {
  CohomGenerator out;
  out.tag = g;
  out.class_index = t.class_of(g);
  out.class_rep = t.classes()[out.class_index].rep;
  out.degree = t.codim(g);
  out.reflection = out.degree == 1;
  if (g == GroupTable::identity()) return out;
  const CycloMatrix m = t.element(g);
  std::optional<std::vector<CycloVector>> vol;
  if (const auto mono = as_monomial(m)) vol = monomial_volume_form(*mono);
  out.vol = vol ? std::move(*vol) : fixed_and_perp_bases(m).perp;
  check_form(m, out.vol, out.degree);
  return out;
}

GeneratorReport generator_set(const GroupTable& t, const std::vector<char>& atom_flags, GeneratorMode mode,
                              std::uint64_t budget) {
  if (atom_flags.size() != t.num_classes()) throw InvalidArgument("atom flags do not match the class count");
  if (mode == GeneratorMode::Element && t.order() > budget)
    throw BudgetExceeded(t.name() + " has order " + std::to_string(t.order()) +
                         "; element-mode generators are limited to " + std::to_string(budget) + " elements");
  GeneratorReport r;
  r.group = t.name();
  for (std::size_t c = 0; c < t.num_classes(); ++c) {
    if (!atom_flags[c]) continue;
    if (mode == GeneratorMode::Class) {
      r.generators.push_back(volume_form(t, t.classes()[c].rep));
    } else {
      for (std::uint32_t x : t.class_members(c)) r.generators.push_back(volume_form(t, x));
    }
  }
  for (const auto& gen : r.generators) {
    r.max_degree = std::max(r.max_degree, gen.degree);
    ++r.degree_histogram[gen.degree];
  }
  r.includes_degree_gt_one = r.max_degree > 1;
  return r;
}

bool twisting_nonzero(const GroupTable& t, std::uint32_t g, std::uint32_t h) {
  return t.codim(g) + t.codim(h) == t.codim(t.mul(g, h));
}

bool chain_twisting_nonzero(const GroupTable& t, std::span<const std::uint32_t> elements) {
  if (elements.empty()) throw InvalidArgument("chain_twisting_nonzero needs at least one element");
  std::uint32_t prefix = elements[0];
  for (std::size_t i = 1; i < elements.size(); ++i) {
    if (!twisting_nonzero(t, prefix, elements[i])) return false;
    prefix = t.mul(prefix, elements[i]);
  }
  return true;
}

nlohmann::ordered_json to_json(const GeneratorReport& r, GeneratorMode mode) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema"] = "reflen.cohom/1";
  j["group"] = r.group;
  ordered_json gens = ordered_json::array();
  for (const auto& g : r.generators) {
    ordered_json vol = ordered_json::array();
    for (const auto& f : g.vol) {
      ordered_json row = ordered_json::array();
      for (const auto& x : f) row.push_back(x.to_string());
      vol.push_back(std::move(row));
    }
    ordered_json e;
    e["class_rep"] = g.class_rep;
    if (mode == GeneratorMode::Element) e["element"] = g.tag;
    e["degree"] = g.degree;
    e["reflection"] = g.reflection;
    e["vol"] = std::move(vol);
    gens.push_back(std::move(e));
  }
  j["generators"] = std::move(gens);
  j["max_degree"] = r.max_degree;
  ordered_json hist = ordered_json::object();
  for (const auto& [d, count] : r.degree_histogram) hist[std::to_string(d)] = count;
  j["degree_histogram"] = std::move(hist);
  j["includes_degree_gt_one"] = r.includes_degree_gt_one;
  return j;
}

}  // namespace reflen
