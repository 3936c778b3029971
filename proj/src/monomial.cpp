#include "reflen/monomial.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

#include "reflen/error.hpp"

namespace reflen {

namespace {

int mod(long a, int m) {
  const long r = a % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

// Nonzero exponents of a diagonal element, in coordinate order.
std::vector<int> nonzero_exps(const MonomialElt& g) {
  std::vector<int> out;
  for (int a : g.exps)
    if (a != 0) out.push_back(a);
  return out;
}

bool p_connected_multiset(const std::vector<int>& c, int p) {
  if (c.empty()) return false;
  const std::size_t k = c.size();
  long total = 0;
  for (int x : c) total += x;
  if (total % p != 0) return false;
  const std::uint64_t full = (std::uint64_t{1} << k) - 1;
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    long s = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) s += c[i];
    if (s % p == 0) return false;
  }
  return true;
}

void check_compatible(const MonomialElt& g, const MonomialElt& h) {
  if (g.m != h.m || g.n() != h.n())
    throw InvalidArgument("monomial elements with different m or n");
}

}  // namespace

GmpnParams::GmpnParams(int m_, int p_, int n_) : m(m_), p(p_), n(n_) {
  if (m < 1 || p < 1 || n < 1) throw InvalidArgument("G(m,p,n) needs m, p, n >= 1");
  if (m % p != 0)
    throw InvalidArgument("G(" + std::to_string(m) + "," + std::to_string(p) + "," + std::to_string(n) +
                          "): p must divide m");
}

std::optional<std::uint64_t> GmpnParams::order() const {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t r = 1;
  for (int i = 0; i < n; ++i) {
    r = sat_mul(r, static_cast<std::uint64_t>(m));
    if (r == kMax) return std::nullopt;
  }
  for (int i = 2; i <= n; ++i) {
    r = sat_mul(r, static_cast<std::uint64_t>(i));
    if (r == kMax) return std::nullopt;
  }
  return r / static_cast<std::uint64_t>(p);
}

std::string GmpnParams::name() const {
  return "G(" + std::to_string(m) + "," + std::to_string(p) + "," + std::to_string(n) + ")";
}

MonomialElt MonomialElt::identity(int m, int n) {
  MonomialElt g;
  g.m = m;
  g.perm.resize(n);
  std::iota(g.perm.begin(), g.perm.end(), 0);
  g.exps.assign(n, 0);
  return g;
}

MonomialElt::MonomialElt(int m_, std::vector<int> perm_, std::vector<int> exps_)
    : m(m_), perm(std::move(perm_)), exps(std::move(exps_)) {
  if (m < 1) throw InvalidArgument("monomial modulus must be positive");
  if (perm.size() != exps.size()) throw InvalidArgument("perm and exps lengths differ");
  std::vector<bool> seen(perm.size(), false);
  for (int x : perm) {
    if (x < 0 || x >= n() || seen[x]) throw InvalidArgument("perm is not a bijection");
    seen[x] = true;
  }
  for (int& a : exps) a = mod(a, m);
}

bool MonomialElt::is_identity() const {
  for (int i = 0; i < n(); ++i)
    if (perm[i] != i || exps[i] != 0) return false;
  return true;
}

bool MonomialElt::is_diagonal() const {
  for (int i = 0; i < n(); ++i)
    if (perm[i] != i) return false;
  return true;
}

int MonomialElt::exponent_sum() const {
  long s = 0;
  for (int a : exps) s += a;
  return mod(s, m);
}

bool MonomialElt::in_group(const GmpnParams& g) const {
  return m == g.m && n() == g.n && exponent_sum() % g.p == 0;
}

nlohmann::json to_json(const MonomialElt& g) {
  std::vector<int> one_line(g.perm.size());
  for (std::size_t i = 0; i < g.perm.size(); ++i) one_line[i] = g.perm[i] + 1;
  nlohmann::json j;
  j["perm"] = one_line;
  j["exps"] = g.exps;
  j["m"] = g.m;
  return j;
}

MonomialElt monomial_from_json(const nlohmann::json& j) {
  try {
    std::vector<int> perm = j.at("perm").get<std::vector<int>>();
    for (int& x : perm) --x;
    return MonomialElt(j.at("m").get<int>(), std::move(perm), j.at("exps").get<std::vector<int>>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("monomial element: ") + e.what());
  }
}

MonomialElt mono_mul(const MonomialElt& g, const MonomialElt& h) {
  check_compatible(g, h);
  MonomialElt r;
  r.m = g.m;
  r.perm.resize(g.n());
  r.exps.resize(g.n());
  for (int i = 0; i < g.n(); ++i) {
    const int j = h.perm[i];
    r.perm[i] = g.perm[j];
    r.exps[i] = (h.exps[i] + g.exps[j]) % g.m;
  }
  return r;
}

MonomialElt mono_inv(const MonomialElt& g) {
  MonomialElt r;
  r.m = g.m;
  r.perm.resize(g.n());
  r.exps.resize(g.n());
  for (int i = 0; i < g.n(); ++i) {
    r.perm[g.perm[i]] = i;
    r.exps[g.perm[i]] = mod(-g.exps[i], g.m);
  }
  return r;
}

CycleSumProfile cycle_sums(const MonomialElt& g) {
  CycleSumProfile out;
  std::vector<bool> seen(g.n(), false);
  for (int start = 0; start < g.n(); ++start) {
    if (seen[start]) continue;
    CycleSum cs;
    long s = 0;
    for (int i = start; !seen[i]; i = g.perm[i]) {
      seen[i] = true;
      cs.orbit.push_back(i);
      s += g.exps[i];
    }
    std::sort(cs.orbit.begin(), cs.orbit.end());
    cs.sum = mod(s, g.m);
    out.push_back(std::move(cs));
  }
  return out;
}

int mono_codim(const MonomialElt& g) {
  int zero = 0;
  for (const auto& cs : cycle_sums(g))
    if (cs.sum == 0) ++zero;
  return g.n() - zero;
}

bool mono_det_is_one_diagonal(const MonomialElt& g) { return g.exponent_sum() == 0; }

CycloMatrix mono_to_matrix(const MonomialElt& g) {
  const auto N = static_cast<std::uint32_t>(g.m);
  CycloMatrix M(g.n(), N);
  for (int i = 0; i < g.n(); ++i) M.set(g.perm[i], i, CycloNum::root_of_unity(N, g.exps[i]));
  return M;
}

std::vector<MonomialElt> gmpn_generators(const GmpnParams& g) {
  std::vector<MonomialElt> gens;
  if (g.p < g.m) {
    auto t = MonomialElt::identity(g.m, g.n);
    t.exps[0] = g.p;
    gens.push_back(t);
  }
  if (g.n >= 2 && g.p > 1) {
    auto s = MonomialElt::identity(g.m, g.n);
    std::swap(s.perm[0], s.perm[1]);
    s.exps[0] = 1;
    s.exps[1] = g.m - 1;
    gens.push_back(s);
  }
  for (int i = 0; i + 1 < g.n; ++i) {
    auto s = MonomialElt::identity(g.m, g.n);
    std::swap(s.perm[i], s.perm[i + 1]);
    gens.push_back(s);
  }
  return gens;
}

std::vector<MonomialElt> enumerate_gmpn(const GmpnParams& g, std::uint64_t budget) {
  const auto order = g.order();
  if (!order || *order > budget)
    throw BudgetExceeded(g.name() + " has more than " + std::to_string(budget) + " elements");
  std::vector<MonomialElt> out;
  out.reserve(*order);
  std::vector<int> perm(g.n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<int> exps(g.n, 0);
    while (true) {
      long s = 0;
      for (int a : exps) s += a;
      if (s % g.p == 0) {
        MonomialElt e;
        e.m = g.m;
        e.perm = perm;
        e.exps = exps;
        out.push_back(std::move(e));
      }
      // base-m increment, last coordinate fastest
      int k = g.n - 1;
      while (k >= 0 && ++exps[k] == g.m) exps[k--] = 0;
      if (k < 0) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<MonomialElt> enumerate_reflections(const GmpnParams& g) {
  std::vector<MonomialElt> out;
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j)
      for (int a = 0; a < g.m; ++a) {
        auto s = MonomialElt::identity(g.m, g.n);
        std::swap(s.perm[i], s.perm[j]);
        s.exps[i] = a;
        s.exps[j] = mod(-a, g.m);
        out.push_back(std::move(s));
      }
  for (int i = 0; i < g.n; ++i)
    for (int a = g.p; a < g.m; a += g.p) {
      auto s = MonomialElt::identity(g.m, g.n);
      s.exps[i] = a;
      out.push_back(std::move(s));
    }
  return out;
}

bool is_p_connected(const MonomialElt& g, int p) {
  if (!g.is_diagonal() || g.is_identity()) return false;
  return p_connected_multiset(nonzero_exps(g), p);
}

std::vector<GmpnAtom> gmpn_codim_atoms(const GmpnParams& g, std::uint64_t budget) {
  std::vector<GmpnAtom> out;
  for (auto& e : enumerate_gmpn(g, budget)) {
    const int c = mono_codim(e);
    if (c == 1) {
      const AtomKind k = e.is_diagonal() ? AtomKind::DiagonalReflection : AtomKind::TranspositionReflection;
      out.push_back({std::move(e), k});
    } else if (is_p_connected(e, g.p) && !(c == 2 && mono_det_is_one_diagonal(e))) {
      out.push_back({std::move(e), AtomKind::PConnected});
    }
  }
  return out;
}

std::vector<AtomFamily> gmpn_atom_families(const GmpnParams& g) {
  std::vector<AtomFamily> out;
  if (g.n >= 2) {
    const auto pairs = static_cast<std::uint64_t>(g.n) * static_cast<std::uint64_t>(g.n - 1) / 2;
    out.push_back({AtomKind::TranspositionReflection, {}, sat_mul(pairs, static_cast<std::uint64_t>(g.m))});
  }
  for (int a = g.p; a < g.m; a += g.p)
    out.push_back({AtomKind::DiagonalReflection, {a}, static_cast<std::uint64_t>(g.n)});

  // Nonreflection p-connected multisets have size k with 2 <= k <= min(n, p),
  // since k > p forces a proper prefix sum divisible by p.
  const int kmax = std::min(g.n, g.p);
  std::vector<int> cur;
  auto arrangements = [&](const std::vector<int>& ms) {
    // n! / ((n-k)! * prod mult!)
    std::uint64_t r = 1;
    const int k = static_cast<int>(ms.size());
    for (int i = 0; i < k; ++i) r = sat_mul(r, static_cast<std::uint64_t>(g.n - i));
    std::map<int, int> mult;
    for (int x : ms) ++mult[x];
    for (const auto& [v, c] : mult)
      for (int i = 2; i <= c; ++i) r /= static_cast<std::uint64_t>(i);
    return r;
  };
  // Walk zero-sum-free multisets (nondecreasing over 1..m-1); appending v
  // makes one p-connected exactly when the total becomes divisible by p.
  // `sums` marks the residues mod p reached by nonempty sub-multisets.
  auto rec = [&](auto&& self, int lo, long total, const std::vector<bool>& sums) -> void {
    const int k = static_cast<int>(cur.size());
    for (int v = lo; v < g.m; ++v) {
      if (v % g.p == 0) continue;
      if (k >= 1 && (total + v) % g.p == 0) {
        if (!(k + 1 == 2 && (total + v) % g.m == 0)) {
          cur.push_back(v);
          out.push_back({AtomKind::PConnected, cur, arrangements(cur)});
          cur.pop_back();
        }
        continue;
      }
      if (k + 1 >= kmax) continue;
      std::vector<bool> next = sums;
      next[v % g.p] = true;
      for (int r = 0; r < g.p; ++r)
        if (sums[r]) next[(r + v) % g.p] = true;
      if (next[0]) continue;
      cur.push_back(v);
      self(self, v, total + v, next);
      cur.pop_back();
    }
  };
  if (kmax >= 2) rec(rec, 1, 0, std::vector<bool>(g.p, false));
  return out;
}

std::optional<MonomialElt> counterexample(const GmpnParams& g) {
  if (1 < g.p && g.p < g.m && g.n >= 2) {
    auto e = MonomialElt::identity(g.m, g.n);
    e.exps[0] = 1;
    e.exps[1] = g.p - 1;
    return e;
  }
  if (g.p == g.m && g.m >= 3 && g.n >= 3) {
    auto e = MonomialElt::identity(g.m, g.n);
    e.exps[0] = 1;
    e.exps[1] = mod(-2, g.m);
    e.exps[2] = 1;
    return e;
  }
  return std::nullopt;
}

std::string to_string(AtomKind k) {
  switch (k) {
    case AtomKind::TranspositionReflection: return "transposition-reflection";
    case AtomKind::DiagonalReflection: return "diagonal-reflection";
    case AtomKind::PConnected: return "p-connected";
  }
  return "?";
}

}  // namespace reflen
