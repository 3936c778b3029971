#include "reflen/matgroup.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <numeric>

#include "reflen/error.hpp"

namespace reflen {

namespace {

constexpr std::uint32_t kEmpty = std::numeric_limits<std::uint32_t>::max();

std::uint32_t mulmod(std::uint64_t a, std::uint64_t b, std::uint32_t q) {
  return static_cast<std::uint32_t>(a * b % q);
}

std::uint32_t powmod(std::uint64_t b, std::uint64_t e, std::uint32_t q) {
  std::uint64_t r = 1;
  b %= q;
  while (e) {
    if (e & 1) r = r * b % q;
    b = b * b % q;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

// Deterministic for 32-bit inputs with these bases.
bool is_prime32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u})
    if (n % p == 0) return n == p;
  std::uint32_t d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (std::uint32_t a : {2u, 7u, 61u}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = x * x % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t hash_image(const std::uint32_t* img, std::size_t len) {
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= img[i];
    h *= 0xbf58476d1ce4e5b9ull;
    h ^= h >> 31;
  }
  return h;
}

void mat_mul_mod(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out, std::size_t n,
                 std::uint32_t q) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::uint64_t s = 0;
      for (std::size_t k = 0; k < n; ++k) s += mulmod(a[i * n + k], b[k * n + j], q);
      out[i * n + j] = static_cast<std::uint32_t>(s % q);
    }
}

int rank_mod(std::vector<std::uint32_t> m, std::size_t n, std::uint32_t q) {
  int rank = 0;
  for (std::size_t col = 0; col < n && rank < static_cast<int>(n); ++col) {
    std::size_t piv = rank;
    while (piv < n && m[piv * n + col] == 0) ++piv;
    if (piv == n) continue;
    for (std::size_t c = 0; c < n; ++c) std::swap(m[piv * n + c], m[rank * n + c]);
    const std::uint32_t inv = powmod(m[rank * n + col], q - 2, q);
    for (std::size_t r = rank + 1; r < n; ++r) {
      const std::uint32_t f = mulmod(m[r * n + col], inv, q);
      if (!f) continue;
      for (std::size_t c = col; c < n; ++c)
        m[r * n + c] = static_cast<std::uint32_t>((m[r * n + c] + std::uint64_t{q} - mulmod(f, m[rank * n + c], q)) % q);
    }
    ++rank;
  }
  return rank;
}

std::uint32_t common_conductor(const std::vector<CycloMatrix>& gens) {
  std::uint32_t N = 1;
  for (const auto& g : gens) N = std::lcm(N, g.conductor());
  return N;
}

}  // namespace

// ---- specs ------------------------------------------------------------------

GroupSpec GroupSpec::monomial(GmpnParams p, std::uint64_t budget) {
  GroupSpec s;
  s.kind = Kind::Monomial;
  s.gmpn = p;
  s.budget = budget;
  return s;
}

GroupSpec GroupSpec::exceptional(int index, std::uint64_t budget) {
  if (!known_exceptional_order(index))
    throw InvalidArgument("no exceptional group G" + std::to_string(index) + " (expected 4..37)");
  GroupSpec s;
  s.kind = Kind::Exceptional;
  s.index = index;
  s.budget = budget;
  return s;
}

GroupSpec GroupSpec::explicit_gens(std::vector<CycloMatrix> gens, std::string label, std::uint64_t budget,
                                   std::size_t dim) {
  GroupSpec s;
  s.kind = Kind::Explicit;
  s.dim = gens.empty() ? dim : gens[0].dim();
  for (const auto& g : gens)
    if (g.dim() != s.dim) throw InvalidArgument("generators of different dimensions");
  s.generators = std::move(gens);
  s.label = std::move(label);
  s.budget = budget;
  return s;
}

std::string GroupSpec::name() const {
  switch (kind) {
    case Kind::Monomial: return gmpn->name();
    case Kind::Exceptional: return "G" + std::to_string(index);
    case Kind::Explicit: return label;
  }
  return label;
}

GroupSpec parse_group_spec(std::string_view text, std::uint64_t budget) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto parse_int = [&](std::string_view t) {
    int v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size() || t.empty())
      throw ParseError("bad group spec '" + std::string(text) + "'");
    return v;
  };
  std::string_view v = s;
  if (v.size() >= 2 && (v[0] == 'G' || v[0] == 'g') && v[1] == '(') {
    if (v.back() != ')') throw ParseError("bad group spec '" + std::string(text) + "'");
    std::string_view inner = v.substr(2, v.size() - 3);
    std::vector<int> parts;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = inner.find(',', pos);
      parts.push_back(parse_int(inner.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (parts.size() != 3) throw ParseError("G(m,p,n) needs three integers: '" + std::string(text) + "'");
    try {
      return GroupSpec::monomial(GmpnParams(parts[0], parts[1], parts[2]), budget);
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what());
    }
  }
  if (v.starts_with("ST")) v.remove_prefix(2);
  else if (v.starts_with("G_") || v.starts_with("g_")) v.remove_prefix(2);
  else if (!v.empty() && (v[0] == 'G' || v[0] == 'g')) v.remove_prefix(1);
  const int k = parse_int(v);
  if (!known_exceptional_order(k)) throw ParseError("no exceptional group with index " + std::to_string(k));
  return GroupSpec::exceptional(k, budget);
}

GroupSpec explicit_spec_from_json(const nlohmann::json& j, std::uint64_t budget) {
  try {
    std::vector<CycloMatrix> gens;
    for (const auto& g : j.at("generators")) {
      const std::size_t n = g.size();
      std::vector<CycloNum> entries;
      for (const auto& row : g) {
        if (row.size() != n) throw ParseError("generator matrix is not square");
        for (const auto& e : row)
          entries.push_back(e.is_number_integer() ? CycloNum::from_int(1, e.get<long>())
                                                  : parse_cyclo(e.get<std::string>()));
      }
      gens.emplace_back(n, std::move(entries));
    }
    const std::size_t dim = j.value("dim", gens.empty() ? std::size_t{1} : gens[0].dim());
    return GroupSpec::explicit_gens(std::move(gens), j.value("name", std::string("explicit")), budget, dim);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("explicit group: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("explicit group: ") + e.what());
  }
}

std::vector<CycloMatrix> spec_generators(const GroupSpec& spec) {
  std::vector<CycloMatrix> gens;
  switch (spec.kind) {
    case GroupSpec::Kind::Monomial:
      for (const auto& g : gmpn_generators(*spec.gmpn)) gens.push_back(mono_to_matrix(g));
      break;
    case GroupSpec::Kind::Exceptional: gens = load_exceptional(spec.index, spec.budget); break;
    case GroupSpec::Kind::Explicit: gens = spec.generators; break;
  }
  const std::uint32_t N = common_conductor(gens);
  for (auto& g : gens) g = g.embed(N);
  return gens;
}

std::string cache_key(const GroupSpec& spec) {
  std::string key = "reflen-group-v1|" + spec.name() + "|data:" + exceptional_data_version();
  if (spec.kind == GroupSpec::Kind::Explicit) {
    key += "|dim:" + std::to_string(spec.dim);
    for (const auto& g : spec.generators) key += "|" + g.canonical_key();
  }
  return key;
}

// ---- exact helpers -------------------------------------------------------------

int elt_codim(const CycloMatrix& g) {
  return static_cast<int>(mat_rank(g - CycloMatrix::identity(g.dim(), g.conductor())));
}

FixedPerp fixed_and_perp_bases(const CycloMatrix& g) {
  const CycloMatrix d = g - CycloMatrix::identity(g.dim(), g.conductor());
  return {kernel_basis(d), row_space_basis(d)};
}

// ---- modular field ------------------------------------------------------------

ModularField ModularField::choose(std::uint32_t conductor, std::span<const CycloMatrix> gens) {
  // Primes just below 2^31 keep every element index and class size invertible.
  const std::uint64_t top = (std::uint64_t{1} << 31) - 1;
  for (std::uint64_t k = (top - 1) / conductor; k > 0; --k) {
    const std::uint64_t cand = k * conductor + 1;
    if (cand < (std::uint64_t{1} << 30)) break;
    const auto q = static_cast<std::uint32_t>(cand);
    if (!is_prime32(q)) continue;
    bool ok = true;
    for (const auto& g : gens)
      for (const auto& e : g.entries())
        for (const auto& c : e.coeffs())
          if (mpz_divisible_ui_p(c.get_den_mpz_t(), q)) ok = false;
    if (!ok) continue;

    ModularField f;
    f.q = q;
    f.conductor = conductor;
    const auto factors = prime_factors(conductor);
    for (std::uint32_t a = 2;; ++a) {
      const std::uint32_t w = powmod(a, (q - 1) / conductor, q);
      bool primitive = true;
      for (std::uint32_t r : factors)
        if (powmod(w, conductor / r, q) == 1) primitive = false;
      if (primitive) {
        f.omega = w;
        return f;
      }
    }
  }
  throw InvalidArgument("no usable prime for conductor " + std::to_string(conductor));
}

std::uint32_t ModularField::reduce(const CycloNum& x0) const {
  const CycloNum x = x0.conductor() == conductor ? x0 : x0.embed(conductor);
  std::uint64_t acc = 0;
  std::uint64_t w = 1;
  mpz_class t;
  for (const auto& c : x.coeffs()) {
    if (c != 0) {
      if (mpz_divisible_ui_p(c.get_den_mpz_t(), q)) throw InvalidArgument("denominator divisible by the modulus");
      const std::uint64_t num = mpz_fdiv_ui(c.get_num_mpz_t(), q);
      const std::uint64_t den = mpz_fdiv_ui(c.get_den_mpz_t(), q);
      acc = (acc + mulmod(mulmod(num, powmod(den, q - 2, q), q), w, q)) % q;
    }
    w = mulmod(w, omega, q);
  }
  return static_cast<std::uint32_t>(acc);
}

std::vector<std::uint32_t> ModularField::reduce(const CycloMatrix& m) const {
  std::vector<std::uint32_t> out;
  out.reserve(m.entries().size());
  for (const auto& e : m.entries()) out.push_back(reduce(e));
  return out;
}

// ---- group table -------------------------------------------------------------

void GroupTable::rebuild_hash() {
  std::size_t cap = 16;
  while (cap < 2 * order() + 2) cap <<= 1;
  slots_.assign(cap, kEmpty);
  const std::size_t len = dim_ * dim_;
  for (std::uint32_t i = 0; i < order(); ++i) {
    std::size_t h = hash_image(images_.data() + std::size_t{i} * len, len) & (cap - 1);
    while (slots_[h] != kEmpty) h = (h + 1) & (cap - 1);
    slots_[h] = i;
  }
}

std::optional<std::uint32_t> GroupTable::index_of_image(std::span<const std::uint32_t> img) const {
  const std::size_t len = dim_ * dim_;
  if (img.size() != len || slots_.empty()) return std::nullopt;
  const std::size_t mask = slots_.size() - 1;
  std::size_t h = hash_image(img.data(), len) & mask;
  while (slots_[h] != kEmpty) {
    const std::uint32_t i = slots_[h];
    if (std::equal(img.begin(), img.end(), images_.begin() + std::size_t{i} * len)) return i;
    h = (h + 1) & mask;
  }
  return std::nullopt;
}

std::uint32_t GroupTable::insert_or_find(const std::uint32_t* img, bool& inserted) {
  const std::size_t len = dim_ * dim_;
  if (auto found = index_of_image({img, len})) {
    inserted = false;
    return *found;
  }
  inserted = true;
  const auto idx = static_cast<std::uint32_t>(order());
  images_.insert(images_.end(), img, img + len);
  parent_.push_back(0);
  via_gen_.push_back(kEmpty);
  if (2 * order() + 2 > slots_.size()) {
    rebuild_hash();
  } else {
    const std::size_t mask = slots_.size() - 1;
    std::size_t h = hash_image(img, len) & mask;
    while (slots_[h] != kEmpty) h = (h + 1) & mask;
    slots_[h] = idx;
  }
  return idx;
}

GroupTable GroupTable::enumerate(const GroupSpec& spec) {
  GroupTable t;
  t.name_ = spec.name();
  t.gens_ = spec_generators(spec);
  t.dim_ = t.gens_.empty() ? (spec.kind == GroupSpec::Kind::Monomial ? spec.gmpn->n : std::max<std::size_t>(spec.dim, 1))
                           : t.gens_[0].dim();
  t.conductor_ = common_conductor(t.gens_);
  for (const auto& g : t.gens_)
    if (mat_rank(g) != t.dim_) throw InvalidArgument(t.name_ + ": non-invertible generator");
  t.field_ = ModularField::choose(t.conductor_, t.gens_);
  for (const auto& g : t.gens_) t.gen_images_.push_back(t.field_.reduce(g));

  const std::size_t n = t.dim_;
  const std::size_t len = n * n;
  std::vector<std::uint32_t> id(len, 0);
  for (std::size_t i = 0; i < n; ++i) id[i * n + i] = 1;
  bool inserted = false;
  t.rebuild_hash();
  t.insert_or_find(id.data(), inserted);

  std::vector<std::uint32_t> buf(len), cur(len);
  for (std::uint32_t x = 0; x < t.order(); ++x) {
    std::copy_n(t.images_.begin() + std::size_t{x} * len, len, cur.begin());
    for (std::uint32_t s = 0; s < t.gen_images_.size(); ++s) {
      mat_mul_mod(t.gen_images_[s].data(), cur.data(), buf.data(), n, t.field_.q);
      const std::uint32_t y = t.insert_or_find(buf.data(), inserted);
      if (inserted) {
        t.parent_[y] = x;
        t.via_gen_[y] = s;
        if (t.order() > spec.budget)
          throw BudgetExceeded(t.name_ + ": closure exceeds budget of " + std::to_string(spec.budget) + " elements");
      }
    }
  }
  t.compute_inverses();
  t.compute_codims();
  t.compute_classes();
  return t;
}

GroupTable enumerate_group(const GroupSpec& spec) { return GroupTable::enumerate(spec); }

std::uint32_t GroupTable::mul(std::uint32_t a, std::uint32_t b) const {
  std::vector<std::uint32_t> buf(dim_ * dim_);
  return mul(a, b, buf);
}

std::uint32_t GroupTable::mul(std::uint32_t a, std::uint32_t b, std::span<std::uint32_t> scratch) const {
  mat_mul_mod(images_.data() + std::size_t{a} * dim_ * dim_, images_.data() + std::size_t{b} * dim_ * dim_,
              scratch.data(), dim_, field_.q);
  const auto r = index_of_image(scratch.first(dim_ * dim_));
  if (!r) throw InvariantViolation(name_ + ": product left the group table");
  return *r;
}

std::uint32_t GroupTable::element_order(std::uint32_t a) const {
  std::uint32_t k = 1;
  for (std::uint32_t x = a; x != identity(); x = mul(x, a)) ++k;
  return k;
}

void GroupTable::compute_inverses() {
  const std::size_t len = dim_ * dim_;
  std::vector<std::vector<std::uint32_t>> gen_inv;
  for (const auto& g : gens_) gen_inv.push_back(field_.reduce(mat_inverse(g)));
  inv_.assign(order(), 0);
  std::vector<std::uint32_t> buf(len);
  // x = s * p, so x^-1 = p^-1 * s^-1; parents precede children.
  for (std::uint32_t x = 1; x < order(); ++x) {
    mat_mul_mod(images_.data() + std::size_t{inv_[parent_[x]]} * len, gen_inv[via_gen_[x]].data(), buf.data(), dim_,
                field_.q);
    const auto r = index_of_image(buf);
    if (!r) throw InvariantViolation(name_ + ": inverse missing from the group table");
    inv_[x] = *r;
  }
}

void GroupTable::compute_codims() {
  const std::size_t len = dim_ * dim_;
  codim_.resize(order());
  std::vector<std::uint32_t> m(len);
  for (std::uint32_t x = 0; x < order(); ++x) {
    std::copy_n(images_.begin() + std::size_t{x} * len, len, m.begin());
    for (std::size_t i = 0; i < dim_; ++i) m[i * dim_ + i] = (m[i * dim_ + i] + field_.q - 1) % field_.q;
    // Exact: g has order prime to q, so its reduction is semisimple and the
    // fixed space keeps its dimension.
    codim_[x] = static_cast<std::uint8_t>(rank_mod(m, dim_, field_.q));
  }
}

void GroupTable::compute_classes() {
  const std::size_t len = dim_ * dim_;
  std::vector<std::vector<std::uint32_t>> gen_inv;
  for (const auto& g : gens_) gen_inv.push_back(field_.reduce(mat_inverse(g)));
  class_of_.assign(order(), kEmpty);
  classes_.clear();
  members_.clear();
  member_offset_.assign(1, 0);
  std::vector<std::uint32_t> tmp(len), buf(len);
  for (std::uint32_t x = 0; x < order(); ++x) {
    if (class_of_[x] != kEmpty) continue;
    const auto c = static_cast<std::uint32_t>(classes_.size());
    const std::size_t first = members_.size();
    class_of_[x] = c;
    members_.push_back(x);
    for (std::size_t k = first; k < members_.size(); ++k) {
      const std::uint32_t y = members_[k];
      for (std::size_t s = 0; s < gens_.size(); ++s) {
        mat_mul_mod(gen_images_[s].data(), images_.data() + std::size_t{y} * len, tmp.data(), dim_, field_.q);
        mat_mul_mod(tmp.data(), gen_inv[s].data(), buf.data(), dim_, field_.q);
        const auto z = index_of_image(buf);
        if (!z) throw InvariantViolation(name_ + ": conjugate missing from the group table");
        if (class_of_[*z] == kEmpty) {
          class_of_[*z] = c;
          members_.push_back(*z);
        }
      }
    }
    std::sort(members_.begin() + static_cast<std::ptrdiff_t>(first), members_.end());
    ClassInfo info;
    info.rep = x;
    info.size = static_cast<std::uint32_t>(members_.size() - first);
    info.codim = codim_[x];
    info.reflection = info.codim == 1;
    for (std::size_t k = first; k < members_.size(); ++k)
      if (codim_[members_[k]] != info.codim)
        throw InvariantViolation(name_ + ": codimension is not constant on a conjugacy class");
    classes_.push_back(info);
    member_offset_.push_back(members_.size());
  }
  for (const auto& info : classes_)
    if (elt_codim(element(info.rep)) != info.codim)
      throw InvariantViolation(name_ + ": modular and exact codimension disagree");
}

std::vector<std::uint32_t> GroupTable::reflections() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t x = 0; x < order(); ++x)
    if (codim_[x] == 1) out.push_back(x);
  return out;
}

std::vector<std::size_t> GroupTable::reflection_classes() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < classes_.size(); ++c)
    if (classes_[c].reflection) out.push_back(c);
  return out;
}

std::vector<std::uint32_t> GroupTable::word(std::uint32_t a) const {
  std::vector<std::uint32_t> w;
  for (std::uint32_t x = a; x != identity(); x = parent_[x]) w.push_back(via_gen_[x]);
  return w;
}

CycloMatrix GroupTable::element(std::uint32_t a) const {
  CycloMatrix m = CycloMatrix::identity(dim_, conductor_);
  for (std::uint32_t s : word(a)) m = m * gens_[s];
  return m;
}

std::optional<std::uint32_t> GroupTable::index_of(const CycloMatrix& m) const {
  if (m.dim() != dim_ || conductor_ % m.conductor() != 0) return std::nullopt;
  std::vector<std::uint32_t> img;
  try {
    img = field_.reduce(m.embed(conductor_));
  } catch (const InvalidArgument&) {
    return std::nullopt;
  }
  const auto idx = index_of_image(img);
  // A non-member can share an image with a member; confirm exactly.
  if (idx && element(*idx) == m.embed(conductor_)) return idx;
  return std::nullopt;
}

// ---- cache -------------------------------------------------------------------

namespace {

constexpr char kMagic[8] = {'R', 'F', 'L', 'N', 'G', 'T', '0', '1'};

template <class T>
void put(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <class T>
void put_vec(std::ostream& os, const std::vector<T>& v) {
  put<std::uint64_t>(os, v.size());
  os.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(T)));
}
void put_str(std::ostream& os, std::string_view s) {
  put<std::uint64_t>(os, s.size());
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}
template <class T>
bool get(std::istream& is, T& v) {
  return static_cast<bool>(is.read(reinterpret_cast<char*>(&v), sizeof(T)));
}
template <class T>
bool get_vec(std::istream& is, std::vector<T>& v) {
  std::uint64_t n = 0;
  if (!get(is, n) || n > (std::uint64_t{1} << 36)) return false;
  v.resize(n);
  return static_cast<bool>(is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(T))));
}
bool get_str(std::istream& is, std::string& s) {
  std::uint64_t n = 0;
  if (!get(is, n) || n > (std::uint64_t{1} << 32)) return false;
  s.resize(n);
  return static_cast<bool>(is.read(s.data(), static_cast<std::streamsize>(n)));
}

}  // namespace

void GroupTable::save(const std::filesystem::path& path, std::string_view key) const {
  std::filesystem::create_directories(path.parent_path());
  const auto tmp = path.string() + ".tmp" + std::to_string(reinterpret_cast<std::uintptr_t>(this));
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot write cache file " + tmp);
    os.write(kMagic, sizeof kMagic);
    put_str(os, key);
    put_str(os, name_);
    put<std::uint64_t>(os, dim_);
    put<std::uint32_t>(os, conductor_);
    put<std::uint32_t>(os, field_.q);
    put<std::uint32_t>(os, field_.omega);
    put<std::uint64_t>(os, gens_.size());
    for (const auto& g : gens_)
      for (const auto& e : g.entries()) put_str(os, e.to_string());
    put_vec(os, images_);
    put_vec(os, parent_);
    put_vec(os, via_gen_);
    put_vec(os, inv_);
    put_vec(os, codim_);
    put_vec(os, class_of_);
    put_vec(os, classes_);
    put_vec(os, members_);
    put_vec(os, member_offset_);
    if (!os) throw Error("failed writing cache file " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::optional<GroupTable> GroupTable::load(const std::filesystem::path& path, std::string_view key) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return std::nullopt;
  char magic[sizeof kMagic];
  if (!is.read(magic, sizeof magic) || !std::equal(magic, magic + sizeof magic, kMagic)) return std::nullopt;
  std::string stored;
  if (!get_str(is, stored) || stored != key) return std::nullopt;
  GroupTable t;
  std::uint64_t dim = 0, ngens = 0;
  if (!get_str(is, t.name_) || !get(is, dim) || !get(is, t.conductor_) || !get(is, t.field_.q) ||
      !get(is, t.field_.omega) || !get(is, ngens))
    return std::nullopt;
  t.dim_ = dim;
  t.field_.conductor = t.conductor_;
  try {
    for (std::uint64_t g = 0; g < ngens; ++g) {
      std::vector<CycloNum> entries;
      for (std::size_t k = 0; k < dim * dim; ++k) {
        std::string s;
        if (!get_str(is, s)) return std::nullopt;
        entries.push_back(parse_cyclo(s, t.conductor_));
      }
      t.gens_.emplace_back(dim, std::move(entries));
    }
  } catch (const Error&) {
    return std::nullopt;
  }
  if (!get_vec(is, t.images_) || !get_vec(is, t.parent_) || !get_vec(is, t.via_gen_) || !get_vec(is, t.inv_) ||
      !get_vec(is, t.codim_) || !get_vec(is, t.class_of_) || !get_vec(is, t.classes_) || !get_vec(is, t.members_) ||
      !get_vec(is, t.member_offset_))
    return std::nullopt;
  const std::size_t n = t.parent_.size();
  if (t.images_.size() != n * dim * dim || t.inv_.size() != n || t.codim_.size() != n || t.class_of_.size() != n ||
      t.member_offset_.size() != t.classes_.size() + 1 || t.members_.size() != n)
    return std::nullopt;
  for (const auto& g : t.gens_) t.gen_images_.push_back(t.field_.reduce(g));
  t.rebuild_hash();
  return t;
}

}  // namespace reflen
