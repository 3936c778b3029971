#include "reflen/cyclo.hpp"

#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

namespace reflen {

namespace {

struct FieldData {
  std::uint32_t phi = 0;
  // Monic cyclotomic polynomial, degree phi.
  std::vector<long> poly;
  // x^e mod Phi_N for e in [0, N).
  std::vector<std::vector<mpz_class>> powers;
};

std::vector<long> poly_mul(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Exact division of integer polynomials by a monic divisor.
std::vector<long> poly_div_exact(std::vector<long> num, const std::vector<long>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<long> q(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    const long t = num[k];
    q[k - dn] = t;
    for (std::size_t i = 0; i <= dn; ++i) num[k - dn + i] -= t * den[i];
  }
  return q;
}

// Caller holds the cache lock.
const FieldData& build_field_data(std::uint32_t n, std::map<std::uint32_t, FieldData>& cache) {
  if (auto it = cache.find(n); it != cache.end()) return it->second;

  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
  std::vector<long> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  std::vector<long> den{1};
  for (std::uint32_t d = 1; d < n; ++d)
    if (n % d == 0) den = poly_mul(den, build_field_data(d, cache).poly);

  FieldData fd;
  fd.poly = poly_div_exact(num, den);
  fd.phi = static_cast<std::uint32_t>(fd.poly.size() - 1);
  fd.powers.reserve(n);
  std::vector<mpz_class> cur(fd.phi, 0);
  cur[0] = 1;
  for (std::uint32_t e = 0; e < n; ++e) {
    fd.powers.push_back(cur);
    // multiply by x and reduce
    const mpz_class top = cur[fd.phi - 1];
    for (std::uint32_t i = fd.phi - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (std::uint32_t i = 0; i < fd.phi; ++i) cur[i] -= top * fd.poly[i];
  }
  return cache.emplace(n, std::move(fd)).first->second;
}

// std::map never invalidates references, so entries outlive the lock.
const FieldData& field_data(std::uint32_t n) {
  static std::mutex mu;
  static std::map<std::uint32_t, FieldData> cache;
  std::lock_guard lock(mu);
  return build_field_data(n, cache);
}

std::uint32_t lcm32(std::uint32_t a, std::uint32_t b) {
  return static_cast<std::uint32_t>(std::lcm<std::uint64_t>(a, b));
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

std::uint32_t euler_phi(std::uint32_t n) {
  std::uint32_t result = n;
  for (std::uint32_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

const std::vector<long>& cyclotomic_polynomial(std::uint32_t n) {
  if (n == 0) throw InvalidArgument("cyclotomic_polynomial: n must be positive");
  return field_data(n).poly;
}

CycloNum::CycloNum(std::uint32_t conductor) : conductor_(conductor) {
  if (conductor == 0) throw InvalidArgument("CycloNum: conductor must be positive");
  coeffs_.assign(field_data(conductor).phi, mpq_class(0));
}

CycloNum::CycloNum(std::uint32_t conductor, std::vector<mpq_class> coeffs)
    : conductor_(conductor), coeffs_(std::move(coeffs)) {
  if (conductor == 0) throw InvalidArgument("CycloNum: conductor must be positive");
  for (auto& c : coeffs_) c.canonicalize();
  reduce(coeffs_);
}

void CycloNum::reduce(std::vector<mpq_class>& poly) const {
  const FieldData& fd = field_data(conductor_);
  const std::size_t phi = fd.phi;
  for (std::size_t k = poly.size(); k-- > phi;) {
    if (poly[k] == 0) continue;
    const mpq_class t = poly[k];
    for (std::size_t i = 0; i <= phi; ++i) {
      const long c = fd.poly[i];
      if (c != 0) poly[k - phi + i] -= t * c;
    }
  }
  poly.resize(phi, mpq_class(0));
}

CycloNum CycloNum::rational(std::uint32_t conductor, const mpq_class& q) {
  CycloNum r(conductor);
  r.coeffs_[0] = q;
  r.coeffs_[0].canonicalize();
  return r;
}

CycloNum CycloNum::root_of_unity(std::uint32_t conductor, std::int64_t k) {
  if (conductor == 0) throw InvalidArgument("root_of_unity: conductor must be positive");
  CycloNum r(conductor);
  const auto& pw = field_data(conductor).powers[mod_floor(k, conductor)];
  for (std::size_t i = 0; i < pw.size(); ++i) r.coeffs_[i] = pw[i];
  return r;
}

bool CycloNum::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool CycloNum::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

bool CycloNum::is_one() const { return is_rational() && coeffs_[0] == 1; }

CycloNum CycloNum::embed(std::uint32_t m) const {
  if (m == 0 || m % conductor_ != 0)
    throw InvalidArgument("embed: target conductor " + std::to_string(m) +
                          " is not a multiple of " + std::to_string(conductor_));
  if (m == conductor_) return *this;
  const FieldData& fd = field_data(m);
  const std::uint32_t step = m / conductor_;
  CycloNum r(m);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j] == 0) continue;
    const auto& pw = fd.powers[(j * step) % m];
    for (std::size_t i = 0; i < pw.size(); ++i)
      if (pw[i] != 0) r.coeffs_[i] += coeffs_[j] * pw[i];
  }
  return r;
}

CycloNum CycloNum::galois(std::int64_t k) const {
  if (std::gcd<std::int64_t>(mod_floor(k, conductor_), conductor_) != 1 && conductor_ > 1)
    throw InvalidArgument("galois: exponent not coprime to conductor");
  const FieldData& fd = field_data(conductor_);
  CycloNum r(conductor_);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j] == 0) continue;
    const auto& pw = fd.powers[mod_floor(static_cast<std::int64_t>(j) * k, conductor_)];
    for (std::size_t i = 0; i < pw.size(); ++i)
      if (pw[i] != 0) r.coeffs_[i] += coeffs_[j] * pw[i];
  }
  return r;
}

mpq_class CycloNum::norm() const {
  CycloNum prod = CycloNum::from_int(conductor_, 1);
  for (std::uint32_t k = 1; k <= conductor_; ++k)
    if (std::gcd(k, conductor_) == 1) prod *= galois(k);
  if (!prod.is_rational()) throw InvariantViolation("norm: product of conjugates is not rational");
  return prod.coeffs_[0];
}

CycloNum CycloNum::inverse() const {
  if (is_zero()) throw InvalidArgument("division by zero in Q(zeta_" + std::to_string(conductor_) + ")");
  if (is_rational()) return rational(conductor_, 1 / coeffs_[0]);
  CycloNum others = CycloNum::from_int(conductor_, 1);
  for (std::uint32_t k = 2; k <= conductor_; ++k)
    if (std::gcd(k, conductor_) == 1) others *= galois(k);
  const CycloNum full = *this * others;
  if (!full.is_rational()) throw InvariantViolation("inverse: norm is not rational");
  return others * rational(conductor_, 1 / full.coeffs_[0]);
}

CycloNum CycloNum::operator-() const {
  CycloNum r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CycloNum& CycloNum::operator+=(const CycloNum& o) {
  if (o.conductor_ != conductor_) {
    const std::uint32_t m = lcm32(conductor_, o.conductor_);
    *this = embed(m);
    return *this += o.embed(m);
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

CycloNum& CycloNum::operator-=(const CycloNum& o) {
  if (o.conductor_ != conductor_) {
    const std::uint32_t m = lcm32(conductor_, o.conductor_);
    *this = embed(m);
    return *this -= o.embed(m);
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

CycloNum operator*(const CycloNum& a, const CycloNum& b) {
  if (a.conductor_ != b.conductor_) {
    const std::uint32_t m = lcm32(a.conductor_, b.conductor_);
    return a.embed(m) * b.embed(m);
  }
  const std::size_t phi = a.coeffs_.size();
  CycloNum r(a.conductor_);
  if (a.is_zero() || b.is_zero()) return r;
  std::vector<mpq_class> prod(2 * phi - 1, mpq_class(0));
  for (std::size_t i = 0; i < phi; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < phi; ++j)
      if (b.coeffs_[j] != 0) prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  r.reduce(prod);
  r.coeffs_ = std::move(prod);
  return r;
}

CycloNum& CycloNum::operator*=(const CycloNum& o) { return *this = *this * o; }

CycloNum& CycloNum::operator/=(const CycloNum& o) { return *this = *this * o.inverse(); }

bool operator==(const CycloNum& a, const CycloNum& b) {
  if (a.conductor_ != b.conductor_) {
    const std::uint32_t m = lcm32(a.conductor_, b.conductor_);
    return a.embed(m).coeffs_ == b.embed(m).coeffs_;
  }
  return a.coeffs_ == b.coeffs_;
}

std::string CycloNum::to_string() const {
  std::string out;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    const mpq_class& c = coeffs_[j];
    if (c == 0) continue;
    std::string term;
    const bool neg = c < 0;
    const mpq_class mag = neg ? mpq_class(-c) : c;
    if (j == 0) {
      term = mag.get_str();
    } else {
      std::string root = "E(" + std::to_string(conductor_) + ")";
      if (j > 1) root += "^" + std::to_string(j);
      term = (mag == 1) ? root : mag.get_str() + "*" + root;
    }
    if (neg)
      out += "-";
    else if (!out.empty())
      out += "+";
    out += term;
  }
  return out.empty() ? "0" : out;
}

std::ostream& operator<<(std::ostream& os, const CycloNum& a) { return os << a.to_string(); }

namespace {

class CycloParser {
public:
  explicit CycloParser(std::string_view s) : s_(s) {}

  struct Term {
    bool negative = false;
    mpq_class coeff = 1;
    std::uint32_t root = 0;  // 0 means rational term
    std::int64_t exponent = 1;
  };

  std::vector<Term> parse() {
    std::vector<Term> terms;
    skip_ws();
    if (pos_ == s_.size()) fail("empty expression");
    bool first = true;
    while (pos_ < s_.size()) {
      Term t;
      skip_ws();
      if (peek('+')) {
        ++pos_;
      } else if (peek('-')) {
        t.negative = true;
        ++pos_;
      } else if (!first) {
        fail("expected + or -");
      }
      skip_ws();
      if (peek('E')) {
        parse_root(t);
      } else {
        t.coeff = parse_rational();
        skip_ws();
        if (peek('*')) {
          ++pos_;
          skip_ws();
          parse_root(t);
        }
      }
      terms.push_back(t);
      first = false;
      skip_ws();
    }
    return terms;
  }

private:
  bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("cyclotomic text '" + std::string(s_) + "': " + what + " at offset " +
                     std::to_string(pos_));
  }
  std::int64_t parse_int() {
    skip_ws();
    bool neg = false;
    if (peek('-')) {
      neg = true;
      ++pos_;
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    const std::int64_t v = std::stoll(std::string(s_.substr(start, pos_ - start)));
    return neg ? -v : v;
  }
  mpq_class parse_rational() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/'))
      ++pos_;
    if (start == pos_) fail("expected rational");
    mpq_class q;
    if (q.set_str(std::string(s_.substr(start, pos_ - start)), 10) != 0) fail("bad rational");
    if (q.get_den() == 0) fail("zero denominator");
    q.canonicalize();
    return q;
  }
  void parse_root(Term& t) {
    if (!peek('E')) fail("expected E(");
    ++pos_;
    skip_ws();
    if (!peek('(')) fail("expected (");
    ++pos_;
    const std::int64_t n = parse_int();
    if (n <= 0) fail("root order must be positive");
    skip_ws();
    if (!peek(')')) fail("expected )");
    ++pos_;
    t.root = static_cast<std::uint32_t>(n);
    skip_ws();
    if (peek('^')) {
      ++pos_;
      t.exponent = parse_int();
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

CycloNum parse_cyclo(std::string_view text, std::uint32_t min_conductor) {
  const auto terms = CycloParser(text).parse();
  std::uint32_t n = std::max<std::uint32_t>(min_conductor, 1);
  for (const auto& t : terms)
    if (t.root != 0) n = lcm32(n, t.root);
  CycloNum result(n);
  for (const auto& t : terms) {
    CycloNum term = CycloNum::rational(n, t.negative ? mpq_class(-t.coeff) : t.coeff);
    if (t.root != 0) term *= CycloNum::root_of_unity(n, t.exponent * (n / t.root));
    result += term;
  }
  return result;
}

// ---------------------------------------------------------------------------

CycloMatrix::CycloMatrix(std::size_t dim, std::uint32_t conductor)
    : dim_(dim), conductor_(conductor), entries_(dim * dim, CycloNum(conductor)) {}

CycloMatrix::CycloMatrix(std::size_t dim, std::vector<CycloNum> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (entries_.size() != dim * dim)
    throw InvalidArgument("CycloMatrix: expected " + std::to_string(dim * dim) + " entries");
  conductor_ = 1;
  for (const auto& e : entries_) conductor_ = lcm32(conductor_, e.conductor());
  for (auto& e : entries_)
    if (e.conductor() != conductor_) e = e.embed(conductor_);
}

CycloMatrix CycloMatrix::identity(std::size_t dim, std::uint32_t conductor) {
  CycloMatrix m(dim, conductor);
  for (std::size_t i = 0; i < dim; ++i) m.entries_[i * dim + i] = CycloNum::from_int(conductor, 1);
  return m;
}

void CycloMatrix::set(std::size_t r, std::size_t c, CycloNum v) {
  if (v.conductor() != conductor_) {
    if (conductor_ % v.conductor() != 0) {
      *this = embed(lcm32(conductor_, v.conductor()));
    }
    v = v.embed(conductor_);
  }
  entries_[r * dim_ + c] = std::move(v);
}

CycloMatrix CycloMatrix::embed(std::uint32_t m) const {
  if (m == conductor_) return *this;
  CycloMatrix r(dim_, m);
  for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i].embed(m);
  return r;
}

namespace {
std::pair<CycloMatrix, CycloMatrix> common(const CycloMatrix& a, const CycloMatrix& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("matrix dimension mismatch");
  const std::uint32_t m = lcm32(a.conductor(), b.conductor());
  return {a.embed(m), b.embed(m)};
}
}  // namespace

CycloMatrix operator*(const CycloMatrix& a0, const CycloMatrix& b0) {
  if (a0.conductor() != b0.conductor()) {
    auto [a, b] = common(a0, b0);
    return a * b;
  }
  if (a0.dim_ != b0.dim_) throw InvalidArgument("matrix dimension mismatch");
  const std::size_t n = a0.dim_;
  CycloMatrix r(n, a0.conductor_);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const CycloNum& aik = a0.entries_[i * n + k];
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const CycloNum& bkj = b0.entries_[k * n + j];
        if (bkj.is_zero()) continue;
        r.entries_[i * n + j] += aik * bkj;
      }
    }
  return r;
}

CycloMatrix operator+(const CycloMatrix& a0, const CycloMatrix& b0) {
  auto [a, b] = common(a0, b0);
  for (std::size_t i = 0; i < a.entries_.size(); ++i) a.entries_[i] += b.entries_[i];
  return a;
}

CycloMatrix operator-(const CycloMatrix& a0, const CycloMatrix& b0) {
  auto [a, b] = common(a0, b0);
  for (std::size_t i = 0; i < a.entries_.size(); ++i) a.entries_[i] -= b.entries_[i];
  return a;
}

bool operator==(const CycloMatrix& a0, const CycloMatrix& b0) {
  if (a0.dim_ != b0.dim_) return false;
  auto [a, b] = common(a0, b0);
  return a.entries_ == b.entries_;
}

CycloMatrix CycloMatrix::scaled(const CycloNum& s) const {
  const std::uint32_t m = lcm32(conductor_, s.conductor());
  CycloMatrix r = embed(m);
  const CycloNum se = s.embed(m);
  for (auto& e : r.entries_) e *= se;
  return r;
}

CycloMatrix CycloMatrix::conj_transpose() const {
  CycloMatrix r(dim_, conductor_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) r.entries_[j * dim_ + i] = entries_[i * dim_ + j].conj();
  return r;
}

CycloNum CycloMatrix::trace() const {
  CycloNum t(conductor_);
  for (std::size_t i = 0; i < dim_; ++i) t += entries_[i * dim_ + i];
  return t;
}

bool CycloMatrix::is_identity() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) {
      const CycloNum& e = entries_[i * dim_ + j];
      if (i == j ? !e.is_one() : !e.is_zero()) return false;
    }
  return true;
}

std::string CycloMatrix::canonical_key() const {
  std::string key = std::to_string(dim_) + "|" + std::to_string(conductor_);
  for (const auto& e : entries_) {
    key += '|';
    key += e.to_string();
  }
  return key;
}

// ---------------------------------------------------------------------------

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(std::vector<CycloVector>& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    const CycloNum inv = rows[r][c].inverse();
    for (std::size_t j = c; j < cols; ++j)
      if (!rows[r][j].is_zero()) rows[r][j] *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      const CycloNum f = rows[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (!rows[r][j].is_zero()) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<CycloVector> to_rows(const CycloMatrix& m) {
  std::vector<CycloVector> rows(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) rows[i].push_back(m(i, j));
  return rows;
}

}  // namespace

std::size_t mat_rank(const CycloMatrix& m) {
  auto rows = to_rows(m);
  // Forward elimination only; pivot is the first nonzero entry in column order.
  std::size_t r = 0;
  const std::size_t n = m.dim();
  for (std::size_t c = 0; c < n && r < n; ++c) {
    std::size_t p = r;
    while (p < n && rows[p][c].is_zero()) ++p;
    if (p == n) continue;
    std::swap(rows[r], rows[p]);
    const CycloNum inv = rows[r][c].inverse();
    for (std::size_t i = r + 1; i < n; ++i) {
      if (rows[i][c].is_zero()) continue;
      const CycloNum f = rows[i][c] * inv;
      for (std::size_t j = c; j < n; ++j)
        if (!rows[r][j].is_zero()) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

std::vector<CycloVector> kernel_basis(const CycloMatrix& m) {
  auto rows = to_rows(m);
  const std::size_t n = m.dim();
  const auto pivots = rref(rows, n);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<CycloVector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    CycloVector v(n, CycloNum(m.conductor()));
    v[f] = CycloNum::from_int(m.conductor(), 1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<CycloVector> row_space_basis(const CycloMatrix& m) {
  auto rows = to_rows(m);
  const auto pivots = rref(rows, m.dim());
  rows.resize(pivots.size());
  return rows;
}

CycloMatrix mat_inverse(const CycloMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<CycloVector> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i].push_back(m(i, j));
    for (std::size_t j = 0; j < n; ++j)
      rows[i].push_back(CycloNum::from_int(m.conductor(), i == j ? 1 : 0));
  }
  const auto pivots = rref(rows, 2 * n);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw InvalidArgument("mat_inverse: singular matrix");
  CycloMatrix r(n, m.conductor());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r.set(i, j, rows[i][n + j]);
  return r;
}

CycloVector mat_vec(const CycloMatrix& m, const CycloVector& v) {
  if (v.size() != m.dim()) throw InvalidArgument("mat_vec: dimension mismatch");
  CycloVector out(m.dim(), CycloNum(m.conductor()));
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      if (!m(i, j).is_zero() && !v[j].is_zero()) out[i] += m(i, j) * v[j];
  return out;
}

}  // namespace reflen
