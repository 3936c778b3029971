// Exact arithmetic in cyclotomic fields Q(zeta_N) and exact linear algebra
// over them.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "reflen/error.hpp"

namespace reflen {

/// Euler's totient.
std::uint32_t euler_phi(std::uint32_t n);

/// Coefficients of the N-th cyclotomic polynomial, lowest degree first.
const std::vector<long>& cyclotomic_polynomial(std::uint32_t n);

/// An element of Q(zeta_N) written in the power basis 1, z, ..., z^{phi(N)-1}
/// modulo the N-th cyclotomic polynomial. The representation is canonical,
/// so structural equality is field equality. Mixed-conductor arithmetic
/// embeds both operands into the lcm conductor.
class CycloNum {
public:
  CycloNum() : CycloNum(1) {}
  explicit CycloNum(std::uint32_t conductor);
  CycloNum(std::uint32_t conductor, std::vector<mpq_class> coeffs);

  static CycloNum rational(std::uint32_t conductor, const mpq_class& q);
  static CycloNum from_int(std::uint32_t conductor, long v) {
    return rational(conductor, mpq_class(v));
  }
  static CycloNum root_of_unity(std::uint32_t conductor, std::int64_t k);

  std::uint32_t conductor() const { return conductor_; }
  std::span<const mpq_class> coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;

  /// Same field element with conductor `m`; `m` must be a multiple of
  /// conductor().
  CycloNum embed(std::uint32_t m) const;

  /// Image under zeta -> zeta^k, gcd(k, N) = 1.
  CycloNum galois(std::int64_t k) const;
  CycloNum conj() const { return galois(-1); }

  /// Product of all Galois conjugates; always rational.
  mpq_class norm() const;
  CycloNum inverse() const;

  CycloNum operator-() const;
  CycloNum& operator+=(const CycloNum& o);
  CycloNum& operator-=(const CycloNum& o);
  CycloNum& operator*=(const CycloNum& o);
  CycloNum& operator/=(const CycloNum& o);

  friend CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
  friend CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }
  friend CycloNum operator*(const CycloNum& a, const CycloNum& b);
  friend CycloNum operator/(CycloNum a, const CycloNum& b) { return a /= b; }
  friend bool operator==(const CycloNum& a, const CycloNum& b);

  /// GAP-style text, e.g. "-1/2+E(4)" or "E(8)+E(8)^3". Parsed back by
  /// parse_cyclo().
  std::string to_string() const;

private:
  void reduce(std::vector<mpq_class>& poly) const;

  std::uint32_t conductor_ = 1;
  std::vector<mpq_class> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const CycloNum& a);

/// Parses the to_string() grammar: a sum of terms `[+-][r*]E(k)[^e]` or
/// `[+-]r` with r rational. The result has the lcm of all k (and of
/// `min_conductor`) as its conductor. Throws ParseError.
CycloNum parse_cyclo(std::string_view text, std::uint32_t min_conductor = 1);

/// Square matrix over one cyclotomic field, row-major.
class CycloMatrix {
public:
  CycloMatrix() = default;
  CycloMatrix(std::size_t dim, std::uint32_t conductor);
  /// Entries are embedded into their common lcm conductor.
  CycloMatrix(std::size_t dim, std::vector<CycloNum> entries);

  static CycloMatrix identity(std::size_t dim, std::uint32_t conductor);

  std::size_t dim() const { return dim_; }
  std::uint32_t conductor() const { return conductor_; }

  const CycloNum& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * dim_ + c];
  }
  void set(std::size_t r, std::size_t c, CycloNum v);
  std::span<const CycloNum> entries() const { return entries_; }

  CycloMatrix embed(std::uint32_t m) const;

  friend CycloMatrix operator*(const CycloMatrix& a, const CycloMatrix& b);
  friend CycloMatrix operator+(const CycloMatrix& a, const CycloMatrix& b);
  friend CycloMatrix operator-(const CycloMatrix& a, const CycloMatrix& b);
  friend bool operator==(const CycloMatrix& a, const CycloMatrix& b);

  CycloMatrix scaled(const CycloNum& s) const;
  CycloMatrix conj_transpose() const;
  CycloNum trace() const;
  bool is_identity() const;

  /// Canonical text of all entries, row-major; usable as a hash key.
  std::string canonical_key() const;

private:
  std::size_t dim_ = 0;
  std::uint32_t conductor_ = 1;
  std::vector<CycloNum> entries_;
};

using CycloVector = std::vector<CycloNum>;

/// Rank by exact Gaussian elimination.
std::size_t mat_rank(const CycloMatrix& m);

/// Basis of {v : M v = 0}, one vector per free column of the reduced row
/// echelon form.
std::vector<CycloVector> kernel_basis(const CycloMatrix& m);

/// Nonzero rows of the reduced row echelon form of M. Each row has a leading
/// 1 in its pivot column.
std::vector<CycloVector> row_space_basis(const CycloMatrix& m);

/// Throws InvalidArgument for singular input.
CycloMatrix mat_inverse(const CycloMatrix& m);

CycloVector mat_vec(const CycloMatrix& m, const CycloVector& v);

}  // namespace reflen
