#pragma once

// Arithmetic in F2[x] and in the ring of circulants R_l = F2[x]/(x^l - 1).
//
// Circulant convention: the ring element c(x) = sum c_i x^i expands to the
// l x l binary matrix whose first column is (c_0, ..., c_{l-1}); column j is
// column 0 cyclically shifted down by j. Under this convention
// expand(a*b) = expand(a) * expand(b) and expand(c*) = expand(c)^T, where c*
// is the transposition map below.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qldpc/bitmatrix.hpp"

namespace qldpc {

/// Polynomial over F2 of arbitrary degree. Bit i holds the coefficient of x^i.
class DensePoly {
 public:
  DensePoly() = default;
  static DensePoly from_exponents(std::span<const std::size_t> exponents);
  static DensePoly from_exponents(std::initializer_list<std::size_t> exponents);
  static DensePoly monomial(std::size_t degree);
  static DensePoly one() { return monomial(0); }
  /// x^l - 1 (= x^l + 1 over F2).
  static DensePoly x_pow_minus_one(std::size_t l);

  bool is_zero() const noexcept { return words_.empty(); }
  /// Degree of the polynomial; -1 for the zero polynomial.
  long degree() const noexcept;
  bool coeff(std::size_t i) const noexcept;
  void set_coeff(std::size_t i, bool value);
  std::size_t weight() const noexcept;
  std::vector<std::size_t> exponents() const;

  DensePoly& operator+=(const DensePoly& other);
  friend DensePoly operator+(DensePoly a, const DensePoly& b) { return a += b; }
  friend DensePoly operator*(const DensePoly& a, const DensePoly& b);
  bool operator==(const DensePoly& other) const = default;

  /// Quotient and remainder of euclidean division. Throws on division by zero.
  static std::pair<DensePoly, DensePoly> divmod(const DensePoly& num, const DensePoly& den);
  friend DensePoly operator%(const DensePoly& a, const DensePoly& b) { return divmod(a, b).second; }
  friend DensePoly operator/(const DensePoly& a, const DensePoly& b) { return divmod(a, b).first; }

  /// Packed low 64 coefficients; requires degree < 64.
  std::uint64_t to_word() const;
  static DensePoly from_word(std::uint64_t bits);

  /// Human-readable form such as "x^7+x+1".
  std::string to_string() const;

 private:
  void trim() noexcept;
  std::vector<Word> words_;  // no trailing zero words
};

/// Monic gcd over F2[x] (monic is automatic in characteristic 2).
DensePoly poly_gcd(const DensePoly& p, const DensePoly& q);

/// Element of R_l = F2[x]/(x^l - 1).
class RingPoly {
 public:
  RingPoly() = default;
  explicit RingPoly(std::size_t l) : coeffs_(l) {}
  RingPoly(std::size_t l, std::span<const std::size_t> exponents);
  RingPoly(std::size_t l, std::initializer_list<std::size_t> exponents);
  /// Reduces an arbitrary polynomial modulo x^l - 1.
  static RingPoly from_dense(std::size_t l, const DensePoly& p);

  std::size_t size() const noexcept { return coeffs_.size(); }
  bool coeff(std::size_t i) const noexcept { return coeffs_.get(i); }
  void set_coeff(std::size_t i, bool value = true) { coeffs_.set(i, value); }
  bool is_zero() const noexcept { return coeffs_.none(); }
  std::size_t weight() const noexcept { return coeffs_.weight(); }
  std::vector<std::size_t> exponents() const { return coeffs_.support(); }
  const BitVector& bits() const noexcept { return coeffs_; }
  DensePoly to_dense() const;

  RingPoly& operator+=(const RingPoly& other);
  friend RingPoly operator+(RingPoly a, const RingPoly& b) { return a += b; }
  bool operator==(const RingPoly& other) const = default;

 private:
  BitVector coeffs_;
};

/// a(x) b(x) mod x^l - 1. Throws SizeMismatch when the ring sizes differ.
RingPoly cyclic_mul(const RingPoly& a, const RingPoly& b);
/// c(x) -> c*(x) = sum c_i x^{l-i}: the ring automorphism matching matrix transposition.
RingPoly transpose_poly(const RingPoly& c);
BitMatrix circulant_expand(const RingPoly& c);

/// m x n matrix over R_l.
class QcMatrix {
 public:
  QcMatrix() = default;
  QcMatrix(std::size_t m, std::size_t n, std::size_t l);

  std::size_t rows() const noexcept { return m_; }
  std::size_t cols() const noexcept { return n_; }
  std::size_t circulant_size() const noexcept { return l_; }

  const RingPoly& at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  RingPoly& at(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, RingPoly p);

  /// Binary (m l) x (n l) block matrix.
  BitMatrix expand() const;
  /// A* with (A*)_{ij} = transpose_poly(A_{ji}); expands to the binary transpose.
  QcMatrix conjugate_transpose() const;

 private:
  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::size_t l_ = 0;
  std::vector<RingPoly> entries_;
};

struct IrreducibleFactor {
  DensePoly poly;
  std::size_t degree = 0;
};

/// x^l - 1 = prod f_i^{2^e} with l = 2^e l', f_i distinct irreducibles.
struct Factorization {
  std::size_t l = 0;
  std::size_t odd_part = 0;
  std::size_t two_exponent = 0;
  std::vector<IrreducibleFactor> factors;
  std::size_t multiplicity() const noexcept { return std::size_t{1} << two_exponent; }
};

/// Cyclotomic cosets of 2 modulo `odd_modulus`, each sorted, ordered by least element.
std::vector<std::vector<std::size_t>> cyclotomic_cosets(std::size_t odd_modulus);

/// Factors x^l - 1 by splitting x^{l'} - 1 with the coset idempotents of R_{l'}.
Factorization factor_xl_minus_1(std::size_t l);
/// Cached, shareable factorization for repeated use.
std::shared_ptr<const Factorization> cached_factorization(std::size_t l);

/// F_i = F2[x]/(f_i) with elements packed in a machine word (deg f_i <= 63).
class ResidueField {
 public:
  explicit ResidueField(const DensePoly& modulus);

  std::size_t degree() const noexcept { return degree_; }
  const DensePoly& modulus() const noexcept { return modulus_; }

  std::uint64_t reduce(const DensePoly& p) const;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept { return a ^ b; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept;
  /// Multiplicative inverse of a nonzero element.
  std::uint64_t inv(std::uint64_t a) const;

 private:
  DensePoly modulus_;
  std::uint64_t modulus_word_ = 0;
  std::size_t degree_ = 0;
};

struct ResidueMatrix {
  ResidueField field;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint64_t> entries;  // row-major

  std::uint64_t at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
};

/// Entry-wise reduction phi_i: u(x) -> u(x) mod f_i(x). Throws NotAFactor
/// when f_i does not divide x^l - 1.
ResidueMatrix reduce_mod_factor(const QcMatrix& a, const DensePoly& factor);
std::size_t residue_rank(const ResidueMatrix& m);
/// F2-rank of the binary expansion, computed as sum_i d_i rk phi_i(A). Requires odd l.
std::size_t qc_rank(const QcMatrix& a);

/// Parses an exponent list "e0,e1,..." (ascending, no duplicates).
std::vector<std::size_t> parse_exponents(std::string_view text);
std::string format_exponents(std::span<const std::size_t> exponents);

}  // namespace qldpc
