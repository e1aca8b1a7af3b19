#include "qldpc/circulant.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <map>
#include <mutex>

#include "qldpc/error.hpp"

namespace qldpc {

namespace {

// dst ^= src << shift, growing dst as needed.
void xor_shifted(std::vector<Word>& dst, const std::vector<Word>& src, std::size_t shift) {
  if (src.empty()) return;
  const std::size_t word_shift = shift / kWordBits;
  const unsigned bit_shift = static_cast<unsigned>(shift % kWordBits);
  const std::size_t needed = src.size() + word_shift + 1;
  if (dst.size() < needed) dst.resize(needed, 0);
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i + word_shift] ^= src[i] << bit_shift;
    if (bit_shift != 0) dst[i + word_shift + 1] ^= src[i] >> (kWordBits - bit_shift);
  }
}

}  // namespace

// ---------------------------------------------------------------- DensePoly

DensePoly DensePoly::from_exponents(std::span<const std::size_t> exponents) {
  DensePoly p;
  for (std::size_t e : exponents) p.set_coeff(e, !p.coeff(e));
  return p;
}

DensePoly DensePoly::from_exponents(std::initializer_list<std::size_t> exponents) {
  return from_exponents(std::span<const std::size_t>(exponents.begin(), exponents.size()));
}

DensePoly DensePoly::monomial(std::size_t degree) {
  DensePoly p;
  p.set_coeff(degree, true);
  return p;
}

DensePoly DensePoly::x_pow_minus_one(std::size_t l) {
  DensePoly p = monomial(l);
  p.set_coeff(0, !p.coeff(0));
  return p;
}

long DensePoly::degree() const noexcept {
  if (words_.empty()) return -1;
  const Word top = words_.back();
  return static_cast<long>((words_.size() - 1) * kWordBits + (kWordBits - 1 - std::countl_zero(top)));
}

bool DensePoly::coeff(std::size_t i) const noexcept {
  const std::size_t w = i / kWordBits;
  return w < words_.size() && ((words_[w] >> (i % kWordBits)) & 1U);
}

void DensePoly::set_coeff(std::size_t i, bool value) {
  const std::size_t w = i / kWordBits;
  if (w >= words_.size()) {
    if (!value) return;
    words_.resize(w + 1, 0);
  }
  const Word mask = Word{1} << (i % kWordBits);
  words_[w] = value ? (words_[w] | mask) : (words_[w] & ~mask);
  trim();
}

std::size_t DensePoly::weight() const noexcept {
  std::size_t w = 0;
  for (Word x : words_) w += static_cast<std::size_t>(std::popcount(x));
  return w;
}

std::vector<std::size_t> DensePoly::exponents() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    Word x = words_[w];
    while (x) {
      out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(x)));
      x &= x - 1;
    }
  }
  return out;
}

void DensePoly::trim() noexcept {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

DensePoly& DensePoly::operator+=(const DensePoly& other) {
  if (words_.size() < other.words_.size()) words_.resize(other.words_.size(), 0);
  for (std::size_t i = 0; i < other.words_.size(); ++i) words_[i] ^= other.words_[i];
  trim();
  return *this;
}

DensePoly operator*(const DensePoly& a, const DensePoly& b) {
  DensePoly out;
  if (a.is_zero() || b.is_zero()) return out;
  for (std::size_t e : a.exponents()) xor_shifted(out.words_, b.words_, e);
  out.trim();
  return out;
}

std::pair<DensePoly, DensePoly> DensePoly::divmod(const DensePoly& num, const DensePoly& den) {
  if (den.is_zero()) throw Error(ErrorKind::InvalidArgument, "polynomial division by zero");
  DensePoly quotient;
  DensePoly rem = num;
  const long dd = den.degree();
  while (rem.degree() >= dd) {
    const auto shift = static_cast<std::size_t>(rem.degree() - dd);
    xor_shifted(rem.words_, den.words_, shift);
    rem.trim();
    quotient.set_coeff(shift, true);
  }
  return {quotient, rem};
}

std::uint64_t DensePoly::to_word() const {
  if (words_.size() > 1) throw Error(ErrorKind::InvalidArgument, "polynomial degree exceeds 63");
  return words_.empty() ? 0 : words_.front();
}

DensePoly DensePoly::from_word(std::uint64_t bits) {
  DensePoly p;
  if (bits != 0) p.words_.push_back(bits);
  return p;
}

std::string DensePoly::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  auto exps = exponents();
  for (auto it = exps.rbegin(); it != exps.rend(); ++it) {
    if (!s.empty()) s += '+';
    if (*it == 0) {
      s += '1';
    } else if (*it == 1) {
      s += 'x';
    } else {
      s += "x^" + std::to_string(*it);
    }
  }
  return s;
}

DensePoly poly_gcd(const DensePoly& p, const DensePoly& q) {
  if (p.is_zero() && q.is_zero()) throw Error(ErrorKind::BothZero, "gcd of two zero polynomials");
  DensePoly a = p;
  DensePoly b = q;
  while (!b.is_zero()) {
    DensePoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// ---------------------------------------------------------------- RingPoly

RingPoly::RingPoly(std::size_t l, std::span<const std::size_t> exponents) : coeffs_(l) {
  for (std::size_t e : exponents) {
    if (e >= l) throw Error(ErrorKind::InvalidArgument, "exponent " + std::to_string(e) + " >= l");
    if (coeffs_.get(e)) throw Error(ErrorKind::InvalidArgument, "duplicate exponent " + std::to_string(e));
    coeffs_.set(e);
  }
}

RingPoly::RingPoly(std::size_t l, std::initializer_list<std::size_t> exponents)
    : RingPoly(l, std::span<const std::size_t>(exponents.begin(), exponents.size())) {}

RingPoly RingPoly::from_dense(std::size_t l, const DensePoly& p) {
  RingPoly out(l);
  for (std::size_t e : p.exponents()) out.coeffs_.flip(e % l);
  return out;
}

DensePoly RingPoly::to_dense() const {
  const auto exps = exponents();
  return DensePoly::from_exponents(exps);
}

RingPoly& RingPoly::operator+=(const RingPoly& other) {
  if (other.size() != size()) throw Error(ErrorKind::SizeMismatch, "ring size mismatch");
  coeffs_ ^= other.coeffs_;
  return *this;
}

RingPoly cyclic_mul(const RingPoly& a, const RingPoly& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::SizeMismatch, "ring size mismatch");
  const std::size_t l = a.size();
  RingPoly out(l);
  const auto sb = b.exponents();
  for (std::size_t i : a.exponents()) {
    for (std::size_t j : sb) {
      const std::size_t k = i + j >= l ? i + j - l : i + j;
      out.set_coeff(k, !out.coeff(k));
    }
  }
  return out;
}

RingPoly transpose_poly(const RingPoly& c) {
  const std::size_t l = c.size();
  RingPoly out(l);
  for (std::size_t i : c.exponents()) out.set_coeff(i == 0 ? 0 : l - i);
  return out;
}

BitMatrix circulant_expand(const RingPoly& c) {
  const std::size_t l = c.size();
  BitMatrix m(l, l);
  for (std::size_t i : c.exponents()) {
    for (std::size_t j = 0; j < l; ++j) m.set((i + j) % l, j);
  }
  return m;
}

// ---------------------------------------------------------------- QcMatrix

QcMatrix::QcMatrix(std::size_t m, std::size_t n, std::size_t l)
    : m_(m), n_(n), l_(l), entries_(m * n, RingPoly(l)) {}

void QcMatrix::set(std::size_t i, std::size_t j, RingPoly p) {
  if (p.size() != l_) throw Error(ErrorKind::SizeMismatch, "entry circulant size mismatch");
  entries_[i * n_ + j] = std::move(p);
}

BitMatrix QcMatrix::expand() const {
  BitMatrix out(m_ * l_, n_ * l_);
  for (std::size_t bi = 0; bi < m_; ++bi) {
    for (std::size_t bj = 0; bj < n_; ++bj) {
      for (std::size_t e : at(bi, bj).exponents()) {
        for (std::size_t j = 0; j < l_; ++j) out.set(bi * l_ + (e + j) % l_, bj * l_ + j);
      }
    }
  }
  return out;
}

QcMatrix QcMatrix::conjugate_transpose() const {
  QcMatrix out(n_, m_, l_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < m_; ++j) out.set(i, j, transpose_poly(at(j, i)));
  }
  return out;
}

// ---------------------------------------------------------------- factorization

std::vector<std::vector<std::size_t>> cyclotomic_cosets(std::size_t odd_modulus) {
  if (odd_modulus == 0 || odd_modulus % 2 == 0) {
    throw Error(ErrorKind::InvalidArgument, "cyclotomic cosets need an odd modulus");
  }
  std::vector<std::vector<std::size_t>> cosets;
  std::vector<char> seen(odd_modulus, 0);
  for (std::size_t start = 0; start < odd_modulus; ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> coset;
    std::size_t j = start;
    do {
      seen[j] = 1;
      coset.push_back(j);
      j = (2 * j) % odd_modulus;
    } while (j != start);
    std::sort(coset.begin(), coset.end());
    cosets.push_back(std::move(coset));
  }
  return cosets;
}

Factorization factor_xl_minus_1(std::size_t l) {
  if (l == 0) throw Error(ErrorKind::InvalidArgument, "circulant size must be positive");
  Factorization f;
  f.l = l;
  f.odd_part = l;
  while (f.odd_part % 2 == 0) {
    f.odd_part /= 2;
    ++f.two_exponent;
  }

  // The idempotents of R_{l'} are exactly the sums of coset indicators, and
  // each reduces to 0 or 1 modulo every irreducible factor. Splitting by
  // gcd with every coset indicator therefore separates all factors.
  const auto cosets = cyclotomic_cosets(f.odd_part);
  std::vector<DensePoly> parts{DensePoly::x_pow_minus_one(f.odd_part)};
  for (const auto& coset : cosets) {
    if (parts.size() == cosets.size()) break;
    const DensePoly indicator = DensePoly::from_exponents(coset);
    std::vector<DensePoly> next;
    for (const auto& part : parts) {
      if (part.degree() <= 1) {
        next.push_back(part);
        continue;
      }
      DensePoly g = poly_gcd(part, indicator % part);
      if (g.degree() > 0 && g.degree() < part.degree()) {
        next.push_back(part / g);
        next.push_back(std::move(g));
      } else {
        next.push_back(part);
      }
    }
    parts = std::move(next);
  }
  if (parts.size() != cosets.size()) {
    throw Error(ErrorKind::InvalidArgument, "failed to split x^l - 1 completely");
  }

  std::sort(parts.begin(), parts.end(), [](const DensePoly& a, const DensePoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    const auto ea = a.exponents();
    const auto eb = b.exponents();
    return std::lexicographical_compare(ea.rbegin(), ea.rend(), eb.rbegin(), eb.rend());
  });
  for (auto& p : parts) {
    const auto d = static_cast<std::size_t>(p.degree());
    f.factors.push_back({std::move(p), d});
  }
  return f;
}

std::shared_ptr<const Factorization> cached_factorization(std::size_t l) {
  static std::mutex mutex;
  static std::map<std::size_t, std::shared_ptr<const Factorization>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(l);
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<const Factorization>(factor_xl_minus_1(l));
  cache.emplace(l, f);
  return f;
}

// ---------------------------------------------------------------- residue fields

ResidueField::ResidueField(const DensePoly& modulus) : modulus_(modulus) {
  if (modulus.degree() < 1 || modulus.degree() > 63) {
    throw Error(ErrorKind::InvalidArgument, "residue field modulus degree must be in [1, 63]");
  }
  degree_ = static_cast<std::size_t>(modulus.degree());
  modulus_word_ = modulus.to_word();
}

std::uint64_t ResidueField::reduce(const DensePoly& p) const { return (p % modulus_).to_word(); }

std::uint64_t ResidueField::mul(std::uint64_t a, std::uint64_t b) const noexcept {
  const std::uint64_t top = std::uint64_t{1} << degree_;
  std::uint64_t result = 0;
  while (b) {
    if (b & 1U) result ^= a;
    b >>= 1;
    a <<= 1;
    if (a & top) a ^= modulus_word_;
  }
  return result;
}

std::uint64_t ResidueField::inv(std::uint64_t a) const {
  if (a == 0) throw Error(ErrorKind::InvalidArgument, "inverse of zero");
  // a^(2^d - 2) = a^{-1} in the multiplicative group of order 2^d - 1.
  std::uint64_t exponent = (std::uint64_t{1} << degree_) - 2;
  std::uint64_t result = 1;
  std::uint64_t base = a;
  while (exponent) {
    if (exponent & 1U) result = mul(result, base);
    base = mul(base, base);
    exponent >>= 1;
  }
  if (mul(result, a) != 1) throw Error(ErrorKind::InvalidArgument, "element is not invertible");
  return result;
}

ResidueMatrix reduce_mod_factor(const QcMatrix& a, const DensePoly& factor) {
  const DensePoly xl = DensePoly::x_pow_minus_one(a.circulant_size());
  if (factor.degree() < 1 || !(xl % factor).is_zero()) {
    throw Error(ErrorKind::NotAFactor, factor.to_string() + " does not divide x^l - 1");
  }
  ResidueMatrix out{ResidueField(factor), a.rows(), a.cols(), {}};
  out.entries.reserve(a.rows() * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out.entries.push_back(out.field.reduce(a.at(i, j).to_dense()));
  }
  return out;
}

std::size_t residue_rank(const ResidueMatrix& m) {
  std::vector<std::uint64_t> work = m.entries;
  const auto& f = m.field;
  auto at = [&](std::size_t i, std::size_t j) -> std::uint64_t& { return work[i * m.cols + j]; };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols && rank < m.rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < m.rows && at(pivot, c) == 0) ++pivot;
    if (pivot == m.rows) continue;
    for (std::size_t j = 0; j < m.cols; ++j) std::swap(at(rank, j), at(pivot, j));
    const std::uint64_t inv = f.inv(at(rank, c));
    for (std::size_t j = 0; j < m.cols; ++j) at(rank, j) = f.mul(at(rank, j), inv);
    for (std::size_t r = 0; r < m.rows; ++r) {
      if (r == rank || at(r, c) == 0) continue;
      const std::uint64_t factor = at(r, c);
      for (std::size_t j = 0; j < m.cols; ++j) at(r, j) ^= f.mul(factor, at(rank, j));
    }
    ++rank;
  }
  return rank;
}

std::size_t qc_rank(const QcMatrix& a) {
  if (a.circulant_size() % 2 == 0) {
    throw Error(ErrorKind::EvenCirculant, "qc_rank requires an odd circulant size");
  }
  const auto fact = cached_factorization(a.circulant_size());
  std::size_t total = 0;
  for (const auto& factor : fact->factors) {
    total += factor.degree * residue_rank(reduce_mod_factor(a, factor.poly));
  }
  return total;
}

// ---------------------------------------------------------------- text

std::vector<std::size_t> parse_exponents(std::string_view text) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  if (trim(text).empty()) return out;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view token = trim(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos));
    std::size_t value = 0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
      throw Error(ErrorKind::Parse, "bad exponent '" + std::string(token) + "'");
    }
    if (!out.empty() && value <= out.back()) {
      throw Error(ErrorKind::Parse, "exponents must be strictly ascending (duplicates are illegal)");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string format_exponents(std::span<const std::size_t> exponents) {
  std::string s;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(exponents[i]);
  }
  return s;
}

}  // namespace qldpc
