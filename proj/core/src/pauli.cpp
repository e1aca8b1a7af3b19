#include "qldpc/pauli.hpp"

#include <bit>
#include <cmath>

#include "qldpc/error.hpp"

namespace qldpc {

char to_char(Pauli p) noexcept {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Z: return 'Z';
    case Pauli::Y: return 'Y';
  }
  return '?';
}

PauliVector::PauliVector(BitVector x, BitVector z) : x_(std::move(x)), z_(std::move(z)) {
  if (x_.size() != z_.size()) throw Error(ErrorKind::SizeMismatch, "X and Z parts differ in length");
}

PauliVector PauliVector::from_string(std::string_view s) {
  PauliVector v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    switch (s[i]) {
      case 'I': break;
      case 'X': v.set(i, Pauli::X); break;
      case 'Y': v.set(i, Pauli::Y); break;
      case 'Z': v.set(i, Pauli::Z); break;
      default: throw Error(ErrorKind::Parse, std::string("bad Pauli character '") + s[i] + "'");
    }
  }
  return v;
}

std::size_t PauliVector::weight() const {
  std::size_t w = 0;
  const auto xs = x_.words();
  const auto zs = z_.words();
  for (std::size_t i = 0; i < xs.size(); ++i) w += static_cast<std::size_t>(std::popcount(xs[i] | zs[i]));
  return w;
}

PauliVector& PauliVector::operator*=(const PauliVector& other) {
  if (size() != other.size()) throw Error(ErrorKind::SizeMismatch, "Pauli vectors differ in length");
  x_ ^= other.x_;
  z_ ^= other.z_;
  return *this;
}

std::string PauliVector::to_string() const {
  std::string s(size(), 'I');
  for (std::size_t i = 0; i < size(); ++i) s[i] = to_char(get(i));
  return s;
}

BitVector pauli_to_binary(const PauliVector& v) {
  BitVector b(2 * v.size());
  for (std::size_t i : v.x_bits().support()) b.set(2 * i);
  for (std::size_t i : v.z_bits().support()) b.set(2 * i + 1);
  return b;
}

BitVector pauli_to_binary_swapped(const PauliVector& v) {
  BitVector b(2 * v.size());
  for (std::size_t i : v.z_bits().support()) b.set(2 * i);
  for (std::size_t i : v.x_bits().support()) b.set(2 * i + 1);
  return b;
}

PauliVector binary_to_pauli(const BitVector& bits) {
  if (bits.size() % 2) throw Error(ErrorKind::OddLength, "binary Pauli image must have even length");
  PauliVector v(bits.size() / 2);
  for (std::size_t j : bits.support()) {
    if (j % 2 == 0) {
      v.x_bits().set(j / 2);
    } else {
      v.z_bits().set(j / 2);
    }
  }
  return v;
}

BitMatrix stabilizer_to_binary(std::span<const PauliVector> rows) {
  if (rows.empty()) return {};
  const std::size_t n = rows.front().size();
  BitMatrix h(rows.size(), 2 * n);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != n) throw Error(ErrorKind::SizeMismatch, "stabilizer rows differ in length");
    h.set_row(r, pauli_to_binary_swapped(rows[r]));
  }
  return h;
}

BitMatrix css_stabilizer_binary(const CssCode& code) {
  const std::size_t n = code.n();
  BitMatrix h(code.hx.rows() + code.hz.rows(), 2 * n);
  // An X-type row has its bits in the z slots of b*, and vice versa.
  for (std::size_t r = 0; r < code.hx.rows(); ++r) {
    for (std::size_t i : code.hx.row(r).support()) h.set(r, 2 * i + 1);
  }
  const std::size_t off = code.hx.rows();
  for (std::size_t r = 0; r < code.hz.rows(); ++r) {
    for (std::size_t i : code.hz.row(r).support()) h.set(off + r, 2 * i);
  }
  return h;
}

BitVector syndrome_of(const BitMatrix& h_bin, const PauliVector& e) {
  if (h_bin.cols() != 2 * e.size()) throw Error(ErrorKind::SizeMismatch, "stabilizer matrix must have 2n columns");
  return h_bin * pauli_to_binary(e);
}

BitVector css_syndrome(const CssCode& code, const PauliVector& e) {
  if (e.size() != code.n()) throw Error(ErrorKind::SizeMismatch, "error length differs from code length");
  const BitVector sx = code.hx * e.z_bits();
  const BitVector sz = code.hz * e.x_bits();
  BitVector s(sx.size() + sz.size());
  for (std::size_t i : sx.support()) s.set(i);
  for (std::size_t i : sz.support()) s.set(sx.size() + i);
  return s;
}

std::size_t pauli_weight(const BitVector& x) {
  if (x.size() % 2) throw Error(ErrorKind::OddLength, "Pauli weight needs an even-length vector");
  constexpr Word kEven = 0x5555555555555555ULL;
  std::size_t w = 0;
  for (Word word : x.words()) w += static_cast<std::size_t>(std::popcount((word | (word >> 1)) & kEven));
  return w;
}

void ChannelModel::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidArgument, "error rate must lie in [0, 1]");
}

PauliVector sample_depolarizing(std::size_t n, const ChannelModel& model, Rng& rng) {
  model.validate();
  using u128 = Uint128;
  // Threshold T = p 2^64 on the 64-bit draw u; u < T selects an error whose
  // type is floor(3u / T) in {X, Y, Z}.
  const long double scaled = static_cast<long double>(model.p) * 18446744073709551616.0L;
  const u128 threshold = model.p >= 1.0 ? (u128{1} << 64) : static_cast<u128>(scaled);
  constexpr Pauli kTypes[3] = {Pauli::X, Pauli::Y, Pauli::Z};
  PauliVector e(n);
  for (std::size_t i = 0; i < n; ++i) {
    const u128 u = rng();
    if (u >= threshold) continue;
    e.set(i, kTypes[static_cast<std::size_t>((3 * u) / threshold)]);
  }
  return e;
}

}  // namespace qldpc
