#pragma once

// Pauli vectors (phases dropped), their binary images and the depolarizing channel.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "qldpc/bitmatrix.hpp"
#include "qldpc/construction.hpp"
#include "qldpc/rng.hpp"

namespace qldpc {

/// Bit 0 is the X part, bit 1 the Z part. The numeric order doubles as the
/// tie-break order I < X < Z < Y.
enum class Pauli : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

char to_char(Pauli p) noexcept;
/// Symplectic form: true iff a and b anticommute.
constexpr bool anticommute(Pauli a, Pauli b) noexcept {
  const auto x = static_cast<unsigned>(a);
  const auto y = static_cast<unsigned>(b);
  return (((x & 1U) & (y >> 1)) ^ ((x >> 1) & (y & 1U))) != 0;
}

class PauliVector {
 public:
  PauliVector() = default;
  explicit PauliVector(std::size_t n) : x_(n), z_(n) {}
  PauliVector(BitVector x, BitVector z);
  /// Parses a string over {I, X, Y, Z}.
  static PauliVector from_string(std::string_view s);

  std::size_t size() const noexcept { return x_.size(); }
  Pauli get(std::size_t i) const noexcept {
    return static_cast<Pauli>(static_cast<unsigned>(x_.get(i)) | (static_cast<unsigned>(z_.get(i)) << 1));
  }
  void set(std::size_t i, Pauli p) noexcept {
    x_.set(i, static_cast<unsigned>(p) & 1U);
    z_.set(i, (static_cast<unsigned>(p) >> 1) & 1U);
  }

  const BitVector& x_bits() const noexcept { return x_; }
  const BitVector& z_bits() const noexcept { return z_; }
  BitVector& x_bits() noexcept { return x_; }
  BitVector& z_bits() noexcept { return z_; }

  /// Number of non-identity components.
  std::size_t weight() const;
  bool is_identity() const noexcept { return x_.none() && z_.none(); }

  /// Product up to phase.
  PauliVector& operator*=(const PauliVector& other);
  friend PauliVector operator*(PauliVector a, const PauliVector& b) { return a *= b; }
  bool operator==(const PauliVector& other) const = default;

  std::string to_string() const;

 private:
  BitVector x_;
  BitVector z_;
};

/// b(v) = (v1^X, v1^Z, v2^X, v2^Z, ...).
BitVector pauli_to_binary(const PauliVector& v);
/// b*(v) = (v1^Z, v1^X, ...).
BitVector pauli_to_binary_swapped(const PauliVector& v);
/// Inverse of b. Throws OddLength.
PauliVector binary_to_pauli(const BitVector& bits);

/// Rows mapped by b*, so that (result) * b(e) is the syndrome of e.
BitMatrix stabilizer_to_binary(std::span<const PauliVector> rows);
/// Binary stabilizer matrix of a CSS code: H_X rows then H_Z rows.
BitMatrix css_stabilizer_binary(const CssCode& code);

/// s = H_bin * b(e). Throws SizeMismatch.
BitVector syndrome_of(const BitMatrix& h_bin, const PauliVector& e);
/// [H_X e^Z ; H_Z e^X], identical to syndrome_of(css_stabilizer_binary(code), e).
BitVector css_syndrome(const CssCode& code, const PauliVector& e);

/// |x|_P: qubits with at least one of bits 2i, 2i+1 set. Throws OddLength.
std::size_t pauli_weight(const BitVector& x);

struct ChannelModel {
  double p = 0.0;
  /// Throws InvalidArgument unless 0 <= p <= 1.
  void validate() const;
};

/// One engine draw per qubit: identity with probability 1 - p, otherwise
/// X, Y, Z with probability p/3 each.
PauliVector sample_depolarizing(std::size_t n, const ChannelModel& model, Rng& rng);

}  // namespace qldpc
