#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qldpc/error.hpp"
#include "qldpc/pauli.hpp"
#include "qldpc/registry.hpp"

using namespace qldpc;

TEST_CASE("pauli_to_binary examples") {
  CHECK(pauli_to_binary(PauliVector(5)).none());
  CHECK(pauli_to_binary(PauliVector::from_string("XI")) == BitVector::from_string("1000"));
  CHECK(pauli_to_binary(PauliVector::from_string("Y")) == BitVector::from_string("11"));
  CHECK(pauli_to_binary(PauliVector::from_string("Z")) == BitVector::from_string("01"));
  CHECK(pauli_to_binary_swapped(PauliVector::from_string("ZX")) == BitVector::from_string("1001"));
  CHECK_THROWS_AS(binary_to_pauli(BitVector(3)), Error);
  CHECK_THROWS_AS(PauliVector::from_string("XQ"), Error);
}

TEST_CASE("b is a bijection and b* is the per-qubit swap") {
  Rng rng(41);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + uniform_below(rng, 80);
    const PauliVector v(oracle::random_vector(rng, n), oracle::random_vector(rng, n));
    const BitVector b = pauli_to_binary(v);
    const BitVector bs = pauli_to_binary_swapped(v);
    CHECK(binary_to_pauli(b) == v);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(b.get(2 * i) == bs.get(2 * i + 1));
      CHECK(b.get(2 * i + 1) == bs.get(2 * i));
    }
    CHECK(pauli_weight(b) == v.weight());
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) count += v.get(i) != Pauli::I;
    CHECK(v.weight() == count);
    CHECK(PauliVector::from_string(v.to_string()) == v);
  }
}

TEST_CASE("stabilizer_to_binary commutation") {
  const PauliVector xx = PauliVector::from_string("XX");
  const BitMatrix h = stabilizer_to_binary(std::span<const PauliVector>(&xx, 1));
  CHECK(syndrome_of(h, PauliVector::from_string("ZI")).get(0));
  CHECK_FALSE(syndrome_of(h, PauliVector::from_string("ZZ")).get(0));
  CHECK_THROWS_AS(syndrome_of(h, PauliVector(3)), Error);

  Rng rng(42);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + uniform_below(rng, 10);
    std::vector<PauliVector> rows;
    for (int r = 0; r < 3; ++r) rows.emplace_back(oracle::random_vector(rng, n), oracle::random_vector(rng, n));
    const PauliVector e(oracle::random_vector(rng, n), oracle::random_vector(rng, n));
    const BitVector s = syndrome_of(stabilizer_to_binary(rows), e);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      bool parity = false;
      for (std::size_t i = 0; i < n; ++i) parity ^= anticommute(rows[r].get(i), e.get(i));
      CHECK(s.get(r) == parity);
    }
  }
}

TEST_CASE("pauli_weight examples") {
  CHECK(pauli_weight(BitVector(8)) == 0);
  CHECK(pauli_weight(BitVector::from_string("11")) == 1);
  CHECK(pauli_weight(BitVector::from_string("100111")) == 3);
  CHECK_THROWS_AS(pauli_weight(BitVector(5)), Error);
}

TEST_CASE("css syndromes") {
  const CssCode a3 = build_registry_code("A3");
  const BitMatrix h = css_stabilizer_binary(a3);
  PauliVector x0(a3.n());
  x0.set(0, Pauli::X);
  CHECK(syndrome_of(h, PauliVector(a3.n())).none());
  const BitVector s = css_syndrome(a3, x0);
  CHECK(s == syndrome_of(h, x0));
  const std::size_t mx = a3.hx.rows();
  for (std::size_t r = 0; r < mx; ++r) CHECK_FALSE(s.get(r));
  for (std::size_t r = 0; r < a3.hz.rows(); ++r) CHECK(s.get(mx + r) == a3.hz.get(r, 0));

  Rng rng(43);
  for (int t = 0; t < 30; ++t) {
    // A random combination of stabilizer rows has zero syndrome.
    PauliVector stab(a3.n());
    for (std::size_t r = 0; r < a3.hx.rows(); ++r)
      if (rng() & 1U) stab.x_bits() ^= a3.hx.row(r);
    for (std::size_t r = 0; r < a3.hz.rows(); ++r)
      if (rng() & 1U) stab.z_bits() ^= a3.hz.row(r);
    CHECK(css_syndrome(a3, stab).none());
    const PauliVector e(oracle::random_vector(rng, a3.n(), 0.1), oracle::random_vector(rng, a3.n(), 0.1));
    CHECK(css_syndrome(a3, e) == syndrome_of(h, e));
  }
}

TEST_CASE("depolarizing sampler") {
  Rng rng(44);
  CHECK(sample_depolarizing(1000, {0.0}, rng).is_identity());
  const PauliVector all = sample_depolarizing(1000, {1.0}, rng);
  CHECK(all.weight() == 1000);
  CHECK_THROWS_AS(ChannelModel{1.5}.validate(), Error);
  CHECK_THROWS_AS(ChannelModel{-0.1}.validate(), Error);

  const std::size_t n = 1000000;
  const PauliVector e = sample_depolarizing(n, {0.1}, rng);
  std::size_t counts[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < n; ++i) ++counts[static_cast<unsigned>(e.get(i))];
  const double errs = static_cast<double>(n - counts[0]);
  CHECK(std::abs(errs / static_cast<double>(n) - 0.1) < 0.001);
  // Each of X, Y, Z is binomial(errs, 1/3).
  const double sigma = std::sqrt(errs * (1.0 / 3) * (2.0 / 3));
  for (int k = 1; k < 4; ++k) CHECK(std::abs(static_cast<double>(counts[k]) - errs / 3) < 3 * sigma);

  Rng r1(7), r2(7);
  CHECK(sample_depolarizing(500, {0.2}, r1) == sample_depolarizing(500, {0.2}, r2));
}

TEST_CASE("product and anticommute table") {
  CHECK(PauliVector::from_string("XZ") * PauliVector::from_string("ZZ") == PauliVector::from_string("YI"));
  CHECK(anticommute(Pauli::X, Pauli::Z));
  CHECK(anticommute(Pauli::Y, Pauli::X));
  CHECK_FALSE(anticommute(Pauli::Y, Pauli::Y));
  CHECK_FALSE(anticommute(Pauli::I, Pauli::Z));
}
