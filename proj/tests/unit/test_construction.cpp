#include <doctest.h>

#include <map>

#include "oracles.hpp"
#include "qldpc/construction.hpp"
#include "qldpc/error.hpp"
#include "qldpc/registry.hpp"

using namespace qldpc;

namespace {

RingPoly random_ring(Rng& rng, std::size_t l, std::size_t weight) {
  RingPoly p(l);
  while (p.weight() < std::min(weight, l)) p.set_coeff(uniform_below(rng, l));
  return p;
}

std::size_t eq4(const CssCode& c) { return c.n() - oracle::rank(oracle::to_dense(c.hx)) - oracle::rank(oracle::to_dense(c.hz)); }

}  // namespace

TEST_CASE("build_gb examples") {
  const CssCode a1 = build_registry_code("A1");
  CHECK(a1.n() == 254);
  CHECK(a1.k == 28);

  const CssCode tiny = build_gb({1, RingPoly(1, {0}), RingPoly(1, {0})});
  CHECK(tiny.n() == 2);
  CHECK(tiny.k == 0);

  const CssCode a4 = build_registry_code("A4");
  CHECK(a4.n() == 46);
  CHECK(a4.k == 2);
  CHECK(tanner_stats(a4).girth == 4);

  CHECK_THROWS_AS(build_gb({7, RingPoly(7), RingPoly(7, {0})}), Error);
}

TEST_CASE("gb_dimension") {
  CHECK(gb_dimension(std::get<GbSpec>(registry("A2").spec)) == 28);
  CHECK(gb_dimension(std::get<GbSpec>(registry("A5").spec)) == 10);
}

TEST_CASE("gcd dimension agrees with binary rank on 200 random GB codes") {
  Rng rng(31);
  for (int t = 0; t < 200; ++t) {
    const std::size_t l = 1 + 2 * uniform_below(rng, 32);
    GbSpec spec{l, random_ring(rng, l, 1 + uniform_below(rng, 6)), random_ring(rng, l, 1 + uniform_below(rng, 6))};
    // Bias towards nontrivial gcds: multiply both by a random factor of x^l - 1.
    if (t % 2 == 0) {
      const auto& f = factor_xl_minus_1(l).factors;
      const RingPoly g = RingPoly::from_dense(l, f[uniform_below(rng, f.size())].poly);
      spec.a = cyclic_mul(spec.a, g);
      spec.b = cyclic_mul(spec.b, g);
      if (spec.a.is_zero() || spec.b.is_zero()) continue;
    }
    const CssCode c = build_gb(spec);
    CHECK(gb_dimension(spec) == eq4(c));
    CHECK(rank(c.hx) == rank(c.hz));
    CHECK(check_commutativity(c));
  }
}

TEST_CASE("build_ghp examples") {
  const CssCode b1 = build_registry_code("B1");
  CHECK(b1.n() == 882);
  CHECK(b1.k == 24);
  CHECK(ghp_dimension(std::get<GhpSpec>(registry("B1").spec)) == 24);
  CHECK(ghp_dimension(std::get<GhpSpec>(registry("B2").spec)) == 48);

  const CssCode b3 = build_registry_code("B3");
  CHECK(b3.n() == 1270);
  CHECK(b3.k == 28);
  const TannerStats s3 = tanner_stats(b3);
  CHECK(s3.max_row_weight == 6);
  CHECK(s3.column_weight_string() == "3");

  Rng rng(2);
  const RingPoly a = random_ring(rng, 15, 4), b = random_ring(rng, 15, 3);
  QcMatrix m(1, 1, 15);
  m.set(0, 0, a);
  const CssCode ghp = build_ghp({m, b});
  const CssCode gb = build_gb({15, a, b});
  CHECK(ghp.hx == gb.hx);
  CHECK(ghp.hz == gb.hz);

  QcMatrix m2(2, 3, 7);
  m2.set(0, 1, RingPoly(7, {0, 2}));
  CHECK(ghp_dimension({m2, RingPoly(7, {0, 1, 2})}) == 0);  // 1+x+x^2 is coprime to x^7-1
  CHECK_THROWS_AS(ghp_dimension({QcMatrix(1, 1, 8), RingPoly(8, {0})}), Error);
}

TEST_CASE("residue dimension agrees with binary rank on 100 random GHP codes") {
  Rng rng(32);
  for (int t = 0; t < 100; ++t) {
    const std::size_t l = 3 + 2 * uniform_below(rng, 30);
    const std::size_t m = 1 + uniform_below(rng, 4), n = 1 + uniform_below(rng, 4);
    QcMatrix a(m, n, l);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (uniform_below(rng, 3) != 0) a.set(i, j, random_ring(rng, l, 1 + uniform_below(rng, 3)));
    const auto& f = factor_xl_minus_1(l).factors;
    RingPoly b = RingPoly::from_dense(l, f[uniform_below(rng, f.size())].poly);
    if (t % 3 == 0) b = cyclic_mul(b, random_ring(rng, l, 2));
    if (b.is_zero()) b.set_coeff(0);
    const GhpSpec spec{a, b};
    const CssCode c = build_ghp(spec);
    CHECK(c.n() == (m + n) * l);
    CHECK(check_commutativity(c));
    CHECK(ghp_dimension(spec) == eq4(c));
  }
}

TEST_CASE("build_hp") {
  const BitMatrix one = BitMatrix::identity(1);
  const CssCode c = build_hp({one, one});
  CHECK(c.n() == 2);
  CHECK(c.k == 0);

  Rng rng(33);
  for (int t = 0; t < 60; ++t) {
    const BitMatrix a = oracle::random_matrix(rng, 1 + uniform_below(rng, 6), 1 + uniform_below(rng, 8), 0.4);
    const BitMatrix b = oracle::random_matrix(rng, 1 + uniform_below(rng, 6), 1 + uniform_below(rng, 8), 0.4);
    const CssCode hp = build_hp({a, b});
    CHECK(hp.n() == a.cols() * b.rows() + b.cols() * a.rows());
    CHECK(check_commutativity(hp));
    CHECK(hp_dimension({a, b}) == static_cast<long>(eq4(hp)));
  }
}

TEST_CASE("check_commutativity") {
  const std::string_view r[] = {"10"};
  const BitMatrix h = BitMatrix::from_rows(r);
  CHECK_FALSE(check_commutativity(h, h));
  const std::string_view r2[] = {"11"};
  CHECK(check_commutativity(BitMatrix::from_rows(r2), BitMatrix::from_rows(r2)));
  CHECK_THROWS_AS(make_css_code(h, h), Error);
}

TEST_CASE("tanner_stats") {
  const TannerStats a1 = tanner_stats(build_registry_code("A1"));
  CHECK(a1.max_row_weight == 10);
  CHECK(a1.column_weight_string() == "5");
  CHECK(a1.girth_string() == "6");
  CHECK(tanner_stats(build_registry_code("A2")).girth_string() == "4");

  const std::string_view r[] = {"11"};
  const MatrixStats s = matrix_stats(BitMatrix::from_rows(r), 8);
  CHECK_FALSE(s.girth.has_value());
  CHECK_THROWS_AS(matrix_stats(BitMatrix::from_rows(r), 2), Error);

  const std::string_view square[] = {"110", "011", "101"};
  CHECK(tanner_girth(BitMatrix::from_rows(square), 20) == 6);
  const std::string_view four[] = {"11", "11"};
  CHECK(tanner_girth(BitMatrix::from_rows(four), 20) == 4);
}

TEST_CASE("girth agrees with a brute-force cycle oracle") {
  // Shortest cycle through an edge (c, v): shortest path from c to v avoiding that edge, plus one.
  Rng rng(34);
  for (int t = 0; t < 40; ++t) {
    const BitMatrix h = oracle::random_matrix(rng, 2 + uniform_below(rng, 6), 2 + uniform_below(rng, 8), 0.35);
    const std::size_t m = h.rows(), n = h.cols();
    std::size_t best = SIZE_MAX;
    for (std::size_t c = 0; c < m; ++c)
      for (std::size_t v = 0; v < n; ++v) {
        if (!h.get(c, v)) continue;
        // BFS over m+n nodes, checks first.
        std::vector<std::size_t> dist(m + n, SIZE_MAX);
        std::vector<std::size_t> queue{c};
        dist[c] = 0;
        for (std::size_t q = 0; q < queue.size(); ++q) {
          const std::size_t u = queue[q];
          for (std::size_t w = 0; w < (u < m ? n : m); ++w) {
            const std::size_t node = u < m ? m + w : w;
            const bool edge = u < m ? h.get(u, w) : h.get(w, u - m);
            if (!edge) continue;
            if ((u == c && node == m + v) || (node == c && u == m + v)) continue;
            if (dist[node] == SIZE_MAX) {
              dist[node] = dist[u] + 1;
              queue.push_back(node);
            }
          }
        }
        if (dist[m + v] != SIZE_MAX) best = std::min(best, dist[m + v] + 1);
      }
    const auto g = tanner_girth(h, 40);
    if (best == SIZE_MAX) {
      CHECK_FALSE(g.has_value());
    } else {
      CHECK(g == best);
    }
  }
}

TEST_CASE("syndrome_code_membership") {
  const GbSpec a1 = std::get<GbSpec>(registry("A1").spec);
  CHECK(syndrome_code_membership(a1, DensePoly::one()));
  // gcd(a, b, x^127 - 1), factored independently.
  const DensePoly g = DensePoly::from_exponents({0, 4, 5, 6, 7}) * DensePoly::from_exponents({0, 1, 2, 4, 5, 6, 7});
  CHECK(poly_gcd(poly_gcd(a1.a.to_dense(), a1.b.to_dense()), DensePoly::x_pow_minus_one(127)) == g);
  CHECK(syndrome_code_membership(a1, g));
  CHECK(syndrome_code_membership(a1, DensePoly::from_exponents({0, 4, 5, 6, 7})));
  CHECK_FALSE(syndrome_code_membership(a1, DensePoly::from_exponents({0, 3, 7})));
  // Another degree-14 divisor of x^127 - 1 that does not divide a(x).
  const DensePoly other = DensePoly::from_exponents({0, 1, 7}) * DensePoly::from_exponents({0, 1, 3, 5, 7});
  CHECK_FALSE(syndrome_code_membership(a1, other));
  CHECK_THROWS_AS(syndrome_code_membership(a1, DensePoly::from_exponents({0, 1, 2})), Error);
}

TEST_CASE("search_gb_polynomials") {
  Rng rng(35);
  const auto free = search_gb_polynomials(31, DensePoly::one(), 3, 4, 100, rng);
  CHECK(free.specs.size() == 4);
  CHECK(free.polynomials_tested == 8);

  const DensePoly g = DensePoly::from_exponents({0, 5, 6}) * DensePoly::from_exponents({0, 1, 4, 5, 6});
  const auto found = search_gb_polynomials(63, g, 5, 2, 200000, rng);
  for (const GbSpec& s : found.specs) {
    CHECK(s.a.weight() == 5);
    CHECK(syndrome_code_membership(s, g));
    CHECK(build_gb(s).k >= 2 * 12);
  }

  const DensePoly g4 = DensePoly::from_exponents({0, 1, 4});  // divides x^15 - 1
  const auto rate = search_gb_polynomials(15, g4, 5, 1000000, 40000, rng);
  const double accept = static_cast<double>(rate.members_found) / static_cast<double>(rate.polynomials_tested);
  CHECK(accept > 1.0 / 16 / 10);
  CHECK(accept < 1.0 / 16 * 10);
}

TEST_CASE("registry entries") {
  const RegistryEntry& a3 = registry("A3");
  CHECK(a3.expected.n == 48);
  CHECK(a3.expected.k == 6);
  CHECK(a3.expected.d == 8);
  const CssCode c3 = build_registry_code("A3");
  CHECK(rank(c3.hx) == 21);
  const TannerStats s3 = tanner_stats(c3);
  CHECK(s3.max_row_weight == 8);
  CHECK(s3.column_weight_string() == "4");
  CHECK(s3.girth_string() == "4");

  const CssCode b2 = build_registry_code("B2");
  CHECK(b2.n() == 882);
  CHECK(b2.k == 48);
  const TannerStats s2 = tanner_stats(b2);
  CHECK(s2.max_row_weight == 8);
  CHECK(s2.column_weight_string() == "3,5");
  std::map<std::size_t, std::size_t> hist;
  for (std::size_t w : b2.hx.column_weights()) ++hist[w];
  CHECK(hist[3] == hist[5]);

  const RegistryEntry& c1 = registry("C1");
  CHECK(c1.expected.n == 7938);
  CHECK(c1.expected.k == 578);
  CHECK(c1.expected.d == 16);

  CHECK_THROWS_AS(registry("Z9"), Error);
  try {
    build_registry_code("D1", "/nonexistent");
    FAIL("expected MissingExternalMatrix");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MissingExternalMatrix);
  }
}

TEST_CASE("registry codes match their expected parameters") {
  for (const std::string& id : registry_ids()) {
    const RegistryEntry& e = registry(id);
    if (e.family == Family::External) continue;
    const CssCode c = build_registry_code(e);
    CHECK_MESSAGE(c.n() == e.expected.n, id);
    CHECK_MESSAGE(c.k == e.expected.k, id);
    CHECK_MESSAGE(check_commutativity(c), id);
  }
}
