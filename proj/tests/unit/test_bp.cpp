#include <doctest.h>

#include <cmath>

#include "qldpc/bp.hpp"
#include "qldpc/error.hpp"
#include "qldpc/pauli.hpp"
#include "qldpc/registry.hpp"
#include "qldpc/simulate.hpp"

using namespace qldpc;

namespace {

void check_normalized(const SoftOutput& soft) {
  for (const auto& q : soft) {
    double sum = 0;
    for (double v : q) {
      CHECK(v >= 0.0);
      sum += v;
    }
    CHECK(std::abs(sum - 1.0) < 1e-9);
  }
}

}  // namespace

TEST_CASE("build_graph") {
  const CssCode a3 = build_registry_code("A3");
  const TannerGraph g = build_graph(a3);
  CHECK(g.qubits() == 48);
  CHECK(g.checks() == 48);
  for (std::size_t c = 0; c < g.checks(); ++c) CHECK(g.check_degree(c) == 8);
  CHECK(g.layers() == 2);

  const CssCode b1 = build_registry_code("B1");
  const TannerGraph gb1 = build_graph(b1);
  CHECK(gb1.layers() == 14);
  for (std::size_t v = 0; v < gb1.qubits(); ++v) CHECK(gb1.var_degree(v) == 6);

  const TannerGraph empty = build_graph(BitMatrix(0, 10));
  CHECK(empty.checks() == 0);
  CHECK(empty.qubits() == 5);

  // Graph syndromes agree with the binary stabilizer matrix.
  Rng rng(51);
  for (int t = 0; t < 20; ++t) {
    const PauliVector e = sample_depolarizing(a3.n(), {0.2}, rng);
    CHECK(g.syndrome(e) == css_syndrome(a3, e));
  }
}

TEST_CASE("hard_decision and reliability_order") {
  SoftOutput soft{{0.97, 0.01, 0.01, 0.01}, {0.1, 0.7, 0.1, 0.1}, {0.25, 0.25, 0.25, 0.25},
                  {0.1, 0.1, 0.4, 0.4}, {0.1, 0.1, 0.7, 0.1}};
  const PauliVector h = hard_decision(soft);
  CHECK(h.get(0) == Pauli::I);
  CHECK(h.get(1) == Pauli::X);
  CHECK(h.get(2) == Pauli::I);
  CHECK(h.get(3) == Pauli::Z);  // Y/Z tie goes to Z
  CHECK(h.get(4) == Pauli::Y);

  const SoftOutput equal(4, {0.7, 0.1, 0.1, 0.1});
  CHECK(reliability_order(equal) == std::vector<std::size_t>{0, 1, 2, 3});
  const SoftOutput three{{0.9, 0.1, 0, 0}, {0.1, 0.9, 0, 0}, {0.5, 0, 0.5, 0}};
  CHECK(reliability_order(three) == std::vector<std::size_t>{1, 2, 0});

  const std::vector<double> px{0.2, 0.5, 0.5, 0.1};
  CHECK(order_by_decreasing(px) == std::vector<std::size_t>{1, 2, 0, 3});
}

TEST_CASE("config validation") {
  BpConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.nms_factor = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.nms_factor = 1.0;
  cfg.max_iterations = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("zero syndrome converges at iteration 0") {
  const CssCode a4 = build_registry_code("A4");
  const TannerGraph g = build_graph(a4);
  for (double p : {0.001, 0.1, 0.3}) {
    BpDecoder dec(g, {});
    const BpResult r = dec.decode(BitVector(g.checks()), depolarizing_prior(a4.n(), p));
    CHECK(r.converged);
    CHECK(r.iterations == 0);
    CHECK(r.hard.is_identity());
    check_normalized(r.soft);
  }
  BpDecoder dec(g, {});
  CHECK_THROWS_AS(dec.decode(BitVector(3), depolarizing_prior(a4.n(), 0.1)), Error);
}

TEST_CASE("single errors on A3 and A4 are corrected by both schedules") {
  for (const char* id : {"A3", "A4"}) {
    const CssCode code = build_registry_code(id);
    const TannerGraph g = build_graph(code);
    const Adjudicator judge(code);
    const auto prior = depolarizing_prior(code.n(), 0.01);
    BpConfig layered, flooding;
    flooding.schedule = Schedule::Flooding;
    BpDecoder dl(g, layered), df(g, flooding);
    for (std::size_t q = 0; q < code.n(); ++q) {
      for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
        PauliVector e(code.n());
        e.set(q, p);
        const BitVector s = g.syndrome(e);
        const BpResult rl = dl.decode(s, prior);
        const BpResult rf = df.decode(s, prior);
        CHECK_MESSAGE(rl.converged, id << " qubit " << q);
        CHECK(rf.converged);
        if (rl.converged) CHECK(judge.success(e, rl.hard));
        if (rf.converged) CHECK(judge.success(e, rf.hard));
        CHECK(rl.hard == rf.hard);
        check_normalized(rl.soft);
      }
    }
  }
}

TEST_CASE("decoding is deterministic and converged means syndrome match") {
  const CssCode b1 = build_registry_code("B1");
  const TannerGraph g = build_graph(b1);
  BpDecoder d1(g, {}), d2(g, {});
  Rng rng(52);
  const auto prior = depolarizing_prior(b1.n(), 0.08);
  for (int t = 0; t < 30; ++t) {
    const PauliVector e = sample_depolarizing(b1.n(), {0.08}, rng);
    const BitVector s = g.syndrome(e);
    const BpResult a = d1.decode(s, prior);
    const BpResult b = d2.decode(s, prior);
    CHECK(a.hard == b.hard);
    CHECK(a.iterations == b.iterations);
    CHECK(a.soft == b.soft);
    CHECK(a.converged == (g.syndrome(a.hard) == s));
  }
}

TEST_CASE("binary CSS variant") {
  const CssCode a4 = build_registry_code("A4");
  BpConfig cfg;
  cfg.variant = BpVariant::BinaryCss;
  CssBinaryBp dec(a4, cfg);
  const auto prior = depolarizing_prior(a4.n(), 0.01);
  const Adjudicator judge(a4);
  CHECK(dec.decode(BitVector(a4.hx.rows() + a4.hz.rows()), prior).hard.is_identity());
  for (std::size_t q = 0; q < a4.n(); ++q) {
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
      PauliVector e(a4.n());
      e.set(q, p);
      const BpResult r = dec.decode(css_syndrome(a4, e), prior);
      CHECK(r.converged);
      if (r.converged) CHECK(judge.success(e, r.hard));
      check_normalized(r.soft);
    }
  }
}

TEST_CASE("augmented graphs keep layers and duplicate checks") {
  const CssCode a3 = build_registry_code("A3");
  const TannerGraph g = build_graph(a3);
  Rng rng(53);
  std::vector<std::size_t> origin;
  const TannerGraph aug = augment_graph(g, 0.25, rng, origin);
  CHECK(aug.checks() == g.checks() + 12);
  CHECK(origin.size() == aug.checks());
  CHECK(aug.layers() == g.layers());
  const auto specs = g.check_specs();
  const auto aspecs = aug.check_specs();
  for (std::size_t j = 0; j < aspecs.size(); ++j) {
    CHECK(aspecs[j].support == specs[origin[j]].support);
    CHECK(aspecs[j].layer == specs[origin[j]].layer);
  }
}
