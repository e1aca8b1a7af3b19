// Acceptance suite. Each criterion prints exactly one PASS/FAIL line on stdout;
// the exit status is 0 only if every requested criterion passed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "qldpc/bitmatrix.hpp"
#include "qldpc/circulant.hpp"
#include "qldpc/construction.hpp"
#include "qldpc/distance.hpp"
#include "qldpc/osd.hpp"
#include "qldpc/pauli.hpp"
#include "qldpc/registry.hpp"
#include "qldpc/simulate.hpp"

using namespace qldpc;

namespace {

// Tolerances and budgets.
constexpr double kTableTimeLimitSeconds = 120.0;
constexpr double kPropertyTimeLimitSeconds = 60.0;
constexpr std::size_t kPropertyInstances = 200;
constexpr double kWerFactor = 2.0;
constexpr std::size_t kMinFailures = 100;
constexpr std::size_t kOrderingTrials = 10000;
constexpr std::size_t kRetryAttempts = 100;
constexpr std::size_t kOracleInstances = 50;
constexpr std::size_t kOracleMaxInfoSet = 12;

// Reference word error rates.
constexpr double kRefB2Osd0 = 0.0212359;  // p = 0.10
constexpr double kRefB2Plain = 0.0449236; // p = 0.10
constexpr double kRefA5Osd0 = 0.0254842;  // p = 0.08

constexpr std::uint64_t kSeed = 20240601;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::size_t workers() { return std::max(1U, std::thread::hardware_concurrency()); }

// ---------------------------------------------------------------- 1

Verdict table_parameters() {
  const auto t0 = std::chrono::steady_clock::now();
  const char* ids[] = {"A1", "A2", "A3", "A4", "A5", "A6", "B1", "B2", "B3", "C1", "C2"};
  std::string bad;
  for (const char* id : ids) {
    const RegistryEntry& e = registry(id);
    const CssCode c = build_registry_code(e);
    const std::size_t k4 = c.n() - rank(c.hx) - rank(c.hz);
    if (c.n() != e.expected.n || k4 != e.expected.k) bad += std::string(" ") + id + "(N/K)";
    if (e.family == Family::GB) {
      const auto& spec = std::get<GbSpec>(e.spec);
      if (spec.l % 2 == 1 && gb_dimension(spec) != e.expected.k) bad += std::string(" ") + id + "(gcd)";
    }
    if (e.family == Family::GHP && ghp_dimension(std::get<GhpSpec>(e.spec)) != e.expected.k)
      bad += std::string(" ") + id + "(residue)";
  }
  const double secs = seconds_since(t0);
  if (secs > kTableTimeLimitSeconds) bad += " time";
  return {bad.empty(), "11 codes, N/K by binary rank, algebraic K for odd-l GB and all GHP, " + fmt("%.1fs", secs) +
                           (bad.empty() ? "" : "; mismatches:" + bad)};
}

// ---------------------------------------------------------------- 2

Verdict exact_distances() {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = true;
  for (auto [id, expect] : {std::pair{"A3", std::size_t{8}}, std::pair{"A4", std::size_t{9}}}) {
    const CssCode c = build_registry_code(id);
    const DistanceResult d = distance_enumerate(c, kNoBound, workers());
    // Witness: commutes with every stabilizer and lies outside the stabilizer row space.
    const bool zero_syndrome = css_syndrome(c, d.witness).none();
    const bool outside = !(in_rowspace(c.hx, d.witness.x_bits()) && in_rowspace(c.hz, d.witness.z_bits()));
    const bool good = d.exact && d.weight == expect && d.witness.weight() == expect && zero_syndrome && outside;
    ok &= good;
    detail += std::string(id) + " d=" + (d.weight == kNoBound ? "none" : std::to_string(d.weight)) + " ";
  }
  return {ok, detail + "witnesses checked, " + fmt("%.1fs", seconds_since(t0))};
}

// ---------------------------------------------------------------- 3

RingPoly random_ring(Rng& rng, std::size_t l, std::size_t weight) {
  RingPoly p(l);
  while (p.weight() < std::min(weight, l)) p.set_coeff(uniform_below(rng, l));
  return p;
}

QcMatrix random_qc(Rng& rng, std::size_t m, std::size_t n, std::size_t l) {
  QcMatrix a(m, n, l);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (uniform_below(rng, 3) != 0) a.set(i, j, random_ring(rng, l, 1 + uniform_below(rng, 4)));
  return a;
}

RingPoly random_factor(Rng& rng, std::size_t l) {
  const auto& f = cached_factorization(l)->factors;
  return RingPoly::from_dense(l, f[uniform_below(rng, f.size())].poly);
}

Verdict property_suites() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(kSeed + 3);
  std::size_t lemma = 0, prop1 = 0, prop2 = 0;
  for (std::size_t t = 0; t < kPropertyInstances; ++t) {
    const std::size_t l = 1 + 2 * uniform_below(rng, 32);
    const QcMatrix a = random_qc(rng, 1 + uniform_below(rng, 4), 1 + uniform_below(rng, 4), l);
    lemma += qc_rank(a) == rank(a.expand());
  }
  for (std::size_t t = 0; t < kPropertyInstances;) {
    const std::size_t l = 1 + 2 * uniform_below(rng, 32);
    GbSpec s{l, random_ring(rng, l, 1 + uniform_below(rng, 6)), random_ring(rng, l, 1 + uniform_below(rng, 6))};
    if (t % 2 == 0) {
      const RingPoly g = random_factor(rng, l);
      s.a = cyclic_mul(s.a, g);
      s.b = cyclic_mul(s.b, g);
    }
    if (s.a.is_zero() || s.b.is_zero()) continue;
    const CssCode c = build_gb(s);
    prop1 += gb_dimension(s) == c.n() - rank(c.hx) - rank(c.hz);
    ++t;
  }
  for (std::size_t t = 0; t < kPropertyInstances; ++t) {
    const std::size_t l = 3 + 2 * uniform_below(rng, 31);
    const QcMatrix a = random_qc(rng, 1 + uniform_below(rng, 4), 1 + uniform_below(rng, 4), l);
    RingPoly b = random_factor(rng, l);
    if (t % 3 == 0) b = cyclic_mul(b, random_ring(rng, l, 2));
    if (b.is_zero()) b.set_coeff(0);
    const GhpSpec s{a, b};
    const CssCode c = build_ghp(s);
    prop2 += ghp_dimension(s) == c.n() - rank(c.hx) - rank(c.hz);
  }
  const double secs = seconds_since(t0);
  const std::size_t n = kPropertyInstances;
  const bool ok = lemma == n && prop1 == n && prop2 == n && secs < kPropertyTimeLimitSeconds;
  return {ok, "qc rank " + std::to_string(lemma) + "/" + std::to_string(n) + ", GB dimension " + std::to_string(prop1) +
                  "/" + std::to_string(n) + ", GHP dimension " + std::to_string(prop2) + "/" + std::to_string(n) + ", " +
                  fmt("%.1fs", secs)};
}

// ---------------------------------------------------------------- 4

WerRecord simulate_point(const CssCode& code, double p, const DecoderConfig& dec, std::size_t max_trials,
                         std::size_t target_failures) {
  SimConfig cfg;
  cfg.p_values = {p};
  cfg.decoder = dec;
  cfg.max_trials = max_trials;
  cfg.target_failures = target_failures;
  cfg.seed = kSeed;
  cfg.workers = workers();
  return run_wer(code, cfg).front();
}

DecoderConfig plain_bp() { return {}; }

DecoderConfig osd(std::size_t w) {
  DecoderConfig d;
  d.post = PostProcessor::Osd;
  d.osd_order = w;
  return d;
}

DecoderConfig retry(RetryMethod m) {
  DecoderConfig d;
  RetryConfig r;
  r.method = m;
  r.attempts = kRetryAttempts;
  d.retry = r;
  return d;
}

std::string wer_detail(const std::string& label, double p, const WerRecord& r) {
  return label + " p=" + fmt("%.2f", p) + " wer=" + fmt("%.4g", r.wer) + " (" + std::to_string(r.failures) + "/" +
         std::to_string(r.trials) + ", " + fmt("%.0fs", r.seconds) + ")";
}

Verdict wer_against(const std::string& id, const std::string& label, double p, const DecoderConfig& dec,
                    double reference) {
  const CssCode code = build_registry_code(id);
  const WerRecord r = simulate_point(code, p, dec, 200000, kMinFailures);
  const double ratio = r.wer > 0 ? std::max(r.wer / reference, reference / r.wer) : INFINITY;
  const bool ok = r.failures >= kMinFailures && ratio <= kWerFactor;
  return {ok, wer_detail(id + " " + label, p, r) + " reference " + fmt("%.4g", reference) + " ratio " +
                  fmt("%.2f", ratio) + " (limit " + fmt("%.1f", kWerFactor) + ")"};
}

Verdict wer_b3_osd0() {
  // No reference value is available for this point; the measurement is
  // reported and the criterion cannot be confirmed.
  const CssCode code = build_registry_code("B3");
  const WerRecord r = simulate_point(code, 0.10, osd(0), 100000, kMinFailures);
  return {false, wer_detail("B3 BP+OSD-0", 0.10, r) + "; reference value unavailable, cannot compare"};
}

// ---------------------------------------------------------------- 5

Verdict paired_orderings(const std::string& id) {
  const CssCode code = build_registry_code(id);
  const std::vector<std::pair<std::string, DecoderConfig>> variants = {
      {"bp", plain_bp()},
      {"osd0", osd(0)},
      {"osd4", osd(4)},
      {"pert", retry(RetryMethod::Perturbation)},
      {"efb", retry(RetryMethod::EnhancedFeedback)},
      {"aug", retry(RetryMethod::Augmentation)},
  };
  bool ok = true;
  std::string detail = id;
  for (double p : {0.06, 0.10}) {
    std::map<std::string, std::size_t> fails;
    for (const auto& [name, dec] : variants) {
      fails[name] = simulate_point(code, p, dec, kOrderingTrials, kOrderingTrials + 1).failures;
    }
    const bool here = fails["osd4"] <= fails["osd0"] && fails["osd0"] <= fails["bp"] && fails["pert"] <= fails["bp"] &&
                      fails["efb"] <= fails["bp"] && fails["aug"] <= fails["bp"];
    ok &= here;
    detail += " p=" + fmt("%.2f", p) + "[";
    for (const auto& [name, dec] : variants) detail += name + "=" + std::to_string(fails[name]) + " ";
    detail.back() = ']';
  }
  return {ok, detail + " failures of " + std::to_string(kOrderingTrials) + " shared trials"};
}

// ---------------------------------------------------------------- 6

BitMatrix random_matrix(Rng& rng, std::size_t m, std::size_t n, double density) {
  std::bernoulli_distribution bit(density);
  BitMatrix a(m, n);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (bit(rng)) a.set(r, c);
  return a;
}

BitVector random_vector(Rng& rng, std::size_t n, double density) {
  std::bernoulli_distribution bit(density);
  BitVector v(n);
  for (std::size_t i = 0; i < n; ++i)
    if (bit(rng)) v.set(i);
  return v;
}

BitVector from_mask(std::uint64_t bits, std::size_t n) {
  BitVector u(n);
  for (std::size_t i = 0; i < n; ++i) u.set(i, (bits >> i) & 1U);
  return u;
}

Verdict osd_oracles() {
  Rng rng(kSeed + 6);
  std::size_t full_ok = 0, simple_ok = 0;
  for (std::size_t t = 0; t < kOracleInstances;) {
    const bool pauli = t % 2 == 1;
    const std::size_t n = pauli ? 2 * (4 + uniform_below(rng, 4)) : 8 + uniform_below(rng, 9);
    const BitMatrix h = random_matrix(rng, 2 + uniform_below(rng, n / 2), n, 0.35);
    const std::size_t info = n - rank(h);
    if (info > kOracleMaxInfoSet) continue;
    const BitVector s = h * random_vector(rng, n, 0.3);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const OsdCost cost = pauli ? OsdCost::Pauli : OsdCost::Hamming;
    const BitVector got = osd_w(cost, h, s, random_vector(rng, n, 0.3), order, info);
    std::size_t best = SIZE_MAX;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      const BitVector u = from_mask(bits, n);
      if (!(h * u == s)) continue;
      best = std::min(best, pauli ? pauli_weight(u) : u.weight());
    }
    const std::size_t got_cost = pauli ? pauli_weight(got) : got.weight();
    full_ok += h * got == s && got_cost == best;
    ++t;
  }
  for (std::size_t t = 0; t < kOracleInstances; ++t) {
    const std::size_t n = 20 + uniform_below(rng, 200);
    const BitMatrix h = random_matrix(rng, 1 + uniform_below(rng, n), n, t % 2 ? 0.03 : 0.3);
    const BitVector s = h * random_vector(rng, n, 0.2);
    const BitVector v = random_vector(rng, n, 0.2);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    simple_ok += osd_0_simplified(h, s, v, order) == osd_w(OsdCost::Hamming, h, s, v, order, 0);
  }
  const std::size_t n = kOracleInstances;
  return {full_ok == n && simple_ok == n, "full-order OSD vs coset search " + std::to_string(full_ok) + "/" +
                                              std::to_string(n) + ", simplified OSD-0 vs OSD-0 " +
                                              std::to_string(simple_ok) + "/" + std::to_string(n)};
}

// ---------------------------------------------------------------- 7

Verdict syndrome_protection() {
  const auto& spec = std::get<GbSpec>(registry("A1").spec);
  const DensePoly g = DensePoly::from_exponents({0, 1, 7}) * DensePoly::from_exponents({0, 1, 3, 5, 7});
  const bool member = syndrome_code_membership(spec, g);
  std::string detail = "A1 a(x), b(x) mod (x^7+x+1)(x^7+x^5+x^3+x+1): ";
  if (member) return {true, detail + "both zero"};
  const DensePoly actual = poly_gcd(poly_gcd(spec.a.to_dense(), spec.b.to_dense()), DensePoly::x_pow_minus_one(spec.l));
  std::string factors;
  for (const auto& f : cached_factorization(spec.l)->factors)
    if ((actual % f.poly).is_zero()) factors += "(" + f.poly.to_string() + ")";
  return {false, detail + "a mod g " + ((spec.a.to_dense() % g).is_zero() ? "zero" : "nonzero") + ", b mod g " +
                     ((spec.b.to_dense() % g).is_zero() ? "zero" : "nonzero") + "; gcd(a, b, x^127-1) = " + factors};
}

// ---------------------------------------------------------------- 8

Verdict single_errors() {
  std::string detail;
  bool ok = true;
  for (const char* id : {"A3", "A4", "B1"}) {
    const CssCode code = build_registry_code(id);
    const Adjudicator judge(code);
    Decoder dec(code, osd(0));
    const auto prior = depolarizing_prior(code.n(), 0.01);
    Rng rng(kSeed + 8);
    std::size_t good = 0, total = 0;
    for (std::size_t q = 0; q < code.n(); ++q) {
      for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
        PauliVector e(code.n());
        e.set(q, p);
        const DecodeOutcome out = dec.decode(css_syndrome(code, e), prior, rng);
        good += css_syndrome(code, out.correction) == css_syndrome(code, e) && judge.is_stabilizer(e * out.correction);
        ++total;
      }
    }
    ok &= good == total;
    detail += std::string(id) + " " + std::to_string(good) + "/" + std::to_string(total) + " ";
  }
  return {ok, detail + "weight-1 errors corrected by BP+OSD-0 at p=0.01"};
}

const std::vector<std::pair<std::string, std::function<Verdict()>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<Verdict()>>> list = {
      {"1", table_parameters},
      {"2", exact_distances},
      {"3", property_suites},
      {"4a", [] { return wer_against("B2", "BP+OSD-0", 0.10, osd(0), kRefB2Osd0); }},
      {"4b", [] { return wer_against("B2", "plain BP", 0.10, plain_bp(), kRefB2Plain); }},
      {"4c", [] { return wer_against("A5", "BP+OSD-0", 0.08, osd(0), kRefA5Osd0); }},
      {"4d", wer_b3_osd0},
      {"5-B2", [] { return paired_orderings("B2"); }},
      {"5-B3", [] { return paired_orderings("B3"); }},
      {"6", osd_oracles},
      {"7", syndrome_protection},
      {"8", single_errors},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("acceptance criteria");
  std::vector<std::string> wanted;
  app.add_option("--criterion", wanted, "criterion id (repeatable); default all");
  CLI11_PARSE(app, argc, argv);

  bool all_pass = true;
  std::size_t ran = 0;
  for (const auto& [id, fn] : criteria()) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), id) == wanted.end()) continue;
    ++ran;
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %s: %s\n", v.pass ? "PASS" : "FAIL", id.c_str(), v.detail.c_str());
    std::fflush(stdout);
    all_pass &= v.pass;
  }
  if (ran == 0) {
    std::fprintf(stderr, "no such criterion\n");
    return 2;
  }
  return all_pass ? 0 : 1;
}
