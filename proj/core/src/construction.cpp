#include "qldpc/construction.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <set>

#include "qldpc/error.hpp"

namespace qldpc {

CssCode make_css_code(BitMatrix hx, BitMatrix hz, std::string name, std::vector<std::size_t> layer_sizes) {
  if (hx.cols() != hz.cols()) throw Error(ErrorKind::InvalidArgument, "H_X and H_Z column counts differ");
  if (!check_commutativity(hx, hz)) throw Error(ErrorKind::InvalidArgument, "H_X H_Z^T != 0");
  if (layer_sizes.empty()) {
    if (hx.rows()) layer_sizes.push_back(hx.rows());
    if (hz.rows()) layer_sizes.push_back(hz.rows());
  }
  std::size_t covered = 0;
  for (std::size_t s : layer_sizes) covered += s;
  if (covered != hx.rows() + hz.rows()) {
    throw Error(ErrorKind::InvalidArgument, "layer partition does not cover all checks");
  }
  CssCode code;
  code.name = std::move(name);
  code.k = hx.cols() - rank(hx) - rank(hz);
  code.hx = std::move(hx);
  code.hz = std::move(hz);
  code.layer_sizes = std::move(layer_sizes);
  return code;
}

bool check_commutativity(const BitMatrix& hx, const BitMatrix& hz) {
  if (hx.cols() != hz.cols()) return false;
  // (H_X H_Z^T)_{ij} = <row_i(H_X), row_j(H_Z)>
  for (std::size_t i = 0; i < hx.rows(); ++i) {
    const auto a = hx.row_words(i);
    for (std::size_t j = 0; j < hz.rows(); ++j) {
      const auto b = hz.row_words(j);
      Word acc = 0;
      for (std::size_t w = 0; w < a.size(); ++w) acc ^= a[w] & b[w];
      if (std::popcount(acc) & 1) return false;
    }
  }
  return true;
}

bool check_commutativity(const CssCode& code) { return check_commutativity(code.hx, code.hz); }

// ---------------------------------------------------------------- GB

namespace {

void validate_gb(const GbSpec& spec) {
  if (spec.l == 0) throw Error(ErrorKind::InvalidArgument, "circulant size must be positive");
  if (spec.a.size() != spec.l || spec.b.size() != spec.l) {
    throw Error(ErrorKind::SizeMismatch, "a(x), b(x) must live in R_l");
  }
  if (spec.a.is_zero() || spec.b.is_zero()) {
    throw Error(ErrorKind::InvalidArgument, "a(x) and b(x) must be nonzero in R_l");
  }
}

QcMatrix scalar_diagonal(std::size_t size, const RingPoly& b) {
  QcMatrix d(size, size, b.size());
  for (std::size_t i = 0; i < size; ++i) d.set(i, i, b);
  return d;
}

}  // namespace

CssCode build_gb(const GbSpec& spec) {
  validate_gb(spec);
  const BitMatrix a = circulant_expand(spec.a);
  const BitMatrix b = circulant_expand(spec.b);
  BitMatrix hx = BitMatrix::hstack(a, b);
  BitMatrix hz = BitMatrix::hstack(b.transpose(), a.transpose());
  return make_css_code(std::move(hx), std::move(hz), "gb", {spec.l, spec.l});
}

std::size_t gb_dimension(const GbSpec& spec) {
  validate_gb(spec);
  if (spec.l % 2 == 0) return build_gb(spec).k;
  const DensePoly g =
      poly_gcd(poly_gcd(spec.a.to_dense(), spec.b.to_dense()), DensePoly::x_pow_minus_one(spec.l));
  return 2 * static_cast<std::size_t>(g.degree());
}

// ---------------------------------------------------------------- GHP

CssCode build_ghp(const GhpSpec& spec) {
  const std::size_t l = spec.a.circulant_size();
  if (spec.b.size() != l) throw Error(ErrorKind::SizeMismatch, "b(x) must live in R_l");
  const std::size_t m = spec.a.rows();
  const std::size_t n = spec.a.cols();
  BitMatrix hx = BitMatrix::hstack(spec.a.expand(), scalar_diagonal(m, spec.b).expand());
  BitMatrix hz = BitMatrix::hstack(scalar_diagonal(n, transpose_poly(spec.b)).expand(),
                                   spec.a.conjugate_transpose().expand());
  std::vector<std::size_t> layers(m + n, l);
  return make_css_code(std::move(hx), std::move(hz), "ghp", std::move(layers));
}

std::size_t ghp_dimension(const GhpSpec& spec) {
  const std::size_t l = spec.a.circulant_size();
  if (l % 2 == 0) throw Error(ErrorKind::EvenCirculant, "GHP dimension formula requires odd l");
  if (spec.b.size() != l) throw Error(ErrorKind::SizeMismatch, "b(x) must live in R_l");
  const DensePoly xl = DensePoly::x_pow_minus_one(l);
  const DensePoly g = spec.b.is_zero() ? xl : poly_gcd(spec.b.to_dense(), xl);
  const std::size_t m = spec.a.rows();
  const std::size_t n = spec.a.cols();
  std::size_t k = 0;
  for (const auto& f : cached_factorization(l)->factors) {
    if (!(g % f.poly).is_zero()) continue;
    const std::size_t r = residue_rank(reduce_mod_factor(spec.a, f.poly));
    k += f.degree * (m + n - 2 * r);
  }
  return k;
}

// ---------------------------------------------------------------- HP

CssCode build_hp(const HpSpec& spec) {
  const auto& a = spec.a;
  const auto& b = spec.b;
  BitMatrix hx = BitMatrix::hstack(BitMatrix::kron(a, BitMatrix::identity(b.rows())),
                                   BitMatrix::kron(BitMatrix::identity(a.rows()), b));
  BitMatrix hz = BitMatrix::hstack(BitMatrix::kron(BitMatrix::identity(a.cols()), b.transpose()),
                                   BitMatrix::kron(a.transpose(), BitMatrix::identity(b.cols())));
  std::vector<std::size_t> layers(a.rows(), b.rows());
  layers.insert(layers.end(), a.cols(), b.cols());
  std::erase(layers, std::size_t{0});
  return make_css_code(std::move(hx), std::move(hz), "hp", std::move(layers));
}

long hp_dimension(const HpSpec& spec) {
  const long na = static_cast<long>(spec.a.cols());
  const long ma = static_cast<long>(spec.a.rows());
  const long nb = static_cast<long>(spec.b.cols());
  const long mb = static_cast<long>(spec.b.rows());
  const long ka = na - static_cast<long>(rank(spec.a));
  const long kb = nb - static_cast<long>(rank(spec.b));
  return 2 * ka * kb - ka * (nb - mb) - kb * (na - ma);
}

// ---------------------------------------------------------------- Tanner graph statistics

std::optional<std::size_t> tanner_girth(const BitMatrix& h, std::size_t cap) {
  const std::size_t m = h.rows();
  const std::size_t n = h.cols();
  // Vertices: checks [0, m), variables [m, m + n).
  std::vector<std::vector<std::size_t>> adj(m + n);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c : h.row(r).support()) {
      adj[r].push_back(m + c);
      adj[m + c].push_back(r);
    }
  }

  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(m + n, kUnset);
  std::vector<std::size_t> parent(m + n, kUnset);
  std::vector<std::size_t> touched;
  std::vector<std::size_t> queue;
  std::size_t best = cap + 1;

  // Every cycle passes through a check node, so sources can be restricted to checks.
  for (std::size_t s = 0; s < m; ++s) {
    queue.clear();
    touched.clear();
    dist[s] = 0;
    touched.push_back(s);
    queue.push_back(s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t u = queue[head];
      if (2 * dist[u] >= best) break;
      for (std::size_t v : adj[u]) {
        if (v == parent[u]) continue;
        if (dist[v] == kUnset) {
          dist[v] = dist[u] + 1;
          parent[v] = u;
          touched.push_back(v);
          queue.push_back(v);
        } else {
          best = std::min(best, dist[u] + dist[v] + 1);
        }
      }
    }
    for (std::size_t v : touched) {
      dist[v] = kUnset;
      parent[v] = kUnset;
    }
  }
  if (best > cap) return std::nullopt;
  return best;
}

MatrixStats matrix_stats(const BitMatrix& h, std::size_t girth_cap) {
  if (girth_cap < 4) throw Error(ErrorKind::InvalidArgument, "girth cap must be at least 4");
  MatrixStats s;
  for (std::size_t w : h.row_weights()) s.max_row_weight = std::max(s.max_row_weight, w);
  std::set<std::size_t> cw;
  for (std::size_t w : h.column_weights()) cw.insert(w);
  s.column_weights.assign(cw.begin(), cw.end());
  s.girth = tanner_girth(h, girth_cap);
  return s;
}

TannerStats tanner_stats(const CssCode& code, std::size_t girth_cap) {
  if (girth_cap < 4) throw Error(ErrorKind::InvalidArgument, "girth cap must be at least 4");
  TannerStats t;
  t.girth_cap = girth_cap;
  std::set<std::size_t> cw;
  for (const BitMatrix* h : {&code.hx, &code.hz}) {
    if (h->rows() == 0) continue;
    const MatrixStats s = matrix_stats(*h, girth_cap);
    t.max_row_weight = std::max(t.max_row_weight, s.max_row_weight);
    cw.insert(s.column_weights.begin(), s.column_weights.end());
    if (s.girth && (!t.girth || *s.girth < *t.girth)) t.girth = s.girth;
  }
  t.column_weights.assign(cw.begin(), cw.end());
  return t;
}

std::string TannerStats::column_weight_string() const {
  return format_exponents(column_weights);
}

std::string TannerStats::girth_string() const {
  return girth ? std::to_string(*girth) : ">" + std::to_string(girth_cap);
}

// ---------------------------------------------------------------- syndrome protection

bool syndrome_code_membership(const GbSpec& spec, const DensePoly& g) {
  if (g.degree() < 0 || !(DensePoly::x_pow_minus_one(spec.l) % g).is_zero()) {
    throw Error(ErrorKind::NotAFactor, g.to_string() + " does not divide x^l - 1");
  }
  return (spec.a.to_dense() % g).is_zero() && (spec.b.to_dense() % g).is_zero();
}

GbSearchResult search_gb_polynomials(std::size_t l, const DensePoly& g, std::size_t weight,
                                     std::size_t max_specs, std::size_t budget, Rng& rng) {
  if (g.degree() < 0 || !(DensePoly::x_pow_minus_one(l) % g).is_zero()) {
    throw Error(ErrorKind::NotAFactor, g.to_string() + " does not divide x^l - 1");
  }
  if (weight == 0 || weight > l) throw Error(ErrorKind::InvalidArgument, "weight must be in [1, l]");

  GbSearchResult result;
  std::optional<RingPoly> pending;
  std::vector<std::size_t> exps;
  while (result.specs.size() < max_specs && result.polynomials_tested < budget) {
    RingPoly p(l);
    exps.clear();
    while (exps.size() < weight) {
      const auto e = static_cast<std::size_t>(uniform_below(rng, l));
      if (!p.coeff(e)) {
        p.set_coeff(e);
        exps.push_back(e);
      }
    }
    ++result.polynomials_tested;
    if (!(p.to_dense() % g).is_zero()) continue;
    ++result.members_found;
    if (!pending) {
      pending = std::move(p);
    } else {
      result.specs.push_back(GbSpec{l, std::move(*pending), std::move(p)});
      pending.reset();
    }
  }
  return result;
}

}  // namespace qldpc
