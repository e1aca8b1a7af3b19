#include "qldpc/bp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qldpc/error.hpp"

namespace qldpc {

namespace {

constexpr double kClamp = 30.0;

inline double clamp_msg(double v) { return std::clamp(v, -kClamp, kClamp); }

// log(e^a + e^b)
inline double lse(double a, double b) {
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::fabs(a - b)));
}

inline std::size_t idx(Pauli p) { return static_cast<std::size_t>(p) - 1; }

// The two non-identity Paulis anticommuting with label h, as Gamma indices.
struct Anti {
  std::size_t a, b, same;
};
constexpr Anti kAnti[4] = {
    {0, 0, 0},
    {1, 2, 0},  // X: Z, Y
    {0, 2, 1},  // Z: X, Y
    {0, 1, 2},  // Y: X, Z
};

Pauli decide(const Llr3& g) {
  // Most probable value: P(I) ~ 1, P(E) ~ exp(-Gamma_E).
  Pauli best = Pauli::I;
  double best_log = 0.0;
  constexpr Pauli kOrder[3] = {Pauli::X, Pauli::Z, Pauli::Y};
  for (Pauli e : kOrder) {
    if (-g[idx(e)] > best_log) {
      best_log = -g[idx(e)];
      best = e;
    }
  }
  return best;
}

std::array<double, 4> soft_of(const Llr3& g) {
  // Order (I, X, Y, Z).
  const double li = 0.0, lx = -g[0], lz = -g[1], ly = -g[2];
  const double m = std::max({li, lx, ly, lz});
  std::array<double, 4> p{std::exp(li - m), std::exp(lx - m), std::exp(ly - m), std::exp(lz - m)};
  const double s = p[0] + p[1] + p[2] + p[3];
  for (double& v : p) v /= s;
  return p;
}

// Normalized min-sum over the messages in `in`, written to `out`.
void min_sum(std::span<const double> in, std::span<double> out, bool syndrome_bit, double alpha) {
  double min1 = kClamp * 2, min2 = kClamp * 2;
  std::size_t argmin = 0;
  bool negative = syndrome_bit;
  for (std::size_t j = 0; j < in.size(); ++j) {
    const double a = std::fabs(in[j]);
    if (in[j] < 0) negative = !negative;
    if (a < min1) {
      min2 = min1;
      min1 = a;
      argmin = j;
    } else if (a < min2) {
      min2 = a;
    }
  }
  for (std::size_t j = 0; j < in.size(); ++j) {
    const double mag = alpha * (j == argmin ? min2 : min1);
    const bool neg = negative != (in[j] < 0);
    out[j] = clamp_msg(neg ? -mag : mag);
  }
}

std::vector<std::size_t> layer_bounds(std::span<const std::size_t> sizes, std::size_t total) {
  std::vector<std::size_t> b{0};
  if (sizes.empty()) {
    if (total) b.push_back(total);
    return b;
  }
  for (std::size_t s : sizes) b.push_back(b.back() + s);
  if (b.back() != total) throw Error(ErrorKind::InvalidArgument, "layer sizes do not cover all checks");
  return b;
}

}  // namespace

// ---------------------------------------------------------------- graph

TannerGraph::TannerGraph(std::size_t n_qubits, std::span<const CheckSpec> checks, std::size_t n_layers)
    : n_(n_qubits) {
  std::vector<std::size_t> deg(n_qubits, 0);
  std::size_t layer = 0;
  layer_begin_.assign(1, 0);
  for (std::size_t c = 0; c < checks.size(); ++c) {
    const auto& spec = checks[c];
    if (spec.layer < layer || spec.layer >= n_layers) {
      throw Error(ErrorKind::InvalidArgument, "checks must be grouped by ascending layer");
    }
    while (layer < spec.layer) {
      layer_begin_.push_back(c);
      ++layer;
    }
    for (auto [v, label] : spec.support) {
      if (v >= n_qubits) throw Error(ErrorKind::SizeMismatch, "check acts beyond the last qubit");
      if (label == Pauli::I) throw Error(ErrorKind::InvalidArgument, "edge labels must be non-identity");
      edge_var_.push_back(v);
      edge_label_.push_back(label);
      ++deg[v];
    }
    check_begin_.push_back(edge_var_.size());
  }
  while (layer < n_layers) {
    layer_begin_.push_back(checks.size());
    ++layer;
  }
  var_begin_.assign(n_qubits + 1, 0);
  for (std::size_t v = 0; v < n_qubits; ++v) var_begin_[v + 1] = var_begin_[v] + deg[v];
  var_edge_.resize(edge_var_.size());
  std::vector<std::size_t> fill(var_begin_.begin(), var_begin_.end() - 1);
  for (std::size_t e = 0; e < edge_var_.size(); ++e) var_edge_[fill[edge_var_[e]]++] = static_cast<std::uint32_t>(e);
}

bool TannerGraph::check_parity(std::size_t c, const PauliVector& e) const noexcept {
  bool parity = false;
  for (std::size_t k = check_begin(c); k < check_end(c); ++k) {
    parity ^= anticommute(edge_label_[k], e.get(edge_var_[k]));
  }
  return parity;
}

BitVector TannerGraph::syndrome(const PauliVector& e) const {
  BitVector s(checks());
  for (std::size_t c = 0; c < checks(); ++c) {
    if (check_parity(c, e)) s.set(c);
  }
  return s;
}

std::vector<TannerGraph::CheckSpec> TannerGraph::check_specs() const {
  std::vector<CheckSpec> specs(checks());
  for (std::size_t k = 0; k < layers(); ++k) {
    for (std::size_t c = layer_begin(k); c < layer_end(k); ++c) {
      specs[c].layer = k;
      for (std::size_t e = check_begin(c); e < check_end(c); ++e) {
        specs[c].support.emplace_back(edge_var_[e], edge_label_[e]);
      }
    }
  }
  return specs;
}

TannerGraph build_graph(const CssCode& code) {
  const auto bounds = layer_bounds(code.layer_sizes, code.hx.rows() + code.hz.rows());
  std::vector<TannerGraph::CheckSpec> checks(code.hx.rows() + code.hz.rows());
  for (std::size_t r = 0; r < code.hx.rows(); ++r) {
    for (std::size_t i : code.hx.row(r).support()) checks[r].support.emplace_back(static_cast<std::uint32_t>(i), Pauli::X);
  }
  for (std::size_t r = 0; r < code.hz.rows(); ++r) {
    auto& c = checks[code.hx.rows() + r];
    for (std::size_t i : code.hz.row(r).support()) c.support.emplace_back(static_cast<std::uint32_t>(i), Pauli::Z);
  }
  std::size_t k = 0;
  for (std::size_t c = 0; c < checks.size(); ++c) {
    while (c >= bounds[k + 1]) ++k;
    checks[c].layer = k;
  }
  return TannerGraph(code.n(), checks, bounds.size() - 1);
}

TannerGraph build_graph(const BitMatrix& h_bin, std::span<const std::size_t> layer_sizes) {
  if (h_bin.cols() % 2) throw Error(ErrorKind::OddLength, "binary stabilizer matrix needs 2n columns");
  const auto bounds = layer_bounds(layer_sizes, h_bin.rows());
  std::vector<TannerGraph::CheckSpec> checks(h_bin.rows());
  std::size_t k = 0;
  for (std::size_t r = 0; r < h_bin.rows(); ++r) {
    while (r >= bounds[k + 1]) ++k;
    checks[r].layer = k;
    const BitVector row = h_bin.row(r);
    for (std::size_t i = 0; i < h_bin.cols() / 2; ++i) {
      // b* places the Z part first.
      const unsigned code = static_cast<unsigned>(row.get(2 * i + 1)) | (static_cast<unsigned>(row.get(2 * i)) << 1);
      if (code) checks[r].support.emplace_back(static_cast<std::uint32_t>(i), static_cast<Pauli>(code));
    }
  }
  return TannerGraph(h_bin.cols() / 2, checks, bounds.size() - 1);
}

TannerGraph augment_graph(const TannerGraph& g, double density, Rng& rng, std::vector<std::size_t>& origin) {
  if (!(density >= 0.0 && density <= 1.0)) throw Error(ErrorKind::InvalidArgument, "augmentation density must lie in [0, 1]");
  const std::size_t m = g.checks();
  const auto count = static_cast<std::size_t>(std::llround(density * static_cast<double>(m)));
  // Partial Fisher-Yates picks `count` distinct checks.
  std::vector<std::size_t> pick(m);
  std::iota(pick.begin(), pick.end(), 0);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, m - i));
    std::swap(pick[i], pick[j]);
  }
  std::vector<bool> dup(m, false);
  for (std::size_t i = 0; i < count; ++i) dup[pick[i]] = true;

  const auto specs = g.check_specs();
  std::vector<TannerGraph::CheckSpec> out;
  out.reserve(m + count);
  origin.clear();
  for (std::size_t k = 0; k < g.layers(); ++k) {
    for (std::size_t c = g.layer_begin(k); c < g.layer_end(k); ++c) {
      out.push_back(specs[c]);
      origin.push_back(c);
    }
    for (std::size_t c = g.layer_begin(k); c < g.layer_end(k); ++c) {
      if (!dup[c]) continue;
      out.push_back(specs[c]);
      origin.push_back(c);
    }
  }
  return TannerGraph(g.qubits(), out, g.layers());
}

// ---------------------------------------------------------------- helpers

void BpConfig::validate() const {
  if (max_iterations < 1) throw Error(ErrorKind::InvalidArgument, "BP needs at least one iteration");
  if (!(nms_factor > 0.0 && nms_factor <= 1.0)) throw Error(ErrorKind::InvalidArgument, "normalization factor must lie in (0, 1]");
}

std::vector<Llr3> depolarizing_prior(std::size_t n, double p) {
  ChannelModel{p}.validate();
  double g = std::log((1.0 - p) / (p / 3.0));
  if (!std::isfinite(g)) g = p <= 0.0 ? kClamp : -kClamp;
  return std::vector<Llr3>(n, Llr3{g, g, g});
}

PauliVector hard_decision(const SoftOutput& soft) {
  PauliVector v(soft.size());
  // Positions in the (I, X, Y, Z) quadruple, visited in tie-break order.
  constexpr std::pair<Pauli, std::size_t> kOrder[4] = {{Pauli::I, 0}, {Pauli::X, 1}, {Pauli::Z, 3}, {Pauli::Y, 2}};
  for (std::size_t i = 0; i < soft.size(); ++i) {
    Pauli best = Pauli::I;
    double best_p = -1.0;
    for (auto [p, k] : kOrder) {
      if (soft[i][k] > best_p) {
        best_p = soft[i][k];
        best = p;
      }
    }
    v.set(i, best);
  }
  return v;
}

std::vector<std::size_t> order_by_decreasing(std::span<const double> key) {
  std::vector<std::size_t> order(key.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });
  return order;
}

std::vector<std::size_t> reliability_order(const SoftOutput& soft) {
  std::vector<double> key(soft.size());
  for (std::size_t i = 0; i < soft.size(); ++i) key[i] = soft[i][1] + soft[i][2] + soft[i][3];
  return order_by_decreasing(key);
}

// ---------------------------------------------------------------- quaternary BP

BpDecoder::BpDecoder(const TannerGraph& graph, BpConfig cfg) : graph_(&graph), cfg_(cfg) {
  cfg_.validate();
  c2v_.resize(graph.edges());
  v2c_.resize(graph.edges());
  pending_.resize(graph.edges());
  gamma_.resize(graph.qubits());
}

BpResult BpDecoder::decode(const BitVector& syndrome, std::span<const Llr3> prior) {
  const TannerGraph& g = *graph_;
  if (syndrome.size() != g.checks()) throw Error(ErrorKind::SizeMismatch, "syndrome length differs from check count");
  if (prior.size() != g.qubits()) throw Error(ErrorKind::SizeMismatch, "prior length differs from qubit count");
  std::fill(c2v_.begin(), c2v_.end(), 0.0);
  std::copy(prior.begin(), prior.end(), gamma_.begin());

  BpResult res;
  res.hard = PauliVector(g.qubits());
  auto refresh_hard = [&] {
    for (std::size_t i = 0; i < g.qubits(); ++i) res.hard.set(i, decide(gamma_[i]));
  };
  auto satisfied = [&] {
    for (std::size_t c = 0; c < g.checks(); ++c) {
      if (g.check_parity(c, res.hard) != syndrome.get(c)) return false;
    }
    return true;
  };

  refresh_hard();
  res.converged = satisfied();
  const double alpha = cfg_.nms_factor;

  auto run_block = [&](std::size_t c_lo, std::size_t c_hi) {
    const std::size_t e_lo = g.check_begin(c_lo);
    const std::size_t e_hi = g.check_begin(c_hi);
    for (std::size_t e = e_lo; e < e_hi; ++e) {
      const Llr3& gm = gamma_[g.edge_var(e)];
      const Anti an = kAnti[static_cast<std::size_t>(g.edge_label(e))];
      const double lam = c2v_[e];
      const double commute = lse(0.0, -gm[an.same]);
      const double anti = lse(-(gm[an.a] - lam), -(gm[an.b] - lam));
      v2c_[e] = clamp_msg(commute - anti);
    }
    for (std::size_t c = c_lo; c < c_hi; ++c) {
      const std::size_t b = g.check_begin(c);
      const std::size_t d = g.check_degree(c);
      min_sum({v2c_.data() + b, d}, {pending_.data() + b, d}, syndrome.get(c), alpha);
    }
    for (std::size_t e = e_lo; e < e_hi; ++e) {
      const double delta = pending_[e] - c2v_[e];
      if (delta == 0.0) continue;
      const Anti an = kAnti[static_cast<std::size_t>(g.edge_label(e))];
      Llr3& gm = gamma_[g.edge_var(e)];
      gm[an.a] += delta;
      gm[an.b] += delta;
      c2v_[e] = pending_[e];
    }
  };

  std::size_t it = 0;
  while (!res.converged && it < cfg_.max_iterations) {
    ++it;
    if (cfg_.schedule == Schedule::Flooding) {
      run_block(0, g.checks());
    } else {
      for (std::size_t k = 0; k < g.layers(); ++k) run_block(g.layer_begin(k), g.layer_end(k));
    }
    refresh_hard();
    res.converged = satisfied();
  }
  res.iterations = it;
  res.posterior.assign(gamma_.begin(), gamma_.end());
  res.soft.resize(g.qubits());
  for (std::size_t i = 0; i < g.qubits(); ++i) res.soft[i] = soft_of(gamma_[i]);
  return res;
}

// ---------------------------------------------------------------- binary BP

BinaryBpDecoder::BinaryBpDecoder(const BitMatrix& h, std::span<const std::size_t> layer_sizes, BpConfig cfg)
    : n_(h.cols()), cfg_(cfg) {
  cfg_.validate();
  check_begin_.push_back(0);
  for (std::size_t r = 0; r < h.rows(); ++r) {
    for (std::size_t i : h.row(r).support()) edge_var_.push_back(static_cast<std::uint32_t>(i));
    check_begin_.push_back(edge_var_.size());
  }
  layer_begin_ = layer_bounds(layer_sizes, h.rows());
  c2v_.resize(edge_var_.size());
  v2c_.resize(edge_var_.size());
  pending_.resize(edge_var_.size());
  gamma_.resize(n_);
}

bool BinaryBpDecoder::satisfied(const BitVector& syndrome) const {
  for (std::size_t c = 0; c + 1 < check_begin_.size(); ++c) {
    bool parity = false;
    for (std::size_t e = check_begin_[c]; e < check_begin_[c + 1]; ++e) parity ^= gamma_[edge_var_[e]] < 0;
    if (parity != syndrome.get(c)) return false;
  }
  return true;
}

BinaryBpDecoder::Result BinaryBpDecoder::decode(const BitVector& syndrome, std::span<const double> prior) {
  if (syndrome.size() != checks()) throw Error(ErrorKind::SizeMismatch, "syndrome length differs from check count");
  if (prior.size() != n_) throw Error(ErrorKind::SizeMismatch, "prior length differs from bit count");
  std::fill(c2v_.begin(), c2v_.end(), 0.0);
  std::copy(prior.begin(), prior.end(), gamma_.begin());
  Result res;
  res.converged = satisfied(syndrome);

  auto run_block = [&](std::size_t c_lo, std::size_t c_hi) {
    const std::size_t e_lo = check_begin_[c_lo];
    const std::size_t e_hi = check_begin_[c_hi];
    for (std::size_t e = e_lo; e < e_hi; ++e) v2c_[e] = clamp_msg(gamma_[edge_var_[e]] - c2v_[e]);
    for (std::size_t c = c_lo; c < c_hi; ++c) {
      const std::size_t b = check_begin_[c];
      const std::size_t d = check_begin_[c + 1] - b;
      min_sum({v2c_.data() + b, d}, {pending_.data() + b, d}, syndrome.get(c), cfg_.nms_factor);
    }
    for (std::size_t e = e_lo; e < e_hi; ++e) {
      gamma_[edge_var_[e]] += pending_[e] - c2v_[e];
      c2v_[e] = pending_[e];
    }
  };

  std::size_t it = 0;
  while (!res.converged && it < cfg_.max_iterations) {
    ++it;
    if (cfg_.schedule == Schedule::Flooding) {
      run_block(0, checks());
    } else {
      for (std::size_t k = 0; k + 1 < layer_begin_.size(); ++k) run_block(layer_begin_[k], layer_begin_[k + 1]);
    }
    res.converged = satisfied(syndrome);
  }
  res.iterations = it;
  res.posterior = gamma_;
  res.hard = BitVector(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (gamma_[i] < 0) res.hard.set(i);
  }
  return res;
}

namespace {

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_layers(const CssCode& code) {
  std::vector<std::size_t> x, z;
  std::size_t acc = 0;
  for (std::size_t s : code.layer_sizes) {
    if (acc < code.hx.rows()) {
      if (acc + s > code.hx.rows()) throw Error(ErrorKind::InvalidArgument, "a layer straddles the H_X/H_Z boundary");
      x.push_back(s);
    } else {
      z.push_back(s);
    }
    acc += s;
  }
  return {x, z};
}

}  // namespace

CssBinaryBp::CssBinaryBp(const CssCode& code, BpConfig cfg)
    : n_(code.n()),
      mx_(code.hx.rows()),
      x_side_(code.hx, split_layers(code).first, cfg),
      z_side_(code.hz, split_layers(code).second, cfg) {}

BpResult CssBinaryBp::decode(const BitVector& syndrome, std::span<const Llr3> prior) {
  if (syndrome.size() != mx_ + z_side_.checks()) throw Error(ErrorKind::SizeMismatch, "syndrome length differs from check count");
  if (prior.size() != n_) throw Error(ErrorKind::SizeMismatch, "prior length differs from qubit count");
  BitVector sx(mx_), sz(z_side_.checks());
  for (std::size_t i = 0; i < mx_; ++i) sx.set(i, syndrome.get(i));
  for (std::size_t i = 0; i < sz.size(); ++i) sz.set(i, syndrome.get(mx_ + i));

  // Marginal bit LLRs: X part flipped by X, Y; Z part flipped by Z, Y.
  std::vector<double> px(n_), pz(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const Llr3& g = prior[i];
    const double li = 0.0, lx = -g[0], lz = -g[1], ly = -g[2];
    px[i] = lse(li, lz) - lse(lx, ly);
    pz[i] = lse(li, lx) - lse(lz, ly);
  }
  auto rz = x_side_.decode(sx, pz);
  auto rx = z_side_.decode(sz, px);

  BpResult res;
  res.converged = rx.converged && rz.converged;
  res.iterations = std::max(rx.iterations, rz.iterations);
  res.hard = PauliVector(rx.hard, rz.hard);
  res.soft.resize(n_);
  res.posterior.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const double qx = 1.0 / (1.0 + std::exp(rx.posterior[i]));
    const double qz = 1.0 / (1.0 + std::exp(rz.posterior[i]));
    res.soft[i] = {(1 - qx) * (1 - qz), qx * (1 - qz), qx * qz, (1 - qx) * qz};
    // Independent X and Z parts: Gamma_X = lx, Gamma_Z = lz, Gamma_Y = lx + lz.
    res.posterior[i] = {rx.posterior[i], rz.posterior[i], rx.posterior[i] + rz.posterior[i]};
  }
  return res;
}

}  // namespace qldpc
