#include "qldpc/osd.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include "qldpc/error.hpp"

namespace qldpc {

namespace {

void check_permutation(std::span<const std::size_t> order, std::size_t n) {
  if (order.size() != n) throw Error(ErrorKind::InvalidArgument, "column order must list every column once");
  std::vector<char> seen(n, 0);
  for (std::size_t c : order) {
    if (c >= n || seen[c]) throw Error(ErrorKind::InvalidArgument, "column order is not a permutation");
    seen[c] = 1;
  }
}

std::size_t cost_of(OsdCost cost, const BitVector& x) {
  return cost == OsdCost::Pauli ? pauli_weight(x) : x.weight();
}

void xor_words(std::span<Word> dst, std::span<const Word> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

}  // namespace

BitVector osd_w(OsdCost cost, const BitMatrix& h, const BitVector& s, const BitVector& v,
                std::span<const std::size_t> order, std::size_t w) {
  const std::size_t m = h.rows();
  const std::size_t n = h.cols();
  if (s.size() != m) throw Error(ErrorKind::SizeMismatch, "syndrome length must equal row count");
  if (v.size() != n) throw Error(ErrorKind::SizeMismatch, "initial vector length must equal column count");
  if (w > kMaxOsdOrder) throw Error(ErrorKind::InvalidArgument, "OSD order is limited to 20");
  if (cost == OsdCost::Pauli && n % 2) throw Error(ErrorKind::OddLength, "Pauli cost needs an even column count");
  check_permutation(order, n);

  // Eliminate [H | s]; pivot k ends up in row k with a unit column.
  BitMatrix work(m, n + 1);
  for (std::size_t r = 0; r < m; ++r) {
    std::copy_n(h.row_words(r).begin(), h.stride(), work.row_words(r).begin());
    if (s.get(r)) work.set(r, n);
  }
  const auto pivots = detail::eliminate(work, order);
  const std::size_t rk = pivots.size();
  for (std::size_t r = rk; r < m; ++r) {
    if (work.get(r, n)) throw Error(ErrorKind::SyndromeNotInImage, "syndrome is not in the image of H");
  }

  std::vector<char> is_pivot(n, 0);
  for (std::size_t c : pivots) is_pivot[c] = 1;
  std::vector<std::size_t> info;
  info.reserve(n - rk);
  for (std::size_t c : order) {
    if (!is_pivot[c]) info.push_back(c);
  }
  const std::size_t ww = std::min(w, info.size());
  const std::span<const std::size_t> weak(info.data(), ww);

  // Base candidate: u_F = v_F, u_W = 0, pivots solved.
  BitVector mask(n + 1);
  BitVector base(n);
  for (std::size_t j = ww; j < info.size(); ++j) {
    if (v.get(info[j])) {
      mask.set(info[j]);
      base.set(info[j]);
    }
  }
  mask.set(n);
  for (std::size_t k = 0; k < rk; ++k) {
    const auto row = work.row_words(k);
    const auto mw = mask.words();
    Word acc = 0;
    for (std::size_t i = 0; i < row.size(); ++i) acc ^= row[i] & mw[i];
    if (std::popcount(acc) & 1) base.set(pivots[k]);
  }
  if (ww == 0) return base;

  // Setting u at weak column c toggles c and every pivot whose row has a 1 in c.
  std::vector<BitVector> delta(ww, BitVector(n));
  for (std::size_t j = 0; j < ww; ++j) {
    delta[j].set(weak[j]);
    for (std::size_t k = 0; k < rk; ++k) {
      if (work.get(k, weak[j])) delta[j].flip(pivots[k]);
    }
  }

  // Gray-code walk over r; step g flips bit ctz(g).
  BitVector cur = base;
  std::size_t best_cost = cost_of(cost, cur);
  std::uint64_t best_r = 0;
  std::uint64_t r = 0;
  const std::uint64_t total = std::uint64_t{1} << ww;
  for (std::uint64_t g = 1; g < total; ++g) {
    const auto bit = static_cast<std::size_t>(std::countr_zero(g));
    xor_words(cur.words(), delta[bit].words());
    r ^= std::uint64_t{1} << bit;
    const std::size_t c = cost_of(cost, cur);
    if (c < best_cost || (c == best_cost && r < best_r)) {
      best_cost = c;
      best_r = r;
    }
  }
  BitVector out = base;
  for (std::size_t j = 0; j < ww; ++j) {
    if ((best_r >> j) & 1U) out ^= delta[j];
  }
  return out;
}

BitVector osd_0_simplified(const BitMatrix& h, const BitVector& s, const BitVector& v,
                           std::span<const std::size_t> order) {
  const std::size_t m = h.rows();
  const std::size_t n = h.cols();
  if (s.size() != m) throw Error(ErrorKind::SizeMismatch, "syndrome length must equal row count");
  if (v.size() != n) throw Error(ErrorKind::SizeMismatch, "initial vector length must equal column count");
  check_permutation(order, n);

  // Reduced basis of span(H_S): vectors with distinct pivot rows, each pivot
  // cleared from every other vector. comb tracks the S-columns summed.
  const BitMatrix cols = h.transpose();
  const std::size_t max_rank = std::min(m, n);
  std::vector<BitVector> basis, comb;
  std::vector<std::size_t> pivot_row;
  std::vector<std::size_t> chosen;
  basis.reserve(max_rank);
  comb.reserve(max_rank);

  // s' = s + H v, kept as its residue r modulo span(H_S) plus coefficients.
  BitVector res = s ^ (h * v);
  BitVector res_comb(max_rank);

  std::size_t next = 0;
  while (true) {
    if (res.none()) break;
    if (next == order.size() || chosen.size() == max_rank) {
      throw Error(ErrorKind::SyndromeNotInImage, "syndrome is not in the image of H");
    }
    const std::size_t i = order[next++];
    BitVector col = cols.row(i);
    BitVector cc(max_rank);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (col.get(pivot_row[k])) {
        col ^= basis[k];
        cc ^= comb[k];
      }
    }
    if (col.none()) continue;
    const std::size_t slot = chosen.size();
    chosen.push_back(i);
    cc.set(slot);
    const std::size_t p = col.support().front();
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (basis[k].get(p)) {
        basis[k] ^= col;
        comb[k] ^= cc;
      }
    }
    if (res.get(p)) {
      res ^= col;
      res_comb ^= cc;
    }
    basis.push_back(std::move(col));
    comb.push_back(std::move(cc));
    pivot_row.push_back(p);
    // s' += v_i H_i, and H_i is now the S-column at `slot`.
    if (v.get(i)) res_comb.flip(slot);
  }

  BitVector out = v;
  for (std::size_t k = 0; k < chosen.size(); ++k) out.set(chosen[k], res_comb.get(k));
  return out;
}

PauliVector qosd_w(const BitMatrix& h_bin, const BitVector& s, const PauliVector& v,
                   std::span<const std::size_t> qubit_order, std::size_t w) {
  const std::size_t n = v.size();
  if (h_bin.cols() != 2 * n) throw Error(ErrorKind::SizeMismatch, "stabilizer matrix must have 2n columns");
  check_permutation(qubit_order, n);
  std::vector<std::size_t> bits;
  bits.reserve(2 * n);
  for (std::size_t q : qubit_order) {
    bits.push_back(2 * q);
    bits.push_back(2 * q + 1);
  }
  const BitVector bv = pauli_to_binary(v);
  const BitVector c = w == 0 ? osd_0_simplified(h_bin, s, bv, bits) : osd_w(OsdCost::Pauli, h_bin, s, bv, bits, w);
  return binary_to_pauli(c);
}

PauliVector css_split_osd(const CssCode& code, const BitVector& s_x, const BitVector& s_z,
                          const SoftOutput& soft, const PauliVector& v, std::size_t w) {
  const std::size_t n = code.n();
  if (soft.size() != n || v.size() != n) throw Error(ErrorKind::SizeMismatch, "soft output length differs from code length");
  std::vector<double> kx(n), kz(n);
  for (std::size_t i = 0; i < n; ++i) {
    kx[i] = soft[i][1] + soft[i][2];
    kz[i] = soft[i][2] + soft[i][3];
  }
  const auto sigma_x = order_by_decreasing(kx);
  const auto sigma_z = order_by_decreasing(kz);
  auto side = [&](const BitMatrix& h, const BitVector& s, const BitVector& vv,
                  const std::vector<std::size_t>& ord, const char* tag) {
    try {
      return w == 0 ? osd_0_simplified(h, s, vv, ord) : osd_w(OsdCost::Hamming, h, s, vv, ord, w);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SyndromeNotInImage) throw;
      throw Error(ErrorKind::SyndromeNotInImage, std::string(tag) + " side: syndrome is not in the image");
    }
  };
  BitVector cx = side(code.hz, s_z, v.x_bits(), sigma_x, "X");
  BitVector cz = side(code.hx, s_x, v.z_bits(), sigma_z, "Z");
  return PauliVector(std::move(cx), std::move(cz));
}

// ---------------------------------------------------------------- retries

void RetryConfig::validate() const {
  if (attempts < 1) throw Error(ErrorKind::InvalidArgument, "at least one attempt is required");
  if (!(augmentation_density >= 0.0 && augmentation_density <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "augmentation density must lie in [0, 1]");
  }
  if (!(perturbation_variance >= 0.0)) throw Error(ErrorKind::InvalidArgument, "perturbation variance must be non-negative");
}

RetryResult retry_decode(const RetryConfig& retry, const TannerGraph& graph, const BitVector& syndrome,
                         std::span<const Llr3> prior, const BpConfig& cfg, Rng& rng) {
  retry.validate();
  BpDecoder bp(graph, cfg);
  RetryResult out;
  out.bp = bp.decode(syndrome, prior);
  out.attempts = 1;
  if (out.bp.converged) return out;

  std::vector<Llr3> work(prior.begin(), prior.end());
  std::normal_distribution<double> noise(0.0, std::sqrt(retry.perturbation_variance));
  std::vector<std::size_t> origin;
  while (out.attempts < retry.attempts) {
    ++out.attempts;
    if (retry.method == RetryMethod::Augmentation) {
      const TannerGraph aug = augment_graph(graph, retry.augmentation_density, rng, origin);
      BitVector s2(aug.checks());
      for (std::size_t c = 0; c < aug.checks(); ++c) s2.set(c, syndrome.get(origin[c]));
      BpDecoder abp(aug, cfg);
      BpResult r = abp.decode(s2, prior);
      out.bp = std::move(r);
    } else {
      // A random check left unsatisfied by the last hard decision.
      std::vector<std::size_t> bad;
      for (std::size_t c = 0; c < graph.checks(); ++c) {
        if (graph.check_parity(c, out.bp.hard) != syndrome.get(c)) bad.push_back(c);
      }
      if (bad.empty()) break;
      const std::size_t c = bad[uniform_below(rng, bad.size())];
      if (retry.method == RetryMethod::Perturbation) {
        work.assign(prior.begin(), prior.end());
        for (std::size_t e = graph.check_begin(c); e < graph.check_end(c); ++e) {
          for (double& g : work[graph.edge_var(e)]) g += noise(rng);
        }
      } else {
        for (std::size_t e = graph.check_begin(c); e < graph.check_end(c); ++e) {
          const std::size_t q = graph.edge_var(e);
          work[q] = out.bp.posterior[q];
        }
      }
      out.bp = bp.decode(syndrome, work);
    }
    if (out.bp.converged) break;
  }
  return out;
}

// ---------------------------------------------------------------- pipeline

void DecoderConfig::validate() const {
  bp.validate();
  if (osd_order > kMaxOsdOrder) throw Error(ErrorKind::InvalidArgument, "OSD order is limited to 20");
  if (retry) {
    retry->validate();
    if (bp.variant != BpVariant::Quaternary) {
      throw Error(ErrorKind::InvalidArgument, "retry methods run on the quaternary decoder");
    }
  }
}

Decoder::Decoder(const CssCode& code, DecoderConfig cfg) : code_(&code), cfg_(cfg), graph_(build_graph(code)) {
  cfg_.validate();
  if (cfg_.post == PostProcessor::Osd && cfg_.osd_kind == OsdKind::Quaternary) h_bin_ = css_stabilizer_binary(code);
  if (cfg_.bp.variant == BpVariant::Quaternary) {
    bp_.emplace(graph_, cfg_.bp);
  } else {
    binary_.emplace(code, cfg_.bp);
  }
}

DecodeOutcome Decoder::decode(const BitVector& syndrome, std::span<const Llr3> prior, Rng& rng) {
  DecodeOutcome out;
  BpResult r;
  if (cfg_.retry) {
    RetryResult rr = retry_decode(*cfg_.retry, graph_, syndrome, prior, cfg_.bp, rng);
    out.attempts = rr.attempts;
    r = std::move(rr.bp);
  } else if (bp_) {
    r = bp_->decode(syndrome, prior);
  } else {
    r = binary_->decode(syndrome, prior);
  }
  out.converged_bp = r.converged;
  out.iterations = r.iterations;
  if (r.converged || cfg_.post == PostProcessor::None) {
    out.correction = std::move(r.hard);
    return out;
  }
  out.osd_invoked = true;
  if (cfg_.osd_kind == OsdKind::Quaternary) {
    std::vector<std::size_t> order = reliability_order(r.soft);
    out.correction = qosd_w(h_bin_, syndrome, r.hard, order, cfg_.osd_order);
  } else {
    const std::size_t mx = code_->hx.rows();
    BitVector sx(mx), sz(code_->hz.rows());
    for (std::size_t i = 0; i < mx; ++i) sx.set(i, syndrome.get(i));
    for (std::size_t i = 0; i < sz.size(); ++i) sz.set(i, syndrome.get(mx + i));
    out.correction = css_split_osd(*code_, sx, sz, r.soft, r.hard, cfg_.osd_order);
  }
  return out;
}

}  // namespace qldpc
