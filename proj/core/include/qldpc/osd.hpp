#pragma once

// Ordered-statistics post-processing and the retry baselines.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qldpc/bitmatrix.hpp"
#include "qldpc/bp.hpp"
#include "qldpc/construction.hpp"
#include "qldpc/pauli.hpp"
#include "qldpc/rng.hpp"

namespace qldpc {

enum class OsdCost { Hamming, Pauli };

inline constexpr std::size_t kMaxOsdOrder = 20;

/// Syndrome OSD-w. `order` lists the columns of h from least to most
/// reliable. Pivots S are chosen greedily along `order`; the information set
/// T is the rest and W its first w members. Every r in F2^w yields the
/// candidate u with u_W = r, u_{T\W} = v_{T\W} and H u = s; the cheapest wins,
/// ties going to the smallest r read as a binary number with bit 0 on the
/// weakest column. Throws SyndromeNotInImage.
BitVector osd_w(OsdCost cost, const BitMatrix& h, const BitVector& s, const BitVector& v,
                std::span<const std::size_t> order, std::size_t w);

/// Order-0 variant that stops eliminating as soon as the running syndrome is
/// in the span of the pivots found so far. Same output as osd_w with w = 0.
BitVector osd_0_simplified(const BitMatrix& h, const BitVector& s, const BitVector& v,
                           std::span<const std::size_t> order);

/// OSD on the binary image b(H) with Pauli-weight cost. `qubit_order` runs
/// from least to most reliable qubit; both bits of a qubit move together.
PauliVector qosd_w(const BitMatrix& h_bin, const BitVector& s, const PauliVector& v,
                   std::span<const std::size_t> qubit_order, std::size_t w);

/// Independent OSD for the two halves of a CSS syndrome with Hamming cost:
/// X part from (H_Z, s_Z) ordered by p_X + p_Y, Z part from (H_X, s_X)
/// ordered by p_Y + p_Z.
PauliVector css_split_osd(const CssCode& code, const BitVector& s_x, const BitVector& s_z,
                          const SoftOutput& soft, const PauliVector& v, std::size_t w);

enum class RetryMethod { Perturbation, EnhancedFeedback, Augmentation };

struct RetryConfig {
  RetryMethod method = RetryMethod::Perturbation;
  std::size_t attempts = 100;
  double perturbation_variance = 0.5;
  double augmentation_density = 0.1;

  void validate() const;
};

struct RetryResult {
  BpResult bp;
  std::size_t attempts = 0;
};

/// Runs BP up to `attempts` times. Attempt 1 is plain BP; later attempts
/// modify the priors of the qubits on a random unsatisfied check
/// (perturbation: base prior plus Gaussian noise; enhanced feedback: last
/// posterior) or duplicate a random fraction of checks (augmentation).
/// Returns the first converged result, else the last one.
RetryResult retry_decode(const RetryConfig& retry, const TannerGraph& graph, const BitVector& syndrome,
                         std::span<const Llr3> prior, const BpConfig& cfg, Rng& rng);

enum class PostProcessor { None, Osd };
enum class OsdKind { Quaternary, CssSplit };

struct DecoderConfig {
  BpConfig bp;
  PostProcessor post = PostProcessor::None;
  std::size_t osd_order = 0;
  OsdKind osd_kind = OsdKind::Quaternary;
  std::optional<RetryConfig> retry;

  void validate() const;
};

struct DecodeOutcome {
  PauliVector correction;
  bool converged_bp = false;
  bool osd_invoked = false;
  std::size_t iterations = 0;
  std::size_t attempts = 1;
};

/// BP, then retries and/or OSD when BP leaves the syndrome unsatisfied.
/// Holds per-thread state.
class Decoder {
 public:
  Decoder(const CssCode& code, DecoderConfig cfg);

  const DecoderConfig& config() const noexcept { return cfg_; }
  DecodeOutcome decode(const BitVector& syndrome, std::span<const Llr3> prior, Rng& rng);

 private:
  const CssCode* code_;
  DecoderConfig cfg_;
  TannerGraph graph_;
  BitMatrix h_bin_;
  std::optional<BpDecoder> bp_;
  std::optional<CssBinaryBp> binary_;
};

}  // namespace qldpc
