#pragma once

// Belief propagation over the stabilizer Tanner graph.
//
// Quaternary decoder: one scalar message per edge. For an edge whose check
// acts on the qubit as Pauli h, the variable-to-check message is the log
// ratio P(error commutes with h) / P(error anticommutes with h). Check nodes
// use normalized min-sum with the syndrome bit as sign. Variable nodes keep
// Gamma_i[E] = log P(I) / P(E) for E in {X, Z, Y}.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qldpc/bitmatrix.hpp"
#include "qldpc/construction.hpp"
#include "qldpc/pauli.hpp"
#include "qldpc/rng.hpp"

namespace qldpc {

/// Checks are stored in layer order; layer k holds checks
/// [layer_begin[k], layer_begin[k+1]).
class TannerGraph {
 public:
  struct CheckSpec {
    std::vector<std::pair<std::uint32_t, Pauli>> support;  // (qubit, label)
    std::size_t layer = 0;
  };

  TannerGraph() = default;
  /// `checks` must be grouped by layer in ascending order.
  TannerGraph(std::size_t n_qubits, std::span<const CheckSpec> checks, std::size_t n_layers);

  std::size_t qubits() const noexcept { return n_; }
  std::size_t checks() const noexcept { return check_begin_.size() - 1; }
  std::size_t edges() const noexcept { return edge_var_.size(); }
  std::size_t layers() const noexcept { return layer_begin_.size() - 1; }

  std::size_t check_begin(std::size_t c) const noexcept { return check_begin_[c]; }
  std::size_t check_end(std::size_t c) const noexcept { return check_begin_[c + 1]; }
  std::size_t check_degree(std::size_t c) const noexcept { return check_end(c) - check_begin(c); }
  std::size_t layer_begin(std::size_t k) const noexcept { return layer_begin_[k]; }
  std::size_t layer_end(std::size_t k) const noexcept { return layer_begin_[k + 1]; }
  std::uint32_t edge_var(std::size_t e) const noexcept { return edge_var_[e]; }
  Pauli edge_label(std::size_t e) const noexcept { return edge_label_[e]; }
  /// Edge ids incident to qubit v.
  std::span<const std::uint32_t> var_edges(std::size_t v) const noexcept {
    return {var_edge_.data() + var_begin_[v], var_begin_[v + 1] - var_begin_[v]};
  }
  std::size_t var_degree(std::size_t v) const noexcept { return var_begin_[v + 1] - var_begin_[v]; }

  /// Parity of anticommutations of `e` with check c.
  bool check_parity(std::size_t c, const PauliVector& e) const noexcept;
  BitVector syndrome(const PauliVector& e) const;

  /// Check specs reconstructing this graph.
  std::vector<CheckSpec> check_specs() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> check_begin_{0};
  std::vector<std::uint32_t> edge_var_;
  std::vector<Pauli> edge_label_;
  std::vector<std::size_t> var_begin_{0};
  std::vector<std::uint32_t> var_edge_;
  std::vector<std::size_t> layer_begin_{0};
};

/// Graph of the CSS code: H_X rows (label X) then H_Z rows (label Z), one
/// layer per construction block row.
TannerGraph build_graph(const CssCode& code);
/// Graph of a binary stabilizer matrix in b* form with the given layer sizes
/// (empty: one layer).
TannerGraph build_graph(const BitMatrix& h_bin, std::span<const std::size_t> layer_sizes = {});

/// Copy of `g` in which a `density` fraction of the checks, chosen at random,
/// is duplicated; each duplicate joins the layer of its original.
/// `origin[j]` is the original index of the new check j.
TannerGraph augment_graph(const TannerGraph& g, double density, Rng& rng, std::vector<std::size_t>& origin);

enum class Schedule { Layered, Flooding };
enum class BpVariant { Quaternary, BinaryCss };

struct BpConfig {
  std::size_t max_iterations = 32;
  double nms_factor = 0.625;
  Schedule schedule = Schedule::Layered;
  BpVariant variant = BpVariant::Quaternary;

  /// Throws InvalidArgument.
  void validate() const;
};

/// Per-qubit (p_I, p_X, p_Y, p_Z).
using SoftOutput = std::vector<std::array<double, 4>>;

/// Per-qubit Gamma values indexed by Pauli code - 1: {X, Z, Y}.
using Llr3 = std::array<double, 3>;

struct BpResult {
  SoftOutput soft;
  std::vector<Llr3> posterior;
  PauliVector hard;
  bool converged = false;
  std::size_t iterations = 0;
};

/// Depolarizing prior log((1 - p) / (p / 3)) on every qubit and Pauli.
std::vector<Llr3> depolarizing_prior(std::size_t n, double p);

/// Most probable Pauli per qubit; ties go to the first in I, X, Z, Y.
PauliVector hard_decision(const SoftOutput& soft);
/// Qubits by decreasing p_X + p_Y + p_Z; equal keys by ascending index.
std::vector<std::size_t> reliability_order(const SoftOutput& soft);
/// Qubits by decreasing key; equal keys by ascending index.
std::vector<std::size_t> order_by_decreasing(std::span<const double> key);

/// Quaternary NMS decoder. Holds message buffers; one instance per thread.
class BpDecoder {
 public:
  BpDecoder(const TannerGraph& graph, BpConfig cfg);

  const TannerGraph& graph() const noexcept { return *graph_; }
  const BpConfig& config() const noexcept { return cfg_; }

  /// Throws SizeMismatch when the syndrome length differs from the check count.
  BpResult decode(const BitVector& syndrome, std::span<const Llr3> prior);

 private:
  const TannerGraph* graph_;
  BpConfig cfg_;
  std::vector<double> c2v_;
  std::vector<double> v2c_;
  std::vector<double> pending_;
  std::vector<Llr3> gamma_;
};

/// Binary NMS over a parity-check matrix: bit LLRs log P(0) / P(1).
class BinaryBpDecoder {
 public:
  BinaryBpDecoder(const BitMatrix& h, std::span<const std::size_t> layer_sizes, BpConfig cfg);

  struct Result {
    std::vector<double> posterior;
    BitVector hard;
    bool converged = false;
    std::size_t iterations = 0;
  };
  Result decode(const BitVector& syndrome, std::span<const double> prior);

  std::size_t checks() const noexcept { return check_begin_.size() - 1; }

 private:
  std::size_t n_;
  BpConfig cfg_;
  std::vector<std::size_t> check_begin_;
  std::vector<std::uint32_t> edge_var_;
  std::vector<std::size_t> layer_begin_;
  std::vector<double> c2v_;
  std::vector<double> v2c_;
  std::vector<double> pending_;
  std::vector<double> gamma_;

  bool satisfied(const BitVector& syndrome) const;
};

/// X/Z-independent decoding of a CSS code: Z errors from (H_X, s_X), X errors
/// from (H_Z, s_Z), each with bit prior 2p/3.
class CssBinaryBp {
 public:
  CssBinaryBp(const CssCode& code, BpConfig cfg);
  /// `prior` holds the Gamma values of each qubit; the bit priors are
  /// marginalized from it.
  BpResult decode(const BitVector& syndrome, std::span<const Llr3> prior);

 private:
  std::size_t n_;
  std::size_t mx_;
  BinaryBpDecoder x_side_;  // decodes Z errors with H_X
  BinaryBpDecoder z_side_;  // decodes X errors with H_Z
};

}  // namespace qldpc
