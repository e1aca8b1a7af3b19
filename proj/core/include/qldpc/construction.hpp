#pragma once

// CSS code constructions: generalized bicycle (GB), generalized hypergraph
// product (GHP) over the ring of circulants, and the ordinary hypergraph
// product (HP). Every builder returns a CssCode whose dimension comes from
// binary ranks, K = N - rk H_X - rk H_Z; the algebraic dimension formulas are
// exposed separately so the two routes can be compared.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qldpc/bitmatrix.hpp"
#include "qldpc/circulant.hpp"
#include "qldpc/rng.hpp"

namespace qldpc {

struct CssCode {
  std::string name;
  BitMatrix hx;
  BitMatrix hz;
  std::size_t k = 0;
  std::optional<std::size_t> known_distance;
  /// Row counts of the construction's block rows for the stacked [H_X; H_Z]
  /// check list. Used as the layer partition of the layered BP schedule.
  std::vector<std::size_t> layer_sizes;

  std::size_t n() const noexcept { return hx.cols(); }
  double rate() const noexcept { return n() == 0 ? 0.0 : static_cast<double>(k) / static_cast<double>(n()); }
};

/// Wraps a matrix pair. K is computed by binary rank. Throws InvalidArgument
/// when the column counts differ or H_X H_Z^T != 0.
CssCode make_css_code(BitMatrix hx, BitMatrix hz, std::string name = {},
                      std::vector<std::size_t> layer_sizes = {});

bool check_commutativity(const BitMatrix& hx, const BitMatrix& hz);
bool check_commutativity(const CssCode& code);

struct GbSpec {
  std::size_t l = 0;
  RingPoly a;
  RingPoly b;
};

struct GhpSpec {
  QcMatrix a;
  RingPoly b;
};

struct HpSpec {
  BitMatrix a;
  BitMatrix b;
};

/// H_X = [A, B], H_Z = [B^T, A^T] with A, B the circulants of a(x), b(x).
CssCode build_gb(const GbSpec& spec);
/// 2 deg gcd(a, b, x^l - 1) for odd l; for even l falls back to binary ranks.
std::size_t gb_dimension(const GbSpec& spec);

/// H_X = [A, b I_m], H_Z = [b^T I_n, A*].
CssCode build_ghp(const GhpSpec& spec);
/// sum over irreducible f_i | gcd(b, x^l - 1) of deg f_i (m + n - 2 rk phi_i(A)). Odd l only.
std::size_t ghp_dimension(const GhpSpec& spec);

/// H_X = (a (x) I_{m_b}, I_{m_a} (x) b), H_Z = (I_{n_a} (x) b^T, a^T (x) I_{n_b}).
CssCode build_hp(const HpSpec& spec);
/// 2 k_a k_b - k_a (n_b - m_b) - k_b (n_a - m_a) with k = n - rank.
long hp_dimension(const HpSpec& spec);

struct MatrixStats {
  std::size_t max_row_weight = 0;
  std::vector<std::size_t> column_weights;  // distinct values, ascending
  std::optional<std::size_t> girth;         // empty: no cycle of length <= cap
};

struct TannerStats {
  std::size_t max_row_weight = 0;
  std::vector<std::size_t> column_weights;  // distinct values over H_X and H_Z
  std::optional<std::size_t> girth;         // min over the H_X and H_Z Tanner graphs
  std::size_t girth_cap = 0;

  std::string column_weight_string() const;  // "5" or "3,5"
  std::string girth_string() const;          // "6", or ">8" when no cycle is within the cap
};

/// Length of the shortest cycle in the Tanner graph of `h`, if it is <= cap.
std::optional<std::size_t> tanner_girth(const BitMatrix& h, std::size_t cap);
MatrixStats matrix_stats(const BitMatrix& h, std::size_t girth_cap);
/// Weights and girth of H_X and H_Z, each taken as its own Tanner graph.
TannerStats tanner_stats(const CssCode& code, std::size_t girth_cap = 8);

/// True iff a(x) and b(x) are codewords of the cyclic code generated by g(x),
/// i.e. a mod g = b mod g = 0. Throws NotAFactor unless g | x^l - 1.
bool syndrome_code_membership(const GbSpec& spec, const DensePoly& g);

struct GbSearchResult {
  std::vector<GbSpec> specs;
  std::size_t polynomials_tested = 0;
  std::size_t members_found = 0;
};

/// Rejection sampler: draws random weight-w polynomials in R_l until
/// `max_specs` pairs (a, b) with a, b in C_g are found or `budget` draws are used.
GbSearchResult search_gb_polynomials(std::size_t l, const DensePoly& g, std::size_t weight,
                                     std::size_t max_specs, std::size_t budget, Rng& rng);

}  // namespace qldpc
