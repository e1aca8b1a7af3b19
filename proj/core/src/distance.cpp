#include "qldpc/distance.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <numeric>
#include <thread>

#include "qldpc/error.hpp"
#include "qldpc/simulate.hpp"

namespace qldpc {

namespace {

PauliVector as_pauli(const BitVector& bits, Side side) {
  PauliVector p(bits.size());
  (side == Side::X ? p.x_bits() : p.z_bits()) = bits;
  return p;
}

struct ChunkBest {
  std::size_t weight = kNoBound;
  BitVector vec;
};

std::size_t popcount_words(std::span<const Word> w) {
  std::size_t c = 0;
  for (Word x : w) c += static_cast<std::size_t>(std::popcount(x));
  return c;
}

}  // namespace

bool is_logical(const CssCode& code, const PauliVector& op) {
  if (op.size() != code.n()) return false;
  if (css_syndrome(code, op).any()) return false;
  return !Adjudicator(code).is_stabilizer(op);
}

DistanceResult distance_enumerate(const CssCode& code, Side side, std::size_t cap, std::size_t workers) {
  const BitMatrix& checks = side == Side::X ? code.hz : code.hx;
  const BitMatrix& stabs = side == Side::X ? code.hx : code.hz;
  const std::size_t n = code.n();
  const BitMatrix kernel = kernel_basis(checks);
  const std::size_t dim = kernel.rows();
  if (dim > kMaxEnumerationDimension) {
    throw Error(ErrorKind::KernelTooLarge, "kernel dimension " + std::to_string(dim) + " exceeds " +
                                               std::to_string(kMaxEnumerationDimension));
  }
  const RowSpaceBasis stab_basis(stabs);
  const std::size_t stride = words_for(n);

  // The top `split` bits of the Gray index are fixed per chunk.
  const std::size_t split = std::min<std::size_t>(dim, workers > 1 ? 6 : 0);
  const std::size_t low = dim - split;
  const std::size_t n_chunks = std::size_t{1} << split;
  std::vector<ChunkBest> best(n_chunks);

  auto run_chunk = [&](std::size_t chunk) {
    ChunkBest& out = best[chunk];
    std::size_t limit = cap == kNoBound ? kNoBound : cap + 1;  // accept weight < limit
    std::vector<Word> cur(stride, 0);
    for (std::size_t b = 0; b < split; ++b) {
      if ((chunk >> b) & 1U) {
        const auto row = kernel.row_words(low + b);
        for (std::size_t i = 0; i < stride; ++i) cur[i] ^= row[i];
      }
    }
    auto consider = [&] {
      const std::size_t w = popcount_words(cur);
      if (w == 0 || w >= limit) return;
      BitVector v(n);
      std::copy(cur.begin(), cur.end(), v.words().begin());
      if (stab_basis.contains(v)) return;
      limit = w;
      out.weight = w;
      out.vec = std::move(v);
    };
    consider();
    const std::uint64_t total = std::uint64_t{1} << low;
    for (std::uint64_t g = 1; g < total; ++g) {
      const auto bit = static_cast<std::size_t>(std::countr_zero(g));
      const auto row = kernel.row_words(bit);
      for (std::size_t i = 0; i < stride; ++i) cur[i] ^= row[i];
      consider();
    }
  };

  if (workers <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1)) run_chunk(c);
      });
    }
    for (auto& t : pool) t.join();
  }

  DistanceResult res;
  res.side = side;
  res.exact = true;
  for (const auto& b : best) {
    if (b.weight < res.weight) {
      res.weight = b.weight;
      res.witness = as_pauli(b.vec, side);
    }
  }
  if (res.weight == kNoBound) {
    res.exact = false;
    res.lower_bound = cap == kNoBound ? kNoBound : cap + 1;
  } else {
    res.lower_bound = res.weight;
  }
  return res;
}

DistanceResult distance_enumerate(const CssCode& code, std::size_t cap, std::size_t workers) {
  DistanceResult x = distance_enumerate(code, Side::X, cap, workers);
  DistanceResult z = distance_enumerate(code, Side::Z, cap, workers);
  DistanceResult& best = z.weight < x.weight ? z : x;
  best.lower_bound = std::min(x.lower_bound, z.lower_bound);
  best.exact = best.weight != kNoBound;
  return best;
}

DistanceResult distance_is_search(const CssCode& code, std::size_t iterations, Rng& rng) {
  DistanceResult res;
  const std::size_t n = code.n();
  std::vector<std::size_t> perm(n);
  for (Side side : {Side::X, Side::Z}) {
    const BitMatrix& checks = side == Side::X ? code.hz : code.hx;
    const RowSpaceBasis stab_basis(side == Side::X ? code.hx : code.hz);
    for (std::size_t it = 0; it < iterations; ++it) {
      std::iota(perm.begin(), perm.end(), 0);
      for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[uniform_below(rng, i)]);
      const BitMatrix basis = kernel_basis(checks, perm);
      auto offer = [&](BitVector v) {
        const std::size_t w = v.weight();
        if (w == 0 || w >= res.weight) return;
        if (stab_basis.contains(v)) return;
        res.weight = w;
        res.side = side;
        res.witness = as_pauli(v, side);
      };
      std::vector<BitVector> rows;
      rows.reserve(basis.rows());
      for (std::size_t r = 0; r < basis.rows(); ++r) {
        rows.push_back(basis.row(r));
        offer(rows.back());
      }
      // Sums of two basis vectors: weight is popcount of the xor.
      for (std::size_t a = 0; a < rows.size(); ++a) {
        const auto wa = rows[a].words();
        for (std::size_t b = a + 1; b < rows.size(); ++b) {
          const auto wb = rows[b].words();
          std::size_t w = 0;
          for (std::size_t i = 0; i < wa.size() && w < res.weight; ++i) w += static_cast<std::size_t>(std::popcount(wa[i] ^ wb[i]));
          if (w < res.weight) offer(rows[a] ^ rows[b]);
        }
      }
    }
  }
  return res;
}

}  // namespace qldpc
