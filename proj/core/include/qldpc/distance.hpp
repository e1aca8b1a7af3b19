#pragma once

// Minimum-distance oracles for CSS codes.

#include <cstddef>
#include <limits>
#include <optional>

#include "qldpc/construction.hpp"
#include "qldpc/pauli.hpp"
#include "qldpc/rng.hpp"

namespace qldpc {

/// X: logical X operators, ker(H_Z) outside rowspace(H_X). Z: the mirror.
enum class Side { X, Z };

inline constexpr std::size_t kMaxEnumerationDimension = 28;
inline constexpr std::size_t kNoBound = std::numeric_limits<std::size_t>::max();

struct DistanceResult {
  /// Minimum weight found, or kNoBound when nothing was found.
  std::size_t weight = kNoBound;
  /// True when `weight` is the exact distance of the side(s) searched.
  bool exact = false;
  /// When the search is exhaustive but nothing of weight <= cap exists,
  /// `weight` stays kNoBound and this holds cap + 1.
  std::size_t lower_bound = 0;
  std::optional<Side> side;
  PauliVector witness;
};

/// Walks all 2^dim vectors of the kernel in Gray-code order. Throws
/// KernelTooLarge when dim exceeds kMaxEnumerationDimension.
DistanceResult distance_enumerate(const CssCode& code, Side side, std::size_t cap = kNoBound,
                                  std::size_t workers = 1);
/// Minimum over both sides.
DistanceResult distance_enumerate(const CssCode& code, std::size_t cap = kNoBound, std::size_t workers = 1);

/// Random information sets: each iteration eliminates the check matrix in a
/// random column order, then checks every vector of the resulting kernel
/// basis and every sum of two of them. Returns an upper
/// bound with witness (kNoBound for zero iterations).
DistanceResult distance_is_search(const CssCode& code, std::size_t iterations, Rng& rng);

/// Witness check: commutes with every stabilizer and is not a stabilizer.
bool is_logical(const CssCode& code, const PauliVector& op);

}  // namespace qldpc
