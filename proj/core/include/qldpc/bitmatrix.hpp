#pragma once

// Dense bit-packed linear algebra over F2.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qldpc {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) noexcept {
  return (bits + kWordBits - 1) / kWordBits;
}

/// Fixed-length vector over F2. Padding bits past size() are always zero.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t len) : len_(len), data_(words_for(len), 0) {}

  /// Parses a string of '0'/'1' characters.
  static BitVector from_string(std::string_view bits);
  static BitVector from_support(std::size_t len, std::span<const std::size_t> support);

  std::size_t size() const noexcept { return len_; }
  bool empty() const noexcept { return len_ == 0; }

  bool get(std::size_t i) const noexcept { return (data_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i, bool value = true) noexcept {
    const Word mask = Word{1} << (i % kWordBits);
    if (value) {
      data_[i / kWordBits] |= mask;
    } else {
      data_[i / kWordBits] &= ~mask;
    }
  }
  void flip(std::size_t i) noexcept { data_[i / kWordBits] ^= Word{1} << (i % kWordBits); }
  void clear() noexcept;

  std::size_t weight() const noexcept;
  bool any() const noexcept;
  bool none() const noexcept { return !any(); }
  /// Parity of the bitwise AND with `other`.
  bool dot(const BitVector& other) const;
  std::vector<std::size_t> support() const;

  std::span<Word> words() noexcept { return data_; }
  std::span<const Word> words() const noexcept { return data_; }

  BitVector& operator^=(const BitVector& other);
  friend BitVector operator^(BitVector lhs, const BitVector& rhs) { return lhs ^= rhs; }
  bool operator==(const BitVector& other) const = default;

  std::string to_string() const;

 private:
  std::size_t len_ = 0;
  std::vector<Word> data_;
};

/// Dense row-major bit matrix. Each row is packed into stride() machine words.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * stride_, 0) {}

  static BitMatrix identity(std::size_t n);
  /// Builds a matrix from equal-length '0'/'1' strings.
  static BitMatrix from_rows(std::span<const std::string_view> rows);
  static BitMatrix from_rows(std::span<const BitVector> rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t stride() const noexcept { return stride_; }

  bool get(std::size_t r, std::size_t c) const noexcept {
    return (data_[r * stride_ + c / kWordBits] >> (c % kWordBits)) & 1U;
  }
  void set(std::size_t r, std::size_t c, bool value = true) noexcept {
    Word& w = data_[r * stride_ + c / kWordBits];
    const Word mask = Word{1} << (c % kWordBits);
    w = value ? (w | mask) : (w & ~mask);
  }
  void flip(std::size_t r, std::size_t c) noexcept {
    data_[r * stride_ + c / kWordBits] ^= Word{1} << (c % kWordBits);
  }

  std::span<Word> row_words(std::size_t r) noexcept { return {data_.data() + r * stride_, stride_}; }
  std::span<const Word> row_words(std::size_t r) const noexcept {
    return {data_.data() + r * stride_, stride_};
  }

  BitVector row(std::size_t r) const;
  BitVector column(std::size_t c) const;
  void set_row(std::size_t r, const BitVector& v);
  /// row[dst] ^= row[src]
  void xor_row(std::size_t dst, std::size_t src) noexcept;
  void swap_rows(std::size_t a, std::size_t b) noexcept;

  BitMatrix transpose() const;
  /// Matrix-vector product M·v over F2.
  BitVector operator*(const BitVector& v) const;
  BitMatrix operator*(const BitMatrix& other) const;
  BitMatrix& operator+=(const BitMatrix& other);
  bool operator==(const BitMatrix& other) const = default;

  bool is_zero() const noexcept;
  std::size_t weight() const noexcept;
  std::vector<std::size_t> row_weights() const;
  std::vector<std::size_t> column_weights() const;

  /// Copy of the listed columns, in the listed order.
  BitMatrix select_columns(std::span<const std::size_t> cols) const;

  static BitMatrix hstack(const BitMatrix& left, const BitMatrix& right);
  static BitMatrix vstack(const BitMatrix& top, const BitMatrix& bottom);
  static BitMatrix kron(const BitMatrix& a, const BitMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> data_;
};

/// Dimension of the row space of `m`.
std::size_t rank(const BitMatrix& m);

/// Result of scanning the columns of a matrix in a caller-given order and
/// keeping each column that extends the span of the columns kept so far.
struct PivotSelection {
  std::vector<std::size_t> pivot_cols;  // S, in selection order
  std::vector<std::size_t> free_cols;   // T, in scan order
  /// Row transform E with E·M in reduced row echelon form; row k of E·M has
  /// its leading one in column pivot_cols[k].
  BitMatrix transform;
  std::size_t rows = 0;

  std::size_t rank() const noexcept { return pivot_cols.size(); }
};

PivotSelection select_pivots(const BitMatrix& m, std::span<const std::size_t> column_order);

/// Solves M_S·x = rhs where S are the selected pivot columns; x[k] is the value
/// assigned to pivot_cols[k]. Throws NoSolution when rhs is outside the image.
BitVector solve_on_pivots(const PivotSelection& sel, const BitVector& rhs);

bool in_colspace(const BitMatrix& m, const BitVector& v);
bool in_rowspace(const BitMatrix& m, const BitVector& v);

/// Echelon basis of a row space supporting fast membership tests.
class RowSpaceBasis {
 public:
  RowSpaceBasis() = default;
  explicit RowSpaceBasis(const BitMatrix& m);

  std::size_t rank() const noexcept { return pivots_.size(); }
  std::size_t cols() const noexcept { return basis_.cols(); }
  /// Reduces `v` modulo the row space in place; the result is zero iff v was a member.
  void reduce(BitVector& v) const;
  bool contains(BitVector v) const;

 private:
  BitMatrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Rows form a basis of the right kernel {x : M·x = 0}. When `column_order` is
/// non-empty the free columns are chosen by scanning in that order, so each
/// basis vector has exactly one set bit among the free columns.
BitMatrix kernel_basis(const BitMatrix& m, std::span<const std::size_t> column_order = {});

namespace detail {

/// Gauss-Jordan elimination of `work` in place, visiting columns in `order`.
/// Columns of `work` not listed in `order` are carried along but never pivoted.
/// Returns the pivot columns; pivot k ends up in row k.
std::vector<std::size_t> eliminate(BitMatrix& work, std::span<const std::size_t> order);

}  // namespace detail

// "bitmat v1" text format: a `rows cols` header line followed by one line of
// '0'/'1' characters per row.
BitMatrix read_bitmat(std::istream& in);
void write_bitmat(std::ostream& out, const BitMatrix& m);
BitMatrix load_bitmat(const std::string& path);
void save_bitmat(const std::string& path, const BitMatrix& m);

}  // namespace qldpc
