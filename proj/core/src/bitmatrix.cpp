#include "qldpc/bitmatrix.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "qldpc/error.hpp"

namespace qldpc {

// ---------------------------------------------------------------- BitVector

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i);
    } else if (bits[i] != '0') {
      throw Error(ErrorKind::Parse, "bit string contains '" + std::string(1, bits[i]) + "'");
    }
  }
  return v;
}

BitVector BitVector::from_support(std::size_t len, std::span<const std::size_t> support) {
  BitVector v(len);
  for (std::size_t i : support) {
    if (i >= len) throw Error(ErrorKind::SizeMismatch, "support index out of range");
    v.set(i);
  }
  return v;
}

void BitVector::clear() noexcept { std::fill(data_.begin(), data_.end(), 0); }

std::size_t BitVector::weight() const noexcept {
  std::size_t w = 0;
  for (Word x : data_) w += static_cast<std::size_t>(std::popcount(x));
  return w;
}

bool BitVector::any() const noexcept {
  return std::any_of(data_.begin(), data_.end(), [](Word x) { return x != 0; });
}

bool BitVector::dot(const BitVector& other) const {
  if (other.len_ != len_) throw Error(ErrorKind::SizeMismatch, "dot product length mismatch");
  Word acc = 0;
  for (std::size_t i = 0; i < data_.size(); ++i) acc ^= data_[i] & other.data_[i];
  return std::popcount(acc) & 1;
}

std::vector<std::size_t> BitVector::support() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < data_.size(); ++w) {
    Word x = data_[w];
    while (x) {
      out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(x)));
      x &= x - 1;
    }
  }
  return out;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.len_ != len_) throw Error(ErrorKind::SizeMismatch, "xor length mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] ^= other.data_[i];
  return *this;
}

std::string BitVector::to_string() const {
  std::string s(len_, '0');
  for (std::size_t i = 0; i < len_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

// ---------------------------------------------------------------- BitMatrix

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BitMatrix BitMatrix::from_rows(std::span<const std::string_view> rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  BitMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorKind::SizeMismatch, "ragged rows");
    m.set_row(r, BitVector::from_string(rows[r]));
  }
  return m;
}

BitMatrix BitMatrix::from_rows(std::span<const BitVector> rows, std::size_t cols) {
  BitMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

BitVector BitMatrix::row(std::size_t r) const {
  BitVector v(cols_);
  std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(r * stride_), stride_, v.words().begin());
  return v;
}

BitVector BitMatrix::column(std::size_t c) const {
  BitVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (get(r, c)) v.set(r);
  }
  return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
  if (v.size() != cols_) throw Error(ErrorKind::SizeMismatch, "row length mismatch");
  std::copy(v.words().begin(), v.words().end(), data_.begin() + static_cast<std::ptrdiff_t>(r * stride_));
}

void BitMatrix::xor_row(std::size_t dst, std::size_t src) noexcept {
  Word* d = data_.data() + dst * stride_;
  const Word* s = data_.data() + src * stride_;
  for (std::size_t i = 0; i < stride_; ++i) d[i] ^= s[i];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) noexcept {
  if (a == b) return;
  std::swap_ranges(data_.begin() + static_cast<std::ptrdiff_t>(a * stride_),
                   data_.begin() + static_cast<std::ptrdiff_t>((a + 1) * stride_),
                   data_.begin() + static_cast<std::ptrdiff_t>(b * stride_));
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const Word* row = data_.data() + r * stride_;
    for (std::size_t w = 0; w < stride_; ++w) {
      Word x = row[w];
      while (x) {
        t.set(w * kWordBits + static_cast<std::size_t>(std::countr_zero(x)), r);
        x &= x - 1;
      }
    }
  }
  return t;
}

BitVector BitMatrix::operator*(const BitVector& v) const {
  if (v.size() != cols_) throw Error(ErrorKind::SizeMismatch, "matrix-vector size mismatch");
  BitVector out(rows_);
  const auto vw = v.words();
  for (std::size_t r = 0; r < rows_; ++r) {
    const Word* row = data_.data() + r * stride_;
    Word acc = 0;
    for (std::size_t w = 0; w < stride_; ++w) acc ^= row[w] & vw[w];
    if (std::popcount(acc) & 1) out.set(r);
  }
  return out;
}

BitMatrix BitMatrix::operator*(const BitMatrix& other) const {
  if (other.rows_ != cols_) throw Error(ErrorKind::SizeMismatch, "matrix product size mismatch");
  BitMatrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Word* dst = out.data_.data() + r * out.stride_;
    for (std::size_t k = 0; k < cols_; ++k) {
      if (!get(r, k)) continue;
      const Word* src = other.data_.data() + k * other.stride_;
      for (std::size_t w = 0; w < out.stride_; ++w) dst[w] ^= src[w];
    }
  }
  return out;
}

BitMatrix& BitMatrix::operator+=(const BitMatrix& other) {
  if (other.rows_ != rows_ || other.cols_ != cols_) {
    throw Error(ErrorKind::SizeMismatch, "matrix sum size mismatch");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] ^= other.data_[i];
  return *this;
}

bool BitMatrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](Word x) { return x == 0; });
}

std::size_t BitMatrix::weight() const noexcept {
  std::size_t w = 0;
  for (Word x : data_) w += static_cast<std::size_t>(std::popcount(x));
  return w;
}

std::vector<std::size_t> BitMatrix::row_weights() const {
  std::vector<std::size_t> out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (Word x : row_words(r)) out[r] += static_cast<std::size_t>(std::popcount(x));
  }
  return out;
}

std::vector<std::size_t> BitMatrix::column_weights() const {
  std::vector<std::size_t> out(cols_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    const auto row = row_words(r);
    for (std::size_t w = 0; w < stride_; ++w) {
      Word x = row[w];
      while (x) {
        ++out[w * kWordBits + static_cast<std::size_t>(std::countr_zero(x))];
        x &= x - 1;
      }
    }
  }
  return out;
}

BitMatrix BitMatrix::select_columns(std::span<const std::size_t> cols) const {
  BitMatrix out(rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (get(r, cols[j])) out.set(r, j);
    }
  }
  return out;
}

BitMatrix BitMatrix::hstack(const BitMatrix& left, const BitMatrix& right) {
  if (left.rows_ != right.rows_) throw Error(ErrorKind::SizeMismatch, "hstack row mismatch");
  BitMatrix out(left.rows_, left.cols_ + right.cols_);
  for (std::size_t r = 0; r < left.rows_; ++r) {
    std::copy_n(left.row_words(r).begin(), left.stride_, out.row_words(r).begin());
    const auto src = right.row_words(r);
    for (std::size_t w = 0; w < right.stride_; ++w) {
      Word x = src[w];
      while (x) {
        out.set(r, left.cols_ + w * kWordBits + static_cast<std::size_t>(std::countr_zero(x)));
        x &= x - 1;
      }
    }
  }
  return out;
}

BitMatrix BitMatrix::vstack(const BitMatrix& top, const BitMatrix& bottom) {
  if (top.cols_ != bottom.cols_) throw Error(ErrorKind::SizeMismatch, "vstack column mismatch");
  BitMatrix out(top.rows_ + bottom.rows_, top.cols_);
  std::copy(top.data_.begin(), top.data_.end(), out.data_.begin());
  std::copy(bottom.data_.begin(), bottom.data_.end(),
            out.data_.begin() + static_cast<std::ptrdiff_t>(top.data_.size()));
  return out;
}

BitMatrix BitMatrix::kron(const BitMatrix& a, const BitMatrix& b) {
  BitMatrix out(a.rows_ * b.rows_, a.cols_ * b.cols_);
  for (std::size_t ar = 0; ar < a.rows_; ++ar) {
    for (std::size_t ac = 0; ac < a.cols_; ++ac) {
      if (!a.get(ar, ac)) continue;
      for (std::size_t br = 0; br < b.rows_; ++br) {
        for (std::size_t bc = 0; bc < b.cols_; ++bc) {
          if (b.get(br, bc)) out.set(ar * b.rows_ + br, ac * b.cols_ + bc);
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- elimination

namespace detail {

std::vector<std::size_t> eliminate(BitMatrix& work, std::span<const std::size_t> order) {
  std::vector<std::size_t> pivots;
  const std::size_t m = work.rows();
  pivots.reserve(std::min(m, order.size()));
  for (std::size_t c : order) {
    const std::size_t next = pivots.size();
    if (next == m) break;
    std::size_t found = m;
    for (std::size_t r = next; r < m; ++r) {
      if (work.get(r, c)) {
        found = r;
        break;
      }
    }
    if (found == m) continue;
    work.swap_rows(found, next);
    for (std::size_t r = 0; r < m; ++r) {
      if (r != next && work.get(r, c)) work.xor_row(r, next);
    }
    pivots.push_back(c);
  }
  return pivots;
}

}  // namespace detail

namespace {

std::vector<std::size_t> natural_order(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return order;
}

}  // namespace

std::size_t rank(const BitMatrix& m) {
  BitMatrix work = m;
  const auto order = natural_order(m.cols());
  return detail::eliminate(work, order).size();
}

PivotSelection select_pivots(const BitMatrix& m, std::span<const std::size_t> column_order) {
  if (column_order.size() != m.cols()) {
    throw Error(ErrorKind::InvalidArgument, "column order must be a permutation of all columns");
  }
  std::vector<char> seen(m.cols(), 0);
  for (std::size_t c : column_order) {
    if (c >= m.cols() || seen[c]) {
      throw Error(ErrorKind::InvalidArgument, "column order is not a permutation");
    }
    seen[c] = 1;
  }

  // Eliminate [M | I] so the right block records the row transform.
  BitMatrix work = BitMatrix::hstack(m, BitMatrix::identity(m.rows()));
  PivotSelection sel;
  sel.rows = m.rows();
  sel.pivot_cols = detail::eliminate(work, column_order);

  std::vector<char> is_pivot(m.cols(), 0);
  for (std::size_t c : sel.pivot_cols) is_pivot[c] = 1;
  for (std::size_t c : column_order) {
    if (!is_pivot[c]) sel.free_cols.push_back(c);
  }

  sel.transform = BitMatrix(m.rows(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.rows(); ++c) {
      if (work.get(r, m.cols() + c)) sel.transform.set(r, c);
    }
  }
  return sel;
}

BitVector solve_on_pivots(const PivotSelection& sel, const BitVector& rhs) {
  if (rhs.size() != sel.rows) throw Error(ErrorKind::SizeMismatch, "right-hand side length mismatch");
  const BitVector t = sel.transform * rhs;
  for (std::size_t r = sel.rank(); r < sel.rows; ++r) {
    if (t.get(r)) throw Error(ErrorKind::NoSolution, "right-hand side is not in the pivot column span");
  }
  BitVector x(sel.rank());
  for (std::size_t k = 0; k < sel.rank(); ++k) x.set(k, t.get(k));
  return x;
}

bool in_colspace(const BitMatrix& m, const BitVector& v) {
  if (v.size() != m.rows()) throw Error(ErrorKind::SizeMismatch, "vector length must equal row count");
  if (v.none()) return true;
  // rank([M | v]) == rank(M), tested by eliminating only the columns of M.
  BitMatrix work(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::copy_n(m.row_words(r).begin(), m.stride(), work.row_words(r).begin());
    if (v.get(r)) work.set(r, m.cols());
  }
  const auto order = natural_order(m.cols());
  const std::size_t r0 = detail::eliminate(work, order).size();
  for (std::size_t r = r0; r < m.rows(); ++r) {
    if (work.get(r, m.cols())) return false;
  }
  return true;
}

bool in_rowspace(const BitMatrix& m, const BitVector& v) {
  if (v.size() != m.cols()) throw Error(ErrorKind::SizeMismatch, "vector length must equal column count");
  return RowSpaceBasis(m).contains(v);
}

RowSpaceBasis::RowSpaceBasis(const BitMatrix& m) {
  BitMatrix work = m;
  const auto order = natural_order(m.cols());
  pivots_ = detail::eliminate(work, order);
  basis_ = BitMatrix(pivots_.size(), m.cols());
  for (std::size_t k = 0; k < pivots_.size(); ++k) {
    std::copy_n(work.row_words(k).begin(), work.stride(), basis_.row_words(k).begin());
  }
}

void RowSpaceBasis::reduce(BitVector& v) const {
  if (v.size() != basis_.cols()) throw Error(ErrorKind::SizeMismatch, "vector length mismatch");
  auto vw = v.words();
  for (std::size_t k = 0; k < pivots_.size(); ++k) {
    if (!v.get(pivots_[k])) continue;
    const auto row = basis_.row_words(k);
    for (std::size_t w = 0; w < vw.size(); ++w) vw[w] ^= row[w];
  }
}

bool RowSpaceBasis::contains(BitVector v) const {
  reduce(v);
  return v.none();
}

BitMatrix kernel_basis(const BitMatrix& m, std::span<const std::size_t> column_order) {
  std::vector<std::size_t> order = column_order.empty()
                                       ? natural_order(m.cols())
                                       : std::vector<std::size_t>(column_order.begin(), column_order.end());
  if (order.size() != m.cols()) throw Error(ErrorKind::InvalidArgument, "column order size mismatch");
  BitMatrix work = m;
  const auto pivots = detail::eliminate(work, order);
  std::vector<char> is_pivot(m.cols(), 0);
  for (std::size_t c : pivots) is_pivot[c] = 1;

  std::vector<std::size_t> free_cols;
  for (std::size_t c : order) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }
  BitMatrix basis(free_cols.size(), m.cols());
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    const std::size_t f = free_cols[j];
    basis.set(j, f);
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      if (work.get(k, f)) basis.set(j, pivots[k]);
    }
  }
  return basis;
}

// ---------------------------------------------------------------- bitmat v1

BitMatrix read_bitmat(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw Error(ErrorKind::Parse, "bitmat: missing header");
  std::istringstream hs(header);
  long long rows = -1;
  long long cols = -1;
  if (!(hs >> rows >> cols) || rows < 0 || cols < 0) {
    throw Error(ErrorKind::Parse, "bitmat: header must be 'rows cols'");
  }
  BitMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  std::string line;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (!std::getline(in, line)) throw Error(ErrorKind::Parse, "bitmat: truncated at row " + std::to_string(r));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.size() != m.cols()) {
      throw Error(ErrorKind::Parse, "bitmat: row " + std::to_string(r) + " has wrong length");
    }
    m.set_row(r, BitVector::from_string(line));
  }
  return m;
}

void write_bitmat(std::ostream& out, const BitMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) out << m.row(r).to_string() << '\n';
}

BitMatrix load_bitmat(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  return read_bitmat(in);
}

void save_bitmat(const std::string& path, const BitMatrix& m) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  write_bitmat(out, m);
}

}  // namespace qldpc
