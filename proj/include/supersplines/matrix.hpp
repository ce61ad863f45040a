#ifndef SUPERSPLINES_MATRIX_HPP
#define SUPERSPLINES_MATRIX_HPP

// Exact linear algebra over the rationals: sparse rows, an incremental row
// echelon form, and a small matrix type with rank / kernel queries.

#include <supersplines/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

namespace supersplines {

struct Entry {
  std::uint32_t col;
  Rational val;
};

/// Nonzero entries sorted by strictly increasing column.
using SparseRow = std::vector<Entry>;

inline SparseRow sparse_from_dense(std::span<const Rational> dense) {
  SparseRow row;
  for (std::size_t j = 0; j < dense.size(); ++j)
    if (sgn(dense[j]) != 0) row.push_back({static_cast<std::uint32_t>(j), dense[j]});
  return row;
}

inline std::vector<Rational> dense_from_sparse(const SparseRow& row, std::size_t cols) {
  std::vector<Rational> dense(cols);
  for (const auto& e : row) dense.at(e.col) = e.val;
  return dense;
}

/// Incremental row echelon form.
///
/// Rows are inserted one at a time and reduced only until their leading
/// entry (with respect to the elimination order) is free; the stored rows
/// have pairwise distinct leading positions and leading coefficient one.
/// The elimination order is a permutation of the columns giving the
/// priority in which columns are used as pivots; it does not change the
/// rank, only the fill-in.
class RowEchelon {
 public:
  explicit RowEchelon(std::size_t cols) : RowEchelon(cols, {}) {}

  RowEchelon(std::size_t cols, std::span<const std::uint32_t> order)
      : cols_(cols), pos_of_col_(cols), col_of_pos_(cols), pivot_at_(cols, -1), acc_(cols),
        mark_(cols, 0) {
    if (order.empty()) {
      for (std::size_t j = 0; j < cols; ++j) pos_of_col_[j] = col_of_pos_[j] = static_cast<std::uint32_t>(j);
    } else {
      if (order.size() != cols) throw InvalidArgument("elimination order has wrong length");
      std::vector<char> seen(cols, 0);
      for (std::size_t p = 0; p < cols; ++p) {
        auto c = order[p];
        if (c >= cols || seen[c]) throw InvalidArgument("elimination order is not a permutation");
        seen[c] = 1;
        col_of_pos_[p] = c;
        pos_of_col_[c] = static_cast<std::uint32_t>(p);
      }
    }
  }

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == cols_; }

  /// Inserts a row; returns true when it was independent of the rows so far.
  bool insert(const SparseRow& row) {
    if (full()) return false;
    load(row);
    auto lead = reduce();
    if (!lead) {
      clear();
      return false;
    }
    SparseRow stored;
    collect(*lead, stored);
    clear();
    Rational inv = 1 / stored.front().val;
    for (auto& e : stored) e.val *= inv;
    pivot_at_[*lead] = static_cast<std::int32_t>(rows_.size());
    rows_.push_back(std::move(stored));
    return true;
  }

  /// Membership of a row in the span of the inserted rows.
  bool contains(const SparseRow& row) const {
    auto& self = const_cast<RowEchelon&>(*this);
    self.load(row);
    auto lead = self.reduce();
    self.clear();
    return !lead.has_value();
  }

  /// Leading columns of the stored rows, in elimination order.
  std::vector<std::uint32_t> pivot_columns() const {
    std::vector<std::uint32_t> cols;
    for (std::size_t p = 0; p < cols_; ++p)
      if (pivot_at_[p] >= 0) cols.push_back(col_of_pos_[p]);
    return cols;
  }

  /// Stored rows as they are (distinct leading positions), in original
  /// column indices, sorted by leading position.
  std::vector<SparseRow> rows() const {
    std::vector<SparseRow> out;
    for (std::size_t p = 0; p < cols_; ++p)
      if (pivot_at_[p] >= 0) out.push_back(to_columns(rows_[pivot_at_[p]]));
    return out;
  }

  /// Reduced row echelon basis: each row has a one at its pivot column and
  /// zeros at every other pivot column. Rows are sorted by pivot position.
  std::vector<SparseRow> reduced_rows() const {
    auto& self = const_cast<RowEchelon&>(*this);
    std::vector<SparseRow> reduced(rows_.size());
    for (std::size_t p = cols_; p-- > 0;) {
      if (pivot_at_[p] < 0) continue;
      std::size_t idx = static_cast<std::size_t>(pivot_at_[p]);
      self.load_positions(rows_[idx]);
      // eliminate later pivot positions using the already reduced rows
      for (std::size_t q = p + 1; q < cols_; ++q) {
        if (!mark_[q] || sgn(acc_[q]) == 0 || pivot_at_[q] < 0) continue;
        Rational f = acc_[q];
        self.axpy(f, reduced[static_cast<std::size_t>(pivot_at_[q])]);
      }
      SparseRow out;
      self.collect(p, out);
      self.clear();
      reduced[idx] = std::move(out);
    }
    std::vector<SparseRow> ordered;
    for (std::size_t p = 0; p < cols_; ++p)
      if (pivot_at_[p] >= 0) ordered.push_back(to_columns(reduced[pivot_at_[p]]));
    return ordered;
  }

 private:
  void load(const SparseRow& row) {
    for (const auto& e : row) {
      if (e.col >= cols_) throw InvalidArgument("row entry out of range");
      auto p = pos_of_col_[e.col];
      touch(p);
      acc_[p] += e.val;
    }
  }

  void load_positions(const SparseRow& row) {
    for (const auto& e : row) {
      touch(e.col);
      acc_[e.col] += e.val;
    }
  }

  void touch(std::uint32_t p) {
    if (!mark_[p]) {
      mark_[p] = 1;
      touched_.push_back(p);
    }
  }

  // acc -= f * row (row in position space)
  void axpy(const Rational& f, const SparseRow& row) {
    for (const auto& e : row) {
      touch(e.col);
      acc_[e.col] -= f * e.val;
    }
  }

  // Reduces the accumulator until its first nonzero position has no pivot.
  std::optional<std::uint32_t> reduce() {
    std::sort(touched_.begin(), touched_.end());
    std::uint32_t p = touched_.empty() ? static_cast<std::uint32_t>(cols_) : touched_.front();
    while (p < cols_) {
      if (mark_[p] && sgn(acc_[p]) != 0) {
        auto piv = pivot_at_[p];
        if (piv < 0) return p;
        Rational f = acc_[p];
        axpy(f, rows_[static_cast<std::size_t>(piv)]);
      }
      ++p;
    }
    return std::nullopt;
  }

  void collect(std::uint32_t from, SparseRow& out) {
    std::sort(touched_.begin(), touched_.end());
    for (auto p : touched_)
      if (p >= from && sgn(acc_[p]) != 0) out.push_back({p, acc_[p]});
  }

  void clear() {
    for (auto p : touched_) {
      acc_[p] = 0;
      mark_[p] = 0;
    }
    touched_.clear();
  }

  SparseRow to_columns(const SparseRow& row) const {
    SparseRow out;
    out.reserve(row.size());
    for (const auto& e : row) out.push_back({col_of_pos_[e.col], e.val});
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
    return out;
  }

  std::size_t cols_;
  std::vector<std::uint32_t> pos_of_col_, col_of_pos_;
  std::vector<std::int32_t> pivot_at_;
  std::vector<SparseRow> rows_;  // position space
  // dense scratch accumulator
  std::vector<Rational> acc_;
  std::vector<char> mark_;
  std::vector<std::uint32_t> touched_;
};

/// Rational matrix. Storage is sparse when fewer than a quarter of the
/// entries are nonzero and dense otherwise; `optimize_storage` re-decides.
class RatMatrix {
 public:
  enum class Storage { Dense, Sparse };

  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols, Storage storage = Storage::Sparse)
      : rows_(rows), cols_(cols) {
    if (storage == Storage::Dense)
      data_ = std::vector<std::vector<Rational>>(rows, std::vector<Rational>(cols));
    else
      data_ = std::vector<SparseRow>(rows);
  }

  static RatMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    RatMatrix m(rows.size(), cols, Storage::Dense);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw InvalidArgument("ragged matrix rows");
      auto& row = std::get<0>(m.data_)[i];
      row = rows[i];
      for (auto& v : row) v.canonicalize();  // a two-argument mpq_class is not reduced
    }
    m.optimize_storage();
    return m;
  }

  static RatMatrix from_sparse_rows(std::size_t cols, std::vector<SparseRow> rows) {
    RatMatrix m;
    m.rows_ = rows.size();
    m.cols_ = cols;
    for (auto& r : rows)
      for (auto& e : r) {
        if (e.col >= cols) throw InvalidArgument("sparse entry out of range");
        e.val.canonicalize();
      }
    m.data_ = std::move(rows);
    m.optimize_storage();
    return m;
  }

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Storage storage() const { return data_.index() == 0 ? Storage::Dense : Storage::Sparse; }

  std::size_t nonzeros() const {
    std::size_t nz = 0;
    if (auto* d = std::get_if<0>(&data_)) {
      for (const auto& r : *d)
        for (const auto& v : r) nz += sgn(v) != 0;
    } else {
      for (const auto& r : std::get<1>(data_)) nz += r.size();
    }
    return nz;
  }

  Rational at(std::size_t i, std::size_t j) const {
    check(i, j);
    if (auto* d = std::get_if<0>(&data_)) return (*d)[i][j];
    const auto& r = std::get<1>(data_)[i];
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const Entry& e, std::size_t c) { return e.col < c; });
    return (it != r.end() && it->col == j) ? it->val : Rational(0);
  }

  void set(std::size_t i, std::size_t j, Rational v) {
    check(i, j);
    v.canonicalize();
    if (auto* d = std::get_if<0>(&data_)) {
      (*d)[i][j] = v;
      return;
    }
    auto& r = std::get<1>(data_)[i];
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const Entry& e, std::size_t c) { return e.col < c; });
    bool present = it != r.end() && it->col == j;
    if (sgn(v) == 0) {
      if (present) r.erase(it);
    } else if (present) {
      it->val = v;
    } else {
      r.insert(it, Entry{static_cast<std::uint32_t>(j), v});
    }
  }

  SparseRow row(std::size_t i) const {
    if (i >= rows_) throw std::out_of_range("matrix row index");
    if (auto* d = std::get_if<0>(&data_)) return sparse_from_dense((*d)[i]);
    return std::get<1>(data_)[i];
  }

  RatMatrix transpose() const {
    std::vector<SparseRow> t(cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (const auto& e : row(i)) t[e.col].push_back({static_cast<std::uint32_t>(i), e.val});
    return from_sparse_rows(rows_, std::move(t));
  }

  void optimize_storage() {
    std::size_t total = rows_ * cols_;
    bool sparse = total == 0 || 4 * nonzeros() < total;
    if (sparse && storage() == Storage::Dense) {
      std::vector<SparseRow> s(rows_);
      for (std::size_t i = 0; i < rows_; ++i) s[i] = sparse_from_dense(std::get<0>(data_)[i]);
      data_ = std::move(s);
    } else if (!sparse && storage() == Storage::Sparse) {
      std::vector<std::vector<Rational>> d(rows_);
      for (std::size_t i = 0; i < rows_; ++i) d[i] = dense_from_sparse(std::get<1>(data_)[i], cols_);
      data_ = std::move(d);
    }
  }

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index out of range");
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::variant<std::vector<std::vector<Rational>>, std::vector<SparseRow>> data_ = std::vector<SparseRow>{};
};

/// Rank over the rationals. `order` optionally fixes the column elimination
/// priority (a permutation of the columns).
inline std::size_t rank(const RatMatrix& m, std::span<const std::uint32_t> order = {}) {
  RowEchelon ech(m.cols(), order);
  for (std::size_t i = 0; i < m.rows() && !ech.full(); ++i) ech.insert(m.row(i));
  return ech.rank();
}

inline std::size_t kernel_dim(const RatMatrix& m) { return m.cols() - rank(m); }

/// Basis of the right kernel {v : m v = 0}, one vector per free column.
inline std::vector<std::vector<Rational>> kernel_basis(const RatMatrix& m) {
  RowEchelon ech(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) ech.insert(m.row(i));
  auto rref = ech.reduced_rows();
  std::vector<char> is_pivot(m.cols(), 0);
  for (const auto& r : rref) is_pivot[r.front().col] = 1;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(m.cols());
    v[f] = 1;
    for (const auto& r : rref) {
      for (const auto& e : r)
        if (e.col == f) v[r.front().col] = -e.val;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Whether v lies in the row space of m.
inline bool in_row_space(const RatMatrix& m, std::span<const Rational> v) {
  if (v.size() != m.cols()) throw InvalidArgument("vector length does not match matrix columns");
  RowEchelon ech(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) ech.insert(m.row(i));
  return ech.contains(sparse_from_dense(v));
}

}  // namespace supersplines

#endif  // SUPERSPLINES_MATRIX_HPP
