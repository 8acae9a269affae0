#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "seminf/cyclo.hpp"

namespace seminf {

/// Sparse row: column index -> nonzero entry.
using SparseRow = std::map<int, Cyclo>;

/// Sparse matrix over Q(zeta_p) with exact arithmetic.
class SparseMat {
 public:
  SparseMat() : nr_(0), nc_(0) {}
  SparseMat(int nrows, int ncols) : nr_(nrows), nc_(ncols), rows_(nrows) {
    if (nrows < 0 || ncols < 0) throw std::invalid_argument("SparseMat: negative size");
  }

  int nrows() const { return nr_; }
  int ncols() const { return nc_; }
  const SparseRow& row(int i) const { return rows_[i]; }

  void set(int i, int j, const Cyclo& v) {
    check(i, j);
    if (v.is_zero())
      rows_[i].erase(j);
    else
      rows_[i][j] = v;
  }
  void add(int i, int j, const Cyclo& v) {
    check(i, j);
    if (v.is_zero()) return;
    auto it = rows_[i].find(j);
    if (it == rows_[i].end()) {
      rows_[i][j] = v;
    } else {
      it->second += v;
      if (it->second.is_zero()) rows_[i].erase(it);
    }
  }
  Cyclo get(int i, int j) const {
    check(i, j);
    auto it = rows_[i].find(j);
    return it == rows_[i].end() ? Cyclo() : it->second;
  }
  bool is_zero() const {
    for (const auto& r : rows_)
      if (!r.empty()) return false;
    return true;
  }
  long nnz() const {
    long n = 0;
    for (const auto& r : rows_) n += (long)r.size();
    return n;
  }

  SparseMat operator+(const SparseMat& o) const {
    require_shape(o);
    SparseMat r = *this;
    for (int i = 0; i < nr_; ++i)
      for (const auto& [j, v] : o.rows_[i]) r.add(i, j, v);
    return r;
  }
  SparseMat operator-(const SparseMat& o) const { return *this + o * Rat(-1); }
  SparseMat operator*(const Rat& s) const {
    SparseMat r = *this;
    if (s == 0) return SparseMat(nr_, nc_);
    for (auto& row : r.rows_)
      for (auto& [j, v] : row) v = v * s;
    return r;
  }
  SparseMat scale(const Cyclo& s) const {
    if (s.is_zero()) return SparseMat(nr_, nc_);
    SparseMat r(nr_, nc_);
    for (int i = 0; i < nr_; ++i)
      for (const auto& [j, v] : rows_[i]) r.rows_[i][j] = v * s;
    return r;
  }

  /// Matrix product this * o.
  SparseMat operator*(const SparseMat& o) const {
    if (nc_ != o.nr_) throw std::invalid_argument("SparseMat: product shape mismatch");
    SparseMat r(nr_, o.nc_);
    for (int i = 0; i < nr_; ++i)
      for (const auto& [k, v] : rows_[i])
        for (const auto& [j, w] : o.rows_[k]) r.add(i, j, v * w);
    return r;
  }

  /// Apply to a sparse column vector.
  SparseRow apply(const SparseRow& x) const {
    SparseRow y;
    for (const auto& [j, xv] : x) {
      if (j < 0 || j >= nc_) throw std::out_of_range("SparseMat::apply");
      for (int i = 0; i < nr_; ++i) {
        auto it = rows_[i].find(j);
        if (it == rows_[i].end()) continue;
        Cyclo t = it->second * xv;
        if (t.is_zero()) continue;
        auto [pos, fresh] = y.try_emplace(i, t);
        if (!fresh) {
          pos->second += t;
          if (pos->second.is_zero()) y.erase(pos);
        }
      }
    }
    return y;
  }

  SparseMat transpose() const {
    SparseMat r(nc_, nr_);
    for (int i = 0; i < nr_; ++i)
      for (const auto& [j, v] : rows_[i]) r.rows_[j][i] = v;
    return r;
  }

  static SparseMat identity(int n, int p) {
    SparseMat r(n, n);
    for (int i = 0; i < n; ++i) r.rows_[i][i] = Cyclo::one(p);
    return r;
  }

  /// [this | o] side by side.
  SparseMat hstack(const SparseMat& o) const {
    if (nr_ != o.nr_) throw std::invalid_argument("SparseMat::hstack: row mismatch");
    SparseMat r(nr_, nc_ + o.nc_);
    r.rows_ = rows_;
    for (int i = 0; i < nr_; ++i)
      for (const auto& [j, v] : o.rows_[i]) r.rows_[i][j + nc_] = v;
    return r;
  }

  struct Rref {
    std::vector<SparseRow> rows;    // reduced echelon rows, pivot cols increasing
    std::vector<int> pivot_cols;    // one per row
  };

  /// Full reduced row echelon form (pivot entries 1, pivot columns cleared).
  Rref rref() const {
    std::vector<SparseRow> ech;
    std::vector<int> pivs;
    std::map<int, int> piv_index;  // pivot col -> position in ech
    for (int i = 0; i < nr_; ++i) {
      SparseRow r = rows_[i];
      // forward-reduce against existing pivots
      while (!r.empty()) {
        int lead = r.begin()->first;
        auto it = piv_index.find(lead);
        if (it == piv_index.end()) break;
        Cyclo f = r.begin()->second;
        axpy(r, ech[it->second], -f);
      }
      if (r.empty()) continue;
      // reduce the non-leading entries sitting at existing pivot columns
      for (const auto& [col, idx] : piv_index) {
        auto it = r.find(col);
        if (it == r.end()) continue;
        Cyclo f = it->second;
        axpy(r, ech[idx], -f);
      }
      int lead = r.begin()->first;
      Cyclo inv = r.begin()->second.inverse();
      for (auto& [j, v] : r) v = v * inv;
      // clear this column from previously accepted rows
      for (size_t k = 0; k < ech.size(); ++k) {
        auto it = ech[k].find(lead);
        if (it == ech[k].end()) continue;
        Cyclo f = it->second;
        axpy(ech[k], r, -f);
      }
      piv_index[lead] = (int)ech.size();
      ech.push_back(std::move(r));
      pivs.push_back(lead);
    }
    // sort rows by pivot column
    std::vector<int> order(ech.size());
    for (size_t k = 0; k < order.size(); ++k) order[k] = (int)k;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return pivs[a] < pivs[b]; });
    Rref out;
    for (int k : order) {
      out.rows.push_back(std::move(ech[k]));
      out.pivot_cols.push_back(pivs[k]);
    }
    return out;
  }

  int rank() const { return (int)rref().pivot_cols.size(); }

  /// Basis of the right kernel {x : A x = 0}, as sparse column vectors,
  /// one per non-pivot column (free variable set to 1). `p` fixes the
  /// cyclotomic field of the unit entries (needed when A has no nonzeros).
  std::vector<SparseRow> kernel_basis(int p) const {
    Rref R = rref();
    std::vector<bool> is_piv(nc_, false);
    for (int c : R.pivot_cols) is_piv[c] = true;
    std::vector<SparseRow> out;
    for (int f = 0; f < nc_; ++f) {
      if (is_piv[f]) continue;
      SparseRow x;
      x[f] = Cyclo::one(p);
      for (size_t r = 0; r < R.rows.size(); ++r) {
        auto it = R.rows[r].find(f);
        if (it != R.rows[r].end()) x[R.pivot_cols[r]] = -it->second;
      }
      out.push_back(std::move(x));
    }
    return out;
  }

  /// Solves A X = B for X (any solution; free variables 0).
  /// Returns nullopt when some column of B is outside the column span.
  std::optional<SparseMat> solve(const SparseMat& B) const {
    if (B.nrows() != nr_) throw std::invalid_argument("SparseMat::solve: shape mismatch");
    Rref R = hstack(B).rref();
    SparseMat X(nc_, B.ncols());
    for (size_t r = 0; r < R.rows.size(); ++r) {
      int pc = R.pivot_cols[r];
      if (pc >= nc_) return std::nullopt;  // pivot fell in the rhs block
      for (const auto& [j, v] : R.rows[r])
        if (j >= nc_) X.rows_[pc][j - nc_] = v;
    }
    return X;
  }

  /// Smallest field modulus appearing in entries (for constructing units);
  /// falls back to 3 for the all-zero matrix where it never matters.
  int field_p() const {
    for (const auto& r : rows_)
      for (const auto& [j, v] : r)
        if (v.p()) return v.p();
    return 3;
  }

  static void axpy(SparseRow& y, const SparseRow& x, const Cyclo& a) {
    if (a.is_zero()) return;
    for (const auto& [j, v] : x) {
      Cyclo t = v * a;
      if (t.is_zero()) continue;
      auto [pos, fresh] = y.try_emplace(j, t);
      if (!fresh) {
        pos->second += t;
        if (pos->second.is_zero()) y.erase(pos);
      }
    }
  }

 private:
  void check(int i, int j) const {
    if (i < 0 || i >= nr_ || j < 0 || j >= nc_) throw std::out_of_range("SparseMat index");
  }
  void require_shape(const SparseMat& o) const {
    if (nr_ != o.nr_ || nc_ != o.nc_) throw std::invalid_argument("SparseMat: shape mismatch");
  }

  int nr_, nc_;
  std::vector<SparseRow> rows_;
};

}  // namespace seminf
