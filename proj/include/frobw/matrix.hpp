#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "frobw/error.hpp"
#include "frobw/prime_field.hpp"

namespace frobw {

/// Sparse matrix over F_p in compressed column form. Stored entries are
/// nonzero and canonical.
class MatrixFp {
public:
  struct Entry {
    std::uint32_t row;
    std::uint32_t col;
    Coeff value;
  };

  MatrixFp(PrimeField field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), col_start_(cols + 1, 0) {}

  /// Duplicate (row, col) pairs are summed.
  MatrixFp(PrimeField field, std::size_t rows, std::size_t cols, std::vector<Entry> entries)
      : MatrixFp(field, rows, cols) {
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
      return std::tie(a.col, a.row) < std::tie(b.col, b.row);
    });
    row_index_.reserve(entries.size());
    values_.reserve(entries.size());
    std::size_t i = 0;
    for (std::size_t c = 0; c < cols; ++c) {
      col_start_[c] = row_index_.size();
      while (i < entries.size() && entries[i].col == c) {
        const auto r = entries[i].row;
        if (r >= rows) throw ValidationError("matrix entry row out of range");
        Coeff sum = 0;
        for (; i < entries.size() && entries[i].col == c && entries[i].row == r; ++i)
          sum = field_.add(sum, entries[i].value % field_.modulus());
        if (sum != 0) {
          row_index_.push_back(r);
          values_.push_back(sum);
        }
      }
    }
    if (i != entries.size()) throw ValidationError("matrix entry column out of range");
    col_start_[cols] = row_index_.size();
  }

  static MatrixFp from_dense(PrimeField field, const std::vector<std::vector<std::int64_t>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.front().size() : 0;
    std::vector<Entry> entries;
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw ValidationError("ragged dense matrix");
      for (std::size_t j = 0; j < c; ++j)
        if (auto v = field.from_int(rows[i][j]); v != 0)
          entries.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), v});
    }
    return MatrixFp(field, r, c, std::move(entries));
  }

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nonzeros() const noexcept { return values_.size(); }

  /// Row indices and values of column c.
  std::pair<std::span<const std::uint32_t>, std::span<const Coeff>> column(std::size_t c) const {
    const auto b = col_start_[c], e = col_start_[c + 1];
    return {std::span<const std::uint32_t>(row_index_).subspan(b, e - b),
            std::span<const Coeff>(values_).subspan(b, e - b)};
  }

  MatrixFp transpose() const {
    std::vector<Entry> entries;
    entries.reserve(values_.size());
    for (std::size_t c = 0; c < cols_; ++c)
      for (auto k = col_start_[c]; k < col_start_[c + 1]; ++k)
        entries.push_back({static_cast<std::uint32_t>(c), row_index_[k], values_[k]});
    return MatrixFp(field_, cols_, rows_, std::move(entries));
  }

private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::size_t> col_start_;
  std::vector<std::uint32_t> row_index_;
  std::vector<Coeff> values_;
};

namespace detail {

/// Echelon basis of vectors of a fixed length. Each pivot is normalized to a
/// leading 1 and stored sparsely from its leading index on.
class EchelonBasis {
public:
  EchelonBasis(PrimeField field, std::size_t length)
      : field_(field), length_(length), pivot_of_(length, none), acc_(length, 0) {}

  std::size_t rank() const noexcept { return pivots_.size(); }
  bool full() const noexcept { return pivots_.size() == length_; }

  /// Reduces the vector against the basis; returns true if it was independent
  /// (and is now part of the basis).
  bool insert(std::span<const std::uint32_t> idx, std::span<const Coeff> val) {
    for (std::size_t k = 0; k < idx.size(); ++k) acc_[idx[k]] = val[k];
    std::uint32_t lo = length_;
    for (auto i : idx) lo = std::min(lo, i);
    bool independent = false;
    for (std::size_t i = lo; i < length_; ++i) {
      const Coeff a = acc_[i];
      if (a == 0) continue;
      const auto piv = pivot_of_[i];
      if (piv == none) {
        independent = true;
        store_pivot(i);
        break;
      }
      const Coeff factor = field_.neg(a);
      acc_[i] = 0;
      const auto& pv = pivots_[piv];
      for (std::size_t k = 0; k < pv.index.size(); ++k)
        acc_[pv.index[k]] = field_.fma(acc_[pv.index[k]], factor, pv.value[k]);
    }
    std::fill(acc_.begin(), acc_.end(), 0);
    return independent;
  }

private:
  static constexpr std::uint32_t none = ~std::uint32_t{0};

  struct Pivot {
    std::vector<std::uint32_t> index; // entries after the leading one
    std::vector<Coeff> value;
  };

  void store_pivot(std::size_t lead) {
    const Coeff scale = field_.inv(acc_[lead]);
    Pivot pv;
    for (std::size_t j = lead + 1; j < length_; ++j)
      if (acc_[j] != 0) {
        pv.index.push_back(static_cast<std::uint32_t>(j));
        pv.value.push_back(field_.mul(acc_[j], scale));
      }
    pivot_of_[lead] = static_cast<std::uint32_t>(pivots_.size());
    pivots_.push_back(std::move(pv));
  }

  PrimeField field_;
  std::uint32_t length_;
  std::vector<std::uint32_t> pivot_of_;
  std::vector<Pivot> pivots_;
  std::vector<Coeff> acc_;
};

} // namespace detail

/// Rank over F_p by sparse Gaussian elimination. Columns are inserted one at
/// a time into an echelon basis over the row space; the first nonzero
/// unreduced coordinate becomes the pivot. The wider side is streamed so the
/// dense accumulator has the length of the narrower side. Deterministic.
inline std::size_t rank_mod_p(const MatrixFp& m) {
  if (m.rows() == 0 || m.cols() == 0 || m.nonzeros() == 0) return 0;
  if (m.rows() > m.cols()) return rank_mod_p(m.transpose());
  detail::EchelonBasis basis(m.field(), m.rows());
  for (std::size_t c = 0; c < m.cols() && !basis.full(); ++c) {
    auto [idx, val] = m.column(c);
    if (!idx.empty()) basis.insert(idx, val);
  }
  return basis.rank();
}

} // namespace frobw
