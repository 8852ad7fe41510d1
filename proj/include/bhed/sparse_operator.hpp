#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace bhed {

using cplx = std::complex<double>;

/// Real symmetric operator on the Fock basis in compressed sparse row form.
/// Column indices within a row are strictly increasing. Immutable.
class SparseOperator {
 public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    double value;
  };

  /// One row's nonzeros as (column, value); columns need not be sorted and
  /// duplicates are summed.
  using Row = std::vector<std::pair<std::size_t, double>>;

  SparseOperator() = default;
  explicit SparseOperator(std::size_t dim);  // zero operator
  static SparseOperator from_rows(std::size_t dim, std::vector<Row> rows);
  static SparseOperator from_entries(std::size_t dim, std::span<const Entry> entries);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t nnz() const noexcept { return values_.size(); }
  std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
  std::span<const std::size_t> cols() const noexcept { return cols_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t row_nnz(std::size_t r) const { return row_ptr_[r + 1] - row_ptr_[r]; }

  std::vector<Entry> entries() const;
  double at(std::size_t row, std::size_t col) const;
  double trace() const;

  /// Exact symmetry of the stored pattern and values (|a_rc - a_cr| <= tol).
  bool is_symmetric(double tol = 0.0) const;

  /// Largest absolute row sum; an upper bound on the spectral radius.
  double norm_bound() const;

  Eigen::MatrixXd to_dense() const;

 private:
  std::size_t dim_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> cols_;
  std::vector<double> values_;
};

// Row-parallel (OpenMP) kernels. Each output row is written by exactly one
// thread, so results do not depend on the thread count.

/// y = A x
void apply(const SparseOperator& a, std::span<const double> x, std::span<double> y);
void apply(const SparseOperator& a, std::span<const cplx> x, std::span<cplx> y);

/// y += alpha * A x
void apply_add(const SparseOperator& a, double alpha, std::span<const cplx> x,
               std::span<cplx> y);

}  // namespace bhed
