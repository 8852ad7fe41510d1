#include "bhed/sparse_operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bhed/errors.hpp"

namespace bhed {

SparseOperator::SparseOperator(std::size_t dim) : dim_(dim), row_ptr_(dim + 1, 0) {}

SparseOperator SparseOperator::from_rows(std::size_t dim, std::vector<Row> rows) {
  if (rows.size() != dim) throw DimensionError("row count differs from dimension");
  SparseOperator op;
  op.dim_ = dim;
  op.row_ptr_.assign(dim + 1, 0);
  for (std::size_t r = 0; r < dim; ++r) {
    auto& row = rows[r];
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t kept = 0;
    for (std::size_t i = 0; i < row.size();) {
      std::size_t col = row[i].first;
      if (col >= dim) throw DimensionError("column index outside operator");
      double sum = 0.0;
      for (; i < row.size() && row[i].first == col; ++i) sum += row[i].second;
      if (sum != 0.0) {
        op.cols_.push_back(col);
        op.values_.push_back(sum);
        ++kept;
      }
    }
    op.row_ptr_[r + 1] = op.row_ptr_[r] + kept;
  }
  return op;
}

SparseOperator SparseOperator::from_entries(std::size_t dim, std::span<const Entry> entries) {
  std::vector<Row> rows(dim);
  for (const auto& e : entries) {
    if (e.row >= dim) throw DimensionError("row index outside operator");
    rows[e.row].emplace_back(e.col, e.value);
  }
  return from_rows(dim, std::move(rows));
}

std::vector<SparseOperator::Entry> SparseOperator::entries() const {
  std::vector<Entry> out;
  out.reserve(nnz());
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      out.push_back({r, cols_[p], values_[p]});
    }
  }
  return out;
}

double SparseOperator::at(std::size_t row, std::size_t col) const {
  if (row >= dim_ || col >= dim_) throw DimensionError("index outside operator");
  auto first = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row]);
  auto last = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row + 1]);
  auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col) return 0.0;
  return values_[static_cast<std::size_t>(it - cols_.begin())];
}

double SparseOperator::trace() const {
  double t = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) t += at(r, r);
  return t;
}

bool SparseOperator::is_symmetric(double tol) const {
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      const std::size_t c = cols_[p];
      if (c == r) continue;
      // a missing transpose entry reads as zero
      if (std::abs(values_[p] - at(c, r)) > tol) return false;
    }
  }
  return true;
}

double SparseOperator::norm_bound() const {
  double best = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    double s = 0.0;
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) s += std::abs(values_[p]);
    best = std::max(best, s);
  }
  return best;
}

Eigen::MatrixXd SparseOperator::to_dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim_),
                                            static_cast<Eigen::Index>(dim_));
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(cols_[p])) = values_[p];
    }
  }
  return m;
}

namespace {

template <typename T>
void check_sizes(const SparseOperator& a, std::span<const T> x, std::span<T> y) {
  if (x.size() != a.dim() || y.size() != a.dim()) {
    throw DimensionError("vector length " + std::to_string(x.size()) +
                         " does not match operator dimension " + std::to_string(a.dim()));
  }
}

template <typename T>
void csr_apply(const SparseOperator& a, std::span<const T> x, std::span<T> y) {
  check_sizes(a, x, y);
  const auto rp = a.row_ptr();
  const auto cols = a.cols();
  const auto vals = a.values();
  const auto n = static_cast<std::ptrdiff_t>(a.dim());
#pragma omp parallel for schedule(static) if (n > 512)
  for (std::ptrdiff_t r = 0; r < n; ++r) {
    T acc{};
    for (std::size_t p = rp[r]; p < rp[r + 1]; ++p) acc += vals[p] * x[cols[p]];
    y[r] = acc;
  }
}

}  // namespace

void apply(const SparseOperator& a, std::span<const double> x, std::span<double> y) {
  csr_apply(a, x, y);
}

void apply(const SparseOperator& a, std::span<const cplx> x, std::span<cplx> y) {
  csr_apply(a, x, y);
}

void apply_add(const SparseOperator& a, double alpha, std::span<const cplx> x,
               std::span<cplx> y) {
  check_sizes(a, x, y);
  const auto rp = a.row_ptr();
  const auto cols = a.cols();
  const auto vals = a.values();
  const auto n = static_cast<std::ptrdiff_t>(a.dim());
#pragma omp parallel for schedule(static) if (n > 512)
  for (std::ptrdiff_t r = 0; r < n; ++r) {
    cplx acc{};
    for (std::size_t p = rp[r]; p < rp[r + 1]; ++p) acc += vals[p] * x[cols[p]];
    y[r] += alpha * acc;
  }
}

}  // namespace bhed
