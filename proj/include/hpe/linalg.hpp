#ifndef HPE_LINALG_HPP
#define HPE_LINALG_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hpe/base_field.hpp"
#include "hpe/error.hpp"
#include "hpe/rng.hpp"

namespace hpe {

// Dense row-major matrix over F_q.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Fq& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Fq operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Fq> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Fq> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vec data_;
};

inline Matrix multiply(const BaseField& f, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::InvalidParams, "matrix shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto dst = out.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Fq s = a(i, k);
      if (s == 0) continue;
      const Fq* mul = f.mul_row(s);
      auto src = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) dst[j] = f.add(dst[j], mul[src[j]]);
    }
  }
  return out;
}

// M v with v a column vector.
inline Vec multiply(const BaseField& f, const Matrix& m, std::span<const Fq> v) {
  if (m.cols() != v.size()) throw Error(ErrorCode::InvalidParams, "matrix/vector shape mismatch");
  Vec out(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto row = m.row(i);
    Fq acc = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) acc = f.add(acc, f.mul(row[j], v[j]));
    out[i] = acc;
  }
  return out;
}

// v^T M with v a row vector.
inline Vec multiply(const BaseField& f, std::span<const Fq> v, const Matrix& m) {
  if (m.rows() != v.size()) throw Error(ErrorCode::InvalidParams, "vector/matrix shape mismatch");
  Vec out(m.cols(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    const Fq* mul = f.mul_row(v[i]);
    auto row = m.row(i);
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] = f.add(out[j], mul[row[j]]);
  }
  return out;
}

inline Vec add(const BaseField& f, std::span<const Fq> a, std::span<const Fq> b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.add(a[i], b[i]);
  return out;
}

inline Vec sub(const BaseField& f, std::span<const Fq> a, std::span<const Fq> b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.sub(a[i], b[i]);
  return out;
}

inline Vec random_vector(const BaseField& f, std::size_t n, Rng& rng) {
  Vec v(n);
  for (Fq& x : v) x = static_cast<Fq>(rng.uniform(f.q()));
  return v;
}

inline Matrix random_matrix(const BaseField& f, std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<Fq>(rng.uniform(f.q()));
  return m;
}

// Reduced row echelon form. Pivots are taken on the first nonzero entry in
// column order.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivot_cols;  // pivot column of row i
  std::size_t rank() const { return pivot_cols.size(); }
};

namespace detail {

inline Echelon row_reduce_generic(const BaseField& f, Matrix m) {
  Echelon out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) {
      auto a = m.row(pivot);
      auto b = m.row(row);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    const Fq* scale = f.mul_row(f.inv(m(row, col)));
    for (Fq& x : m.row(row)) x = scale[x];
    auto pivot_row = m.row(row);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Fq* factor = f.mul_row(m(r, col));
      auto target = m.row(r);
      for (std::size_t c = col; c < m.cols(); ++c) target[c] = f.sub(target[c], factor[pivot_row[c]]);
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

// F_2 elimination on bit-packed rows.
inline Echelon row_reduce_gf2(Matrix m) {
  const std::size_t words = (m.cols() + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rows(m.rows(), std::vector<std::uint64_t>(words, 0));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) & 1U) rows[r][c / 64] |= std::uint64_t{1} << (c % 64);

  Echelon out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    const std::size_t w = col / 64;
    const std::uint64_t bit = std::uint64_t{1} << (col % 64);
    std::size_t pivot = row;
    while (pivot < m.rows() && !(rows[pivot][w] & bit)) ++pivot;
    if (pivot == m.rows()) continue;
    std::swap(rows[pivot], rows[row]);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || !(rows[r][w] & bit)) continue;
      for (std::size_t k = w; k < words; ++k) rows[r][k] ^= rows[row][k];
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      m(r, c) = static_cast<Fq>((rows[r][c / 64] >> (c % 64)) & 1U);
  out.reduced = std::move(m);
  return out;
}

}  // namespace detail

inline Echelon row_reduce(const BaseField& f, Matrix m) {
  if (f.q() == 2) return detail::row_reduce_gf2(std::move(m));
  return detail::row_reduce_generic(f, std::move(m));
}

inline std::size_t rank(const BaseField& f, const Matrix& m) { return row_reduce(f, m).rank(); }

// Basis of {v : M v = 0}; cols - rank independent vectors.
inline std::vector<Vec> nullspace(const BaseField& f, const Matrix& m) {
  const Echelon e = row_reduce(f, m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : e.pivot_cols) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < e.rank(); ++r) v[e.pivot_cols[r]] = f.neg(e.reduced(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

struct LinearSystem {
  Matrix matrix;
  Vec rhs;
};

// Solution set of a consistent system: particular + span(kernel).
struct LinearSolution {
  Vec particular;
  std::vector<Vec> kernel;

  // Uniform element of the affine solution space.
  Vec sample(const BaseField& f, Rng& rng) const {
    Vec out = particular;
    for (const Vec& k : kernel) {
      const Fq* scale = f.mul_row(static_cast<Fq>(rng.uniform(f.q())));
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.add(out[i], scale[k[i]]);
    }
    return out;
  }

  // The solution indexed by base-q digits of `index` as kernel coefficients.
  Vec element(const BaseField& f, std::uint64_t index) const {
    Vec out = particular;
    for (const Vec& k : kernel) {
      const Fq* scale = f.mul_row(static_cast<Fq>(index % f.q()));
      index /= f.q();
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.add(out[i], scale[k[i]]);
    }
    return out;
  }
};

// Gaussian elimination on [matrix | rhs]; nullopt when inconsistent. Free
// variables are set to zero in the particular solution.
inline std::optional<LinearSolution> solve_linear(const BaseField& f, const LinearSystem& sys) {
  const std::size_t rows = sys.matrix.rows();
  const std::size_t cols = sys.matrix.cols();
  if (sys.rhs.size() != rows) throw Error(ErrorCode::InvalidParams, "rhs length mismatch");
  Matrix aug(rows, cols + 1);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) aug(r, c) = sys.matrix(r, c);
    aug(r, cols) = sys.rhs[r];
  }
  const Echelon e = row_reduce(f, std::move(aug));
  if (!e.pivot_cols.empty() && e.pivot_cols.back() == cols) return std::nullopt;

  LinearSolution sol;
  sol.particular.assign(cols, 0);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t r = 0; r < e.rank(); ++r) {
    is_pivot[e.pivot_cols[r]] = true;
    sol.particular[e.pivot_cols[r]] = e.reduced(r, cols);
  }
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < e.rank(); ++r) v[e.pivot_cols[r]] = f.neg(e.reduced(r, free));
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

// Throws SingularMatrix when m is not invertible.
inline Matrix invert(const BaseField& f, const Matrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw Error(ErrorCode::SingularMatrix, "matrix is not square");
  Matrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  const Echelon e = row_reduce(f, std::move(aug));
  if (e.rank() < n || e.pivot_cols[n - 1] != n - 1) {
    throw Error(ErrorCode::SingularMatrix, "matrix is singular");
  }
  Matrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = e.reduced(r, n + c);
  return inv;
}

inline Matrix random_invertible(const BaseField& f, std::size_t n, Rng& rng) {
  for (;;) {
    Matrix m = random_matrix(f, n, n, rng);
    if (rank(f, m) == n) return m;
  }
}

}  // namespace hpe

#endif  // HPE_LINALG_HPP
