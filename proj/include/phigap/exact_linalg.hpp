#pragma once

// Exact linear algebra over Z (ranks and spans taken over Q).
//
// Every routine works on arbitrary-precision integers and never divides
// inexactly: rank uses Bareiss fraction-free elimination, subspaces are kept
// as integer-scaled reduced echelon bases with primitive rows.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace phigap {

using Integer = boost::multiprecision::cpp_int;
using IntVector = std::vector<Integer>;

inline IntVector make_vector(std::initializer_list<long long> values) {
  IntVector v;
  v.reserve(values.size());
  for (long long x : values) v.emplace_back(x);
  return v;
}

inline IntVector unit_vector(std::size_t dim, std::size_t index) {
  IntVector v(dim);
  v.at(index) = 1;
  return v;
}

inline bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(),
                     [](const Integer& x) { return x.is_zero(); });
}

/// Divides by the content and flips sign so the leading nonzero entry is
/// positive. The zero vector is left alone.
inline void make_primitive(IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) {
    if (!x.is_zero()) {
      g = boost::multiprecision::gcd(g, x);
      if (g == 1) break;
    }
  }
  if (g.is_zero()) return;
  auto lead = std::find_if(v.begin(), v.end(),
                           [](const Integer& x) { return !x.is_zero(); });
  if (*lead < 0) g = -g;
  if (g != 1)
    for (auto& x : v) x /= g;
}

class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_)
        throw std::invalid_argument("IntMatrix: ragged initializer");
      for (long long x : r) data_.emplace_back(x);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_columns(std::size_t rows,
                                std::span<const IntVector> columns) {
    IntMatrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (columns[c].size() != rows)
        throw std::invalid_argument("IntMatrix: column length mismatch");
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
    }
    return m;
  }

  static IntMatrix from_rows(std::size_t cols, std::span<const IntVector> rows) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols)
        throw std::invalid_argument("IntMatrix: row length mismatch");
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Integer& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  const Integer& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  IntVector row(std::size_t r) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }

  IntVector column(std::size_t c) const {
    IntVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  IntVector apply(const IntVector& x) const {
    if (x.size() != cols_)
      throw std::invalid_argument("IntMatrix::apply: dimension mismatch");
    IntVector y(rows_);
    for (std::size_t c = 0; c < cols_; ++c) {
      if (x[c].is_zero()) continue;
      for (std::size_t r = 0; r < rows_; ++r) {
        const Integer& a = (*this)(r, c);
        if (!a.is_zero()) y[r] += a * x[c];
      }
    }
    return y;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  IntMatrix power(std::size_t k) const {
    if (!is_square()) throw std::invalid_argument("IntMatrix::power: not square");
    IntMatrix result = identity(rows_);
    IntMatrix base = *this;
    while (k > 0) {
      if (k & 1U) result = result * base;
      k >>= 1U;
      if (k > 0) base = base * base;
    }
    return result;
  }

  /// Rows and columns selected by index, in the given order.
  IntMatrix submatrix(std::span<const std::size_t> row_idx,
                      std::span<const std::size_t> col_idx) const {
    IntMatrix s(row_idx.size(), col_idx.size());
    for (std::size_t i = 0; i < row_idx.size(); ++i)
      for (std::size_t j = 0; j < col_idx.size(); ++j)
        s(i, j) = (*this)(row_idx[i], col_idx[j]);
    return s;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_)
      throw std::invalid_argument("IntMatrix: product dimension mismatch");
    IntMatrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const Integer& bkj = b(k, j);
          if (!bkj.is_zero()) p(i, j) += aik * bkj;
        }
      }
    return p;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Rank over Q by Bareiss fraction-free elimination. All divisions are exact.
inline std::size_t exact_rank(IntMatrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t rank = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m(pivot, c).is_zero()) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(pivot, j), m(rank, j));
    const Integer p = m(rank, c);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const Integer f = m(r, c);
      for (std::size_t j = c + 1; j < cols; ++j) {
        m(r, j) = (p * m(r, j) - f * m(rank, j)) / prev;
      }
      m(r, c) = 0;
    }
    prev = p;
    ++rank;
  }
  return rank;
}

/// Canonical basis of the row space: reduced echelon form over Q with every
/// row scaled to a primitive integer vector whose pivot is positive.
inline std::vector<IntVector> canonical_rows(std::vector<IntVector> rows,
                                             std::size_t dim) {
  for (const auto& r : rows)
    if (r.size() != dim)
      throw std::invalid_argument("canonical_rows: dimension mismatch");
  std::size_t rank = 0;
  for (std::size_t c = 0; c < dim && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    make_primitive(rows[rank]);
    const IntVector& prow = rows[rank];
    const Integer& p = prow[c];
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c].is_zero()) continue;
      const Integer f = rows[r][c];
      const Integer g = boost::multiprecision::gcd(p, f);
      const Integer ps = p / g;
      const Integer fs = f / g;
      for (std::size_t j = 0; j < dim; ++j) rows[r][j] = ps * rows[r][j] - fs * prow[j];
      make_primitive(rows[r]);
    }
    ++rank;
  }
  rows.resize(rank);
  return rows;
}

/// A rational subspace of Q^n stored by its canonical integer basis, so two
/// subspaces are equal exactly when their bases compare equal.
class SubspaceBasis {
public:
  SubspaceBasis() = default;
  explicit SubspaceBasis(std::size_t ambient_dim) : ambient_dim_(ambient_dim) {}

  static SubspaceBasis span(std::size_t ambient_dim,
                            std::vector<IntVector> generators) {
    SubspaceBasis s(ambient_dim);
    s.vectors_ = canonical_rows(std::move(generators), ambient_dim);
    return s;
  }

  static SubspaceBasis whole(std::size_t ambient_dim) {
    std::vector<IntVector> gens;
    for (std::size_t i = 0; i < ambient_dim; ++i)
      gens.push_back(unit_vector(ambient_dim, i));
    return span(ambient_dim, std::move(gens));
  }

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t dim() const noexcept { return vectors_.size(); }
  bool empty() const noexcept { return vectors_.empty(); }
  const std::vector<IntVector>& vectors() const noexcept { return vectors_; }

  bool contains(const IntVector& v) const {
    if (v.size() != ambient_dim_)
      throw std::invalid_argument("SubspaceBasis::contains: dimension mismatch");
    auto gens = vectors_;
    gens.push_back(v);
    return exact_rank(IntMatrix::from_rows(ambient_dim_, gens)) == dim();
  }

  bool contains(const SubspaceBasis& other) const {
    for (const auto& v : other.vectors_)
      if (!contains(v)) return false;
    return true;
  }

  friend bool operator==(const SubspaceBasis&, const SubspaceBasis&) = default;

private:
  std::size_t ambient_dim_ = 0;
  std::vector<IntVector> vectors_;
};

/// Right kernel of m over Q.
inline SubspaceBasis kernel_basis(const IntMatrix& m) {
  const std::size_t n = m.cols();
  std::vector<IntVector> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  const auto rref = canonical_rows(std::move(rows), n);

  std::vector<std::size_t> pivot_col;
  std::vector<bool> is_pivot(n, false);
  Integer lcm = 1;
  for (const auto& r : rref) {
    std::size_t c = 0;
    while (r[c].is_zero()) ++c;
    pivot_col.push_back(c);
    is_pivot[c] = true;
    lcm = boost::multiprecision::lcm(lcm, r[c]);
  }

  std::vector<IntVector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    IntVector x(n);
    x[f] = lcm;
    for (std::size_t i = 0; i < rref.size(); ++i) {
      const std::size_t c = pivot_col[i];
      x[c] = -rref[i][f] * (lcm / rref[i][c]);
    }
    basis.push_back(std::move(x));
  }
  return SubspaceBasis::span(n, std::move(basis));
}

inline SubspaceBasis sum(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("sum: ambient dimension mismatch");
  auto gens = a.vectors();
  gens.insert(gens.end(), b.vectors().begin(), b.vectors().end());
  return SubspaceBasis::span(a.ambient_dim(), std::move(gens));
}

/// a ∩ b, from the kernel of [a_1 .. a_p | -b_1 .. -b_q].
inline SubspaceBasis intersect(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("intersect: ambient dimension mismatch");
  const std::size_t n = a.ambient_dim();
  const std::size_t p = a.dim();
  const std::size_t q = b.dim();
  if (p == 0 || q == 0) return SubspaceBasis(n);
  IntMatrix m(n, p + q);
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = a.vectors()[j][i];
  for (std::size_t j = 0; j < q; ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, p + j) = -b.vectors()[j][i];
  const auto coeffs = kernel_basis(m);
  std::vector<IntVector> gens;
  for (const auto& x : coeffs.vectors()) {
    IntVector v(n);
    for (std::size_t j = 0; j < p; ++j)
      if (!x[j].is_zero())
        for (std::size_t i = 0; i < n; ++i) v[i] += x[j] * a.vectors()[j][i];
    gens.push_back(std::move(v));
  }
  return SubspaceBasis::span(n, std::move(gens));
}

/// Incremental row-echelon basis supporting insert and undo of the last
/// insertion. Used wherever a span grows one vector at a time.
class Echelon {
public:
  explicit Echelon(std::size_t dim) : dim_(dim), pivot_row_(dim, -1) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return rows_.size(); }
  const std::vector<IntVector>& rows() const noexcept { return rows_; }

  /// Returns true when v was independent of the current rows (and was added).
  bool insert(IntVector v) {
    if (v.size() != dim_)
      throw std::invalid_argument("Echelon::insert: dimension mismatch");
    for (std::size_t c = 0; c < dim_; ++c) {
      if (v[c].is_zero()) continue;
      const int r = pivot_row_[c];
      if (r < 0) {
        make_primitive(v);
        pivot_row_[c] = static_cast<int>(rows_.size());
        pivots_.push_back(c);
        rows_.push_back(std::move(v));
        return true;
      }
      const IntVector& b = rows_[static_cast<std::size_t>(r)];
      const Integer g = boost::multiprecision::gcd(b[c], v[c]);
      const Integer ps = b[c] / g;
      const Integer fs = v[c] / g;
      for (std::size_t j = c; j < dim_; ++j) {
        if (b[j].is_zero()) {
          if (ps != 1) v[j] *= ps;
        } else {
          v[j] = ps * v[j] - fs * b[j];
        }
      }
    }
    return false;
  }

  void pop() {
    pivot_row_[pivots_.back()] = -1;
    pivots_.pop_back();
    rows_.pop_back();
  }

private:
  std::size_t dim_;
  std::vector<int> pivot_row_;
  std::vector<std::size_t> pivots_;
  std::vector<IntVector> rows_;
};

/// Echelon over 64-bit integers with overflow detection. insert throws
/// std::overflow_error when an intermediate value does not fit; callers fall
/// back to Echelon.
class SmallEchelon {
public:
  using Vector = std::vector<std::int64_t>;

  explicit SmallEchelon(std::size_t dim) : dim_(dim), pivot_row_(dim, -1) {}

  std::size_t rank() const noexcept { return rows_.size(); }

  /// Narrows v, or nullopt when an entry is out of range.
  static std::optional<Vector> narrow(const IntVector& v) {
    Vector out;
    out.reserve(v.size());
    for (const auto& x : v) {
      if (x > Integer(limit) || x < Integer(-limit)) return std::nullopt;
      out.push_back(static_cast<std::int64_t>(x));
    }
    return out;
  }

  bool insert(Vector v) {
    for (std::size_t c = 0; c < dim_; ++c) {
      if (v[c] == 0) continue;
      const int r = pivot_row_[c];
      if (r < 0) {
        primitive(v);
        pivot_row_[c] = static_cast<int>(rows_.size());
        pivots_.push_back(c);
        rows_.push_back(std::move(v));
        return true;
      }
      const Vector& b = rows_[static_cast<std::size_t>(r)];
      const std::int64_t g = std::gcd(b[c], v[c]);
      const std::int64_t ps = b[c] / g;
      const std::int64_t fs = v[c] / g;
      for (std::size_t j = c; j < dim_; ++j) {
        std::int64_t x = 0, y = 0;
        if (__builtin_mul_overflow(ps, v[j], &x) || __builtin_mul_overflow(fs, b[j], &y) ||
            __builtin_sub_overflow(x, y, &v[j]) || v[j] > limit || v[j] < -limit)
          throw std::overflow_error("SmallEchelon: 64-bit overflow");
      }
      primitive(v);
    }
    return false;
  }

  void pop() {
    pivot_row_[pivots_.back()] = -1;
    pivots_.pop_back();
    rows_.pop_back();
  }

private:
  static constexpr std::int64_t limit = std::int64_t{1} << 62;

  static void primitive(Vector& v) {
    std::int64_t g = 0;
    for (auto x : v) g = std::gcd(g, x);
    if (g > 1)
      for (auto& x : v) x /= g;
  }

  std::size_t dim_;
  std::vector<int> pivot_row_;
  std::vector<std::size_t> pivots_;
  std::vector<Vector> rows_;
};

/// The chain Ker T ⊆ Ker T² ⊆ … up to the first k with Ker T^k = Ker T^{k+1}.
struct KernelFiltration {
  std::size_t ambient_dim = 0;
  /// dims[k-1] = dim Ker T^k for k = 1 .. stabilization_index.
  std::vector<std::size_t> dims;
  /// new_generators[k-1] spans a complement of Ker T^{k-1} in Ker T^k.
  std::vector<std::vector<IntVector>> new_generators;
  /// kernels[k] = Ker T^k for k = 0 .. stabilization_index.
  std::vector<SubspaceBasis> kernels;
  std::size_t stabilization_index = 0;

  /// Ker T^k for any k ≥ 0 (constant past stabilization).
  const SubspaceBasis& kernel(std::size_t k) const {
    return kernels[std::min(k, stabilization_index)];
  }
};

inline KernelFiltration kernel_filtration(const IntMatrix& t) {
  if (!t.is_square())
    throw std::invalid_argument("kernel_filtration: matrix is not square");
  const std::size_t n = t.rows();
  KernelFiltration f;
  f.ambient_dim = n;
  f.kernels.emplace_back(n);
  IntMatrix power = IntMatrix::identity(n);
  for (std::size_t k = 1; k <= n + 1; ++k) {
    power = power * t;
    SubspaceBasis ker = kernel_basis(power);
    if (ker == f.kernels.back()) break;
    Echelon prev(n);
    for (const auto& v : f.kernels.back().vectors()) prev.insert(v);
    std::vector<IntVector> fresh;
    for (const auto& v : ker.vectors())
      if (prev.insert(v)) fresh.push_back(v);
    f.dims.push_back(ker.dim());
    f.new_generators.push_back(std::move(fresh));
    f.kernels.push_back(std::move(ker));
    f.stabilization_index = k;
  }
  return f;
}

/// [r_1, …, r_cutoff] with r_k = rank {t^{k-1} g : g ∈ gens}.
inline std::vector<std::size_t> iterated_image_ranks(const IntMatrix& t,
                                                     std::vector<IntVector> gens,
                                                     std::size_t cutoff) {
  if (!t.is_square())
    throw std::invalid_argument("iterated_image_ranks: matrix is not square");
  if (cutoff == 0)
    throw std::invalid_argument("iterated_image_ranks: cutoff must be positive");
  for (const auto& g : gens)
    if (g.size() != t.cols())
      throw std::invalid_argument("iterated_image_ranks: dimension mismatch");
  std::vector<std::size_t> ranks;
  ranks.reserve(cutoff);
  for (std::size_t k = 1; k <= cutoff; ++k) {
    Echelon e(t.rows());
    for (auto& g : gens) e.insert(std::move(g));
    ranks.push_back(e.rank());
    gens.clear();
    // the span of t·(basis) equals the span of t·(all previous vectors)
    for (const auto& b : e.rows()) gens.push_back(t.apply(b));
  }
  return ranks;
}

inline std::string to_string(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s + ")";
}

} // namespace phigap
