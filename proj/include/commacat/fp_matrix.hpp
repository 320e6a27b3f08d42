#pragma once

// Dense matrices over a prime field F_p with exact row reduction.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace commacat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Residue = std::uint32_t;

namespace detail {

inline bool small_prime(std::uint32_t n) {
  static const std::vector<bool> sieve = [] {
    std::vector<bool> s(1u << 16, true);
    s[0] = s[1] = false;
    for (std::uint32_t i = 2; i * i < s.size(); ++i)
      if (s[i])
        for (std::uint32_t j = i * i; j < s.size(); j += i) s[j] = false;
    return s;
  }();
  return sieve[n];
}

inline Residue pow_mod(Residue base, std::uint64_t exp, Residue p) {
  std::uint64_t result = 1 % p, b = base % p;
  while (exp > 0) {
    if (exp & 1u) result = result * b % p;
    b = b * b % p;
    exp >>= 1u;
  }
  return static_cast<Residue>(result);
}

}  // namespace detail

/// Checks the modulus. Primality is verified below 2^16; larger moduli
/// are trusted.
inline void require_prime(Residue p) {
  if (p < 2) throw Error("modulus must be at least 2, got " + std::to_string(p));
  if (p < (1u << 16) && !detail::small_prime(p))
    throw Error("modulus " + std::to_string(p) + " is not prime");
  if (p >= (1u << 31)) throw Error("modulus must be below 2^31");
}

inline Residue reduce(std::int64_t v, Residue p) {
  auto r = v % static_cast<std::int64_t>(p);
  return static_cast<Residue>(r < 0 ? r + p : r);
}

inline Residue add_mod(Residue a, Residue b, Residue p) {
  std::uint64_t s = std::uint64_t{a} + b;
  return static_cast<Residue>(s >= p ? s - p : s);
}
inline Residue sub_mod(Residue a, Residue b, Residue p) { return a >= b ? a - b : a + p - b; }
inline Residue mul_mod(Residue a, Residue b, Residue p) {
  return static_cast<Residue>(std::uint64_t{a} * b % p);
}
inline Residue neg_mod(Residue a, Residue p) { return a == 0 ? 0 : p - a; }
inline Residue inv_mod(Residue a, Residue p) {
  if (a % p == 0) throw Error("inverse of zero in F_p");
  return detail::pow_mod(a, p - 2, p);
}

/// Row-major dense matrix with entries reduced modulo a prime p.
class FpMatrix {
 public:
  FpMatrix() : FpMatrix(2, 0, 0) {}

  FpMatrix(Residue p, std::size_t rows, std::size_t cols)
      : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {
    require_prime(p);
  }

  FpMatrix(Residue p, std::size_t rows, std::size_t cols, std::vector<Residue> entries)
      : p_(p), rows_(rows), cols_(cols), data_(std::move(entries)) {
    require_prime(p);
    if (data_.size() != rows * cols)
      throw Error("matrix entry count " + std::to_string(data_.size()) + " does not match " +
                  std::to_string(rows) + "x" + std::to_string(cols));
    for (auto& e : data_) e %= p;
  }

  static FpMatrix from_rows(Residue p, const std::vector<std::vector<std::int64_t>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    FpMatrix m(p, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw Error("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m.set(i, j, reduce(rows[i][j], p));
    }
    return m;
  }

  static FpMatrix identity(Residue p, std::size_t n) {
    FpMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  static FpMatrix column(Residue p, std::span<const Residue> v) {
    return FpMatrix(p, v.size(), 1, std::vector<Residue>(v.begin(), v.end()));
  }

  Residue p() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  const std::vector<Residue>& entries() const { return data_; }

  Residue operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Residue v) { data_[r * cols_ + c] = v % p_; }
  void add_to(std::size_t r, std::size_t c, Residue v) {
    auto& e = data_[r * cols_ + c];
    e = add_mod(e, v % p_, p_);
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Residue e) { return e == 0; });
  }

  std::vector<Residue> column_vector(std::size_t c) const {
    std::vector<Residue> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  FpMatrix transpose() const {
    FpMatrix t(p_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = (*this)(r, c);
    return t;
  }

  FpMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw Error("block out of range");
    FpMatrix b(p_, nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) b.data_[r * nc + c] = (*this)(r0 + r, c0 + c);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const FpMatrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw Error("block out of range");
    for (std::size_t r = 0; r < b.rows_; ++r)
      for (std::size_t c = 0; c < b.cols_; ++c) data_[(r0 + r) * cols_ + c0 + c] = b(r, c);
  }

  FpMatrix select_columns(std::span<const std::size_t> idx) const {
    FpMatrix s(p_, rows_, idx.size());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t j = 0; j < idx.size(); ++j) s.data_[r * idx.size() + j] = (*this)(r, idx[j]);
    return s;
  }

  FpMatrix scaled(Residue k) const {
    FpMatrix s = *this;
    for (auto& e : s.data_) e = mul_mod(e, k % p_, p_);
    return s;
  }

  friend bool operator==(const FpMatrix& a, const FpMatrix& b) {
    return a.p_ == b.p_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend FpMatrix operator+(const FpMatrix& a, const FpMatrix& b) {
    a.require_same_shape(b);
    FpMatrix s = a;
    for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] = add_mod(a.data_[i], b.data_[i], a.p_);
    return s;
  }

  friend FpMatrix operator-(const FpMatrix& a, const FpMatrix& b) {
    a.require_same_shape(b);
    FpMatrix s = a;
    for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] = sub_mod(a.data_[i], b.data_[i], a.p_);
    return s;
  }

  friend FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
    if (a.p_ != b.p_) throw Error("field mismatch in product");
    if (a.cols_ != b.rows_)
      throw Error("shape mismatch in product: " + a.shape() + " * " + b.shape());
    FpMatrix out(a.p_, a.rows_, b.cols_);
    std::vector<std::uint64_t> acc(b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const std::uint64_t aik = a(i, k);
        if (aik == 0) continue;
        const Residue* brow = &b.data_[k * b.cols_];
        for (std::size_t j = 0; j < b.cols_; ++j) acc[j] = (acc[j] + aik * brow[j]) % a.p_;
      }
      for (std::size_t j = 0; j < b.cols_; ++j) out.data_[i * b.cols_ + j] = static_cast<Residue>(acc[j]);
    }
    return out;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  std::string to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t r = 0; r < rows_; ++r) {
      os << (r ? ",[" : "[");
      for (std::size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << (*this)(r, c);
      os << ']';
    }
    os << ']';
    return os.str();
  }

 private:
  void require_same_shape(const FpMatrix& b) const {
    if (p_ != b.p_ || rows_ != b.rows_ || cols_ != b.cols_)
      throw Error("shape mismatch: " + shape() + " vs " + b.shape());
  }

  Residue p_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Residue> data_;
};

inline FpMatrix hstack(const FpMatrix& a, const FpMatrix& b) {
  if (a.rows() != b.rows()) throw Error("hstack row mismatch");
  FpMatrix out(a.p(), a.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

inline FpMatrix hstack(Residue p, std::size_t rows, std::span<const FpMatrix> parts) {
  std::size_t cols = 0;
  for (const auto& m : parts) {
    if (m.rows() != rows) throw Error("hstack row mismatch");
    cols += m.cols();
  }
  FpMatrix out(p, rows, cols);
  std::size_t c = 0;
  for (const auto& m : parts) {
    out.set_block(0, c, m);
    c += m.cols();
  }
  return out;
}

inline FpMatrix vstack(const FpMatrix& a, const FpMatrix& b) {
  if (a.cols() != b.cols()) throw Error("vstack column mismatch");
  FpMatrix out(a.p(), a.rows() + b.rows(), a.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), 0, b);
  return out;
}

inline FpMatrix block_diagonal(const FpMatrix& a, const FpMatrix& b) {
  FpMatrix out(a.p(), a.rows() + b.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

/// Kronecker product; index (i, k) of the result is i * b.rows() + k.
inline FpMatrix kron(const FpMatrix& a, const FpMatrix& b) {
  const Residue p = a.p();
  FpMatrix out(p, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Residue aij = a(i, j);
      if (aij == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out.set(i * b.rows() + k, j * b.cols() + l, mul_mod(aij, b(k, l), p));
    }
  return out;
}

struct RrefResult {
  FpMatrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

inline RrefResult rref(FpMatrix m) {
  const Residue p = m.p();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<Residue> data = m.entries();
  auto at = [&](std::size_t r, std::size_t c) -> Residue& { return data[r * C + c]; };
  for (std::size_t col = 0; col < C && row < R; ++col) {
    std::size_t sel = row;
    while (sel < R && at(sel, col) == 0) ++sel;
    if (sel == R) continue;
    if (sel != row)
      for (std::size_t c = 0; c < C; ++c) std::swap(at(sel, c), at(row, c));
    const Residue inv = inv_mod(at(row, col), p);
    if (inv != 1)
      for (std::size_t c = col; c < C; ++c) at(row, c) = mul_mod(at(row, c), inv, p);
    for (std::size_t r = 0; r < R; ++r) {
      if (r == row) continue;
      const Residue f = at(r, col);
      if (f == 0) continue;
      const Residue nf = p - f;
      for (std::size_t c = col; c < C; ++c) {
        const Residue v = at(row, c);
        if (v != 0) at(r, c) = static_cast<Residue>((at(r, c) + std::uint64_t{nf} * v) % p);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return {FpMatrix(p, R, C, std::move(data)), std::move(pivots)};
}

inline std::size_t rank(const FpMatrix& m) { return rref(m).rank(); }

/// Null-space basis as the columns of the result (cols(m) x nullity).
inline FpMatrix kernel_basis(const FpMatrix& m) {
  const auto [red, pivots] = rref(m);
  const Residue p = m.p();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  FpMatrix k(p, m.cols(), free_cols.size());
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    const std::size_t f = free_cols[j];
    k.set(f, j, 1);
    for (std::size_t i = 0; i < pivots.size(); ++i) k.set(pivots[i], j, neg_mod(red(i, f), p));
  }
  return k;
}

/// Some x with m * x = b, or nothing when b is outside the column span.
inline std::optional<std::vector<Residue>> solve(const FpMatrix& m, std::span<const Residue> b) {
  if (b.size() != m.rows())
    throw Error("solve: right-hand side has length " + std::to_string(b.size()) + ", expected " +
                std::to_string(m.rows()));
  FpMatrix aug = hstack(m, FpMatrix::column(m.p(), b));
  const auto [red, pivots] = rref(std::move(aug));
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  std::vector<Residue> x(m.cols(), 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = red(i, m.cols());
  return x;
}

/// Linearly independent columns of m spanning its column space (pivot columns).
inline FpMatrix column_space_basis(const FpMatrix& m) {
  const auto piv = rref(m).pivots;
  return m.select_columns(piv);
}

inline std::optional<FpMatrix> inverse(const FpMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  const auto [red, pivots] = rref(hstack(m, FpMatrix::identity(m.p(), n)));
  if (pivots.size() < n || (n > 0 && pivots[n - 1] >= n)) return std::nullopt;
  return red.block(0, n, n, n);
}

/// Columns of `sub` extended by standard basis vectors to an invertible matrix.
/// `sub` must have independent columns.
inline FpMatrix complete_basis(const FpMatrix& sub) {
  const std::size_t dim = sub.rows();
  const auto piv = rref(sub.transpose()).pivots;
  if (piv.size() != sub.cols()) throw Error("complete_basis: columns are dependent");
  std::vector<bool> taken(dim, false);
  for (auto c : piv) taken[c] = true;
  FpMatrix full(sub.p(), dim, dim);
  full.set_block(0, 0, sub);
  std::size_t j = sub.cols();
  for (std::size_t i = 0; i < dim; ++i)
    if (!taken[i]) full.set(i, j++, 1);
  return full;
}

/// L with L * b = identity, for b with independent columns.
inline FpMatrix left_inverse(const FpMatrix& b) {
  auto inv = inverse(complete_basis(b));
  return inv->block(0, 0, b.cols(), b.rows());
}

struct QuotientSpace {
  FpMatrix projection;  // (dim - rank) x dim, kernel = span(sub)
  FpMatrix section;     // dim x (dim - rank), projection * section = identity
};

inline QuotientSpace quotient_space(std::size_t dim, const FpMatrix& sub) {
  if (sub.rows() != dim)
    throw Error("quotient_space: subspace vectors have length " + std::to_string(sub.rows()) +
                ", expected " + std::to_string(dim));
  const FpMatrix basis = column_space_basis(sub);
  const std::size_t r = basis.cols();
  const FpMatrix full = complete_basis(basis);
  const FpMatrix inv = *inverse(full);
  return {inv.block(r, 0, dim - r, dim), full.block(0, r, dim, dim - r)};
}

inline bool in_column_span(const FpMatrix& m, std::span<const Residue> v) { return solve(m, v).has_value(); }

/// Column span of a contains column span of b.
inline bool span_contains(const FpMatrix& a, const FpMatrix& b) {
  return rank(hstack(a, b)) == rank(a);
}

/// Homogeneous linear system whose unknowns are matrices. Each equation is a
/// matrix identity  sum_t coef_t * L_t * X_{v_t} * R_t = 0.
class MatrixSystem {
 public:
  struct Term {
    Residue coef;
    const FpMatrix* left;  // nullptr means identity
    std::size_t var;
    const FpMatrix* right;  // nullptr means identity
  };

  explicit MatrixSystem(Residue p) : p_(p) {}

  std::size_t add_variable(std::size_t rows, std::size_t cols) {
    vars_.push_back({offset_, rows, cols});
    offset_ += rows * cols;
    return vars_.size() - 1;
  }

  std::size_t unknowns() const { return offset_; }

  void add_equation(std::span<const Term> terms) {
    if (terms.empty()) return;
    const auto [out_r, out_c] = output_shape(terms.front());
    for (const auto& t : terms) {
      const auto shape = output_shape(t);
      if (shape.first != out_r || shape.second != out_c) throw Error("MatrixSystem: inconsistent term shapes");
    }
    const std::size_t base = rows_.size();
    rows_.resize(base + out_r * out_c, std::vector<Residue>(offset_, 0));
    for (const auto& t : terms) {
      const auto& v = vars_[t.var];
      // coefficient of X[k][l] in equation (r, c) is coef * L[r][k] * R[l][c]
      for (std::size_t r = 0; r < out_r; ++r)
        for (std::size_t k = 0; k < v.rows; ++k) {
          const Residue lrk = t.left ? (*t.left)(r, k) : (r == k ? 1 : 0);
          if (lrk == 0) continue;
          const Residue lk = mul_mod(lrk, t.coef % p_, p_);
          for (std::size_t l = 0; l < v.cols; ++l) {
            if (t.right) {
              for (std::size_t c = 0; c < out_c; ++c) {
                const Residue rlc = (*t.right)(l, c);
                if (rlc == 0) continue;
                auto& e = rows_[base + r * out_c + c][v.offset + k * v.cols + l];
                e = add_mod(e, mul_mod(lk, rlc, p_), p_);
              }
            } else {
              auto& e = rows_[base + r * out_c + l][v.offset + k * v.cols + l];
              e = add_mod(e, lk, p_);
            }
          }
        }
    }
  }

  /// Basis of the solution space; each solution lists one matrix per variable.
  std::vector<std::vector<FpMatrix>> solution_basis() const {
    FpMatrix coeff(p_, rows_.size(), offset_);
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (std::size_t c = 0; c < offset_; ++c) coeff.set(r, c, rows_[r][c]);
    const FpMatrix k = kernel_basis(coeff);
    std::vector<std::vector<FpMatrix>> out;
    out.reserve(k.cols());
    for (std::size_t j = 0; j < k.cols(); ++j) out.push_back(unpack(k.column_vector(j)));
    return out;
  }

  std::vector<FpMatrix> unpack(std::span<const Residue> x) const {
    std::vector<FpMatrix> mats;
    for (const auto& v : vars_) {
      std::vector<Residue> e(x.begin() + static_cast<std::ptrdiff_t>(v.offset),
                             x.begin() + static_cast<std::ptrdiff_t>(v.offset + v.rows * v.cols));
      mats.emplace_back(p_, v.rows, v.cols, std::move(e));
    }
    return mats;
  }

 private:
  struct Var {
    std::size_t offset, rows, cols;
  };

  std::pair<std::size_t, std::size_t> output_shape(const Term& t) const {
    const auto& v = vars_.at(t.var);
    const std::size_t r = t.left ? t.left->rows() : v.rows;
    const std::size_t c = t.right ? t.right->cols() : v.cols;
    if (t.left && t.left->cols() != v.rows) throw Error("MatrixSystem: left factor shape");
    if (t.right && t.right->rows() != v.cols) throw Error("MatrixSystem: right factor shape");
    return {r, c};
  }

  Residue p_;
  std::vector<Var> vars_;
  std::size_t offset_ = 0;
  std::vector<std::vector<Residue>> rows_;
};

/// Enumerates every F_p-linear combination of `count` basis elements in
/// lexicographic coefficient order, calling fn(coeffs) until it returns false.
template <typename Fn>
void for_each_combination(Residue p, std::size_t count, Fn&& fn) {
  std::vector<Residue> coeffs(count, 0);
  while (true) {
    if (!fn(std::as_const(coeffs))) return;
    std::size_t i = 0;
    while (i < count && ++coeffs[i] == p) coeffs[i++] = 0;
    if (i == count) return;
  }
}

inline std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

}  // namespace commacat
