#pragma once

#include "forestcalc/scalar.hpp"

#include <numeric>
#include <utility>
#include <vector>

namespace forestcalc {

// Dense square matrix over one scalar field (Rational or double).
// Values are immutable in practice: every operation returns a new matrix.
template <class S>
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int order) : n_(order), e_(static_cast<std::size_t>(order) * order, S(0)) {
    if (order < 0) throw Error("matrix order must be nonnegative");
  }

  static Matrix identity(int order) {
    Matrix m(order);
    for (int i = 0; i < order; ++i) m(i, i) = S(1);
    return m;
  }

  int order() const { return n_; }

  S& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * n_ + j]; }
  const S& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * n_ + j]; }

  bool operator==(const Matrix&) const = default;

  Matrix transposed() const {
    Matrix t(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  S trace() const {
    S acc(0);
    for (int i = 0; i < n_; ++i) acc += (*this)(i, i);
    return acc;
  }

  std::vector<S> row_sums() const {
    std::vector<S> sums(n_, S(0));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) sums[i] += (*this)(i, j);
    return sums;
  }

  bool is_zero() const {
    for (const S& x : e_)
      if (!scalar_traits<S>::is_zero(x)) return false;
    return true;
  }

  bool is_symmetric() const {
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if (!scalar_traits<S>::near((*this)(i, j), (*this)(j, i))) return false;
    return true;
  }

 private:
  int n_ = 0;
  std::vector<S> e_;
};

namespace detail {
template <class S>
void require_same_order(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.order() != b.order()) throw Error("matrix order mismatch");
}
}  // namespace detail

template <class S>
Matrix<S> operator+(const Matrix<S>& a, const Matrix<S>& b) {
  detail::require_same_order(a, b);
  Matrix<S> c(a.order());
  for (int i = 0; i < a.order(); ++i)
    for (int j = 0; j < a.order(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

template <class S>
Matrix<S> operator-(const Matrix<S>& a, const Matrix<S>& b) {
  detail::require_same_order(a, b);
  Matrix<S> c(a.order());
  for (int i = 0; i < a.order(); ++i)
    for (int j = 0; j < a.order(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

template <class S>
Matrix<S> operator*(const Matrix<S>& a, const Matrix<S>& b) {
  detail::require_same_order(a, b);
  const int n = a.order();
  Matrix<S> c(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const S& f = a(i, k);
      if (scalar_traits<S>::is_zero(f)) continue;
      for (int j = 0; j < n; ++j) c(i, j) += f * b(k, j);
    }
  return c;
}

template <class S>
Matrix<S> operator*(const S& s, const Matrix<S>& a) {
  Matrix<S> c(a.order());
  for (int i = 0; i < a.order(); ++i)
    for (int j = 0; j < a.order(); ++j) c(i, j) = s * a(i, j);
  return c;
}

template <class S>
Matrix<S> operator*(const Matrix<S>& a, const S& s) {
  return s * a;
}

template <class S>
S max_abs_entry(const Matrix<S>& a) {
  S best(0);
  for (int i = 0; i < a.order(); ++i)
    for (int j = 0; j < a.order(); ++j) {
      S m = scalar_traits<S>::abs(a(i, j));
      if (m > best) best = m;
    }
  return best;
}

// Largest |a_ij - b_ij|.
template <class S>
S max_abs_diff(const Matrix<S>& a, const Matrix<S>& b) {
  detail::require_same_order(a, b);
  S best(0);
  for (int i = 0; i < a.order(); ++i)
    for (int j = 0; j < a.order(); ++j) {
      S d = scalar_traits<S>::abs(a(i, j) - b(i, j));
      if (d > best) best = d;
    }
  return best;
}

template <class S>
bool near(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.order() != b.order()) return false;
  for (int i = 0; i < a.order(); ++i)
    for (int j = 0; j < a.order(); ++j)
      if (!scalar_traits<S>::near(a(i, j), b(i, j))) return false;
  return true;
}

namespace detail {

// Full-pivot search over the trailing submatrix starting at `step`.
// Rational mode takes the first nonzero entry; float mode the largest magnitude.
// Returns {-1,-1} when no usable pivot remains.
template <class S>
std::pair<int, int> find_pivot(const Matrix<S>& w, int step) {
  const int n = w.order();
  if constexpr (scalar_traits<S>::exact) {
    for (int r = step; r < n; ++r)
      for (int c = step; c < n; ++c)
        if (!w(r, c).is_zero()) return {r, c};
    return {-1, -1};
  } else {
    int br = -1, bc = -1;
    double best = 0.0;
    for (int r = step; r < n; ++r)
      for (int c = step; c < n; ++c) {
        double m = std::abs(w(r, c));
        if (m > best) {
          best = m;
          br = r;
          bc = c;
        }
      }
    if (best < scalar_traits<double>::singular_tol) return {-1, -1};
    return {br, bc};
  }
}

template <class S>
void swap_rows(Matrix<S>& m, int a, int b) {
  if (a == b) return;
  for (int j = 0; j < m.order(); ++j) std::swap(m(a, j), m(b, j));
}

template <class S>
void swap_cols(Matrix<S>& m, int a, int b) {
  if (a == b) return;
  for (int i = 0; i < m.order(); ++i) std::swap(m(i, a), m(i, b));
}

}  // namespace detail

// Gauss-Jordan with full pivoting. Throws SingularMatrixError when A has no inverse
// (exactly detected in rational mode, pivot magnitude < 1e-12 in float mode).
template <class S>
Matrix<S> inverse(const Matrix<S>& a) {
  const int n = a.order();
  Matrix<S> w = a;
  Matrix<S> x = Matrix<S>::identity(n);
  std::vector<int> col(n);
  std::iota(col.begin(), col.end(), 0);

  for (int step = 0; step < n; ++step) {
    auto [pr, pc] = detail::find_pivot(w, step);
    if (pr < 0) throw SingularMatrixError("singular matrix");
    detail::swap_rows(w, step, pr);
    detail::swap_rows(x, step, pr);
    detail::swap_cols(w, step, pc);
    std::swap(col[step], col[pc]);

    S piv = w(step, step);
    for (int j = 0; j < n; ++j) {
      w(step, j) = w(step, j) / piv;
      x(step, j) = x(step, j) / piv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == step || scalar_traits<S>::is_zero(w(r, step))) continue;
      S f = w(r, step);
      for (int j = 0; j < n; ++j) {
        w(r, j) -= f * w(step, j);
        x(r, j) -= f * x(step, j);
      }
    }
  }

  // Column swaps permuted the unknowns: row `col[j]` of the inverse is row j of x.
  Matrix<S> out(n);
  for (int j = 0; j < n; ++j)
    for (int c = 0; c < n; ++c) out(col[j], c) = x(j, c);
  return out;
}

namespace detail {

// Forward elimination with full pivoting; yields rank, and determinant as
// sign * product of pivots.
template <class S>
std::pair<int, S> eliminate(Matrix<S> w) {
  const int n = w.order();
  int rk = 0;
  S d(1);
  for (int step = 0; step < n; ++step) {
    auto [pr, pc] = find_pivot(w, step);
    if (pr < 0) return {rk, S(0)};
    if (pr != step) {
      swap_rows(w, step, pr);
      d = -d;
    }
    if (pc != step) {
      swap_cols(w, step, pc);
      d = -d;
    }
    ++rk;
    const S piv = w(step, step);
    d *= piv;
    for (int r = step + 1; r < n; ++r) {
      if (scalar_traits<S>::is_zero(w(r, step))) continue;
      S f = w(r, step) / piv;
      for (int j = step; j < n; ++j) w(r, j) -= f * w(step, j);
    }
  }
  return {rk, d};
}

}  // namespace detail

template <class S>
int rank(const Matrix<S>& a) {
  return detail::eliminate(a).first;
}

template <class S>
S det(const Matrix<S>& a) {
  if (a.order() == 0) return S(1);
  return detail::eliminate(a).second;
}

template <class S>
Matrix<double> to_double_matrix(const Matrix<S>& a) {
  Matrix<double> d(a.order());
  for (int i = 0; i < a.order(); ++i)
    for (int j = 0; j < a.order(); ++j) d(i, j) = scalar_traits<S>::to_double(a(i, j));
  return d;
}

inline Matrix<double> rational_to_double_matrix(const Matrix<Rational>& a) {
  return to_double_matrix(a);
}

}  // namespace forestcalc
