#pragma once

// Test-only exact-arithmetic oracle: Gaussian-rational row reduction used to
// recompute kernels, ranges, and range chains independently of the floating
// point pipeline. Only suitable for small integer-entry inputs.

#include <numeric>
#include <stdexcept>
#include <vector>

#include "covrep/linalg.hpp"

namespace covrep::exact {

struct Rat {
  long long num = 0;
  long long den = 1;

  Rat() = default;
  Rat(long long n) : num(n), den(1) {}
  Rat(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::overflow_error("rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  bool is_zero() const { return num == 0; }
};

inline long long checked(__int128 v) {
  if (v > __int128(9223372036854775807LL) || v < -__int128(9223372036854775807LL))
    throw std::overflow_error("rational: overflow");
  return static_cast<long long>(v);
}

inline Rat operator+(const Rat& a, const Rat& b) {
  return Rat(checked(__int128(a.num) * b.den + __int128(b.num) * a.den),
             checked(__int128(a.den) * b.den));
}
inline Rat operator-(const Rat& a, const Rat& b) {
  return Rat(checked(__int128(a.num) * b.den - __int128(b.num) * a.den),
             checked(__int128(a.den) * b.den));
}
inline Rat operator*(const Rat& a, const Rat& b) {
  return Rat(checked(__int128(a.num) * b.num), checked(__int128(a.den) * b.den));
}
inline Rat operator/(const Rat& a, const Rat& b) {
  if (b.is_zero()) throw std::overflow_error("rational: division by zero");
  return Rat(checked(__int128(a.num) * b.den), checked(__int128(a.den) * b.num));
}

struct GRat {
  Rat re, im;
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

inline GRat operator+(const GRat& a, const GRat& b) { return {a.re + b.re, a.im + b.im}; }
inline GRat operator-(const GRat& a, const GRat& b) { return {a.re - b.re, a.im - b.im}; }
inline GRat operator*(const GRat& a, const GRat& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline GRat operator/(const GRat& a, const GRat& b) {
  const Rat norm = b.re * b.re + b.im * b.im;
  const GRat conj{b.re, Rat(0) - b.im};
  const GRat prod = a * conj;
  return {prod.re / norm, prod.im / norm};
}

using Mat = std::vector<std::vector<GRat>>;

inline Mat zeros(std::size_t rows, std::size_t cols) {
  return Mat(rows, std::vector<GRat>(cols));
}

/// Converts a complex matrix with (small) Gaussian-integer entries.
inline Mat from_complex_int(const CMat& m) {
  Mat out = zeros(m.rows(), m.cols());
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) {
      const double re = m(r, c).real(), im = m(r, c).imag();
      if (re != static_cast<long long>(re) || im != static_cast<long long>(im))
        throw std::invalid_argument("exact oracle: non-integer entry");
      out[r][c] = GRat{Rat(static_cast<long long>(re)), Rat(static_cast<long long>(im))};
    }
  return out;
}

inline Mat mul(const Mat& a, const Mat& b) {
  Mat out = zeros(a.size(), b[0].size());
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[r][k].is_zero()) continue;
      for (std::size_t c = 0; c < b[0].size(); ++c)
        out[r][c] = out[r][c] + a[r][k] * b[k][c];
    }
  return out;
}

inline Mat kron_identity(std::size_t blocks, const Mat& m) {
  const std::size_t rows = m.size(), cols = m[0].size();
  Mat out = zeros(blocks * rows, blocks * cols);
  for (std::size_t b = 0; b < blocks; ++b)
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) out[b * rows + r][b * cols + c] = m[r][c];
  return out;
}

/// In-place reduced row echelon form; returns the pivot columns.
inline std::vector<std::size_t> rref(Mat& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = row;
    while (pivot < rows && m[pivot][col].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[row]);
    const GRat lead = m[row][col];
    for (std::size_t c = col; c < cols; ++c) m[row][c] = m[row][c] / lead;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      const GRat factor = m[r][col];
      for (std::size_t c = col; c < cols; ++c)
        m[r][c] = m[r][c] - factor * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(Mat m) { return rref(m).size(); }

/// Columns spanning the kernel, from the free columns of the RREF.
inline Mat kernel_basis(const Mat& m) {
  Mat reduced = m;
  const std::vector<std::size_t> pivots = rref(reduced);
  const std::size_t cols = m[0].size();
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Mat basis = zeros(cols, free_cols.size());
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    basis[free_cols[f]][f] = GRat{Rat(1), Rat(0)};
    for (std::size_t p = 0; p < pivots.size(); ++p)
      basis[pivots[p]][f] = GRat{Rat(0), Rat(0)} - reduced[p][free_cols[f]];
  }
  return basis;
}

/// Pivot columns of m form an exact column-space basis.
inline Mat range_basis(const Mat& m) {
  Mat reduced = m;
  const std::vector<std::size_t> pivots = rref(reduced);
  Mat basis = zeros(m.size(), pivots.size());
  for (std::size_t p = 0; p < pivots.size(); ++p)
    for (std::size_t r = 0; r < m.size(); ++r) basis[r][p] = m[r][pivots[p]];
  return basis;
}

/// Every column of vectors lies in the span of the columns of gens.
inline bool columns_in_span(const Mat& gens, const Mat& vectors) {
  if (vectors.empty() || vectors[0].empty()) return true;
  const std::size_t rows = gens.size();
  const std::size_t g = gens[0].size(), v = vectors[0].size();
  Mat augmented = zeros(rows, g + v);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < g; ++c) augmented[r][c] = gens[r][c];
    for (std::size_t c = 0; c < v; ++c) augmented[r][g + c] = vectors[r][c];
  }
  for (std::size_t p : rref(augmented))
    if (p >= g) return false;
  return true;
}

/// v_k for the representation matrix v : dim_h x (n dim_h).
inline Mat rep_power(const Mat& v, std::size_t dim_h, std::size_t n, int k) {
  Mat p = zeros(dim_h, dim_h);
  for (std::size_t r = 0; r < dim_h; ++r) p[r][r] = GRat{Rat(1), Rat(0)};
  std::size_t blocks = 1;
  for (int j = 1; j <= k; ++j) {
    p = mul(v, kron_identity(n, p));
    blocks *= n;
  }
  (void)blocks;
  return p;
}

}  // namespace covrep::exact
