#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <initializer_list>
#include <map>
#include <vector>

#include "cubecalc/chain.hpp"
#include "cubecalc/matrix.hpp"

namespace testutil {

using cubecalc::ChainComplex;
using cubecalc::ComplexPtr;
using cubecalc::Matrix;
using cubecalc::Ring;
using cubecalc::Scalar;

inline Matrix mat(std::initializer_list<std::initializer_list<long>> rows, std::size_t cols = 0) {
  std::vector<std::vector<Scalar>> dense;
  for (const auto& r : rows) {
    std::vector<Scalar> row;
    for (long x : r) row.emplace_back(x);
    dense.push_back(std::move(row));
  }
  if (!dense.empty()) cols = dense[0].size();
  return Matrix::from_dense(dense, cols);
}

// Rank by plain dense Gaussian elimination over Q.
inline std::size_t dense_rank(std::vector<std::vector<mpq_class>> a) {
  std::size_t rank = 0;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const mpq_class f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

inline std::size_t dense_rank(const Matrix& m) { return dense_rank(m.to_dense()); }

// Betti numbers over Q from ranks: dim C_n - rank d_n - rank d_{n+1}.
inline std::map<int, std::size_t> betti_oracle(const ChainComplex& c) {
  std::map<int, std::size_t> out;
  for (const auto& [n, r] : c.ranks()) {
    const std::size_t b = r - dense_rank(c.diff(n)) - dense_rank(c.diff(n + 1));
    if (b) out[n] = b;
  }
  return out;
}

inline std::map<int, std::size_t> betti_of(const cubecalc::HomologySummary& h) {
  std::map<int, std::size_t> out;
  for (const auto& [n, g] : h.degrees)
    if (g.betti) out[n] = g.betti;
  return out;
}

// Determinant by cofactor expansion (small matrices only).
inline mpz_class det(const std::vector<std::vector<mpz_class>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  mpz_class total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (a[0][c] == 0) continue;
    std::vector<std::vector<mpz_class>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<mpz_class> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(std::move(row));
    }
    total += (c % 2 ? -1 : 1) * a[0][c] * det(minor);
  }
  return total;
}

// Invariant factors from determinantal divisors: d_k = gcd of all k x k
// minors, factor_k = d_k / d_{k-1}.
inline std::vector<mpz_class> invariant_factors_by_minors(const Matrix& m) {
  std::vector<std::vector<mpz_class>> a;
  for (const auto& row : m.to_dense()) {
    std::vector<mpz_class> r;
    for (const auto& x : row) r.push_back(x.get_num());
    a.push_back(std::move(r));
  }
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<mpz_class> out;
  mpz_class prev = 1;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    mpz_class g = 0;
    std::vector<bool> rsel(rows, false), csel(cols, false);
    std::fill(rsel.begin(), rsel.begin() + k, true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + k, true);
      do {
        std::vector<std::vector<mpz_class>> sub;
        for (std::size_t r = 0; r < rows; ++r) {
          if (!rsel[r]) continue;
          std::vector<mpz_class> row;
          for (std::size_t c = 0; c < cols; ++c)
            if (csel[c]) row.push_back(a[r][c]);
          sub.push_back(std::move(row));
        }
        mpz_class d = det(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

// Sphere-like model: rank one in each listed degree, zero differential.
inline ChainComplex spheres(Ring ring, std::initializer_list<int> degrees) {
  std::map<int, std::size_t> ranks;
  for (int d : degrees) ++ranks[d];
  return ChainComplex(ring, ranks, {});
}

}  // namespace testutil
