#include "cubecalc/linalg.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <utility>

#include "cubecalc/errors.hpp"

namespace cubecalc {
namespace {

// Sparse Gaussian elimination that only ever pivots on entries accepted by a
// unit predicate. Over Q every nonzero entry is a unit, so the matrix is
// consumed entirely; over Z only +-1 pivots are taken, and the leftover
// block goes to the dense Smith reduction below. Both kinds of step are
// unimodular over the respective ring, so invariant factors are preserved.
template <class T>
class SparseEliminator {
 public:
  template <class Convert>
  SparseEliminator(const Matrix& m, Convert convert)
      : rows_(m.rows()), cols_(m.cols()) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (const auto& e : m.row(i)) {
        rows_[i].emplace(e.col, convert(e.value));
        cols_[e.col].insert(i);
      }
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (!rows_[i].empty()) alive_.push_back(i);
  }

  template <class IsUnit>
  std::size_t eliminate(IsUnit is_unit) {
    std::size_t pivots = 0;
    while (true) {
      // Markowitz-style choice: shortest row, then shortest column.
      std::size_t best_row = 0, best_col = 0;
      std::size_t best_cost = std::numeric_limits<std::size_t>::max();
      std::size_t write = 0;
      for (std::size_t idx = 0; idx < alive_.size(); ++idx) {
        const std::size_t r = alive_[idx];
        if (rows_[r].empty()) continue;
        alive_[write++] = r;
        const std::size_t rlen = rows_[r].size();
        if (best_cost != std::numeric_limits<std::size_t>::max() &&
            rlen - 1 >= best_cost)
          continue;
        for (const auto& [c, v] : rows_[r]) {
          if (!is_unit(v)) continue;
          const std::size_t cost = (rlen - 1) * (cols_[c].size());
          if (cost < best_cost) {
            best_cost = cost;
            best_row = r;
            best_col = c;
          }
        }
      }
      alive_.resize(write);
      if (best_cost == std::numeric_limits<std::size_t>::max()) break;
      pivot(best_row, best_col);
      ++pivots;
    }
    return pivots;
  }

  std::vector<std::vector<T>> residual() const {
    std::map<std::size_t, std::size_t> col_index;
    std::vector<std::size_t> live_rows;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r].empty()) continue;
      live_rows.push_back(r);
      for (const auto& kv : rows_[r]) col_index.emplace(kv.first, 0);
    }
    std::size_t k = 0;
    for (auto& kv : col_index) kv.second = k++;
    std::vector<std::vector<T>> dense(live_rows.size(), std::vector<T>(k));
    for (std::size_t i = 0; i < live_rows.size(); ++i)
      for (const auto& [c, v] : rows_[live_rows[i]]) dense[i][col_index[c]] = v;
    return dense;
  }

 private:
  void pivot(std::size_t pr, std::size_t pc) {
    const T a = rows_[pr].at(pc);
    const std::vector<std::size_t> others(cols_[pc].begin(), cols_[pc].end());
    for (std::size_t r : others) {
      if (r == pr) continue;
      auto& row = rows_[r];
      const T factor = row.at(pc) / a;
      for (const auto& [c, v] : rows_[pr]) {
        auto it = row.find(c);
        if (it == row.end()) {
          row.emplace(c, -factor * v);
          cols_[c].insert(r);
        } else {
          it->second -= factor * v;
          if (sgn(it->second) == 0) {
            row.erase(it);
            cols_[c].erase(r);
          }
        }
      }
    }
    for (const auto& kv : rows_[pr]) cols_[kv.first].erase(pr);
    rows_[pr].clear();
  }

  std::vector<std::map<std::size_t, T>> rows_;
  std::vector<std::set<std::size_t>> cols_;
  std::vector<std::size_t> alive_;
};

std::vector<mpz_class> dense_smith_diagonal(std::vector<std::vector<mpz_class>> a) {
  std::vector<mpz_class> diag;
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  for (std::size_t k = 0; k < std::min(rows, cols); ++k) {
    // Smallest-magnitude pivot in the trailing block.
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = k; i < rows; ++i)
      for (std::size_t j = k; j < cols; ++j)
        if (sgn(a[i][j]) != 0 &&
            (pi == rows || mpz_cmpabs(a[i][j].get_mpz_t(), a[pi][pj].get_mpz_t()) < 0)) {
          pi = i;
          pj = j;
        }
    if (pi == rows) break;
    std::swap(a[k], a[pi]);
    for (auto& row : a) std::swap(row[k], row[pj]);

    while (true) {
      bool clean = true;
      for (std::size_t i = k + 1; i < rows; ++i) {
        if (sgn(a[i][k]) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), a[i][k].get_mpz_t(), a[k][k].get_mpz_t());
        for (std::size_t j = k; j < cols; ++j) a[i][j] -= q * a[k][j];
        if (sgn(a[i][k]) != 0) clean = false;
      }
      for (std::size_t j = k + 1; j < cols; ++j) {
        if (sgn(a[k][j]) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), a[k][j].get_mpz_t(), a[k][k].get_mpz_t());
        for (std::size_t i = k; i < rows; ++i) a[i][j] -= q * a[i][k];
        if (sgn(a[k][j]) != 0) clean = false;
      }
      if (clean) break;
      // A remainder smaller than the pivot survived; promote it.
      std::size_t bi = k, bj = k;
      for (std::size_t i = k + 1; i < rows; ++i)
        if (sgn(a[i][k]) != 0 && mpz_cmpabs(a[i][k].get_mpz_t(), a[bi][bj].get_mpz_t()) < 0) {
          bi = i;
          bj = k;
        }
      for (std::size_t j = k + 1; j < cols; ++j)
        if (sgn(a[k][j]) != 0 && mpz_cmpabs(a[k][j].get_mpz_t(), a[bi][bj].get_mpz_t()) < 0) {
          bi = k;
          bj = j;
        }
      std::swap(a[k], a[bi]);
      for (auto& row : a) std::swap(row[k], row[bj]);
    }
    diag.push_back(abs(a[k][k]));
  }
  return diag;
}

}  // namespace

std::size_t rank_over_q(const Matrix& m) {
  SparseEliminator<mpq_class> elim(m, [](const Scalar& x) { return x; });
  return elim.eliminate([](const mpq_class& x) { return sgn(x) != 0; });
}

std::vector<mpz_class> smith_invariant_factors(const Matrix& m) {
  if (!m.is_integral())
    throw InvariantError("Smith normal form requested for a non-integral matrix");
  SparseEliminator<mpz_class> elim(m, [](const Scalar& x) { return mpz_class(x.get_num()); });
  const std::size_t units =
      elim.eliminate([](const mpz_class& x) { return x == 1 || x == -1; });
  std::size_t ones = units;
  std::vector<mpz_class> diag;
  for (auto& d : dense_smith_diagonal(elim.residual())) {
    if (d == 1)
      ++ones;
    else
      diag.push_back(std::move(d));
  }

  // Diagonal to divisibility chain: (a, b) -> (gcd, lcm) is an equivalence.
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      mpz_class g = gcd(diag[i], diag[j]);
      mpz_class l = lcm(diag[i], diag[j]);
      diag[i] = g;
      diag[j] = l;
    }
  std::vector<mpz_class> out(ones, mpz_class(1));
  out.insert(out.end(), diag.begin(), diag.end());
  return out;
}

}  // namespace cubecalc
