#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cubecalc/matrix.hpp"

namespace cubecalc {

enum class Ring { integers, rationals };

std::string ring_name(Ring r);  // "Z" / "Q"

// Finitely supported chain complex of free modules over Z or Q.
//
// diff(n) is the matrix of d_n : C_n -> C_{n-1}, shaped rank(n-1) x rank(n).
// Construction validates the shapes, integrality over Z, and d_{n-1} d_n = 0.
class ChainComplex {
 public:
  ChainComplex() = default;
  explicit ChainComplex(Ring ring) : ring_(ring) {}
  ChainComplex(Ring ring, std::map<int, std::size_t> ranks, std::map<int, Matrix> diffs,
               std::map<int, std::vector<std::string>> labels = {});

  Ring ring() const { return ring_; }
  std::size_t rank(int n) const;
  Matrix diff(int n) const;
  const std::map<int, std::size_t>& ranks() const { return ranks_; }
  const std::map<int, Matrix>& diffs() const { return diffs_; }
  const std::map<int, std::vector<std::string>>& labels() const { return labels_; }

  bool is_zero() const { return ranks_.empty(); }
  int min_degree() const;  // requires !is_zero()
  int max_degree() const;
  std::size_t total_rank() const;
  long long euler_characteristic() const;

  friend bool operator==(const ChainComplex& a, const ChainComplex& b);

 private:
  Ring ring_ = Ring::rationals;
  std::map<int, std::size_t> ranks_;  // nonzero ranks only
  std::map<int, Matrix> diffs_;       // nonzero differentials only
  std::map<int, std::vector<std::string>> labels_;
};

using ComplexPtr = std::shared_ptr<const ChainComplex>;

ComplexPtr share(ChainComplex c);

// Degreewise matrices f_n : A_n -> B_n commuting with the differentials.
class ChainMap {
 public:
  ChainMap(ComplexPtr source, ComplexPtr target, std::map<int, Matrix> mats);

  static ChainMap identity(ComplexPtr c);
  static ChainMap zero(ComplexPtr source, ComplexPtr target);

  const ChainComplex& source() const { return *source_; }
  const ChainComplex& target() const { return *target_; }
  const ComplexPtr& source_ptr() const { return source_; }
  const ComplexPtr& target_ptr() const { return target_; }
  Matrix at(int n) const;
  const std::map<int, Matrix>& mats() const { return mats_; }

  // this o first : first.source -> this.target
  ChainMap after(const ChainMap& first) const;
  ChainMap operator+(const ChainMap& other) const;
  ChainMap scaled(const Scalar& c) const;

  bool is_identity() const;

  // Same matrices and same endpoint complexes.
  friend bool operator==(const ChainMap& a, const ChainMap& b);

 private:
  ComplexPtr source_;
  ComplexPtr target_;
  std::map<int, Matrix> mats_;  // nonzero only
};

struct DegreeHomology {
  std::size_t betti = 0;
  std::vector<mpz_class> torsion;  // each > 1, dividing the next

  bool is_zero() const { return betti == 0 && torsion.empty(); }
  friend bool operator==(const DegreeHomology&, const DegreeHomology&) = default;
};

// Homology in every degree where it is nonzero.
struct HomologySummary {
  Ring ring = Ring::rationals;
  std::map<int, DegreeHomology> degrees;

  bool is_zero() const { return degrees.empty(); }
  std::size_t betti(int n) const;
  std::size_t total_betti() const;
  std::optional<int> lowest_degree() const;
  std::string to_string() const;

  // Compares groups degree by degree; the ring tag is ignored.
  friend bool operator==(const HomologySummary& a, const HomologySummary& b) {
    return a.degrees == b.degrees;
  }
};

HomologySummary homology(const ChainComplex& c);

// Degree n: A_n (+) B_{n+1};  d(a, b) = (d_A a, f(a) - d_B b).
ChainComplex hofiber(const ChainMap& f);

// Map of homotopy fibers induced by a commuting square
//   top:    A  -> B
//   bottom: A' -> B'
// with left: A -> A', right: B -> B'. Sends (a, b) to (left a, right b).
ChainMap hofiber_map(const ChainMap& top, const ChainMap& bottom, const ChainMap& left,
                     const ChainMap& right);

// Minimal degree with nonzero homology of hofiber(f); nullopt means the map
// is a quasi-isomorphism.
using Connectivity = std::optional<int>;
Connectivity connectivity(const ChainMap& f);
std::string connectivity_text(const Connectivity& c);  // "inf" or the number

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b);
ChainMap direct_sum(const ChainMap& f, const ChainMap& g);
// shift(C, k)_n = C_{n-k}; differentials carry over unchanged.
ChainComplex shift(const ChainComplex& c, int k);
// (A (x) B)_n = sum_{p+q=n} A_p (x) B_q,  d(a (x) b) = da (x) b + (-1)^p a (x) db.
ChainComplex tensor(const ChainComplex& a, const ChainComplex& b);

}  // namespace cubecalc
