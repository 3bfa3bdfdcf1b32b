#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "cubecalc/matrix.hpp"
#include "cubecalc/poset.hpp"
#include "cubecalc/random_models.hpp"

namespace cubecalc {

// Sparse polynomial in x1..xm with exact rational coefficients. Zero
// coefficients are never stored.
class MultiPolynomial {
 public:
  using Exponent = std::vector<int>;

  explicit MultiPolynomial(std::size_t m = 1);
  // Grammar: sums of terms; a term is a product of rational constants and
  // powers x<i>^<e>, separated by '*'. `m` = 0 infers the variable count.
  static MultiPolynomial parse(const std::string& text, std::size_t m = 0);

  std::size_t variables() const { return m_; }
  const std::map<Exponent, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Scalar coefficient(const Exponent& e) const;
  void add_term(const Exponent& e, const Scalar& c);
  // Multidegree: componentwise maximum exponent (zeros for the 0 polynomial).
  Exponent degree() const;

  MultiPolynomial operator+(const MultiPolynomial& o) const;
  MultiPolynomial operator-(const MultiPolynomial& o) const;
  MultiPolynomial scaled(const Scalar& c) const;

  // Terms by total degree, then exponent tuple, both descending:
  // "7*x1*x2+3*x1+5*x2+2".
  std::string to_string() const;

  friend bool operator==(const MultiPolynomial&, const MultiPolynomial&) = default;

 private:
  std::size_t m_;
  std::map<Exponent, Scalar> terms_;
};

// Terms with exponent <= j componentwise; nothing survives a -1 entry.
MultiPolynomial truncate_multi(const MultiPolynomial& p, const MultiIndex& j);
// Terms of total degree <= k.
MultiPolynomial truncate_total(const MultiPolynomial& p, int k);
// sum over R of (-1)^|R| truncate_multi(p, j_R).
MultiPolynomial homog_extract(const MultiPolynomial& p, const MultiIndex& j);

bool verify_iterated_truncation(const MultiPolynomial& p, const MultiIndex& j,
                                const MultiIndex& k);

struct TwoTowersCheck {
  MultiPolynomial total;  // truncate_total(p, k)
  MultiPolynomial union_side;  // inclusion-exclusion over the multidegrees with |j| = k
  bool holds() const { return total == union_side; }
};
TwoTowersCheck verify_twotowers_identity(const MultiPolynomial& p, int k);

MultiPolynomial random_polynomial(Rng& rng, std::size_t m, int max_exponent,
                                  std::size_t max_terms);

}  // namespace cubecalc
