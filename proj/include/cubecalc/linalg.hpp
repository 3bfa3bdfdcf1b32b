#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "cubecalc/matrix.hpp"

namespace cubecalc {

// Rank over the rationals.
std::size_t rank_over_q(const Matrix& m);

// Nonzero invariant factors of an integer matrix (Smith normal form
// diagonal), positive and each dividing the next. Throws if `m` has a
// non-integral entry.
std::vector<mpz_class> smith_invariant_factors(const Matrix& m);

}  // namespace cubecalc
