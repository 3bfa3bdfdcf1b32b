#include <doctest.h>

#include "cubecalc/errors.hpp"
#include "cubecalc/linalg.hpp"
#include "cubecalc/random_models.hpp"
#include "test_util.hpp"

using namespace cubecalc;
using testutil::mat;

TEST_CASE("scalar text round trip") {
  CHECK(format_scalar(parse_scalar("-3/6")) == "-1/2");
  CHECK(format_scalar(parse_scalar("7")) == "7");
  CHECK_THROWS_AS(parse_scalar("1/0"), InputError);
  CHECK_THROWS_AS(parse_scalar("x"), InputError);
  CHECK_THROWS_AS(parse_scalar(""), InputError);
}

TEST_CASE("sparse matrix arithmetic matches dense arithmetic") {
  const Matrix a = mat({{1, 0, 2}, {0, -1, 3}});
  const Matrix b = mat({{1, 1}, {0, 2}, {-1, 0}});
  const Matrix ab = a * b;
  CHECK(ab == mat({{-1, 1}, {-3, -2}}));
  CHECK((a + a) == a.scaled(2));
  CHECK((a - a).is_zero());
  CHECK(a.transpose().transpose() == a);
  CHECK(a.nnz() == 4);
  CHECK(a.at(1, 2) == 3);
  CHECK(Matrix::identity(3) * b == b);
  CHECK(kronecker(Matrix::identity(2), mat({{2}})) == mat({{2, 0}, {0, 2}}));
}

TEST_CASE("builder sums duplicates and drops zeros") {
  MatrixBuilder m(2, 2);
  m.add(0, 1, 3);
  m.add(0, 1, -3);
  m.add(1, 0, 2);
  m.add_block(0, 0, mat({{1}}), 5);
  const Matrix built = std::move(m).build();
  CHECK(built.nnz() == 2);
  CHECK(built == mat({{5, 0}, {2, 0}}));
}

TEST_CASE("rank and Smith form agree with dense oracles on random integer matrices") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + rng.index(5), c = 1 + rng.index(5);
    std::vector<std::vector<Scalar>> dense(r, std::vector<Scalar>(c));
    for (auto& row : dense)
      for (auto& x : row)
        if (rng.chance(55)) x = rng.uniform(-4, 4);
    const Matrix m = Matrix::from_dense(dense, c);
    CHECK(rank_over_q(m) == testutil::dense_rank(m));
    const auto snf = smith_invariant_factors(m);
    CHECK(snf == testutil::invariant_factors_by_minors(m));
    CHECK(snf.size() == rank_over_q(m));
  }
}

TEST_CASE("Smith form of small fixed matrices") {
  CHECK(smith_invariant_factors(mat({{2}})) == std::vector<mpz_class>{2});
  CHECK(smith_invariant_factors(mat({{2, 0}, {0, 3}})) == std::vector<mpz_class>{1, 6});
  CHECK(smith_invariant_factors(mat({{2, 4}, {6, 8}})) == std::vector<mpz_class>{2, 4});
  CHECK(smith_invariant_factors(Matrix(3, 2)).empty());
  CHECK_THROWS_AS(smith_invariant_factors(Matrix::from_dense({{Scalar(1, 2)}}, 1)), InputError);
}

TEST_CASE("rank of a rational matrix") {
  const Matrix m = Matrix::from_dense({{Scalar(1, 2), 1}, {1, 2}}, 2);
  CHECK(rank_over_q(m) == 1);
}
