#include <doctest.h>

#include "grpd/error.hpp"
#include "grpd/generators.hpp"
#include "grpd/matrix.hpp"
#include "test_support.hpp"

using grpd::Matrix;
using grpd::Scalar;
using grpd::testing::mat;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, grpd::Rng& rng) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Scalar(mpq_class(rng.between(-3, 3)), mpq_class(rng.between(-1, 1)));
  }
  return m;
}

/// Rank-deficient product of random factors.
Matrix random_low_rank(std::size_t r, std::size_t c, std::size_t k, grpd::Rng& rng) {
  return random_matrix(r, k, rng) * random_matrix(k, c, rng);
}

}  // namespace

TEST_CASE("mat_mul examples") {
  const Matrix swap = mat({{0, 1}, {1, 0}});
  const Matrix m = mat({{1, 2}, {3, 4}});
  CHECK(Matrix::identity(2) * m == m);
  CHECK(swap * swap == Matrix::identity(2));
  CHECK(mat({{Scalar(1, 2), Scalar::i()}}) * mat({{2}, {0}}) == mat({{1}}));
  CHECK_THROWS_AS(m * mat({{1, 2, 3}}), grpd::DimensionError);
}

TEST_CASE("rank examples") {
  CHECK(grpd::rank(Matrix(3, 3)) == 0);
  CHECK(grpd::rank(Matrix::identity(4)) == 4);
  CHECK(grpd::rank(mat({{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("kernel_basis examples") {
  CHECK(grpd::kernel_basis(Matrix::identity(2)).cols() == 0);
  CHECK(grpd::kernel_basis(Matrix(2, 3)).cols() == 3);
  const Matrix k = grpd::kernel_basis(mat({{1, 2}}));
  REQUIRE(k.cols() == 1);
  // proportional to (-2, 1)
  CHECK(k(0, 0) == Scalar(-2) * k(1, 0));
  CHECK(!k(1, 0).is_zero());
}

TEST_CASE("invert examples") {
  CHECK(grpd::invert(Matrix::identity(3)) == Matrix::identity(3));
  CHECK(grpd::invert(mat({{0, 1}, {1, 0}})) == mat({{0, 1}, {1, 0}}));
  CHECK(grpd::invert(mat({{2, 0}, {0, Scalar::i()}})) == mat({{Scalar(1, 2), 0}, {0, -Scalar::i()}}));
  CHECK_THROWS_AS(grpd::invert(mat({{1, 2}, {2, 4}})), grpd::SingularMatrixError);
}

TEST_CASE("kron examples") {
  const Matrix m = mat({{1, 2}, {3, Scalar::i()}});
  CHECK(grpd::kron(Matrix::identity(2), Matrix::identity(3)) == Matrix::identity(6));
  CHECK(grpd::kron(mat({{2}}), m) == Scalar(2) * m);
  // swap (x) swap sends e_a (x) e_b to e_{1-a} (x) e_{1-b}: index 2a+b -> 3-(2a+b).
  Matrix expected(4, 4);
  for (std::size_t k = 0; k < 4; ++k) expected(3 - k, k) = 1;
  CHECK(grpd::kron(mat({{0, 1}, {1, 0}}), mat({{0, 1}, {1, 0}})) == expected);
}

TEST_CASE("matrix laws on random inputs") {
  grpd::Rng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng.below(4);
    const std::size_t m = 1 + rng.below(4);
    const std::size_t p = 1 + rng.below(4);
    const Matrix a = random_matrix(n, m, rng);
    const Matrix b = random_matrix(m, p, rng);
    const Matrix c = random_matrix(p, n, rng);
    CHECK((a * b) * c == a * (b * c));

    const Matrix low = random_low_rank(n + 1, m + 1, rng.below(3), rng);
    const Matrix kernel = grpd::kernel_basis(low);
    CHECK(grpd::rank(low) + kernel.cols() == low.cols());
    CHECK((low * kernel).is_zero());
    CHECK(grpd::rank(kernel) == kernel.cols());

    const Matrix inv_src = grpd::random_invertible(n, rng);
    const Matrix inv = grpd::invert(inv_src);
    CHECK((inv * inv_src).is_identity());
    CHECK((inv_src * inv).is_identity());

    const Matrix e = random_matrix(2, 3, rng);
    const Matrix f = random_matrix(3, 2, rng);
    CHECK(grpd::kron(a, e) * grpd::kron(b, f) == grpd::kron(a * b, e * f));
  }
}

TEST_CASE("column space basis has identity rows at the pivots") {
  grpd::Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_low_rank(5, 4, 1 + rng.below(3), rng);
    const Matrix basis = grpd::column_space_basis(a);
    CHECK(basis.cols() == grpd::rank(a));
    // same span: stacking adds nothing
    CHECK(grpd::rank(grpd::hstack({basis, a})) == basis.cols());
    // canonical: independent of column order and scaling
    CHECK(grpd::column_space_basis(Scalar(3) * a) == basis);
  }
}

TEST_CASE("rref is canonical") {
  const Matrix a = mat({{2, 4, 6}, {1, 2, 4}});
  const grpd::Echelon e = grpd::rref(a);
  CHECK(e.reduced == mat({{1, 2, 0}, {0, 0, 1}}));
  CHECK(e.pivots == std::vector<std::size_t>{0, 2});
  CHECK(grpd::rref(mat({{1, 2, 4}, {2, 4, 6}})).reduced == e.reduced);
}
