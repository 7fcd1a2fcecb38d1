#include <doctest.h>

#include "grpd/error.hpp"
#include "grpd/generators.hpp"
#include "grpd/scalar.hpp"

using grpd::Scalar;

namespace {

Scalar random_scalar(grpd::Rng& rng) {
  return Scalar(mpq_class(rng.between(-9, 9), rng.between(1, 7)), mpq_class(rng.between(-9, 9), rng.between(1, 7)));
}

}  // namespace

TEST_CASE("parse accepts every documented textual form") {
  CHECK(Scalar::parse("2") == Scalar(2));
  CHECK(Scalar::parse("-3/2") == Scalar(-3, 2));
  CHECK(Scalar::parse("6/4") == Scalar(3, 2));
  CHECK(Scalar::parse("-3/2+1/1i") == Scalar(mpq_class(-3, 2), mpq_class(1)));
  CHECK(Scalar::parse("1/2-2/3i") == Scalar(mpq_class(1, 2), mpq_class(-2, 3)));
  CHECK(Scalar::parse("i") == Scalar::i());
  CHECK(Scalar::parse("-i") == -Scalar::i());
  CHECK(Scalar::parse("3/4i") == Scalar(mpq_class(0), mpq_class(3, 4)));
  CHECK(Scalar::parse("+5") == Scalar(5));
}

TEST_CASE("parse rejects malformed scalars") {
  for (const char* bad : {"3/", "", "/2", "1/0", "1//2", "1+", "x", "1/2+i3", "2ii"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Scalar::parse(bad), grpd::ParseError);
  }
}

TEST_CASE("canonical strings are in lowest terms with positive denominators") {
  CHECK(Scalar(4, -6).to_string() == "-2/3");
  CHECK(Scalar(0).to_string() == "0/1");
  CHECK(Scalar::i().to_string() == "0/1+1/1i");
  CHECK(Scalar(mpq_class(-3, 2), mpq_class(-1, 2)).to_string() == "-3/2-1/2i");
}

TEST_CASE("canonical strings round-trip") {
  grpd::Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    const Scalar s = random_scalar(rng);
    CHECK(Scalar::parse(s.to_string()) == s);
  }
}

TEST_CASE("i squared is -1 and inverses are exact") {
  CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
  // (1 + 2i)^-1 = (1 - 2i) / 5
  CHECK(Scalar(mpq_class(1), mpq_class(2)).inverse() == Scalar(mpq_class(1, 5), mpq_class(-2, 5)));
  CHECK_THROWS((void)Scalar(0).inverse());
}

TEST_CASE("field axioms hold exactly on random Gaussian rationals") {
  grpd::Rng rng(7);
  for (int k = 0; k < 300; ++k) {
    const Scalar a = random_scalar(rng);
    const Scalar b = random_scalar(rng);
    const Scalar c = random_scalar(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a - a == Scalar(0));
    if (!a.is_zero()) CHECK(a * a.inverse() == Scalar(1));
    CHECK((a * b).conj() == a.conj() * b.conj());
  }
}
