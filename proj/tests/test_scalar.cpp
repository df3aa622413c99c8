#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "voa/scalar.hpp"

using voa::Rational;
using voa::Scalar;

namespace {

Scalar random_scalar(std::mt19937_64& rng, bool sparse = true) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 9);
    std::uniform_int_distribution<int> keep(0, 3);
    Scalar s;
    for (int j = 0; j < Scalar::kDim; ++j) {
        if (sparse && keep(rng) != 0) continue;
        s += Rational(num(rng), den(rng)) * Scalar::basis(j);
    }
    return s;
}

}  // namespace

TEST_CASE("structure table basics") {
    CHECK(Scalar::sqrt2() * Scalar::sqrt3() == Scalar::sqrt6());
    CHECK(Scalar::sqrt2() * Scalar::sqrt6() == Rational(2) * Scalar::sqrt3());
    CHECK(Scalar::sqrt3() * Scalar::sqrt6() == Rational(3) * Scalar::sqrt2());
    CHECK(Scalar::sqrt2() * Scalar::sqrt2() == Scalar(2));
    CHECK(Scalar::sqrt3() * Scalar::sqrt3() == Scalar(3));
    CHECK(Scalar::sqrt6() * Scalar::sqrt6() == Scalar(6));
    CHECK(Scalar::i() * Scalar::i() == Scalar(-1));

    // primitive cube root of unity (-1 + sqrt3 i)/2 cubes to 1
    Scalar zeta = Rational(1, 2) * (Scalar(-1) + Scalar::sqrt3() * Scalar::i());
    CHECK(zeta * zeta * zeta == Scalar(1));
    CHECK_FALSE(zeta == Scalar(1));

    // sqrt27 i squared is -27
    Scalar s27i = Rational(3) * Scalar::sqrt3() * Scalar::i();
    CHECK(s27i * s27i == Scalar(-27));
}

TEST_CASE("field axioms on randomized triples") {
    std::mt19937_64 rng(20240811);
    for (int it = 0; it < 1000; ++it) {
        Scalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
        REQUIRE((a + b) + c == a + (b + c));
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * (b + c) == a * b + a * c);
        REQUIRE(a * b == b * a);
        REQUIRE(a + b == b + a);
    }
}

TEST_CASE("inverses") {
    CHECK(Scalar::sqrt2().inverse() == Rational(1, 2) * Scalar::sqrt2());
    CHECK(Scalar(1).inverse() == Scalar(1));
    // (2 + sqrt2)^{-1} = (2 - sqrt2)/2, since (2+sqrt2)(2-sqrt2) = 2
    Scalar a = Scalar(2) + Scalar::sqrt2();
    CHECK(a.inverse() == Rational(1, 2) * (Scalar(2) - Scalar::sqrt2()));
    CHECK_THROWS_AS(Scalar().inverse(), voa::DivisionByZeroError);

    std::mt19937_64 rng(7);
    int done = 0;
    while (done < 200) {
        Scalar a = random_scalar(rng);
        if (a.is_zero()) continue;
        REQUIRE(a * a.inverse() == Scalar(1));
        ++done;
    }
}

TEST_CASE("conjugation and rationality") {
    Scalar v = Scalar::sqrt3() * Scalar::i();
    CHECK(v.conjugate_i() == -v);
    std::mt19937_64 rng(99);
    for (int it = 0; it < 50; ++it) {
        Scalar a = random_scalar(rng);
        CHECK(a.conjugate_i().conjugate_i() == a);
        // a * conj(a) is fixed by the involution
        Scalar norm = a * a.conjugate_i();
        CHECK(norm.conjugate_i() == norm);
    }
    CHECK(Scalar(-72).is_rational());
    CHECK_FALSE(Scalar::sqrt2().is_rational());
    CHECK_FALSE(Scalar::i().is_rational());
}

TEST_CASE("roots of unity table") {
    for (int t = 0; t < 12; ++t) {
        Scalar z = Scalar::root_of_unity_12(t);
        Scalar acc(1);
        for (int j = 0; j < 12; ++j) acc *= z;
        REQUIRE(acc == Scalar(1));
    }
    CHECK(Scalar::root_of_unity_12(3) == Scalar::i());
    CHECK(Scalar::root_of_unity_12(6) == Scalar(-1));
    CHECK(Scalar::root_of_unity_12(4) ==
          Rational(1, 2) * (Scalar(-1) + Scalar::sqrt3() * Scalar::i()));
}

TEST_CASE("canonical text form") {
    CHECK(Scalar().str() == "0");
    CHECK(Scalar(-72).str() == "-72");
    CHECK(Scalar::sqrt6().str() == "√6");
    CHECK((Scalar::sqrt3() * Scalar::i()).str() == "√3i");
    CHECK((-(Scalar::sqrt3() * Scalar::i())).str() == "-√3i");
    Scalar zeta = Rational(1, 2) * (Scalar(-1) + Scalar::sqrt3() * Scalar::i());
    CHECK(zeta.str() == "-1/2 + (1/2)√3i");
    Scalar mix = Rational(3, 2) * Scalar::sqrt2() - Scalar(1) +
                 Scalar::i() * (Scalar(2) + Scalar::sqrt6());
    CHECK(mix.str() == "-1 + (3/2)√2 + (2 + √6)i");
}
