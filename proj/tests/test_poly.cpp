#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "markbracket/poly.hpp"
#include "support/generators.hpp"

using namespace markbracket;

namespace {
const BracketPoly A = BracketPoly::var_a();
const BracketPoly B = BracketPoly::var_b();
const BracketPoly D = BracketPoly::var_d();
} // namespace

TEST_CASE("printing follows the descending lexicographic term order") {
    CHECK((A * D + B).str() == "A*d + B");
    CHECK((A * A * D + BracketPoly(2) * A * B + B * B * D).str() == "A^2*d + 2*A*B + B^2*d");
    CHECK(BracketPoly().str() == "0");
    CHECK((BracketPoly(-1) * A - B).str() == "-A - B");
    CHECK((A * A * D + BracketPoly(2) * A * B + B * B * D).str(false) == "A^2*d+2*A*B+B^2*d");
}

TEST_CASE("parse accepts the polynomial grammar") {
    CHECK(BracketPoly::parse("A^2*d + 2*A*B + B^2*d") == A * A * D + BracketPoly(2) * A * B + B * B * D);
    CHECK(BracketPoly::parse("A^2 d+2 A B+B^2 d") == A * A * D + BracketPoly(2) * A * B + B * B * D);
    CHECK(BracketPoly::parse("-3") == BracketPoly(-3));
    CHECK(BracketPoly::parse("0") == BracketPoly());
    CHECK(BracketPoly::parse("  d ") == D);
    CHECK_THROWS_AS(BracketPoly::parse(""), ParseError);
    CHECK_THROWS_AS(BracketPoly::parse("A^-1"), ParseError);
    CHECK_THROWS_AS(BracketPoly::parse("A +"), ParseError);
    CHECK_THROWS_AS(BracketPoly::parse("x"), ParseError);
}

TEST_CASE("parse/print round trip") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        const BracketPoly p = testsupport::random_poly(rng);
        CHECK(BracketPoly::parse(p.str()) == p);
        CHECK(BracketPoly::parse(p.str(false)) == p);
    }
}

TEST_CASE("reduce_to_laurent substitutes B and d") {
    CHECK(reduce_to_laurent(A * D + B) == LaurentA::a_power(3, -1));
    CHECK(reduce_to_laurent(BracketPoly(1)) == LaurentA(1));
    LaurentA d_image;
    d_image.add_term(-2, -1);
    d_image.add_term(2, -1);
    CHECK(reduce_to_laurent(D) == d_image);
}

TEST_CASE("reduce_to_laurent is a ring map") {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        const BracketPoly p = testsupport::random_poly(rng);
        const BracketPoly q = testsupport::random_poly(rng);
        CHECK(reduce_to_laurent(p * q) == reduce_to_laurent(p) * reduce_to_laurent(q));
        CHECK(reduce_to_laurent(p + q) == reduce_to_laurent(p) + reduce_to_laurent(q));
    }
}

TEST_CASE("exact_divide") {
    const BracketPoly d_minus_1 = D - BracketPoly(1);
    CHECK(exact_divide(D * D - BracketPoly(1), d_minus_1) == D + BracketPoly(1));
    CHECK(exact_divide(BracketPoly(), d_minus_1) == BracketPoly());
    CHECK(exact_divide(d_minus_1 * (A + B), d_minus_1) == A + B);
    CHECK_THROWS_AS(exact_divide(A, B), DivisibilityError);
    CHECK_THROWS_AS(exact_divide(A + BracketPoly(1), A), DivisibilityError);
    CHECK_THROWS_AS(exact_divide(A, BracketPoly()), DivisibilityError);
}

TEST_CASE("exact_divide inverts multiplication") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const BracketPoly p = testsupport::random_poly(rng);
        BracketPoly q = testsupport::random_poly(rng);
        if (q.is_zero())
            q = B + BracketPoly(1);
        CHECK(exact_divide(p * q, q) == p);
    }
}

TEST_CASE("distributivity on random polynomials") {
    std::mt19937 rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        const BracketPoly p = testsupport::random_poly(rng);
        const BracketPoly q = testsupport::random_poly(rng);
        const BracketPoly r = testsupport::random_poly(rng);
        CHECK((p + q) * r == p * r + q * r);
    }
}

TEST_CASE("laurent printing") {
    LaurentA hopf;
    hopf.add_term(4, -1);
    hopf.add_term(-4, -1);
    CHECK(hopf.str() == "-A^4 - A^-4");
    CHECK(LaurentA(1).str() == "1");
    CHECK(LaurentA().str() == "0");
    CHECK(LaurentA::a_power(1, 2).str() == "2*A");
}

TEST_CASE("render_t maps A-exponents to quarters of t, ascending") {
    LaurentA x;
    x.add_term(-2, -1);
    x.add_term(2, -1);
    CHECK(render_t(x) == "-t^{-1/2} - t^{1/2}");
    CHECK(render_t(LaurentA(1)) == "1");
    LaurentA y;
    y.add_term(-2, -1);
    y.add_term(-10, -1);
    CHECK(render_t(y) == "-t^{1/2} - t^{5/2}");
    CHECK(render_t(LaurentA::a_power(-4)) == "t");
    CHECK(render_t(LaurentA::a_power(8)) == "t^-2");
    // The Jones prefactor (-1)^n A^(6 ell - 3 n) can be applied while rendering.
    CHECK(render_t(LaurentA::a_power(3, -1), 1, 0) == "1");
}
