#include "doctest_main.hpp"

#include "lie2kit/ratlin.hpp"

#include <random>

using namespace lie2kit;

namespace {

std::mt19937 rng(20240811);

Rational rand_rat() {
    std::uniform_int_distribution<long> num(-4, 4);
    std::uniform_int_distribution<long> den(1, 3);
    return Rational(num(rng), den(rng));
}

RationalMatrix rand_matrix(int rows, int cols) {
    RationalMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = rand_rat();
    return m;
}

}  // namespace

TEST_CASE("rational parsing and canonical form") {
    CHECK(Rational::parse("-3/7").str() == "-3/7");
    CHECK(Rational::parse("4/6").str() == "2/3");
    CHECK(Rational::parse("0/5").str() == "0");
    CHECK(Rational(2, -4).str() == "-1/2");
    CHECK(Rational(6, 3) == Rational(2));
    CHECK_THROWS(Rational::parse("1/0"));
    CHECK_THROWS(Rational::parse("abc"));
}

TEST_CASE("rank examples") {
    CHECK(rank(RationalMatrix::identity(2)) == 2);
    CHECK(rank(RationalMatrix::zero(2, 2)) == 0);
    CHECK(rank(RationalMatrix{{1, 2}, {2, 4}}) == 1);
}

TEST_CASE("kernel examples") {
    CHECK(kernel_basis(RationalMatrix::identity(3)).empty());
    CHECK(kernel_basis(RationalMatrix::zero(2, 3)).size() == 3);
    auto k = kernel_basis(RationalMatrix{{1, 2}, {2, 4}});
    REQUIRE(k.size() == 1);
    // span{(2,-1)} up to scale
    CHECK(k[0][0] * Rational(-1) == k[0][1] * Rational(2));
}

TEST_CASE("solve examples") {
    Vec b = {Rational(3), Rational(-1, 2)};
    auto x = solve(RationalMatrix::identity(2), b);
    REQUIRE(x.has_value());
    CHECK(*x == b);
    // inconsistent system
    CHECK(!solve(RationalMatrix{{1, 2}, {2, 4}}, Vec{Rational(1), Rational(3)}).has_value());
}

TEST_CASE("quotient_basis completes a basis") {
    QuotientBasis q = quotient_basis({Vec{Rational(1), Rational(0)}}, 2);
    REQUIRE(q.complement.size() == 1);
    RationalMatrix all = RationalMatrix::from_columns({Vec{Rational(1), Rational(0)}, q.complement[0]}, 2);
    CHECK(rank(all) == 2);
    CHECK_THROWS(quotient_basis({Vec{Rational(1), Rational(2)}, Vec{Rational(2), Rational(4)}}, 2));
}

TEST_CASE("section_on_image direct check") {
    RationalMatrix m{{1, 0}, {0, 0}};
    RationalMatrix q = section_on_image(m);
    CHECK(m * q * m == m);
}

TEST_CASE("rank-nullity and exact kernel on random matrices") {
    for (int trial = 0; trial < 60; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 5);
        int cols = 1 + static_cast<int>(rng() % 5);
        RationalMatrix m = rand_matrix(rows, cols);
        auto ker = kernel_basis(m);
        CHECK(rank(m) + static_cast<int>(ker.size()) == cols);
        for (const auto& v : ker) CHECK(vec_is_zero(m.apply(v)));
        if (!ker.empty())
            CHECK(rank(RationalMatrix::from_rows(ker, cols)) == static_cast<int>(ker.size()));
        // rank via Bareiss agrees with rank via rref
        CHECK(rank(m) == rref(m).rank());
    }
}

TEST_CASE("solve returns exact solutions on random consistent systems") {
    for (int trial = 0; trial < 40; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 4);
        int cols = 1 + static_cast<int>(rng() % 4);
        RationalMatrix m = rand_matrix(rows, cols);
        Vec x0(cols);
        for (auto& v : x0) v = rand_rat();
        Vec b = m.apply(x0);
        auto x = solve(m, b);
        REQUIRE(x.has_value());
        CHECK(m.apply(*x) == b);
    }
}

TEST_CASE("section_on_image fixes the image pointwise on random matrices") {
    for (int trial = 0; trial < 40; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 4);
        int cols = 1 + static_cast<int>(rng() % 4);
        RationalMatrix m = rand_matrix(rows, cols);
        RationalMatrix q = section_on_image(m);
        CHECK(m * q * m == m);
        for (const auto& w : image_basis(m)) CHECK((m * q).apply(w) == w);
    }
}

TEST_CASE("subspace membership and coordinates") {
    Subspace s({Vec{Rational(1), Rational(2), Rational(0)}, Vec{Rational(0), Rational(0), Rational(1)}}, 3);
    CHECK(s.dim() == 2);
    Vec v{Rational(2), Rational(4), Rational(-5)};
    REQUIRE(s.contains(v));
    auto c = s.coords(v);
    REQUIRE(c.has_value());
    Vec rebuilt = vec_zero(3);
    for (size_t i = 0; i < c->size(); ++i) vec_axpy(rebuilt, (*c)[i], s.basis()[i]);
    CHECK(rebuilt == v);
    CHECK(!s.contains(Vec{Rational(0), Rational(1), Rational(0)}));
}
