#include "fixtures.hpp"

namespace lie2kit::fixtures {

Lie2Algebra abelian(int dim0, int dim1) { return Lie2Algebra(TwoTermSpace(dim0, dim1)); }

Lie2Algebra abelian_with_diff(const RationalMatrix& diff) {
    return Lie2Algebra(TwoTermSpace(diff.rows(), diff.cols(), diff));
}

Lie2Algebra aff1() {
    Lie2Algebra g(TwoTermSpace(2, 0));
    g.l2_00.add({0, 1}, {}, 1, Rational(1));
    return g;
}

Lie2Algebra sl2() {
    Lie2Algebra g(TwoTermSpace(3, 0));
    g.l2_00.add({0, 1}, {}, 2, Rational(1));   // [E,F] = H
    g.l2_00.add({2, 0}, {}, 0, Rational(2));   // [H,E] = 2E
    g.l2_00.add({2, 1}, {}, 1, Rational(-2));  // [H,F] = -2F
    return g;
}

Lie2Algebra heis() {
    Lie2Algebra g(TwoTermSpace(3, 0));
    g.l2_00.add({0, 1}, {}, 2, Rational(1));  // [X,Y] = Z
    return g;
}

Lie2Algebra strict2() {
    Lie2Algebra g(TwoTermSpace(1, 1));
    g.l2_01.add({0}, {0}, 0, Rational(1));
    return g;
}

Lie2Algebra aff1a() {
    Lie2Algebra g(TwoTermSpace(2, 1));
    g.l2_00.add({0, 1}, {}, 1, Rational(1));
    g.l2_01.add({0}, {0}, 0, Rational(1));
    return g;
}

Lie2Algebra det3() {
    Lie2Algebra g(TwoTermSpace(3, 1));
    g.l3.add({0, 1, 2}, {}, 0, Rational(1));
    return g;
}

Lie2Algebra string_sl2() {
    Lie2Algebra g = sl2();
    Lie2Algebra s(TwoTermSpace(3, 1));
    s.l2_00 = MultiTensor(2, 0, 3, 1, 3);
    for (int x = 0; x < 3; ++x)
        for (int y = x + 1; y < 3; ++y) {
            Vec v = g.l2_00.value({x, y}, {});
            for (int t = 0; t < 3; ++t)
                if (!v[t].is_zero()) s.l2_00.add({x, y}, {}, t, v[t]);
        }
    s.l3.add({0, 1, 2}, {}, 0, Rational(1));
    return s;
}

Lie2Algebra heisa() {
    Lie2Algebra g(TwoTermSpace(3, 1));
    g.l2_00.add({0, 1}, {}, 2, Rational(1));
    g.l2_01.add({0}, {0}, 0, Rational(1));
    return g;
}

Lie2Algebra dfix() {
    RationalMatrix d(1, 1);
    d.at(0, 0) = Rational(1);
    return abelian_with_diff(d);
}

std::vector<std::pair<std::string, Lie2Algebra>> valid_algebras() {
    return {
        {"abelian(2,2)", abelian(2, 2)},
        {"aff1", aff1()},
        {"sl2", sl2()},
        {"heis", heis()},
        {"strict2", strict2()},
        {"aff1a", aff1a()},
        {"det3", det3()},
        {"string_sl2", string_sl2()},
        {"heisa", heisa()},
        {"dfix", dfix()},
    };
}

}  // namespace lie2kit::fixtures
