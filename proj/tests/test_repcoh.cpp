#include "doctest_main.hpp"

#include "fixtures.hpp"
#include "oracle_ce.hpp"

#include "lie2kit/repcoh.hpp"

#include <random>

using namespace lie2kit;
namespace fx = lie2kit::fixtures;

namespace {

std::mt19937 rng(2024);

Rational rand_rat() { return Rational(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 2)); }

void randomize(MultiTensor& t) {
    for (int c = 0; c < t.cols(); ++c)
        for (int k = 0; k < t.target_dim(); ++k) t.coeffs().at(k, c) = rand_rat();
}

Cochain random_cochain(const Lie2Module& m, int degree) {
    CochainLayout lay = cochain_space(m, degree);
    Vec v = vec_zero(lay.total);
    for (auto& x : v) x = rand_rat();
    return unflatten(m, lay, v);
}

// aff1 weight module: e1 acts by t on a 1-dim space, e2 acts by 0.
Lie2Module aff1_weight_module(long t) {
    Lie2Module m(fx::aff1(), TwoTermSpace(1, 0));
    m.act00.add({0}, {0}, 0, Rational(t));
    return m;
}

oracle::ClassicalLieAlgebra classical_of(const Lie2Algebra& g) {
    oracle::ClassicalLieAlgebra c(g.space.dim0);
    for (int i = 0; i < c.dim; ++i)
        for (int j = i + 1; j < c.dim; ++j) c.set(i, j, g.l2_00.value({i, j}, {}));
    return c;
}

std::vector<std::pair<std::string, Lie2Module>> module_corpus() {
    std::vector<std::pair<std::string, Lie2Module>> out;
    for (const auto& [name, g] : fx::valid_algebras()) {
        out.emplace_back(name + "/trivial(1,1)", trivial_module(g, TwoTermSpace(1, 1)));
        out.emplace_back(name + "/adjoint", adjoint_module(g));
    }
    out.emplace_back("aff1/weight1", aff1_weight_module(1));
    return out;
}

}  // namespace

TEST_CASE("end_algebra dimensions and strictness") {
    SUBCASE("V = (1,1) with zero differential") {
        EndAlgebra e = end_algebra(TwoTermSpace(1, 1));
        CHECK(e.alg.space.dim0 == 2);
        CHECK(e.alg.space.dim1 == 1);
        CHECK(check_lie2(e.alg).ok());
        CHECK(e.alg.l3.is_zero());
    }
    SUBCASE("V = (1,0)") {
        EndAlgebra e = end_algebra(TwoTermSpace(1, 0));
        CHECK(e.alg.space.dim0 == 1);
        CHECK(e.alg.space.dim1 == 0);
        CHECK(e.alg.l2_00.is_zero());
    }
    SUBCASE("V = (2,1) with nonzero differential") {
        RationalMatrix d(2, 1);
        d.at(0, 0) = Rational(1);
        EndAlgebra e = end_algebra(TwoTermSpace(2, 1, d));
        CHECK(e.alg.space.dim0 == 3);
        CHECK(check_lie2(e.alg).ok());
    }
}

TEST_CASE("check_action on the module corpus") {
    for (const auto& [name, m] : module_corpus()) {
        CAPTURE(name);
        CHECK(check_action(m).ok());
    }
}

TEST_CASE("corrupted act2 fails check_action at the coherence condition") {
    Lie2Module m = adjoint_module(fx::string_sl2());
    REQUIRE(check_action(m).ok());
    m.act2.add({0, 1}, {0}, 0, Rational(1));
    CheckReport r = check_action(m);
    REQUIRE(!r.ok());
    bool coherence = false;
    for (const auto& f : r.failures)
        if (f.check == "hom condition (4)") coherence = true;
    CHECK(coherence);
}

TEST_CASE("adjoint of a skeletal algebra uses the -l3 slice") {
    Lie2Algebra g = fx::det3();
    Lie2Module m = adjoint_module(g);
    CHECK(m.a2(basis_vec(3, 0), basis_vec(3, 1), basis_vec(3, 2)) == Vec{Rational(-1)});
    CHECK(check_action(m).ok());
}

TEST_CASE("cochain_space block tables") {
    Lie2Module m(fx::aff1a(), TwoTermSpace(1, 1));
    SUBCASE("degree -1 is V1") {
        CochainLayout lay = cochain_space(m, -1);
        REQUIRE(lay.blocks.size() == 1);
        CHECK(lay.blocks[0].p == 0);
        CHECK(lay.blocks[0].q == 0);
        CHECK(lay.blocks[0].s == 1);
        CHECK(lay.total == 1);
    }
    SUBCASE("degree 2 block row") {
        CochainLayout lay = cochain_space(m, 2);
        std::vector<std::tuple<int, int, int>> keys;
        for (const auto& b : lay.blocks) keys.emplace_back(b.p, b.q, b.s);
        CHECK(keys ==
              std::vector<std::tuple<int, int, int>>{{0, 1, 0}, {2, 0, 0}, {1, 1, 1}, {3, 0, 1}});
    }
    SUBCASE("dimension count for g dims (2,1), V dims (1,1), n = 1") {
        CochainLayout lay = cochain_space(m, 1);
        CHECK(lay.total == 4);
    }
}

TEST_CASE("coboundary reduces to the classical CE differential when g1 = V1 = 0") {
    for (auto gname : {std::string("aff1"), std::string("sl2"), std::string("heis")}) {
        Lie2Algebra g = gname == "aff1" ? fx::aff1() : gname == "sl2" ? fx::sl2() : fx::heis();
        CAPTURE(gname);
        Lie2Module m = trivial_module(g, TwoTermSpace(1, 0));
        oracle::ClassicalLieAlgebra cg = classical_of(g);
        oracle::ClassicalModule cm = oracle::ClassicalModule::trivial(g.space.dim0, 1);
        for (int n = 0; n <= 3; ++n) {
            RationalMatrix d = coboundary(m, n);
            RationalMatrix o = oracle::ce_differential(cg, cm, n);
            CHECK(d == o);
        }
    }
}

TEST_CASE("classical reduction with a nontrivial module") {
    Lie2Module m = aff1_weight_module(1);
    oracle::ClassicalLieAlgebra cg = classical_of(fx::aff1());
    oracle::ClassicalModule cm = oracle::ClassicalModule::trivial(2, 1);
    cm.rho[0].at(0, 0) = Rational(1);
    for (int n = 0; n <= 2; ++n) CHECK(coboundary(m, n) == oracle::ce_differential(cg, cm, n));
}

TEST_CASE("D o D = 0 across the module corpus") {
    for (const auto& [name, m] : module_corpus()) {
        CAPTURE(name);
        for (int n = -1; n <= 3; ++n) {
            RationalMatrix a = coboundary(m, n + 1) * coboundary(m, n);
            CHECK(a.is_zero());
        }
    }
}

TEST_CASE("cohomology: abelian algebra with trivial module and zero differentials") {
    Lie2Algebra g = fx::abelian(2, 1);
    Lie2Module m = trivial_module(g, TwoTermSpace(1, 1, RationalMatrix::zero(1, 1)));
    for (int n = 0; n <= 3; ++n) {
        CohomologyResult h = cohomology(m, n);
        CHECK(h.betti == h.layout.total);  // every differential vanishes
    }
}

TEST_CASE("cohomology: Whitehead lemmas for sl2 and H1 of aff1") {
    Lie2Module sl2m = trivial_module(fx::sl2(), TwoTermSpace(1, 0));
    CHECK(cohomology(sl2m, 1).betti == 0);
    CHECK(cohomology(sl2m, 2).betti == 0);
    CHECK(cohomology(sl2m, 3).betti == 1);
    oracle::ClassicalLieAlgebra cg = classical_of(fx::sl2());
    oracle::ClassicalModule cm = oracle::ClassicalModule::trivial(3, 1);
    for (int n = 0; n <= 3; ++n) CHECK(cohomology(sl2m, n).betti == oracle::ce_betti(cg, cm, n));

    Lie2Module aff1m = trivial_module(fx::aff1(), TwoTermSpace(1, 0));
    CHECK(cohomology(aff1m, 1).betti == 1);
    oracle::ClassicalLieAlgebra ca = classical_of(fx::aff1());
    oracle::ClassicalModule am = oracle::ClassicalModule::trivial(2, 1);
    for (int n = 0; n <= 3; ++n) CHECK(cohomology(aff1m, n).betti == oracle::ce_betti(ca, am, n));
}

TEST_CASE("one-cocycle formulas match the coboundary matrix blockwise") {
    for (const auto& [name, m] : module_corpus()) {
        CAPTURE(name);
        int g0 = m.algebra.space.dim0, g1 = m.algebra.space.dim1;
        int v0 = m.space.dim0, v1 = m.space.dim1;
        for (int trial = 0; trial < 5; ++trial) {
            RationalMatrix x0(v0, g0), x1(v1, g1);
            for (int i = 0; i < v0; ++i)
                for (int j = 0; j < g0; ++j) x0.at(i, j) = rand_rat();
            for (int i = 0; i < v1; ++i)
                for (int j = 0; j < g1; ++j) x1.at(i, j) = rand_rat();
            MultiTensor lx(2, 0, g0, g1, v1);
            randomize(lx);
            Cochain c(1, g0, g1, v0, v1);
            c.set(1, 0, 0, build_tensor(1, 0, g0, g1, v0,
                                        [&](const std::vector<int>& a, const std::vector<int>&) {
                                            return x0.col(a[0]);
                                        }));
            c.set(0, 1, 1, build_tensor(0, 1, g0, g1, v1,
                                        [&](const std::vector<int>&, const std::vector<int>& s) {
                                            return x1.col(s[0]);
                                        }));
            c.set(2, 0, 1, lx);
            Cochain dc = coboundary_apply(m, c);
            CheckReport res = one_cocycle_residuals(m, x0, x1, lx);
            CHECK(res.ok() == dc.is_zero());
            CochainLayout l1 = cochain_space(m, 1);
            Vec flat = flatten(c, l1);
            CHECK(res.ok() == vec_is_zero(coboundary(m, 1).apply(flat)));
        }
    }
}

TEST_CASE("one_coboundary equals the matrix route and is a cocycle") {
    for (const auto& [name, m] : module_corpus()) {
        CAPTURE(name);
        int g0 = m.algebra.space.dim0, g1 = m.algebra.space.dim1;
        int v0 = m.space.dim0, v1 = m.space.dim1;
        Vec u(v0);
        for (auto& x : u) x = rand_rat();
        RationalMatrix theta(v1, g0);
        for (int i = 0; i < v1; ++i)
            for (int j = 0; j < g0; ++j) theta.at(i, j) = rand_rat();
        Cochain c = one_coboundary(m, u, theta);
        Cochain c0(0, g0, g1, v0, v1);
        c0.set(0, 0, 0, build_tensor(0, 0, g0, g1, v0,
                                     [&](const std::vector<int>&, const std::vector<int>&) {
                                         return u;
                                     }));
        c0.set(1, 0, 1, build_tensor(1, 0, g0, g1, v1,
                                     [&](const std::vector<int>& a, const std::vector<int>&) {
                                         return theta.col(a[0]);
                                     }));
        CochainLayout l1 = cochain_space(m, 1);
        CHECK(flatten(c, l1) == flatten(coboundary_apply(m, c0), l1));
        RationalMatrix x0(v0, g0), x1(v1, g1);
        for (int j = 0; j < g0; ++j) {
            Vec col = c.block(1, 0, 0).value({j}, {});
            for (int i = 0; i < v0; ++i) x0.at(i, j) = col[i];
        }
        for (int j = 0; j < g1; ++j) {
            Vec col = c.block(0, 1, 1).value({}, {j});
            for (int i = 0; i < v1; ++i) x1.at(i, j) = col[i];
        }
        CHECK(one_cocycle_residuals(m, x0, x1, c.block(2, 0, 1)).ok());
    }
}

TEST_CASE("three_coboundary agrees with the coboundary matrix on random 2-cochains") {
    for (const auto& [name, m] : module_corpus()) {
        CAPTURE(name);
        for (int trial = 0; trial < 4; ++trial) {
            Cochain lambda = random_cochain(m, 2);
            CochainLayout l3 = cochain_space(m, 3);
            Vec via_formulas = flatten(three_coboundary(m, lambda), l3);
            Vec via_matrix = coboundary(m, 2).apply(flatten(lambda, cochain_space(m, 2)));
            CHECK(via_formulas == via_matrix);
        }
    }
}

TEST_CASE("sign audit: component maps against hand-expanded tables") {
    // Generic tensors; the component maps are linear in f and need no axioms.
    Lie2Algebra g = fx::abelian(3, 2);
    randomize(g.l2_00);
    randomize(g.l2_01);
    randomize(g.l3);
    Lie2Module m(g, TwoTermSpace(2, 2));
    randomize(m.act00);
    randomize(m.act01);
    randomize(m.act10);
    randomize(m.act2);
    int g0 = 3, g1 = 2;
    auto ex = [&](int i) { return basis_vec(g0, i); };
    auto ef = [&](int i) { return basis_vec(g1, i); };

    SUBCASE("dhat on (1,1,0) and (2,1,1)") {
        MultiTensor f(1, 1, g0, g1, 2);
        randomize(f);
        MultiTensor out = cb_dhat(m, f, 1, 1, 0);
        for (int a = 0; a < g1; ++a)
            for (int b = a; b < g1; ++b) {
                Vec expect = f.evaluate({g.d(ef(a))}, {ef(b)});
                vec_axpy(expect, Rational(1), f.evaluate({g.d(ef(b))}, {ef(a)}));
                expect = vec_scale(Rational(-1), expect);  // (-1)^p with p = 1
                CHECK(out.value({}, {a, b}) == expect);
            }
        MultiTensor f2(2, 1, g0, g1, 2);
        randomize(f2);
        MultiTensor out2 = cb_dhat(m, f2, 2, 1, 1);
        for (int x = 0; x < g0; ++x)
            for (int a = 0; a < g1; ++a)
                for (int b = a; b < g1; ++b) {
                    Vec expect = f2.evaluate({ex(x), g.d(ef(a))}, {ef(b)});
                    vec_axpy(expect, Rational(1), f2.evaluate({ex(x), g.d(ef(b))}, {ef(a)}));
                    CHECK(out2.value({x}, {a, b}) == expect);  // (-1)^p with p = 2
                }
    }

    SUBCASE("partialhat carries (-1)^(p+2q)") {
        MultiTensor f(1, 1, g0, g1, 2);  // s = 1, p + 2q odd
        randomize(f);
        MultiTensor out = cb_partialhat(m, f, 1, 1);
        for (int x = 0; x < g0; ++x)
            for (int a = 0; a < g1; ++a)
                CHECK(out.value({x}, {a}) ==
                      vec_scale(Rational(-1), m.space.diff.apply(f.value({x}, {a}))));
    }

    SUBCASE("dphi10 on (1,1,0)") {
        MultiTensor f(1, 1, g0, g1, 2);
        randomize(f);
        MultiTensor out = cb_dphi10(m, f, 1, 1, 0);
        for (int x = 0; x < g0; ++x)
            for (int y = x + 1; y < g0; ++y)
                for (int a = 0; a < g1; ++a) {
                    Vec expect = m.a00(ex(x), f.value({y}, {a}));
                    vec_axpy(expect, Rational(-1), m.a00(ex(y), f.value({x}, {a})));
                    vec_axpy(expect, Rational(-1),
                             f.evaluate({g.l2_00.value({x, y}, {})}, {ef(a)}));
                    vec_axpy(expect, Rational(-1),
                             f.evaluate({ex(y)}, {g.l2_01.value({x}, {a})}));
                    vec_axpy(expect, Rational(1),
                             f.evaluate({ex(x)}, {g.l2_01.value({y}, {a})}));
                    CHECK(out.value({x, y}, {a}) == expect);
                }
    }

    SUBCASE("dphi01 on (1,1,0)") {
        MultiTensor f(1, 1, g0, g1, 2);
        randomize(f);
        MultiTensor out = cb_dphi01(m, f, 1, 1);
        for (int x = 0; x < g0; ++x)
            for (int a = 0; a < g1; ++a)
                for (int b = a; b < g1; ++b) {
                    Vec expect = m.a10(ef(a), f.value({x}, {b}));
                    vec_axpy(expect, Rational(1), m.a10(ef(b), f.value({x}, {a})));
                    expect = vec_scale(Rational(-1), expect);  // (-1)^p, p = 1
                    CHECK(out.value({x}, {a, b}) == expect);
                }
    }

    SUBCASE("dphi2 on (1,1,0) and (0,0,0)") {
        MultiTensor f(1, 1, g0, g1, 2);
        randomize(f);
        MultiTensor out = cb_dphi2(m, f, 1, 1);
        for (int x = 0; x < g0; ++x)
            for (int y = x + 1; y < g0; ++y)
                for (int z = y + 1; z < g0; ++z)
                    for (int a = 0; a < g1; ++a) {
                        // (2,1)-unshuffles of (x,y,z): (xy|z)+, (xz|y)-, (yz|x)+
                        Vec expect = m.a2(ex(x), ex(y), f.value({z}, {a}));
                        vec_axpy(expect, Rational(-1), m.a2(ex(x), ex(z), f.value({y}, {a})));
                        vec_axpy(expect, Rational(1), m.a2(ex(y), ex(z), f.value({x}, {a})));
                        expect = vec_scale(Rational(-1), expect);  // (-1)^(p+2q), p+2q = 3
                        CHECK(out.value({x, y, z}, {a}) == expect);
                    }
        MultiTensor u(0, 0, g0, g1, 2);
        randomize(u);
        MultiTensor out2 = cb_dphi2(m, u, 0, 0);
        for (int x = 0; x < g0; ++x)
            for (int y = x + 1; y < g0; ++y)
                CHECK(out2.value({x, y}, {}) == m.a2(ex(x), ex(y), u.value({}, {})));
    }

    SUBCASE("dl3 on (1,1,0) over a 4-dimensional degree-0 piece") {
        Lie2Algebra g4 = fx::abelian(4, 2);
        randomize(g4.l2_00);
        randomize(g4.l2_01);
        randomize(g4.l3);
        Lie2Module m4(g4, TwoTermSpace(2, 2));
        randomize(m4.act00);
        randomize(m4.act01);
        randomize(m4.act10);
        randomize(m4.act2);
        MultiTensor f4(1, 1, 4, g1, 2);
        randomize(f4);
        MultiTensor out4 = cb_dl3(m4, f4, 1, 1, 0);
        auto e4 = [&](int i) { return basis_vec(4, i); };
        for (int x1 = 0; x1 < 4; ++x1)
            for (int x2 = x1 + 1; x2 < 4; ++x2)
                for (int x3 = x2 + 1; x3 < 4; ++x3)
                    for (int x4 = x3 + 1; x4 < 4; ++x4) {
                        // (3,1)-unshuffles: (123|4)+, (124|3)-, (134|2)+, (234|1)-
                        Vec expect = f4.evaluate({e4(x4)}, {g4.l3.value({x1, x2, x3}, {})});
                        vec_axpy(expect, Rational(-1),
                                 f4.evaluate({e4(x3)}, {g4.l3.value({x1, x2, x4}, {})}));
                        vec_axpy(expect, Rational(1),
                                 f4.evaluate({e4(x2)}, {g4.l3.value({x1, x3, x4}, {})}));
                        vec_axpy(expect, Rational(-1),
                                 f4.evaluate({e4(x1)}, {g4.l3.value({x2, x3, x4}, {})}));
                        expect = vec_scale(Rational(-1), expect);
                        CHECK(out4.value({x1, x2, x3, x4}, {}) == expect);
                    }
    }
}

TEST_CASE("skeletal derivation check: both routes agree") {
    SUBCASE("l3 = 0, Lie algebra derivation, lX = 0 passes") {
        Lie2Algebra g = fx::aff1a();
        RationalMatrix x0(2, 2), x1(1, 1);
        x0.at(1, 1) = Rational(1);  // e1 -> 0, e2 -> e2 derives aff1
        MultiTensor lx(2, 0, 2, 1, 1);
        SkeletalDerivationReport r = skeletal_derivation_check(g, x0, x1, lx);
        CHECK(r.cocycle_route);
        CHECK(r.classical_route);
        CHECK(r.agree());
    }
    SUBCASE("X = 0: condition reduces to D lX = 0") {
        Lie2Algebra g = fx::det3();
        RationalMatrix x0(3, 3), x1(1, 1);
        MultiTensor lx(2, 0, 3, 1, 1);
        lx.add({0, 1}, {}, 0, Rational(1));
        SkeletalDerivationReport r = skeletal_derivation_check(g, x0, x1, lx);
        CHECK(r.cocycle_route);
        CHECK(r.agree());
    }
    SUBCASE("random pairs on skeletal fixtures: routes always agree") {
        for (auto& g : {fx::det3(), fx::string_sl2(), fx::aff1a()}) {
            int g0 = g.space.dim0, g1 = g.space.dim1;
            for (int trial = 0; trial < 20; ++trial) {
                RationalMatrix x0(g0, g0), x1(g1, g1);
                for (int i = 0; i < g0; ++i)
                    for (int j = 0; j < g0; ++j) x0.at(i, j) = rand_rat();
                for (int i = 0; i < g1; ++i)
                    for (int j = 0; j < g1; ++j) x1.at(i, j) = rand_rat();
                MultiTensor lx(2, 0, g0, g1, g1);
                randomize(lx);
                SkeletalDerivationReport r = skeletal_derivation_check(g, x0, x1, lx);
                CHECK(r.agree());
            }
        }
    }
    SUBCASE("refuses non-skeletal input") {
        Lie2Algebra g = fx::dfix();
        RationalMatrix x0(1, 1), x1(1, 1);
        MultiTensor lx(2, 0, 1, 1, 1);
        CHECK_THROWS(skeletal_derivation_check(g, x0, x1, lx));
    }
}

TEST_CASE("pullback and value maps") {
    Lie2Module m = adjoint_module(fx::aff1a());
    Cochain c = random_cochain(m, 2);
    GradedMap id = GradedMap::identity(m.algebra.space);
    Cochain back = pullback_args(c, id, 2, 1);
    CochainLayout lay = cochain_space(m, 2);
    CHECK(flatten(back, lay) == flatten(c, lay));
    Cochain doubled = map_values(c, RationalMatrix::identity(2).scaled(Rational(2)),
                                 RationalMatrix::identity(1).scaled(Rational(2)));
    CHECK(flatten(doubled, lay) == vec_scale(Rational(2), flatten(c, lay)));
}
