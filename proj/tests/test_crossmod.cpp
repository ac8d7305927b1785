#include "doctest_main.hpp"

#include "fixtures.hpp"

#include "lie2kit/crossmod.hpp"

#include <random>

using namespace lie2kit;
namespace fx = lie2kit::fixtures;

namespace {

std::mt19937 rng(99);

Rational rand_rat() { return Rational(static_cast<long>(rng() % 5) - 2, 1 + static_cast<long>(rng() % 2)); }

GradedSubspace full_subspace(const Lie2Algebra& g) {
    std::vector<Vec> b0, b1;
    for (int i = 0; i < g.space.dim0; ++i) b0.push_back(basis_vec(g.space.dim0, i));
    for (int i = 0; i < g.space.dim1; ++i) b1.push_back(basis_vec(g.space.dim1, i));
    return GradedSubspace(b0, b1, g.space.dim0, g.space.dim1);
}

CrossedModule identity_cm(const Lie2Algebra& g) { return ideal_crossed_module(g, full_subspace(g)); }

CrossedModule ex39_aff1() {
    Lie2Algebra g = fx::aff1();
    return ideal_crossed_module(g, GradedSubspace({basis_vec(2, 1)}, {}, 2, 0));
}

bool jacobi_of(const MultiTensor& bracket, int dim) {
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j)
            for (int k = j + 1; k < dim; ++k) {
                Vec s = bracket.evaluate({bracket.value({i, j}, {}), basis_vec(dim, k)}, {});
                vec_axpy(s, Rational(1),
                         bracket.evaluate({bracket.value({j, k}, {}), basis_vec(dim, i)}, {}));
                vec_axpy(s, Rational(1),
                         bracket.evaluate({bracket.value({k, i}, {}), basis_vec(dim, j)}, {}));
                if (!vec_is_zero(s)) return false;
            }
    return true;
}

std::vector<std::pair<std::string, CrossedModule>> cm_corpus() {
    std::vector<std::pair<std::string, CrossedModule>> out;
    out.emplace_back("identity(aff1)", identity_cm(fx::aff1()));
    out.emplace_back("identity(det3)", identity_cm(fx::det3()));
    out.emplace_back("identity(aff1a)", identity_cm(fx::aff1a()));
    out.emplace_back("identity(string_sl2)", identity_cm(fx::string_sl2()));
    out.emplace_back("ideal(aff1, span e2)", ex39_aff1());
    out.emplace_back("ideal(heis, center)",
                     ideal_crossed_module(fx::heis(), GradedSubspace({basis_vec(3, 2)}, {}, 3, 0)));
    out.emplace_back("derivation(aff1a)", derivation_crossed_module(fx::aff1a()));
    out.emplace_back("derivation(strict2)", derivation_crossed_module(fx::strict2()));
    return out;
}

}  // namespace

TEST_CASE("crossed product with trivial action is the direct sum") {
    Lie2Algebra g = fx::abelian(1, 1), m = fx::abelian(2, 1);
    DerivAction act = DerivAction::zero_lphi0(trivial_module(g, m.space));
    Lie2Algebra prod = crossed_product(g, m, act);
    CHECK(prod.space.dim0 == 3);
    CHECK(prod.space.dim1 == 2);
    CHECK(check_lie2(prod).ok());
    CHECK(prod.l2_00.is_zero());
}

TEST_CASE("crossed product of g acting on itself by the adjoint action") {
    for (auto& g : {fx::aff1(), fx::aff1a(), fx::det3(), fx::string_sl2()}) {
        CrossedModule cm = identity_cm(g);
        REQUIRE(check_deriv_action(cm.m, cm.action).ok());
        Lie2Algebra prod = crossed_product(cm.g, cm.m, cm.action);
        CHECK(check_lie2(prod).ok());
        std::vector<Vec> mb0, mb1;
        for (int i = 0; i < g.space.dim0; ++i)
            mb0.push_back(basis_vec(prod.space.dim0, g.space.dim0 + i));
        for (int i = 0; i < g.space.dim1; ++i)
            mb1.push_back(basis_vec(prod.space.dim1, g.space.dim1 + i));
        CHECK(is_ideal(prod, GradedSubspace(mb0, mb1, prod.space.dim0, prod.space.dim1)).ok());
    }
}

TEST_CASE("corrupting l_phi0 breaks the crossed product at n = 4 with a g0+3m0 witness") {
    CrossedModule cm = identity_cm(fx::heisa());
    DerivAction bad = cm.action;
    bad.lphi0.add({1, 2}, {0}, 0, Rational(1));
    Lie2Algebra prod = crossed_product(cm.g, cm.m, bad);
    CheckReport r = check_lie2(prod);
    REQUIRE(!r.ok());
    bool found = false;
    for (const auto& f : r.failures) {
        if (f.check != "l-infinity identity n=4") continue;
        int gl = 0, ml = 0;
        for (const auto& [deg, idx] : f.args) {
            if (deg != 0) continue;
            (idx < 3 ? gl : ml) += 1;
        }
        if (gl == 1 && ml == 3) found = true;
    }
    CHECK(found);
}

TEST_CASE("split_crossed_product recovers the action exactly") {
    for (const auto& [name, cm] : cm_corpus()) {
        CAPTURE(name);
        Lie2Algebra prod = crossed_product(cm.g, cm.m, cm.action);
        int g0 = cm.g.space.dim0, g1 = cm.g.space.dim1;
        int m0 = cm.m.space.dim0, m1 = cm.m.space.dim1;
        std::vector<Vec> g0b, g1b, m0b, m1b;
        for (int i = 0; i < g0; ++i) g0b.push_back(basis_vec(g0 + m0, i));
        for (int i = 0; i < m0; ++i) m0b.push_back(basis_vec(g0 + m0, g0 + i));
        for (int i = 0; i < g1; ++i) g1b.push_back(basis_vec(g1 + m1, i));
        for (int i = 0; i < m1; ++i) m1b.push_back(basis_vec(g1 + m1, g1 + i));
        SplitResult s = split_crossed_product(prod, g0b, g1b, m0b, m1b);
        CHECK(s.action.base.act00 == cm.action.base.act00);
        CHECK(s.action.base.act01 == cm.action.base.act01);
        CHECK(s.action.base.act10 == cm.action.base.act10);
        CHECK(s.action.base.act2 == cm.action.base.act2);
        CHECK(s.action.lphi0 == cm.action.lphi0);
        CHECK(s.g.l2_00 == cm.g.l2_00);
        CHECK(s.m.l2_00 == cm.m.l2_00);
        CHECK(s.m.l3 == cm.m.l3);
        Lie2Algebra again = crossed_product(s.g, s.m, s.action);
        CHECK(again.l2_00 == prod.l2_00);
        CHECK(again.l2_01 == prod.l2_01);
        CHECK(again.l3 == prod.l3);
    }
}

TEST_CASE("split of a shuffled basis still yields a valid action") {
    // the same product split along a different (mixed) decomposition
    CrossedModule cm = ex39_aff1();
    Lie2Algebra prod = crossed_product(cm.g, cm.m, cm.action);  // dims (3, 0)
    // subalgebra span{e1, e2 + m}, ideal span{m}: still a direct sum
    Vec u = basis_vec(3, 0);
    Vec w = vec_add(basis_vec(3, 1), basis_vec(3, 2));
    SplitResult s = split_crossed_product(prod, {u, w}, {}, {basis_vec(3, 2)}, {});
    CHECK(check_deriv_action(s.m, s.action).ok());
    Lie2Algebra again = crossed_product(s.g, s.m, s.action);
    CHECK(check_lie2(again).ok());
}

TEST_CASE("split refuses bad decompositions") {
    Lie2Algebra g = fx::aff1();
    CHECK_THROWS(split_crossed_product(g, {basis_vec(2, 1)}, {}, {basis_vec(2, 0)}, {}));
}

TEST_CASE("check_crossed_module on the corpus") {
    for (const auto& [name, cm] : cm_corpus()) {
        CAPTURE(name);
        CheckReport r = check_crossed_module(cm);
        if (!r.ok()) { CAPTURE(r.summary()); }
        CHECK(r.ok());
    }
}

TEST_CASE("the ideal crossed module is strong; the derivation one is not") {
    CrossedModule ideal = ex39_aff1();
    CHECK(ideal.strong());
    CHECK(ideal.phi2.is_zero());
    CrossedModule der = derivation_crossed_module(fx::aff1a());
    CHECK(!der.strong());
}

TEST_CASE("zeroing sigma in the derivation crossed module breaks it") {
    CrossedModule der = derivation_crossed_module(fx::aff1a());
    REQUIRE(!der.sigma.is_zero());
    CrossedModule bad = der;
    bad.sigma = MultiTensor(1, 1, der.g.space.dim0, der.m.space.dim0, der.g.space.dim1);
    bad.phi2 = MultiTensor(2, 0, der.m.space.dim0, der.m.space.dim1, der.g.space.dim1);
    CheckReport r = check_crossed_module(bad);
    CHECK(!r.ok());
}

TEST_CASE("axiom mutations are caught exactly at the named axiom") {
    SUBCASE("(i): scale the m bracket") {
        CrossedModule cm = identity_cm(fx::aff1());
        cm.m.l2_00 = MultiTensor(2, 0, 2, 0, 2);
        cm.m.l2_00.add({0, 1}, {}, 1, Rational(2));
        CheckReport r = check_crossed_module(cm);
        REQUIRE(!r.ok());
        CHECK(r.failures.front().check == "axiom (i)");
    }
    SUBCASE("(ii): perturb the m l3") {
        CrossedModule cm = identity_cm(fx::det3());
        cm.m.l3.add({0, 1, 2}, {}, 0, Rational(1));
        CheckReport r = check_crossed_module(cm);
        REQUIRE(!r.ok());
        CHECK(r.failures.front().check == "axiom (ii)");
    }
    SUBCASE("(iii): perturb l_phi0") {
        CrossedModule cm = identity_cm(fx::det3());
        cm.action.lphi0.add({0, 1}, {0}, 0, Rational(1));
        CheckReport r = check_crossed_module(cm);
        REQUIRE(!r.ok());
        CHECK(r.failures.front().check == "axiom (iii)");
    }
    SUBCASE("(iv): perturb phi2") {
        CrossedModule cm = identity_cm(fx::det3());
        cm.phi2.add({0, 1}, {}, 0, Rational(1));
        CheckReport r = check_crossed_module(cm);
        REQUIRE(!r.ok());
        CHECK(r.failures.front().check == "axiom (iv)");
        for (const auto& f : r.failures) CHECK(f.check == "axiom (iv)");
    }
}

TEST_CASE("build_from_data") {
    SUBCASE("trivial input produces the trivial crossed module") {
        Lie2Algebra g = fx::abelian(1, 1);
        Lie2Module mod = trivial_module(g, TwoTermSpace(1, 1));
        GradedMap phi = GradedMap::zero(mod.space, g.space);
        MultiTensor sigma(1, 1, 1, 1, 1);
        CrossedModule cm = build_from_data(g, mod, phi, sigma);
        CHECK(check_crossed_module(cm).ok());
        CHECK(cm.m.l2_00.is_zero());
    }
    SUBCASE("rebuilding the ideal crossed module from its module data") {
        CrossedModule ideal = ex39_aff1();
        CrossedModule again = build_from_data(ideal.g, ideal.action.base, ideal.phi, ideal.sigma);
        CHECK(again.m.l2_00 == ideal.m.l2_00);
        CHECK(again.m.l2_01 == ideal.m.l2_01);
        CHECK(again.m.l3 == ideal.m.l3);
        CHECK(again.action.lphi0 == ideal.action.lphi0);
        CHECK(again.phi2 == ideal.phi2);
        CHECK(check_crossed_module(again).ok());
    }
    SUBCASE("rebuilding each corpus member reproduces its structure tensors") {
        for (const auto& [name, cm] : cm_corpus()) {
            CAPTURE(name);
            CrossedModule again = build_from_data(cm.g, cm.action.base, cm.phi, cm.sigma);
            CHECK(again.m.l2_00 == cm.m.l2_00);
            CHECK(again.m.l2_01 == cm.m.l2_01);
            CHECK(again.m.l3 == cm.m.l3);
            CHECK(again.action.lphi0 == cm.action.lphi0);
            CHECK(again.phi2 == cm.phi2);
        }
    }
    SUBCASE("condition (4) violations are refused by name") {
        Lie2Algebra g = fx::abelian(1, 1);
        Lie2Module mod = trivial_module(g, TwoTermSpace(2, 0));
        RationalMatrix phi0(1, 2);
        phi0.at(0, 0) = Rational(1);  // alpha1 -> x, alpha2 -> 0
        GradedMap phi(phi0, RationalMatrix(1, 0));
        MultiTensor sigma(1, 1, 1, 2, 1);
        sigma.add({0}, {1}, 0, Rational(1));  // sigma(x, alpha2) = a
        CHECK_THROWS_WITH_AS(build_from_data(g, mod, phi, sigma),
                             doctest::Contains("condition (4)"), std::runtime_error);
    }
}

TEST_CASE("mapping cones are strict Lie 3-algebras") {
    SUBCASE("trivial crossed module gives the zero structure") {
        Lie2Algebra g = fx::abelian(1, 1);
        Lie2Module mod = trivial_module(g, TwoTermSpace(1, 1));
        CrossedModule cm = build_from_data(g, mod, GradedMap::zero(mod.space, g.space),
                                           MultiTensor(1, 1, 1, 1, 1));
        Lie3Algebra t = mapping_cone(cm);
        CHECK(check_lie3_strict(t).ok());
        CHECK(t.l2_00.is_zero());
        CHECK(t.l3_001.is_zero());
    }
    SUBCASE("the whole corpus") {
        for (const auto& [name, cm] : cm_corpus()) {
            CAPTURE(name);
            CHECK(check_lie3_strict(mapping_cone(cm)).ok());
        }
    }
    SUBCASE("derivation crossed module: l^3 vanishes by construction") {
        Lie3Algebra t = mapping_cone(derivation_crossed_module(fx::aff1a()));
        CHECK(t.l3_001.is_zero());
        CHECK(check_lie3_strict(t).ok());
    }
    SUBCASE("ideal crossed module of det3 has nonzero l^3") {
        Lie3Algebra t = mapping_cone(identity_cm(fx::det3()));
        CHECK(!t.l3_001.is_zero());
        CHECK(check_lie3_strict(t).ok());
    }
    SUBCASE("single-constant mutations are detected with a witness") {
        // Not every single-entry perturbation leaves the variety of valid
        // structures, so scan entries and require that at least one mutation
        // per fixture is caught, always with a witness tuple.
        for (const auto& [name, cm] : cm_corpus()) {
            CAPTURE(name);
            Lie3Algebra t = mapping_cone(cm);
            int detected = 0, tried = 0;
            auto try_mutations = [&](MultiTensor Lie3Algebra::* member) {
                for (int col = 0; col < (t.*member).cols() && tried < 12; ++col)
                    for (int row = 0; row < (t.*member).target_dim() && tried < 12; ++row) {
                        Lie3Algebra bad = t;
                        (bad.*member).coeffs().at(row, col) += Rational(1);
                        ++tried;
                        CheckReport r = check_lie3_strict(bad);
                        if (!r.ok()) {
                            ++detected;
                            CHECK(!r.failures.front().args.empty());
                        }
                    }
            };
            try_mutations(&Lie3Algebra::l2_01);
            try_mutations(&Lie3Algebra::l2_00);
            try_mutations(&Lie3Algebra::l2_02);
            try_mutations(&Lie3Algebra::l2_11);
            CHECK(detected >= 1);
        }
    }
}

TEST_CASE("Der(g): strict Lie 2-algebra, Der0 closed under the bracket") {
    for (auto& g : {fx::aff1(), fx::aff1a(), fx::det3(), fx::strict2()}) {
        DerAlgebra d = der_algebra(g);
        CHECK(check_lie2(d.alg).ok());
        CHECK(d.alg.l3.is_zero());
        MultiTensor zero_sigma(1, 1, g.space.dim0, g.space.dim0, g.space.dim1);
        GradedMap id = GradedMap::identity(g.space);
        for (size_t i = 0; i < d.der0_flat.size(); ++i)
            for (size_t j = i + 1; j < d.der0_flat.size(); ++j) {
                DerPair a = der_unflatten(d.adjoint, d.der0_flat[i]);
                DerPair b = der_unflatten(d.adjoint, d.der0_flat[j]);
                DerPair br = c1_bracket(id, zero_sigma, a, b);
                CHECK(one_cocycle_residuals(d.adjoint, br.x0, br.x1, br.lx).ok());
            }
    }
}

TEST_CASE("Der(g,m) for crossed modules") {
    for (const auto& [name, cm] : cm_corpus()) {
        CAPTURE(name);
        DerComplexResult d = der_complex(cm);
        CHECK(check_lie2(d.alg).ok());
        CHECK(d.alg.l3.is_zero());
        const Lie2Module& module = cm.action.base;
        for (size_t i = 0; i < d.der0_flat.size(); ++i)
            for (size_t j = i + 1; j < d.der0_flat.size(); ++j) {
                DerPair a = der_unflatten(module, d.der0_flat[i]);
                DerPair b = der_unflatten(module, d.der0_flat[j]);
                DerPair br = c1_bracket(cm.phi, cm.sigma, a, b);
                CHECK(one_cocycle_residuals(module, br.x0, br.x1, br.lx).ok());
            }
    }
}

TEST_CASE("Der(g,m) of the identity crossed module recovers Der(g)") {
    for (auto& g : {fx::aff1(), fx::aff1a(), fx::det3()}) {
        DerAlgebra direct = der_algebra(g);
        DerComplexResult via_cm = der_complex(identity_cm(g));
        CHECK(direct.der0_flat == via_cm.der0_flat);
        CHECK(direct.alg.space.diff == via_cm.alg.space.diff);
        CHECK(direct.alg.l2_00 == via_cm.alg.l2_00);
        CHECK(direct.alg.l2_01 == via_cm.alg.l2_01);
    }
}

TEST_CASE("-D is a graded derivation of the Der(g,m) bracket (explicit residuals)") {
    for (const auto& [name, cm] : cm_corpus()) {
        CAPTURE(name);
        const Lie2Module& module = cm.action.base;
        DerComplexResult d = der_complex(cm);
        int g0 = cm.g.space.dim0, m1 = cm.m.space.dim1;
        for (const auto& flat : d.der0_flat) {
            DerPair a = der_unflatten(module, flat);
            for (int j = 0; j < g0 * m1; ++j) {
                RationalMatrix theta(m1, g0);
                theta.at(j / g0, j % g0) = Rational(1);
                RationalMatrix mixed = c1_mixed_bracket(cm.phi, a, theta);
                Vec lhs = der_flatten(module, der_minus_d(module, mixed));
                Vec rhs = der_flatten(
                    module, c1_bracket(cm.phi, cm.sigma, a, der_minus_d(module, theta)));
                CHECK(lhs == rhs);
            }
        }
        for (int j = 0; j < g0 * m1; ++j)
            for (int k = 0; k < g0 * m1; ++k) {
                RationalMatrix tj(m1, g0), tk(m1, g0);
                tj.at(j / g0, j % g0) = Rational(1);
                tk.at(k / g0, k % g0) = Rational(1);
                RationalMatrix lhs = c1_mixed_bracket(cm.phi, der_minus_d(module, tj), tk);
                RationalMatrix rhs = -c1_mixed_bracket(cm.phi, der_minus_d(module, tk), tj);
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("C1 Lie algebra") {
    SUBCASE("sigma = 0, phi = 0: abelian") {
        TwoTermSpace gs(2, 1), vs(1, 1);
        GradedMap phi(RationalMatrix::zero(2, 1), RationalMatrix::zero(1, 1));
        MultiTensor sigma(1, 1, 2, 1, 1);
        C1LieAlgebra c = c1_lie_algebra(gs, vs, phi, sigma);
        CHECK(c.bracket.is_zero());
    }
    SUBCASE("sigma = 0 with nonzero phi: Jacobi holds") {
        TwoTermSpace gs(2, 1), vs(2, 1);
        RationalMatrix p0(2, 2), p1(1, 1);
        p0.at(0, 0) = Rational(1);
        p0.at(1, 1) = Rational(2);
        p1.at(0, 0) = Rational(1);
        C1LieAlgebra c = c1_lie_algebra(gs, vs, GradedMap(p0, p1), MultiTensor(1, 1, 2, 2, 1));
        CHECK(jacobi_of(c.bracket, c.dim));
    }
    SUBCASE("crossed-module data: Jacobi and the omega cocycle identity") {
        for (const auto& [name, cm] : cm_corpus()) {
            CAPTURE(name);
            C1LieAlgebra c = c1_lie_algebra(cm.g.space, cm.m.space, cm.phi, cm.sigma);
            CHECK(jacobi_of(c.bracket, c.dim));
            CHECK(omega_sigma_cocycle_check(cm.g.space, cm.m.space, cm.phi, cm.sigma).ok());
        }
    }
    SUBCASE("hypothesis violations are refused") {
        CrossedModule der = derivation_crossed_module(fx::aff1a());
        MultiTensor bad = der.sigma;
        bad.add({0}, {0}, 0, Rational(1));
        bool refused = false;
        try {
            c1_lie_algebra(der.g.space, der.m.space, der.phi, bad);
        } catch (const std::runtime_error&) {
            refused = true;
        }
        // only refuses if the perturbation actually breaks the hypothesis
        CHECK((refused || omega_sigma_cocycle_check(der.g.space, der.m.space, der.phi, bad).ok()));
    }
}

TEST_CASE("H1 of crossed modules") {
    SUBCASE("abelian crossed module: full cocycle space, abelian bracket") {
        Lie2Algebra g = fx::abelian(1, 1);
        Lie2Module mod = trivial_module(g, TwoTermSpace(1, 1));
        CrossedModule cm = build_from_data(g, mod, GradedMap::zero(mod.space, g.space),
                                           MultiTensor(1, 1, 1, 1, 1));
        H1Result h = h1_lie_algebra(cm);
        CHECK(h.inn_closed);
        CHECK(h.bracket.is_zero());
    }
    SUBCASE("Inn0 is an ideal in Der0 on the corpus") {
        for (const auto& [name, cm] : cm_corpus()) {
            CAPTURE(name);
            H1Result h = h1_lie_algebra(cm);
            CHECK(h.inn_closed);
        }
    }
    SUBCASE("the displayed identity for {X + lX, -D alpha}") {
        for (const auto& [name, cm] : cm_corpus()) {
            CAPTURE(name);
            const Lie2Module& module = cm.action.base;
            int g0 = cm.g.space.dim0, m0 = cm.m.space.dim0;
            std::vector<Vec> der0 = kernel_basis(coboundary(module, 1));
            for (const auto& flat : der0)
                for (int al = 0; al < m0; ++al) {
                    DerPair x = der_unflatten(module, flat);
                    Vec u = basis_vec(m0, al);
                    RationalMatrix zero_theta(cm.m.space.dim1, g0);
                    Cochain dal = one_coboundary(module, u, zero_theta);
                    DerPair mdal = der_unflatten(
                        module, vec_scale(Rational(-1), flatten(dal, cochain_space(module, 1))));
                    Vec lhs = der_flatten(module, c1_bracket(cm.phi, cm.sigma, x, mdal));
                    Vec u2 = x.x0.apply(cm.phi.m0.col(al));
                    RationalMatrix theta2(cm.m.space.dim1, g0);
                    for (int xx = 0; xx < g0; ++xx) {
                        Vec t = x.lx.evaluate({cm.phi.m0.col(al), basis_vec(g0, xx)}, {});
                        vec_axpy(t, Rational(-1), x.x1.apply(cm.sigma.value({xx}, {al})));
                        for (int r = 0; r < cm.m.space.dim1; ++r) theta2.at(r, xx) = t[r];
                    }
                    Vec rhs = vec_scale(
                        Rational(-1),
                        flatten(one_coboundary(module, u2, theta2), cochain_space(module, 1)));
                    CHECK(lhs == rhs);
                }
        }
    }
    SUBCASE("induced bracket is independent of the representative choice") {
        for (auto base : {std::string("det3"), std::string("aff1a")}) {
            Lie2Algebra g = base == "det3" ? fx::det3() : fx::aff1a();
            CrossedModule cm = identity_cm(g);
            const Lie2Module& module = cm.action.base;
            CohomologyResult h = cohomology(module, 1);
            H1Result res = h1_lie_algebra(cm);
            if (res.betti < 2) continue;
            RationalMatrix d0 = coboundary(module, 0);
            for (int i = 0; i < res.betti; ++i)
                for (int j = i + 1; j < res.betti; ++j) {
                    Vec ri = res.reps[i], rj = res.reps[j];
                    Vec shift_i = vec_zero(d0.cols()), shift_j = vec_zero(d0.cols());
                    for (auto& x : shift_i) x = rand_rat();
                    for (auto& x : shift_j) x = rand_rat();
                    vec_axpy(ri, Rational(1), d0.apply(shift_i));
                    vec_axpy(rj, Rational(1), d0.apply(shift_j));
                    DerPair a = der_unflatten(module, ri);
                    DerPair b = der_unflatten(module, rj);
                    Vec br = der_flatten(module, c1_bracket(cm.phi, cm.sigma, a, b));
                    auto cls = class_coordinates(h, br);
                    REQUIRE(cls.has_value());
                    Vec direct = res.bracket.value({i, j}, {});
                    CHECK(*cls == direct);
                }
        }
    }
}

TEST_CASE("derivation crossed module details") {
    SUBCASE("abelian algebra: passes degenerately") {
        CrossedModule cm = derivation_crossed_module(fx::abelian(2, 1));
        CHECK(check_crossed_module(cm).ok());
    }
    SUBCASE("strict fixture: sigma nonzero on some derivation") {
        CrossedModule cm = derivation_crossed_module(fx::aff1a());
        CHECK(!cm.sigma.is_zero());
    }
}

TEST_CASE("ideal crossed module details") {
    SUBCASE("full ideal: the identity crossed module") {
        CrossedModule cm = identity_cm(fx::aff1());
        CHECK(cm.strong());
        CHECK(cm.phi.m0 == RationalMatrix::identity(2));
    }
    SUBCASE("zero ideal: degenerate m = 0") {
        CrossedModule cm = ideal_crossed_module(fx::aff1(), GradedSubspace({}, {}, 2, 0));
        CHECK(cm.m.space.dim0 == 0);
        CHECK(check_crossed_module(cm).ok());
    }
    SUBCASE("non-ideals are refused") {
        CHECK_THROWS(ideal_crossed_module(fx::aff1(), GradedSubspace({basis_vec(2, 0)}, {}, 2, 0)));
    }
}

TEST_CASE("four-term exact sequence") {
    SUBCASE("identity crossed module: V = 0, h = 0") {
        FourTermData f = four_term_sequence(identity_cm(fx::aff1()));
        CHECK(f.v.dim0 == 0);
        CHECK(f.h.space.dim0 == 0);
        CHECK(f.exactness.ok());
    }
    SUBCASE("ideal crossed module aff1 over span{e2}") {
        FourTermData f = four_term_sequence(ex39_aff1());
        CHECK(f.v.dim0 == 0);
        CHECK(f.h.space.dim0 == 1);
        CHECK(f.exactness.ok());
        CHECK(check_action(f.action).ok());
    }
    SUBCASE("two sections induce identical action tensors") {
        CrossedModule cm = ex39_aff1();
        FourTermData f = four_term_sequence(cm);
        RationalMatrix t0(cm.m.space.dim0, f.h.space.dim0);
        for (int i = 0; i < t0.rows(); ++i)
            for (int j = 0; j < t0.cols(); ++j) t0.at(i, j) = rand_rat();
        RationalMatrix t1(cm.m.space.dim1, f.h.space.dim1);
        RationalMatrix s0b = f.s0 + cm.phi.m0 * t0;
        RationalMatrix s1b = f.s1 + cm.phi.m1 * t1;
        Lie2Module other = induced_action_with_section(cm, f, s0b, s1b);
        CHECK(other.act00 == f.action.act00);
        CHECK(other.act01 == f.action.act01);
        CHECK(other.act10 == f.action.act10);
        CHECK(other.act2 == f.action.act2);
    }
    SUBCASE("refusal when sigma escapes Img phi1") {
        CrossedModule der = derivation_crossed_module(fx::aff1a());
        CHECK_THROWS_WITH_AS(four_term_sequence(der), doctest::Contains("Img sigma"),
                             std::runtime_error);
    }
}
