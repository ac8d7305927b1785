// Regenerates the shipped workspace fixtures. Run from the repository root:
//   build/tools/lie2kit-gen-fixtures fixtures
#include "lie2kit/workspace.hpp"

#include <iostream>

using namespace lie2kit;
namespace ws = lie2kit::workspace;

namespace {

Lie2Algebra aff1() {
    Lie2Algebra g(TwoTermSpace(2, 0));
    g.l2_00.add({0, 1}, {}, 1, Rational(1));
    return g;
}

Lie2Algebra sl2() {
    Lie2Algebra g(TwoTermSpace(3, 0));
    g.l2_00.add({0, 1}, {}, 2, Rational(1));
    g.l2_00.add({2, 0}, {}, 0, Rational(2));
    g.l2_00.add({2, 1}, {}, 1, Rational(-2));
    return g;
}

Lie2Algebra heis() {
    Lie2Algebra g(TwoTermSpace(3, 0));
    g.l2_00.add({0, 1}, {}, 2, Rational(1));
    return g;
}

Lie2Algebra aff1a() {
    Lie2Algebra g(TwoTermSpace(2, 1));
    g.l2_00.add({0, 1}, {}, 1, Rational(1));
    g.l2_01.add({0}, {0}, 0, Rational(1));
    return g;
}

ws::json with_trivial_module(const Lie2Algebra& g, const std::string& name, int v0, int v1) {
    ws::json w;
    w["algebras"][name] = ws::algebra_to_json(g);
    w["modules"][name + "_trivial"] =
        ws::module_to_json(trivial_module(g, TwoTermSpace(v0, v1)), name);
    return w;
}

ws::json ex39_file() {
    Lie2Algebra g = aff1();
    CrossedModule cm = ideal_crossed_module(g, GradedSubspace({basis_vec(2, 1)}, {}, 2, 0));
    ws::json w;
    w["algebras"]["aff1"] = ws::algebra_to_json(cm.g);
    w["algebras"]["aff1_span_e2"] = ws::algebra_to_json(cm.m);
    w["modules"]["ex39_action"] = ws::module_to_json(cm.action.base, "aff1");
    w["crossed_modules"]["ex39"] =
        ws::crossed_module_to_json(cm, "aff1_span_e2", "aff1", "ex39_action");
    return w;
}

ws::json ex38_file() {
    Lie2Algebra g = aff1a();
    CrossedModule cm = derivation_crossed_module(g);
    ws::json w;
    w["algebras"]["aff1a"] = ws::algebra_to_json(cm.m);
    w["algebras"]["aff1a_der"] = ws::algebra_to_json(cm.g);
    w["modules"]["ex38_action"] = ws::module_to_json(cm.action.base, "aff1a_der");
    w["crossed_modules"]["ex38"] =
        ws::crossed_module_to_json(cm, "aff1a", "aff1a_der", "ex38_action");
    return w;
}

// h = (Qx <- Qe, zero structure); V = Q trivial; I = Q^2 with x |> w = v;
// Q = Q trivial; lambda_0(e) = qbar. Splice setup, the induced abelian
// extension hQ, and the nontrivial extension datum on it for mu round trips.
ws::json splice_file() {
    Lie2Algebra h(TwoTermSpace(1, 1));
    Lie2Module v = trivial_module(h, TwoTermSpace(1, 0));
    Lie2Module i = trivial_module(h, TwoTermSpace(2, 0));
    i.act00.add({0}, {1}, 0, Rational(1));
    Lie2Module q = trivial_module(h, TwoTermSpace(1, 0));
    Cochain lambda(2, 1, 1, 1, 0);
    MultiTensor l0(0, 1, 1, 1, 1);
    l0.add({}, {0}, 0, Rational(1));
    lambda.set(0, 1, 0, std::move(l0));
    RationalMatrix p0(2, 1);
    p0.at(0, 0) = Rational(1);
    RationalMatrix r0(1, 2);
    r0.at(0, 1) = Rational(1);
    ModuleSES ses{v, i, q, GradedMap(p0, RationalMatrix(0, 0)),
                  GradedMap(r0, RationalMatrix(0, 0))};

    ws::json w;
    w["algebras"]["h"] = ws::algebra_to_json(h);
    w["modules"]["V"] = ws::module_to_json(v, "h");
    w["modules"]["I"] = ws::module_to_json(i, "h");
    w["modules"]["Q"] = ws::module_to_json(q, "h");
    w["cochains"]["lambda"] = ws::cochain_to_json(lambda, "h", "Q");
    ws::json sp;
    sp["h"] = "h";
    sp["v"] = "V";
    sp["i"] = "I";
    sp["q"] = "Q";
    sp["p_m0"] = ws::matrix_to_json(p0);
    sp["p_m1"] = ws::matrix_to_json(RationalMatrix(0, 0));
    sp["q_m0"] = ws::matrix_to_json(r0);
    sp["q_m1"] = ws::matrix_to_json(RationalMatrix(0, 0));
    sp["lambda"] = "lambda";
    w["splices"]["splice"] = sp;

    // shipped crossed module of the splice, so that mu runs directly
    CrossedModule cm = splice(ses, lambda);
    w["algebras"]["splice_m"] = ws::algebra_to_json(cm.m);
    w["algebras"]["hQ"] = ws::algebra_to_json(cm.g);
    w["modules"]["splice_action"] = ws::module_to_json(cm.action.base, "hQ");
    w["crossed_modules"]["splice_cm"] =
        ws::crossed_module_to_json(cm, "splice_m", "hQ", "splice_action");

    // extension datum on hQ: k = i(Q), trivial coefficients V,
    // lambda'_1(x, qbar) = v; plus gauge inputs A and R
    Lie2Module vg = trivial_module(cm.g, TwoTermSpace(1, 0));
    w["modules"]["V_over_hQ"] = ws::module_to_json(vg, "hQ");
    Cochain lam2(2, 2, 1, 1, 0);
    MultiTensor l1(2, 0, 2, 1, 1);
    l1.add({0, 1}, {}, 0, Rational(1));
    lam2.set(2, 0, 0, std::move(l1));
    w["cochains"]["lambda_prime"] = ws::cochain_to_json(lam2, "hQ", "V_over_hQ");
    Cochain a(1, 2, 1, 1, 0);
    MultiTensor a0(1, 0, 2, 1, 1);
    a0.add({1}, {}, 0, Rational(2));
    a.set(1, 0, 0, std::move(a0));
    w["cochains"]["gauge_A"] = ws::cochain_to_json(a, "hQ", "V_over_hQ");
    ws::json gs;
    gs["algebra"] = "hQ";
    gs["ideal0"] = ws::json::array({ws::json::array({"0", "1"})});
    gs["ideal1"] = ws::json::array();
    gs["module"] = "V_over_hQ";
    gs["lambda"] = "lambda_prime";
    gs["a"] = "gauge_A";
    ws::json rblock;
    rblock["p"] = 0;
    rblock["q"] = 1;
    rblock["s"] = 0;
    rblock["entries"] = ws::json::array({ws::json::array({ws::json::array({0}), 0, "1"})});
    gs["r"] = ws::json::array({rblock});
    w["gauge_setups"]["gauge"] = gs;
    return w;
}

ws::json mutated_file() {
    // sl2 with one structure constant corrupted: fails the n = 3 identity
    Lie2Algebra g(TwoTermSpace(3, 0));
    g.l2_00.add({0, 1}, {}, 2, Rational(1));
    g.l2_00.add({2, 0}, {}, 0, Rational(3));
    g.l2_00.add({2, 1}, {}, 1, Rational(-2));
    ws::json w;
    w["algebras"]["sl2_mutated"] = ws::algebra_to_json(g);
    return w;
}

}  // namespace

int main(int argc, char** argv) {
    std::string dir = argc > 1 ? argv[1] : "fixtures";
    ws::write_file(dir + "/aff1.json", with_trivial_module(aff1(), "aff1", 1, 0));
    ws::write_file(dir + "/sl2.json", with_trivial_module(sl2(), "sl2", 1, 0));
    ws::write_file(dir + "/heis.json", with_trivial_module(heis(), "heis", 1, 0));
    ws::write_file(dir + "/abelian.json",
                   with_trivial_module(Lie2Algebra(TwoTermSpace(2, 2)), "abelian22", 1, 1));
    ws::write_file(dir + "/ex38.json", ex38_file());
    ws::write_file(dir + "/ex39.json", ex39_file());
    ws::write_file(dir + "/splice.json", splice_file());
    ws::write_file(dir + "/mutated.json", mutated_file());
    // malformed on purpose: the l3 field is missing
    ws::json bad;
    bad["algebras"]["broken"]["space"] = ws::space_to_json(TwoTermSpace(1, 0));
    bad["algebras"]["broken"]["l2_00"] = ws::json::array();
    bad["algebras"]["broken"]["l2_01"] = ws::json::array();
    ws::write_file(dir + "/malformed.json", bad);
    std::cout << "fixtures written to " << dir << "\n";
    return 0;
}
