#include "lie2kit/classify.hpp"

#include <benchmark/benchmark.h>

using namespace lie2kit;

namespace {

Lie2Algebra sl2() {
    Lie2Algebra g(TwoTermSpace(3, 0));
    g.l2_00.add({0, 1}, {}, 2, Rational(1));
    g.l2_00.add({2, 0}, {}, 0, Rational(2));
    g.l2_00.add({2, 1}, {}, 1, Rational(-2));
    return g;
}

Lie2Algebra det3() {
    Lie2Algebra g(TwoTermSpace(3, 1));
    g.l3.add({0, 1, 2}, {}, 0, Rational(1));
    return g;
}

GradedSubspace full(const Lie2Algebra& g) {
    std::vector<Vec> b0, b1;
    for (int i = 0; i < g.space.dim0; ++i) b0.push_back(basis_vec(g.space.dim0, i));
    for (int i = 0; i < g.space.dim1; ++i) b1.push_back(basis_vec(g.space.dim1, i));
    return GradedSubspace(b0, b1, g.space.dim0, g.space.dim1);
}

void bm_coboundary_d_squared(benchmark::State& state) {
    Lie2Module m = adjoint_module(det3());
    for (auto _ : state) {
        for (int n = -1; n <= 3; ++n) {
            RationalMatrix dd = coboundary(m, n + 1) * coboundary(m, n);
            benchmark::DoNotOptimize(dd.is_zero());
        }
    }
}
BENCHMARK(bm_coboundary_d_squared);

void bm_check_lie2_crossed_product(benchmark::State& state) {
    CrossedModule cm = ideal_crossed_module(det3(), full(det3()));
    Lie2Algebra prod = crossed_product(cm.g, cm.m, cm.action);
    for (auto _ : state) {
        CheckReport r = check_lie2(prod);
        benchmark::DoNotOptimize(r.ok());
    }
}
BENCHMARK(bm_check_lie2_crossed_product);

void bm_mapping_cone_check(benchmark::State& state) {
    CrossedModule cm = ideal_crossed_module(det3(), full(det3()));
    Lie3Algebra t = mapping_cone(cm);
    for (auto _ : state) {
        CheckReport r = check_lie3_strict(t);
        benchmark::DoNotOptimize(r.ok());
    }
}
BENCHMARK(bm_mapping_cone_check);

void bm_cohomology_degree3(benchmark::State& state) {
    Lie2Module m = trivial_module(sl2(), TwoTermSpace(1, 0));
    for (auto _ : state) {
        CohomologyResult h = cohomology(m, 3);
        benchmark::DoNotOptimize(h.betti);
    }
}
BENCHMARK(bm_cohomology_degree3);

void bm_der_complex(benchmark::State& state) {
    CrossedModule cm = ideal_crossed_module(det3(), full(det3()));
    for (auto _ : state) {
        DerComplexResult d = der_complex(cm);
        benchmark::DoNotOptimize(d.alg.space.dim0);
    }
}
BENCHMARK(bm_der_complex);

void bm_mu_on_splice(benchmark::State& state) {
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
    CrossedModule cm = splice(ses, lambda);
    for (auto _ : state) {
        MuResult m = mu(cm);
        benchmark::DoNotOptimize(m.class_id.size());
    }
}
BENCHMARK(bm_mu_on_splice);

}  // namespace

BENCHMARK_MAIN();
