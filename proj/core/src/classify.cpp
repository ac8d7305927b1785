#include "lie2kit/classify.hpp"

#include <algorithm>
#include <sstream>

namespace lie2kit {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

void fill_tensor(MultiTensor& t, const std::vector<int>& a, const std::vector<int>& s,
                 const Vec& coords, int offset = 0) {
    for (int k = 0; k < static_cast<int>(coords.size()); ++k)
        if (!coords[k].is_zero()) t.add(a, s, offset + k, coords[k]);
}

}  // namespace

Cochain cochain_into_subspace(const Cochain& c, const Subspace& v0, const Subspace& v1) {
    Cochain out(c.degree(), c.g0(), c.g1(), v0.dim(), v1.dim());
    for (const auto& [k, blk] : c.blocks()) {
        const Subspace& v = k.s == 0 ? v0 : v1;
        MultiTensor nb(k.p, k.q, c.g0(), c.g1(), v.dim());
        for (int col = 0; col < blk.cols(); ++col) {
            auto co = v.coords(blk.coeffs().col(col));
            if (!co) throw std::runtime_error("cochain_into_subspace: value escapes the subspace");
            for (int t = 0; t < v.dim(); ++t) nb.coeffs().at(t, col) = (*co)[t];
        }
        out.set(k.p, k.q, k.s, std::move(nb));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Lambda condition and epsilon_lambda
// ---------------------------------------------------------------------------

LambdaContext lambda_context(const ExtensionDatum& e) {
    CheckReport ideal = is_ideal(e.g, e.k);
    require(ideal.ok(), "lambda_context: k is not an ideal: " + ideal.summary());
    require(e.v.algebra.space.dim0 == e.g.space.dim0 && e.v.algebra.space.dim1 == e.g.space.dim1,
            "lambda_context: module is not over g");
    int g0 = e.g.space.dim0, g1 = e.g.space.dim1;
    int v0 = e.v.space.dim0, v1 = e.v.space.dim1;
    for (const auto& kb : e.k.s0.basis()) {
        for (int u = 0; u < v0; ++u)
            require(vec_is_zero(e.v.act00.evaluate({kb}, {basis_vec(v0, u)})),
                    "lambda_context: k does not act trivially on V0");
        for (int u = 0; u < v1; ++u)
            require(vec_is_zero(e.v.act01.evaluate({kb}, {basis_vec(v1, u)})),
                    "lambda_context: k does not act trivially on V1");
        for (int x = 0; x < g0; ++x)
            for (int u = 0; u < v0; ++u)
                require(vec_is_zero(e.v.act2.evaluate({kb, basis_vec(g0, x)}, {basis_vec(v0, u)})),
                        "lambda_context: act2 does not kill k");
    }
    for (const auto& kb : e.k.s1.basis())
        for (int u = 0; u < v0; ++u)
            require(vec_is_zero(e.v.act10.evaluate({kb}, {basis_vec(v0, u)})),
                    "lambda_context: k1 does not act trivially");
    LambdaContext ctx;
    ctx.quo = quotient(e.g, e.k);
    int h0 = ctx.quo.quo.space.dim0, h1 = ctx.quo.quo.space.dim1;
    Lie2Module hv(ctx.quo.quo, e.v.space);
    for (int x = 0; x < h0; ++x) {
        for (int u = 0; u < v0; ++u)
            fill_tensor(hv.act00, {x}, {u},
                        e.v.act00.evaluate({ctx.quo.comp0[x]}, {basis_vec(v0, u)}));
        for (int u = 0; u < v1; ++u)
            fill_tensor(hv.act01, {x}, {u},
                        e.v.act01.evaluate({ctx.quo.comp0[x]}, {basis_vec(v1, u)}));
        for (int y = x + 1; y < h0; ++y)
            for (int u = 0; u < v0; ++u)
                fill_tensor(hv.act2, {x, y}, {u},
                            e.v.act2.evaluate({ctx.quo.comp0[x], ctx.quo.comp0[y]},
                                              {basis_vec(v0, u)}));
    }
    for (int a = 0; a < h1; ++a)
        for (int u = 0; u < v0; ++u)
            fill_tensor(hv.act10, {a}, {u},
                        e.v.act10.evaluate({ctx.quo.comp1[a]}, {basis_vec(v0, u)}));
    ctx.hv = std::move(hv);
    return ctx;
}

LambdaConditionResult check_lambda_condition(const ExtensionDatum& e) {
    LambdaConditionResult out;
    out.ctx = lambda_context(e);
    require(e.lambda.degree() == 2, "check_lambda_condition: lambda must have degree 2");
    Cochain dl = coboundary_apply(e.v, e.lambda);
    int g0 = e.g.space.dim0, g1 = e.g.space.dim1;
    for (const auto& [key, blk] : dl.blocks()) {
        if (blk.is_zero()) continue;
        if (key.p >= 1) {
            BasisIndexer rest(key.p - 1, key.q, g0, g1);
            int e_index = 0;
            for (const auto& kb : e.k.s0.basis()) {
                for (int c = 0; c < rest.size(); ++c) {
                    std::vector<int> anti, sym;
                    rest.tuple(c, anti, sym);
                    std::vector<Vec> xs{kb};
                    for (int i : anti) xs.push_back(basis_vec(g0, i));
                    std::vector<Vec> as;
                    for (int i : sym) as.push_back(basis_vec(g1, i));
                    if (!vec_is_zero(blk.evaluate(xs, as)))
                        out.report.failures.push_back({"lambda condition: i_e(D lambda) != 0",
                                                       {{0, e_index}},
                                                       "degree-0 contraction"});
                }
                ++e_index;
            }
        }
        if (key.q >= 1) {
            BasisIndexer rest(key.p, key.q - 1, g0, g1);
            int e_index = 0;
            for (const auto& kb : e.k.s1.basis()) {
                for (int c = 0; c < rest.size(); ++c) {
                    std::vector<int> anti, sym;
                    rest.tuple(c, anti, sym);
                    std::vector<Vec> xs;
                    for (int i : anti) xs.push_back(basis_vec(g0, i));
                    std::vector<Vec> as{kb};
                    for (int i : sym) as.push_back(basis_vec(g1, i));
                    if (!vec_is_zero(blk.evaluate(xs, as)))
                        out.report.failures.push_back({"lambda condition: i_e(D lambda) != 0",
                                                       {{1, e_index}},
                                                       "degree-1 contraction"});
                }
                ++e_index;
            }
        }
    }
    if (!out.report.ok()) return out;
    GradedMap s(RationalMatrix::from_columns(out.ctx.quo.comp0, g0),
                RationalMatrix::from_columns(out.ctx.quo.comp1, g1));
    out.theta = pullback_args(dl, s, out.ctx.quo.quo.space.dim0, out.ctx.quo.quo.space.dim1);
    Cochain back =
        pullback_args(out.theta, GradedMap(out.ctx.quo.proj0, out.ctx.quo.proj1), g0, g1);
    CochainLayout l3g = cochain_space(e.v, 3);
    require(flatten(back, l3g) == flatten(dl, l3g),
            "check_lambda_condition: D lambda does not factor through pi");
    require(coboundary_apply(out.ctx.hv, out.theta).is_zero(),
            "check_lambda_condition: recovered theta is not a cocycle");
    return out;
}

CrossedModule epsilon_lambda(const ExtensionDatum& e) {
    LambdaConditionResult lc = check_lambda_condition(e);
    require(lc.ok(), "epsilon_lambda: the lambda condition fails: " + lc.report.summary());
    const Lie2Algebra& g = e.g;
    int g0 = g.space.dim0, g1 = g.space.dim1;
    const auto& kb0 = e.k.s0.basis();
    const auto& kb1 = e.k.s1.basis();
    int k0 = static_cast<int>(kb0.size()), k1 = static_cast<int>(kb1.size());
    int v0 = e.v.space.dim0, v1 = e.v.space.dim1;
    int m0 = k0 + v0, m1 = k1 + v1;
    MultiTensor l0 = e.lambda.block(0, 1, 0);
    MultiTensor l1t = e.lambda.block(2, 0, 0);
    MultiTensor l2t = e.lambda.block(1, 1, 1);
    MultiTensor l3t = e.lambda.block(3, 0, 1);
    auto k0co = [&](const Vec& v) {
        auto c = e.k.s0.coords(v);
        require(c.has_value(), "epsilon_lambda: value escaped k0");
        return *c;
    };
    auto k1co = [&](const Vec& v) {
        auto c = e.k.s1.coords(v);
        require(c.has_value(), "epsilon_lambda: value escaped k1");
        return *c;
    };
    // d^lambda(xi + m) = d xi + d^V m + lambda_0(xi)
    RationalMatrix diff(m0, m1);
    for (int j = 0; j < k1; ++j) {
        Vec dk = k0co(g.d(kb1[j]));
        for (int i = 0; i < k0; ++i) diff.at(i, j) = dk[i];
        Vec lv = l0.evaluate({}, {kb1[j]});
        for (int i = 0; i < v0; ++i) diff.at(k0 + i, j) = lv[i];
    }
    for (int j = 0; j < v1; ++j)
        for (int i = 0; i < v0; ++i) diff.at(k0 + i, k1 + j) = e.v.space.diff.at(i, j);
    Lie2Algebra m(TwoTermSpace(m0, m1, diff));
    for (int i = 0; i < k0; ++i) {
        for (int j = i + 1; j < k0; ++j) {
            fill_tensor(m.l2_00, {i, j}, {}, k0co(g.l2_00.evaluate({kb0[i], kb0[j]}, {})));
            fill_tensor(m.l2_00, {i, j}, {}, l1t.evaluate({kb0[i], kb0[j]}, {}), k0);
            for (int k = j + 1; k < k0; ++k) {
                fill_tensor(m.l3, {i, j, k}, {},
                            k1co(g.l3.evaluate({kb0[i], kb0[j], kb0[k]}, {})));
                fill_tensor(m.l3, {i, j, k}, {}, l3t.evaluate({kb0[i], kb0[j], kb0[k]}, {}), k1);
            }
        }
        for (int j = 0; j < k1; ++j) {
            fill_tensor(m.l2_01, {i}, {j}, k1co(g.l2_01.evaluate({kb0[i]}, {kb1[j]})));
            fill_tensor(m.l2_01, {i}, {j}, l2t.evaluate({kb0[i]}, {kb1[j]}), k1);
        }
    }
    Lie2Module base(g, m.space);
    for (int x = 0; x < g0; ++x) {
        Vec ex = basis_vec(g0, x);
        for (int u = 0; u < k0; ++u) {
            fill_tensor(base.act00, {x}, {u}, k0co(g.l2_00.evaluate({ex, kb0[u]}, {})));
            fill_tensor(base.act00, {x}, {u}, l1t.evaluate({ex, kb0[u]}, {}), k0);
        }
        for (int u = 0; u < v0; ++u)
            fill_tensor(base.act00, {x}, {k0 + u}, e.v.act00.value({x}, {u}), k0);
        for (int u = 0; u < k1; ++u) {
            fill_tensor(base.act01, {x}, {u}, k1co(g.l2_01.evaluate({ex}, {kb1[u]})));
            fill_tensor(base.act01, {x}, {u}, l2t.evaluate({ex}, {kb1[u]}), k1);
        }
        for (int u = 0; u < v1; ++u)
            fill_tensor(base.act01, {x}, {k1 + u}, e.v.act01.value({x}, {u}), k1);
    }
    for (int a = 0; a < g1; ++a) {
        Vec ea = basis_vec(g1, a);
        for (int u = 0; u < k0; ++u) {
            // a |> alpha = [a, alpha] + lambda_2(a, alpha); both flip sign
            // against the canonical (g0, g1) slot order.
            fill_tensor(base.act10, {a}, {u},
                        k1co(vec_scale(Rational(-1), g.l2_01.evaluate({kb0[u]}, {ea}))));
            fill_tensor(base.act10, {a}, {u},
                        vec_scale(Rational(-1), l2t.evaluate({kb0[u]}, {ea})), k1);
        }
        for (int u = 0; u < v0; ++u)
            fill_tensor(base.act10, {a}, {k0 + u}, e.v.act10.value({a}, {u}), k1);
    }
    for (int x = 0; x < g0; ++x)
        for (int y = x + 1; y < g0; ++y) {
            Vec ex = basis_vec(g0, x), ey = basis_vec(g0, y);
            for (int u = 0; u < k0; ++u) {
                fill_tensor(base.act2, {x, y}, {u},
                            k1co(vec_scale(Rational(-1), g.l3.evaluate({ex, ey, kb0[u]}, {}))));
                fill_tensor(base.act2, {x, y}, {u},
                            vec_scale(Rational(-1), l3t.evaluate({ex, ey, kb0[u]}, {})), k1);
            }
            for (int u = 0; u < v0; ++u)
                fill_tensor(base.act2, {x, y}, {k0 + u}, e.v.act2.value({x, y}, {u}), k1);
        }
    MultiTensor lphi0(2, 1, m0, g0, m1);
    for (int u = 0; u < k0; ++u)
        for (int v = u + 1; v < k0; ++v)
            for (int x = 0; x < g0; ++x) {
                Vec kpart = k1co(g.l3.evaluate({basis_vec(g0, x), kb0[u], kb0[v]}, {}));
                Vec vpart = l3t.evaluate({basis_vec(g0, x), kb0[u], kb0[v]}, {});
                for (int t = 0; t < k1; ++t)
                    if (!kpart[t].is_zero()) lphi0.add({u, v}, {x}, t, kpart[t]);
                for (int t = 0; t < v1; ++t)
                    if (!vpart[t].is_zero()) lphi0.add({u, v}, {x}, k1 + t, vpart[t]);
            }
    RationalMatrix phi0(g0, m0), phi1(g1, m1);
    for (int j = 0; j < k0; ++j)
        for (int i = 0; i < g0; ++i) phi0.at(i, j) = kb0[j][i];
    for (int j = 0; j < k1; ++j)
        for (int i = 0; i < g1; ++i) phi1.at(i, j) = kb1[j][i];
    MultiTensor phi2(2, 0, m0, m1, g1);
    MultiTensor sigma(1, 1, g0, m0, g1);
    return make_crossed_module(std::move(m), g, DerivAction(std::move(base), std::move(lphi0)),
                               GradedMap(phi0, phi1), std::move(phi2), std::move(sigma));
}

// ---------------------------------------------------------------------------
// Abelian extensions
// ---------------------------------------------------------------------------

AbelianExtension abelian_extension(const Lie2Module& q_module, const Cochain& lambda) {
    require(lambda.degree() == 2, "abelian_extension: lambda must have degree 2");
    require(coboundary_apply(q_module, lambda).is_zero(),
            "abelian_extension: lambda is not a 2-cocycle");
    const Lie2Algebra& h = q_module.algebra;
    int h0 = h.space.dim0, h1 = h.space.dim1;
    int q0 = q_module.space.dim0, q1 = q_module.space.dim1;
    int n0 = h0 + q0, n1 = h1 + q1;
    MultiTensor l0 = lambda.block(0, 1, 0);
    MultiTensor l1t = lambda.block(2, 0, 0);
    MultiTensor l2t = lambda.block(1, 1, 1);
    MultiTensor l3t = lambda.block(3, 0, 1);
    RationalMatrix diff(n0, n1);
    for (int j = 0; j < h1; ++j) {
        for (int i = 0; i < h0; ++i) diff.at(i, j) = h.space.diff.at(i, j);
        Vec lv = l0.value({}, {j});
        for (int i = 0; i < q0; ++i) diff.at(h0 + i, j) = lv[i];
    }
    for (int j = 0; j < q1; ++j)
        for (int i = 0; i < q0; ++i) diff.at(h0 + i, h1 + j) = q_module.space.diff.at(i, j);
    Lie2Algebra ext(TwoTermSpace(n0, n1, diff));
    for (int i = 0; i < n0; ++i)
        for (int j = i + 1; j < n0; ++j) {
            if (j < h0) {
                fill_tensor(ext.l2_00, {i, j}, {}, h.l2_00.value({i, j}, {}));
                fill_tensor(ext.l2_00, {i, j}, {}, l1t.value({i, j}, {}), h0);
            } else if (i < h0) {
                fill_tensor(ext.l2_00, {i, j}, {}, q_module.act00.value({i}, {j - h0}), h0);
            }
        }
    for (int i = 0; i < n0; ++i)
        for (int j = 0; j < n1; ++j) {
            if (i < h0 && j < h1) {
                fill_tensor(ext.l2_01, {i}, {j}, h.l2_01.value({i}, {j}));
                fill_tensor(ext.l2_01, {i}, {j}, l2t.value({i}, {j}), h1);
            } else if (i < h0 && j >= h1) {
                fill_tensor(ext.l2_01, {i}, {j}, q_module.act01.value({i}, {j - h1}), h1);
            } else if (i >= h0 && j < h1) {
                // [p, a] = -(a |> p)
                fill_tensor(ext.l2_01, {i}, {j},
                            vec_scale(Rational(-1), q_module.act10.value({j}, {i - h0})), h1);
            }
        }
    for (int i = 0; i < n0; ++i)
        for (int j = i + 1; j < n0; ++j)
            for (int k = j + 1; k < n0; ++k) {
                if (k < h0) {
                    fill_tensor(ext.l3, {i, j, k}, {}, h.l3.value({i, j, k}, {}));
                    fill_tensor(ext.l3, {i, j, k}, {}, l3t.value({i, j, k}, {}), h1);
                } else if (j < h0) {
                    fill_tensor(ext.l3, {i, j, k}, {},
                                vec_scale(Rational(-1), q_module.act2.value({i, j}, {k - h0})),
                                h1);
                }
            }
    AbelianExtension out;
    RationalMatrix i0(n0, q0), i1(n1, q1);
    for (int i = 0; i < q0; ++i) i0.at(h0 + i, i) = Rational(1);
    for (int i = 0; i < q1; ++i) i1.at(h1 + i, i) = Rational(1);
    RationalMatrix p0(h0, n0), p1(h1, n1);
    for (int i = 0; i < h0; ++i) p0.at(i, i) = Rational(1);
    for (int i = 0; i < h1; ++i) p1.at(i, i) = Rational(1);
    Lie2Algebra qalg(q_module.space);
    out.incl = make_strong_hom(qalg, ext, GradedMap(i0, i1));
    out.proj = make_strong_hom(ext, h, GradedMap(p0, p1));
    out.ext = std::move(ext);
    return out;
}

std::optional<GradedMap> find_strong_splitting(const Lie2Module& q_module, const Cochain& lambda) {
    const Lie2Algebra& h = q_module.algebra;
    int h0 = h.space.dim0, h1 = h.space.dim1;
    int q0 = q_module.space.dim0, q1 = q_module.space.dim1;
    MultiTensor l0 = lambda.block(0, 1, 0);
    MultiTensor l1t = lambda.block(2, 0, 0);
    MultiTensor l2t = lambda.block(1, 1, 1);
    MultiTensor l3t = lambda.block(3, 0, 1);
    int nc0 = q0 * h0, nvars = nc0 + q1 * h1;
    std::vector<Vec> rows;
    Vec rhs_all;
    auto c0var = [&](int r, int c) { return r * h0 + c; };
    auto c1var = [&](int r, int c) { return nc0 + r * h1 + c; };
    auto add_row = [&](Vec row, Rational rhs) {
        rows.push_back(std::move(row));
        rhs_all.push_back(std::move(rhs));
    };
    // chain: d^Q C1(a) - C0(d^h a) = -lambda_0(a)
    for (int a = 0; a < h1; ++a) {
        Vec l0v = l0.value({}, {a});
        Vec dh = h.d(basis_vec(h1, a));
        for (int r = 0; r < q0; ++r) {
            Vec row = vec_zero(nvars);
            for (int k = 0; k < q1; ++k)
                if (!q_module.space.diff.at(r, k).is_zero())
                    row[c1var(k, a)] += q_module.space.diff.at(r, k);
            for (int c = 0; c < h0; ++c) row[c0var(r, c)] -= dh[c];
            add_row(row, -l0v[r]);
        }
    }
    // degree 0: C0[x,y] - x |> C0 y + y |> C0 x = lambda_1(x,y)
    for (int x = 0; x < h0; ++x)
        for (int y = x + 1; y < h0; ++y) {
            Vec br = h.l2_00.value({x, y}, {});
            Vec lv = l1t.value({x, y}, {});
            for (int r = 0; r < q0; ++r) {
                Vec row = vec_zero(nvars);
                for (int c = 0; c < h0; ++c) row[c0var(r, c)] += br[c];
                for (int k = 0; k < q0; ++k) {
                    row[c0var(k, y)] -= q_module.act00.value({x}, {k})[r];
                    row[c0var(k, x)] += q_module.act00.value({y}, {k})[r];
                }
                add_row(row, lv[r]);
            }
        }
    // mixed: C1[x,a] - x |> C1 a + a |> C0 x = lambda_2(x,a)
    for (int x = 0; x < h0; ++x)
        for (int a = 0; a < h1; ++a) {
            Vec br = h.l2_01.value({x}, {a});
            Vec lv = l2t.value({x}, {a});
            for (int r = 0; r < q1; ++r) {
                Vec row = vec_zero(nvars);
                for (int c = 0; c < h1; ++c) row[c1var(r, c)] += br[c];
                for (int k = 0; k < q1; ++k)
                    row[c1var(k, a)] -= q_module.act01.value({x}, {k})[r];
                for (int k = 0; k < q0; ++k)
                    row[c0var(k, x)] += q_module.act10.value({a}, {k})[r];
                add_row(row, lv[r]);
            }
        }
    // coherence: C1 l3(x,y,z) + (x,y)|>C0 z + (y,z)|>C0 x + (z,x)|>C0 y = lambda_3(x,y,z)
    for (int x = 0; x < h0; ++x)
        for (int y = x + 1; y < h0; ++y)
            for (int z = y + 1; z < h0; ++z) {
                Vec l3v = h.l3.value({x, y, z}, {});
                Vec lv = l3t.value({x, y, z}, {});
                for (int r = 0; r < q1; ++r) {
                    Vec row = vec_zero(nvars);
                    for (int c = 0; c < h1; ++c) row[c1var(r, c)] += l3v[c];
                    int tri[3] = {x, y, z};
                    for (int c = 0; c < 3; ++c) {
                        int u = tri[c], v = tri[(c + 1) % 3], w = tri[(c + 2) % 3];
                        for (int k = 0; k < q0; ++k)
                            row[c0var(k, w)] += q_module.act2.value({u, v}, {k})[r];
                    }
                    add_row(row, lv[r]);
                }
            }
    RationalMatrix sys =
        rows.empty() ? RationalMatrix(0, nvars) : RationalMatrix::from_rows(rows, nvars);
    auto sol = solve(sys, rhs_all);
    if (!sol) return std::nullopt;
    RationalMatrix s0(h0 + q0, h0), s1(h1 + q1, h1);
    for (int i = 0; i < h0; ++i) s0.at(i, i) = Rational(1);
    for (int r = 0; r < q0; ++r)
        for (int c = 0; c < h0; ++c) s0.at(h0 + r, c) = (*sol)[c0var(r, c)];
    for (int i = 0; i < h1; ++i) s1.at(i, i) = Rational(1);
    for (int r = 0; r < q1; ++r)
        for (int c = 0; c < h1; ++c) s1.at(h1 + r, c) = (*sol)[c1var(r, c)];
    return GradedMap(s0, s1);
}

// ---------------------------------------------------------------------------
// Module short exact sequences, splices, connecting map
// ---------------------------------------------------------------------------

CheckReport check_module_ses(const ModuleSES& s) {
    CheckReport rep;
    auto same_algebra = [&](const Lie2Module& a, const Lie2Module& b) {
        return a.algebra.space.dim0 == b.algebra.space.dim0 &&
               a.algebra.space.dim1 == b.algebra.space.dim1 &&
               a.algebra.space.diff == b.algebra.space.diff &&
               a.algebra.l2_00 == b.algebra.l2_00 && a.algebra.l2_01 == b.algebra.l2_01 &&
               a.algebra.l3 == b.algebra.l3;
    };
    if (!same_algebra(s.v, s.i) || !same_algebra(s.i, s.q))
        rep.failures.push_back({"module SES: different base algebras", {}, ""});
    if (!s.p.is_chain_map(s.v.space, s.i.space))
        rep.failures.push_back({"module SES: p is not a chain map", {}, ""});
    if (!s.r.is_chain_map(s.i.space, s.q.space))
        rep.failures.push_back({"module SES: q is not a chain map", {}, ""});
    int h0 = s.i.algebra.space.dim0, h1 = s.i.algebra.space.dim1;
    auto equivariant = [&](const Lie2Module& src, const Lie2Module& dst, const GradedMap& f,
                           const char* name) {
        for (int x = 0; x < h0; ++x) {
            for (int u = 0; u < src.space.dim0; ++u)
                if (f.m0.apply(src.act00.value({x}, {u})) !=
                    dst.act00.evaluate({basis_vec(h0, x)}, {f.m0.col(u)}))
                    rep.failures.push_back(
                        {std::string(name) + " equivariance (act00)", {{0, x}}, ""});
            for (int u = 0; u < src.space.dim1; ++u)
                if (f.m1.apply(src.act01.value({x}, {u})) !=
                    dst.act01.evaluate({basis_vec(h0, x)}, {f.m1.col(u)}))
                    rep.failures.push_back(
                        {std::string(name) + " equivariance (act01)", {{0, x}}, ""});
            for (int y = x + 1; y < h0; ++y)
                for (int u = 0; u < src.space.dim0; ++u)
                    if (f.m1.apply(src.act2.value({x, y}, {u})) !=
                        dst.act2.evaluate({basis_vec(h0, x), basis_vec(h0, y)}, {f.m0.col(u)}))
                        rep.failures.push_back(
                            {std::string(name) + " equivariance (act2)", {{0, x}, {0, y}}, ""});
        }
        for (int a = 0; a < h1; ++a)
            for (int u = 0; u < src.space.dim0; ++u)
                if (f.m1.apply(src.act10.value({a}, {u})) !=
                    dst.act10.evaluate({basis_vec(h1, a)}, {f.m0.col(u)}))
                    rep.failures.push_back(
                        {std::string(name) + " equivariance (act10)", {{1, a}}, ""});
    };
    equivariant(s.v, s.i, s.p, "p");
    equivariant(s.i, s.q, s.r, "q");
    if (rank(s.p.m0) != s.v.space.dim0 || rank(s.p.m1) != s.v.space.dim1)
        rep.failures.push_back({"module SES: p not injective", {}, ""});
    if (rank(s.r.m0) != s.q.space.dim0 || rank(s.r.m1) != s.q.space.dim1)
        rep.failures.push_back({"module SES: q not surjective", {}, ""});
    if (!(s.r.m0 * s.p.m0).is_zero() || !(s.r.m1 * s.p.m1).is_zero())
        rep.failures.push_back({"module SES: q p != 0", {}, ""});
    if (rank(s.p.m0) + rank(s.r.m0) != s.i.space.dim0 ||
        rank(s.p.m1) + rank(s.r.m1) != s.i.space.dim1)
        rep.failures.push_back({"module SES: not exact in the middle", {}, ""});
    return rep;
}

CrossedModule splice(const ModuleSES& s, const Cochain& lambda) {
    CheckReport ses = check_module_ses(s);
    require(ses.ok(), "splice: module sequence invalid: " + ses.summary());
    AbelianExtension ext = abelian_extension(s.q, lambda);
    const Lie2Algebra& g = ext.ext;
    int h0 = s.i.algebra.space.dim0, h1 = s.i.algebra.space.dim1;
    int g0 = g.space.dim0, g1 = g.space.dim1;
    int i0 = s.i.space.dim0, i1 = s.i.space.dim1;
    Lie2Algebra m(s.i.space);  // I as a trivial Lie 2-algebra
    Lie2Module base(g, s.i.space);
    for (int x = 0; x < h0; ++x) {
        for (int u = 0; u < i0; ++u) fill_tensor(base.act00, {x}, {u}, s.i.act00.value({x}, {u}));
        for (int u = 0; u < i1; ++u) fill_tensor(base.act01, {x}, {u}, s.i.act01.value({x}, {u}));
        for (int y = x + 1; y < h0; ++y)
            for (int u = 0; u < i0; ++u)
                fill_tensor(base.act2, {x, y}, {u}, s.i.act2.value({x, y}, {u}));
    }
    for (int a = 0; a < h1; ++a)
        for (int u = 0; u < i0; ++u) fill_tensor(base.act10, {a}, {u}, s.i.act10.value({a}, {u}));
    MultiTensor lphi0(2, 1, i0, g0, i1);
    RationalMatrix phi0(g0, i0), phi1(g1, i1);
    for (int j = 0; j < i0; ++j)
        for (int r = 0; r < s.q.space.dim0; ++r) phi0.at(h0 + r, j) = s.r.m0.at(r, j);
    for (int j = 0; j < i1; ++j)
        for (int r = 0; r < s.q.space.dim1; ++r) phi1.at(h1 + r, j) = s.r.m1.at(r, j);
    MultiTensor phi2(2, 0, i0, i1, g1);
    MultiTensor sigma(1, 1, g0, i0, g1);
    return make_crossed_module(std::move(m), g, DerivAction(std::move(base), std::move(lphi0)),
                               GradedMap(phi0, phi1), std::move(phi2), std::move(sigma));
}

Cochain connect_cocycle(const ModuleSES& s, const Cochain& lambda) {
    require(coboundary_apply(s.q, lambda).is_zero(), "connect_cocycle: lambda is not a cocycle");
    RationalMatrix r0 = section_on_image(s.r.m0);
    RationalMatrix r1 = section_on_image(s.r.m1);
    Cochain lifted = map_values(lambda, r0, r1);
    Cochain d = coboundary_apply(s.i, lifted);
    Cochain out(d.degree(), d.g0(), d.g1(), s.v.space.dim0, s.v.space.dim1);
    for (const auto& [k, blk] : d.blocks()) {
        const RationalMatrix& p = k.s == 0 ? s.p.m0 : s.p.m1;
        int vd = k.s == 0 ? s.v.space.dim0 : s.v.space.dim1;
        MultiTensor nb(k.p, k.q, d.g0(), d.g1(), vd);
        for (int col = 0; col < blk.cols(); ++col) {
            auto x = solve(p, blk.coeffs().col(col));
            require(x.has_value(), "connect_cocycle: boundary does not land in V");
            for (int t = 0; t < vd; ++t) nb.coeffs().at(t, col) = (*x)[t];
        }
        out.set(k.p, k.q, k.s, std::move(nb));
    }
    require(coboundary_apply(s.v, out).is_zero(), "connect_cocycle: image is not closed");
    return out;
}

ConnectingMap connecting_map(const ModuleSES& s, int degree) {
    CheckReport ses = check_module_ses(s);
    require(ses.ok(), "connecting_map: module sequence invalid: " + ses.summary());
    ConnectingMap out;
    out.hq = cohomology(s.q, degree);
    out.hv = cohomology(s.v, degree + 1);
    out.map = RationalMatrix(out.hv.betti, out.hq.betti);
    for (int j = 0; j < out.hq.betti; ++j) {
        Cochain img = connect_cocycle(s, out.hq.representatives[j]);
        auto cls = class_coordinates(out.hv, flatten(img, out.hv.layout));
        require(cls.has_value(), "connecting_map: image class not recognized");
        for (int i = 0; i < out.hv.betti; ++i) out.map.at(i, j) = (*cls)[i];
    }
    return out;
}

// ---------------------------------------------------------------------------
// mu
// ---------------------------------------------------------------------------

SectionPair canonical_sections(const CrossedModule& cm, const FourTermData& four) {
    SectionPair sp;
    sp.s0 = four.s0;
    sp.s1 = four.s1;
    sp.q0 = section_on_image(cm.phi.m0);
    sp.q1 = section_on_image(cm.phi.m1);
    return sp;
}

namespace {

void validate_sections(const CrossedModule& cm, const FourTermData& four, const SectionPair& sp) {
    require((four.pi0 * sp.s0) == RationalMatrix::identity(four.h.space.dim0) &&
                (four.pi1 * sp.s1) == RationalMatrix::identity(four.h.space.dim1),
            "mu: s is not a section of pi");
    require((cm.phi.m0 * sp.q0 * cm.phi.m0) == cm.phi.m0 &&
                (cm.phi.m1 * sp.q1 * cm.phi.m1) == cm.phi.m1,
            "mu: q is not a section of phi on its image");
}

// The four lambda_epsilon arguments (values in g, all in Img phi).
struct LambdaArgs {
    std::function<Vec(int)> w0;
    std::function<Vec(int, int)> w1;
    std::function<Vec(int, int)> w2;
    std::function<Vec(int, int, int)> w3;
};

LambdaArgs lambda_args(const CrossedModule& cm, const FourTermData& four, const SectionPair& sp) {
    const Lie2Algebra* g = &cm.g;
    const Lie2Algebra* h = &four.h;
    LambdaArgs a;
    a.w0 = [g, h, sp](int ai) {
        Vec w = g->space.diff.apply(sp.s1.col(ai));
        vec_axpy(w, Rational(-1), sp.s0.apply(h->space.diff.apply(basis_vec(h->space.dim1, ai))));
        return w;
    };
    a.w1 = [g, h, sp](int x, int y) {
        Vec w = g->l2_00.evaluate({sp.s0.col(x), sp.s0.col(y)}, {});
        vec_axpy(w, Rational(-1), sp.s0.apply(h->l2_00.value({x, y}, {})));
        return w;
    };
    a.w2 = [g, h, sp](int x, int ai) {
        Vec w = g->l2_01.evaluate({sp.s0.col(x)}, {sp.s1.col(ai)});
        vec_axpy(w, Rational(-1), sp.s1.apply(h->l2_01.value({x}, {ai})));
        return w;
    };
    a.w3 = [g, h, sp](int x, int y, int z) {
        Vec w = g->l3.evaluate({sp.s0.col(x), sp.s0.col(y), sp.s0.col(z)}, {});
        vec_axpy(w, Rational(-1), sp.s1.apply(h->l3.value({x, y, z}, {})));
        return w;
    };
    return a;
}

Cochain build_lambda_eps(const CrossedModule& cm, const FourTermData& four, const SectionPair& sp) {
    int h0 = four.h.space.dim0, h1 = four.h.space.dim1;
    int m0 = cm.m.space.dim0, m1 = cm.m.space.dim1;
    LambdaArgs args = lambda_args(cm, four, sp);
    auto q0_of = [&](const Vec& w, const char* what) {
        Vec v = sp.q0.apply(w);
        require(cm.phi.m0.apply(v) == w, std::string("mu: ") + what + " escapes Img phi0");
        return v;
    };
    auto q1_of = [&](const Vec& w, const char* what) {
        Vec v = sp.q1.apply(w);
        require(cm.phi.m1.apply(v) == w, std::string("mu: ") + what + " escapes Img phi1");
        return v;
    };
    Cochain lam(2, h0, h1, m0, m1);
    lam.set(0, 1, 0, build_tensor(0, 1, h0, h1, m0,
                                  [&](const std::vector<int>&, const std::vector<int>& s) {
                                      return q0_of(args.w0(s[0]), "lambda_0 argument");
                                  }));
    lam.set(2, 0, 0, build_tensor(2, 0, h0, h1, m0,
                                  [&](const std::vector<int>& a, const std::vector<int>&) {
                                      return q0_of(args.w1(a[0], a[1]), "lambda_1 argument");
                                  }));
    lam.set(1, 1, 1, build_tensor(1, 1, h0, h1, m1,
                                  [&](const std::vector<int>& a, const std::vector<int>& s) {
                                      return q1_of(args.w2(a[0], s[0]), "lambda_2 argument");
                                  }));
    lam.set(3, 0, 1, build_tensor(3, 0, h0, h1, m1,
                                  [&](const std::vector<int>& a, const std::vector<int>&) {
                                      return q1_of(args.w3(a[0], a[1], a[2]), "lambda_3 argument");
                                  }));
    return lam;
}

}  // namespace

MuResult mu(const CrossedModule& cm, const FourTermData& four, const SectionPair& sections) {
    require(cm.strong(), "mu: the crossed module is not strong");
    validate_sections(cm, four, sections);
    MuResult out;
    out.four = four;
    out.lambda_eps = build_lambda_eps(cm, four, sections);
    Cochain pulled = pullback_args(out.lambda_eps, GradedMap(four.pi0, four.pi1),
                                   cm.g.space.dim0, cm.g.space.dim1);
    Cochain dg = coboundary_apply(cm.action.base, pulled);
    Cochain theta_m = pullback_args(dg, GradedMap(sections.s0, sections.s1), four.h.space.dim0,
                                    four.h.space.dim1);
    require(map_values(theta_m, cm.phi.m0, cm.phi.m1).is_zero(),
            "mu: theta does not land in ker phi");
    Subspace vs0(four.v0_in_m0, cm.m.space.dim0), vs1(four.v1_in_m1, cm.m.space.dim1);
    out.theta = cochain_into_subspace(theta_m, vs0, vs1);
    require(coboundary_apply(four.action, out.theta).is_zero(), "mu: theta is not a cocycle");
    out.h3 = cohomology(four.action, 3);
    auto cls = class_coordinates(out.h3, flatten(out.theta, out.h3.layout));
    require(cls.has_value(), "mu: class coordinates not found");
    out.class_id = *cls;
    return out;
}

MuResult mu(const CrossedModule& cm) {
    FourTermData four = four_term_sequence(cm);
    return mu(cm, four, canonical_sections(cm, four));
}

// ---------------------------------------------------------------------------
// Section changes and strong maps
// ---------------------------------------------------------------------------

SectionChange section_change_witness(const CrossedModule& cm, const FourTermData& four,
                                     const SectionPair& s, const SectionPair& sbar_in) {
    validate_sections(cm, four, s);
    validate_sections(cm, four, sbar_in);
    SectionPair sbar = sbar_in;
    sbar.q0 = s.q0;  // one right inverse of phi shared by both computations
    sbar.q1 = s.q1;
    int h0 = four.h.space.dim0, h1 = four.h.space.dim1;
    int m1 = cm.m.space.dim1;
    RationalMatrix d0 = s.s0 - sbar.s0;
    RationalMatrix d1 = s.s1 - sbar.s1;
    RationalMatrix t0 = s.q0 * d0, t1 = s.q1 * d1;
    require((cm.phi.m0 * t0) == d0 && (cm.phi.m1 * t1) == d1,
            "section_change_witness: s - sbar is not valued in Img phi");
    const Lie2Module& act = cm.action.base;
    Cochain b(2, h0, h1, cm.m.space.dim0, m1);
    b.set(0, 1, 0, build_tensor(0, 1, h0, h1, cm.m.space.dim0,
                                [&](const std::vector<int>&, const std::vector<int>& sy) {
                                    int a = sy[0];
                                    Vec r = cm.m.space.diff.apply(t1.col(a));
                                    vec_axpy(r, Rational(-1),
                                             t0.apply(four.h.space.diff.apply(basis_vec(h1, a))));
                                    return r;
                                }));
    b.set(2, 0, 0, build_tensor(2, 0, h0, h1, cm.m.space.dim0,
                                [&](const std::vector<int>& a, const std::vector<int>&) {
                                    int x = a[0], y = a[1];
                                    Vec r = act.a00(sbar.s0.col(x), t0.col(y));
                                    vec_axpy(r, Rational(-1), act.a00(s.s0.col(y), t0.col(x)));
                                    vec_axpy(r, Rational(-1),
                                             t0.apply(four.h.l2_00.value({x, y}, {})));
                                    return r;
                                }));
    b.set(1, 1, 1, build_tensor(1, 1, h0, h1, m1,
                                [&](const std::vector<int>& a, const std::vector<int>& sy) {
                                    int x = a[0], aa = sy[0];
                                    Vec r = act.a01(sbar.s0.col(x), t1.col(aa));
                                    vec_axpy(r, Rational(-1), act.a10(s.s1.col(aa), t0.col(x)));
                                    vec_axpy(r, Rational(-1),
                                             t1.apply(four.h.l2_01.value({x}, {aa})));
                                    return r;
                                }));
    b.set(3, 0, 1, build_tensor(3, 0, h0, h1, m1,
                                [&](const std::vector<int>& a, const std::vector<int>&) {
                                    int x = a[0], y = a[1], z = a[2];
                                    Vec r = vec_scale(Rational(-1),
                                                      act.a2(s.s0.col(x), s.s0.col(y), t0.col(z)));
                                    vec_axpy(r, Rational(-1),
                                             act.a2(sbar.s0.col(x), sbar.s0.col(y), t0.col(z)));
                                    vec_axpy(r, Rational(1),
                                             act.a2(s.s0.col(x), sbar.s0.col(y), t0.col(z)));
                                    vec_axpy(r, Rational(-1),
                                             act.a2(sbar.s0.col(y), s.s0.col(z), t0.col(x)));
                                    vec_axpy(r, Rational(-1),
                                             act.a2(sbar.s0.col(z), s.s0.col(x), t0.col(y)));
                                    return r;
                                }));
    MuResult ma = mu(cm, four, s);
    MuResult mb = mu(cm, four, sbar);
    Cochain correction = ma.lambda_eps - mb.lambda_eps - b;
    require(map_values(correction, cm.phi.m0, cm.phi.m1).is_zero(),
            "section_change_witness: lambda - lambda_bar - B escapes ker phi");
    Subspace vs0(four.v0_in_m0, cm.m.space.dim0), vs1(four.v1_in_m1, cm.m.space.dim1);
    SectionChange out;
    out.b = cochain_into_subspace(b, vs0, vs1);
    Cochain corr_v = cochain_into_subspace(correction, vs0, vs1);
    Cochain diff = ma.theta - mb.theta;
    Cochain dcorr = coboundary_apply(four.action, corr_v);
    CochainLayout l3 = cochain_space(four.action, 3);
    out.identity_holds = flatten(diff, l3) == flatten(dcorr, l3);
    return out;
}

StrongMapReport strong_map_invariance(const CrossedModule& a, const CrossedModule& b,
                                      const Lie2Hom& f, const Lie2Hom& g) {
    StrongMapReport out;
    CheckReport& rep = out.checks;
    if (!f.phi2.is_zero()) rep.failures.push_back({"strong map: F2 != 0", {}, ""});
    if (!g.phi2.is_zero()) rep.failures.push_back({"strong map: G2 != 0", {}, ""});
    rep.merge(check_hom(f));
    rep.merge(check_hom(g));
    if (!((b.phi.m0 * f.maps.m0) == (g.maps.m0 * a.phi.m0)) ||
        !((b.phi.m1 * f.maps.m1) == (g.maps.m1 * a.phi.m1)))
        rep.failures.push_back({"strong map: phi' F = G phi", {}, ""});
    FourTermData fa = four_term_sequence(a);
    FourTermData fb = four_term_sequence(b);
    if (fa.h.space.dim0 != fb.h.space.dim0 || fa.h.space.dim1 != fb.h.space.dim1 ||
        !(fa.h.space.diff == fb.h.space.diff) || !(fa.h.l2_00 == fb.h.l2_00) ||
        !(fa.h.l2_01 == fb.h.l2_01) || !(fa.h.l3 == fb.h.l3))
        rep.failures.push_back({"strong map: cokernels differ", {}, ""});
    else if (!((fb.pi0 * g.maps.m0 * fa.s0) == RationalMatrix::identity(fa.h.space.dim0)) ||
             !((fb.pi1 * g.maps.m1 * fa.s1) == RationalMatrix::identity(fa.h.space.dim1)))
        rep.failures.push_back({"strong map: G does not restrict to the identity on h", {}, ""});
    int v0 = static_cast<int>(fa.v0_in_m0.size()), v1 = static_cast<int>(fa.v1_in_m1.size());
    if (v0 != static_cast<int>(fb.v0_in_m0.size()) || v1 != static_cast<int>(fb.v1_in_m1.size()))
        rep.failures.push_back({"strong map: kernels differ", {}, ""});
    else {
        for (int i = 0; i < v0; ++i)
            if (f.maps.m0.apply(fa.v0_in_m0[i]) != fb.v0_in_m0[i])
                rep.failures.push_back({"strong map: F is not the identity on V0", {{0, i}}, ""});
        for (int i = 0; i < v1; ++i)
            if (f.maps.m1.apply(fa.v1_in_m1[i]) != fb.v1_in_m1[i])
                rep.failures.push_back({"strong map: F is not the identity on V1", {{1, i}}, ""});
    }
    if (!(fa.action.act00 == fb.action.act00) || !(fa.action.act01 == fb.action.act01) ||
        !(fa.action.act10 == fb.action.act10) || !(fa.action.act2 == fb.action.act2))
        rep.failures.push_back({"strong map: induced actions differ", {}, ""});
    if (!rep.ok()) return out;

    SectionPair sa = canonical_sections(a, fa);
    SectionPair sb;
    sb.s0 = g.maps.m0 * sa.s0;  // s' = G s
    sb.s1 = g.maps.m1 * sa.s1;
    sb.q0 = section_on_image(b.phi.m0);
    sb.q1 = section_on_image(b.phi.m1);
    MuResult ma = mu(a, fa, sa);
    MuResult mb = mu(b, fb, sb);
    LambdaArgs args = lambda_args(a, fa, sa);
    RationalMatrix d0 = f.maps.m0 * sa.q0 - sb.q0 * g.maps.m0;
    RationalMatrix d1 = f.maps.m1 * sa.q1 - sb.q1 * g.maps.m1;
    int h0 = fa.h.space.dim0, h1 = fa.h.space.dim1;
    Cochain bb(2, h0, h1, b.m.space.dim0, b.m.space.dim1);
    bb.set(0, 1, 0, build_tensor(0, 1, h0, h1, b.m.space.dim0,
                                 [&](const std::vector<int>&, const std::vector<int>& s) {
                                     return d0.apply(args.w0(s[0]));
                                 }));
    bb.set(2, 0, 0, build_tensor(2, 0, h0, h1, b.m.space.dim0,
                                 [&](const std::vector<int>& t, const std::vector<int>&) {
                                     return d0.apply(args.w1(t[0], t[1]));
                                 }));
    bb.set(1, 1, 1, build_tensor(1, 1, h0, h1, b.m.space.dim1,
                                 [&](const std::vector<int>& t, const std::vector<int>& s) {
                                     return d1.apply(args.w2(t[0], s[0]));
                                 }));
    bb.set(3, 0, 1, build_tensor(3, 0, h0, h1, b.m.space.dim1,
                                 [&](const std::vector<int>& t, const std::vector<int>&) {
                                     return d1.apply(args.w3(t[0], t[1], t[2]));
                                 }));
    require(map_values(bb, b.phi.m0, b.phi.m1).is_zero(),
            "strong_map_invariance: B escapes ker phi");
    Subspace vs0(fb.v0_in_m0, b.m.space.dim0), vs1(fb.v1_in_m1, b.m.space.dim1);
    Cochain bv = cochain_into_subspace(bb, vs0, vs1);
    Cochain diff = ma.theta - mb.theta;
    CochainLayout l3 = cochain_space(fa.action, 3);
    out.coboundary_identity = flatten(diff, l3) == flatten(coboundary_apply(fa.action, bv), l3);
    out.classes_equal = ma.class_id == mb.class_id;
    return out;
}

CheckReport elementary_equivalence_check(const CrossedModule& a, const CrossedModule& b,
                                         const Lie2Hom& f, const Lie2Hom& g,
                                         const MultiTensor& tau) {
    CheckReport rep = check_cm_morphism(a, b, f, g, tau);
    FourTermData fa = four_term_sequence(a);
    FourTermData fb = four_term_sequence(b);
    if (fa.h.space.dim0 != fb.h.space.dim0 || fa.h.space.dim1 != fb.h.space.dim1 ||
        !((fb.pi0 * g.maps.m0 * fa.s0) == RationalMatrix::identity(fa.h.space.dim0)) ||
        !((fb.pi1 * g.maps.m1 * fa.s1) == RationalMatrix::identity(fa.h.space.dim1)))
        rep.failures.push_back({"diagram: identity on h", {}, ""});
    int v0 = static_cast<int>(fa.v0_in_m0.size());
    if (v0 != static_cast<int>(fb.v0_in_m0.size()))
        rep.failures.push_back({"diagram: identity on V", {}, ""});
    else
        for (int i = 0; i < v0; ++i)
            if (f.maps.m0.apply(fa.v0_in_m0[i]) != fb.v0_in_m0[i])
                rep.failures.push_back({"diagram: identity on V", {{0, i}}, ""});
    if (!g.phi2.is_zero()) rep.failures.push_back({"side condition: G2 = 0", {}, ""});
    Subspace vb1(fb.v1_in_m1, b.m.space.dim1);
    for (int c = 0; c < tau.cols(); ++c)
        if (!vb1.contains(tau.coeffs().col(c))) {
            rep.failures.push_back({"side condition: Img tau in i'(V)", {}, ""});
            break;
        }
    int g0 = a.g.space.dim0;
    for (int x = 0; x < g0; ++x)
        for (const auto& v : fa.v0_in_m0)
            if (!vec_is_zero(tau.evaluate({basis_vec(g0, x)}, {v})))
                rep.failures.push_back({"side condition: tau(g0 ^ i(V)) = 0", {{0, x}}, ""});
    int m0 = a.m.space.dim0;
    for (int al = 0; al < m0; ++al)
        for (int be = 0; be < m0; ++be) {
            Vec lhs = tau.evaluate({a.phi.m0.col(al)}, {basis_vec(m0, be)});
            Vec rhs =
                vec_scale(Rational(-1), tau.evaluate({a.phi.m0.col(be)}, {basis_vec(m0, al)}));
            if (lhs != rhs)
                rep.failures.push_back(
                    {"side condition: tau(phi0 alpha, beta) = tau(alpha, phi0 beta)",
                     {{0, al}, {0, be}},
                     ""});
        }
    return rep;
}

// ---------------------------------------------------------------------------
// Gauge transformations
// ---------------------------------------------------------------------------

GaugeResult gauge_transform(const ExtensionDatum& e, const Cochain& a, const Cochain& r_on_h) {
    require(a.degree() == 1, "gauge_transform: A must have degree 1");
    require(r_on_h.degree() == 2, "gauge_transform: R must have degree 2");
    LambdaContext ctx = lambda_context(e);
    int g0 = e.g.space.dim0, g1 = e.g.space.dim1;
    Cochain lambda2 = e.lambda + coboundary_apply(e.v, a) +
                      pullback_args(r_on_h, GradedMap(ctx.quo.proj0, ctx.quo.proj1), g0, g1);
    ExtensionDatum e2{e.g, e.k, e.v, lambda2};
    GaugeResult out;
    out.target = epsilon_lambda(e);
    out.source = epsilon_lambda(e2);
    const auto& kb0 = e.k.s0.basis();
    const auto& kb1 = e.k.s1.basis();
    int k0 = static_cast<int>(kb0.size()), k1 = static_cast<int>(kb1.size());
    int v0 = e.v.space.dim0, v1 = e.v.space.dim1;
    int m0 = k0 + v0, m1 = k1 + v1;
    MultiTensor a0 = a.block(1, 0, 0);
    MultiTensor a1 = a.block(0, 1, 1);
    MultiTensor a2 = a.block(2, 0, 1);
    RationalMatrix f0 = RationalMatrix::identity(m0);
    for (int j = 0; j < k0; ++j) {
        Vec av = a0.evaluate({kb0[j]}, {});
        for (int t = 0; t < v0; ++t) f0.at(k0 + t, j) += av[t];
    }
    RationalMatrix f1 = RationalMatrix::identity(m1);
    for (int j = 0; j < k1; ++j) {
        Vec av = a1.evaluate({}, {kb1[j]});
        for (int t = 0; t < v1; ++t) f1.at(k1 + t, j) += av[t];
    }
    MultiTensor f2(2, 0, m0, m1, m1);
    for (int i = 0; i < k0; ++i)
        for (int j = i + 1; j < k0; ++j) {
            Vec av = a2.evaluate({kb0[i], kb0[j]}, {});
            for (int t = 0; t < v1; ++t)
                if (!av[t].is_zero()) f2.add({i, j}, {}, k1 + t, av[t]);
        }
    out.f = make_hom(out.source.m, out.target.m, GradedMap(f0, f1), std::move(f2));
    auto inv0 = inverse(f0), inv1 = inverse(f1);
    require(inv0.has_value() && inv1.has_value(), "gauge_transform: F is not invertible");
    out.f_inverse = GradedMap(*inv0, *inv1);
    out.tau = MultiTensor(1, 1, g0, m0, m1);
    for (int x = 0; x < g0; ++x)
        for (int j = 0; j < k0; ++j) {
            Vec av = a2.evaluate({basis_vec(g0, x), kb0[j]}, {});
            for (int t = 0; t < v1; ++t)
                if (!av[t].is_zero()) out.tau.add({x}, {j}, k1 + t, av[t]);
        }
    out.morphism =
        check_cm_morphism(out.source, out.target, out.f, Lie2Hom::identity(e.g), out.tau);
    return out;
}

}  // namespace lie2kit
