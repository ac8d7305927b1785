#include "lie2kit/repcoh.hpp"

#include <algorithm>
#include <sstream>

namespace lie2kit {

// ---------------------------------------------------------------------------
// Flattening helpers
// ---------------------------------------------------------------------------

Vec flatten_matrix(const RationalMatrix& m) {
    Vec v;
    v.reserve(static_cast<size_t>(m.rows()) * m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
    return v;
}

RationalMatrix unflatten_matrix(const Vec& v, int rows, int cols) {
    RationalMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = v[static_cast<size_t>(i) * cols + j];
    return m;
}

Vec flatten_pair(const RationalMatrix& x0, const RationalMatrix& x1) {
    return vec_concat(flatten_matrix(x0), flatten_matrix(x1));
}

std::pair<RationalMatrix, RationalMatrix> unflatten_pair(const Vec& v, int n0, int n1) {
    Vec a(v.begin(), v.begin() + static_cast<long>(n0) * n0);
    Vec b(v.begin() + static_cast<long>(n0) * n0, v.end());
    return {unflatten_matrix(a, n0, n0), unflatten_matrix(b, n1, n1)};
}

// ---------------------------------------------------------------------------
// End(V)
// ---------------------------------------------------------------------------

EndAlgebra end_algebra(const TwoTermSpace& v) {
    int n0 = v.dim0, n1 = v.dim1;
    int flat = n0 * n0 + n1 * n1;
    // Chain-endomorphism constraint X0 diff = diff X1, rows indexed by (i,j).
    RationalMatrix c(n0 * n1, flat);
    for (int i = 0; i < n0; ++i)
        for (int j = 0; j < n1; ++j) {
            int row = i * n1 + j;
            for (int k = 0; k < n0; ++k) c.at(row, i * n0 + k) += v.diff.at(k, j);
            for (int k = 0; k < n1; ++k) c.at(row, n0 * n0 + k * n1 + j) -= v.diff.at(i, k);
        }
    EndAlgebra e;
    e.v = v;
    e.end0 = Subspace(kernel_basis(c), flat);

    int d0 = e.end0.dim();
    int d1 = n0 * n1;
    auto theta_mat = [&](int idx) {
        RationalMatrix t(n1, n0);
        t.at(idx / n0, idx % n0) = Rational(1);
        return t;
    };
    RationalMatrix diff(d0, d1);
    for (int j = 0; j < d1; ++j) {
        RationalMatrix th = theta_mat(j);
        Vec im = flatten_pair(v.diff * th, th * v.diff);
        auto co = e.end0.coords(im);
        if (!co) throw std::runtime_error("end_algebra: delta(Theta) outside End0");
        for (int i = 0; i < d0; ++i) diff.at(i, j) = (*co)[i];
    }
    Lie2Algebra alg(TwoTermSpace(d0, d1, diff));
    std::vector<std::pair<RationalMatrix, RationalMatrix>> basis;
    for (const auto& b : e.end0.basis()) basis.push_back(unflatten_pair(b, n0, n1));
    for (int i = 0; i < d0; ++i)
        for (int j = i + 1; j < d0; ++j) {
            RationalMatrix c0 = basis[i].first * basis[j].first - basis[j].first * basis[i].first;
            RationalMatrix c1 = basis[i].second * basis[j].second - basis[j].second * basis[i].second;
            auto co = e.end0.coords(flatten_pair(c0, c1));
            if (!co) throw std::runtime_error("end_algebra: commutator outside End0");
            for (int t = 0; t < d0; ++t)
                if (!(*co)[t].is_zero()) alg.l2_00.add({i, j}, {}, t, (*co)[t]);
        }
    for (int i = 0; i < d0; ++i)
        for (int j = 0; j < d1; ++j) {
            RationalMatrix th = theta_mat(j);
            RationalMatrix br = basis[i].second * th - th * basis[i].first;
            Vec fl = flatten_matrix(br);
            for (int t = 0; t < d1; ++t)
                if (!fl[t].is_zero()) alg.l2_01.add({i}, {j}, t, fl[t]);
        }
    e.alg = std::move(alg);
    return e;
}

// ---------------------------------------------------------------------------
// Modules
// ---------------------------------------------------------------------------

Lie2Module::Lie2Module(Lie2Algebra g, TwoTermSpace v) : algebra(std::move(g)), space(std::move(v)) {
    int g0 = algebra.space.dim0, g1 = algebra.space.dim1;
    act00 = MultiTensor(1, 1, g0, space.dim0, space.dim0);
    act01 = MultiTensor(1, 1, g0, space.dim1, space.dim1);
    act10 = MultiTensor(1, 1, g1, space.dim0, space.dim1);
    act2 = MultiTensor(2, 1, g0, space.dim0, space.dim1);
}

Lie2Module trivial_module(const Lie2Algebra& g, const TwoTermSpace& v) {
    return Lie2Module(g, v);
}

Lie2Module adjoint_module(const Lie2Algebra& g) {
    int n0 = g.space.dim0, n1 = g.space.dim1;
    Lie2Module m(g, g.space);
    m.act00 = build_tensor(1, 1, n0, n0, n0,
                           [&](const std::vector<int>& a, const std::vector<int>& s) {
                               return g.l2_00.value({a[0], s[0]}, {});
                           });
    m.act01 = build_tensor(1, 1, n0, n1, n1,
                           [&](const std::vector<int>& a, const std::vector<int>& s) {
                               return g.l2_01.value({a[0]}, {s[0]});
                           });
    m.act10 = build_tensor(1, 1, n1, n0, n1,
                           [&](const std::vector<int>& a, const std::vector<int>& s) {
                               return vec_scale(Rational(-1), g.l2_01.value({s[0]}, {a[0]}));
                           });
    m.act2 = build_tensor(2, 1, n0, n0, n1,
                          [&](const std::vector<int>& a, const std::vector<int>& s) {
                              return vec_scale(Rational(-1), g.l3.value({a[0], a[1], s[0]}, {}));
                          });
    return m;
}

CheckReport check_action(const Lie2Module& m) {
    CheckReport rep;
    const Lie2Algebra& g = m.algebra;
    int g0 = g.space.dim0, g1 = g.space.dim1;
    int v0 = m.space.dim0, v1 = m.space.dim1;
    EndAlgebra e = end_algebra(m.space);
    RationalMatrix phi0(e.alg.space.dim0, g0);
    for (int x = 0; x < g0; ++x) {
        RationalMatrix x0(v0, v0), x1(v1, v1);
        for (int u = 0; u < v0; ++u) {
            Vec im = m.act00.value({x}, {u});
            for (int t = 0; t < v0; ++t) x0.at(t, u) = im[t];
        }
        for (int u = 0; u < v1; ++u) {
            Vec im = m.act01.value({x}, {u});
            for (int t = 0; t < v1; ++t) x1.at(t, u) = im[t];
        }
        auto co = e.end0.coords(flatten_pair(x0, x1));
        if (!co) {
            rep.failures.push_back({"action: phi0(x) is not a chain endomorphism", {{0, x}}, ""});
            continue;
        }
        for (int t = 0; t < e.alg.space.dim0; ++t) phi0.at(t, x) = (*co)[t];
    }
    if (!rep.ok()) return rep;
    RationalMatrix phi1(v0 * v1, g1);
    for (int a = 0; a < g1; ++a) {
        RationalMatrix th(v1, v0);
        for (int u = 0; u < v0; ++u) {
            Vec im = m.act10.value({a}, {u});
            for (int t = 0; t < v1; ++t) th.at(t, u) = im[t];
        }
        Vec fl = flatten_matrix(th);
        for (int t = 0; t < v0 * v1; ++t) phi1.at(t, a) = fl[t];
    }
    MultiTensor phi2(2, 0, g0, g1, v0 * v1);
    for (int x = 0; x < g0; ++x)
        for (int y = x + 1; y < g0; ++y) {
            RationalMatrix th(v1, v0);
            for (int u = 0; u < v0; ++u) {
                Vec im = m.act2.value({x, y}, {u});
                for (int t = 0; t < v1; ++t) th.at(t, u) = im[t];
            }
            Vec fl = flatten_matrix(th);
            for (int t = 0; t < v0 * v1; ++t)
                if (!fl[t].is_zero()) phi2.add({x, y}, {}, t, fl[t]);
        }
    rep.merge(check_hom(make_hom(g, e.alg, GradedMap(phi0, phi1), std::move(phi2))));
    return rep;
}

// ---------------------------------------------------------------------------
// Cochains
// ---------------------------------------------------------------------------

MultiTensor Cochain::block(int p, int q, int s) const {
    auto it = blocks_.find({p, q, s});
    if (it != blocks_.end()) return it->second;
    return MultiTensor(p, q, g0_, g1_, vdim(s));
}

MultiTensor& Cochain::ensure(int p, int q, int s) {
    auto it = blocks_.find({p, q, s});
    if (it == blocks_.end())
        it = blocks_.emplace(BlockKey{p, q, s}, MultiTensor(p, q, g0_, g1_, vdim(s))).first;
    return it->second;
}

void Cochain::set(int p, int q, int s, MultiTensor t) {
    if (p + 2 * q - s != degree_) throw std::runtime_error("Cochain::set: block degree mismatch");
    blocks_[BlockKey{p, q, s}] = std::move(t);
}

bool Cochain::is_zero() const {
    for (const auto& [k, t] : blocks_)
        if (!t.is_zero()) return false;
    return true;
}

Cochain Cochain::operator+(const Cochain& o) const {
    Cochain r = *this;
    for (const auto& [k, t] : o.blocks_) {
        if (t.is_zero()) continue;
        MultiTensor& mine = r.ensure(k.p, k.q, k.s);
        mine = mine + t;
    }
    return r;
}

Cochain Cochain::operator-(const Cochain& o) const { return *this + o.scaled(Rational(-1)); }

Cochain Cochain::scaled(const Rational& c) const {
    Cochain r = *this;
    for (auto& [k, t] : r.blocks_) t = t.scaled(c);
    return r;
}

const CochainBlock* CochainLayout::find(int p, int q, int s) const {
    for (const auto& b : blocks)
        if (b.p == p && b.q == q && b.s == s) return &b;
    return nullptr;
}

CochainLayout cochain_space(const Lie2Module& m, int n) {
    CochainLayout lay;
    lay.degree = n;
    int g0 = m.algebra.space.dim0, g1 = m.algebra.space.dim1;
    for (int s = 0; s <= 1; ++s) {
        std::vector<CochainBlock> svec;
        for (int q = 0; 2 * q <= n + s; ++q) {
            int p = n + s - 2 * q;
            if (p < 0) continue;
            int vd = s == 0 ? m.space.dim0 : m.space.dim1;
            long cols = binomial(g0, p) * multiset_count(g1, q);
            svec.push_back({p, q, s, static_cast<int>(cols) * vd, 0});
        }
        std::sort(svec.begin(), svec.end(),
                  [](const CochainBlock& a, const CochainBlock& b) {
                      return a.p != b.p ? a.p < b.p : a.q < b.q;
                  });
        for (auto& b : svec) lay.blocks.push_back(b);
    }
    for (auto& b : lay.blocks) {
        b.offset = lay.total;
        lay.total += b.dim;
    }
    return lay;
}

Vec flatten(const Cochain& c, const CochainLayout& layout) {
    Vec v = vec_zero(layout.total);
    for (const auto& b : layout.blocks) {
        if (!c.has(b.p, b.q, b.s)) continue;
        MultiTensor t = c.block(b.p, b.q, b.s);
        int td = t.target_dim();
        for (int col = 0; col < t.cols(); ++col)
            for (int k = 0; k < td; ++k) v[b.offset + col * td + k] = t.coeffs().at(k, col);
    }
    return v;
}

Cochain unflatten(const Lie2Module& m, const CochainLayout& layout, const Vec& v) {
    Cochain c(layout.degree, m.algebra.space.dim0, m.algebra.space.dim1, m.space.dim0,
              m.space.dim1);
    for (const auto& b : layout.blocks) {
        if (b.dim == 0) continue;
        MultiTensor& t = c.ensure(b.p, b.q, b.s);
        int td = t.target_dim();
        for (int col = 0; col < t.cols(); ++col)
            for (int k = 0; k < td; ++k) t.coeffs().at(k, col) = v[b.offset + col * td + k];
    }
    return c;
}

Cochain pullback_args(const Cochain& f, const GradedMap& t, int src_dim0, int src_dim1) {
    Cochain out(f.degree(), src_dim0, src_dim1, f.v0(), f.v1());
    for (const auto& [k, blk] : f.blocks()) {
        MultiTensor nb = build_tensor(
            k.p, k.q, src_dim0, src_dim1, blk.target_dim(),
            [&](const std::vector<int>& anti, const std::vector<int>& sym) {
                std::vector<Vec> xs, as;
                for (int i : anti) xs.push_back(t.m0.col(i));
                for (int i : sym) as.push_back(t.m1.col(i));
                return blk.evaluate(xs, as);
            });
        out.set(k.p, k.q, k.s, std::move(nb));
    }
    return out;
}

Cochain map_values(const Cochain& f, const RationalMatrix& t0, const RationalMatrix& t1) {
    Cochain out(f.degree(), f.g0(), f.g1(), t0.rows(), t1.rows());
    for (const auto& [k, blk] : f.blocks()) {
        const RationalMatrix& t = k.s == 0 ? t0 : t1;
        MultiTensor nb(k.p, k.q, f.g0(), f.g1(), t.rows());
        nb.coeffs() = t * blk.coeffs();
        out.set(k.p, k.q, k.s, std::move(nb));
    }
    return out;
}

// ---------------------------------------------------------------------------
// The six coboundary components
// ---------------------------------------------------------------------------

namespace {

std::vector<Vec> basis_args(int dim, const std::vector<int>& idx) {
    std::vector<Vec> v;
    for (int i : idx) v.push_back(basis_vec(dim, i));
    return v;
}

}  // namespace

MultiTensor cb_dhat(const Lie2Module& m, const MultiTensor& f, int p, int q, int s) {
    int g0 = m.algebra.space.dim0, g1 = m.algebra.space.dim1;
    int vd = s == 0 ? m.space.dim0 : m.space.dim1;
    Rational sign(p % 2 == 0 ? 1 : -1);
    return build_tensor(p - 1, q + 1, g0, g1, vd,
                        [&](const std::vector<int>& anti, const std::vector<int>& sym) {
                            Vec acc = vec_zero(vd);
                            for (size_t i = 0; i < sym.size(); ++i) {
                                std::vector<Vec> xs = basis_args(g0, anti);
                                xs.push_back(m.algebra.d(basis_vec(g1, sym[i])));
                                std::vector<Vec> as;
                                for (size_t j = 0; j < sym.size(); ++j)
                                    if (j != i) as.push_back(basis_vec(g1, sym[j]));
                                vec_axpy(acc, sign, f.evaluate(xs, as));
                            }
                            return acc;
                        });
}

MultiTensor cb_partialhat(const Lie2Module& m, const MultiTensor& f, int p, int q) {
    Rational sign((p + 2 * q) % 2 == 0 ? 1 : -1);
    MultiTensor out(p, q, m.algebra.space.dim0, m.algebra.space.dim1, m.space.dim0);
    out.coeffs() = (m.space.diff * f.coeffs()).scaled(sign);
    return out;
}

MultiTensor cb_dphi10(const Lie2Module& m, const MultiTensor& f, int p, int q, int s) {
    int g0 = m.algebra.space.dim0, g1 = m.algebra.space.dim1;
    int vd = s == 0 ? m.space.dim0 : m.space.dim1;
    const MultiTensor& act = s == 0 ? m.act00 : m.act01;
    return build_tensor(
        p + 1, q, g0, g1, vd, [&](const std::vector<int>& anti, const std::vector<int>& sym) {
            Vec acc = vec_zero(vd);
            int np = p + 1;
            for (int i = 0; i < np; ++i) {
                std::vector<int> rest;
                for (int k = 0; k < np; ++k)
                    if (k != i) rest.push_back(anti[k]);
                Vec val = f.evaluate(basis_args(g0, rest), basis_args(g1, sym));
                Vec acted = act.evaluate({basis_vec(g0, anti[i])}, {val});
                vec_axpy(acc, Rational(i % 2 == 0 ? 1 : -1), acted);
            }
            for (int i = 0; i < np; ++i)
                for (int j = i + 1; j < np; ++j) {
                    std::vector<Vec> xs;
                    xs.push_back(m.algebra.l2_00.value({anti[i], anti[j]}, {}));
                    for (int k = 0; k < np; ++k)
                        if (k != i && k != j) xs.push_back(basis_vec(g0, anti[k]));
                    vec_axpy(acc, Rational((i + j) % 2 == 0 ? 1 : -1),
                             f.evaluate(xs, basis_args(g1, sym)));
                }
            for (int i = 0; i < np; ++i)
                for (size_t j = 0; j < sym.size(); ++j) {
                    std::vector<int> rest;
                    for (int k = 0; k < np; ++k)
                        if (k != i) rest.push_back(anti[k]);
                    std::vector<Vec> as;
                    for (size_t k = 0; k < sym.size(); ++k)
                        as.push_back(k == j ? m.algebra.l2_01.value({anti[i]}, {sym[k]})
                                            : basis_vec(g1, sym[k]));
                    vec_axpy(acc, Rational(i % 2 == 0 ? -1 : 1),
                             f.evaluate(basis_args(g0, rest), as));
                }
            return acc;
        });
}

MultiTensor cb_dphi01(const Lie2Module& m, const MultiTensor& f, int p, int q) {
    int g0 = m.algebra.space.dim0, g1 = m.algebra.space.dim1;
    Rational sign(p % 2 == 0 ? 1 : -1);
    return build_tensor(p, q + 1, g0, g1, m.space.dim1,
                        [&](const std::vector<int>& anti, const std::vector<int>& sym) {
                            Vec acc = vec_zero(m.space.dim1);
                            for (size_t i = 0; i < sym.size(); ++i) {
                                std::vector<Vec> as;
                                for (size_t j = 0; j < sym.size(); ++j)
                                    if (j != i) as.push_back(basis_vec(g1, sym[j]));
                                Vec val = f.evaluate(basis_args(g0, anti), as);
                                Vec acted = m.act10.evaluate({basis_vec(g1, sym[i])}, {val});
                                vec_axpy(acc, sign, acted);
                            }
                            return acc;
                        });
}

MultiTensor cb_dphi2(const Lie2Module& m, const MultiTensor& f, int p, int q) {
    int g0 = m.algebra.space.dim0, g1 = m.algebra.space.dim1;
    Rational sign((p + 2 * q) % 2 == 0 ? 1 : -1);
    return build_tensor(
        p + 2, q, g0, g1, m.space.dim1,
        [&](const std::vector<int>& anti, const std::vector<int>& sym) {
            Vec acc = vec_zero(m.space.dim1);
            for (const auto& sp : unshuffles(2, p + 2)) {
                std::vector<int> rest;
                for (int k = 2; k < p + 2; ++k) rest.push_back(anti[sp.perm[k]]);
                Vec val = f.evaluate(basis_args(g0, rest), basis_args(g1, sym));
                Vec acted = m.act2.evaluate(
                    {basis_vec(g0, anti[sp.perm[0]]), basis_vec(g0, anti[sp.perm[1]])}, {val});
                vec_axpy(acc, sign * Rational(sp.sign), acted);
            }
            return acc;
        });
}

MultiTensor cb_dl3(const Lie2Module& m, const MultiTensor& f, int p, int q, int s) {
    int g0 = m.algebra.space.dim0, g1 = m.algebra.space.dim1;
    int vd = s == 0 ? m.space.dim0 : m.space.dim1;
    return build_tensor(
        p + 3, q - 1, g0, g1, vd, [&](const std::vector<int>& anti, const std::vector<int>& sym) {
            Vec acc = vec_zero(vd);
            for (const auto& sp : unshuffles(3, p + 3)) {
                std::vector<Vec> xs;
                for (int k = 3; k < p + 3; ++k) xs.push_back(basis_vec(g0, anti[sp.perm[k]]));
                std::vector<Vec> as = basis_args(g1, sym);
                as.push_back(m.algebra.l3.value(
                    {anti[sp.perm[0]], anti[sp.perm[1]], anti[sp.perm[2]]}, {}));
                vec_axpy(acc, Rational(-sp.sign), f.evaluate(xs, as));
            }
            return acc;
        });
}

Cochain coboundary_apply(const Lie2Module& m, const Cochain& c) {
    int g0 = m.algebra.space.dim0, g1 = m.algebra.space.dim1;
    Cochain out(c.degree() + 1, g0, g1, m.space.dim0, m.space.dim1);
    auto accumulate = [&](int p, int q, int s, const MultiTensor& t) {
        if (t.cols() == 0 || t.target_dim() == 0) return;
        MultiTensor& mine = out.ensure(p, q, s);
        mine = mine + t;
    };
    for (const auto& [k, f] : c.blocks()) {
        if (k.p >= 1) accumulate(k.p - 1, k.q + 1, k.s, cb_dhat(m, f, k.p, k.q, k.s));
        if (k.s == 1) accumulate(k.p, k.q, 0, cb_partialhat(m, f, k.p, k.q));
        accumulate(k.p + 1, k.q, k.s, cb_dphi10(m, f, k.p, k.q, k.s));
        if (k.s == 0) accumulate(k.p, k.q + 1, 1, cb_dphi01(m, f, k.p, k.q));
        if (k.s == 0) accumulate(k.p + 2, k.q, 1, cb_dphi2(m, f, k.p, k.q));
        if (k.q >= 1) accumulate(k.p + 3, k.q - 1, k.s, cb_dl3(m, f, k.p, k.q, k.s));
    }
    return out;
}

RationalMatrix coboundary(const Lie2Module& m, int n) {
    CochainLayout src = cochain_space(m, n);
    CochainLayout dst = cochain_space(m, n + 1);
    RationalMatrix d(dst.total, src.total);
    for (const auto& b : src.blocks) {
        if (b.dim == 0) continue;
        MultiTensor proto(b.p, b.q, m.algebra.space.dim0, m.algebra.space.dim1, m.space.dim(b.s));
        int td = proto.target_dim();
        for (int col = 0; col < proto.cols(); ++col)
            for (int k = 0; k < td; ++k) {
                Cochain e(n, m.algebra.space.dim0, m.algebra.space.dim1, m.space.dim0,
                          m.space.dim1);
                MultiTensor t = proto;
                t.coeffs().at(k, col) = Rational(1);
                e.set(b.p, b.q, b.s, std::move(t));
                Vec out = flatten(coboundary_apply(m, e), dst);
                int src_index = b.offset + col * td + k;
                for (int r = 0; r < dst.total; ++r)
                    if (!out[r].is_zero()) d.at(r, src_index) = out[r];
            }
    }
    return d;
}

// ---------------------------------------------------------------------------
// Cohomology
// ---------------------------------------------------------------------------

CohomologyResult cohomology(const Lie2Module& m, int n) {
    CohomologyResult res;
    res.layout = cochain_space(m, n);
    RationalMatrix dn = coboundary(m, n);
    res.boundary_below = coboundary(m, n - 1);
    std::vector<Vec> ker = kernel_basis(dn);
    int rk_below = rank(res.boundary_below);
    res.betti = static_cast<int>(ker.size()) - rk_below;
    std::vector<Vec> chosen = Subspace(image_basis(res.boundary_below), res.layout.total).basis();
    for (const auto& k : ker) {
        Subspace cur(chosen, res.layout.total);
        if (cur.contains(k)) continue;
        chosen.push_back(k);
        res.rep_flat.push_back(k);
        res.representatives.push_back(unflatten(m, res.layout, k));
    }
    if (static_cast<int>(res.rep_flat.size()) != res.betti)
        throw std::runtime_error("cohomology: representative count mismatch");
    return res;
}

std::optional<Vec> class_coordinates(const CohomologyResult& h, const Vec& cocycle_flat) {
    int reps = static_cast<int>(h.rep_flat.size());
    RationalMatrix sys(h.layout.total, reps + h.boundary_below.cols());
    for (int j = 0; j < reps; ++j)
        for (int i = 0; i < h.layout.total; ++i) sys.at(i, j) = h.rep_flat[j][i];
    for (int j = 0; j < h.boundary_below.cols(); ++j)
        for (int i = 0; i < h.layout.total; ++i) sys.at(i, reps + j) = h.boundary_below.at(i, j);
    auto sol = solve(sys, cocycle_flat);
    if (!sol) return std::nullopt;
    return Vec(sol->begin(), sol->begin() + reps);
}

// ---------------------------------------------------------------------------
// Low-degree formulas
// ---------------------------------------------------------------------------

CheckReport one_cocycle_residuals(const Lie2Module& m, const RationalMatrix& x0,
                                  const RationalMatrix& x1, const MultiTensor& lx) {
    CheckReport rep;
    const Lie2Algebra& g = m.algebra;
    int g0 = g.space.dim0, g1 = g.space.dim1;

    // (2) X0 d = dV X1
    RationalMatrix r2 = x0 * g.space.diff - m.space.diff * x1;
    for (int a = 0; a < g1; ++a)
        if (!vec_is_zero(r2.col(a)))
            rep.failures.push_back({"cocycle equation (2)", {{1, a}}, "X0 d != dV X1"});

    // (3) dV lX(x,y) = X[x,y] + y|>Xx - x|>Xy
    for (int x = 0; x < g0; ++x)
        for (int y = x + 1; y < g0; ++y) {
            Vec lhs = m.space.diff.apply(lx.value({x, y}, {}));
            Vec rhs = x0.apply(g.l2_00.value({x, y}, {}));
            vec_axpy(rhs, Rational(1), m.a00(basis_vec(g0, y), x0.col(x)));
            vec_axpy(rhs, Rational(-1), m.a00(basis_vec(g0, x), x0.col(y)));
            if (lhs != rhs) rep.failures.push_back({"cocycle equation (3)", {{0, x}, {0, y}}, ""});
        }

    // (4) lX(x,da) = X[x,a] + a|>Xx - x|>Xa
    for (int x = 0; x < g0; ++x)
        for (int a = 0; a < g1; ++a) {
            Vec lhs = lx.evaluate({basis_vec(g0, x), g.d(basis_vec(g1, a))}, {});
            Vec rhs = x1.apply(g.l2_01.value({x}, {a}));
            vec_axpy(rhs, Rational(1), m.a10(basis_vec(g1, a), x0.col(x)));
            vec_axpy(rhs, Rational(-1), m.a01(basis_vec(g0, x), x1.col(a)));
            if (lhs != rhs) rep.failures.push_back({"cocycle equation (4)", {{0, x}, {1, a}}, ""});
        }

    // (5) X l3(x,y,z) = lX(x,[y,z]) + x|>lX(y,z) - (y,z)|>Xx + c.p.(x,y,z)
    for (int x = 0; x < g0; ++x)
        for (int y = x + 1; y < g0; ++y)
            for (int z = y + 1; z < g0; ++z) {
                Vec lhs = x1.apply(g.l3.value({x, y, z}, {}));
                Vec rhs = vec_zero(m.space.dim1);
                int tri[3] = {x, y, z};
                for (int c = 0; c < 3; ++c) {
                    int a = tri[c], b = tri[(c + 1) % 3], cc = tri[(c + 2) % 3];
                    vec_axpy(rhs, Rational(1),
                             lx.evaluate({basis_vec(g0, a), g.l2_00.value({b, cc}, {})}, {}));
                    vec_axpy(rhs, Rational(1), m.a01(basis_vec(g0, a), lx.value({b, cc}, {})));
                    vec_axpy(rhs, Rational(-1),
                             m.a2(basis_vec(g0, b), basis_vec(g0, cc), x0.col(a)));
                }
                if (lhs != rhs)
                    rep.failures.push_back({"cocycle equation (5)", {{0, x}, {0, y}, {0, z}}, ""});
            }
    return rep;
}

Cochain one_coboundary(const Lie2Module& m, const Vec& u, const RationalMatrix& theta) {
    const Lie2Algebra& g = m.algebra;
    int g0 = g.space.dim0, g1 = g.space.dim1;
    Cochain c(1, g0, g1, m.space.dim0, m.space.dim1);
    // X(x) = x|>u - dV Theta(x); X(a) = a|>u - Theta(da);
    // lX(x,y) = (x,y)|>u + x|>Theta(y) - y|>Theta(x) - Theta([x,y]).
    c.set(1, 0, 0,
          build_tensor(1, 0, g0, g1, m.space.dim0,
                       [&](const std::vector<int>& a, const std::vector<int>&) {
                           Vec r = m.a00(basis_vec(g0, a[0]), u);
                           vec_axpy(r, Rational(-1), m.space.diff.apply(theta.col(a[0])));
                           return r;
                       }));
    c.set(0, 1, 1,
          build_tensor(0, 1, g0, g1, m.space.dim1,
                       [&](const std::vector<int>&, const std::vector<int>& s) {
                           Vec r = m.a10(basis_vec(g1, s[0]), u);
                           vec_axpy(r, Rational(-1), theta.apply(g.d(basis_vec(g1, s[0]))));
                           return r;
                       }));
    c.set(2, 0, 1,
          build_tensor(2, 0, g0, g1, m.space.dim1,
                       [&](const std::vector<int>& a, const std::vector<int>&) {
                           int x = a[0], y = a[1];
                           Vec r = m.a2(basis_vec(g0, x), basis_vec(g0, y), u);
                           vec_axpy(r, Rational(1), m.a01(basis_vec(g0, x), theta.col(y)));
                           vec_axpy(r, Rational(-1), m.a01(basis_vec(g0, y), theta.col(x)));
                           vec_axpy(r, Rational(-1), theta.apply(g.l2_00.value({x, y}, {})));
                           return r;
                       }));
    return c;
}

Cochain three_coboundary(const Lie2Module& m, const Cochain& lambda) {
    const Lie2Algebra& g = m.algebra;
    int g0 = g.space.dim0, g1 = g.space.dim1;
    int v0 = m.space.dim0, v1 = m.space.dim1;
    MultiTensor l0 = lambda.block(0, 1, 0);
    MultiTensor l1 = lambda.block(2, 0, 0);
    MultiTensor l2c = lambda.block(1, 1, 1);
    MultiTensor l3c = lambda.block(3, 0, 1);
    Cochain out(3, g0, g1, v0, v1);
    auto ex = [&](int i) { return basis_vec(g0, i); };
    auto ef = [&](int i) { return basis_vec(g1, i); };

    // theta0(x,a) = x|>l0(a) - l0([x,a]) + l1(x,da) - dV l2(x,a)
    out.set(1, 1, 0,
            build_tensor(1, 1, g0, g1, v0,
                         [&](const std::vector<int>& a, const std::vector<int>& s) {
                             int x = a[0], aa = s[0];
                             Vec r = m.a00(ex(x), l0.value({}, {aa}));
                             vec_axpy(r, Rational(-1),
                                      l0.evaluate({}, {g.l2_01.value({x}, {aa})}));
                             vec_axpy(r, Rational(1), l1.evaluate({ex(x), g.d(ef(aa))}, {}));
                             vec_axpy(r, Rational(-1), m.space.diff.apply(l2c.value({x}, {aa})));
                             return r;
                         }));

    // theta1(a,b) = a|>l0(b) + b|>l0(a) - l2(da,b) - l2(db,a)
    out.set(0, 2, 1,
            build_tensor(0, 2, g0, g1, v1,
                         [&](const std::vector<int>&, const std::vector<int>& s) {
                             int aa = s[0], bb = s[1];
                             Vec r = m.a10(ef(aa), l0.value({}, {bb}));
                             vec_axpy(r, Rational(1), m.a10(ef(bb), l0.value({}, {aa})));
                             vec_axpy(r, Rational(-1), l2c.evaluate({g.d(ef(aa))}, {ef(bb)}));
                             vec_axpy(r, Rational(-1), l2c.evaluate({g.d(ef(bb))}, {ef(aa)}));
                             return r;
                         }));

    // theta2(x,y,z) = -l0(l3(x,y,z)) + (x|>l1(y,z) - l1([x,y],z) + c.p.) - dV l3(x,y,z)
    out.set(3, 0, 0,
            build_tensor(3, 0, g0, g1, v0,
                         [&](const std::vector<int>& a, const std::vector<int>&) {
                             int x = a[0], y = a[1], z = a[2];
                             Vec r = vec_scale(Rational(-1),
                                               l0.evaluate({}, {g.l3.value({x, y, z}, {})}));
                             int tri[3] = {x, y, z};
                             for (int c = 0; c < 3; ++c) {
                                 int u = tri[c], v = tri[(c + 1) % 3], w = tri[(c + 2) % 3];
                                 vec_axpy(r, Rational(1), m.a00(ex(u), l1.value({v, w}, {})));
                                 vec_axpy(r, Rational(-1),
                                          l1.evaluate({g.l2_00.value({u, v}, {}), ex(w)}, {}));
                             }
                             vec_axpy(r, Rational(-1), m.space.diff.apply(l3c.value({x, y, z}, {})));
                             return r;
                         }));

    // theta3(x,y,a) = (x,y)|>l0(a) + a|>l1(x,y) + x|>l2(y,a) - y|>l2(x,a)
    //               - l2([x,y],a) - l2(y,[x,a]) + l2(x,[y,a]) - l3(x,y,da)
    out.set(2, 1, 1,
            build_tensor(2, 1, g0, g1, v1,
                         [&](const std::vector<int>& a, const std::vector<int>& s) {
                             int x = a[0], y = a[1], aa = s[0];
                             Vec r = m.a2(ex(x), ex(y), l0.value({}, {aa}));
                             vec_axpy(r, Rational(1), m.a10(ef(aa), l1.value({x, y}, {})));
                             vec_axpy(r, Rational(1), m.a01(ex(x), l2c.value({y}, {aa})));
                             vec_axpy(r, Rational(-1), m.a01(ex(y), l2c.value({x}, {aa})));
                             vec_axpy(r, Rational(-1),
                                      l2c.evaluate({g.l2_00.value({x, y}, {})}, {ef(aa)}));
                             vec_axpy(r, Rational(-1),
                                      l2c.evaluate({ex(y)}, {g.l2_01.value({x}, {aa})}));
                             vec_axpy(r, Rational(1),
                                      l2c.evaluate({ex(x)}, {g.l2_01.value({y}, {aa})}));
                             vec_axpy(r, Rational(-1), l3c.evaluate({ex(x), ex(y), g.d(ef(aa))}, {}));
                             return r;
                         }));

    // theta4(x1..x4): see the displayed four sums.
    out.set(4, 0, 1,
            build_tensor(4, 0, g0, g1, v1,
                         [&](const std::vector<int>& a, const std::vector<int>&) {
                             Vec r = vec_zero(v1);
                             for (const auto& sp : unshuffles(2, 4)) {
                                 Vec val = l1.value({a[sp.perm[2]], a[sp.perm[3]]}, {});
                                 vec_axpy(r, Rational(sp.sign),
                                          m.a2(ex(a[sp.perm[0]]), ex(a[sp.perm[1]]), val));
                             }
                             for (const auto& sp : unshuffles(3, 4)) {
                                 Vec val = g.l3.value(
                                     {a[sp.perm[0]], a[sp.perm[1]], a[sp.perm[2]]}, {});
                                 vec_axpy(r, Rational(-sp.sign),
                                          l2c.evaluate({ex(a[sp.perm[3]])}, {val}));
                             }
                             for (int i = 0; i < 4; ++i) {
                                 std::vector<int> rest;
                                 for (int k = 0; k < 4; ++k)
                                     if (k != i) rest.push_back(a[k]);
                                 vec_axpy(r, Rational(i % 2 == 0 ? 1 : -1),
                                          m.a01(ex(a[i]), l3c.value(rest, {})));
                             }
                             for (int i = 0; i < 4; ++i)
                                 for (int j = i + 1; j < 4; ++j) {
                                     std::vector<Vec> xs;
                                     xs.push_back(g.l2_00.value({a[i], a[j]}, {}));
                                     for (int k = 0; k < 4; ++k)
                                         if (k != i && k != j) xs.push_back(ex(a[k]));
                                     vec_axpy(r, Rational((i + j) % 2 == 0 ? 1 : -1),
                                              l3c.evaluate(xs, {}));
                                 }
                             return r;
                         }));
    return out;
}

// ---------------------------------------------------------------------------
// Skeletal derivations
// ---------------------------------------------------------------------------

SkeletalDerivationReport skeletal_derivation_check(const Lie2Algebra& g, const RationalMatrix& x0,
                                                   const RationalMatrix& x1, const MultiTensor& lx) {
    if (!g.space.diff.is_zero())
        throw std::runtime_error("skeletal_derivation_check: algebra is not skeletal");
    SkeletalDerivationReport out;
    Lie2Module adj = adjoint_module(g);
    CheckReport cocycle = one_cocycle_residuals(adj, x0, x1, lx);
    out.cocycle_route = cocycle.ok();
    out.details.merge(cocycle);

    int g0 = g.space.dim0, g1 = g.space.dim1;
    bool classical = true;
    // X in Der(g0 x| g1): X0 derives the g0 bracket, X1 is compatible with the
    // action of g0 on g1.
    for (int x = 0; x < g0 && classical; ++x)
        for (int y = x + 1; y < g0 && classical; ++y) {
            Vec lhs = x0.apply(g.l2_00.value({x, y}, {}));
            Vec rhs = g.l2_00.evaluate({x0.col(x), basis_vec(g0, y)}, {});
            vec_axpy(rhs, Rational(1), g.l2_00.evaluate({basis_vec(g0, x), x0.col(y)}, {}));
            if (lhs != rhs) classical = false;
        }
    for (int x = 0; x < g0 && classical; ++x)
        for (int u = 0; u < g1 && classical; ++u) {
            Vec lhs = x1.apply(g.l2_01.value({x}, {u}));
            Vec rhs = g.l2_01.evaluate({x0.col(x)}, {basis_vec(g1, u)});
            vec_axpy(rhs, Rational(1), g.l2_01.evaluate({basis_vec(g0, x)}, {x1.col(u)}));
            if (lhs != rhs) classical = false;
        }
    // classical coboundary of lX equals [X, l3]
    for (int x = 0; x < g0 && classical; ++x)
        for (int y = x + 1; y < g0 && classical; ++y)
            for (int z = y + 1; z < g0 && classical; ++z) {
                auto lxv = [&](int a, int b) { return lx.value({a, b}, {}); };
                Vec dlx = g.l2_01.evaluate({basis_vec(g0, x)}, {lxv(y, z)});
                vec_axpy(dlx, Rational(-1), g.l2_01.evaluate({basis_vec(g0, y)}, {lxv(x, z)}));
                vec_axpy(dlx, Rational(1), g.l2_01.evaluate({basis_vec(g0, z)}, {lxv(x, y)}));
                vec_axpy(dlx, Rational(-1),
                         lx.evaluate({g.l2_00.value({x, y}, {}), basis_vec(g0, z)}, {}));
                vec_axpy(dlx, Rational(1),
                         lx.evaluate({g.l2_00.value({x, z}, {}), basis_vec(g0, y)}, {}));
                vec_axpy(dlx, Rational(-1),
                         lx.evaluate({g.l2_00.value({y, z}, {}), basis_vec(g0, x)}, {}));
                Vec com = x1.apply(g.l3.value({x, y, z}, {}));
                vec_axpy(com, Rational(-1),
                         g.l3.evaluate({x0.col(x), basis_vec(g0, y), basis_vec(g0, z)}, {}));
                vec_axpy(com, Rational(-1),
                         g.l3.evaluate({basis_vec(g0, x), x0.col(y), basis_vec(g0, z)}, {}));
                vec_axpy(com, Rational(-1),
                         g.l3.evaluate({basis_vec(g0, x), basis_vec(g0, y), x0.col(z)}, {}));
                if (dlx != com) classical = false;
            }
    out.classical_route = classical;
    return out;
}

}  // namespace lie2kit
