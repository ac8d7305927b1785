#include "lie2kit/graded.hpp"

#include <algorithm>
#include <functional>

namespace lie2kit {

ThreeTermSpace::ThreeTermSpace(int d0, int d1, int d2, RationalMatrix d10, RationalMatrix d21)
    : dim0(d0), dim1(d1), dim2(d2), diff10(std::move(d10)), diff21(std::move(d21)) {
    if (diff10.rows() != dim0 || diff10.cols() != dim1 || diff21.rows() != dim1 || diff21.cols() != dim2)
        throw std::runtime_error("ThreeTermSpace: differential shape mismatch");
    if (!(diff10 * diff21).is_zero())
        throw std::runtime_error("ThreeTermSpace: d*d != 0");
}

std::vector<SignedPerm> unshuffles(int i, int n) {
    if (i < 1 || i > n) throw std::runtime_error("unshuffles: need 1 <= i <= n");
    std::vector<SignedPerm> out;
    std::vector<int> head(i);
    // Enumerate i-subsets in lexicographic order; each determines the unshuffle.
    for (int k = 0; k < i; ++k) head[k] = k;
    while (true) {
        SignedPerm sp;
        sp.perm.reserve(n);
        std::vector<bool> used(n, false);
        for (int k : head) { sp.perm.push_back(k); used[k] = true; }
        for (int k = 0; k < n; ++k)
            if (!used[k]) sp.perm.push_back(k);
        int inv = 0;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (sp.perm[a] > sp.perm[b]) ++inv;
        sp.sign = (inv % 2 == 0) ? 1 : -1;
        out.push_back(std::move(sp));
        // next subset
        int k = i - 1;
        while (k >= 0 && head[k] == n - i + k) --k;
        if (k < 0) break;
        ++head[k];
        for (int j = k + 1; j < i; ++j) head[j] = head[j - 1] + 1;
    }
    return out;
}

int koszul_sign(const std::vector<int>& perm, const std::vector<int>& degrees) {
    if (perm.size() != degrees.size()) throw std::runtime_error("koszul_sign: size mismatch");
    // Bubble-sort perm back to the identity; each adjacent swap of entries with
    // source degrees d_a, d_b contributes (-1)^(d_a*d_b).
    std::vector<int> w = perm;
    int sign = 1;
    for (size_t pass = 0; pass + 1 < w.size(); ++pass)
        for (size_t k = 0; k + 1 < w.size(); ++k)
            if (w[k] > w[k + 1]) {
                if ((degrees[w[k]] * degrees[w[k + 1]]) % 2 != 0) sign = -sign;
                std::swap(w[k], w[k + 1]);
            }
    return sign;
}

int graded_sign(const std::vector<int>& perm, const std::vector<int>& degrees) {
    int inv = 0;
    for (size_t a = 0; a < perm.size(); ++a)
        for (size_t b = a + 1; b < perm.size(); ++b)
            if (perm[a] > perm[b]) ++inv;
    int sgn = (inv % 2 == 0) ? 1 : -1;
    return sgn * koszul_sign(perm, degrees);
}

long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int j = 0; j < k; ++j) r = r * (n - j) / (j + 1);
    return r;
}

long multiset_count(int n, int k) {
    if (k == 0) return 1;
    if (n == 0) return 0;
    return binomial(n + k - 1, k);
}

Vec basis_vec(int n, int i) {
    Vec v = vec_zero(n);
    v[i] = Rational(1);
    return v;
}

int sort_strict(std::vector<int>& idx) {
    int sign = 1;
    for (size_t pass = 0; pass + 1 < idx.size(); ++pass)
        for (size_t k = 0; k + 1 < idx.size(); ++k) {
            if (idx[k] == idx[k + 1]) return 0;
            if (idx[k] > idx[k + 1]) { std::swap(idx[k], idx[k + 1]); sign = -sign; }
        }
    if (idx.size() == 2 && idx[0] == idx[1]) return 0;
    return sign;
}

namespace {

void gen_strict(int dim, int p, std::vector<std::vector<int>>& out) {
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == p) { out.push_back(cur); return; }
        for (int v = start; v < dim; ++v) { cur.push_back(v); rec(v + 1); cur.pop_back(); }
    };
    rec(0);
}

void gen_weak(int dim, int q, std::vector<std::vector<int>>& out) {
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == q) { out.push_back(cur); return; }
        for (int v = start; v < dim; ++v) { cur.push_back(v); rec(v); cur.pop_back(); }
    };
    rec(0);
}

}  // namespace

BasisIndexer::BasisIndexer(int p, int q, int dim_anti, int dim_sym)
    : p_(p), q_(q), dim_anti_(dim_anti), dim_sym_(dim_sym) {
    if (p < 0 || q < 0) throw std::runtime_error("BasisIndexer: negative arity");
    gen_strict(dim_anti_, p_, anti_tuples_);
    gen_weak(dim_sym_, q_, sym_tuples_);
    n_anti_ = static_cast<int>(anti_tuples_.size());
    n_sym_ = static_cast<int>(sym_tuples_.size());
}

int BasisIndexer::index(const std::vector<int>& anti, const std::vector<int>& sym) const {
    // Tuples are few at the dimensions this library targets; lookup by scan of
    // the lex-ordered lists keeps index() and tuple() trivially inverse.
    auto find = [](const std::vector<std::vector<int>>& lst, const std::vector<int>& t) {
        auto it = std::lower_bound(lst.begin(), lst.end(), t);
        if (it == lst.end() || *it != t) throw std::runtime_error("BasisIndexer: tuple out of range");
        return static_cast<int>(it - lst.begin());
    };
    return find(anti_tuples_, anti) * n_sym_ + find(sym_tuples_, sym);
}

void BasisIndexer::tuple(int col, std::vector<int>& anti, std::vector<int>& sym) const {
    if (col < 0 || col >= size()) throw std::runtime_error("BasisIndexer: column out of range");
    anti = anti_tuples_[col / n_sym_];
    sym = sym_tuples_[col % n_sym_];
}

MultiTensor::MultiTensor(int p, int q, int dim_anti, int dim_sym, int target_dim)
    : p_(p), q_(q), dim_anti_(dim_anti), dim_sym_(dim_sym), target_dim_(target_dim),
      indexer_(p, q, dim_anti, dim_sym),
      coeffs_(target_dim, indexer_.size()) {}

void MultiTensor::add(const std::vector<int>& anti, const std::vector<int>& sym, int out,
                      const Rational& c) {
    if (static_cast<int>(anti.size()) != p_ || static_cast<int>(sym.size()) != q_)
        throw std::runtime_error("MultiTensor::add: arity mismatch");
    std::vector<int> a = anti;
    int sign = sort_strict(a);
    if (sign == 0) return;
    std::vector<int> s = sym;
    std::sort(s.begin(), s.end());
    int col = indexer_.index(a, s);
    coeffs_.at(out, col) += (sign > 0 ? c : -c);
}

Vec MultiTensor::at_tuple(const std::vector<int>& anti, const std::vector<int>& sym) const {
    return coeffs_.col(indexer_.index(anti, sym));
}

Vec MultiTensor::value(const std::vector<int>& anti, const std::vector<int>& sym) const {
    std::vector<int> a = anti;
    int sign = sort_strict(a);
    if (sign == 0) return vec_zero(target_dim_);
    std::vector<int> s = sym;
    std::sort(s.begin(), s.end());
    Vec v = at_tuple(a, s);
    return sign > 0 ? v : vec_scale(Rational(-1), v);
}

Vec MultiTensor::evaluate(const std::vector<Vec>& xs, const std::vector<Vec>& as) const {
    if (static_cast<int>(xs.size()) != p_ || static_cast<int>(as.size()) != q_)
        throw std::runtime_error("MultiTensor::evaluate: arity mismatch");
    for (const auto& x : xs)
        if (static_cast<int>(x.size()) != dim_anti_)
            throw std::runtime_error("MultiTensor::evaluate: antisymmetric argument dim mismatch");
    for (const auto& a : as)
        if (static_cast<int>(a.size()) != dim_sym_)
            throw std::runtime_error("MultiTensor::evaluate: symmetric argument dim mismatch");
    // Expand arguments over the canonical basis; accumulate the signed weight
    // of every index assignment, then apply the coefficient matrix once.
    Vec weights = vec_zero(indexer_.size());
    std::vector<int> ai(p_), si(q_);
    std::function<void(int, Rational)> rec_sym = [&](int slot, Rational w) {
        if (slot == q_) {
            std::vector<int> a = ai;
            int sign = sort_strict(a);
            if (sign == 0) return;
            std::vector<int> s = si;
            std::sort(s.begin(), s.end());
            Rational ww = sign > 0 ? w : -w;
            weights[indexer_.index(a, s)] += ww;
            return;
        }
        for (int v = 0; v < dim_sym_; ++v) {
            if (as[slot][v].is_zero()) continue;
            si[slot] = v;
            rec_sym(slot + 1, w * as[slot][v]);
        }
    };
    std::function<void(int, Rational)> rec_anti = [&](int slot, Rational w) {
        if (slot == p_) { rec_sym(0, w); return; }
        for (int v = 0; v < dim_anti_; ++v) {
            if (xs[slot][v].is_zero()) continue;
            ai[slot] = v;
            rec_anti(slot + 1, w * xs[slot][v]);
        }
    };
    rec_anti(0, Rational(1));
    Vec out = vec_zero(target_dim_);
    for (int c = 0; c < indexer_.size(); ++c)
        if (!weights[c].is_zero())
            for (int t = 0; t < target_dim_; ++t) out[t] += coeffs_.at(t, c) * weights[c];
    return out;
}

MultiTensor MultiTensor::operator+(const MultiTensor& o) const {
    MultiTensor r = *this;
    r.coeffs_ = coeffs_ + o.coeffs_;
    return r;
}

MultiTensor MultiTensor::operator-() const {
    MultiTensor r = *this;
    r.coeffs_ = -coeffs_;
    return r;
}

MultiTensor MultiTensor::scaled(const Rational& c) const {
    MultiTensor r = *this;
    r.coeffs_ = coeffs_.scaled(c);
    return r;
}

}  // namespace lie2kit
