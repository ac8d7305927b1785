#ifndef LIE2KIT_GRADED_HPP
#define LIE2KIT_GRADED_HPP

#include "lie2kit/ratlin.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lie2kit {

/// Two-term graded vector space V1 --diff--> V0.
struct TwoTermSpace {
    int dim0 = 0;
    int dim1 = 0;
    RationalMatrix diff;  // dim0 x dim1

    TwoTermSpace() = default;
    TwoTermSpace(int d0, int d1) : dim0(d0), dim1(d1), diff(d0, d1) {}
    TwoTermSpace(int d0, int d1, RationalMatrix d) : dim0(d0), dim1(d1), diff(std::move(d)) {
        if (diff.rows() != dim0 || diff.cols() != dim1)
            throw std::runtime_error("TwoTermSpace: differential shape mismatch");
    }
    int dim(int degree) const { return degree == 0 ? dim0 : degree == 1 ? dim1 : 0; }
};

/// Three-term graded vector space V2 --diff21--> V1 --diff10--> V0 with
/// diff10 * diff21 = 0.
struct ThreeTermSpace {
    int dim0 = 0, dim1 = 0, dim2 = 0;
    RationalMatrix diff10;  // dim0 x dim1
    RationalMatrix diff21;  // dim1 x dim2

    ThreeTermSpace() = default;
    ThreeTermSpace(int d0, int d1, int d2, RationalMatrix d10, RationalMatrix d21);
    int dim(int degree) const {
        return degree == 0 ? dim0 : degree == 1 ? dim1 : degree == 2 ? dim2 : 0;
    }
};

/// Degreewise pair of linear maps between two-term spaces.
struct GradedMap {
    RationalMatrix m0;  // W0 <- V0
    RationalMatrix m1;  // W1 <- V1

    GradedMap() = default;
    GradedMap(RationalMatrix a0, RationalMatrix a1) : m0(std::move(a0)), m1(std::move(a1)) {}
    static GradedMap identity(const TwoTermSpace& v) {
        return GradedMap(RationalMatrix::identity(v.dim0), RationalMatrix::identity(v.dim1));
    }
    static GradedMap zero(const TwoTermSpace& src, const TwoTermSpace& dst) {
        return GradedMap(RationalMatrix(dst.dim0, src.dim0), RationalMatrix(dst.dim1, src.dim1));
    }
    /// m0 * diff_src = diff_dst * m1.
    bool is_chain_map(const TwoTermSpace& src, const TwoTermSpace& dst) const {
        return (m0 * src.diff) == (dst.diff * m1);
    }
    GradedMap compose(const GradedMap& inner) const { return GradedMap(m0 * inner.m0, m1 * inner.m1); }
};

// ---------------------------------------------------------------------------
// Permutations and signs
// ---------------------------------------------------------------------------

struct SignedPerm {
    std::vector<int> perm;  // perm[k] = source position of slot k (0-based)
    int sign;               // ordinary sgn
};

/// All (i, n-i)-unshuffles: permutations ascending on the first i slots and on
/// the last n-i slots, with ordinary signs. C(n, i) of them.
std::vector<SignedPerm> unshuffles(int i, int n);

/// Koszul sign of a permutation acting on elements of the given degrees:
/// (-1)^(d_a*d_b) per adjacent transposition, with no ordinary-sign factor.
int koszul_sign(const std::vector<int>& perm, const std::vector<int>& degrees);

/// Combined graded sign sgn(perm) * koszul_sign(perm, degrees).
int graded_sign(const std::vector<int>& perm, const std::vector<int>& degrees);

// ---------------------------------------------------------------------------
// Canonical tuple indexing
// ---------------------------------------------------------------------------

/// Fixed lexicographic bijection between canonical index tuples and flat
/// columns: strictly increasing p-tuples over [0, dim_anti) crossed with
/// weakly increasing q-tuples over [0, dim_sym), antisymmetric block major.
class BasisIndexer {
public:
    BasisIndexer(int p, int q, int dim_anti, int dim_sym);

    int p() const { return p_; }
    int q() const { return q_; }
    int anti_count() const { return n_anti_; }
    int sym_count() const { return n_sym_; }
    int size() const { return n_anti_ * n_sym_; }

    int index(const std::vector<int>& anti, const std::vector<int>& sym) const;
    void tuple(int col, std::vector<int>& anti, std::vector<int>& sym) const;

    const std::vector<std::vector<int>>& anti_tuples() const { return anti_tuples_; }
    const std::vector<std::vector<int>>& sym_tuples() const { return sym_tuples_; }

private:
    int p_, q_, dim_anti_, dim_sym_;
    int n_anti_, n_sym_;
    std::vector<std::vector<int>> anti_tuples_;
    std::vector<std::vector<int>> sym_tuples_;
};

// ---------------------------------------------------------------------------
// MultiTensor
// ---------------------------------------------------------------------------

/// Multilinear map Lambda^p A (x) Sym^q B -> T stored on the canonical tuple
/// basis: antisymmetric in the A block, symmetric in the B block. For cochains
/// A = g0, B = g1 and T is a module piece; other roles reinterpret the blocks
/// (the dims are explicit, nothing is tied to one space).
class MultiTensor {
public:
    MultiTensor() : p_(0), q_(0), dim_anti_(0), dim_sym_(0), target_dim_(0), indexer_(0, 0, 0, 0) {}
    MultiTensor(int p, int q, int dim_anti, int dim_sym, int target_dim);

    int p() const { return p_; }
    int q() const { return q_; }
    int dim_anti() const { return dim_anti_; }
    int dim_sym() const { return dim_sym_; }
    int target_dim() const { return target_dim_; }
    int cols() const { return indexer_.size(); }
    const BasisIndexer& indexer() const { return indexer_; }
    const RationalMatrix& coeffs() const { return coeffs_; }
    RationalMatrix& coeffs() { return coeffs_; }
    bool is_zero() const { return coeffs_.is_zero(); }

    /// Adds c * (value at the possibly non-canonical tuple): the tuple is
    /// sorted into canonical order, the antisymmetric sign applied; repeated
    /// antisymmetric indices contribute nothing.
    void add(const std::vector<int>& anti, const std::vector<int>& sym, int out, const Rational& c);

    /// Column of coefficients at a canonical tuple.
    Vec at_tuple(const std::vector<int>& anti, const std::vector<int>& sym) const;
    /// Value at an arbitrary tuple of basis indices (signed, canonicalized).
    Vec value(const std::vector<int>& anti, const std::vector<int>& sym) const;

    /// Multilinear evaluation on vector arguments: antisymmetric in xs,
    /// symmetric in as.
    Vec evaluate(const std::vector<Vec>& xs, const std::vector<Vec>& as) const;

    MultiTensor operator+(const MultiTensor& o) const;
    MultiTensor operator-() const;
    MultiTensor scaled(const Rational& c) const;
    friend bool operator==(const MultiTensor& a, const MultiTensor& b) {
        return a.p_ == b.p_ && a.q_ == b.q_ && a.dim_anti_ == b.dim_anti_ &&
               a.dim_sym_ == b.dim_sym_ && a.coeffs_ == b.coeffs_;
    }

private:
    int p_, q_, dim_anti_, dim_sym_, target_dim_;
    BasisIndexer indexer_;
    RationalMatrix coeffs_;  // target_dim x indexer.size()
};

/// Sorts a tuple ascending; returns the permutation sign, or 0 on repeats.
int sort_strict(std::vector<int>& idx);

/// Builds a tensor from its values on canonical tuples.
template <typename F>
MultiTensor build_tensor(int p, int q, int dim_anti, int dim_sym, int target_dim, F&& value) {
    MultiTensor t(p, q, dim_anti, dim_sym, target_dim);
    for (int c = 0; c < t.cols(); ++c) {
        std::vector<int> anti, sym;
        t.indexer().tuple(c, anti, sym);
        Vec v = value(anti, sym);
        for (int k = 0; k < target_dim; ++k) t.coeffs().at(k, c) = v[k];
    }
    return t;
}

long binomial(int n, int k);
long multiset_count(int n, int k);  // C(n+k-1, k)

/// Basis vector e_i of Q^n.
Vec basis_vec(int n, int i);

}  // namespace lie2kit

#endif
