#ifndef LIE2KIT_LIE2CORE_HPP
#define LIE2KIT_LIE2CORE_HPP

#include "lie2kit/graded.hpp"

#include <functional>
#include <utility>

namespace lie2kit {

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

struct CheckFailure {
    std::string check;                        // label of the violated identity
    std::vector<std::pair<int, int>> args;    // witness tuple: (degree, basis index)
    std::string detail;

    std::string str() const;
};

struct CheckReport {
    std::vector<CheckFailure> failures;
    std::vector<std::string> skipped;  // degree profiles outside the graded range

    bool ok() const { return failures.empty(); }
    void merge(const CheckReport& o);
    std::string summary() const;
};

// ---------------------------------------------------------------------------
// Algebras
// ---------------------------------------------------------------------------

/// Two-term L-infinity algebra: (V1 -d-> V0, l2, l3) as structure-constant
/// tensors. The bracket of two degree-1 elements is identically zero (its
/// target degree is absent), so it is not stored.
struct Lie2Algebra {
    TwoTermSpace space;
    MultiTensor l2_00;  // Lambda^2 g0 -> g0
    MultiTensor l2_01;  // g0 (x) g1 -> g1
    MultiTensor l3;     // Lambda^3 g0 -> g1

    Lie2Algebra() = default;
    explicit Lie2Algebra(TwoTermSpace s);
    Lie2Algebra(TwoTermSpace s, MultiTensor b00, MultiTensor b01, MultiTensor b3);

    int dim(int degree) const { return space.dim(degree); }

    Vec d(const Vec& a) const { return space.diff.apply(a); }
    Vec bracket00(const Vec& x, const Vec& y) const { return l2_00.evaluate({x, y}, {}); }
    Vec bracket01(const Vec& x, const Vec& a) const { return l2_01.evaluate({x}, {a}); }
    Vec l3val(const Vec& x, const Vec& y, const Vec& z) const { return l3.evaluate({x, y, z}, {}); }
};

/// Strict three-term L-infinity algebra (l4 = 0); the stored l2/l3 components
/// are the only ones whose target degree exists.
struct Lie3Algebra {
    ThreeTermSpace space;
    MultiTensor l2_00;   // Lambda^2 V0 -> V0
    MultiTensor l2_01;   // V0 (x) V1 -> V1
    MultiTensor l2_02;   // V0 (x) V2 -> V2
    MultiTensor l2_11;   // Sym^2 V1 -> V2
    MultiTensor l3_000;  // Lambda^3 V0 -> V1
    MultiTensor l3_001;  // Lambda^2 V0 (x) V1 -> V2

    Lie3Algebra() = default;
    explicit Lie3Algebra(ThreeTermSpace s);

    int dim(int degree) const { return space.dim(degree); }
};

// ---------------------------------------------------------------------------
// Generic L-infinity identity checking
// ---------------------------------------------------------------------------

/// Homogeneous element.
struct Elt {
    int degree;
    Vec v;
};

/// Uniform view of an n-term L-infinity structure for the identity checker:
/// dims per degree plus the multilinear brackets evaluated on homogeneous
/// arguments in arbitrary order (the implementation owes graded antisymmetry).
struct LInfinityView {
    int top_degree;
    std::function<int(int)> dim;                              // per degree
    std::function<Vec(int, const std::vector<Elt>&)> apply;   // l_k on args
};

LInfinityView view_of(const Lie2Algebra& g);
LInfinityView view_of(const Lie3Algebra& t);

/// Sorts homogeneous arguments into degree-ascending order, returning the
/// combined sgn * Koszul sign of the rearrangement.
int sort_graded_args(std::vector<Elt>& args);

/// Evaluates the degree-n homotopy Jacobi identity
///   sum_{i+j=n+1} (-1)^{i(j-1)} sum_sigma sgn(sigma) Ksgn(sigma)
///     l_j(l_i(x_sigma(1..i)), x_sigma(i+1..n))
/// over (i, n-i)-unshuffles, on the given homogeneous arguments.
Vec l_infinity_identity(const LInfinityView& a, int n, const std::vector<Elt>& args);

/// Checks the identities for n in [1, max_n] on every canonically ordered
/// basis tuple of each admissible degree profile; profiles whose identity
/// lands in absent degrees are skipped and logged.
CheckReport check_l_infinity(const LInfinityView& a, int max_n);

/// All Eq-(1) identities for n = 1..4, exact.
CheckReport check_lie2(const Lie2Algebra& g);

/// All Eq-(1) identities for n = 1..5 with l4 = 0, exact.
CheckReport check_lie3_strict(const Lie3Algebra& t);

// ---------------------------------------------------------------------------
// Homomorphisms
// ---------------------------------------------------------------------------

struct Lie2Hom {
    Lie2Algebra source;
    Lie2Algebra target;
    GradedMap maps;     // (phi0, phi1)
    MultiTensor phi2;   // Lambda^2 source.g0 -> target.g1

    bool strong() const { return phi2.is_zero(); }
    static Lie2Hom identity(const Lie2Algebra& g);
};

Lie2Hom make_hom(const Lie2Algebra& src, const Lie2Algebra& dst, GradedMap maps, MultiTensor phi2);
Lie2Hom make_strong_hom(const Lie2Algebra& src, const Lie2Algebra& dst, GradedMap maps);

/// The four homomorphism conditions on all basis tuples, exact.
/// Labels: "hom condition (1)" chain-map, "(2)" degree-0 brackets,
/// "(3)" mixed brackets, "(4)" coherence with l3.
CheckReport check_hom(const Lie2Hom& f);

/// (psi o phi) with (psi o phi)_2 = psi_1 o phi_2 + psi_2 o (phi_0 ^ phi_0).
Lie2Hom compose(const Lie2Hom& psi, const Lie2Hom& phi);

// ---------------------------------------------------------------------------
// Ideals, quotients, kernels, images
// ---------------------------------------------------------------------------

/// Graded subspace given by spanning sets, kept in echelon form.
struct GradedSubspace {
    Subspace s0;
    Subspace s1;

    GradedSubspace() = default;
    GradedSubspace(const std::vector<Vec>& gens0, const std::vector<Vec>& gens1, int amb0, int amb1)
        : s0(gens0, amb0), s1(gens1, amb1) {}
    int dim(int degree) const { return degree == 0 ? s0.dim() : s1.dim(); }
};

/// l2(h ^ g) in h and l3(h0 ^ g0 ^ g0) in h1, by rank tests.
/// Throws when h is not closed under the differential.
CheckReport is_ideal(const Lie2Algebra& g, const GradedSubspace& h);

struct QuotientResult {
    Lie2Algebra quo;
    Lie2Hom proj;            // strong projection g -> quo
    std::vector<Vec> comp0;  // complement representatives in g0
    std::vector<Vec> comp1;
    RationalMatrix proj0;    // g0 -> quo coords
    RationalMatrix proj1;
};

/// Quotient by an ideal on deterministic complement representatives.
QuotientResult quotient(const Lie2Algebra& g, const GradedSubspace& h);

/// Kernel of a homomorphism; requires phi2(ker phi0 ^ g0) = 0 and refuses
/// naming that hypothesis otherwise.
GradedSubspace hom_kernel(const Lie2Hom& f);

/// Image of a homomorphism; requires Img phi2 in Img phi1 and refuses naming
/// that hypothesis otherwise. Closure under l2, l3 is verified.
GradedSubspace hom_image(const Lie2Hom& f);

/// First isomorphism theorem on instances: source/ker and Img have equal
/// dimensions in both degrees and the induced map intertwines d, l2, l3.
CheckReport first_iso_check(const Lie2Hom& f);

}  // namespace lie2kit

#endif
