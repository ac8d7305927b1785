#ifndef LIE2KIT_CROSSMOD_HPP
#define LIE2KIT_CROSSMOD_HPP

#include "lie2kit/repcoh.hpp"

namespace lie2kit {

// ---------------------------------------------------------------------------
// Actions by derivations and crossed modules
// ---------------------------------------------------------------------------

/// Action of g on the Lie 2-algebra m by derivations: the underlying module
/// (of g on m's space) plus the maps l_{phi0(x)}. The algebra leg of lphi0
/// sits in the symmetric slot: lphi0({alpha,beta},{x}) = l_{phi0(x)}(alpha,beta).
struct DerivAction {
    Lie2Module base;    // g acting on m's underlying space
    MultiTensor lphi0;  // Lambda^2 m0 (x) g0 -> m1

    DerivAction() = default;
    DerivAction(Lie2Module b, MultiTensor l) : base(std::move(b)), lphi0(std::move(l)) {}
    static DerivAction zero_lphi0(Lie2Module b) {
        MultiTensor l(2, 1, b.space.dim0, b.algebra.space.dim0, b.space.dim1);
        return DerivAction(std::move(b), std::move(l));
    }
};

/// Crossed module (m, g, action, phi, sigma) with phi2 the m-wedge component
/// of Pi. sigma({x},{alpha}) stores sigma(x, alpha); the opposite order is
/// minus that.
struct CrossedModule {
    Lie2Algebra m;
    Lie2Algebra g;
    DerivAction action;
    GradedMap phi;      // m -> g chain map
    MultiTensor phi2;   // Lambda^2 m0 -> g1
    MultiTensor sigma;  // g0 (x) m0 -> g1

    bool strong() const { return sigma.is_zero(); }
    Vec sigma_val(const Vec& x, const Vec& alpha) const { return sigma.evaluate({x}, {alpha}); }
};

CrossedModule make_crossed_module(Lie2Algebra m, Lie2Algebra g, DerivAction action, GradedMap phi,
                                  MultiTensor phi2, MultiTensor sigma);

// ---------------------------------------------------------------------------
// Derivation pairs: elements of C^1(g, m) split into named parts
// ---------------------------------------------------------------------------

struct DerPair {
    RationalMatrix x0;  // m0 <- g0
    RationalMatrix x1;  // m1 <- g1
    MultiTensor lx;     // Lambda^2 g0 -> m1
};

DerPair der_unflatten(const Lie2Module& module, const Vec& c1_flat);
Vec der_flatten(const Lie2Module& module, const DerPair& p);

/// -D(Theta) = delta(Theta) + l_delta(Theta) for Theta: g0 -> m1.
DerPair der_minus_d(const Lie2Module& module, const RationalMatrix& theta);

/// {X + xi, Y + eta} = [X,Y]_phi + X |> eta - Y |> xi + omega^sigma(X,Y),
/// the degree-1 bracket of C^1(g, V). Needs only phi: V -> g and sigma.
DerPair c1_bracket(const GradedMap& phi, const MultiTensor& sigma, const DerPair& a,
                   const DerPair& b);

/// {X + lX, Theta} = [X, Theta]_phi.
RationalMatrix c1_mixed_bracket(const GradedMap& phi, const DerPair& a,
                                const RationalMatrix& theta);

/// The omega^sigma 2-cocycle residuals for the Lambda(g,V)-module
/// Hom(Lambda^2 g0, V1); empty report iff sigma(phi0 u, v) = sigma(u, phi0 v)
/// holds and omega^sigma is a cocycle on the given basis pairs.
CheckReport omega_sigma_cocycle_check(const TwoTermSpace& gspace, const TwoTermSpace& vspace,
                                      const GradedMap& phi, const MultiTensor& sigma);

/// Lie algebra structure on C^1(g,V) over the degree-1 cochain layout.
/// Requires sigma(phi0 u, v) = sigma(u, phi0 v); refuses otherwise.
struct C1LieAlgebra {
    int dim = 0;
    MultiTensor bracket;  // Lambda^2 C1 -> C1
    CochainLayout layout;
};
C1LieAlgebra c1_lie_algebra(const TwoTermSpace& gspace, const TwoTermSpace& vspace,
                            const GradedMap& phi, const MultiTensor& sigma);

// ---------------------------------------------------------------------------
// Der(g) and Der(g,m)
// ---------------------------------------------------------------------------

/// Der(g): Der1 = Hom(g0,g1) --(-D)--> Der0 = 1-cocycles of the adjoint
/// module, with commutator-type brackets; a strict Lie 2-algebra.
struct DerAlgebra {
    Lie2Algebra alg;
    std::vector<Vec> der0_flat;  // Der0 basis in C^1 coordinates
    Lie2Module adjoint;          // the adjoint module used
    CochainLayout c1_layout;
};
DerAlgebra der_algebra(const Lie2Algebra& g);

/// Der(g,m) for a crossed module: Der0(g,m) computed as the kernel of the
/// degree-1 coboundary, bracket twisted by phi and sigma.
struct DerComplexResult {
    Lie2Algebra alg;             // strict Lie 2-algebra Der(g,m)
    std::vector<Vec> der0_flat;  // basis of Der0(g,m) in C^1 coordinates
    CochainLayout c1_layout;
};
DerComplexResult der_complex(const CrossedModule& cm);

/// H^1(g,m) = Der0 / Inn0 with the induced bracket on echelon representatives.
struct H1Result {
    int betti = 0;
    std::vector<Vec> reps;  // representatives in C^1 coordinates
    MultiTensor bracket;    // induced bracket in representative coordinates
    bool inn_closed = true; // {Der0, Inn0} contained in Inn0
};
H1Result h1_lie_algebra(const CrossedModule& cm);

// ---------------------------------------------------------------------------
// Crossed products
// ---------------------------------------------------------------------------

/// g |x m on g (+) m (g block first in both degrees).
Lie2Algebra crossed_product(const Lie2Algebra& g, const Lie2Algebra& m, const DerivAction& act);

/// The four derivation equations for each basis x of g0, then the assembled
/// homomorphism g -> Der(m).
CheckReport check_deriv_action(const Lie2Algebra& m, const DerivAction& act);

struct SplitResult {
    Lie2Algebra g;
    Lie2Algebra m;
    DerivAction action;
};

/// Converse of the crossed product: extract the action by derivations from a
/// splitting of L into a subalgebra and an ideal (given as basis lists).
SplitResult split_crossed_product(const Lie2Algebra& l, const std::vector<Vec>& g0b,
                                  const std::vector<Vec>& g1b, const std::vector<Vec>& m0b,
                                  const std::vector<Vec>& m1b);

// ---------------------------------------------------------------------------
// Crossed module checking and constructions
// ---------------------------------------------------------------------------

/// Axioms (i)-(iv) on all basis tuples, the action checks, and Pi as a
/// homomorphism g |x m -> g restricting to the identity on g.
CheckReport check_crossed_module(const CrossedModule& cm);

/// Builds Pi = Id + sigma + phi as a homomorphism g |x m -> g.
Lie2Hom pi_hom(const CrossedModule& cm);

/// Morphism of crossed modules (F, G, tau): phi' F = G phi and
/// ((G0,F0),(G1,F1),(G2,tau,F2)) a homomorphism of the crossed products.
/// tau({x},{alpha}) stores tau(x, alpha) in m'_1.
CheckReport check_cm_morphism(const CrossedModule& a, const CrossedModule& b, const Lie2Hom& f,
                              const Lie2Hom& g, const MultiTensor& tau);

/// Synthesizes the unique crossed module from a module, a chain map and a
/// sigma satisfying the displayed compatibilities; refusals name the failed
/// condition.
CrossedModule build_from_data(const Lie2Algebra& g, const Lie2Module& module, const GradedMap& phi,
                              const MultiTensor& sigma);

/// The strict Lie 3-algebra on the mapping cone m1 -> g1 (+) m0 -> g0.
Lie3Algebra mapping_cone(const CrossedModule& cm);

/// (g, Der(g), Id, adjoint, sigma) with sigma(X + lX, x) = -lX(x, .).
CrossedModule derivation_crossed_module(const Lie2Algebra& g);

/// (m, g, adjoint, inclusion) for an ideal; strong.
CrossedModule ideal_crossed_module(const Lie2Algebra& g, const GradedSubspace& ideal);

// ---------------------------------------------------------------------------
// Four-term exact sequence
// ---------------------------------------------------------------------------

struct FourTermData {
    TwoTermSpace v;                      // ker phi
    std::vector<Vec> v0_in_m0, v1_in_m1; // basis of V inside m
    Lie2Algebra h;                       // g / Img phi
    RationalMatrix pi0, pi1;             // g -> h
    RationalMatrix s0, s1;               // canonical section h -> g
    Lie2Module action;                   // induced h-module structure on V
    CheckReport exactness;               // rank bookkeeping of the sequence
};

/// Requires Img sigma in Img phi1 and sigma(ker phi0 ^ g0) = 0; refuses
/// naming the failed hypothesis. The induced action is computed with the
/// canonical section and verified to lie in ker phi.
FourTermData four_term_sequence(const CrossedModule& cm);

/// Recomputes the induced action tensors with a user-supplied section of pi;
/// section independence means the result equals base.action exactly.
Lie2Module induced_action_with_section(const CrossedModule& cm, const FourTermData& base,
                                       const RationalMatrix& s0, const RationalMatrix& s1);

}  // namespace lie2kit

#endif
