#ifndef LIE2KIT_CLASSIFY_HPP
#define LIE2KIT_CLASSIFY_HPP

#include "lie2kit/crossmod.hpp"

namespace lie2kit {

// ---------------------------------------------------------------------------
// Extensions of a quotient by a module
// ---------------------------------------------------------------------------

/// (g, k, V, lambda): an ideal k of g, a g-module V on which k acts trivially,
/// and a degree-2 cochain on g with values in V.
struct ExtensionDatum {
    Lie2Algebra g;
    GradedSubspace k;
    Lie2Module v;      // g-module, trivial on k
    Cochain lambda;    // degree 2 on g, values in V
};

/// Quotient data and the induced h-module structure on V for an ExtensionDatum.
struct LambdaContext {
    QuotientResult quo;  // h = g/k with projection and canonical section
    Lie2Module hv;       // V as an h-module
};
LambdaContext lambda_context(const ExtensionDatum& e);

struct LambdaConditionResult {
    CheckReport report;   // contraction witnesses i_e(D lambda) != 0
    Cochain theta;        // s^*(D lambda) on h, values in V (valid when ok())
    LambdaContext ctx;
    bool ok() const { return report.ok(); }
};

/// i_e(D^g lambda) = 0 for all e in k; when it holds, recovers the 3-cocycle
/// theta with D^g lambda = pi^* theta and verifies D^h theta = 0.
LambdaConditionResult check_lambda_condition(const ExtensionDatum& e);

/// The strong crossed module (k (+)_lambda V, g, phi^lambda, i (+) 0).
/// Refuses when the lambda-condition fails. The m coordinates are the
/// (echelonized) k basis followed by the V basis.
CrossedModule epsilon_lambda(const ExtensionDatum& e);

// ---------------------------------------------------------------------------
// Abelian extensions and splices
// ---------------------------------------------------------------------------

struct AbelianExtension {
    Lie2Algebra ext;  // h (+)_lambda Q on the h-block-first basis
    Lie2Hom incl;     // Q -> ext (Q viewed as an abelian algebra)
    Lie2Hom proj;     // ext -> h
};

/// Twisted structure on h (+) Q for a 2-cocycle lambda in C^2(h, Q);
/// refuses when D^h lambda != 0.
AbelianExtension abelian_extension(const Lie2Module& q_module, const Cochain& lambda);

/// A strong homomorphism section of proj, when one exists (linear search over
/// all candidates).
std::optional<GradedMap> find_strong_splitting(const Lie2Module& q_module,
                                               const Cochain& lambda);

/// Short exact sequence of h-modules 0 -> V -> I -> Q -> 0.
struct ModuleSES {
    Lie2Module v, i, q;
    GradedMap p;  // V -> I
    GradedMap r;  // I -> Q (the surjection)
};

/// Exactness and equivariance of a module short exact sequence.
CheckReport check_module_ses(const ModuleSES& s);

/// The strong crossed module (I, h (+)_lambda Q, pullback action, phi) with
/// phi(v) = (0, q(v)).
CrossedModule splice(const ModuleSES& s, const Cochain& lambda);

/// Connecting homomorphism H^n(h, Q) -> H^{n+1}(h, V) of the induced short
/// exact sequence of complexes, with the cohomology data used on both sides.
struct ConnectingMap {
    RationalMatrix map;  // on the representative bases
    CohomologyResult hq, hv;
};
ConnectingMap connecting_map(const ModuleSES& s, int degree);

/// The connecting image of a single cocycle (degree n on h valued in Q).
Cochain connect_cocycle(const ModuleSES& s, const Cochain& lambda);

// ---------------------------------------------------------------------------
// The classification map mu
// ---------------------------------------------------------------------------

struct SectionPair {
    RationalMatrix s0, s1;  // h -> g, pi s = Id
    RationalMatrix q0, q1;  // g -> m, phi q = Id on Img phi
};

/// Canonical sections: the echelon complement for s, section_on_image for q.
SectionPair canonical_sections(const CrossedModule& cm, const FourTermData& four);

/// Values of a cochain re-coordinatized in a graded subspace (refuses when a
/// value escapes it).
Cochain cochain_into_subspace(const Cochain& c, const Subspace& v0, const Subspace& v1);

struct MuResult {
    FourTermData four;
    Cochain lambda_eps;  // degree 2 on h, values in m
    Cochain theta;       // degree 3 on h, values in V (kernel coordinates)
    Vec class_id;        // coordinates in the representative basis of H^3(h,V)
    CohomologyResult h3;
};

/// The classifying 3-cocycle of a strong crossed module and its class in
/// H^3(h, V). Verifies phi o theta = 0 and D^h theta = 0; refuses if the
/// crossed module is not strong or a lambda block escapes Img phi.
MuResult mu(const CrossedModule& cm);
MuResult mu(const CrossedModule& cm, const FourTermData& four, const SectionPair& sections);

/// The degree-2 correction B for a change of section s -> sbar (with q fixed)
/// and the verification theta - theta_bar = D^h(lambda - lambda_bar - B).
struct SectionChange {
    Cochain b;            // degree 2 on h, values in V
    bool identity_holds;  // the displayed coboundary identity, exact
};
SectionChange section_change_witness(const CrossedModule& cm, const FourTermData& four,
                                     const SectionPair& s, const SectionPair& sbar);

/// Invariance of theta under a strong map (F, G) between strong crossed
/// modules with the same kernel, cokernel and action: checks the diagram,
/// produces B with theta_A - theta_B = D^h B, and compares class ids.
struct StrongMapReport {
    CheckReport checks;
    bool coboundary_identity = false;
    bool classes_equal = false;
};
StrongMapReport strong_map_invariance(const CrossedModule& a, const CrossedModule& b,
                                      const Lie2Hom& f, const Lie2Hom& g);

/// Elementary equivalence: a morphism (F, G, tau) commuting with the
/// four-term sequences (identity on V and h) such that G2 = 0, Img tau lies
/// in i'(V), tau(g0 ^ i(V)) = 0 and tau(phi0 alpha, beta) = tau(alpha, phi0 beta).
CheckReport elementary_equivalence_check(const CrossedModule& a, const CrossedModule& b,
                                         const Lie2Hom& f, const Lie2Hom& g,
                                         const MultiTensor& tau);

// ---------------------------------------------------------------------------
// Gauge transformations
// ---------------------------------------------------------------------------

struct GaugeResult {
    CrossedModule source;   // epsilon_{lambda + D A + pi^* R}
    CrossedModule target;   // epsilon_lambda
    Lie2Hom f;              // m-level isomorphism F
    GradedMap f_inverse;    // linear inverse of (F0, F1)
    MultiTensor tau;        // tau(x, alpha + u) = A2(x, alpha)
    CheckReport morphism;   // (F, Id, tau) as a morphism of crossed modules
};

/// The isomorphism epsilon_{lambda + D^g A + pi^* R} -> epsilon_lambda built
/// from a 1-cochain A on g and a 2-cochain R on h.
GaugeResult gauge_transform(const ExtensionDatum& e, const Cochain& a, const Cochain& r_on_h);

}  // namespace lie2kit

#endif
