#ifndef LIE2KIT_REPCOH_HPP
#define LIE2KIT_REPCOH_HPP

#include "lie2kit/lie2core.hpp"

#include <map>
#include <tuple>

namespace lie2kit {

// ---------------------------------------------------------------------------
// End(V) and modules
// ---------------------------------------------------------------------------

/// The strict Lie 2-algebra End(V) for a two-term space V:
///   End1 = Hom(V0, V1),
///   End0 = { (X0, X1) | X0 o diff = diff o X1 },
///   delta(Theta) = diff o Theta + Theta o diff, commutator brackets.
/// Flat coordinates: degree-0 elements as row-major X0 then row-major X1;
/// degree-1 elements as the row-major V1 x V0 matrix.
struct EndAlgebra {
    Lie2Algebra alg;
    TwoTermSpace v;
    Subspace end0;  // basis of End0 inside Q^(v0^2 + v1^2)
};

EndAlgebra end_algebra(const TwoTermSpace& v);

Vec flatten_pair(const RationalMatrix& x0, const RationalMatrix& x1);
std::pair<RationalMatrix, RationalMatrix> unflatten_pair(const Vec& v, int n0, int n1);
Vec flatten_matrix(const RationalMatrix& m);
RationalMatrix unflatten_matrix(const Vec& v, int rows, int cols);

/// Module (action) of a Lie 2-algebra on a two-term space, as the four
/// structure tensors of x |> u, x |> m, a |> u and (x,y) |> u. Algebra legs
/// sit in the antisymmetric block, the module leg in the symmetric block.
struct Lie2Module {
    Lie2Algebra algebra;
    TwoTermSpace space;
    MultiTensor act00;  // g0 (x) V0 -> V0
    MultiTensor act01;  // g0 (x) V1 -> V1
    MultiTensor act10;  // g1 (x) V0 -> V1
    MultiTensor act2;   // Lambda^2 g0 (x) V0 -> V1

    Lie2Module() = default;
    Lie2Module(Lie2Algebra g, TwoTermSpace v);

    Vec a00(const Vec& x, const Vec& u) const { return act00.evaluate({x}, {u}); }
    Vec a01(const Vec& x, const Vec& m) const { return act01.evaluate({x}, {m}); }
    Vec a10(const Vec& a, const Vec& u) const { return act10.evaluate({a}, {u}); }
    Vec a2(const Vec& x, const Vec& y, const Vec& u) const { return act2.evaluate({x, y}, {u}); }
};

/// Trivial action on v.
Lie2Module trivial_module(const Lie2Algebra& g, const TwoTermSpace& v);

/// The adjoint module: act tensors are the l2 slices and the -l3 slice.
Lie2Module adjoint_module(const Lie2Algebra& g);

/// Assembles the action map g -> End(V) and checks it is a homomorphism.
CheckReport check_action(const Lie2Module& m);

// ---------------------------------------------------------------------------
// Cochains
// ---------------------------------------------------------------------------

struct BlockKey {
    int p, q, s;
    auto operator<=>(const BlockKey&) const = default;
};

/// Element of the generalized Chevalley-Eilenberg complex: a direct sum of
/// components in Hom(Lambda^p g0 (x) Sym^q g1, V_s) with p + 2q - s equal to
/// the degree. Missing blocks are zero.
class Cochain {
public:
    Cochain() = default;
    Cochain(int degree, int g0, int g1, int v0, int v1)
        : degree_(degree), g0_(g0), g1_(g1), v0_(v0), v1_(v1) {}

    int degree() const { return degree_; }
    const std::map<BlockKey, MultiTensor>& blocks() const { return blocks_; }
    bool has(int p, int q, int s) const { return blocks_.count({p, q, s}) > 0; }
    /// Read access; returns a zero tensor when the block was never written.
    MultiTensor block(int p, int q, int s) const;
    MultiTensor& ensure(int p, int q, int s);
    void set(int p, int q, int s, MultiTensor t);
    bool is_zero() const;

    Cochain operator+(const Cochain& o) const;
    Cochain operator-(const Cochain& o) const;
    Cochain scaled(const Rational& c) const;

    int g0() const { return g0_; }
    int g1() const { return g1_; }
    int v0() const { return v0_; }
    int v1() const { return v1_; }
    int vdim(int s) const { return s == 0 ? v0_ : v1_; }

private:
    int degree_ = 0;
    int g0_ = 0, g1_ = 0, v0_ = 0, v1_ = 0;
    std::map<BlockKey, MultiTensor> blocks_;
};

struct CochainBlock {
    int p, q, s;
    int dim;     // C(g0,p)*M(g1,q)*dim V_s
    int offset;  // within the flattened degree
};

struct CochainLayout {
    int degree = 0;
    int total = 0;
    std::vector<CochainBlock> blocks;  // sorted by (s,p,q)

    const CochainBlock* find(int p, int q, int s) const;
};

/// All blocks of total degree n (s in {0,1}, p,q >= 0), sorted by (s,p,q),
/// with dimensions and offsets.
CochainLayout cochain_space(const Lie2Module& m, int n);

Vec flatten(const Cochain& c, const CochainLayout& layout);
Cochain unflatten(const Lie2Module& m, const CochainLayout& layout, const Vec& v);

/// Pullback along a graded map on arguments: (result)(x...;a...) =
/// f(t x...; t a...). t maps the result's algebra space into f's.
Cochain pullback_args(const Cochain& f, const GradedMap& t, int src_dim0, int src_dim1);

/// Post-composition with a graded linear map on values.
Cochain map_values(const Cochain& f, const RationalMatrix& t0, const RationalMatrix& t1);

// ---------------------------------------------------------------------------
// Coboundary operator
// ---------------------------------------------------------------------------

/// The six component maps of D = dhat + partialhat + dphi10 + dphi01 +
/// dphi2 + dl3, each applied to one block. Shifts:
///   dhat:       (p,q,s)   -> (p-1,q+1,s)
///   partialhat: (p,q,1)   -> (p,q,0)
///   dphi10:     (p,q,s)   -> (p+1,q,s)
///   dphi01:     (p,q,0)   -> (p,q+1,1)
///   dphi2:      (p,q,0)   -> (p+2,q,1)
///   dl3:        (p,q,s)   -> (p+3,q-1,s)
MultiTensor cb_dhat(const Lie2Module& m, const MultiTensor& f, int p, int q, int s);
MultiTensor cb_partialhat(const Lie2Module& m, const MultiTensor& f, int p, int q);
MultiTensor cb_dphi10(const Lie2Module& m, const MultiTensor& f, int p, int q, int s);
MultiTensor cb_dphi01(const Lie2Module& m, const MultiTensor& f, int p, int q);
MultiTensor cb_dphi2(const Lie2Module& m, const MultiTensor& f, int p, int q);
MultiTensor cb_dl3(const Lie2Module& m, const MultiTensor& f, int p, int q, int s);

/// D applied blockwise to a whole cochain.
Cochain coboundary_apply(const Lie2Module& m, const Cochain& c);

/// Matrix of D: C^n -> C^{n+1} over the cochain_space layouts.
RationalMatrix coboundary(const Lie2Module& m, int n);

// ---------------------------------------------------------------------------
// Cohomology
// ---------------------------------------------------------------------------

struct CohomologyResult {
    int betti = 0;
    std::vector<Cochain> representatives;  // complete im D_{n-1} to ker D_n
    CochainLayout layout;
    std::vector<Vec> rep_flat;
    RationalMatrix boundary_below;  // D_{n-1}
};

CohomologyResult cohomology(const Lie2Module& m, int n);

/// Coordinates of the class of a cocycle in the representative basis
/// (solves cocycle = sum c_i rep_i + D mu); nullopt when the vector is not a
/// cocycle-plus-boundary of this degree.
std::optional<Vec> class_coordinates(const CohomologyResult& h, const Vec& cocycle_flat);

// ---------------------------------------------------------------------------
// Low-degree formulas (independent of the matrix route)
// ---------------------------------------------------------------------------

/// The four 1-cocycle equations evaluated per basis tuple:
///   (2) X0 d = dV X1
///   (3) dV lX(x,y) = X[x,y] + y|>Xx - x|>Xy
///   (4) lX(x,da) = X[x,a] + a|>Xx - x|>Xa
///   (5) X l3(x,y,z) = lX(x,[y,z]) + x|>lX(y,z) - (y,z)|>Xx + c.p.
CheckReport one_cocycle_residuals(const Lie2Module& m, const RationalMatrix& x0,
                                  const RationalMatrix& x1, const MultiTensor& lx);

/// D(u + Theta) by the displayed degree-0 coboundary formulas.
Cochain one_coboundary(const Lie2Module& m, const Vec& u, const RationalMatrix& theta);

/// D(lambda) for a degree-2 cochain via the five displayed components
/// theta_0 .. theta_4.
Cochain three_coboundary(const Lie2Module& m, const Cochain& lambda);

// ---------------------------------------------------------------------------
// Skeletal derivations
// ---------------------------------------------------------------------------

struct SkeletalDerivationReport {
    bool cocycle_route = false;     // 1-cocycle residuals vanish (adjoint module)
    bool classical_route = false;   // X in Der(g0 semidirect g1) and D lX = [X, l3]
    bool agree() const { return cocycle_route == classical_route; }
    CheckReport details;
};

/// For a skeletal algebra (d = 0): X + lX lies in Der_0(g) iff X is a
/// derivation of the semidirect product g0 x| g1 and the classical coboundary
/// of lX equals [X, l3]. Both routes are evaluated and compared.
SkeletalDerivationReport skeletal_derivation_check(const Lie2Algebra& g, const RationalMatrix& x0,
                                                   const RationalMatrix& x1, const MultiTensor& lx);

}  // namespace lie2kit

#endif
