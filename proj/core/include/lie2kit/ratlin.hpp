#ifndef LIE2KIT_RATLIN_HPP
#define LIE2KIT_RATLIN_HPP

#include <gmpxx.h>

#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lie2kit {

/// Arbitrary-precision rational, always in canonical form (gcd-reduced,
/// positive denominator, zero stored as 0/1).
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long n, long d) : v_(n, d) { canon(); }
    explicit Rational(const mpq_class& q) : v_(q) { canon(); }

    /// Parses "n", "n/d" or "-n/d". Throws on malformed input or d == 0.
    static Rational parse(const std::string& s);

    std::string str() const;

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }
    const mpq_class& raw() const { return v_; }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

private:
    void canon() {
        v_.canonicalize();
        if (sgn(v_.get_den()) < 0) { v_ = mpq_class(-v_.get_num(), -v_.get_den()); }
    }
    mpq_class v_;
};

using Vec = std::vector<Rational>;

Vec vec_zero(int n);
bool vec_is_zero(const Vec& v);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Rational& c, const Vec& v);
void vec_axpy(Vec& acc, const Rational& c, const Vec& v);  // acc += c*v
Vec vec_concat(const Vec& a, const Vec& b);

/// Dense exact-arithmetic matrix, row-major.
class RationalMatrix {
public:
    RationalMatrix() : rows_(0), cols_(0) {}
    RationalMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
    RationalMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static RationalMatrix identity(int n);
    static RationalMatrix zero(int rows, int cols) { return RationalMatrix(rows, cols); }
    /// Matrix whose columns are the given vectors.
    static RationalMatrix from_columns(const std::vector<Vec>& cols, int rows);
    static RationalMatrix from_rows(const std::vector<Vec>& rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Rational& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
    Rational& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }

    bool is_zero() const;
    Vec apply(const Vec& v) const;          // matrix * column vector
    Vec row(int i) const;
    Vec col(int j) const;

    RationalMatrix transpose() const;
    RationalMatrix operator*(const RationalMatrix& o) const;
    RationalMatrix operator+(const RationalMatrix& o) const;
    RationalMatrix operator-(const RationalMatrix& o) const;
    RationalMatrix operator-() const;
    RationalMatrix scaled(const Rational& c) const;
    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    /// Stack [A | B] side by side.
    static RationalMatrix hstack(const RationalMatrix& a, const RationalMatrix& b);
    /// Stack [A ; B] top to bottom.
    static RationalMatrix vstack(const RationalMatrix& a, const RationalMatrix& b);

    std::string str() const;

private:
    int rows_, cols_;
    std::vector<Rational> a_;
};

// ---------------------------------------------------------------------------
// Elimination
// ---------------------------------------------------------------------------

/// Row rank by fraction-free (Bareiss) elimination over cleared-denominator
/// integer rows.
int rank(const RationalMatrix& m);

struct Rref {
    RationalMatrix r;
    std::vector<int> pivots;  // pivot column of each nonzero row
    int rank() const { return static_cast<int>(pivots.size()); }
};

/// Reduced row echelon form with unit pivots; deterministic.
Rref rref(const RationalMatrix& m);

/// Kernel basis in reduced echelon normal form: one vector per free column,
/// unit entry at the free column. Exact: m * v = 0 for every v returned.
std::vector<Vec> kernel_basis(const RationalMatrix& m);

/// Column-space basis in reduced echelon normal form.
std::vector<Vec> image_basis(const RationalMatrix& m);

/// Any particular solution of m x = b, or nullopt when inconsistent.
std::optional<Vec> solve(const RationalMatrix& m, const Vec& b);

struct QuotientBasis {
    std::vector<Vec> complement;  // standard vectors completing `sub` to a basis
    RationalMatrix projection;    // ambient coords -> complement coords
};

/// Completes an independent set of vectors to a basis of Q^ambient_dim and
/// returns the projection onto the complement along span(sub).
/// Throws when `sub` is linearly dependent.
QuotientBasis quotient_basis(const std::vector<Vec>& sub, int ambient_dim);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<RationalMatrix> inverse(const RationalMatrix& m);

/// Linear right inverse q of m on its image: m*q*m = m and m*q*w = w for all
/// w in image(m); q vanishes on a deterministic complement of the image.
RationalMatrix section_on_image(const RationalMatrix& m);

// ---------------------------------------------------------------------------
// Subspaces
// ---------------------------------------------------------------------------

/// Span of a set of vectors kept in reduced echelon form; membership and
/// coordinate queries are exact.
class Subspace {
public:
    Subspace() : ambient_(0) {}
    explicit Subspace(int ambient) : ambient_(ambient) {}
    Subspace(const std::vector<Vec>& gens, int ambient);

    int ambient() const { return ambient_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<Vec>& basis() const { return basis_; }

    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;
    /// Coordinates of v in the echelon basis; nullopt when v is outside.
    std::optional<Vec> coords(const Vec& v) const;
    bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }

private:
    int ambient_;
    std::vector<Vec> basis_;   // echelon rows
    std::vector<int> pivots_;
};

/// Coordinates of v in an arbitrary (not necessarily echelon) spanning set;
/// nullopt when v is outside the span.
std::optional<Vec> coords_in(const std::vector<Vec>& basis, const Vec& v);

}  // namespace lie2kit

#endif
