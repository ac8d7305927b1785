#include "lie2kit/ratlin.hpp"

#include <algorithm>
#include <sstream>

namespace lie2kit {

Rational Rational::parse(const std::string& s) {
    std::string t;
    t.reserve(s.size());
    for (char c : s)
        if (!isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty()) throw std::runtime_error("empty rational literal");
    mpq_class q;
    if (q.set_str(t, 10) != 0) throw std::runtime_error("malformed rational literal: " + s);
    if (sgn(q.get_den()) == 0) throw std::runtime_error("zero denominator: " + s);
    return Rational(q);
}

std::string Rational::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::runtime_error("rational division by zero");
    v_ /= o.v_;
    canon();
    return *this;
}

Vec vec_zero(int n) { return Vec(static_cast<size_t>(n)); }

bool vec_is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

Vec vec_add(const Vec& a, const Vec& b) {
    Vec r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    Vec r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vec vec_scale(const Rational& c, const Vec& v) {
    Vec r(v);
    for (auto& x : r) x *= c;
    return r;
}

void vec_axpy(Vec& acc, const Rational& c, const Vec& v) {
    if (c.is_zero()) return;
    for (size_t i = 0; i < acc.size(); ++i) acc[i] += c * v[i];
}

Vec vec_concat(const Vec& a, const Vec& b) {
    Vec r(a);
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
    a_.resize(static_cast<size_t>(rows_) * cols_);
    int i = 0;
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != cols_) throw std::runtime_error("ragged matrix literal");
        int j = 0;
        for (long x : r) at(i, j++) = Rational(x);
        ++i;
    }
}

RationalMatrix RationalMatrix::identity(int n) {
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Rational(1);
    return m;
}

RationalMatrix RationalMatrix::from_columns(const std::vector<Vec>& cols, int rows) {
    RationalMatrix m(rows, static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols_; ++j) {
        if (static_cast<int>(cols[j].size()) != rows) throw std::runtime_error("column size mismatch");
        for (int i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
    }
    return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<Vec>& rows, int cols) {
    RationalMatrix m(static_cast<int>(rows.size()), cols);
    for (int i = 0; i < m.rows_; ++i) {
        if (static_cast<int>(rows[i].size()) != cols) throw std::runtime_error("row size mismatch");
        for (int j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

bool RationalMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Rational& x) { return x.is_zero(); });
}

Vec RationalMatrix::apply(const Vec& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::runtime_error("apply: size mismatch");
    Vec r = vec_zero(rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (!at(i, j).is_zero()) r[i] += at(i, j) * v[j];
    return r;
}

Vec RationalMatrix::row(int i) const {
    Vec r(cols_);
    for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
}

Vec RationalMatrix::col(int j) const {
    Vec c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
    if (cols_ != o.rows_) throw std::runtime_error("matmul: shape mismatch");
    RationalMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rational& x = at(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j)
                if (!o.at(k, j).is_zero()) r.at(i, j) += x * o.at(k, j);
        }
    return r;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::runtime_error("add: shape mismatch");
    RationalMatrix r(*this);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::runtime_error("sub: shape mismatch");
    RationalMatrix r(*this);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
}

RationalMatrix RationalMatrix::operator-() const {
    RationalMatrix r(*this);
    for (auto& x : r.a_) x = -x;
    return r;
}

RationalMatrix RationalMatrix::scaled(const Rational& c) const {
    RationalMatrix r(*this);
    for (auto& x : r.a_) x *= c;
    return r;
}

RationalMatrix RationalMatrix::hstack(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.rows_ != b.rows_) throw std::runtime_error("hstack: row mismatch");
    RationalMatrix r(a.rows_, a.cols_ + b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
        for (int j = 0; j < a.cols_; ++j) r.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols_; ++j) r.at(i, a.cols_ + j) = b.at(i, j);
    }
    return r;
}

RationalMatrix RationalMatrix::vstack(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols_ != b.cols_) throw std::runtime_error("vstack: col mismatch");
    RationalMatrix r(a.rows_ + b.rows_, a.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int j = 0; j < a.cols_; ++j) r.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows_; ++i)
        for (int j = 0; j < a.cols_; ++j) r.at(a.rows_ + i, j) = b.at(i, j);
    return r;
}

std::string RationalMatrix::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        os << (i ? "\n[" : "[");
        for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).str();
        os << "]";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Elimination
// ---------------------------------------------------------------------------

int rank(const RationalMatrix& m) {
    int rows = m.rows(), cols = m.cols();
    if (rows == 0 || cols == 0) return 0;
    // Clear denominators row by row, then run Bareiss on integers.
    std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
    for (int i = 0; i < rows; ++i) {
        mpz_class l(1);
        for (int j = 0; j < cols; ++j) {
            mpz_class den = m.at(i, j).raw().get_den();
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
            l = l / g * den;
        }
        for (int j = 0; j < cols; ++j) {
            mpq_class q = m.at(i, j).raw() * l;
            q.canonicalize();
            a[i][j] = q.get_num();
        }
    }
    mpz_class prev(1);
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (sgn(a[i][c]) != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(a[piv], a[r]);
        for (int i = r + 1; i < rows; ++i) {
            for (int j = c + 1; j < cols; ++j)
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

Rref rref(const RationalMatrix& m) {
    Rref out;
    out.r = m;
    RationalMatrix& a = out.r;
    int rows = a.rows(), cols = a.cols();
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (!a.at(i, c).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < cols; ++j) std::swap(a.at(piv, j), a.at(r, j));
        Rational inv = Rational(1) / a.at(r, c);
        for (int j = c; j < cols; ++j) a.at(r, j) *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a.at(i, c).is_zero()) continue;
            Rational f = a.at(i, c);
            for (int j = c; j < cols; ++j) a.at(i, j) -= f * a.at(r, j);
        }
        out.pivots.push_back(c);
        ++r;
    }
    return out;
}

std::vector<Vec> kernel_basis(const RationalMatrix& m) {
    Rref e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int p : e.pivots) is_pivot[p] = true;
    std::vector<Vec> ker;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vec v = vec_zero(m.cols());
        v[f] = Rational(1);
        for (size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.r.at(static_cast<int>(i), f);
        ker.push_back(std::move(v));
    }
    return ker;
}

std::vector<Vec> image_basis(const RationalMatrix& m) {
    // Echelonize the column space: rref of the transpose, nonzero rows.
    Rref e = rref(m.transpose());
    std::vector<Vec> img;
    for (int i = 0; i < e.rank(); ++i) img.push_back(e.r.row(i));
    return img;
}

std::optional<Vec> solve(const RationalMatrix& m, const Vec& b) {
    if (static_cast<int>(b.size()) != m.rows()) throw std::runtime_error("solve: rhs size mismatch");
    RationalMatrix aug = RationalMatrix::hstack(m, RationalMatrix::from_columns({b}, m.rows()));
    Rref e = rref(aug);
    for (int p : e.pivots)
        if (p == m.cols()) return std::nullopt;
    Vec x = vec_zero(m.cols());
    for (size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.r.at(static_cast<int>(i), m.cols());
    return x;
}

QuotientBasis quotient_basis(const std::vector<Vec>& sub, int ambient_dim) {
    RationalMatrix s = RationalMatrix::from_rows(sub, ambient_dim);
    Rref e = rref(s);
    if (e.rank() != static_cast<int>(sub.size()))
        throw std::runtime_error("quotient_basis: dependent subspace generators");
    std::vector<bool> is_pivot(ambient_dim, false);
    for (int p : e.pivots) is_pivot[p] = true;
    QuotientBasis out;
    std::vector<int> free_cols;
    for (int j = 0; j < ambient_dim; ++j) {
        if (is_pivot[j]) continue;
        free_cols.push_back(j);
        Vec v = vec_zero(ambient_dim);
        v[j] = Rational(1);
        out.complement.push_back(std::move(v));
    }
    // Change of basis [sub | complement] in the given order; projection reads
    // off the complement coordinates.
    int k = static_cast<int>(sub.size());
    int q = static_cast<int>(free_cols.size());
    std::vector<Vec> cols;
    for (const auto& v : sub) cols.push_back(v);
    for (const auto& v : out.complement) cols.push_back(v);
    RationalMatrix b = RationalMatrix::from_columns(cols, ambient_dim);
    // Invert via rref of [B | I].
    RationalMatrix aug = RationalMatrix::hstack(b, RationalMatrix::identity(ambient_dim));
    Rref inv = rref(aug);
    if (inv.rank() != ambient_dim) throw std::runtime_error("quotient_basis: internal basis failure");
    out.projection = RationalMatrix(q, ambient_dim);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < ambient_dim; ++j) out.projection.at(i, j) = inv.r.at(k + i, ambient_dim + j);
    return out;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    Rref e = rref(RationalMatrix::hstack(m, RationalMatrix::identity(m.rows())));
    if (e.rank() != m.rows()) return std::nullopt;
    RationalMatrix inv(m.rows(), m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.rows(); ++j) inv.at(i, j) = e.r.at(i, m.rows() + j);
    return inv;
}

RationalMatrix section_on_image(const RationalMatrix& m) {
    std::vector<Vec> img = image_basis(m);
    int r = static_cast<int>(img.size());
    // Solve m v_i = w_i for an image basis, send a complement of the image to 0.
    std::vector<Vec> sols;
    for (const auto& w : img) {
        auto v = solve(m, w);
        if (!v) throw std::runtime_error("section_on_image: internal solve failure");
        sols.push_back(*v);
    }
    QuotientBasis comp = r > 0 ? quotient_basis(img, m.rows()) : quotient_basis({}, m.rows());
    std::vector<Vec> cols;
    for (const auto& w : img) cols.push_back(w);
    for (const auto& c : comp.complement) cols.push_back(c);
    RationalMatrix b = RationalMatrix::from_columns(cols, m.rows());
    RationalMatrix aug = RationalMatrix::hstack(b, RationalMatrix::identity(m.rows()));
    Rref inv = rref(aug);
    RationalMatrix binv(m.rows(), m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.rows(); ++j) binv.at(i, j) = inv.r.at(i, m.rows() + j);
    RationalMatrix qb(m.cols(), m.rows());  // action on the [img | comp] basis
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < m.cols(); ++i) qb.at(i, j) = sols[j][i];
    return qb * binv;
}

// ---------------------------------------------------------------------------
// Subspaces
// ---------------------------------------------------------------------------

Subspace::Subspace(const std::vector<Vec>& gens, int ambient) : ambient_(ambient) {
    if (gens.empty()) return;
    Rref e = rref(RationalMatrix::from_rows(gens, ambient));
    for (int i = 0; i < e.rank(); ++i) basis_.push_back(e.r.row(i));
    pivots_ = e.pivots;
}

bool Subspace::contains(const Vec& v) const { return coords(v).has_value(); }

bool Subspace::contains(const Subspace& other) const {
    for (const auto& b : other.basis_)
        if (!contains(b)) return false;
    return true;
}

std::optional<Vec> Subspace::coords(const Vec& v) const {
    if (static_cast<int>(v.size()) != ambient_) throw std::runtime_error("coords: size mismatch");
    Vec rem = v;
    Vec c = vec_zero(dim());
    for (size_t i = 0; i < basis_.size(); ++i) {
        Rational f = rem[pivots_[i]];
        if (f.is_zero()) continue;
        c[i] = f;
        vec_axpy(rem, -f, basis_[i]);
    }
    if (!vec_is_zero(rem)) return std::nullopt;
    return c;
}

std::optional<Vec> coords_in(const std::vector<Vec>& basis, const Vec& v) {
    if (basis.empty()) return vec_is_zero(v) ? std::optional<Vec>(Vec{}) : std::nullopt;
    RationalMatrix m = RationalMatrix::from_columns(basis, static_cast<int>(v.size()));
    return solve(m, v);
}

}  // namespace lie2kit
