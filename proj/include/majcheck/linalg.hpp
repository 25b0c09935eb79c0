#ifndef MAJCHECK_LINALG_HPP
#define MAJCHECK_LINALG_HPP

// Dense complex matrix algebra at desk scale (d <= 64), self-contained:
// cyclic Jacobi eigensolver for Hermitian matrices, singular values via the
// Gram matrix, characteristic-polynomial eigenvalues for tiny nonsymmetric
// matrices, and spectral function application for PSD inputs.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "majcheck/errors.hpp"

namespace majcheck {

using Complex = std::complex<double>;

constexpr std::size_t kMaxDimension = 64;   // hard cap for all dense kernels
constexpr std::size_t kMaxPairCount = 16;
constexpr double kDefaultLinalgTol = 1e-10;

// ---------------------------------------------------------------------------
// ComplexMatrix

class ComplexMatrix {
public:
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {
        if (rows == 0 || cols == 0)
            throw UsageError("ComplexMatrix: rows and cols must be >= 1");
    }

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (rows == 0 || cols == 0)
            throw UsageError("ComplexMatrix: rows and cols must be >= 1");
        if (data_.size() != rows * cols)
            throw DimensionError("ComplexMatrix: entry count does not match shape");
    }

    // Row-major initializer, e.g. ComplexMatrix::from_rows({{1, 0}, {0, 1}}).
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
        if (rows.size() == 0) throw UsageError("from_rows: empty row list");
        std::size_t nc = rows.begin()->size();
        ComplexMatrix m(rows.size(), nc);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != nc) throw DimensionError("from_rows: ragged rows");
            std::size_t j = 0;
            for (const Complex& v : row) m(i, j++) = v;
            ++i;
        }
        return m;
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix zero(std::size_t rows, std::size_t cols) {
        return ComplexMatrix(rows, cols);
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Complex> entries() const { return data_; }
    std::span<Complex> entries() { return data_; }

private:
    std::size_t rows_, cols_;
    std::vector<Complex> data_;
};

inline double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (const Complex& v : a.entries()) m = std::max(m, std::abs(v));
    return m;
}

inline double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const Complex& v : a.entries()) s += std::norm(v);
    return std::sqrt(s);
}

inline bool all_finite(const ComplexMatrix& a) {
    for (const Complex& v : a.entries())
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("matrix add: shape mismatch");
    ComplexMatrix c = a;
    for (std::size_t i = 0; i < c.entries().size(); ++i) c.entries()[i] += b.entries()[i];
    return c;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("matrix subtract: shape mismatch");
    ComplexMatrix c = a;
    for (std::size_t i = 0; i < c.entries().size(); ++i) c.entries()[i] -= b.entries()[i];
    return c;
}

inline ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
    ComplexMatrix c = a;
    for (Complex& v : c.entries()) v *= s;
    return c;
}

inline ComplexMatrix operator*(double s, const ComplexMatrix& a) { return Complex(s, 0.0) * a; }

// result[i][j] = conj(a[j][i])
inline ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix c(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(j, i) = std::conj(a(i, j));
    return c;
}

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        throw DimensionError("matmul: inner dimensions differ (" +
                             std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + ")");
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    return matmul(a, b);
}

// Block-diagonal stack; off-block entries are exact zeros.
inline ComplexMatrix direct_sum(std::span<const ComplexMatrix> blocks) {
    if (blocks.empty()) throw UsageError("direct_sum: needs at least one block");
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) { r += b.rows(); c += b.cols(); }
    ComplexMatrix m(r, c);
    std::size_t ro = 0, co = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                m(ro + i, co + j) = b(i, j);
        ro += b.rows();
        co += b.cols();
    }
    return m;
}

inline ComplexMatrix direct_sum(std::initializer_list<ComplexMatrix> blocks) {
    return direct_sum(std::span<const ComplexMatrix>(blocks.begin(), blocks.size()));
}

// Side-by-side concatenation (U_1 | U_2 | ... | U_K); all blocks share a row count.
inline ComplexMatrix hconcat(std::span<const ComplexMatrix> blocks) {
    if (blocks.empty()) throw UsageError("hconcat: needs at least one block");
    const std::size_t r = blocks.front().rows();
    std::size_t c = 0;
    for (const auto& b : blocks) {
        if (b.rows() != r) throw DimensionError("hconcat: row counts differ");
        c += b.cols();
    }
    ComplexMatrix m(r, c);
    std::size_t co = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                m(i, co + j) = b(i, j);
        co += b.cols();
    }
    return m;
}

inline ComplexMatrix hconcat(std::initializer_list<ComplexMatrix> blocks) {
    return hconcat(std::span<const ComplexMatrix>(blocks.begin(), blocks.size()));
}

// Keeps the diagonal, zeroes everything else exactly.
inline ComplexMatrix diag_of(const ComplexMatrix& a) {
    if (!a.square()) throw DimensionError("diag_of: matrix must be square");
    ComplexMatrix m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) m(i, i) = a(i, i);
    return m;
}

inline ComplexMatrix diag_matrix(std::span<const double> d) {
    if (d.empty()) throw UsageError("diag_matrix: empty diagonal");
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

inline ComplexMatrix diag_matrix(const std::vector<double>& d) {
    return diag_matrix(std::span<const double>(d));
}

// max |a - a*| entry; 0 for exactly Hermitian input
inline double hermiticity_residual(const ComplexMatrix& a) {
    if (!a.square()) throw DimensionError("hermiticity_residual: matrix must be square");
    double r = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j)
            r = std::max(r, std::abs(a(i, j) - std::conj(a(j, i))));
    return r;
}

// ---------------------------------------------------------------------------
// Sorted spectra

// Real vector sorted non-increasing; the carrier for sigma(A) and lambda(A).
struct SortedSpectrum {
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }

    static SortedSpectrum from_unsorted(std::vector<double> v) {
        std::sort(v.begin(), v.end(), std::greater<double>());
        return SortedSpectrum{std::move(v)};
    }
};

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition (cyclic Jacobi)

/// Unitary basis and non-increasing eigenvalues of a Hermitian matrix.
/// basis * diag(eigenvalues) * basis^* reconstructs the input.
struct SpectralDecomposition {
    ComplexMatrix basis;
    std::vector<double> eigenvalues;   // sorted non-increasing, paired with basis columns
};

namespace detail {

// One Jacobi rotation in the (p,q) plane, p < q, annihilating a(p,q).
// V = [[c, -s e^{i phi}], [s e^{-i phi}, c]] with phi = arg a(p,q); applies
// a <- V^* a V and u <- u V.
inline void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& u, std::size_t p, std::size_t q) {
    const Complex apq = a(p, q);
    const double ab = std::abs(apq);
    if (ab == 0.0) return;
    const Complex phase = apq / ab;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (app - aqq) / (2.0 * ab);
    // tan(theta) with |theta| <= pi/4, the convergent small-angle choice
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
    const double c = 1.0 / std::hypot(1.0, t);
    const double s = t * c;
    const Complex sp = s * phase;
    const Complex spc = s * std::conj(phase);

    const std::size_t n = a.rows();
    for (std::size_t r = 0; r < n; ++r) {       // columns p,q: a <- a V
        const Complex arp = a(r, p);
        const Complex arq = a(r, q);
        a(r, p) = c * arp + spc * arq;
        a(r, q) = -sp * arp + c * arq;
    }
    for (std::size_t cc = 0; cc < n; ++cc) {    // rows p,q: a <- V^* a
        const Complex apc = a(p, cc);
        const Complex aqc = a(q, cc);
        a(p, cc) = c * apc + sp * aqc;
        a(q, cc) = -spc * apc + c * aqc;
    }
    // exact zeros / real diagonal; rounding residue is below working precision
    const double npp = app * c * c + 2.0 * s * c * ab + aqq * s * s;
    const double nqq = app * s * s - 2.0 * s * c * ab + aqq * c * c;
    a(p, p) = npp;
    a(q, q) = nqq;
    a(p, q) = 0.0;
    a(q, p) = 0.0;

    for (std::size_t r = 0; r < n; ++r) {       // u <- u V
        const Complex urp = u(r, p);
        const Complex urq = u(r, q);
        u(r, p) = c * urp + spc * urq;
        u(r, q) = -sp * urp + c * urq;
    }
}

inline double offdiag_frobenius(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

} // namespace detail

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.
/// Rejects inputs whose hermiticity residual exceeds tol * (1 + max entry).
inline SpectralDecomposition hermitian_eig(const ComplexMatrix& h, double tol = kDefaultLinalgTol) {
    if (!h.square()) throw DimensionError("hermitian_eig: matrix must be square");
    const std::size_t n = h.rows();
    if (n > kMaxDimension) throw UnsupportedError("hermitian_eig: dimension above cap");
    const double scale = 1.0 + max_abs(h);
    if (hermiticity_residual(h) > tol * scale)
        throw DomainError("hermitian_eig: input is not Hermitian within tolerance");

    // symmetrized working copy kills rounding-level asymmetry up front
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = h(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex v = 0.5 * (h(i, j) + std::conj(h(j, i)));
            a(i, j) = v;
            a(j, i) = std::conj(v);
        }
    }
    ComplexMatrix u = ComplexMatrix::identity(n);

    const double off_target = 1e-14 * scale;
    const double skip = off_target / (2.0 * static_cast<double>(n));
    constexpr int kMaxSweeps = 100;
    bool converged = (n == 1) || detail::offdiag_frobenius(a) <= off_target;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                if (std::abs(a(p, q)) > skip) detail::jacobi_rotate(a, u, p, q);
        converged = detail::offdiag_frobenius(a) <= off_target;
    }
    if (!converged)
        throw NumericalError("hermitian_eig: Jacobi iteration did not converge in 100 sweeps");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() > a(j, j).real();
    });

    SpectralDecomposition out{ComplexMatrix(n, n), std::vector<double>(n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) out.basis(r, k) = u(r, order[k]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Singular values

/// Singular values as square roots of the Gram-matrix spectrum, sorted
/// non-increasing, length min(rows, cols). Gram eigenvalues below the
/// Jacobi backward-error floor are reported as exact zeros, so rank
/// deficiency survives the round trip instead of surfacing as sqrt(eps) noise.
inline SortedSpectrum singular_values(const ComplexMatrix& a) {
    // Gram matrix on the thin side
    const bool thin_cols = a.cols() <= a.rows();
    const ComplexMatrix g = thin_cols ? matmul(adjoint(a), a) : matmul(a, adjoint(a));
    SpectralDecomposition eig = hermitian_eig(g, 1e-8);
    const std::size_t k = std::min(a.rows(), a.cols());

    double lmax = 0.0;
    for (double v : eig.eigenvalues) lmax = std::max(lmax, v);
    const double floor = 100.0 * static_cast<double>(g.rows()) *
                         std::numeric_limits<double>::epsilon() * lmax;

    std::vector<double> s(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double v = eig.eigenvalues[i];
        s[i] = (v <= floor) ? 0.0 : std::sqrt(v);
    }
    return SortedSpectrum{std::move(s)};   // already non-increasing
}

// ---------------------------------------------------------------------------
// Small-dimension general eigenvalues (characteristic polynomial)

namespace detail {

// coefficients of det(lambda I - A) = lambda^n - c[0] lambda^{n-1} - ... - c[n-1]
// via the Faddeev-LeVerrier recursion
inline std::vector<Complex> char_poly_coeffs(const ComplexMatrix& a) {
    const std::size_t n = a.rows();
    std::vector<Complex> c(n);
    ComplexMatrix m = a;
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) {
            ComplexMatrix shifted = m;
            for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= c[k - 1];
            m = matmul(a, shifted);
        }
        Complex tr(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) tr += m(i, i);
        c[k] = tr / static_cast<double>(k + 1);
    }
    return c;
}

inline Complex complex_cbrt(Complex z) {
    if (z == Complex(0.0, 0.0)) return z;
    return std::polar(std::cbrt(std::abs(z)), std::arg(z) / 3.0);
}

// roots of z^2 + b z + c, cancellation-safe via Vieta
inline void quadratic_roots(Complex b, Complex c, std::vector<Complex>& out) {
    const Complex s = std::sqrt(b * b - 4.0 * c);
    const Complex bp = (std::real(std::conj(b) * s) >= 0.0) ? b + s : b - s;
    if (bp == Complex(0.0, 0.0)) {   // b = c = 0
        out.push_back(Complex(0.0, 0.0));
        out.push_back(Complex(0.0, 0.0));
        return;
    }
    const Complex r1 = -0.5 * bp;
    out.push_back(r1);
    out.push_back(c / r1);
}

// roots of z^3 + a z^2 + b z + c (Cardano, complex arithmetic throughout)
inline void cubic_roots(Complex a, Complex b, Complex c, std::vector<Complex>& out) {
    const Complex p = b - a * a / 3.0;
    const Complex q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const Complex shift = -a / 3.0;
    const Complex sq = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    const Complex u3a = -q / 2.0 + sq;
    const Complex u3b = -q / 2.0 - sq;
    const Complex u3 = (std::abs(u3a) >= std::abs(u3b)) ? u3a : u3b;
    if (u3 == Complex(0.0, 0.0)) {   // p = q = 0: triple root
        for (int k = 0; k < 3; ++k) out.push_back(shift);
        return;
    }
    const Complex u = complex_cbrt(u3);
    const Complex omega(-0.5, std::sqrt(3.0) / 2.0);
    Complex w(1.0, 0.0);
    for (int k = 0; k < 3; ++k) {
        const Complex uk = u * w;
        out.push_back(uk - p / (3.0 * uk) + shift);
        w *= omega;
    }
}

// roots of z^4 + a z^3 + b z^2 + c z + d (Ferrari via resolvent cubic)
inline void quartic_roots(Complex a, Complex b, Complex c, Complex d, std::vector<Complex>& out) {
    // depressed form t^4 + p t^2 + q t + r, z = t - a/4
    const Complex a2 = a * a;
    const Complex p = b - 3.0 * a2 / 8.0;
    const Complex q = c - a * b / 2.0 + a2 * a / 8.0;
    const Complex r = d - a * c / 4.0 + a2 * b / 16.0 - 3.0 * a2 * a2 / 256.0;
    const Complex shift = -a / 4.0;

    std::vector<Complex> res;
    cubic_roots(-p, -4.0 * r, 4.0 * p * r - q * q, res);
    Complex z = res[0];
    for (const Complex& cand : res)
        if (std::abs(cand - p) > std::abs(z - p)) z = cand;

    const Complex alpha2 = z - p;
    std::vector<Complex> t;
    if (std::abs(alpha2) <= 1e-14 * (1.0 + std::abs(p) + std::abs(z))) {
        // biquadratic t^4 + p t^2 + r
        std::vector<Complex> t2;
        quadratic_roots(p, r, t2);
        for (const Complex& v : t2) {
            const Complex s = std::sqrt(v);
            t.push_back(s);
            t.push_back(-s);
        }
    } else {
        const Complex alpha = std::sqrt(alpha2);
        const Complex beta = (z - q / alpha) / 2.0;
        const Complex gamma = (z + q / alpha) / 2.0;
        quadratic_roots(alpha, beta, t);
        quadratic_roots(-alpha, gamma, t);
    }
    for (const Complex& v : t) out.push_back(v + shift);
}

// a couple of Newton steps against the monic polynomial keep clustered
// roots honest after the closed forms
inline void polish_roots(const std::vector<Complex>& coeffs, std::vector<Complex>& roots,
                         double scale) {
    const std::size_t n = coeffs.size();
    for (Complex& z : roots) {
        for (int it = 0; it < 2; ++it) {
            Complex pv(1.0, 0.0), dv(0.0, 0.0);
            for (std::size_t k = 0; k < n; ++k) {
                dv = dv * z + pv;
                pv = pv * z - coeffs[k];
            }
            if (std::abs(dv) < 1e-30 || !std::isfinite(std::abs(dv))) break;
            const Complex step = pv / dv;
            if (!std::isfinite(std::abs(step)) || std::abs(step) > scale) break;
            z -= step;
        }
    }
}

} // namespace detail

/// All eigenvalues of a square matrix, with multiplicity, unordered.
/// Hermitian inputs route through the Jacobi solver at any supported size;
/// general matrices use characteristic-polynomial closed forms and are
/// capped at dimension 4.
inline std::vector<Complex> eigenvalues_general(const ComplexMatrix& a) {
    if (!a.square()) throw DimensionError("eigenvalues_general: matrix must be square");
    const std::size_t n = a.rows();
    if (n > kMaxDimension) throw UnsupportedError("eigenvalues_general: dimension above cap");
    const double scale = 1.0 + max_abs(a);

    if (hermiticity_residual(a) <= 1e-12 * scale) {
        SpectralDecomposition eig = hermitian_eig(a, 1e-12);
        std::vector<Complex> out;
        out.reserve(n);
        for (double v : eig.eigenvalues) out.emplace_back(v, 0.0);
        return out;
    }
    if (n > 4)
        throw UnsupportedError(
            "eigenvalues_general: non-Hermitian input supported only up to dimension 4");

    const std::vector<Complex> c = detail::char_poly_coeffs(a);
    std::vector<Complex> roots;
    roots.reserve(n);
    switch (n) {
        case 1:
            roots.push_back(c[0]);
            break;
        case 2:
            detail::quadratic_roots(-c[0], -c[1], roots);
            break;
        case 3:
            detail::cubic_roots(-c[0], -c[1], -c[2], roots);
            break;
        default:
            detail::quartic_roots(-c[0], -c[1], -c[2], -c[3], roots);
            break;
    }
    detail::polish_roots(c, roots, 16.0 * scale);
    return roots;
}

// ---------------------------------------------------------------------------
// Spectral functions on PSD matrices

/// Positive spectral functions applied through the eigendecomposition:
/// x^p (p > 0), exp(s x), and the clipped affine map max(0, a x + b).
class SpectralFunction {
public:
    enum class Kind { Power, Exp, AffineClip };

    static SpectralFunction power(double p) {
        if (!(p > 0.0)) throw UsageError("SpectralFunction::power: exponent must be > 0");
        return SpectralFunction(Kind::Power, p, 0.0);
    }
    static SpectralFunction exp_scale(double s) { return SpectralFunction(Kind::Exp, s, 0.0); }
    static SpectralFunction affine_clip(double a, double b) {
        return SpectralFunction(Kind::AffineClip, a, b);
    }

    Kind kind() const { return kind_; }
    double param_a() const { return a_; }
    double param_b() const { return b_; }

    double operator()(double x) const {
        switch (kind_) {
            case Kind::Power: return std::pow(x, a_);
            case Kind::Exp: return std::exp(a_ * x);
            case Kind::AffineClip: return std::max(0.0, a_ * x + b_);
        }
        return 0.0;   // unreachable
    }

    std::string name() const {
        switch (kind_) {
            case Kind::Power: return "power:" + std::to_string(a_);
            case Kind::Exp: return "exp:" + std::to_string(a_);
            case Kind::AffineClip:
                return "affine:" + std::to_string(a_) + ":" + std::to_string(b_);
        }
        return "?";
    }

private:
    SpectralFunction(Kind k, double a, double b) : kind_(k), a_(a), b_(b) {}
    Kind kind_;
    double a_, b_;
};

// U f(Lambda) U* from an existing decomposition; eigenvalues are clamped at 0.
inline ComplexMatrix apply_to_decomposition(const SpectralDecomposition& eig,
                                            const SpectralFunction& f) {
    const std::size_t n = eig.basis.rows();
    std::vector<double> fv(n);
    for (std::size_t i = 0; i < n; ++i) fv[i] = f(std::max(0.0, eig.eigenvalues[i]));
    ComplexMatrix scaled = eig.basis;   // columns scaled by f(lambda_i)
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= fv[j];
    return matmul(scaled, adjoint(eig.basis));
}

/// f(H) = U f(Lambda) U* for PSD H. Eigenvalues below -tol * (1 + max entry)
/// raise a domain error; smaller negative noise is clamped to zero.
inline ComplexMatrix spectral_apply(const ComplexMatrix& h, const SpectralFunction& f,
                                    double tol = kDefaultLinalgTol) {
    SpectralDecomposition eig = hermitian_eig(h, tol);
    const double scale = 1.0 + max_abs(h);
    for (double v : eig.eigenvalues)
        if (v < -tol * scale)
            throw DomainError("spectral_apply: input has a negative eigenvalue beyond tolerance");
    return apply_to_decomposition(eig, f);
}

} // namespace majcheck

#endif
