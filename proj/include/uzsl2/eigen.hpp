#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "uzsl2/complex_matrix.hpp"
#include "uzsl2/tolerances.hpp"

namespace uzsl2 {

/// Full spectrum of a general complex matrix. Eigenvalues are sorted by
/// (Re, Im); vectors are unit-norm columns in matching order. Left vectors,
/// when requested, are eigenvectors of A^dagger conjugate-paired with the
/// right ones (rows of V^-1, normalised), so <w_i, v_j> ~ delta_ij before
/// normalisation.
struct EigenDecomposition {
    std::vector<Complex> values;
    ComplexMatrix right_vectors;
    std::optional<ComplexMatrix> left_vectors;
    std::vector<double> residuals;  // ||A v_k - lambda_k v_k||_2 per pair
};

namespace detail {

inline bool complex_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

// Parlett-Reinsch balancing (diagonal powers of two, no permutation phase).
inline std::vector<double> balance(ComplexMatrix& a) {
    const std::size_t n = a.rows();
    std::vector<double> scale(n, 1.0);
    const double radix = 2.0;
    bool converged = false;
    while (!converged) {
        converged = true;
        for (std::size_t i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double f = 1.0;
            const double s = c + r;
            while (c < r / radix) { c *= radix; r /= radix; f *= radix; }
            while (c >= r * radix) { c /= radix; r *= radix; f /= radix; }
            if (f != 1.0 && (c + r) < 0.95 * s) {
                converged = false;
                scale[i] *= f;
                const double finv = 1.0 / f;
                for (std::size_t j = 0; j < n; ++j) a(i, j) *= finv;
                for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
    return scale;
}

struct Householder {
    std::size_t offset;           // reflector acts on rows/cols offset..n-1
    std::vector<Complex> v;       // unit reflector vector
};

// Reduce to upper Hessenberg via unitary Householder reflectors; reflectors
// are kept for transforming eigenvectors back.
inline std::vector<Householder> hessenberg_reduce(ComplexMatrix& a) {
    const std::size_t n = a.rows();
    std::vector<Householder> reflectors;
    if (n < 3) return reflectors;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t m = n - k - 1;
        std::vector<Complex> x(m);
        double xnorm = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            x[i] = a(k + 1 + i, k);
            xnorm += std::norm(x[i]);
        }
        xnorm = std::sqrt(xnorm);
        if (xnorm == 0.0) continue;
        Complex alpha = -xnorm;
        if (x[0] != Complex{}) alpha *= x[0] / std::abs(x[0]);
        x[0] -= alpha;
        double vnorm = 0.0;
        for (const auto& xi : x) vnorm += std::norm(xi);
        vnorm = std::sqrt(vnorm);
        if (vnorm < xnorm * 1e-300) continue;
        for (auto& xi : x) xi /= vnorm;
        // A <- (I - 2 v v^H) A (rows k+1..)
        for (std::size_t j = k; j < n; ++j) {
            Complex dot{};
            for (std::size_t i = 0; i < m; ++i) dot += std::conj(x[i]) * a(k + 1 + i, j);
            dot *= 2.0;
            for (std::size_t i = 0; i < m; ++i) a(k + 1 + i, j) -= dot * x[i];
        }
        // A <- A (I - 2 v v^H) (cols k+1..)
        for (std::size_t i = 0; i < n; ++i) {
            Complex dot{};
            for (std::size_t j = 0; j < m; ++j) dot += a(i, k + 1 + j) * x[j];
            dot *= 2.0;
            for (std::size_t j = 0; j < m; ++j) a(i, k + 1 + j) -= dot * std::conj(x[j]);
        }
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = Complex{};
        reflectors.push_back({k + 1, std::move(x)});
    }
    return reflectors;
}

inline void apply_reflectors_back(const std::vector<Householder>& reflectors,
                                  std::vector<Complex>& v) {
    for (auto it = reflectors.rbegin(); it != reflectors.rend(); ++it) {
        Complex dot{};
        for (std::size_t i = 0; i < it->v.size(); ++i)
            dot += std::conj(it->v[i]) * v[it->offset + i];
        dot *= 2.0;
        for (std::size_t i = 0; i < it->v.size(); ++i)
            v[it->offset + i] -= dot * it->v[i];
    }
}

// Eigenvalues of a complex 2x2 block.
inline void eig2x2(Complex a, Complex b, Complex c, Complex d, Complex& l1, Complex& l2) {
    const Complex tr = a + d;
    const Complex det = a * d - b * c;
    const Complex disc = std::sqrt(tr * tr - 4.0 * det);
    l1 = 0.5 * (tr + disc);
    l2 = 0.5 * (tr - disc);
}

// Shifted QR iteration (explicit Givens form) on an upper Hessenberg matrix;
// eigenvalues only. Throws on non-convergence.
inline std::vector<Complex> hessenberg_qr_eigenvalues(ComplexMatrix h, const Tolerances& tols) {
    const std::size_t n = h.rows();
    std::vector<Complex> lambda(n);
    const double eps = std::numeric_limits<double>::epsilon();
    const double hnorm = std::max(h.frobenius_norm(), std::numeric_limits<double>::min());
    std::size_t hi = n - 1;
    std::size_t total_sweeps = 0;
    const std::size_t max_sweeps = tols.qr_sweeps_per_dim * n;
    std::size_t since_deflation = 0;

    while (true) {
        // deflate converged subdiagonals
        std::size_t lo = hi;
        while (lo > 0) {
            const double sub = std::abs(h(lo, lo - 1));
            const double diag = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
            if (sub <= eps * diag + eps * eps * hnorm) {
                h(lo, lo - 1) = Complex{};
                break;
            }
            --lo;
        }
        if (lo == hi) {
            lambda[hi] = h(hi, hi);
            since_deflation = 0;
            if (hi == 0) break;
            --hi;
            continue;
        }
        if (lo + 1 == hi) {
            eig2x2(h(lo, lo), h(lo, hi), h(hi, lo), h(hi, hi), lambda[lo], lambda[hi]);
            since_deflation = 0;
            if (lo == 0) break;
            hi = lo - 1;
            continue;
        }
        if (++total_sweeps > max_sweeps)
            throw std::runtime_error("eigen_decompose: QR iteration failed to converge after " +
                                     std::to_string(max_sweeps) + " sweeps");
        // Wilkinson shift from the trailing 2x2; occasional exceptional shift.
        Complex shift;
        if (++since_deflation % 12 == 0) {
            shift = h(hi, hi) + Complex{std::abs(h(hi, hi - 1)) + std::abs(h(hi - 1, hi - 2)), 0.0};
        } else {
            Complex l1, l2;
            eig2x2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi), l1, l2);
            shift = (std::abs(l1 - h(hi, hi)) < std::abs(l2 - h(hi, hi))) ? l1 : l2;
        }
        // QR step: factor (H - shift I) with Givens rotations, then RQ + shift I.
        std::vector<Complex> cs(hi - lo), sn(hi - lo);
        for (std::size_t i = lo; i <= hi; ++i) h(i, i) -= shift;
        for (std::size_t i = lo; i < hi; ++i) {
            const Complex f = h(i, i), g = h(i + 1, i);
            const double denom = std::hypot(std::abs(f), std::abs(g));
            Complex c, s;
            if (denom == 0.0) { c = 1.0; s = Complex{}; }
            else { c = std::abs(f) / denom;
                   const Complex fs = (f == Complex{}) ? Complex{1.0, 0.0} : f / std::abs(f);
                   s = fs * std::conj(g) / denom; }
            cs[i - lo] = c; sn[i - lo] = s;
            for (std::size_t j = i; j <= hi; ++j) {
                const Complex t1 = h(i, j), t2 = h(i + 1, j);
                h(i, j) = c * t1 + s * t2;
                h(i + 1, j) = -std::conj(s) * t1 + c * t2;
            }
        }
        for (std::size_t i = lo; i < hi; ++i) {
            const Complex c = cs[i - lo], s = sn[i - lo];
            const std::size_t top = lo;
            for (std::size_t r = top; r <= i + 1; ++r) {
                const Complex t1 = h(r, i), t2 = h(r, i + 1);
                h(r, i) = t1 * c + t2 * std::conj(s);
                h(r, i + 1) = -t1 * s + t2 * c;
            }
        }
        for (std::size_t i = lo; i <= hi; ++i) h(i, i) += shift;
    }
    std::sort(lambda.begin(), lambda.end(), complex_less);
    return lambda;
}

// One inverse-iteration eigenvector of an upper Hessenberg matrix for the
// (possibly perturbed) shift lambda. Hessenberg LU with partial pivoting.
inline std::vector<Complex> hessenberg_inverse_iteration(const ComplexMatrix& h0, Complex lambda,
                                                         std::size_t start_index) {
    const std::size_t n = h0.rows();
    ComplexMatrix u = h0;
    for (std::size_t i = 0; i < n; ++i) u(i, i) -= lambda;
    // zero pivots are replaced by eps * ||H|| (the EISPACK cinvit choice),
    // which keeps 1/pivot finite and still drives one huge growth step
    const double tiny =
        std::max(u.frobenius_norm(), 1.0) * std::numeric_limits<double>::epsilon();
    const double growth_cap = 1.0 / (std::numeric_limits<double>::epsilon() *
                                     static_cast<double>(n) * 16.0);

    // LU of Hessenberg with adjacent-row pivoting; store multipliers and swaps.
    std::vector<Complex> mult(n, Complex{});
    std::vector<char> swapped(n, 0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (std::abs(u(k + 1, k)) > std::abs(u(k, k))) {
            swapped[k] = 1;
            for (std::size_t j = k; j < n; ++j) std::swap(u(k, j), u(k + 1, j));
        }
        Complex piv = u(k, k);
        if (piv == Complex{}) { piv = Complex{tiny, 0.0}; u(k, k) = piv; }
        const Complex m = u(k + 1, k) / piv;
        mult[k] = m;
        u(k + 1, k) = Complex{};
        if (m != Complex{})
            for (std::size_t j = k + 1; j < n; ++j) u(k + 1, j) -= m * u(k, j);
    }
    if (u(n - 1, n - 1) == Complex{}) u(n - 1, n - 1) = Complex{tiny, 0.0};

    auto solve = [&](std::vector<Complex> b) {
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (swapped[k]) std::swap(b[k], b[k + 1]);
            b[k + 1] -= mult[k] * b[k];
        }
        for (std::size_t i = n; i-- > 0;) {
            Complex s = b[i];
            for (std::size_t j = i + 1; j < n; ++j) s -= u(i, j) * b[j];
            b[i] = s / u(i, i);
        }
        return b;
    };

    // dense deterministic start vector: unit vectors have zero overlap with
    // eigenvectors of triangular or block-structured inputs; the hash varies
    // with start_index so repeated eigenvalues get independent starts
    std::vector<Complex> v(n);
    {
        std::uint64_t state = 0x9E3779B97F4A7C15ull * (start_index + 1);
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            const double re = 0.5 + static_cast<double>((state >> 33) & 0xFFFF) / 65536.0;
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            const double im = static_cast<double>((state >> 33) & 0xFFFF) / 65536.0 - 0.5;
            v[i] = Complex{re, im};
            norm += std::norm(v[i]);
        }
        norm = std::sqrt(norm);
        for (auto& vi : v) vi /= norm;
    }
    for (int iter = 0; iter < 5; ++iter) {
        std::vector<Complex> y = solve(v);
        double ymax = 0.0;
        for (const auto& yi : y) ymax = std::max(ymax, std::abs(yi));
        if (ymax == 0.0 || !std::isfinite(ymax)) break;
        double ynorm = 0.0;
        for (const auto& yi : y) ynorm += std::norm(yi / ymax);
        ynorm = std::sqrt(ynorm) * ymax;
        for (auto& yi : y) yi /= ynorm;
        v = std::move(y);
        if (ynorm >= growth_cap) break;  // solution has converged
    }
    return v;
}

// Dense LU inverse (partial pivoting); used for left vectors.
inline ComplexMatrix invert(const ComplexMatrix& a) {
    a.require_square();
    const std::size_t n = a.rows();
    ComplexMatrix lu = a;
    ComplexMatrix inv = ComplexMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < n; ++i)
            if (std::abs(lu(i, col)) > std::abs(lu(piv, col))) piv = i;
        if (lu(piv, col) == Complex{})
            throw std::runtime_error("invert: singular matrix");
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(lu(col, j), lu(piv, j));
                std::swap(inv(col, j), inv(piv, j));
            }
        const Complex d = lu(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            const Complex f = lu(i, col) / d;
            if (f == Complex{}) continue;
            for (std::size_t j = col; j < n; ++j) lu(i, j) -= f * lu(col, j);
            for (std::size_t j = 0; j < n; ++j) inv(i, j) -= f * inv(col, j);
        }
    }
    for (std::size_t col = n; col-- > 0;) {
        const Complex d = lu(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            Complex s = inv(col, j);
            for (std::size_t k = col + 1; k < n; ++k) s -= lu(col, k) * inv(k, j);
            inv(col, j) = s / d;
        }
    }
    return inv;
}

}  // namespace detail

/// Balancing + Householder Hessenberg + shifted QR for values, inverse
/// iteration on the Hessenberg form for vectors. Residuals are measured
/// against the original matrix; a pair violating eig_residual * ||A||_F is a
/// hard error rather than silent garbage.
inline EigenDecomposition eigen_decompose(const ComplexMatrix& a, bool want_left = false,
                                          const Tolerances& tols = default_tolerances()) {
    a.require_square();
    const std::size_t n = a.rows();
    if (n > tols.max_eig_dim)
        throw std::invalid_argument("eigen_decompose: dimension exceeds configured maximum");
    if (!a.is_finite()) throw std::invalid_argument("eigen_decompose: non-finite input");

    ComplexMatrix work = a;
    const std::vector<double> scale = detail::balance(work);
    const std::vector<detail::Householder> reflectors = detail::hessenberg_reduce(work);
    const ComplexMatrix hess = work;  // kept for inverse iteration
    std::vector<Complex> lambda = detail::hessenberg_qr_eigenvalues(work, tols);

    EigenDecomposition out{std::move(lambda), ComplexMatrix(n, n), std::nullopt, {}};

    // Inverse iteration; shifts of clustered eigenvalues are spread apart so
    // repeated eigenvalues do not collapse onto one vector.
    const double hnorm = std::max(hess.frobenius_norm(), std::numeric_limits<double>::min());
    const double eps3 = std::numeric_limits<double>::epsilon() * hnorm;
    for (std::size_t k = 0; k < n; ++k) {
        Complex shift = out.values[k];
        std::size_t bumps = 0;
        for (std::size_t j = 0; j < k; ++j)
            if (std::abs(out.values[k] - out.values[j]) < 4.0 * eps3) ++bumps;
        shift += static_cast<double>(bumps) * 8.0 * eps3 * Complex{1.0, 1.0};
        std::vector<Complex> v = detail::hessenberg_inverse_iteration(hess, shift, k + bumps);
        detail::apply_reflectors_back(reflectors, v);
        for (std::size_t i = 0; i < n; ++i) v[i] *= scale[i];
        double norm = 0.0;
        for (const auto& vi : v) norm += std::norm(vi);
        norm = std::sqrt(norm);
        if (norm == 0.0) throw std::runtime_error("eigen_decompose: zero eigenvector");
        for (std::size_t i = 0; i < n; ++i) out.right_vectors(i, k) = v[i] / norm;
    }

    // residuals against the original matrix
    out.residuals.resize(n, 0.0);
    const double anorm = std::max(a.frobenius_norm(), std::numeric_limits<double>::min());
    for (std::size_t k = 0; k < n; ++k) {
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            Complex s{};
            for (std::size_t j = 0; j < n; ++j) s += a(i, j) * out.right_vectors(j, k);
            s -= out.values[k] * out.right_vectors(i, k);
            r += std::norm(s);
        }
        out.residuals[k] = std::sqrt(r);
        if (!(out.residuals[k] <= tols.eig_residual * anorm))
            throw std::runtime_error("eigen_decompose: residual " +
                                     std::to_string(out.residuals[k]) + " exceeds tolerance for pair " +
                                     std::to_string(k));
    }

    if (want_left) {
        // Rows of V^-1 are left eigenvectors (eigenvectors of A^dagger with
        // conjugated eigenvalues), exactly biorthogonal to the columns of V.
        const ComplexMatrix vinv = detail::invert(out.right_vectors);
        ComplexMatrix left(n, n);
        for (std::size_t k = 0; k < n; ++k) {
            double norm = 0.0;
            for (std::size_t i = 0; i < n; ++i) norm += std::norm(vinv(k, i));
            norm = std::sqrt(norm);
            for (std::size_t i = 0; i < n; ++i) left(i, k) = std::conj(vinv(k, i)) / norm;
        }
        out.left_vectors = std::move(left);
    }
    return out;
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
/// Eigenvalues ascending, eigenvectors unitary columns.
struct HermitianEigen {
    std::vector<double> values;
    ComplexMatrix vectors;
};

inline HermitianEigen hermitian_eigen(const ComplexMatrix& s,
                                      const Tolerances& tols = default_tolerances()) {
    s.require_square();
    const std::size_t n = s.rows();
    const double snorm = s.frobenius_norm();
    if (!s.is_hermitian(tols.herm * std::max(snorm, 1.0)))
        throw std::invalid_argument("hermitian_eigen: input is not Hermitian within tolerance");
    ComplexMatrix a = s;
    // symmetrise exactly so Jacobi sees a Hermitian matrix
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = Complex{a(i, i).real(), 0.0};
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex m = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = m;
            a(j, i) = std::conj(m);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double eps = std::numeric_limits<double>::epsilon();
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (std::sqrt(off) <= eps * std::max(snorm, 1.0)) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                if (std::abs(apq) <= eps * eps * std::max(snorm, 1.0)) continue;
                const double app = a(p, p).real(), aqq = a(q, q).real();
                const Complex phase = apq / std::abs(apq);
                const double tau = (aqq - app) / (2.0 * std::abs(apq));
                const double t = (tau >= 0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const Complex sr = t * c * phase;
                for (std::size_t k = 0; k < n; ++k) {  // A <- J^H A J on rows
                    const Complex akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * c - akq * std::conj(sr);
                    a(k, q) = akp * sr + akq * c;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - sr * aqk;
                    a(q, k) = std::conj(sr) * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * c - vkq * std::conj(sr);
                    v(k, q) = vkp * sr + vkq * c;
                }
            }
    }
    HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = diag[order[k]];
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

/// Unique positive-definite Hermitian square root via unitary
/// eigendecomposition. Rejects non-Hermitian input and names any
/// non-positive eigenvalue (Krein regime, out of scope here).
inline ComplexMatrix hermitian_sqrt(const ComplexMatrix& s,
                                    const Tolerances& tols = default_tolerances()) {
    const HermitianEigen eig = hermitian_eigen(s, tols);
    for (double lam : eig.values)
        if (!(lam > 0.0))
            throw std::domain_error("hermitian_sqrt: non-positive eigenvalue " + std::to_string(lam));
    const std::size_t n = s.rows();
    ComplexMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc{};
            for (std::size_t k = 0; k < n; ++k)
                acc += eig.vectors(i, k) * std::sqrt(eig.values[k]) * std::conj(eig.vectors(j, k));
            r(i, j) = acc;
        }
    r.require_finite("hermitian_sqrt");
    return r;
}

/// Singular values by one-sided Jacobi (columns orthogonalised in place);
/// descending order. Accurate for small singular values, which the rank
/// decisions need.
inline std::vector<double> singular_values(const ComplexMatrix& a) {
    ComplexMatrix w = a.rows() >= a.cols() ? a : a.adjoint();
    const std::size_t m = w.rows(), n = w.cols();
    const double eps = std::numeric_limits<double>::epsilon();
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0;
                Complex apq{};
                for (std::size_t i = 0; i < m; ++i) {
                    app += std::norm(w(i, p));
                    aqq += std::norm(w(i, q));
                    apq += std::conj(w(i, p)) * w(i, q);
                }
                if (std::abs(apq) <= eps * std::sqrt(app * aqq) || apq == Complex{}) continue;
                rotated = true;
                const Complex phase = apq / std::abs(apq);
                const double tau = (aqq - app) / (2.0 * std::abs(apq));
                const double t = (tau >= 0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const Complex sr = t * c * phase;
                for (std::size_t i = 0; i < m; ++i) {
                    const Complex wip = w(i, p), wiq = w(i, q);
                    w(i, p) = wip * c - wiq * std::conj(sr);
                    w(i, q) = wip * sr + wiq * c;
                }
            }
        if (!rotated) break;
    }
    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += std::norm(w(i, j));
        sigma[j] = std::sqrt(s);
    }
    std::sort(sigma.rbegin(), sigma.rend());
    return sigma;
}

/// Numerical rank: count of singular values above rank_cutoff * sigma_max.
inline std::size_t matrix_rank(const ComplexMatrix& a,
                               const Tolerances& tols = default_tolerances()) {
    const std::vector<double> sigma = singular_values(a);
    if (sigma.empty() || sigma.front() == 0.0) return 0;
    const double cutoff = tols.rank_cutoff * sigma.front();
    std::size_t r = 0;
    for (double s : sigma)
        if (s > cutoff) ++r;
    return r;
}

}  // namespace uzsl2
