#pragma once

#include <cmath>
#include <cstddef>

#include "uzsl2/complex_matrix.hpp"
#include "uzsl2/tolerances.hpp"

namespace uzsl2 {

namespace detail {

/// True when A is strictly triangular (lower or upper), hence nilpotent.
inline bool strictly_triangular(const ComplexMatrix& a) {
    const std::size_t n = a.rows();
    bool lower = true, upper = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (a(i, i) != Complex{}) return false;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (a(i, j) != Complex{}) lower = false;
            if (a(j, i) != Complex{}) upper = false;
        }
    }
    return lower || upper;
}

/// Nilpotency test: ||A^n||_F <= tol * ||A||_F^n, compared in log space so
/// large norms cannot overflow the threshold.
inline bool numerically_nilpotent(const ComplexMatrix& a, double tol) {
    const std::size_t n = a.rows();
    const double na = a.frobenius_norm();
    if (na == 0.0) return true;
    if (strictly_triangular(a)) return true;
    ComplexMatrix p = a;
    for (std::size_t k = 1; k < n; ++k) p = p * a;
    const double np = p.frobenius_norm();
    if (np == 0.0) return true;
    return std::log(np) <= std::log(tol) + static_cast<double>(n) * std::log(na);
}

inline ComplexMatrix expm_nilpotent(const ComplexMatrix& a) {
    const std::size_t n = a.rows();
    ComplexMatrix result = ComplexMatrix::identity(n);
    ComplexMatrix term = ComplexMatrix::identity(n);
    for (std::size_t k = 1; k < n; ++k) {
        term = term * a;
        term *= Complex{1.0 / static_cast<double>(k), 0.0};
        if (term.frobenius_norm() == 0.0) break;
        result += term;
    }
    return result;
}

/// Pade [13/13] scaling-and-squaring (Higham 2005 coefficients).
inline ComplexMatrix expm_pade(const ComplexMatrix& a) {
    static const double b[14] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0, 129060195264000.0, 10559470521600.0,
        670442572800.0, 33522128640.0, 1323241920.0,
        40840800.0, 960960.0, 16380.0, 182.0, 1.0};
    const std::size_t n = a.rows();
    const double norm = a.frobenius_norm();
    int squarings = 0;
    ComplexMatrix as = a;
    const double theta13 = 5.371920351148152;
    if (norm > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / theta13)));
        as *= Complex{std::ldexp(1.0, -squarings), 0.0};
    }
    const ComplexMatrix a2 = as * as;
    const ComplexMatrix a4 = a2 * a2;
    const ComplexMatrix a6 = a2 * a4;
    const ComplexMatrix eye = ComplexMatrix::identity(n);
    ComplexMatrix u = as * (a6 * (a6 * b[13] + a4 * b[11] + a2 * b[9]) +
                            a6 * b[7] + a4 * b[5] + a2 * b[3] + eye * b[1]);
    ComplexMatrix v = a6 * (a6 * b[12] + a4 * b[10] + a2 * b[8]) +
                      a6 * b[6] + a4 * b[4] + a2 * b[2] + eye * b[0];

    // Solve (v - u) r = (v + u) by Gaussian elimination with partial pivoting.
    ComplexMatrix lhs = v - u;
    ComplexMatrix r = v + u;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < n; ++i)
            if (std::abs(lhs(i, col)) > std::abs(lhs(piv, col))) piv = i;
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(lhs(col, j), lhs(piv, j));
                std::swap(r(col, j), r(piv, j));
            }
        const Complex d = lhs(col, col);
        if (d == Complex{})
            throw std::runtime_error("matrix_exponential: singular Pade denominator");
        for (std::size_t i = col + 1; i < n; ++i) {
            const Complex f = lhs(i, col) / d;
            if (f == Complex{}) continue;
            for (std::size_t j = col; j < n; ++j) lhs(i, j) -= f * lhs(col, j);
            for (std::size_t j = 0; j < n; ++j) r(i, j) -= f * r(col, j);
        }
    }
    for (std::size_t col = n; col-- > 0;) {
        const Complex d = lhs(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            Complex s = r(col, j);
            for (std::size_t k = col + 1; k < n; ++k) s -= lhs(col, k) * r(k, j);
            r(col, j) = s / d;
        }
    }
    for (int s = 0; s < squarings; ++s) r = r * r;
    return r;
}

}  // namespace detail

/// e^A. Nilpotent inputs (all J+ representations are strictly triangular)
/// take the exact finite-series path; everything else goes through
/// scaling-and-squaring Pade.
inline ComplexMatrix matrix_exponential(const ComplexMatrix& a,
                                        const Tolerances& tols = default_tolerances()) {
    a.require_square();
    if (a.frobenius_norm() == 0.0) return ComplexMatrix::identity(a.rows());
    ComplexMatrix result = detail::numerically_nilpotent(a, tols.nilpotent)
                               ? detail::expm_nilpotent(a)
                               : detail::expm_pade(a);
    result.require_finite("matrix_exponential");
    return result;
}

/// phi(A) = (e^{2zA} - 1)/z for nilpotent A, evaluated as the exact finite
/// series sum_{k>=1} (2z)^k A^k / (z k!); at z=0 this is 2A.
inline ComplexMatrix expm_ratio_2z(const ComplexMatrix& a, double z) {
    a.require_square();
    const std::size_t n = a.rows();
    if (z == 0.0) return a * Complex{2.0, 0.0};
    ComplexMatrix result(n, n);
    ComplexMatrix power = ComplexMatrix::identity(n);
    double coeff = 1.0;  // (2z)^k / k!, built incrementally
    for (std::size_t k = 1; k <= n; ++k) {
        power = power * a;
        coeff *= 2.0 * z / static_cast<double>(k);
        if (power.frobenius_norm() == 0.0) break;
        result += power * Complex{coeff / z, 0.0};
    }
    return result;
}

/// e^{alpha X} A e^{-alpha X}, both exponentials via matrix_exponential.
inline ComplexMatrix similarity_conjugate(const ComplexMatrix& a, const ComplexMatrix& x,
                                          Complex alpha,
                                          const Tolerances& tols = default_tolerances()) {
    const ComplexMatrix e = matrix_exponential(x * alpha, tols);
    const ComplexMatrix einv = matrix_exponential(x * (-alpha), tols);
    return e * a * einv;
}

}  // namespace uzsl2
