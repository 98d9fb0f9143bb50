#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "uzsl2/complex_matrix.hpp"
#include "uzsl2/eigen.hpp"

namespace uzsl2 {

/// Monic polynomial lambda^n + c[n-1] lambda^{n-1} + ... + c[0].
/// The leading coefficient 1 is implicit.
struct PolynomialCoefficients {
    std::vector<Complex> c;  // c[0]..c[n-1]
    std::size_t degree() const { return c.size(); }
};

/// Companion matrix of a monic polynomial.
inline ComplexMatrix companion_matrix(const PolynomialCoefficients& p) {
    const std::size_t n = p.degree();
    if (n == 0) throw std::invalid_argument("companion_matrix: degree must be >= 1");
    ComplexMatrix m(n, n);
    for (std::size_t i = 1; i < n; ++i) m(i, i - 1) = 1.0;
    for (std::size_t i = 0; i < n; ++i) m(i, n - 1) = -p.c[i];
    return m;
}

/// All roots with multiplicity, via eigen_decompose of the companion matrix;
/// sorted by (Re, Im). Tight multiple roots carry the usual companion-matrix
/// conditioning (a k-fold root is resolved to roughly eps^(1/k)).
inline std::vector<Complex> polynomial_roots(const PolynomialCoefficients& p,
                                             const Tolerances& tols = default_tolerances()) {
    if (p.degree() == 0) throw std::invalid_argument("polynomial_roots: degree must be >= 1");
    if (p.degree() == 1) return {-p.c[0]};
    Tolerances loose = tols;
    loose.eig_residual = 1.0;  // residual gate is meaningless for a defective companion
    EigenDecomposition eig = eigen_decompose(companion_matrix(p), false, loose);
    return eig.values;
}

/// Evaluate the monic polynomial at z (Horner).
inline Complex polynomial_eval(const PolynomialCoefficients& p, Complex z) {
    Complex acc{1.0, 0.0};
    for (std::size_t k = p.degree(); k-- > 0;) acc = acc * z + p.c[k];
    return acc;
}

}  // namespace uzsl2
