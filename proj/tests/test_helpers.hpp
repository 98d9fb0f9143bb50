#pragma once

#include <algorithm>
#include <complex>
#include <random>
#include <vector>

#include "uzsl2/complex_matrix.hpp"

namespace testutil {

using uzsl2::Complex;
using uzsl2::ComplexMatrix;

/// Worst nearest-match distance between two multisets of complex numbers.
/// Sorted elementwise comparison is unusable here: conjugate pairs with
/// equal real parts order unpredictably under 1-ulp noise.
inline double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
    if (a.size() != b.size()) return 1e300;
    double worst = 0.0;
    for (const auto& x : a) {
        std::size_t best = 0;
        double bd = 1e300;
        for (std::size_t i = 0; i < b.size(); ++i) {
            const double d = std::abs(x - b[i]);
            if (d < bd) { bd = d; best = i; }
        }
        worst = std::max(worst, bd);
        b.erase(b.begin() + best);
    }
    return worst;
}

inline ComplexMatrix random_matrix(std::size_t n, std::uint64_t seed, double amplitude = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-amplitude, amplitude);
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex{u(rng), u(rng)};
    return m;
}

/// Characteristic polynomial coefficients by the Faddeev-LeVerrier
/// recurrence; the independent oracle for eigensolver cross-checks.
inline std::vector<Complex> faddeev_leverrier(const ComplexMatrix& a) {
    const std::size_t n = a.rows();
    std::vector<Complex> c(n + 1);
    c[n] = 1.0;
    ComplexMatrix m = ComplexMatrix::zero(n, n);
    const ComplexMatrix eye = ComplexMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m + eye * c[n - k + 1];
        c[n - k] = (a * m).trace() * Complex{-1.0 / static_cast<double>(k), 0.0};
    }
    c.pop_back();
    return c;  // c[0..n-1] of the monic polynomial
}

}  // namespace testutil
