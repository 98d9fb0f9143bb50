#pragma once

#include <cmath>
#include <string>

#include "uzsl2/complex_matrix.hpp"
#include "uzsl2/generators.hpp"
#include "uzsl2/matrix_exponential.hpp"

namespace uzsl2 {

/// Closed-form conjugation identities of the generators, checked by comparing
/// e^{alpha X} Y e^{-alpha X} (true matrix exponentials) against the
/// right-hand sides. With f = (e^{2zJ+}-1)/(2z) (f = J+ at z = 0):
///   e^{aJ+} J- e^{-aJ+} = a (J0 - a f) + J-
///   e^{aJ+} J0 e^{-aJ+} = J0 - 2 a f
///   e^{aJ0} J+ e^{-aJ0} = sum_{n>=1} ((-2z)^{n-1}/n)(1 - (-2 e^a sinh a)^n) f^n
///   e^{aJ0} J- e^{-aJ0} = e^{-2a} J- + z e^{-a} sinh(a) J0^2
///   e^{aJ0} f  e^{-aJ0} = sum_{n>=1} e^{a(n+1)} (4 z sinh a)^{n-1} f^n
/// The series terminate exactly (f^n carries J+^n). At z = 0 these reduce to
/// the sl(2,R) set; the two e^{aL-} identities are appended in that case, and
/// the derivative identity e^{aJ-} J0 e^{-aJ-} = -d/da e^{aJ-} J+ e^{-aJ-}
/// is checked by central difference at a looser tolerance.
inline VerificationReport verify_adjoint_identities(const GeneratorTriple& t, double alpha,
                                                    double tol,
                                                    const Tolerances& tols = default_tolerances()) {
    VerificationReport rep;
    const std::size_t d = t.dim();
    const double z = t.spec.z;
    const ComplexMatrix f = expm_ratio_2z(t.Jplus, z) * Complex{0.5, 0.0};
    const Complex a{alpha, 0.0};

    auto conj_by = [&](const ComplexMatrix& x, const ComplexMatrix& y, Complex aa) {
        return similarity_conjugate(y, x, aa, tols);
    };

    rep.add("e^{aJ+} J- e^{-aJ+} = a(J0 - a f) + J-",
            detail::rel_residual(conj_by(t.Jplus, t.Jminus, a),
                                 (t.J0 - f * a) * a + t.Jminus),
            tol);
    rep.add("e^{aJ+} J0 e^{-aJ+} = J0 - 2a f",
            detail::rel_residual(conj_by(t.Jplus, t.J0, a), t.J0 - f * (2.0 * a)), tol);

    // series in f, terminated at f^d = 0
    ComplexMatrix series3(d, d), series5(d, d);
    {
        ComplexMatrix fn = ComplexMatrix::identity(d);
        const double twosh = -2.0 * std::exp(alpha) * std::sinh(alpha);
        double pow_z = 1.0;     // (-2z)^{n-1}
        double pow_sh = twosh;  // (-2 e^a sinh a)^n
        double pow4 = 1.0;      // (4 z sinh a)^{n-1}
        for (std::size_t n = 1; n <= d; ++n) {
            fn = fn * f;
            if (fn.frobenius_norm() == 0.0) break;
            series3 += fn * Complex{pow_z / static_cast<double>(n) * (1.0 - pow_sh), 0.0};
            series5 += fn * Complex{std::exp(alpha * static_cast<double>(n + 1)) * pow4, 0.0};
            pow_z *= -2.0 * z;
            pow_sh *= twosh;
            pow4 *= 4.0 * z * std::sinh(alpha);
        }
    }
    rep.add("e^{aJ0} J+ e^{-aJ0} = series(f)",
            detail::rel_residual(conj_by(t.J0, t.Jplus, a), series3), tol);
    rep.add("e^{aJ0} J- e^{-aJ0} = e^{-2a}J- + z e^{-a}sinh(a) J0^2",
            detail::rel_residual(conj_by(t.J0, t.Jminus, a),
                                 t.Jminus * Complex{std::exp(-2.0 * alpha), 0.0} +
                                     t.J0 * t.J0 *
                                         Complex{z * std::exp(-alpha) * std::sinh(alpha), 0.0}),
            tol);
    rep.add("e^{aJ0} f e^{-aJ0} = series(f)",
            detail::rel_residual(conj_by(t.J0, f, a), series5), tol);

    if (z == 0.0) {
        rep.add("e^{aL-} L+ e^{-aL-} = -a(L0 + a L-) + L+",
                detail::rel_residual(conj_by(t.Jminus, t.Jplus, a),
                                     (t.J0 + t.Jminus * a) * (-a) + t.Jplus),
                tol);
        rep.add("e^{aL-} L0 e^{-aL-} = L0 + 2a L-",
                detail::rel_residual(conj_by(t.Jminus, t.J0, a), t.J0 + t.Jminus * (2.0 * a)),
                tol);
    } else {
        // derivative identity by central difference
        const double h = 1e-4;
        const ComplexMatrix plus = conj_by(t.Jminus, t.Jplus, Complex{alpha + h, 0.0});
        const ComplexMatrix minus = conj_by(t.Jminus, t.Jplus, Complex{alpha - h, 0.0});
        const ComplexMatrix deriv = (plus - minus) * Complex{1.0 / (2.0 * h), 0.0};
        rep.add("e^{aJ-} J0 e^{-aJ-} = -d/da e^{aJ-} J+ e^{-aJ-}",
                detail::rel_residual(conj_by(t.Jminus, t.J0, a), -deriv),
                std::max(tol, 1e-6));
    }
    return rep;
}

}  // namespace uzsl2
