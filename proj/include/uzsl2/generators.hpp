#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "uzsl2/complex_matrix.hpp"
#include "uzsl2/matrix_exponential.hpp"
#include "uzsl2/tolerances.hpp"

namespace uzsl2 {

/// Representation parameters: deformation z, weight beta, truncation
/// dimension d. The lower-bounded boson representation is irreducible on the
/// d-dimensional Fock corner exactly when beta = 1 - d (the lowering
/// coefficient sqrt(m)(m-1+beta) vanishes at m = d, so span{|m> : m >= d} is
/// invariant); any other beta gives a plain truncation.
struct RepSpec {
    double z = 0.0;
    double beta = -1.0;
    std::size_t dim = 2;

    bool irreducible() const { return beta == 1.0 - static_cast<double>(dim); }
};

/// The three generator matrices on the Fock basis |0>..|d-1>, column-action
/// convention: X|m> = sum_i M(i,m)|i>. At z = 0 these are the sl(2,R)
/// generators L0, L+, L-.
struct GeneratorTriple {
    RepSpec spec;
    ComplexMatrix J0, Jplus, Jminus;
    bool deformed = false;  // z != 0 semantics

    std::size_t dim() const { return spec.dim; }
};

/// L+ = -i a^dag,  L0 = 2 a^dag a + beta,  L- = -i (a^dag a + beta) a
/// on the d-dimensional Fock truncation.
inline GeneratorTriple build_sl2_generators(const RepSpec& spec) {
    const std::size_t d = spec.dim;
    if (d == 0) throw std::invalid_argument("build_sl2_generators: dim must be >= 1");
    GeneratorTriple t{RepSpec{0.0, spec.beta, d}, ComplexMatrix(d, d), ComplexMatrix(d, d),
                      ComplexMatrix(d, d), false};
    for (std::size_t m = 0; m < d; ++m) {
        t.J0(m, m) = 2.0 * static_cast<double>(m) + spec.beta;
        if (m + 1 < d)
            t.Jplus(m + 1, m) = Complex{0.0, -std::sqrt(static_cast<double>(m + 1))};
        if (m >= 1)
            t.Jminus(m - 1, m) =
                Complex{0.0, -std::sqrt(static_cast<double>(m)) *
                                  (static_cast<double>(m) - 1.0 + spec.beta)};
    }
    return t;
}

/// Deformed generators from their lower-bounded matrix elements:
///   J+|m> = -i sqrt(m+1) |m+1>
///   J0|m> = (2m+beta)|m> + sum_{k>=1} c_k (2m/(k+1) + beta/2) |m+k>
///   J-|m> = -i sqrt(m)(m-1+beta)|m-1>
///           - i sum_{k>=1} c_k [ m/sqrt(m+k) ((m-1)/(k+1) + beta/2) |m-1+k>
///                                - i z beta^2/8 |m+k> ]
/// with c_k = (-2iz)^k/k! sqrt((m+k)!/m!), every ket with index >= d dropped.
/// z = 0 returns the sl(2,R) triple bitwise (the k-sums never run).
inline GeneratorTriple build_deformed_generators(const RepSpec& spec) {
    const std::size_t d = spec.dim;
    if (d == 0) throw std::invalid_argument("build_deformed_generators: dim must be >= 1");
    GeneratorTriple t = build_sl2_generators(spec);
    t.spec = spec;
    t.deformed = spec.z != 0.0;
    if (spec.z == 0.0) return t;

    const double z = spec.z;
    const double beta = spec.beta;
    for (std::size_t m = 0; m < d; ++m) {
        const double md = static_cast<double>(m);
        Complex ck{1.0, 0.0};  // (-2iz)^k / k! * sqrt((m+k)!/m!)
        for (std::size_t k = 1; k < d; ++k) {
            ck *= Complex{0.0, -2.0 * z} * std::sqrt(md + static_cast<double>(k)) /
                  static_cast<double>(k);
            const double kd = static_cast<double>(k);
            if (m + k < d) {
                t.J0(m + k, m) += ck * (2.0 * md / (kd + 1.0) + beta / 2.0);
                t.Jminus(m + k, m) +=
                    Complex{0.0, -1.0} * ck * Complex{0.0, -z * beta * beta / 8.0};
            }
            if (m >= 1 && m - 1 + k < d) {
                t.Jminus(m - 1 + k, m) +=
                    Complex{0.0, -1.0} * ck * (md / std::sqrt(md + kd)) *
                    ((md - 1.0) / (kd + 1.0) + beta / 2.0);
            }
        }
    }
    t.J0.require_finite("build_deformed_generators");
    t.Jminus.require_finite("build_deformed_generators");
    return t;
}

/// PT on the Fock basis: complex conjugation composed with D = diag((-1)^m),
/// the unique antilinear involution implementing a -> -a, a^dag -> -a^dag.
struct PTOperator {
    std::vector<double> parity_signs;  // (-1)^m
    static PTOperator fock(std::size_t d) {
        PTOperator p;
        p.parity_signs.resize(d);
        for (std::size_t m = 0; m < d; ++m) p.parity_signs[m] = (m % 2 == 0) ? 1.0 : -1.0;
        return p;
    }
};

/// D conj(M) D.
inline ComplexMatrix pt_transform(const ComplexMatrix& m) {
    m.require_square();
    const std::size_t d = m.rows();
    ComplexMatrix out(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            out(i, j) = sign * std::conj(m(i, j));
        }
    return out;
}

inline bool check_pt_symmetric(const ComplexMatrix& m, double tol) {
    return distance_max(pt_transform(m), m) <= tol;
}

/// Tensor-space PT: (D (x) D) conj(M) (D (x) D) on a d^2-dimensional matrix.
inline ComplexMatrix pt_transform_tensor(const ComplexMatrix& m, std::size_t d) {
    m.require_square();
    if (m.rows() != d * d)
        throw std::invalid_argument("pt_transform_tensor: dimension must be d^2");
    ComplexMatrix out(d * d, d * d);
    auto sign = [d](std::size_t idx) {
        const std::size_t a = idx / d, b = idx % d;
        return ((a + b) % 2 == 0) ? 1.0 : -1.0;
    };
    for (std::size_t i = 0; i < d * d; ++i)
        for (std::size_t j = 0; j < d * d; ++j)
            out(i, j) = sign(i) * sign(j) * std::conj(m(i, j));
    return out;
}

/// Deformed Casimir
///   C_z = 1/2 J0 e^{-2zJ+} J0 + G J- + J- G + e^{-2zJ+} - 1,
///   G = (1 - e^{-2zJ+})/(2z)  (G = J+ at z = 0),
/// built with the exact nilpotent exponential. On an irreducible triple it
/// equals beta(beta/2 - 1) times the identity.
inline ComplexMatrix casimir_matrix(const GeneratorTriple& t) {
    const std::size_t d = t.dim();
    const double z = t.spec.z;
    const ComplexMatrix tminus = matrix_exponential(t.Jplus * Complex{-2.0 * z, 0.0});
    // expm_ratio_2z(J+, -z) = (e^{-2zJ+}-1)/(-z) = 2G
    ComplexMatrix g = expm_ratio_2z(t.Jplus, -z) * Complex{0.5, 0.0};
    const ComplexMatrix eye = ComplexMatrix::identity(d);
    ComplexMatrix c = (t.J0 * tminus * t.J0) * Complex{0.5, 0.0};
    c += g * t.Jminus;
    c += t.Jminus * g;
    c += tminus - eye;
    return c;
}

inline double casimir_eigenvalue(double beta) { return beta * (beta / 2.0 - 1.0); }

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tol = 0.0;
    bool passed = false;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
    void add(std::string name, double residual, double tol) {
        checks.push_back({std::move(name), residual, tol, residual <= tol});
    }
};

namespace detail {
inline double rel_residual(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    const double scale = std::max({1.0, lhs.frobenius_norm(), rhs.frobenius_norm()});
    return distance_frobenius(lhs, rhs) / scale;
}
}  // namespace detail

/// The three deformed commutation relations as residual norms (relative to
/// max(1, ||lhs||, ||rhs||)):
///   [J0,J+] = (e^{2zJ+}-1)/z     (2 L+ at z = 0)
///   [J0,J-] = -2 J- + z J0^2
///   [J+,J-] = J0
/// Residuals are asserted against tol only for irreducible triples; truncated
/// generic-beta triples get the report without a pass verdict on r2/r3 being
/// boundary-clean (their defect is expected, concentrated in the last row).
inline VerificationReport verify_commutation(const GeneratorTriple& t, double tol) {
    VerificationReport rep;
    const double z = t.spec.z;
    const ComplexMatrix r1l = commutator(t.J0, t.Jplus);
    const ComplexMatrix r1r = expm_ratio_2z(t.Jplus, z);
    rep.add("[J0,J+] = (e^{2zJ+}-1)/z", detail::rel_residual(r1l, r1r), tol);
    const ComplexMatrix r2l = commutator(t.J0, t.Jminus);
    const ComplexMatrix r2r = t.Jminus * Complex{-2.0, 0.0} + t.J0 * t.J0 * Complex{z, 0.0};
    rep.add("[J0,J-] = -2J- + zJ0^2", detail::rel_residual(r2l, r2r), tol);
    const ComplexMatrix r3l = commutator(t.Jplus, t.Jminus);
    rep.add("[J+,J-] = J0", detail::rel_residual(r3l, t.J0), tol);
    return rep;
}

/// Residual map |lhs - rhs| per entry for the three relations, for inspecting
/// where a non-irreducible truncation breaks the algebra.
inline std::vector<ComplexMatrix> commutation_residual_maps(const GeneratorTriple& t) {
    const double z = t.spec.z;
    std::vector<ComplexMatrix> maps;
    maps.push_back(commutator(t.J0, t.Jplus) - expm_ratio_2z(t.Jplus, z));
    maps.push_back(commutator(t.J0, t.Jminus) -
                   (t.Jminus * Complex{-2.0, 0.0} + t.J0 * t.J0 * Complex{z, 0.0}));
    maps.push_back(commutator(t.Jplus, t.Jminus) - t.J0);
    return maps;
}

}  // namespace uzsl2
