#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "uzsl2/complex_matrix.hpp"
#include "uzsl2/eigen.hpp"
#include "uzsl2/generators.hpp"
#include "uzsl2/spectra.hpp"

namespace uzsl2 {

/// Biorthogonal eigensystem of a diagonalisable H: right vectors phi_j,
/// left vectors psi_j (eigenvectors of H^dagger, conjugate-paired), with
/// <psi_i|phi_j> = delta_ij, and the metric
///     S = sum_j |psi_{pi(j)}><psi_j|
/// where pi pairs each eigenvalue with its conjugate partner (identity when
/// the spectrum is real, recovering S = sum |psi_j><psi_j|). This S is
/// Hermitian and satisfies S H = H^dagger S in both PT phases; it is positive
/// definite exactly when pi is trivial (real spectrum).
struct BiorthogonalSystem {
    std::vector<Complex> eigenvalues;
    ComplexMatrix right_vectors;  // phi_j columns, unit norm
    ComplexMatrix left_vectors;   // psi_j columns, scaled so <psi_i|phi_j> = delta_ij
    ComplexMatrix S_matrix;
    bool positive_definite = false;
};

inline BiorthogonalSystem biorthogonal_system(const ComplexMatrix& h,
                                              const Tolerances& tols = default_tolerances()) {
    h.require_square();
    const std::size_t n = h.rows();
    EigenDecomposition eig = eigen_decompose(h, true, tols);

    // condition estimate of the eigenvector basis
    const ComplexMatrix vinv = detail::invert(eig.right_vectors);
    const double cond = eig.right_vectors.frobenius_norm() * vinv.frobenius_norm();
    if (!(cond < tols.binorm_condition))
        throw std::runtime_error(
            "biorthogonal_system: eigenvector basis condition " + std::to_string(cond) +
            " indicates a defective (non-diagonalisable) Hamiltonian");

    BiorthogonalSystem sys{eig.values, eig.right_vectors, ComplexMatrix(n, n), ComplexMatrix(n, n),
                           false};
    // psi_j = (row j of V^-1)^dagger gives <psi_i|phi_j> = delta_ij exactly
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) sys.left_vectors(i, j) = std::conj(vinv(j, i));

    // conjugate pairing permutation
    const double scale = detail::spectrum_scale(eig.values);
    const double tol = tols.pair_conj * scale;
    std::vector<std::size_t> pi(n);
    std::vector<bool> used(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        if (used[j]) continue;
        if (std::abs(eig.values[j].imag()) <= tol) {
            pi[j] = j;
            used[j] = true;
            continue;
        }
        bool found = false;
        for (std::size_t k = j + 1; k < n; ++k) {
            if (used[k]) continue;
            if (std::abs(eig.values[k] - std::conj(eig.values[j])) <= tol) {
                pi[j] = k;
                pi[k] = j;
                used[k] = used[j] = true;
                found = true;
                break;
            }
        }
        if (!found)
            throw std::runtime_error("biorthogonal_system: complex eigenvalue without conjugate partner");
    }

    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                sys.S_matrix(r, c) += sys.left_vectors(r, pi[j]) * std::conj(sys.left_vectors(c, j));

    bool pd = true;
    try {
        const HermitianEigen se = hermitian_eigen(sys.S_matrix, tols);
        for (double lam : se.values)
            if (!(lam > 0.0)) pd = false;
    } catch (const std::invalid_argument&) {
        pd = false;
    }
    sys.positive_definite = pd;
    return sys;
}

/// S^{1/2} H S^{-1/2}; refuses when S is not positive definite (Krein
/// regime). Asserts hermiticity of the output.
inline ComplexMatrix hermitize(const ComplexMatrix& h, const ComplexMatrix& s,
                               const Tolerances& tols = default_tolerances()) {
    const HermitianEigen se = hermitian_eigen(s, tols);
    for (double lam : se.values)
        if (!(lam > 0.0))
            throw std::domain_error("hermitize: metric not positive definite (eigenvalue " +
                                    std::to_string(lam) + "); Krein regime refused");
    const std::size_t n = s.rows();
    ComplexMatrix shalf(n, n), sinvhalf(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex a{}, b{};
            for (std::size_t k = 0; k < n; ++k) {
                const Complex w = se.vectors(i, k) * std::conj(se.vectors(j, k));
                a += w * std::sqrt(se.values[k]);
                b += w / std::sqrt(se.values[k]);
            }
            shalf(i, j) = a;
            sinvhalf(i, j) = b;
        }
    ComplexMatrix out = shalf * h * sinvhalf;
    const double dev = distance_frobenius(out, out.adjoint());
    if (dev > 1e-10 * std::max(1.0, out.frobenius_norm()))
        throw std::runtime_error("hermitize: output not Hermitian (deviation " +
                                 std::to_string(dev) + ")");
    return out;
}

/// The closed-form d=2 metric of the linear family, S = [[z^2/2 + 2/mu, -iz],
/// [iz, 2]]; positive definite for mu > 0 (det = 4/mu).
inline ComplexMatrix linear_metric_2d(double mu, double z) {
    if (mu == 0.0) throw std::domain_error("linear_metric_2d: mu must be nonzero");
    return ComplexMatrix{{Complex{z * z / 2.0 + 2.0 / mu, 0.0}, Complex{0.0, -z}},
                         {Complex{0.0, z}, Complex{2.0, 0.0}}};
}

/// Hermitisation of H_mu = mu L- + L+ by eta = e^{a0 L+} e^{b0 L-} e^{g0 L0}
/// with a0 = e^{2 g0}/(2 sqrt(mu)), b0 = -e^{-2 g0} sqrt(mu) (principal
/// square root; complex for mu < 0). The conjugation is evaluated in the
/// closed adjoint orbit of span{L-, L0, L+}, where each factor acts exactly:
///   e^{g L0}:  (cm, cp, c0) -> (cm e^{-2g}, cp e^{2g}, c0)
///   e^{b L-}:  cm += 2 b c0 - b^2 cp,  c0 -= b cp
///   e^{a L+}:  cp += -a^2 cm - 2 a c0, c0 += a cm
/// For mu > 0 the result is sqrt(mu) L0; for mu < 0 it is diagonal with
/// conjugate-pair eigenvalues i sqrt(|mu|) (2m + beta).
struct Sl2Hermitization {
    Complex alpha0, b0;
    ComplexMatrix transformed;  // eta H_mu eta^-1
    Complex coeff_minus, coeff_plus, coeff_0;
};

inline Sl2Hermitization sl2_hermitize(double mu, double gamma0, const GeneratorTriple& t) {
    if (mu == 0.0) throw std::domain_error("sl2_hermitize: mu must be nonzero");
    if (t.deformed || t.spec.z != 0.0)
        throw std::invalid_argument("sl2_hermitize: undeformed triple required");
    const Complex sqmu = std::sqrt(Complex{mu, 0.0});
    const Complex a0 = std::exp(2.0 * gamma0) / (2.0 * sqmu);
    const Complex b0 = -std::exp(-2.0 * gamma0) * sqmu;

    Complex cm{mu, 0.0}, cp{1.0, 0.0}, c0{0.0, 0.0};
    // e^{g0 L0}
    cm *= std::exp(-2.0 * gamma0);
    cp *= std::exp(2.0 * gamma0);
    // e^{b0 L-}: L+ -> L+ - b L0 - b^2 L-, L0 -> L0 + 2b L-
    cm += 2.0 * b0 * c0 - b0 * b0 * cp;
    c0 -= b0 * cp;
    // e^{a0 L+}: L- -> L- + a L0 - a^2 L+, L0 -> L0 - 2a L+
    cp += -a0 * a0 * cm - 2.0 * a0 * c0;
    c0 += a0 * cm;

    ComplexMatrix h = t.Jminus * cm + t.Jplus * cp + t.J0 * c0;
    return {a0, b0, std::move(h), cm, cp, c0};
}

/// The full eta matrix of the hermitisation, for product-form identity checks
/// (eta H = h eta), which stay well conditioned where the explicit
/// conjugation does not.
inline ComplexMatrix sl2_hermitize_eta(double mu, double gamma0, const GeneratorTriple& t,
                                       const Tolerances& tols = default_tolerances()) {
    const Complex sqmu = std::sqrt(Complex{mu, 0.0});
    const Complex a0 = std::exp(2.0 * gamma0) / (2.0 * sqmu);
    const Complex b0 = -std::exp(-2.0 * gamma0) * sqmu;
    return matrix_exponential(t.Jplus * a0, tols) * matrix_exponential(t.Jminus * b0, tols) *
           matrix_exponential(t.J0 * Complex{gamma0, 0.0}, tols);
}

}  // namespace uzsl2
