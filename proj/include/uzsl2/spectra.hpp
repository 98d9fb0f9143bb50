#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "uzsl2/complex_matrix.hpp"
#include "uzsl2/eigen.hpp"
#include "uzsl2/generators.hpp"
#include "uzsl2/matrix_exponential.hpp"

namespace uzsl2 {

enum class PtPhase { Exact, Broken, ExceptionalPoint };

inline const char* to_string(PtPhase p) {
    switch (p) {
        case PtPhase::Exact: return "exact";
        case PtPhase::Broken: return "broken";
        default: return "ep";
    }
}

/// Couplings of the H(mu+, mu-, mu0) family; optional power-series g for the
/// H_g generalisation (g[k] multiplies J0^k, identity series = {0, 1}).
struct FamilyParams {
    double mu_plus = 1.0;
    double mu_minus = 1.0;
    double mu_0 = 0.0;
    std::optional<std::vector<double>> g;

    double discriminant() const { return mu_0 * mu_0 + 2.0 * mu_plus * mu_minus; }
    double discriminant_scale() const {
        return mu_0 * mu_0 + 2.0 * std::abs(mu_plus * mu_minus);
    }
};

struct EigenvalueCluster {
    std::vector<std::size_t> indices;  // positions in the sorted eigenvalue list
    Complex center;
    std::size_t order() const { return indices.size(); }
};

/// Spectrum with its PT classification. Construction asserts the PT
/// dichotomy: the spectrum is entirely real or closed under conjugation.
struct SpectrumResult {
    std::vector<Complex> eigenvalues;  // sorted by (Re, Im)
    double discriminant = 0.0;
    PtPhase phase = PtPhase::Exact;
    std::vector<EigenvalueCluster> ep_clusters;
};

namespace detail {

inline double spectrum_scale(const std::vector<Complex>& ev) {
    double s = 0.0;
    for (const auto& v : ev) s = std::max(s, std::abs(v));
    return std::max(s, 1.0);
}

/// Greedy conjugate pairing: every eigenvalue with |Im| above tol must have a
/// partner within tol of its conjugate.
inline bool closed_under_conjugation(const std::vector<Complex>& ev, double tol) {
    std::vector<bool> used(ev.size(), false);
    for (std::size_t i = 0; i < ev.size(); ++i) {
        if (used[i] || std::abs(ev[i].imag()) <= tol) continue;
        bool found = false;
        for (std::size_t j = 0; j < ev.size(); ++j) {
            if (j == i || used[j]) continue;
            if (std::abs(ev[j] - std::conj(ev[i])) <= tol) {
                used[i] = used[j] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

inline void sort_eigenvalues(std::vector<Complex>& ev) {
    std::sort(ev.begin(), ev.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

inline std::vector<EigenvalueCluster> cluster_eigenvalues(const std::vector<Complex>& ev,
                                                          double radius) {
    std::vector<EigenvalueCluster> clusters;
    std::vector<bool> used(ev.size(), false);
    for (std::size_t i = 0; i < ev.size(); ++i) {
        if (used[i]) continue;
        EigenvalueCluster c;
        c.indices.push_back(i);
        used[i] = true;
        // grow transitively
        bool grew = true;
        while (grew) {
            grew = false;
            for (std::size_t j = 0; j < ev.size(); ++j) {
                if (used[j]) continue;
                for (std::size_t idx : c.indices)
                    if (std::abs(ev[j] - ev[idx]) <= radius) {
                        c.indices.push_back(j);
                        used[j] = true;
                        grew = true;
                        break;
                    }
            }
        }
        Complex sum{};
        for (std::size_t idx : c.indices) sum += ev[idx];
        c.center = sum / static_cast<double>(c.indices.size());
        if (c.indices.size() >= 2) clusters.push_back(std::move(c));
    }
    return clusters;
}

inline SpectrumResult make_spectrum_result(std::vector<Complex> ev, double disc,
                                           double disc_scale, const Tolerances& tols,
                                           std::optional<PtPhase> forced_phase = std::nullopt) {
    SpectrumResult r;
    sort_eigenvalues(ev);
    r.eigenvalues = std::move(ev);
    r.discriminant = disc;
    if (forced_phase) {
        r.phase = *forced_phase;
    } else {
        const double ep_tol = tols.ep * std::max(disc_scale, 1e-300);
        if (disc > ep_tol)
            r.phase = PtPhase::Exact;
        else if (disc < -ep_tol)
            r.phase = PtPhase::Broken;
        else
            r.phase = PtPhase::ExceptionalPoint;
    }
    const double scale = spectrum_scale(r.eigenvalues);
    r.ep_clusters = cluster_eigenvalues(r.eigenvalues, tols.cluster_radius * scale);
    // PT dichotomy assertion
    const double real_tol = tols.pair_conj * scale;
    bool all_real = true;
    for (const auto& v : r.eigenvalues)
        if (std::abs(v.imag()) > real_tol) all_real = false;
    if (!all_real && !closed_under_conjugation(r.eigenvalues, real_tol))
        throw std::logic_error("SpectrumResult: spectrum neither real nor conjugation-closed");
    if (r.phase == PtPhase::Exact && !all_real)
        throw std::logic_error("SpectrumResult: exact phase with non-real eigenvalues");
    return r;
}

}  // namespace detail

/// H_mu = mu J- + J+.
inline ComplexMatrix build_linear_H(double mu, const GeneratorTriple& t) {
    return t.Jminus * Complex{mu, 0.0} + t.Jplus;
}

/// Proposition-2 rescaling: lambda = sqrt(|mu|) z, sign = sign(mu), with the
/// contract sigma(H_mu at z) = sqrt(|mu|) * sigma(H_{sign} at lambda).
struct RescalePlan {
    double lambda;
    int sign;
};

inline RescalePlan rescale_to_unit(double mu, double z) {
    if (mu == 0.0) throw std::domain_error("rescale_to_unit: mu must be nonzero");
    return {std::sqrt(std::abs(mu)) * z, mu > 0 ? 1 : -1};
}

/// H(mu+, mu-, mu0) = mu- J- + mu+ [J0,J+] + mu0 J0, the commutator term
/// evaluated as (e^{2zJ+}-1)/z (exact nilpotent series; identical to the
/// literal commutator on an irreducible triple). With g supplied the mu0 J0
/// term becomes mu0 g(J0), g evaluated as a matrix power series (Horner).
inline ComplexMatrix build_family_H(const FamilyParams& p, const GeneratorTriple& t) {
    ComplexMatrix h = t.Jminus * Complex{p.mu_minus, 0.0} +
                      expm_ratio_2z(t.Jplus, t.spec.z) * Complex{p.mu_plus, 0.0};
    if (p.g) {
        const auto& g = *p.g;
        const std::size_t d = t.dim();
        ComplexMatrix acc(d, d);
        for (std::size_t k = g.size(); k-- > 0;) {
            acc = acc * t.J0;
            for (std::size_t i = 0; i < d; ++i) acc(i, i) += g[k];
        }
        h += acc * Complex{p.mu_0, 0.0};
    } else {
        h += t.J0 * Complex{p.mu_0, 0.0};
    }
    return h;
}

/// kappa roots of mu- k^2 + 2 mu0 k - 2 mu+ = 0, the coefficients that cancel
/// the [J0,J+] term under e^{kappa J+} conjugation; complex for negative
/// discriminants.
struct SimilarityPlan {
    Complex kappa_plus, kappa_minus;
    double eta = 0.0;
};

inline SimilarityPlan make_similarity_plan(const FamilyParams& p, double eta = 0.0) {
    if (p.mu_minus == 0.0)
        throw std::domain_error("make_similarity_plan: mu- must be nonzero");
    const Complex sq = std::sqrt(Complex{p.discriminant(), 0.0});
    return {(sq - p.mu_0) / p.mu_minus, (-sq - p.mu_0) / p.mu_minus, eta};
}

/// The Upsilon-transformed Hamiltonian at finite eta (closed form):
///   H_pm(eta) = mu- e^{-2eta} J- + z mu- e^{-eta} sinh(eta) J0^2
///               +- sqrt(mu0^2 + 2 mu+ mu-) J0.
inline ComplexMatrix conjugated_family_H(const FamilyParams& p, const GeneratorTriple& t,
                                         int branch, double eta) {
    if (p.mu_minus == 0.0)
        throw std::domain_error("conjugated_family_H: mu- must be nonzero");
    const Complex sq = std::sqrt(Complex{p.discriminant(), 0.0}) *
                       Complex{branch >= 0 ? 1.0 : -1.0, 0.0};
    return t.Jminus * Complex{p.mu_minus * std::exp(-2.0 * eta), 0.0} +
           (t.J0 * t.J0) * Complex{t.spec.z * p.mu_minus * std::exp(-eta) * std::sinh(eta), 0.0} +
           t.J0 * sq;
}

/// eta -> infinity limit: h_pm = (z/2) mu- J0^2 +- sqrt(D) J0, lower
/// triangular in Fock order. The z/2 coefficient is the limit of
/// e^{-eta} sinh(eta).
inline ComplexMatrix limit_hamiltonian_family(const FamilyParams& p, const GeneratorTriple& t,
                                              int branch) {
    if (p.mu_minus == 0.0)
        throw std::domain_error("limit_hamiltonian_family: mu- must be nonzero");
    const Complex sq = std::sqrt(Complex{p.discriminant(), 0.0}) *
                       Complex{branch >= 0 ? 1.0 : -1.0, 0.0};
    return (t.J0 * t.J0) * Complex{0.5 * t.spec.z * p.mu_minus, 0.0} + t.J0 * sq;
}

/// Closed-form spectrum of the family:
///   even d: (z/2) mu- (2k+1)^2 +- (2k+1) sqrt(D),  0 <= k <= (d-2)/2
///   odd  d: (z/2) mu- (2k)^2   +- 2k sqrt(D),      0 <= k <= (d-1)/2,
///           the k = 0 value counted once.
/// Equivalently {(z/2) mu- n^2 + sqrt(D) n : n = 2m + beta, beta = 1-d}.
inline SpectrumResult analytic_spectrum_family(const FamilyParams& p, std::size_t d, double z,
                                               const Tolerances& tols = default_tolerances()) {
    if (d == 0) throw std::invalid_argument("analytic_spectrum_family: d must be >= 1");
    const double disc = p.discriminant();
    const Complex sq = std::sqrt(Complex{disc, 0.0});
    const double beta = 1.0 - static_cast<double>(d);
    std::vector<Complex> ev;
    ev.reserve(d);
    for (std::size_t m = 0; m < d; ++m) {
        const double n = 2.0 * static_cast<double>(m) + beta;
        ev.push_back(Complex{0.5 * z * p.mu_minus * n * n, 0.0} + sq * n);
    }
    return detail::make_spectrum_result(std::move(ev), disc, p.discriminant_scale(), tols);
}

/// h_-(mu, nu) = frak-h_+(-mu, mu, mu nu): broken/exact boundary at nu^2 = 2.
inline FamilyParams h_minus_params(double mu, double nu) { return {-mu, mu, mu * nu, {}}; }
/// h_+(mu, nu) = frak-h_+(mu, mu, mu nu): real spectrum for every real nu.
inline FamilyParams h_plus_params(double mu, double nu) { return {mu, mu, mu * nu, {}}; }

/// Polynomial family H0 = mu- J- + sum_{n=0}^N a_n J0^n. The constant a_0
/// participates so the cosine series is representable; Eq-level sums start at
/// n = 1 and leave a_0 = 0.
struct PolyHamiltonianSpec {
    double mu_minus = 1.0;
    std::vector<double> a;  // a[0]..a[N]

    std::size_t order() const { return a.empty() ? 0 : a.size() - 1; }

    /// sin(lambda J0): odd series, truncated so the scalar tail at the largest
    /// |diagonal argument| x_max is below tail_bound.
    static PolyHamiltonianSpec sine(double mu_minus, double lambda, double x_max,
                                    double tail_bound = 1e-12) {
        PolyHamiltonianSpec s;
        s.mu_minus = mu_minus;
        const std::size_t n = truncation_order(std::abs(lambda) * x_max, tail_bound);
        s.a.assign(n + 1, 0.0);
        double c = lambda;  // lambda^k / k! with alternating sign on odd k
        for (std::size_t k = 1; k <= n; ++k) {
            if (k % 2 == 1) s.a[k] = ((k / 2) % 2 == 0 ? 1.0 : -1.0) * c;
            c *= lambda / static_cast<double>(k + 1);
        }
        return s;
    }

    /// cos(lambda J0): even series including the constant term.
    static PolyHamiltonianSpec cosine(double mu_minus, double lambda, double x_max,
                                      double tail_bound = 1e-12) {
        PolyHamiltonianSpec s;
        s.mu_minus = mu_minus;
        const std::size_t n = truncation_order(std::abs(lambda) * x_max, tail_bound);
        s.a.assign(n + 1, 0.0);
        double c = 1.0;
        for (std::size_t k = 0; k <= n; ++k) {
            if (k % 2 == 0) s.a[k] = ((k / 2) % 2 == 0 ? 1.0 : -1.0) * c;
            c *= lambda / static_cast<double>(k + 1);
        }
        return s;
    }

    /// Smallest N with x^(N+1)/(N+1)! <= bound.
    static std::size_t truncation_order(double x, double bound) {
        double term = 1.0;
        std::size_t n = 0;
        do {
            ++n;
            term *= x / static_cast<double>(n);
        } while (term > bound && n < 400);
        return n;
    }
};

inline ComplexMatrix build_polynomial_H(const PolyHamiltonianSpec& spec,
                                        const GeneratorTriple& t) {
    const std::size_t d = t.dim();
    ComplexMatrix acc(d, d);
    for (std::size_t k = spec.a.size(); k-- > 0;) {
        acc = acc * t.J0;
        for (std::size_t i = 0; i < d; ++i) acc(i, i) += spec.a[k];
    }
    return t.Jminus * Complex{spec.mu_minus, 0.0} + acc;
}

/// Spectrum of the triangular limit h0 = (z/2) mu- J0^2 + sum a_n J0^n by
/// direct evaluation on the diagonal arguments n_m = 2m + beta.
inline SpectrumResult analytic_spectrum_polynomial(const PolyHamiltonianSpec& spec, std::size_t d,
                                                   double z,
                                                   const Tolerances& tols = default_tolerances()) {
    if (d == 0) throw std::invalid_argument("analytic_spectrum_polynomial: d must be >= 1");
    const double beta = 1.0 - static_cast<double>(d);
    std::vector<Complex> ev;
    ev.reserve(d);
    for (std::size_t m = 0; m < d; ++m) {
        const double n = 2.0 * static_cast<double>(m) + beta;
        double val = 0.0;
        for (std::size_t k = spec.a.size(); k-- > 0;) val = val * n + spec.a[k];
        ev.push_back(Complex{0.5 * z * spec.mu_minus * n * n + val, 0.0});
    }
    // real coefficients => real spectrum; no discriminant for this family
    return detail::make_spectrum_result(std::move(ev), 0.0, 1.0, tols, PtPhase::Exact);
}

/// Triangular limit of the polynomial family.
inline ComplexMatrix limit_polynomial_H(const PolyHamiltonianSpec& spec,
                                        const GeneratorTriple& t) {
    const std::size_t d = t.dim();
    ComplexMatrix acc(d, d);
    for (std::size_t k = spec.a.size(); k-- > 0;) {
        acc = acc * t.J0;
        for (std::size_t i = 0; i < d; ++i) acc(i, i) += spec.a[k];
    }
    return (t.J0 * t.J0) * Complex{0.5 * t.spec.z * spec.mu_minus, 0.0} + acc;
}

}  // namespace uzsl2
