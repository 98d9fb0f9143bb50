#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "uzsl2/eigen.hpp"
#include "uzsl2/generators.hpp"
#include "uzsl2/spectra.hpp"

namespace uzsl2 {

struct PhasePoint {
    FamilyParams params;
    SpectrumResult spectrum;
};

struct EpClusterStat {
    std::size_t size = 0;          // algebraic multiplicity estimate
    std::size_t rank = 0;          // rank(H - lambda I) of the scanned matrix
    std::size_t rank_defect = 0;   // d - rank = geometric multiplicity
};

/// A located exceptional point: parameters where the discriminant crosses
/// zero, with coalescence evidence. `confirmed` requires every eigenvalue
/// cluster of size >= 2 in the scanned triangular family to lose at least
/// two rank units, and `family_defective` reports whether the corresponding
/// pre-limit H(mu+,mu-,mu0) is genuinely defective there (geometric <
/// algebraic multiplicity).
struct EpRecord {
    FamilyParams params;
    std::vector<Complex> eigenvalues;
    std::vector<EpClusterStat> clusters;
    bool confirmed = false;
    bool family_defective = false;
};

struct PhaseScanResult {
    std::vector<PhasePoint> points;
    std::vector<EpRecord> eps;
};

namespace detail {

inline EpRecord examine_ep_candidate(const FamilyParams& p, const GeneratorTriple& t,
                                     const Tolerances& tols) {
    EpRecord rec;
    rec.params = p;
    const std::size_t d = t.dim();
    const ComplexMatrix h = limit_hamiltonian_family(p, t, +1);
    Tolerances loose = tols;
    loose.eig_residual = 1.0;  // candidate may be defective; residual gate off
    const EigenDecomposition eig = eigen_decompose(h, false, loose);
    rec.eigenvalues = eig.values;
    const double scale = spectrum_scale(eig.values);
    const std::vector<EigenvalueCluster> clusters =
        cluster_eigenvalues(eig.values, tols.cluster_radius * scale);
    rec.confirmed = !clusters.empty();
    for (const auto& c : clusters) {
        ComplexMatrix shifted = h;
        for (std::size_t i = 0; i < d; ++i) shifted(i, i) -= c.center;
        EpClusterStat stat;
        stat.size = c.order();
        stat.rank = matrix_rank(shifted, tols);
        stat.rank_defect = d - stat.rank;
        if (stat.rank_defect < 2) rec.confirmed = false;
        rec.clusters.push_back(stat);
    }
    // defectiveness of the pre-limit Hamiltonian at the same parameters
    const ComplexMatrix hfam = build_family_H(p, t);
    const EigenDecomposition feig = eigen_decompose(hfam, false, loose);
    const std::vector<EigenvalueCluster> fclusters =
        cluster_eigenvalues(feig.values, tols.cluster_radius * spectrum_scale(feig.values));
    for (const auto& c : fclusters) {
        ComplexMatrix shifted = hfam;
        for (std::size_t i = 0; i < d; ++i) shifted(i, i) -= c.center;
        const std::size_t geometric = d - matrix_rank(shifted, tols);
        if (geometric < c.order()) rec.family_defective = true;
    }
    return rec;
}

}  // namespace detail

/// Classify every grid point by the discriminant D = mu0^2 + 2 mu+ mu-
/// (exact for D > tol, broken for D < -tol, EP inside the band) and locate
/// EPs by bisecting D along segments where adjacent grid points change sign,
/// confirming coalescence by eigenvalue clustering plus rank deficiency.
inline PhaseScanResult classify_phase_and_scan(const std::vector<FamilyParams>& grid,
                                               const GeneratorTriple& t,
                                               const Tolerances& tols = default_tolerances()) {
    PhaseScanResult result;
    result.points.reserve(grid.size());
    for (const auto& p : grid)
        result.points.push_back({p, analytic_spectrum_family(p, t.dim(), t.spec.z, tols)});

    auto interpolate = [](const FamilyParams& a, const FamilyParams& b, double s) {
        FamilyParams p;
        p.mu_plus = a.mu_plus + s * (b.mu_plus - a.mu_plus);
        p.mu_minus = a.mu_minus + s * (b.mu_minus - a.mu_minus);
        p.mu_0 = a.mu_0 + s * (b.mu_0 - a.mu_0);
        return p;
    };

    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        double da = grid[i].discriminant();
        double db = grid[i + 1].discriminant();
        const bool on_grid_ep = result.points[i].spectrum.phase == PtPhase::ExceptionalPoint;
        if (on_grid_ep) {
            result.eps.push_back(detail::examine_ep_candidate(grid[i], t, tols));
            continue;
        }
        if (da * db >= 0.0) continue;
        double lo = 0.0, hi = 1.0;
        for (int iter = 0; iter < 200; ++iter) {
            const double mid = 0.5 * (lo + hi);
            const double dm = interpolate(grid[i], grid[i + 1], mid).discriminant();
            if (dm == 0.0) { lo = hi = mid; break; }
            if ((dm > 0.0) == (da > 0.0)) { lo = mid; da = dm; }
            else { hi = mid; }
            if (hi - lo < 1e-16) break;
        }
        result.eps.push_back(
            detail::examine_ep_candidate(interpolate(grid[i], grid[i + 1], 0.5 * (lo + hi)), t,
                                         tols));
    }
    // trailing grid point can itself sit in the EP band
    if (!grid.empty() && result.points.back().spectrum.phase == PtPhase::ExceptionalPoint)
        result.eps.push_back(detail::examine_ep_candidate(grid.back(), t, tols));
    return result;
}

}  // namespace uzsl2
