#pragma once

#include <cstddef>

namespace uzsl2 {

/// Central tolerance/threshold record. Every numerical decision in the
/// library reads its knob from here; sweep configs may override leaves.
struct Tolerances {
    double eig_residual = 1e-10;     ///< per-pair ||Av - lambda v|| <= eig_residual * ||A||_F
    double herm = 1e-12;             ///< Hermiticity test, relative to ||S||_F
    double expm = 1e-13;             ///< target relative accuracy of the matrix exponential
    double nilpotent = 1e-14;        ///< ||A^d|| <= nilpotent * ||A||^d  => exact finite series
    double ep = 1e-9;                ///< |discriminant| <= ep * scale  => exceptional point band
    double cluster_radius = 1e-7;    ///< eigenvalue clustering radius, relative to spectrum scale
    double rank_cutoff = 1e-9;       ///< singular values below rank_cutoff * sigma_max count as zero
    double pair_conj = 1e-9;         ///< conjugate-pair matching radius for broken-phase spectra
    double binorm_condition = 1e8;   ///< biorthogonal systems refuse above this condition estimate
    std::size_t max_eig_dim = 256;   ///< eigensolver size limit
    std::size_t qr_sweeps_per_dim = 30;  ///< QR iteration budget: sweeps <= qr_sweeps_per_dim * d
};

inline const Tolerances& default_tolerances() {
    static const Tolerances tols{};
    return tols;
}

}  // namespace uzsl2
