// noisy_channel.hpp
// The W state after the (L2x, L3x, L4x) decoherence channel, as a function
// of the dimensionless product kappa*t, and what can be said about its
// entanglement: exact pair concurrences and convex-roof upper bounds.

#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "tritangle/convex_roof.hpp"
#include "tritangle/entanglement.hpp"
#include "tritangle/qcore.hpp"

namespace tritangle {

struct NoiseParams {
    double kappa_t;
    std::array<double, 4> alpha;  // alpha_1 .. alpha_4
    double beta_plus;
    double beta_minus;
};

inline NoiseParams noise_params(double kappa_t) {
    if (!(kappa_t >= 0.0)) throw InvalidArgument("noise_params: kappa_t must be non-negative");
    const double e2 = std::exp(-2.0 * kappa_t), e4 = std::exp(-4.0 * kappa_t), e6 = std::exp(-6.0 * kappa_t);
    return {kappa_t,
            {1.0 + e2 + e4 + e6, 1.0 + e2 - e4 - e6, 1.0 - e2 - e4 + e6, 1.0 - e2 + e4 - e6},
            1.0 + e6,
            1.0 - e6};
}

enum class NoiseSymbol { Alpha1, Alpha2, Alpha3, Alpha4, BetaPlus, BetaMinus };

struct NoiseEntry {
    int row, col;
    double multiplier;  // 1, sqrt2 or 2
    NoiseSymbol symbol;
};

inline double symbol_value(const NoiseParams& np, NoiseSymbol s) {
    switch (s) {
        case NoiseSymbol::Alpha1: return np.alpha[0];
        case NoiseSymbol::Alpha2: return np.alpha[1];
        case NoiseSymbol::Alpha3: return np.alpha[2];
        case NoiseSymbol::Alpha4: return np.alpha[3];
        case NoiseSymbol::BetaPlus: return np.beta_plus;
        case NoiseSymbol::BetaMinus: return np.beta_minus;
    }
    return 0.0;
}

// Every nonzero entry of 16 * epsilon_x(rho_W), row by row, both triangles.
inline const std::vector<NoiseEntry>& noisy_w_pattern() {
    using S = NoiseSymbol;
    constexpr double r2 = std::numbers::sqrt2;
    static const std::vector<NoiseEntry> pattern = {
        {0, 0, 2, S::Alpha2}, {0, 3, r2, S::Alpha2}, {0, 5, r2, S::Alpha2}, {0, 6, 1, S::Alpha2},
        {1, 1, 2, S::Alpha1}, {1, 2, r2, S::Alpha1}, {1, 4, r2, S::Alpha1}, {1, 7, 1, S::Alpha3},
        {2, 1, r2, S::Alpha1}, {2, 2, 2, S::BetaPlus}, {2, 4, 1, S::Alpha1}, {2, 7, r2, S::Alpha3},
        {3, 0, r2, S::Alpha2}, {3, 3, 2, S::BetaMinus}, {3, 5, 1, S::Alpha4}, {3, 6, r2, S::Alpha4},
        {4, 1, r2, S::Alpha1}, {4, 2, 1, S::Alpha1}, {4, 4, 2, S::BetaPlus}, {4, 7, r2, S::Alpha3},
        {5, 0, r2, S::Alpha2}, {5, 3, 1, S::Alpha4}, {5, 5, 2, S::BetaMinus}, {5, 6, r2, S::Alpha4},
        {6, 0, 1, S::Alpha2}, {6, 3, r2, S::Alpha4}, {6, 5, r2, S::Alpha4}, {6, 6, 2, S::Alpha4},
        {7, 1, 1, S::Alpha3}, {7, 2, r2, S::Alpha3}, {7, 4, r2, S::Alpha3}, {7, 7, 2, S::Alpha3},
    };
    return pattern;
}

inline ComplexMatrix epsilon_x_w_matrix(const NoiseParams& np) {
    ComplexMatrix m(8, 8);
    for (const auto& e : noisy_w_pattern())
        m(static_cast<std::size_t>(e.row), static_cast<std::size_t>(e.col)) = e.multiplier * symbol_value(np, e.symbol) / 16.0;
    return m;
}

inline DensityMatrix epsilon_x_w(double kappa_t, const Tolerances& tol = kDefaultTolerances) {
    return validate_density(epsilon_x_w_matrix(noise_params(kappa_t)), tol);
}

struct NoisyChannelReport {
    double kappa_t;
    NoiseParams params;
    DensityReport validation;
    double distance_to_pure_w;  // max entrywise |eps - |W><W||
    bool matches_pure_w;
    PairConcurrences concurrences;          // exact (Wootters)
    double tau3_upper_bound;                // convex-roof search, not the tangle itself
    std::array<double, 3> cut_upper_bounds; // AB|C, AC|B, BC|A
    bool roof_converged;
};

// Pair concurrences and roof bounds of an arbitrary three-qubit mixed state.
struct MixedThreeQubitBounds {
    PairConcurrences concurrences;
    double tau3_upper_bound;
    std::array<double, 3> cut_upper_bounds;
    bool roof_converged;
};

inline MixedThreeQubitBounds mixed_three_qubit_bounds(const DensityMatrix& rho, const RoofConfig& cfg,
                                                      const Tolerances& tol = kDefaultTolerances) {
    if (rho.num_qubits() != 3) throw InvalidArgument("mixed_three_qubit_bounds: expected 3 qubits");
    MixedThreeQubitBounds b{reduced_concurrences(rho, tol), 0.0, {}, true};
    const RoofResult tau = minimize_roof(rho, [](const PureState& s) { return three_tangle_pure(s).value; }, cfg, tol);
    b.tau3_upper_bound = std::clamp(tau.upper_bound, 0.0, 1.0);
    b.roof_converged = tau.converged;
    for (std::size_t k = 0; k < kAllCuts.size(); ++k) {
        const Cut cut = kAllCuts[k];
        const RoofResult r =
            minimize_roof(rho, [cut](const PureState& s) { return cut_concurrence_pure(s, cut).value; }, cfg, tol);
        b.cut_upper_bounds[k] = std::clamp(r.upper_bound, 0.0, 1.0);
        b.roof_converged = b.roof_converged && r.converged;
    }
    return b;
}

inline NoisyChannelReport channel_report(double kappa_t, const RoofConfig& cfg,
                                         const Tolerances& tol = kDefaultTolerances) {
    const NoiseParams np = noise_params(kappa_t);
    const ComplexMatrix m = epsilon_x_w_matrix(np);
    NoisyChannelReport r{};
    r.kappa_t = kappa_t;
    r.params = np;
    r.validation = check_density(m, tol);
    r.distance_to_pure_w = max_abs_diff(m, w_state().projector());
    r.matches_pure_w = r.distance_to_pure_w <= 1e-12;
    const DensityMatrix rho = validate_density(m, tol);
    const MixedThreeQubitBounds b = mixed_three_qubit_bounds(rho, cfg, tol);
    r.concurrences = b.concurrences;
    r.tau3_upper_bound = b.tau3_upper_bound;
    r.cut_upper_bounds = b.cut_upper_bounds;
    r.roof_converged = b.roof_converged;
    return r;
}

}  // namespace tritangle
