// teleport.hpp
// Bipartite teleportation of one qubit through the three-qubit channel
//   rho_QC(p) = p |psi_GHZ><psi_GHZ| + (1 - p) |psi_W><psi_W|.
// Register order: input qubit (1), channel qubits (2, 3, 4). Alice holds
// qubits 1-3 and Bob holds qubit 4. Measurement and corrections are folded
// into a single 16x16 unitary per scheme.

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string_view>

#include "tritangle/convex_roof.hpp"
#include "tritangle/entanglement.hpp"
#include "tritangle/quadrature.hpp"
#include "tritangle/qcore.hpp"

namespace tritangle {

enum class SchemeKind { Ghz, W };

inline std::string_view to_string(SchemeKind k) { return k == SchemeKind::Ghz ? "ghz" : "w"; }

struct TeleportScheme {
    SchemeKind kind;
    ComplexMatrix unitary;  // 16 x 16
};

struct TeleportReport {
    double p;
    double theta;
    double phi;
    DensityMatrix rho_out;  // Bob's qubit
    double fidelity;
};

inline DensityMatrix channel_state(double p) {
    detail::require_probability(p, "channel_state");
    return ghzw_mixture(p, standard_ghzw_params());
}

// cos(theta/2) e^{i phi/2}|0> + sin(theta/2) e^{-i phi/2}|1>
inline PureState input_state(double theta, double phi) {
    return PureState({std::polar(std::cos(theta / 2.0), phi / 2.0), std::polar(std::sin(theta / 2.0), -phi / 2.0)},
                     Tolerances{.normalization = 1e-14});
}

namespace detail {

inline ComplexMatrix ghz_scheme_matrix() {
    // Each row holds two nonzero entries +-1 (before the overall 1/sqrt2).
    struct Row {
        int c1, v1, c2, v2;
    };
    static constexpr Row rows[16] = {
        {0, 1, 14, 1},  {1, 1, 15, 1},  {3, 1, 13, 1},  {2, 1, 12, 1},  {4, 1, 10, 1},  {5, 1, 11, 1},
        {7, 1, 9, 1},   {6, 1, 8, 1},   {0, 1, 14, -1}, {1, -1, 15, 1}, {3, 1, 13, -1}, {2, -1, 12, 1},
        {4, 1, 10, -1}, {5, -1, 11, 1}, {7, 1, 9, -1},  {6, -1, 8, 1},
    };
    ComplexMatrix u(16, 16);
    const double k = 1.0 / std::numbers::sqrt2;
    for (std::size_t r = 0; r < 16; ++r) {
        u(r, static_cast<std::size_t>(rows[r].c1)) = k * rows[r].v1;
        u(r, static_cast<std::size_t>(rows[r].c2)) = k * rows[r].v2;
    }
    return u;
}

inline ComplexMatrix w_scheme_matrix() {
    const double q = std::numbers::sqrt2;
    // clang-format off
    const double e[16][16] = {
        {0, 0, 1, 0, 1, 0, 0, 0,  q, 0, 0, 0, 0, 0, 0, 0},
        {0, 0, 0, 1, 0, 1, 0, 0,  0, q, 0, 0, 0, 0, 0, 0},
        {0, 0, 0, 0, 0, 0, 0, 2,  0, 0, 0, 0, 0, 0, 0, 0},
        {0, 0, 0, 0, 0, 0, 2, 0,  0, 0, 0, 0, 0, 0, 0, 0},
        {0, 0, 0, 0, 0, 0, 0, 0,  0, 0, 0, 0, 0, 0, 2, 0},
        {0, 0, 0, 0, 0, 0, 0, 0,  0, 0, 0, 0, 0, 0, 0, 2},
        {0, q, 0, 0, 0, 0, 0, 0,  0, 0, 0, 1, 0, 1, 0, 0},
        {q, 0, 0, 0, 0, 0, 0, 0,  0, 0, 1, 0, 1, 0, 0, 0},
        {0, 0, 1, 0, 1, 0, 0, 0, -q, 0, 0, 0, 0, 0, 0, 0},
        {0, 0, 0,-1, 0,-1, 0, 0,  0, q, 0, 0, 0, 0, 0, 0},
        {0, 0, 0, q, 0,-q, 0, 0,  0, 0, 0, 0, 0, 0, 0, 0},
        {0, 0,-q, 0, q, 0, 0, 0,  0, 0, 0, 0, 0, 0, 0, 0},
        {0, 0, 0, 0, 0, 0, 0, 0,  0, 0, q, 0,-q, 0, 0, 0},
        {0, 0, 0, 0, 0, 0, 0, 0,  0, 0, 0,-q, 0, q, 0, 0},
        {0, q, 0, 0, 0, 0, 0, 0,  0, 0, 0,-1, 0,-1, 0, 0},
        {-q,0, 0, 0, 0, 0, 0, 0,  0, 0, 1, 0, 1, 0, 0, 0},
    };
    // clang-format on
    ComplexMatrix u(16, 16);
    for (std::size_t r = 0; r < 16; ++r)
        for (std::size_t c = 0; c < 16; ++c) u(r, c) = 0.5 * e[r][c];
    return u;
}

}  // namespace detail

inline TeleportScheme scheme_unitary(SchemeKind kind) {
    return {kind, kind == SchemeKind::Ghz ? detail::ghz_scheme_matrix() : detail::w_scheme_matrix()};
}

inline double unitarity_error(const ComplexMatrix& u) {
    return max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(u.rows()));
}

// rho_out = Tr_{1,2,3}[U (rho_in x rho_QC) U^dagger],  F = <psi_in|rho_out|psi_in>.
inline TeleportReport teleport_output(const TeleportScheme& scheme, double theta, double phi, double p) {
    const PureState psi = input_state(theta, phi);
    const ComplexMatrix joint = kron(psi.projector(), channel_state(p).matrix());
    const ComplexMatrix evolved = scheme.unitary * joint * scheme.unitary.adjoint();
    static constexpr int kAlice[] = {1, 2, 3};
    DensityMatrix out(partial_trace(evolved, 4, kAlice), DensityMatrix::Trusted{});
    const auto bob = out.matrix().apply(psi.amplitudes());
    cplx f{};
    for (std::size_t i = 0; i < 2; ++i) f += std::conj(psi[i]) * bob[i];
    return {p, theta, phi, std::move(out), f.real()};
}

inline double fidelity_ghz_closed(double theta, double p) {
    detail::require_probability(p, "fidelity_ghz_closed");
    return ((3.0 + 5.0 * p) - (1.0 - p) * std::cos(2.0 * theta)) / 8.0;
}

inline double fidelity_w_closed(double p) {
    detail::require_probability(p, "fidelity_w_closed");
    return 1.0 - p / 2.0;
}

// Bob's output is linear in rho_in: rho_out = sum_ab (rho_in)_ab T_ab with
// T_ab = Tr_{1,2,3}[U (|a><b| x rho_QC) U^dagger]. Precomputing the four
// T_ab makes sphere averages cheap.
class TeleportTransfer {
public:
    TeleportTransfer(const TeleportScheme& scheme, double p) {
        const ComplexMatrix channel = channel_state(p).matrix();
        const ComplexMatrix u_dag = scheme.unitary.adjoint();
        static constexpr int kAlice[] = {1, 2, 3};
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b) {
                ComplexMatrix unit(2, 2);
                unit(a, b) = 1.0;
                blocks_[2 * a + b] = partial_trace(scheme.unitary * kron(unit, channel) * u_dag, 4, kAlice);
            }
    }

    ComplexMatrix output(const ComplexMatrix& rho_in) const {
        ComplexMatrix out(2, 2);
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b) out += blocks_[2 * a + b] * rho_in(a, b);
        return out;
    }

    double fidelity(const PureState& psi) const {
        const auto v = output(psi.projector()).apply(psi.amplitudes());
        return (std::conj(psi[0]) * v[0] + std::conj(psi[1]) * v[1]).real();
    }

private:
    std::array<ComplexMatrix, 4> blocks_;
};

inline double avg_fidelity(const TeleportScheme& scheme, double p, const QuadratureConfig& cfg = {}) {
    detail::require_probability(p, "avg_fidelity");
    const TeleportTransfer transfer(scheme, p);
    return sphere_average([&](double theta, double phi) { return transfer.fidelity(input_state(theta, phi)); }, cfg);
}

inline double avg_fidelity_closed(SchemeKind kind, double p) {
    detail::require_probability(p, "avg_fidelity_closed");
    return kind == SchemeKind::Ghz ? (5.0 + 7.0 * p) / 12.0 : 1.0 - p / 2.0;
}

struct CriticalValues {
    double f_ghz;   // average GHZ-scheme fidelity where the channel tangle vanishes (p = p0)
    double f_w;     // average W-scheme fidelity where the reduced concurrences vanish (p = 1/3)
    double p_star;  // crossing of the two average fidelities
    double p0;
    double p1;
};

// Bisection for the crossing of the closed-form average fidelities.
inline double fidelity_crossing(double tol = 1e-15) {
    auto diff = [](double p) { return avg_fidelity_closed(SchemeKind::W, p) - avg_fidelity_closed(SchemeKind::Ghz, p); };
    double lo = 0.0, hi = 1.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (diff(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline CriticalValues critical_values() {
    const GhzwMixtureParams g = standard_ghzw_params();
    return {avg_fidelity_closed(SchemeKind::Ghz, g.p0), avg_fidelity_closed(SchemeKind::W, 1.0 / 3.0), 7.0 / 13.0, g.p0,
            g.p1};
}

}  // namespace tritangle
