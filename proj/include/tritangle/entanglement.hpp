// entanglement.hpp
// Closed-form entanglement measures for two- and three-qubit states:
// pure and Wootters concurrence, entanglement of formation, Groverian
// measure, the three-tangle, cut concurrences, and the three-tangle of
// GHZ/W mixtures.

#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string_view>

#include "tritangle/qcore.hpp"

namespace tritangle {

enum class MeasureKind { Concurrence, EoF, Groverian, ThreeTangle, CutConcurrence };

inline std::string_view to_string(MeasureKind k) {
    switch (k) {
        case MeasureKind::Concurrence: return "concurrence";
        case MeasureKind::EoF: return "eof";
        case MeasureKind::Groverian: return "groverian";
        case MeasureKind::ThreeTangle: return "three_tangle";
        case MeasureKind::CutConcurrence: return "cut_concurrence";
    }
    return "unknown";
}

struct MeasureValue {
    double value;
    MeasureKind kind;

    operator double() const noexcept { return value; }
};

// Snaps round-off just outside [0, 1] back into range; anything further out
// is a bug in the caller.
inline MeasureValue make_measure(double v, MeasureKind kind, const Tolerances& tol = kDefaultTolerances) {
    if (!std::isfinite(v) || v < -tol.measure_clamp || v > 1.0 + tol.measure_clamp)
        throw std::range_error(std::string(to_string(kind)) + " value out of [0,1]: " + std::to_string(v));
    return {std::clamp(v, 0.0, 1.0), kind};
}

// ---------------------------------------------------------------------------
// Two qubits

inline MeasureValue concurrence_pure2(const PureState& psi) {
    if (psi.num_qubits() != 2) throw InvalidArgument("concurrence_pure2: expected a 2-qubit state");
    return make_measure(2.0 * std::abs(psi[0] * psi[3] - psi[1] * psi[2]), MeasureKind::Concurrence);
}

inline ComplexMatrix spin_flip_yy() { return kron(pauli::y(), pauli::y()); }

// Spin-flip eigenvalues lambda_1 >= ... >= lambda_4: square roots of the
// eigenvalues of sqrt(rho) (Y x Y) rho* (Y x Y) sqrt(rho).
// Decreasing lambda_i = sqrt(eig(sqrt(rho) rho~ sqrt(rho))), rho~ = (Y x Y) rho* (Y x Y).
// They are the singular values of tau = W^T (Y x Y) W, where the columns of W
// are the eigenvectors of rho scaled by sqrt(eigenvalue). The singular values
// come from the Hermitian dilation [[0, tau], [tau^dagger, 0]], so no square
// root of a rounding-level eigenvalue ever enters. Eigenvalues at rounding
// level are dropped from W.
inline std::array<double, 4> wootters_lambdas(const DensityMatrix& rho, const Tolerances& tol = kDefaultTolerances) {
    if (rho.num_qubits() != 2) throw InvalidArgument("concurrence_wootters: expected a 2-qubit state");
    const HermitianEigen eig = hermitian_eigen(rho.matrix(), tol);
    if (eig.values.back() < -tol.not_psd) throw NotPsdError(eig.values.back());
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, eig.values.front());
    std::size_t r = 0;
    while (r < 4 && eig.values[r] > noise) ++r;
    ComplexMatrix w(4, r);
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t i = 0; i < 4; ++i) w(i, k) = std::sqrt(eig.values[k]) * eig.vectors(i, k);
    ComplexMatrix wt(r, 4);
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t i = 0; i < 4; ++i) wt(k, i) = w(i, k);
    const ComplexMatrix tau = wt * spin_flip_yy() * w;
    ComplexMatrix dilation(2 * r, 2 * r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            dilation(i, r + j) = tau(i, j);
            dilation(r + j, i) = std::conj(tau(i, j));
        }
    std::array<double, 4> lambda{};
    if (r == 0) return lambda;
    const auto sv = hermitian_eigenvalues(dilation, tol);
    for (std::size_t i = 0; i < r; ++i) lambda[i] = std::max(sv[i], 0.0);
    return lambda;
}

inline MeasureValue concurrence_wootters(const DensityMatrix& rho, const Tolerances& tol = kDefaultTolerances) {
    const auto l = wootters_lambdas(rho, tol);
    return make_measure(std::max(0.0, l[0] - l[1] - l[2] - l[3]), MeasureKind::Concurrence, tol);
}

namespace detail {
inline double binary_entropy(double x) {
    auto term = [](double y) { return y <= 0.0 ? 0.0 : -y * std::log2(y); };
    return term(x) + term(1.0 - x);
}

inline double checked_concurrence(const MeasureValue& c, const Tolerances& tol) {
    if (c.value < -tol.measure_clamp || c.value > 1.0 + tol.measure_clamp)
        throw InvalidArgument("concurrence must lie in [0,1]");
    return std::clamp(c.value, 0.0, 1.0);
}
}  // namespace detail

inline MeasureValue eof_from_concurrence(const MeasureValue& c, const Tolerances& tol = kDefaultTolerances) {
    const double cc = detail::checked_concurrence(c, tol);
    return make_measure(detail::binary_entropy((1.0 + std::sqrt(1.0 - cc * cc)) / 2.0), MeasureKind::EoF, tol);
}

inline MeasureValue groverian_from_concurrence(const MeasureValue& c, const Tolerances& tol = kDefaultTolerances) {
    const double cc = detail::checked_concurrence(c, tol);
    const double inner = std::max(0.0, 1.0 - std::sqrt(1.0 - cc * cc));
    return make_measure(std::sqrt(inner) / std::numbers::sqrt2, MeasureKind::Groverian, tol);
}

// ---------------------------------------------------------------------------
// Three qubits (A = qubit 1, B = qubit 2, C = qubit 3)

inline MeasureValue three_tangle_pure(const PureState& psi) {
    if (psi.num_qubits() != 3) throw InvalidArgument("three_tangle_pure: expected a 3-qubit state");
    auto a = [&](int i, int j, int k) { return psi[static_cast<std::size_t>(4 * i + 2 * j + k)]; };
    const cplx d1 = a(0, 0, 0) * a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 1) + a(0, 0, 1) * a(0, 0, 1) * a(1, 1, 0) * a(1, 1, 0) +
                    a(0, 1, 0) * a(0, 1, 0) * a(1, 0, 1) * a(1, 0, 1) + a(1, 0, 0) * a(1, 0, 0) * a(0, 1, 1) * a(0, 1, 1);
    const cplx d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0) + a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0) +
                    a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1) + a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0) +
                    a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1) + a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);
    const cplx d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1) + a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);
    return make_measure(4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3), MeasureKind::ThreeTangle);
}

enum class Cut { AB_C, AC_B, BC_A };

inline std::string_view to_string(Cut c) {
    switch (c) {
        case Cut::AB_C: return "AB|C";
        case Cut::AC_B: return "AC|B";
        case Cut::BC_A: return "BC|A";
    }
    return "?";
}

inline constexpr std::array<Cut, 3> kAllCuts{Cut::AB_C, Cut::AC_B, Cut::BC_A};

// Single-qubit reduction on the lone side of the cut.
inline DensityMatrix lone_qubit_reduction(const DensityMatrix& rho3, Cut cut) {
    if (rho3.num_qubits() != 3) throw InvalidArgument("lone_qubit_reduction: expected 3 qubits");
    switch (cut) {
        case Cut::AB_C: return partial_trace(rho3, {1, 2});
        case Cut::AC_B: return partial_trace(rho3, {1, 3});
        case Cut::BC_A: return partial_trace(rho3, {2, 3});
    }
    throw InvalidArgument("unknown cut");
}

inline MeasureValue cut_concurrence_pure(const PureState& psi, Cut cut) {
    if (psi.num_qubits() != 3) throw InvalidArgument("cut_concurrence_pure: expected a 3-qubit state");
    const DensityMatrix r = lone_qubit_reduction(DensityMatrix::from_pure(psi), cut);
    const double det = r(0, 0).real() * r(1, 1).real() - std::norm(r(0, 1));
    return make_measure(2.0 * std::sqrt(std::max(det, 0.0)), MeasureKind::CutConcurrence);
}

struct PairConcurrences {
    MeasureValue ab;
    MeasureValue ac;
    MeasureValue bc;
};

// Wootters concurrences of the three two-qubit reductions of a 3-qubit state.
inline PairConcurrences reduced_concurrences(const DensityMatrix& rho3, const Tolerances& tol = kDefaultTolerances) {
    if (rho3.num_qubits() != 3) throw InvalidArgument("reduced_concurrences: expected 3 qubits");
    return {concurrence_wootters(partial_trace(rho3, {3}), tol), concurrence_wootters(partial_trace(rho3, {2}), tol),
            concurrence_wootters(partial_trace(rho3, {1}), tol)};
}

// C^2_(AB)C - C^2_AC - C^2_BC, with every term computed from reductions.
inline double monogamy_residual(const PureState& psi) {
    const double cut = cut_concurrence_pure(psi, Cut::AB_C);
    const PairConcurrences pc = reduced_concurrences(DensityMatrix::from_pure(psi));
    return cut * cut - pc.ac * pc.ac - pc.bc * pc.bc;
}

// ---------------------------------------------------------------------------
// GHZ/W mixtures  rho(p) = p|GHZ><GHZ| + (1-p)|W><W|
// with |GHZ> = a|000> + b|111> and |W> = c|001> + d|010> + f|100>.

struct GhzwMixtureParams {
    double a, b, c, d, f;
    double s;         // 4cdf / a^2 b
    double p0;        // nontrivial zero of the tangle of |p,phi>
    double p1;        // start of the convexified branch
    double tau3_ghz;  // 4 a^2 b^2
    double t1;        // p1^2 - s sqrt(p1 (1-p1)^3)

    PureState ghz() const {
        std::vector<cplx> v(8);
        v[0] = a;
        v[7] = b;
        return PureState(std::move(v));
    }
    PureState w() const {
        std::vector<cplx> v(8);
        v[1] = c;
        v[2] = d;
        v[4] = f;
        return PureState(std::move(v));
    }
    // |p,phi> = sqrt(p)|GHZ> - sqrt(1-p) e^{i phi}|W>
    PureState superposition(double p, double phi) const {
        const PureState g = ghz(), ww = w();
        const cplx wc = -std::sqrt(1.0 - p) * std::polar(1.0, phi);
        std::vector<cplx> v(8);
        for (std::size_t i = 0; i < 8; ++i) v[i] = std::sqrt(p) * g[i] + wc * ww[i];
        return PureState(std::move(v));
    }
};

// From squared coefficients a^2, b^2, c^2, d^2, f^2 of positive real amplitudes.
// s is formed from the squares so that rational weights give an exact s.
inline GhzwMixtureParams ghzw_params_from_weights(double a2, double b2, double c2, double d2, double f2,
                                                  const Tolerances& tol = kDefaultTolerances) {
    for (double w : {a2, b2, c2, d2, f2})
        if (!(w >= 0.0)) throw InvalidArgument("ghzw_params: squared coefficients must be non-negative");
    if (std::abs(a2 + b2 - 1.0) > tol.normalization) throw InvalidArgument("ghzw_params: a^2 + b^2 must equal 1");
    if (std::abs(c2 + d2 + f2 - 1.0) > tol.normalization)
        throw InvalidArgument("ghzw_params: c^2 + d^2 + f^2 must equal 1");
    const double denom = a2 * a2 * b2;
    if (denom == 0.0) throw InvalidArgument("ghzw_params: a^2 b = 0 leaves s undefined");
    const double s = 4.0 * std::sqrt(c2 * d2 * f2 / denom);
    if (!(s > 0.0)) throw InvalidArgument("ghzw_params: s = 4cdf/a^2 b must be positive");

    const double a = std::sqrt(a2), b = std::sqrt(b2);
    GhzwMixtureParams g{a, b, std::sqrt(c2), std::sqrt(d2), std::sqrt(f2), s, 0, 0, 0, 0};
    const double s23 = std::cbrt(s * s);
    g.p0 = s23 / (1.0 + s23);
    g.p1 = std::max(g.p0, 0.5 + 1.0 / (2.0 * std::sqrt(1.0 + s * s)));
    g.tau3_ghz = 4.0 * a2 * b2;
    g.t1 = g.p1 * g.p1 - s * std::sqrt(g.p1 * std::pow(1.0 - g.p1, 3));
    return g;
}

inline GhzwMixtureParams ghzw_params(double a, double b, double c, double d, double f,
                                     const Tolerances& tol = kDefaultTolerances) {
    if (!(a > 0.0 && b > 0.0)) throw InvalidArgument("ghzw_params: a^2 b = 0 leaves s undefined");
    if (!(c > 0.0 && d > 0.0 && f > 0.0)) throw InvalidArgument("ghzw_params: s = 4cdf/a^2 b must be positive");
    return ghzw_params_from_weights(a * a, b * b, c * c, d * d, f * f, tol);
}

// a = b = c = 1/sqrt2, d = f = 1/2: the GHZ and W states used as teleportation channels.
inline GhzwMixtureParams standard_ghzw_params() { return ghzw_params_from_weights(0.5, 0.5, 0.5, 0.25, 0.25); }

inline PureState ghz_state() { return standard_ghzw_params().ghz(); }
inline PureState w_state() { return standard_ghzw_params().w(); }

namespace detail {
inline void require_probability(double p, const char* where) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument(std::string(where) + ": p must lie in [0,1]");
}
}  // namespace detail

inline MeasureValue three_tangle_ghzw(double p, const GhzwMixtureParams& g) {
    detail::require_probability(p, "three_tangle_ghzw");
    double v = 0.0;
    if (p <= g.p0) {
        v = 0.0;
    } else if (p <= g.p1) {
        v = g.tau3_ghz * std::abs(p * p - std::sqrt(p * std::pow(1.0 - p, 3)) * g.s);
    } else {
        v = g.tau3_ghz * ((p - g.p1) / (1.0 - g.p1) + ((1.0 - p) / (1.0 - g.p1)) * g.t1);
    }
    return make_measure(v, MeasureKind::ThreeTangle);
}

// Closed-form pair concurrences of p|psi_GHZ><psi_GHZ| + (1-p)|psi_W><psi_W|.
inline PairConcurrences reduced_concurrences_qc(double p) {
    detail::require_probability(p, "reduced_concurrences_qc");
    const double ab_threshold = 3.0 - 2.0 * std::numbers::sqrt2;
    const double ab = p <= ab_threshold ? std::max(0.0, (1.0 - p - 2.0 * std::sqrt(p)) / 2.0) : 0.0;
    const double ac = p <= 1.0 / 3.0 ? std::max(0.0, ((1.0 - p) - std::sqrt(p * (1.0 + p))) / std::numbers::sqrt2) : 0.0;
    return {make_measure(ab, MeasureKind::Concurrence), make_measure(ac, MeasureKind::Concurrence),
            make_measure(ac, MeasureKind::Concurrence)};
}

inline MeasureValue c_abc_mixture(double p) {
    detail::require_probability(p, "c_abc_mixture");
    const PairConcurrences pc = reduced_concurrences_qc(p);
    const double tau = three_tangle_ghzw(p, standard_ghzw_params());
    return make_measure(std::sqrt(pc.ac * pc.ac + pc.bc * pc.bc + tau), MeasureKind::CutConcurrence);
}

}  // namespace tritangle
