// convex_roof.hpp
// Numerical convex-roof minimization: searches pure-state decompositions
// of a mixed state for the smallest ensemble-averaged pure-state measure.
// The result is always an upper bound on the roof.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "tritangle/entanglement.hpp"
#include "tritangle/qcore.hpp"

namespace tritangle {

struct EnsembleMember {
    double weight;
    PureState state;
};

class Ensemble {
public:
    explicit Ensemble(std::vector<EnsembleMember> members, double weight_tol = 1e-10)
        : members_(std::move(members)) {
        if (members_.empty()) throw InvalidArgument("Ensemble: no members");
        double total = 0.0;
        for (const auto& m : members_) {
            if (!(m.weight > 0.0 && m.weight <= 1.0 + weight_tol))
                throw InvalidArgument("Ensemble: weights must lie in (0,1]");
            if (m.state.dimension() != members_.front().state.dimension())
                throw InvalidArgument("Ensemble: members differ in dimension");
            total += m.weight;
        }
        if (std::abs(total - 1.0) > weight_tol) throw InvalidArgument("Ensemble: weights do not sum to 1");
    }

    std::size_t size() const noexcept { return members_.size(); }
    const std::vector<EnsembleMember>& members() const noexcept { return members_; }
    const EnsembleMember& operator[](std::size_t j) const { return members_[j]; }

    // sum_j w_j |psi_j><psi_j|
    ComplexMatrix density() const {
        const std::size_t dim = members_.front().state.dimension();
        ComplexMatrix m(dim, dim);
        for (const auto& mem : members_) m += mem.state.projector() * mem.weight;
        return m;
    }

    template <class Measure>
    double average(Measure&& measure) const {
        double s = 0.0;
        for (const auto& mem : members_) s += mem.weight * static_cast<double>(measure(mem.state));
        return s;
    }

private:
    std::vector<EnsembleMember> members_;
};

// Number of eigenvalues above tol.rank.
inline std::size_t numerical_rank(const DensityMatrix& rho, const Tolerances& tol = kDefaultTolerances) {
    const auto ev = hermitian_eigenvalues(rho.matrix(), tol);
    return static_cast<std::size_t>(std::count_if(ev.begin(), ev.end(), [&](double x) { return x > tol.rank; }));
}

namespace detail {

// Range of rho as sqrt(lambda_k)|e_k>, one column per retained eigenvalue.
struct WeightedEigenbasis {
    std::size_t dim = 0;
    std::size_t rank = 0;
    std::vector<std::vector<cplx>> columns;
};

inline WeightedEigenbasis weighted_eigenbasis(const DensityMatrix& rho, const Tolerances& tol) {
    const HermitianEigen eig = hermitian_eigen(rho.matrix(), tol);
    WeightedEigenbasis b;
    b.dim = rho.dimension();
    for (std::size_t k = 0; k < eig.values.size(); ++k) {
        if (eig.values[k] <= tol.rank) break;
        std::vector<cplx> col(b.dim);
        const double sl = std::sqrt(eig.values[k]);
        for (std::size_t i = 0; i < b.dim; ++i) col[i] = sl * eig.vectors(i, k);
        b.columns.push_back(std::move(col));
    }
    b.rank = b.columns.size();
    return b;
}

inline Ensemble ensemble_from_basis(const WeightedEigenbasis& b, const ComplexMatrix& mixing, const Tolerances& tol) {
    std::vector<std::vector<cplx>> raw;
    std::vector<double> weights;
    double total = 0.0;
    for (std::size_t j = 0; j < mixing.rows(); ++j) {
        std::vector<cplx> v(b.dim);
        for (std::size_t k = 0; k < b.rank; ++k) {
            const cplx u = mixing(j, k);
            if (u == cplx{}) continue;
            for (std::size_t i = 0; i < b.dim; ++i) v[i] += u * b.columns[k][i];
        }
        double w = 0.0;
        for (const auto& z : v) w += std::norm(z);
        if (w < tol.drop_weight) continue;
        total += w;
        weights.push_back(w);
        raw.push_back(std::move(v));
    }
    std::vector<EnsembleMember> members;
    members.reserve(raw.size());
    for (std::size_t j = 0; j < raw.size(); ++j)
        members.push_back({weights[j] / total, PureState::normalized(std::move(raw[j]))});
    return Ensemble(std::move(members));
}

}  // namespace detail

// Decomposition induced by an m x r mixing matrix with orthonormal columns
// applied to the weighted eigenvectors of rho. Members with weight below
// tol.drop_weight are dropped.
inline Ensemble ensemble_from_mixing(const DensityMatrix& rho, const ComplexMatrix& mixing,
                                     const Tolerances& tol = kDefaultTolerances) {
    const detail::WeightedEigenbasis b = detail::weighted_eigenbasis(rho, tol);
    if (mixing.cols() != b.rank)
        throw InvalidArgument("ensemble_from_mixing: mixing must have rank(rho) = " + std::to_string(b.rank) +
                              " columns");
    const double err = max_abs_diff(mixing.adjoint() * mixing, ComplexMatrix::identity(b.rank));
    if (err > tol.orthonormality) throw InvalidArgument("ensemble_from_mixing: columns are not orthonormal");
    return detail::ensemble_from_basis(b, mixing, tol);
}

// ---------------------------------------------------------------------------

struct RoofConfig {
    std::size_t ensemble_size = 0;  // 0: rank + 2
    int restarts = 64;
    int max_iters = 500;            // parameter sweeps per restart
    double initial_step = std::numbers::pi / 4.0;
    double step_tol = 1e-6;
    double improve_tol = 1e-10;
    int golden_iters = 20;
    std::uint64_t seed = 20080101;
};

struct RoofResult {
    double upper_bound;
    Ensemble best_ensemble;
    int restarts_used;
    bool converged;
};

using PureMeasure = std::function<double(const PureState&)>;

// Product of complex Givens rotations over every row pair, restricted to
// the first `cols` columns. Two angles per pair: mixing angle and phase.
class IsometryParameterization {
public:
    IsometryParameterization(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
        if (cols > rows) throw InvalidArgument("IsometryParameterization: more columns than rows");
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = i + 1; j < rows; ++j) pairs_.emplace_back(i, j);
    }

    std::size_t parameter_count() const noexcept { return 2 * pairs_.size(); }

    ComplexMatrix isometry(std::span<const double> params) const {
        ComplexMatrix u(rows_, cols_);
        for (std::size_t k = 0; k < cols_; ++k) u(k, k) = 1.0;
        for (std::size_t g = pairs_.size(); g-- > 0;) {
            const auto [i, j] = pairs_[g];
            const double c = std::cos(params[2 * g]), s = std::sin(params[2 * g]);
            const cplx e = std::polar(1.0, params[2 * g + 1]);
            for (std::size_t k = 0; k < cols_; ++k) {
                const cplx xi = u(i, k), xj = u(j, k);
                u(i, k) = c * xi - std::conj(e) * s * xj;
                u(j, k) = e * s * xi + c * xj;
            }
        }
        return u;
    }

private:
    std::size_t rows_, cols_;
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

inline std::size_t default_ensemble_size(std::size_t rank) { return rank + 2; }

inline RoofResult minimize_roof(const DensityMatrix& rho, const PureMeasure& measure, const RoofConfig& cfg = {},
                                const Tolerances& tol = kDefaultTolerances) {
    const detail::WeightedEigenbasis basis = detail::weighted_eigenbasis(rho, tol);
    const std::size_t m = cfg.ensemble_size == 0 ? default_ensemble_size(basis.rank) : cfg.ensemble_size;
    if (m < basis.rank)
        throw InvalidArgument("minimize_roof: ensemble size " + std::to_string(m) + " is below rank " +
                              std::to_string(basis.rank));
    if (cfg.restarts < 1 || cfg.max_iters < 1) throw InvalidArgument("minimize_roof: restarts and max_iters must be >= 1");

    const IsometryParameterization param(m, basis.rank);
    const std::size_t np = param.parameter_count();

    // Objective over raw (unnormalized) member vectors; avoids building
    // an Ensemble at every probe.
    auto objective = [&](std::span<const double> x) {
        const ComplexMatrix u = param.isometry(x);
        double total = 0.0;
        std::vector<cplx> v(basis.dim);
        for (std::size_t j = 0; j < m; ++j) {
            std::fill(v.begin(), v.end(), cplx{});
            for (std::size_t k = 0; k < basis.rank; ++k) {
                const cplx ujk = u(j, k);
                for (std::size_t i = 0; i < basis.dim; ++i) v[i] += ujk * basis.columns[k][i];
            }
            double w = 0.0;
            for (const auto& z : v) w += std::norm(z);
            if (w < tol.drop_weight) continue;
            const double inv = 1.0 / std::sqrt(w);
            std::vector<cplx> amps(v);
            for (auto& z : amps) z *= inv;
            total += w * measure(PureState(std::move(amps), Tolerances{.normalization = 1e-9}));
        }
        return total;
    };

    constexpr double kInvPhi = 0.6180339887498949;

    double best_value = std::numeric_limits<double>::infinity();
    std::vector<double> best_params;
    bool best_converged = false;
    int restarts_used = 0;

    for (int restart = 0; restart < cfg.restarts; ++restart) {
        std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                          static_cast<std::uint32_t>(restart)};
        std::mt19937_64 rng(seq);
        std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
        std::vector<double> x(np);
        for (auto& xi : x) xi = angle(rng);

        double fx = objective(x);
        double h = cfg.initial_step;
        bool converged = false;
        for (int sweep = 0; sweep < cfg.max_iters; ++sweep) {
            const double f_start = fx;
            for (std::size_t i = 0; i < np && fx > 0.0; ++i) {
                const double origin = x[i];
                auto probe = [&](double t) {
                    x[i] = t;
                    return objective(x);
                };
                double lo = origin - h, hi = origin + h;
                double t1 = hi - kInvPhi * (hi - lo), t2 = lo + kInvPhi * (hi - lo);
                double f1 = probe(t1), f2 = probe(t2);
                for (int it = 0; it < cfg.golden_iters; ++it) {
                    if (f1 < f2) {
                        hi = t2;
                        t2 = t1;
                        f2 = f1;
                        t1 = hi - kInvPhi * (hi - lo);
                        f1 = probe(t1);
                    } else {
                        lo = t1;
                        t1 = t2;
                        f1 = f2;
                        t2 = lo + kInvPhi * (hi - lo);
                        f2 = probe(t2);
                    }
                }
                const double t_best = f1 < f2 ? t1 : t2;
                const double f_best = std::min(f1, f2);
                if (f_best < fx) {
                    x[i] = t_best;
                    fx = f_best;
                } else {
                    x[i] = origin;
                }
            }
            if (fx <= 0.0) {
                converged = true;
                break;
            }
            if (f_start - fx < cfg.improve_tol) {
                if (h <= cfg.step_tol) {
                    converged = true;
                    break;
                }
                h *= 0.5;
            }
        }
        ++restarts_used;
        // Strict comparison: ties keep the lower restart index.
        if (fx < best_value) {
            best_value = fx;
            best_params = x;
            best_converged = converged;
        }
    }

    Ensemble best = detail::ensemble_from_basis(basis, param.isometry(best_params), tol);
    const double ub = best.average(measure);
    return {ub, std::move(best), restarts_used, best_converged};
}

// Zero-tangle decomposition of rho(p) for p <= p0:
//   p/(3 p0) over |p0, 2 pi n/3>, n = 0,1,2, plus (1 - p/p0) |W>.
inline Ensemble optimal_ghzw_ensemble(double p, const GhzwMixtureParams& g,
                                      const Tolerances& tol = kDefaultTolerances) {
    if (!(p >= 0.0)) throw InvalidArgument("optimal_ghzw_ensemble: p must be non-negative");
    if (p > g.p0) throw InvalidArgument("optimal_ghzw_ensemble: p exceeds p0");
    std::vector<EnsembleMember> members;
    const double wz = p / (3.0 * g.p0);
    if (wz >= tol.drop_weight)
        for (int n = 0; n < 3; ++n)
            members.push_back({wz, g.superposition(g.p0, 2.0 * std::numbers::pi * n / 3.0)});
    const double ww = 1.0 - p / g.p0;
    if (ww >= tol.drop_weight) members.push_back({ww, g.w()});
    return Ensemble(std::move(members));
}

inline DensityMatrix ghzw_mixture(double p, const GhzwMixtureParams& g) {
    detail::require_probability(p, "ghzw_mixture");
    ComplexMatrix m = g.ghz().projector() * p + g.w().projector() * (1.0 - p);
    return DensityMatrix(std::move(m), DensityMatrix::Trusted{});
}

}  // namespace tritangle
