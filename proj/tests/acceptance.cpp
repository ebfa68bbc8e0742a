// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "tritangle/tritangle.hpp"

using namespace tritangle;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

struct Criterion {
    int id;
    std::string name;
    double limit_s;
    std::function<Outcome()> body;
};

Outcome constants() {
    Outcome o;
    const GhzwMixtureParams g = standard_ghzw_params();
    o.require(std::abs(g.p0 - 0.6137) <= 5e-4, "p0 = " + num(g.p0));
    o.require(std::abs(g.p1 - 0.7236) <= 5e-4, "p1 = " + num(g.p1));
    o.require(std::abs(g.t1 - 0.2764) <= 5e-4, "t1 = " + num(g.t1));
    o.require(g.s == 2.0, "s = " + num(g.s));
    return o;
}

Outcome critical() {
    Outcome o;
    const CriticalValues cv = critical_values();
    o.require(std::abs(cv.f_ghz - 0.774549) <= 1e-6, "f_ghz = " + num(cv.f_ghz));
    o.require(std::abs(cv.f_w - 0.833333) <= 1e-6, "f_w = " + num(cv.f_w));
    o.require(std::abs(cv.p_star - 7.0 / 13.0) <= 1e-9, "p* = " + num(cv.p_star));
    const double crossing = fidelity_crossing();
    o.require(std::abs(crossing - 7.0 / 13.0) <= 1e-9, "bisected crossing = " + num(crossing));
    return o;
}

Outcome fidelity_identity() {
    Outcome o;
    const TeleportScheme ghz = scheme_unitary(SchemeKind::Ghz), w = scheme_unitary(SchemeKind::W);
    double worst_g = 0, worst_w = 0;
    for (int i = 0; i < 17; ++i)
        for (int j = 0; j < 9; ++j)
            for (int k = 0; k < 11; ++k) {
                const double th = std::numbers::pi * i / 16, ph = 2 * std::numbers::pi * j / 8, p = k / 10.0;
                const double fg = teleport_output(ghz, th, ph, p).fidelity;
                const double fw = teleport_output(w, th, ph, p).fidelity;
                const double ref_g = ((3 + 5 * p) - (1 - p) * std::cos(2 * th)) / 8;
                worst_g = std::max(worst_g, std::abs(fg - ref_g));
                worst_w = std::max(worst_w, std::abs(fw - (1 - p / 2)));
            }
    o.require(worst_g <= 1e-10, "GHZ grid error " + num(worst_g));
    o.require(worst_w <= 1e-10, "W grid error " + num(worst_w));
    double worst_avg = 0;
    for (int k = 0; k <= 10; ++k) {
        const double p = k / 10.0;
        worst_avg = std::max(worst_avg, std::abs(avg_fidelity(ghz, p) - (5 + 7 * p) / 12));
        worst_avg = std::max(worst_avg, std::abs(avg_fidelity(w, p) - (1 - p / 2)));
    }
    o.require(worst_avg <= 1e-9, "average fidelity error " + num(worst_avg));
    return o;
}

Outcome endpoints() {
    Outcome o;
    const TeleportScheme ghz = scheme_unitary(SchemeKind::Ghz), w = scheme_unitary(SchemeKind::W);
    Rng rng(20080101);
    std::uniform_real_distribution<double> ut(0, std::numbers::pi), up(0, 2 * std::numbers::pi);
    double worst = 0;
    for (int t = 0; t < 20; ++t) {
        const double th = ut(rng), ph = up(rng);
        worst = std::max(worst, std::abs(teleport_output(ghz, th, ph, 1.0).fidelity - 1.0));
        worst = std::max(worst, std::abs(teleport_output(w, th, ph, 0.0).fidelity - 1.0));
    }
    o.require(worst <= 1e-12, "endpoint error " + num(worst));
    return o;
}

Outcome fig1_curve() {
    Outcome o;
    const GhzwMixtureParams g = standard_ghzw_params();
    o.require(std::abs(c_abc_mixture(0.0) - 1.0) <= 1e-12, "c_abc(0) = " + num(c_abc_mixture(0.0)));
    o.require(std::abs(c_abc_mixture(1.0) - 1.0) <= 1e-12, "c_abc(1) = " + num(c_abc_mixture(1.0)));
    const double lo = 1.0 / 3.0 + 1e-6, hi = g.p0 - 1e-6;
    double worst_zero = 0;
    for (int i = 0; i <= 2000; ++i) worst_zero = std::max(worst_zero, c_abc_mixture(lo + (hi - lo) * i / 2000.0).value);
    o.require(worst_zero == 0.0, "nonzero inside the gap: " + num(worst_zero));
    double worst_jump = 0;
    double prev = c_abc_mixture(0.0);
    for (int i = 1; i <= 200; ++i) {
        const double v = c_abc_mixture(i / 200.0);
        worst_jump = std::max(worst_jump, std::abs(v - prev));
        prev = v;
    }
    o.require(worst_jump < 0.02, "largest step " + num(worst_jump));
    return o;
}

Outcome monogamy() {
    Outcome o;
    const SuiteReport r = run_validation("monogamy", 20080101);
    for (const auto& c : r.checks) o.require(c.passed && c.samples == 1000, c.name + " worst " + num(c.worst));
    return o;
}

Outcome roof() {
    Outcome o;
    Rng rng(20080101);
    const RoofConfig cfg;
    const PureMeasure conc = [](const PureState& s) { return concurrence_pure2(s).value; };
    const PureMeasure tangle = [](const PureState& s) { return three_tangle_pure(s).value; };
    double worst = 0;
    for (int i = 0; i < 50; ++i) {
        const DensityMatrix rho = random_mixed_state(2, 2, rng);
        worst = std::max(worst, std::abs(minimize_roof(rho, conc, cfg).upper_bound - concurrence_wootters(rho)));
    }
    o.require(worst <= 5e-3, "Wootters gap " + num(worst));
    const GhzwMixtureParams g = standard_ghzw_params();
    double worst_t = 0;
    for (double p : {0.3, 0.65, 0.7, 0.9})
        worst_t = std::max(worst_t, std::abs(minimize_roof(ghzw_mixture(p, g), tangle, cfg).upper_bound -
                                             three_tangle_ghzw(p, g).value));
    o.require(worst_t <= 5e-3, "tangle gap " + num(worst_t));
    double worst_rec = 0, worst_mem = 0;
    for (double p : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, g.p0}) {
        const Ensemble e = optimal_ghzw_ensemble(p, g);
        worst_rec = std::max(worst_rec, max_abs_diff(e.density(), ghzw_mixture(p, g).matrix()));
        for (const auto& m : e.members()) worst_mem = std::max(worst_mem, three_tangle_pure(m.state).value);
    }
    o.require(worst_rec <= 1e-10, "reconstruction " + num(worst_rec));
    o.require(worst_mem <= 1e-10, "member tangle " + num(worst_mem));
    return o;
}

Outcome noisy() {
    Outcome o;
    const double d0 = max_abs_diff(epsilon_x_w_matrix(noise_params(0.0)), w_state().projector());
    o.require(d0 <= 1e-12, "distance to W " + num(d0));
    Rng rng(20080101);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    double worst_trace = 0, min_eig = 1;
    for (int t = 0; t < 20; ++t) {
        const ComplexMatrix m = epsilon_x_w_matrix(noise_params(t == 0 ? 0.0 : u(rng)));
        worst_trace = std::max(worst_trace, std::abs(m.trace() - cplx{1.0, 0.0}));
        min_eig = std::min(min_eig, hermitian_eigenvalues(m).back());
    }
    for (double k : {0.01, 0.1, 0.5, 1.0, 2.0, 10.0, 50.0})
        min_eig = std::min(min_eig, hermitian_eigenvalues(epsilon_x_w_matrix(noise_params(k))).back());
    o.require(worst_trace <= 1e-13, "trace error " + num(worst_trace));
    o.require(min_eig >= -kDefaultTolerances.psd, "min eigenvalue " + num(min_eig));
    return o;
}

Outcome unitarity() {
    Outcome o;
    const double eg = unitarity_error(scheme_unitary(SchemeKind::Ghz).unitary);
    const double ew = unitarity_error(scheme_unitary(SchemeKind::W).unitary);
    o.require(eg <= 1e-12, "U_GHZ " + num(eg));
    o.require(ew <= 1e-12, "U_W " + num(ew));
    return o;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "constants p0, p1, t1, s", 1.0, constants},
        {2, "critical fidelities and crossing", 1.0, critical},
        {3, "closed-form fidelity identity", 30.0, fidelity_identity},
        {4, "perfect-teleportation endpoints", 5.0, endpoints},
        {5, "C_(AB)C curve of the GHZ/W channel", 5.0, fig1_curve},
        {6, "monogamy on 1000 random states", 60.0, monogamy},
        {7, "convex-roof agreement", 300.0, roof},
        {8, "decohered W channel", 5.0, noisy},
        {9, "circuit unitarity", 1.0, unitarity},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.require(secs < c.limit_s, "runtime " + num(secs) + " s over limit " + num(c.limit_s) + " s");
        std::printf("%s criterion %d: %s (%.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                    o.detail.empty() ? "" : " -- ", o.detail.c_str());
        std::fflush(stdout);
        if (!o.ok) ++failures;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
