// validation.hpp
// Named invariant suites behind `tritangle validate`. Each check records the
// worst deviation it saw next to the tolerance it was held to.

#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tritangle/convex_roof.hpp"
#include "tritangle/entanglement.hpp"
#include "tritangle/random.hpp"
#include "tritangle/teleport.hpp"

namespace tritangle {

struct CheckResult {
    std::string name;
    bool passed;
    double worst;
    double tolerance;
    std::size_t samples;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
    }
    std::optional<std::string> first_failure() const {
        for (const auto& c : checks)
            if (!c.passed) return c.name;
        return std::nullopt;
    }
};

inline nlohmann::json to_json(const SuiteReport& r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name},
                          {"passed", c.passed},
                          {"worst", c.worst},
                          {"tolerance", c.tolerance},
                          {"samples", c.samples}});
    const auto ff = r.first_failure();
    return {{"suite", r.suite},
            {"passed", r.passed()},
            {"checks", checks},
            {"first_failure", ff ? nlohmann::json(*ff) : nlohmann::json(nullptr)}};
}

namespace detail {

// Tracks max(value) against an upper tolerance.
struct WorstCase {
    std::string name;
    double tolerance;
    double worst = 0.0;
    std::size_t samples = 0;

    void add(double v) {
        worst = std::max(worst, v);
        ++samples;
    }
    CheckResult result() const { return {name, worst <= tolerance, worst, tolerance, samples}; }
};

}  // namespace detail

inline void check_unitarity(SuiteReport& r) {
    for (SchemeKind k : {SchemeKind::Ghz, SchemeKind::W}) {
        detail::WorstCase c{"unitarity_" + std::string(to_string(k)), 1e-12};
        c.add(unitarity_error(scheme_unitary(k).unitary));
        r.checks.push_back(c.result());
    }
}

inline void check_fidelity(SuiteReport& r) {
    const TeleportScheme ghz = scheme_unitary(SchemeKind::Ghz);
    const TeleportScheme w = scheme_unitary(SchemeKind::W);
    detail::WorstCase cg{"fidelity_ghz_grid", 1e-10}, cw{"fidelity_w_grid", 1e-10}, cd{"rho_out_valid", 1e-12};
    for (int i = 0; i < 17; ++i)
        for (int j = 0; j < 9; ++j)
            for (int k = 0; k < 11; ++k) {
                const double theta = std::numbers::pi * i / 16.0;
                const double phi = 2.0 * std::numbers::pi * j / 8.0;
                const double p = k / 10.0;
                const TeleportReport rg = teleport_output(ghz, theta, phi, p);
                const TeleportReport rw = teleport_output(w, theta, phi, p);
                cg.add(std::abs(rg.fidelity - fidelity_ghz_closed(theta, p)));
                cw.add(std::abs(rw.fidelity - fidelity_w_closed(p)));
                for (const auto* rep : {&rg, &rw}) {
                    const DensityReport dr = check_density(rep->rho_out.matrix());
                    cd.add(std::max({dr.hermiticity_error, dr.trace_error, std::max(0.0, -dr.min_eigenvalue)}));
                }
            }
    detail::WorstCase ag{"avg_fidelity_ghz", 1e-9}, aw{"avg_fidelity_w", 1e-9};
    for (int k = 0; k <= 10; ++k) {
        const double p = k / 10.0;
        ag.add(std::abs(avg_fidelity(ghz, p) - avg_fidelity_closed(SchemeKind::Ghz, p)));
        aw.add(std::abs(avg_fidelity(w, p) - avg_fidelity_closed(SchemeKind::W, p)));
    }
    for (const auto& c : {cg, cw, cd, ag, aw}) r.checks.push_back(c.result());
}

inline void check_monogamy(SuiteReport& r, std::uint64_t seed, int samples = 1000) {
    Rng rng(seed);
    detail::WorstCase ckw{"ckw_inequality", 1e-9}, res{"residual_equals_tangle", 1e-8};
    for (int i = 0; i < samples; ++i) {
        const PureState psi = random_pure_state(3, rng);
        const double cut = cut_concurrence_pure(psi, Cut::AB_C);
        const PairConcurrences pc = reduced_concurrences(DensityMatrix::from_pure(psi));
        ckw.add(pc.ac * pc.ac + pc.bc * pc.bc - cut * cut);
        res.add(std::abs(monogamy_residual(psi) - three_tangle_pure(psi)));
    }
    r.checks.push_back(ckw.result());
    r.checks.push_back(res.result());
}

inline void check_roof(SuiteReport& r, std::uint64_t seed, int samples = 50) {
    Rng rng(seed);
    RoofConfig cfg;
    cfg.seed = seed;
    const PureMeasure conc = [](const PureState& s) { return concurrence_pure2(s).value; };
    const PureMeasure tangle = [](const PureState& s) { return three_tangle_pure(s).value; };

    // Upper-bound property and agreement are separate checks.
    detail::WorstCase below{"roof_not_below_wootters", 1e-9}, gap{"roof_vs_wootters", 5e-3};
    for (int i = 0; i < samples; ++i) {
        const DensityMatrix rho = random_mixed_state(2, 2, rng);
        const double exact = concurrence_wootters(rho);
        const double ub = minimize_roof(rho, conc, cfg).upper_bound;
        below.add(exact - ub);
        gap.add(std::abs(ub - exact));
    }
    const GhzwMixtureParams g = standard_ghzw_params();
    detail::WorstCase tbelow{"roof_not_below_ghzw_tangle", 1e-6}, tgap{"roof_vs_ghzw_tangle", 5e-3};
    for (double p : {0.3, 0.65, 0.7, 0.9}) {
        const double exact = three_tangle_ghzw(p, g);
        const double ub = minimize_roof(ghzw_mixture(p, g), tangle, cfg).upper_bound;
        tbelow.add(exact - ub);
        tgap.add(std::abs(ub - exact));
    }
    detail::WorstCase rec{"zero_tangle_ensemble_reconstruction", 1e-10}, mem{"zero_tangle_ensemble_members", 1e-10};
    for (double p : {0.0, 0.2, 0.4, g.p0}) {
        const Ensemble e = optimal_ghzw_ensemble(p, g);
        rec.add(max_abs_diff(e.density(), ghzw_mixture(p, g).matrix()));
        for (const auto& m : e.members()) mem.add(three_tangle_pure(m.state));
    }
    for (const auto& c : {below, gap, tbelow, tgap, rec, mem}) r.checks.push_back(c.result());
}

inline const std::vector<std::string>& validation_suites() {
    static const std::vector<std::string> names{"all", "monogamy", "roof", "unitarity", "fidelity"};
    return names;
}

inline SuiteReport run_validation(const std::string& suite, std::uint64_t seed) {
    SuiteReport r{suite, {}};
    const bool all = suite == "all";
    if (!all && std::find(validation_suites().begin(), validation_suites().end(), suite) == validation_suites().end())
        throw InvalidArgument("unknown validation suite: " + suite);
    if (all || suite == "unitarity") check_unitarity(r);
    if (all || suite == "fidelity") check_fidelity(r);
    if (all || suite == "monogamy") check_monogamy(r, seed);
    if (all || suite == "roof") check_roof(r, seed);
    return r;
}

}  // namespace tritangle
