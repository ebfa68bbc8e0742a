// cli.hpp
// Command implementations behind the `tritangle` executable. Each command
// renders into a std::ostream so it can be driven from tests.
//
// Exit codes: 0 success, 1 validation failure, 2 usage error.

#pragma once

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tritangle/convex_roof.hpp"
#include "tritangle/entanglement.hpp"
#include "tritangle/noisy_channel.hpp"
#include "tritangle/state_io.hpp"
#include "tritangle/teleport.hpp"
#include "tritangle/validation.hpp"

namespace tritangle::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr std::uint64_t kDefaultSeed = 20080101;
inline constexpr int kDefaultSweepSteps = 201;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// 12 significant digits, '.' separator, independent of the global locale.
inline std::string format_number(double x) {
    if (x == 0.0) x = 0.0;  // drop the sign of -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

// Value rounded to 12 significant digits, for JSON output.
inline double round12(double x) { return std::stod(format_number(x)); }

enum class OutputFormat { Csv, Json };

enum class SweepVariable { P, KappaT };

struct SweepSpec {
    SweepVariable variable = SweepVariable::P;
    double start = 0.0;
    double stop = 1.0;
    int steps = kDefaultSweepSteps;

    void validate() const {
        if (!(start < stop)) throw UsageError("sweep needs start < stop");
        if (steps < 2) throw UsageError("sweep needs at least 2 steps");
        if (variable == SweepVariable::P && (start < 0.0 || stop > 1.0))
            throw UsageError("p range must lie within [0, 1]");
        if (variable == SweepVariable::KappaT && start < 0.0) throw UsageError("kappa_t must be non-negative");
    }

    // Endpoints are hit exactly.
    double at(int i) const {
        if (i == steps - 1) return stop;
        return start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void write_csv(std::ostream& out) const {
        for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
        out << '\n';
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_number(row[c]);
            out << '\n';
        }
    }

    nlohmann::json to_json() const {
        nlohmann::json rs = nlohmann::json::array();
        for (const auto& row : rows) {
            nlohmann::json r = nlohmann::json::array();
            for (double v : row) r.push_back(round12(v));
            rs.push_back(r);
        }
        return {{"columns", columns}, {"rows", rs}};
    }
};

// ---------------------------------------------------------------------------
// Figure data

inline Table fig1_table(const SweepSpec& spec) {
    spec.validate();
    Table t{{"p", "c_ab", "c_ac", "c_bc", "tau3", "c_abc"}, {}};
    const GhzwMixtureParams g = standard_ghzw_params();
    for (int i = 0; i < spec.steps; ++i) {
        const double p = spec.at(i);
        const PairConcurrences pc = reduced_concurrences_qc(p);
        t.rows.push_back({p, pc.ab, pc.ac, pc.bc, three_tangle_ghzw(p, g), c_abc_mixture(p)});
    }
    return t;
}

inline nlohmann::json critical_summary() {
    const CriticalValues cv = critical_values();
    return {{"f_ghz", round12(cv.f_ghz)},
            {"f_w", round12(cv.f_w)},
            {"p_star", round12(cv.p_star)},
            {"p0", round12(cv.p0)},
            {"p1", round12(cv.p1)}};
}

inline Table fig4_table(const SweepSpec& spec, const QuadratureConfig& quad = {}) {
    spec.validate();
    Table t{{"p", "fbar_ghz_closed", "fbar_ghz_numeric", "fbar_w_closed", "fbar_w_numeric", "c_abc"}, {}};
    const TeleportScheme ghz = scheme_unitary(SchemeKind::Ghz);
    const TeleportScheme w = scheme_unitary(SchemeKind::W);
    for (int i = 0; i < spec.steps; ++i) {
        const double p = spec.at(i);
        t.rows.push_back({p, avg_fidelity_closed(SchemeKind::Ghz, p), avg_fidelity(ghz, p, quad),
                          avg_fidelity_closed(SchemeKind::W, p), avg_fidelity(w, p, quad), c_abc_mixture(p)});
    }
    return t;
}

// ---------------------------------------------------------------------------
// State measures

inline nlohmann::json measures_json(const StateVariant& state, const RoofConfig& roof) {
    nlohmann::json j;
    if (const auto* psi = std::get_if<PureState>(&state)) {
        j["num_qubits"] = psi->num_qubits();
        j["kind"] = "pure";
        if (psi->num_qubits() == 2) {
            const MeasureValue c = concurrence_pure2(*psi);
            j["concurrence"] = round12(c);
            j["eof"] = round12(eof_from_concurrence(c));
            j["groverian"] = round12(groverian_from_concurrence(c));
        } else if (psi->num_qubits() == 3) {
            const PairConcurrences pc = reduced_concurrences(DensityMatrix::from_pure(*psi));
            j["tau3"] = round12(three_tangle_pure(*psi));
            j["c_ab_c"] = round12(cut_concurrence_pure(*psi, Cut::AB_C));
            j["c_ac_b"] = round12(cut_concurrence_pure(*psi, Cut::AC_B));
            j["c_bc_a"] = round12(cut_concurrence_pure(*psi, Cut::BC_A));
            j["c_ab"] = round12(pc.ab);
            j["c_ac"] = round12(pc.ac);
            j["c_bc"] = round12(pc.bc);
            j["monogamy_residual"] = round12(monogamy_residual(*psi));
        } else {
            throw UsageError("measures supports 2- and 3-qubit states");
        }
        return j;
    }
    const auto& rho = std::get<DensityMatrix>(state);
    j["num_qubits"] = rho.num_qubits();
    j["kind"] = "mixed";
    if (rho.num_qubits() == 2) {
        const MeasureValue c = concurrence_wootters(rho);
        j["concurrence"] = round12(c);
        j["eof"] = round12(eof_from_concurrence(c));
        j["groverian"] = nullptr;  // no closed form for mixed states
    } else if (rho.num_qubits() == 3) {
        const MixedThreeQubitBounds b = mixed_three_qubit_bounds(rho, roof);
        j["c_ab"] = round12(b.concurrences.ab);
        j["c_ac"] = round12(b.concurrences.ac);
        j["c_bc"] = round12(b.concurrences.bc);
        j["upper_bounds"] = {{"tau3", round12(b.tau3_upper_bound)},
                             {"c_ab_c", round12(b.cut_upper_bounds[0])},
                             {"c_ac_b", round12(b.cut_upper_bounds[1])},
                             {"c_bc_a", round12(b.cut_upper_bounds[2])},
                             {"converged", b.roof_converged}};
    } else {
        throw UsageError("measures supports 2- and 3-qubit states");
    }
    return j;
}

// ---------------------------------------------------------------------------
// Teleportation and noisy channel

inline nlohmann::json teleport_json(SchemeKind kind, double theta, double phi, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw UsageError("p must lie in [0, 1]");
    const TeleportReport r = teleport_output(scheme_unitary(kind), theta, phi, p);
    const double closed = kind == SchemeKind::Ghz ? fidelity_ghz_closed(theta, p) : fidelity_w_closed(p);
    nlohmann::json rho = nlohmann::json::array();
    for (std::size_t i = 0; i < 2; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t k = 0; k < 2; ++k)
            row.push_back(nlohmann::json::array({round12(r.rho_out(i, k).real()), round12(r.rho_out(i, k).imag())}));
        rho.push_back(row);
    }
    return {{"scheme", to_string(kind)}, {"theta", theta},
            {"phi", phi},                {"p", p},
            {"fidelity", round12(r.fidelity)}, {"fidelity_closed", round12(closed)},
            {"rho_out", rho}};
}

inline Table noisy_table(const std::vector<double>& kappa_ts, const RoofConfig& roof) {
    Table t{{"kappa_t", "valid", "min_eigenvalue", "trace_error", "matches_pure_w", "c_ab", "c_ac", "c_bc",
             "tau3_upper_bound", "c_ab_c_upper_bound", "c_ac_b_upper_bound", "c_bc_a_upper_bound", "roof_converged"},
            {}};
    for (double kt : kappa_ts) {
        const NoisyChannelReport r = channel_report(kt, roof);
        t.rows.push_back({kt, r.validation.ok() ? 1.0 : 0.0, r.validation.min_eigenvalue, r.validation.trace_error,
                          r.matches_pure_w ? 1.0 : 0.0, r.concurrences.ab, r.concurrences.ac, r.concurrences.bc,
                          r.tau3_upper_bound, r.cut_upper_bounds[0], r.cut_upper_bounds[1], r.cut_upper_bounds[2],
                          r.roof_converged ? 1.0 : 0.0});
    }
    return t;
}

inline nlohmann::json noisy_json(const std::vector<double>& kappa_ts, const RoofConfig& roof) {
    nlohmann::json rows = nlohmann::json::array();
    for (double kt : kappa_ts) {
        const NoisyChannelReport r = channel_report(kt, roof);
        rows.push_back({{"kappa_t", kt},
                        {"valid", r.validation.ok()},
                        {"min_eigenvalue", round12(r.validation.min_eigenvalue)},
                        {"trace_error", round12(r.validation.trace_error)},
                        {"matches_pure_w", r.matches_pure_w},
                        {"alpha", {round12(r.params.alpha[0]), round12(r.params.alpha[1]), round12(r.params.alpha[2]),
                                   round12(r.params.alpha[3])}},
                        {"beta_plus", round12(r.params.beta_plus)},
                        {"beta_minus", round12(r.params.beta_minus)},
                        {"exact", {{"c_ab", round12(r.concurrences.ab)},
                                   {"c_ac", round12(r.concurrences.ac)},
                                   {"c_bc", round12(r.concurrences.bc)}}},
                        {"upper_bounds", {{"tau3", round12(r.tau3_upper_bound)},
                                          {"c_ab_c", round12(r.cut_upper_bounds[0])},
                                          {"c_ac_b", round12(r.cut_upper_bounds[1])},
                                          {"c_bc_a", round12(r.cut_upper_bounds[2])},
                                          {"converged", r.roof_converged}}}});
    }
    return {{"rows", rows}};
}

// ---------------------------------------------------------------------------
// Entry point

inline std::uint64_t seed_from_environment() {
    if (const char* env = std::getenv("TRITANGLE_SEED")) {
        std::uint64_t v = 0;
        const std::string s(env);
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec == std::errc{} && res.ptr == s.data() + s.size()) return v;
        throw UsageError("TRITANGLE_SEED is not an unsigned integer");
    }
    return kDefaultSeed;
}

struct CommonOptions {
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out_path;
    std::string format;
};

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"tritangle: entanglement measures and teleportation fidelities for GHZ/W channels"};
    app.require_subcommand(1);

    std::vector<CommonOptions> common(6);
    auto add_common = [&](CLI::App* sub, CommonOptions& o, const std::string& default_format) {
        o.format = default_format;
        sub->add_option("--seed", o.seed, "RNG seed (falls back to $TRITANGLE_SEED, then " +
                                              std::to_string(kDefaultSeed) + ")");
        sub->add_option("--out", o.out_path, "Write output to this file instead of stdout");
        sub->add_option("--format", o.format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
    };

    SweepSpec fig1_spec, fig4_spec;
    QuadratureConfig quad;
    auto add_sweep = [](CLI::App* sub, SweepSpec& s) {
        sub->add_option("--start", s.start, "First grid value")->capture_default_str();
        sub->add_option("--stop", s.stop, "Last grid value")->capture_default_str();
        sub->add_option("--steps", s.steps, "Number of grid points")->capture_default_str();
    };

    auto* fig1 = app.add_subcommand("fig1", "C_(AB)C, pair concurrences and three-tangle of the GHZ/W channel vs p");
    add_common(fig1, common[0], "csv");
    add_sweep(fig1, fig1_spec);

    auto* fig4 = app.add_subcommand("fig4", "Average teleportation fidelities vs p, plus critical values");
    add_common(fig4, common[1], "csv");
    add_sweep(fig4, fig4_spec);
    fig4->add_option("--theta-nodes", quad.theta_nodes, "Gauss-Legendre nodes in cos(theta)")->capture_default_str();
    fig4->add_option("--phi-nodes", quad.phi_nodes, "Uniform nodes in phi")->capture_default_str();

    RoofConfig roof;
    roof.restarts = 8;
    roof.max_iters = 200;
    auto add_roof = [](CLI::App* sub, RoofConfig& r) {
        sub->add_option("--restarts", r.restarts, "Convex-roof restarts")->capture_default_str();
        sub->add_option("--max-iters", r.max_iters, "Convex-roof sweeps per restart")->capture_default_str();
        sub->add_option("--ensemble-size", r.ensemble_size, "Ensemble size (0: rank + 2)")->capture_default_str();
    };

    std::string state_file;
    auto* measures = app.add_subcommand("measures", "Entanglement measures of a JSON state file");
    add_common(measures, common[2], "json");
    measures->add_option("state_file", state_file, "State file")->required();
    add_roof(measures, roof);

    std::string scheme_name;
    double theta = 0.0, phi = 0.0, p = 0.0;
    auto* teleport = app.add_subcommand("teleport", "Teleport one input state through rho_QC(p)");
    add_common(teleport, common[3], "json");
    teleport->add_option("scheme", scheme_name, "Circuit: ghz or w")->required()->check(CLI::IsMember({"ghz", "w"}));
    teleport->add_option("--theta", theta, "Input polar angle (radians)")->capture_default_str();
    teleport->add_option("--phi", phi, "Input azimuthal angle (radians)")->capture_default_str();
    teleport->add_option("--p", p, "GHZ weight of the channel")->capture_default_str();

    SweepSpec noisy_spec{SweepVariable::KappaT, 0.0, 2.0, 5};
    std::vector<double> kappa_single;
    auto* noisy = app.add_subcommand("noisy", "Decohered W channel: validation, exact concurrences, roof bounds");
    add_common(noisy, common[4], "csv");
    noisy->add_option("--kappa-t", kappa_single, "Evaluate at these kappa*t values instead of a sweep");
    add_sweep(noisy, noisy_spec);
    add_roof(noisy, roof);

    std::string suite = "all";
    auto* validate = app.add_subcommand("validate", "Run an invariant suite; exit 1 on any violation");
    add_common(validate, common[5], "json");
    validate->add_option("suite", suite, "Suite")->check(CLI::IsMember(validation_suites()))->capture_default_str();

    std::vector<std::string> argv_storage{"tritangle"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    std::size_t which = 0;
    for (auto* sub : {fig1, fig4, measures, teleport, noisy, validate}) {
        if (sub->parsed()) break;
        ++which;
    }
    CommonOptions& opts = common[which];
    CLI::App* chosen = std::vector<CLI::App*>{fig1, fig4, measures, teleport, noisy, validate}[which];
    opts.seed_given = chosen->count("--seed") > 0;

    try {
        const std::uint64_t seed = opts.seed_given ? opts.seed : seed_from_environment();
        roof.seed = seed;
        const bool json = opts.format == "json";

        std::ostringstream buffer;
        int code = kExitOk;
        if (fig1->parsed()) {
            const Table t = fig1_table(fig1_spec);
            if (json) buffer << t.to_json().dump(2) << '\n';
            else t.write_csv(buffer);
        } else if (fig4->parsed()) {
            if (quad.theta_nodes < kMinQuadratureNodes || quad.phi_nodes < kMinQuadratureNodes)
                throw UsageError("quadrature needs at least 8 nodes per direction");
            const Table t = fig4_table(fig4_spec, quad);
            if (json) {
                nlohmann::json j = t.to_json();
                j["summary"] = critical_summary();
                buffer << j.dump(2) << '\n';
            } else {
                t.write_csv(buffer);
                buffer << "# summary " << critical_summary().dump() << '\n';
            }
        } else if (measures->parsed()) {
            StateVariant st = [&] {
                try {
                    return load_state_file(state_file);
                } catch (const StateFileError& e) {
                    throw UsageError(e.what());
                }
            }();
            const nlohmann::json j = measures_json(st, roof);
            if (json) {
                buffer << j.dump(2) << '\n';
            } else {
                buffer << "key,value\n";
                for (const auto& [k, v] : j.items())
                    if (v.is_number()) buffer << k << ',' << format_number(v.get<double>()) << '\n';
            }
        } else if (teleport->parsed()) {
            const SchemeKind kind = scheme_name == "ghz" ? SchemeKind::Ghz : SchemeKind::W;
            const nlohmann::json j = teleport_json(kind, theta, phi, p);
            if (json) {
                buffer << j.dump(2) << '\n';
            } else {
                buffer << "scheme,theta,phi,p,fidelity,fidelity_closed\n"
                       << scheme_name << ',' << format_number(theta) << ',' << format_number(phi) << ','
                       << format_number(p) << ',' << format_number(j["fidelity"].get<double>()) << ','
                       << format_number(j["fidelity_closed"].get<double>()) << '\n';
            }
        } else if (noisy->parsed()) {
            std::vector<double> kts = kappa_single;
            if (kts.empty()) {
                noisy_spec.validate();
                for (int i = 0; i < noisy_spec.steps; ++i) kts.push_back(noisy_spec.at(i));
            }
            for (double kt : kts)
                if (!(kt >= 0.0)) throw UsageError("kappa_t must be non-negative");
            if (roof.restarts < 1 || roof.max_iters < 1) throw UsageError("restarts and max-iters must be >= 1");
            if (json) buffer << noisy_json(kts, roof).dump(2) << '\n';
            else noisy_table(kts, roof).write_csv(buffer);
        } else if (validate->parsed()) {
            const SuiteReport r = run_validation(suite, seed);
            if (json) {
                buffer << to_json(r).dump(2) << '\n';
            } else {
                buffer << "check,passed,worst,tolerance,samples\n";
                for (const auto& c : r.checks)
                    buffer << c.name << ',' << (c.passed ? 1 : 0) << ',' << format_number(c.worst) << ','
                           << format_number(c.tolerance) << ',' << c.samples << '\n';
            }
            if (!r.passed()) {
                err << "validation failed: " << *r.first_failure() << "\n";
                code = kExitValidation;
            }
        }

        if (opts.out_path.empty()) {
            out << buffer.str();
        } else {
            std::ofstream f(opts.out_path, std::ios::binary);
            if (!f) throw UsageError("cannot write " + opts.out_path);
            f << buffer.str();
        }
        return code;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}

}  // namespace tritangle::cli
