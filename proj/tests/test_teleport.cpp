#include <catch_amalgamated.hpp>

#include <numbers>

#include "oracles.hpp"
#include "tritangle/random.hpp"
#include "tritangle/teleport.hpp"

using namespace tritangle;
using Catch::Approx;

namespace {

const double kPi = std::numbers::pi;

oracle::Mat to_mat(const ComplexMatrix& m) {
    oracle::Mat r(m.rows(), std::vector<cplx>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = m(i, j);
    return r;
}

}  // namespace

TEST_CASE("channel_state and input_state", "[teleport]") {
    const double h = 1.0 / std::numbers::sqrt2;
    const ComplexMatrix ghz = channel_state(1.0).matrix();
    CHECK(ghz(0, 0).real() == Approx(0.5));
    CHECK(ghz(0, 7).real() == Approx(0.5));
    CHECK(ghz(7, 7).real() == Approx(0.5));
    const ComplexMatrix w = channel_state(0.0).matrix();
    CHECK(w(1, 1).real() == Approx(0.5));
    CHECK(w(2, 2).real() == Approx(0.25));
    CHECK(w(4, 4).real() == Approx(0.25));
    CHECK(w(1, 2).real() == Approx(0.5 * h));
    CHECK(w(2, 4).real() == Approx(0.25));
    CHECK(channel_state(0.4).matrix().trace().real() == Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(channel_state(1.01), InvalidArgument);

    const PureState zero = input_state(0.0, 0.0);
    CHECK(std::abs(zero[0] - cplx{1.0, 0.0}) <= 1e-15);
    CHECK(std::abs(zero[1]) <= 1e-15);
    const PureState one = input_state(kPi, 0.0);
    CHECK(std::abs(one[1]) == Approx(1.0));
    const PureState plus = input_state(kPi / 2, 0.0);
    CHECK(std::abs(plus[0]) == Approx(h));
    CHECK(std::abs(plus[1]) == Approx(h));
    const PureState y = input_state(kPi / 2, kPi / 2);
    CHECK(std::arg(y[1] / y[0]) == Approx(-kPi / 2));
}

TEST_CASE("scheme unitaries", "[teleport]") {
    const TeleportScheme ghz = scheme_unitary(SchemeKind::Ghz);
    const TeleportScheme w = scheme_unitary(SchemeKind::W);
    CHECK(unitarity_error(ghz.unitary) <= 1e-12);
    CHECK(unitarity_error(w.unitary) <= 1e-12);
    CHECK(max_abs_diff(ghz.unitary.adjoint() * ghz.unitary, ComplexMatrix::identity(16)) <= 1e-12);
    CHECK(ghz.unitary(0, 0).real() == Approx(1.0 / std::numbers::sqrt2));
    CHECK(ghz.unitary(0, 14).real() == Approx(1.0 / std::numbers::sqrt2));
    CHECK(w.unitary(2, 7).real() == Approx(1.0));
    CHECK(to_string(SchemeKind::Ghz) == "ghz");
    CHECK(to_string(SchemeKind::W) == "w");
}

TEST_CASE("teleport fidelity", "[teleport]") {
    const TeleportScheme ghz = scheme_unitary(SchemeKind::Ghz);
    const TeleportScheme w = scheme_unitary(SchemeKind::W);

    SECTION("perfect channels at the endpoints") {
        Rng rng(31);
        std::uniform_real_distribution<double> ut(0, kPi), up(0, 2 * kPi);
        for (int t = 0; t < 20; ++t) {
            const double th = ut(rng), ph = up(rng);
            CHECK(teleport_output(ghz, th, ph, 1.0).fidelity == Approx(1.0).margin(1e-12));
            CHECK(teleport_output(w, th, ph, 0.0).fidelity == Approx(1.0).margin(1e-12));
        }
    }
    SECTION("spot values") {
        CHECK(teleport_output(ghz, kPi / 2, 0.0, 0.0).fidelity == Approx(0.5).margin(1e-12));
        CHECK(fidelity_ghz_closed(0.0, 0.0) == Approx(0.25));
        CHECK(teleport_output(ghz, 0.0, 0.0, 0.0).fidelity == Approx(0.25).margin(1e-12));
        CHECK(teleport_output(w, 1.0, 2.0, 0.4).fidelity == Approx(0.8).margin(1e-12));
    }
    SECTION("grid agrees with the state-vector oracle and the closed forms") {
        const oracle::Mat ug = to_mat(ghz.unitary), uw = to_mat(w.unitary);
        for (int i = 0; i <= 8; ++i)
            for (int j = 0; j < 4; ++j)
                for (double p : {0.0, 0.25, 0.6, 1.0}) {
                    const double th = kPi * i / 8, ph = 2 * kPi * j / 4;
                    const double fg = teleport_output(ghz, th, ph, p).fidelity;
                    const double fw = teleport_output(w, th, ph, p).fidelity;
                    CHECK(fg == Approx(oracle::teleport_fidelity(ug, th, ph, p)).margin(1e-12));
                    CHECK(fw == Approx(oracle::teleport_fidelity(uw, th, ph, p)).margin(1e-12));
                    CHECK(fg == Approx(fidelity_ghz_closed(th, p)).margin(1e-10));
                    CHECK(fw == Approx(fidelity_w_closed(p)).margin(1e-10));
                }
    }
    SECTION("transfer blocks match the literal route") {
        Rng rng(2);
        for (double p : {0.1, 0.5, 0.9}) {
            const TeleportTransfer tg(ghz, p), tw(w, p);
            for (int t = 0; t < 10; ++t) {
                const PureState psi = random_pure_state(1, rng);
                const double th = 2 * std::acos(std::min(1.0, std::abs(psi[0])));
                const double ph = std::arg(psi[0]) - std::arg(psi[1]);
                const PureState in = input_state(th, ph);
                CHECK(tg.fidelity(in) == Approx(teleport_output(ghz, th, ph, p).fidelity).margin(1e-12));
                CHECK(max_abs_diff(tw.output(in.projector()), teleport_output(w, th, ph, p).rho_out.matrix()) <= 1e-12);
            }
        }
    }
    SECTION("output is a valid state") {
        for (double p : {0.0, 0.3, 1.0}) {
            const TeleportReport r = teleport_output(w, 0.7, 1.3, p);
            CHECK(check_density(r.rho_out.matrix()).ok());
        }
    }
}

TEST_CASE("average fidelity", "[teleport]") {
    const TeleportScheme ghz = scheme_unitary(SchemeKind::Ghz);
    const TeleportScheme w = scheme_unitary(SchemeKind::W);
    CHECK(avg_fidelity(ghz, 0.5) == Approx(0.708333333333).margin(1e-9));
    for (int k = 0; k <= 10; ++k) {
        const double p = k / 10.0;
        CHECK(avg_fidelity(ghz, p) == Approx(avg_fidelity_closed(SchemeKind::Ghz, p)).margin(1e-9));
        CHECK(avg_fidelity(w, p) == Approx(avg_fidelity_closed(SchemeKind::W, p)).margin(1e-9));
    }
    // the GHZ fidelity is quadratic in cos(theta), so 8 nodes already suffice
    CHECK(avg_fidelity(ghz, 0.3, {8, 8}) == Approx(avg_fidelity_closed(SchemeKind::Ghz, 0.3)).margin(1e-12));
    CHECK_THROWS_AS(avg_fidelity(ghz, 0.3, {4, 16}), InvalidArgument);
    CHECK_THROWS_AS(avg_fidelity(ghz, 0.3, {16, 7}), InvalidArgument);
}

TEST_CASE("critical values", "[teleport]") {
    const CriticalValues cv = critical_values();
    CHECK(cv.f_ghz == Approx(0.774549).margin(1e-6));
    CHECK(cv.f_w == Approx(5.0 / 6.0).margin(1e-12));
    CHECK(cv.p_star == Approx(7.0 / 13.0).margin(1e-15));
    CHECK(fidelity_crossing() == Approx(7.0 / 13.0).margin(1e-9));
    CHECK(avg_fidelity_closed(SchemeKind::Ghz, cv.p_star) ==
          Approx(avg_fidelity_closed(SchemeKind::W, cv.p_star)).margin(1e-12));
    // both schemes beat the classical 2/3 at the crossing
    CHECK(avg_fidelity_closed(SchemeKind::W, cv.p_star) > 2.0 / 3.0);

    double prev_g = 0, prev_w = 2;
    for (int i = 0; i <= 100; ++i) {
        const double p = i / 100.0;
        const double g = avg_fidelity_closed(SchemeKind::Ghz, p), wv = avg_fidelity_closed(SchemeKind::W, p);
        CHECK(g > prev_g);
        CHECK(wv < prev_w);
        CHECK(std::max(g, wv) >= 2.0 / 3.0);
        if (p < cv.p_star) CHECK(wv > g);
        if (p > cv.p_star) CHECK(g > wv);
        prev_g = g;
        prev_w = wv;
    }
}

TEST_CASE("gauss_legendre", "[teleport]") {
    for (int n : {1, 2, 5, 8, 32}) {
        const GaussLegendreRule r = gauss_legendre(n);
        for (int k = 0; k < 2 * n; ++k) {
            double s = 0;
            for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
            const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
            CHECK(s == Approx(exact).margin(1e-13));
        }
    }
    CHECK(sphere_average([](double, double) { return 1.0; }) == Approx(1.0).margin(1e-14));
    CHECK(sphere_average([](double th, double) { return std::cos(th) * std::cos(th); }) == Approx(1.0 / 3.0).margin(1e-14));
}
