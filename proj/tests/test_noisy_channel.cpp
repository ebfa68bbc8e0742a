#include <catch_amalgamated.hpp>

#include <map>
#include <numbers>

#include "tritangle/noisy_channel.hpp"
#include "tritangle/random.hpp"

using namespace tritangle;
using Catch::Approx;

TEST_CASE("noise_params", "[noisy]") {
    const NoiseParams z = noise_params(0.0);
    CHECK(z.alpha == std::array<double, 4>{4, 0, 0, 0});
    CHECK(z.beta_plus == 2.0);
    CHECK(z.beta_minus == 0.0);

    const NoiseParams inf = noise_params(std::numeric_limits<double>::infinity());
    CHECK(inf.alpha == std::array<double, 4>{1, 1, 1, 1});
    CHECK(inf.beta_plus == 1.0);
    CHECK(inf.beta_minus == 1.0);

    const NoiseParams h = noise_params(0.5);
    const double e = std::exp(-1.0);
    CHECK(h.alpha[0] == Approx(1 + e + e * e + e * e * e).epsilon(1e-15));
    CHECK(h.alpha[0] == Approx(1.5530).margin(1e-4));

    CHECK_THROWS_AS(noise_params(-0.1), InvalidArgument);
    CHECK_THROWS_AS(noise_params(std::nan("")), InvalidArgument);

    SECTION("identities") {
        for (double k : {0.0, 0.1, 0.7, 3.0}) {
            const NoiseParams np = noise_params(k);
            CHECK(np.alpha[0] + np.alpha[1] + np.alpha[2] + np.alpha[3] == Approx(4.0));
            CHECK(np.beta_plus + np.beta_minus == Approx(2.0));
            CHECK(np.alpha[0] - np.alpha[1] - np.alpha[2] + np.alpha[3] == Approx(4 * std::exp(-4 * k)));
            for (double a : np.alpha) CHECK(a >= -1e-15);
        }
    }
}

TEST_CASE("noisy W pattern", "[noisy]") {
    const auto& pat = noisy_w_pattern();
    std::map<std::pair<int, int>, NoiseEntry> by_pos;
    for (const auto& e : pat) {
        CHECK(by_pos.emplace(std::pair{e.row, e.col}, e).second);
        CHECK(e.row >= 0);
        CHECK(e.row < 8);
        CHECK(e.col >= 0);
        CHECK(e.col < 8);
    }
    for (const auto& [pos, e] : by_pos) {
        const auto it = by_pos.find({pos.second, pos.first});
        REQUIRE(it != by_pos.end());
        CHECK(it->second.multiplier == e.multiplier);
        CHECK(it->second.symbol == e.symbol);
    }
    // diagonal multipliers are all 2, so the trace is (2/16) * sum of the diagonal symbols
    for (int i = 0; i < 8; ++i) {
        REQUIRE(by_pos.count({i, i}) == 1);
        CHECK(by_pos.at({i, i}).multiplier == 2.0);
    }
}

TEST_CASE("epsilon_x_w", "[noisy]") {
    SECTION("no noise leaves the W state") {
        CHECK(max_abs_diff(epsilon_x_w(0.0).matrix(), w_state().projector()) <= 1e-12);
    }
    SECTION("trace one") {
        Rng rng(13);
        std::uniform_real_distribution<double> u(0.0, 10.0);
        for (int t = 0; t < 20; ++t) {
            const ComplexMatrix m = epsilon_x_w_matrix(noise_params(u(rng)));
            CHECK(std::abs(m.trace() - cplx{1.0, 0.0}) <= 1e-13);
        }
    }
    SECTION("valid density matrix") {
        for (double k : {0.0, 0.1, 0.5, 1.0, 2.0, 10.0}) {
            const DensityReport r = check_density(epsilon_x_w_matrix(noise_params(k)));
            CHECK(r.ok());
            CHECK(r.min_eigenvalue >= -1e-10);
        }
    }
    SECTION("Hermitian and real") {
        const ComplexMatrix m = epsilon_x_w_matrix(noise_params(0.3));
        CHECK(hermiticity_error(m) == 0.0);
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = 0; j < 8; ++j) CHECK(m(i, j).imag() == 0.0);
    }
}

TEST_CASE("channel_report", "[noisy]") {
    RoofConfig cfg;
    cfg.restarts = 4;
    cfg.max_iters = 100;

    SECTION("kappa_t = 0 reproduces the W state") {
        const NoisyChannelReport r = channel_report(0.0, cfg);
        CHECK(r.matches_pure_w);
        CHECK(r.validation.ok());
        CHECK(r.concurrences.ab.value == Approx(0.5).margin(1e-9));
        CHECK(r.concurrences.ac.value == Approx(1.0 / std::numbers::sqrt2).margin(1e-9));
        CHECK(r.concurrences.bc.value == Approx(1.0 / std::numbers::sqrt2).margin(1e-9));
        CHECK(r.tau3_upper_bound <= 1e-4);
        for (double b : r.cut_upper_bounds) CHECK(b <= 1.0);
    }
    SECTION("pair concurrences decay with noise") {
        double prev = 2.0;
        for (double k : {0.0, 0.1, 0.3, 0.6, 1.0}) {
            const PairConcurrences pc = reduced_concurrences(epsilon_x_w(k));
            CHECK(pc.ac.value <= prev + 1e-12);
            prev = pc.ac.value;
        }
        const PairConcurrences far = reduced_concurrences(epsilon_x_w(20.0));
        CHECK(far.ab.value == Approx(0.0).margin(1e-9));
        CHECK(far.ac.value == Approx(0.0).margin(1e-9));
        CHECK(far.bc.value == Approx(0.0).margin(1e-9));
    }
    SECTION("noisy bounds stay in [0, 1]") {
        cfg.restarts = 1;
        cfg.max_iters = 20;
        const NoisyChannelReport r = channel_report(0.5, cfg);
        CHECK_FALSE(r.matches_pure_w);
        CHECK(r.distance_to_pure_w > 1e-3);
        CHECK(r.tau3_upper_bound >= 0.0);
        CHECK(r.tau3_upper_bound <= 1.0);
        for (double b : r.cut_upper_bounds) {
            CHECK(b >= 0.0);
            CHECK(b <= 1.0);
        }
    }
    CHECK_THROWS_AS(mixed_three_qubit_bounds(validate_density(ComplexMatrix::identity(4) * 0.25), cfg), InvalidArgument);
}
