// random.hpp
// Seeded generators for random pure states, local unitaries and low-rank
// mixed states.

#pragma once

#include <cstdint>
#include <numbers>
#include <random>

#include "tritangle/qcore.hpp"

namespace tritangle {

using Rng = std::mt19937_64;

// Gaussian amplitudes, normalized: Haar-distributed pure state.
inline PureState random_pure_state(int num_qubits, Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cplx> a(std::size_t{1} << num_qubits);
    for (auto& z : a) z = {g(rng), g(rng)};
    return PureState::normalized(std::move(a));
}

inline ComplexMatrix random_single_qubit_unitary(Rng& rng) {
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    const double t = ang(rng) / 4.0, a = ang(rng), b = ang(rng), c = ang(rng);
    const cplx g = std::polar(1.0, a);
    return ComplexMatrix::from_rows({{g * std::polar(std::cos(t), b), g * std::polar(std::sin(t), c)},
                                     {-g * std::polar(std::sin(t), -c), g * std::polar(std::cos(t), -b)}});
}

// Mixture of `rank` random pure states with random weights.
inline DensityMatrix random_mixed_state(int num_qubits, int rank, Rng& rng) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> w(static_cast<std::size_t>(rank));
    std::vector<PureState> states;
    double total = 0.0;
    for (auto& x : w) total += (x = u(rng));
    for (auto& x : w) x /= total;
    for (int k = 0; k < rank; ++k) states.push_back(random_pure_state(num_qubits, rng));
    return DensityMatrix::mixture(w, states);
}

}  // namespace tritangle
