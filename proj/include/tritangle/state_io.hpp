// state_io.hpp
// JSON state files:
//   pure:    { "num_qubits": n, "amplitudes": [[re, im], ...] }
//   density: { "num_qubits": n, "matrix": [[[re, im], ...], ...] }   (row-major)

#pragma once

#include <fstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "tritangle/qcore.hpp"

namespace tritangle {

class StateFileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using StateVariant = std::variant<PureState, DensityMatrix>;

namespace detail {

inline cplx complex_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw StateFileError("expected a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline nlohmann::json complex_to_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

}  // namespace detail

inline StateVariant state_from_json(const nlohmann::json& j, const Tolerances& tol = kDefaultTolerances) {
    if (!j.is_object() || !j.contains("num_qubits") || !j["num_qubits"].is_number_integer())
        throw StateFileError("state file needs an integer \"num_qubits\"");
    const int n = j["num_qubits"].get<int>();
    if (n < 1 || n > kMaxQubits) throw StateFileError("num_qubits must be between 1 and 4");
    const std::size_t dim = std::size_t{1} << n;

    try {
        if (j.contains("amplitudes")) {
            const auto& a = j["amplitudes"];
            if (!a.is_array() || a.size() != dim) throw StateFileError("amplitudes must have 2^n entries");
            std::vector<cplx> amps;
            amps.reserve(dim);
            for (const auto& z : a) amps.push_back(detail::complex_from_json(z));
            return PureState(std::move(amps), tol);
        }
        if (j.contains("matrix")) {
            const auto& rows = j["matrix"];
            if (!rows.is_array() || rows.size() != dim) throw StateFileError("matrix must have 2^n rows");
            std::vector<cplx> e;
            e.reserve(dim * dim);
            for (const auto& row : rows) {
                if (!row.is_array() || row.size() != dim) throw StateFileError("matrix rows must have 2^n entries");
                for (const auto& z : row) e.push_back(detail::complex_from_json(z));
            }
            return validate_density(ComplexMatrix(dim, dim, std::move(e)), tol);
        }
    } catch (const InvalidArgument& e) {
        throw StateFileError(e.what());
    } catch (const ValidationError& e) {
        throw StateFileError(e.what());
    }
    throw StateFileError("state file needs \"amplitudes\" or \"matrix\"");
}

inline StateVariant load_state_file(const std::string& path, const Tolerances& tol = kDefaultTolerances) {
    std::ifstream in(path);
    if (!in) throw StateFileError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw StateFileError(std::string("malformed JSON: ") + e.what());
    }
    return state_from_json(j, tol);
}

inline nlohmann::json to_json(const PureState& psi) {
    nlohmann::json amps = nlohmann::json::array();
    for (const auto& z : psi.amplitudes()) amps.push_back(detail::complex_to_json(z));
    return {{"num_qubits", psi.num_qubits()}, {"amplitudes", amps}};
}

inline nlohmann::json to_json(const DensityMatrix& rho) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < rho.dimension(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t k = 0; k < rho.dimension(); ++k) row.push_back(detail::complex_to_json(rho(i, k)));
        rows.push_back(row);
    }
    return {{"num_qubits", rho.num_qubits()}, {"matrix", rows}};
}

}  // namespace tritangle
