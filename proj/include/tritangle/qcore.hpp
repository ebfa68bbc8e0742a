// qcore.hpp
// Dense complex linear algebra for small qubit systems (dimension <= 16):
// matrices, pure states, density matrices, Kronecker products, partial
// traces and a cyclic Jacobi eigensolver for Hermitian matrices.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tritangle {

using cplx = std::complex<double>;

inline constexpr int kMaxQubits = 4;
inline constexpr std::size_t kMaxDimension = std::size_t{1} << kMaxQubits;

// Numerical tolerances shared by every module. Callers override a field by
// copying kDefaultTolerances and passing the copy explicitly.
struct Tolerances {
    double normalization = 1e-12;     // |<psi|psi> - 1|
    double hermiticity = 1e-12;       // max |rho - rho^dagger|
    double trace = 1e-12;             // |tr rho - 1|
    double psd = 1e-10;               // min eigenvalue >= -psd
    double eigen_hermiticity = 1e-10; // input check of the eigensolver
    double not_psd = 1e-8;            // sqrt_psd refuses below -not_psd
    double jacobi_off_norm = 1e-14;
    int jacobi_max_sweeps = 100;
    double measure_clamp = 1e-12;
    double rank = 1e-10;              // eigenvalues above count toward rank
    double orthonormality = 1e-10;
    double drop_weight = 1e-12;
};

inline constexpr Tolerances kDefaultTolerances{};

class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotPsdError : public std::runtime_error {
public:
    explicit NotPsdError(double min_eigenvalue)
        : std::runtime_error("matrix is not positive semidefinite (min eigenvalue " +
                             std::to_string(min_eigenvalue) + ")"),
          min_eigenvalue_(min_eigenvalue) {}
    double min_eigenvalue() const noexcept { return min_eigenvalue_; }

private:
    double min_eigenvalue_;
};

// Returns n if dim == 2^n with 1 <= n <= kMaxQubits, otherwise -1.
inline int qubits_for_dimension(std::size_t dim) noexcept {
    for (int n = 1; n <= kMaxQubits; ++n)
        if (dim == (std::size_t{1} << n)) return n;
    return -1;
}

// ---------------------------------------------------------------------------
// ComplexMatrix

class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, cplx{0.0, 0.0}) {}

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_)
            throw InvalidArgument("ComplexMatrix: entry count does not match rows x cols");
        for (const auto& z : entries_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw InvalidArgument("ComplexMatrix: non-finite entry");
    }

    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r == 0 ? 0 : rows.begin()->size();
        std::vector<cplx> e;
        e.reserve(r * c);
        for (const auto& row : rows) {
            if (row.size() != c) throw InvalidArgument("ComplexMatrix::from_rows: ragged rows");
            e.insert(e.end(), row.begin(), row.end());
        }
        return ComplexMatrix(r, c, std::move(e));
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(std::span<const double> d) {
        ComplexMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    // |a><b|
    static ComplexMatrix outer(std::span<const cplx> a, std::span<const cplx> b) {
        ComplexMatrix m(a.size(), b.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * std::conj(b[j]);
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    std::span<const cplx> entries() const noexcept { return entries_; }

    cplx& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    ComplexMatrix adjoint() const {
        ComplexMatrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    ComplexMatrix conjugate() const {
        ComplexMatrix m = *this;
        for (auto& z : m.entries_) z = std::conj(z);
        return m;
    }

    cplx trace() const {
        cplx t{0.0, 0.0};
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
        return *this;
    }
    ComplexMatrix& operator*=(cplx s) {
        for (auto& z : entries_) z *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.cols_ != b.rows_) throw InvalidArgument("ComplexMatrix: inner dimensions differ");
        ComplexMatrix m(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{}) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
            }
        return m;
    }

    std::vector<cplx> apply(std::span<const cplx> v) const {
        if (v.size() != cols_) throw InvalidArgument("ComplexMatrix::apply: dimension mismatch");
        std::vector<cplx> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    void require_same_shape(const ComplexMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw InvalidArgument("ComplexMatrix: shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> entries_;
};

// Largest entrywise |a - b|.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InvalidArgument("max_abs_diff: shape mismatch");
    double worst = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k)
        worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
    return worst;
}

inline double hermiticity_error(const ComplexMatrix& m) {
    if (!m.is_square()) throw InvalidArgument("hermiticity_error: matrix is not square");
    double worst = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    return worst;
}

inline ComplexMatrix hermitian_part(const ComplexMatrix& m) {
    ComplexMatrix h = m + m.adjoint();
    h *= 0.5;
    return h;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    m(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return m;
}

namespace pauli {
inline ComplexMatrix x() { return ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}); }
inline ComplexMatrix y() {
    return ComplexMatrix::from_rows({{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}});
}
inline ComplexMatrix z() { return ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}); }
}  // namespace pauli

// ---------------------------------------------------------------------------
// Hermitian eigensolver (cyclic complex Jacobi)

struct HermitianEigen {
    std::vector<double> values;  // descending
    ComplexMatrix vectors;       // column k belongs to values[k]
};

inline HermitianEigen hermitian_eigen(const ComplexMatrix& h,
                                      const Tolerances& tol = kDefaultTolerances) {
    if (!h.is_square()) throw InvalidArgument("hermitian_eigen: matrix is not square");
    if (h.rows() > kMaxDimension) throw InvalidArgument("hermitian_eigen: dimension exceeds 16");
    const double herm = hermiticity_error(h);
    if (herm > tol.eigen_hermiticity)
        throw InvalidArgument("hermitian_eigen: matrix is not Hermitian (deviation " +
                              std::to_string(herm) + ")");

    const std::size_t n = h.rows();
    ComplexMatrix a = hermitian_part(h);
    ComplexMatrix v = ComplexMatrix::identity(n);

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < tol.jacobi_max_sweeps; ++sweep) {
        if (off_norm() < tol.jacobi_off_norm) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double r = std::abs(apq);
                if (r == 0.0) continue;
                // Phase e^{-i arg} on column q makes the (p,q) entry real,
                // then a real Jacobi rotation annihilates it.
                const cplx phase = std::conj(apq) / r;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * r);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                const cplx upp = c, upq = s, uqp = -s * phase, uqq = c * phase;
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * upp + akq * uqp;
                    a(k, q) = akp * upq + akq * uqq;
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * upp + vkq * uqp;
                    v(k, q) = vkp * upq + vkq * uqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
                    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h,
                                                 const Tolerances& tol = kDefaultTolerances) {
    return hermitian_eigen(h, tol).values;
}

// V diag(f(lambda)) V^dagger
template <class F>
ComplexMatrix spectral_map(const HermitianEigen& eig, F&& f) {
    const std::size_t n = eig.values.size();
    ComplexMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double fk = f(eig.values[k]);
        if (fk == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const cplx vik = eig.vectors(i, k) * fk;
            for (std::size_t j = 0; j < n; ++j) m(i, j) += vik * std::conj(eig.vectors(j, k));
        }
    }
    return m;
}

inline ComplexMatrix sqrt_psd(const ComplexMatrix& h, const Tolerances& tol = kDefaultTolerances) {
    const HermitianEigen eig = hermitian_eigen(h, tol);
    const double min_ev = eig.values.empty() ? 0.0 : eig.values.back();
    if (min_ev < -tol.not_psd) throw NotPsdError(min_ev);
    return spectral_map(eig, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

// ---------------------------------------------------------------------------
// PureState

class PureState {
public:
    explicit PureState(std::vector<cplx> amplitudes, const Tolerances& tol = kDefaultTolerances)
        : amplitudes_(std::move(amplitudes)) {
        num_qubits_ = qubits_for_dimension(amplitudes_.size());
        if (num_qubits_ < 0)
            throw InvalidArgument("PureState: amplitude count must be 2^n with 1 <= n <= 4");
        double norm = 0.0;
        for (const auto& z : amplitudes_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw InvalidArgument("PureState: non-finite amplitude");
            norm += std::norm(z);
        }
        if (std::abs(norm - 1.0) > tol.normalization) {
            std::ostringstream msg;
            msg << "PureState: not normalized (norm^2 = " << norm << ")";
            throw InvalidArgument(msg.str());
        }
    }

    static PureState normalized(std::vector<cplx> amplitudes) {
        double norm = 0.0;
        for (const auto& z : amplitudes) norm += std::norm(z);
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw InvalidArgument("PureState::normalized: zero or non-finite vector");
        const double inv = 1.0 / std::sqrt(norm);
        for (auto& z : amplitudes) z *= inv;
        return PureState(std::move(amplitudes));
    }

    static PureState basis(int num_qubits, std::size_t index) {
        if (num_qubits < 1 || num_qubits > kMaxQubits)
            throw InvalidArgument("PureState::basis: qubit count out of range");
        std::vector<cplx> a(std::size_t{1} << num_qubits);
        if (index >= a.size()) throw InvalidArgument("PureState::basis: index out of range");
        a[index] = 1.0;
        return PureState(std::move(a));
    }

    int num_qubits() const noexcept { return num_qubits_; }
    std::size_t dimension() const noexcept { return amplitudes_.size(); }
    std::span<const cplx> amplitudes() const noexcept { return amplitudes_; }
    cplx operator[](std::size_t i) const { return amplitudes_[i]; }

    ComplexMatrix projector() const { return ComplexMatrix::outer(amplitudes_, amplitudes_); }

    // <this|other>
    cplx inner(const PureState& other) const {
        if (other.dimension() != dimension()) throw InvalidArgument("PureState::inner: dimension mismatch");
        cplx s{};
        for (std::size_t i = 0; i < dimension(); ++i) s += std::conj(amplitudes_[i]) * other.amplitudes_[i];
        return s;
    }

private:
    int num_qubits_ = 0;
    std::vector<cplx> amplitudes_;
};

// ---------------------------------------------------------------------------
// DensityMatrix and validation

struct DensityViolation {
    std::string invariant;  // "shape", "hermiticity", "trace", "psd"
    double magnitude;
};

struct DensityReport {
    std::size_t dimension = 0;
    double hermiticity_error = 0.0;
    double trace_error = 0.0;
    double min_eigenvalue = 0.0;
    std::vector<DensityViolation> violations;

    bool ok() const noexcept { return violations.empty(); }
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(DensityReport report)
        : std::runtime_error(describe(report)), report_(std::move(report)) {}
    const DensityReport& report() const noexcept { return report_; }

private:
    static std::string describe(const DensityReport& r) {
        std::ostringstream msg;
        msg << "invalid density matrix:";
        for (const auto& v : r.violations) msg << ' ' << v.invariant << " (" << v.magnitude << ")";
        return msg.str();
    }
    DensityReport report_;
};

inline DensityReport check_density(const ComplexMatrix& m, const Tolerances& tol = kDefaultTolerances) {
    DensityReport r;
    r.dimension = m.rows();
    if (!m.is_square() || qubits_for_dimension(m.rows()) < 0) {
        r.violations.push_back({"shape", static_cast<double>(m.rows() * m.cols())});
        return r;
    }
    r.hermiticity_error = hermiticity_error(m);
    const cplx tr = m.trace();
    r.trace_error = std::abs(tr - 1.0);
    if (r.hermiticity_error > tol.hermiticity) r.violations.push_back({"hermiticity", r.hermiticity_error});
    if (r.trace_error > tol.trace) r.violations.push_back({"trace", tr.real()});
    // Eigenvalues of the Hermitian part are meaningful even when the
    // Hermiticity check fails, as long as the eigensolver accepts it.
    if (r.hermiticity_error <= tol.eigen_hermiticity) {
        const auto ev = hermitian_eigenvalues(m, tol);
        r.min_eigenvalue = ev.back();
        if (r.min_eigenvalue < -tol.psd) r.violations.push_back({"psd", r.min_eigenvalue});
    }
    return r;
}

class DensityMatrix;
DensityMatrix validate_density(const ComplexMatrix& m, const Tolerances& tol);

class DensityMatrix {
public:
    int num_qubits() const noexcept { return num_qubits_; }
    std::size_t dimension() const noexcept { return matrix_.rows(); }
    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    cplx operator()(std::size_t r, std::size_t c) const { return matrix_(r, c); }

    static DensityMatrix from_pure(const PureState& psi) {
        return DensityMatrix(psi.projector(), psi.num_qubits());
    }

    // sum_j w_j |psi_j><psi_j|; weights must be non-negative and sum to 1.
    static DensityMatrix mixture(std::span<const double> weights, std::span<const PureState> states,
                                 const Tolerances& tol = kDefaultTolerances) {
        if (weights.size() != states.size() || states.empty())
            throw InvalidArgument("DensityMatrix::mixture: weights and states differ in length");
        ComplexMatrix m(states[0].dimension(), states[0].dimension());
        for (std::size_t j = 0; j < states.size(); ++j) {
            if (weights[j] < 0.0) throw InvalidArgument("DensityMatrix::mixture: negative weight");
            m += states[j].projector() * weights[j];
        }
        return validate_density(m, tol);
    }

    // For results of operations that preserve the density invariants
    // exactly (partial trace, unitary conjugation, convex mixing).
    struct Trusted {};
    DensityMatrix(ComplexMatrix m, Trusted) : matrix_(hermitian_part(m)) {
        num_qubits_ = qubits_for_dimension(matrix_.rows());
        if (!matrix_.is_square() || num_qubits_ < 0)
            throw InvalidArgument("DensityMatrix: dimension must be 2^n with 1 <= n <= 4");
    }

private:
    DensityMatrix(ComplexMatrix m, int n) : num_qubits_(n), matrix_(std::move(m)) {}
    friend DensityMatrix validate_density(const ComplexMatrix& m, const Tolerances& tol);

    int num_qubits_ = 0;
    ComplexMatrix matrix_;
};

inline DensityMatrix validate_density(const ComplexMatrix& m, const Tolerances& tol = kDefaultTolerances) {
    DensityReport r = check_density(m, tol);
    if (!r.ok()) throw ValidationError(std::move(r));
    return DensityMatrix(m, qubits_for_dimension(m.rows()));
}

inline ComplexMatrix sqrt_psd(const DensityMatrix& rho, const Tolerances& tol = kDefaultTolerances) {
    return sqrt_psd(rho.matrix(), tol);
}

// ---------------------------------------------------------------------------
// Partial trace. Qubits are numbered from 1; qubit 1 is the most significant
// bit of the basis index.

inline ComplexMatrix partial_trace(const ComplexMatrix& m, int num_qubits, std::span<const int> traced) {
    if (!m.is_square() || m.rows() != (std::size_t{1} << num_qubits))
        throw InvalidArgument("partial_trace: matrix does not match qubit count");
    std::vector<bool> is_traced(num_qubits, false);
    for (int q : traced) {
        if (q < 1 || q > num_qubits) throw InvalidArgument("partial_trace: qubit index out of range");
        is_traced[q - 1] = true;
    }
    const auto n_traced = static_cast<int>(std::count(is_traced.begin(), is_traced.end(), true));
    if (n_traced == 0) throw InvalidArgument("partial_trace: traced set is empty");
    if (n_traced == num_qubits) throw InvalidArgument("partial_trace: cannot trace out every qubit");

    std::vector<int> kept_bits, traced_bits;  // bit positions, most significant first
    for (int q = 0; q < num_qubits; ++q)
        (is_traced[q] ? traced_bits : kept_bits).push_back(num_qubits - 1 - q);

    auto compose = [](std::size_t value, const std::vector<int>& bits) {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < bits.size(); ++k)
            if ((value >> (bits.size() - 1 - k)) & 1U) idx |= std::size_t{1} << bits[k];
        return idx;
    };

    const std::size_t dk = std::size_t{1} << kept_bits.size();
    const std::size_t dt = std::size_t{1} << traced_bits.size();
    ComplexMatrix out(dk, dk);
    for (std::size_t i = 0; i < dk; ++i)
        for (std::size_t j = 0; j < dk; ++j) {
            cplx s{};
            const std::size_t ri = compose(i, kept_bits), rj = compose(j, kept_bits);
            for (std::size_t t = 0; t < dt; ++t) {
                const std::size_t e = compose(t, traced_bits);
                s += m(ri | e, rj | e);
            }
            out(i, j) = s;
        }
    return out;
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> traced) {
    return DensityMatrix(partial_trace(rho.matrix(), rho.num_qubits(), traced), DensityMatrix::Trusted{});
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> traced) {
    return partial_trace(rho, std::span<const int>(traced.begin(), traced.size()));
}

}  // namespace tritangle
