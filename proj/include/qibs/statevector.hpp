// Dense statevector core. A register of m qubits is a vector of 2^m complex
// amplitudes indexed so that qubit 1 is the leftmost (most significant) bit
// of the basis label: |q1 q2 ... qm>. All state comparisons go through
// fidelity, which is insensitive to global phase.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qibs/rng.hpp"

namespace qibs {

using complex_t = std::complex<double>;

inline constexpr double norm_tolerance = 1e-9;
inline constexpr double unitary_tolerance = 1e-10;

// 2x2 single-qubit gate, row-major.
struct Gate {
    std::array<complex_t, 4> m{};

    complex_t operator()(int row, int col) const { return m[2 * row + col]; }

    Gate dagger() const {
        return Gate{{std::conj(m[0]), std::conj(m[2]),
                     std::conj(m[1]), std::conj(m[3])}};
    }

    bool is_unitary(double tol = unitary_tolerance) const {
        const Gate d = dagger();
        // d * this entrywise against the identity
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                complex_t sum = 0.0;
                for (int k = 0; k < 2; ++k) sum += d(r, k) * (*this)(k, c);
                const complex_t want = (r == c) ? 1.0 : 0.0;
                if (std::abs(sum - want) > tol) return false;
            }
        }
        return true;
    }
};

inline Gate operator*(const Gate& a, const Gate& b) {
    Gate out;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            out.m[2 * r + c] = a(r, 0) * b(0, c) + a(r, 1) * b(1, c);
    return out;
}

// U(theta, phi, lambda) =
//   [ cos(theta/2)               -e^{i lambda} sin(theta/2)      ]
//   [ e^{i phi} sin(theta/2)      e^{i(phi+lambda)} cos(theta/2) ]
inline Gate u_gate(double theta, double phi, double lambda) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return Gate{{complex_t(c, 0.0),
                 -std::exp(complex_t(0.0, lambda)) * s,
                 std::exp(complex_t(0.0, phi)) * s,
                 std::exp(complex_t(0.0, phi + lambda)) * c}};
}

namespace gates {

inline const Gate identity{{complex_t(1), complex_t(0), complex_t(0), complex_t(1)}};
inline const Gate pauli_x{{complex_t(0), complex_t(1), complex_t(1), complex_t(0)}};
inline const Gate pauli_y{{complex_t(0), complex_t(0, -1), complex_t(0, 1), complex_t(0)}};
inline const Gate pauli_z{{complex_t(1), complex_t(0), complex_t(0), complex_t(-1)}};
inline const Gate hadamard{{complex_t(std::numbers::sqrt2 / 2), complex_t(std::numbers::sqrt2 / 2),
                            complex_t(std::numbers::sqrt2 / 2), complex_t(-std::numbers::sqrt2 / 2)}};

inline const Gate& from_label(char label) {
    switch (label) {
        case 'I': return identity;
        case 'X': return pauli_x;
        case 'Y': return pauli_y;
        case 'Z': return pauli_z;
        default: throw std::invalid_argument("from_label: expected one of I, X, Y, Z");
    }
}

} // namespace gates

class StateVector {
public:
    StateVector(std::size_t num_qubits, std::vector<complex_t> amplitudes)
        : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
        if (num_qubits_ == 0) throw std::invalid_argument("StateVector: need at least one qubit");
        if (num_qubits_ > 24) throw std::invalid_argument("StateVector: register too large");
        if (amps_.size() != (std::size_t{1} << num_qubits_))
            throw std::invalid_argument("StateVector: amplitude count must be 2^m");
        double n2 = 0.0;
        for (const complex_t& a : amps_) {
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
                throw std::invalid_argument("StateVector: non-finite amplitude");
            n2 += std::norm(a);
        }
        if (std::abs(std::sqrt(n2) - 1.0) > norm_tolerance)
            throw std::invalid_argument("StateVector: not normalized");
    }

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<complex_t>& amplitudes() const { return amps_; }
    complex_t amplitude(std::size_t index) const { return amps_.at(index); }

private:
    std::size_t num_qubits_;
    std::vector<complex_t> amps_;
};

// basis label for index, qubit 1 leftmost
inline std::string basis_label(std::size_t index, std::size_t num_qubits) {
    std::string label(num_qubits, '0');
    for (std::size_t q = 0; q < num_qubits; ++q)
        if (index >> (num_qubits - 1 - q) & 1) label[q] = '1';
    return label;
}

inline StateVector basis_state(std::string_view bits) {
    if (bits.empty()) throw std::invalid_argument("basis_state: empty label");
    std::size_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw std::invalid_argument("basis_state: label must be 0/1 bits");
        index = (index << 1) | static_cast<std::size_t>(c - '0');
    }
    std::vector<complex_t> amps(std::size_t{1} << bits.size(), complex_t(0));
    amps[index] = 1.0;
    return StateVector(bits.size(), std::move(amps));
}

// Applies a single-qubit gate at a 1-based position. Qubit q corresponds to
// bit (m - q) of the amplitude index, so indices pair as i and i | (1 << bit).
inline StateVector apply_single(const StateVector& state, const Gate& gate, std::size_t qubit) {
    const std::size_t m = state.num_qubits();
    if (qubit < 1 || qubit > m) throw std::out_of_range("apply_single: qubit index out of range");
    const std::size_t mask = std::size_t{1} << (m - qubit);
    std::vector<complex_t> amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & mask) continue;
        const complex_t a0 = amps[i];
        const complex_t a1 = amps[i | mask];
        amps[i] = gate(0, 0) * a0 + gate(0, 1) * a1;
        amps[i | mask] = gate(1, 0) * a0 + gate(1, 1) * a1;
    }
    return StateVector(m, std::move(amps));
}

inline StateVector apply_gate_all(const StateVector& state, const Gate& gate) {
    StateVector out = state;
    for (std::size_t q = 1; q <= state.num_qubits(); ++q) out = apply_single(out, gate, q);
    return out;
}

// a's qubits become the leading (leftmost) qubits of the product
inline StateVector tensor(const StateVector& a, const StateVector& b) {
    std::vector<complex_t> amps;
    amps.reserve(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j)
            amps.push_back(a.amplitude(i) * b.amplitude(j));
    return StateVector(a.num_qubits() + b.num_qubits(), std::move(amps));
}

// |<a|b>|^2
inline double fidelity(const StateVector& a, const StateVector& b) {
    if (a.num_qubits() != b.num_qubits())
        throw std::invalid_argument("fidelity: dimension mismatch");
    complex_t inner = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        inner += std::conj(a.amplitude(i)) * b.amplitude(i);
    return std::norm(inner);
}

// Born-rule sample of the full register; returns the basis label.
inline std::string measure_all(const StateVector& state, Rng& rng) {
    const double u = rng.next_double();
    double cumulative = 0.0;
    std::size_t outcome = state.dim() - 1;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        cumulative += std::norm(state.amplitude(i));
        if (u < cumulative) {
            outcome = i;
            break;
        }
    }
    return basis_label(outcome, state.num_qubits());
}

// Product of single-qubit states (cos a)|0> + e^{ig}(sin a)|1>, with the polar
// angle a drawn uniformly from [margin, pi/2 - margin] and g from [0, 2pi).
// A positive margin keeps every qubit away from the computational basis poles.
inline StateVector random_product_state(std::size_t num_qubits, Rng& rng, double polar_margin = 0.0) {
    if (num_qubits == 0) throw std::invalid_argument("random_product_state: need at least one qubit");
    if (polar_margin < 0.0 || polar_margin >= std::numbers::pi / 4)
        throw std::invalid_argument("random_product_state: margin out of range");
    const double lo = polar_margin;
    const double span = std::numbers::pi / 2 - 2.0 * polar_margin;
    StateVector out = basis_state("0");
    bool first = true;
    for (std::size_t q = 0; q < num_qubits; ++q) {
        const double a = lo + rng.next_double() * span;
        const double g = rng.next_double() * 2.0 * std::numbers::pi;
        StateVector qubit(1, {complex_t(std::cos(a), 0.0),
                              std::exp(complex_t(0.0, g)) * std::sin(a)});
        out = first ? qubit : tensor(out, qubit);
        first = false;
    }
    return out;
}

// Largest entrywise deviation from `expected` after aligning global phase at
// the index where `expected` is largest. Used for golden-value comparisons.
inline double phase_aligned_max_diff(const StateVector& actual, const std::vector<complex_t>& expected) {
    if (actual.dim() != expected.size())
        throw std::invalid_argument("phase_aligned_max_diff: dimension mismatch");
    std::size_t anchor = 0;
    for (std::size_t i = 1; i < expected.size(); ++i)
        if (std::abs(expected[i]) > std::abs(expected[anchor])) anchor = i;
    complex_t phase(1.0, 0.0);
    if (std::abs(actual.amplitude(anchor)) > 0.0 && std::abs(expected[anchor]) > 0.0) {
        const complex_t ratio = expected[anchor] / actual.amplitude(anchor);
        phase = ratio / std::abs(ratio);
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i)
        worst = std::max(worst, std::abs(phase * actual.amplitude(i) - expected[i]));
    return worst;
}

} // namespace qibs
