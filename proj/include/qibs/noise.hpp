// Trajectory noise on transmitted qubits. Each channel use draws once: with
// probability p an error Pauli is applied, otherwise the qubit passes clean.
// Depolarizing picks X, Y or Z uniformly; the dedicated flip kinds are fixed.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "qibs/rng.hpp"
#include "qibs/statevector.hpp"

namespace qibs {

enum class NoiseKind { depolarizing, bit_flip, phase_flip };

inline const char* noise_kind_name(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::depolarizing: return "depolarizing";
        case NoiseKind::bit_flip: return "bit-flip";
        case NoiseKind::phase_flip: return "phase-flip";
    }
    throw std::invalid_argument("noise_kind_name: unknown kind");
}

struct NoiseModel {
    NoiseKind kind = NoiseKind::depolarizing;
    double p = 0.0;
};

inline StateVector apply_noise(const StateVector& state, std::size_t qubit,
                               const NoiseModel& model, Rng& rng) {
    if (model.p < 0.0 || model.p > 1.0) throw std::invalid_argument("apply_noise: p out of [0,1]");
    if (model.p == 0.0) return state;
    if (rng.next_double() >= model.p) return state;
    switch (model.kind) {
        case NoiseKind::bit_flip:
            return apply_single(state, gates::pauli_x, qubit);
        case NoiseKind::phase_flip:
            return apply_single(state, gates::pauli_z, qubit);
        case NoiseKind::depolarizing: {
            const std::size_t pick = rng.next_index(3);
            const Gate& g = pick == 0 ? gates::pauli_x : pick == 1 ? gates::pauli_y : gates::pauli_z;
            return apply_single(state, g, qubit);
        }
    }
    throw std::invalid_argument("apply_noise: unknown kind");
}

// One channel use per qubit of the register.
inline StateVector apply_noise_all(const StateVector& state, const NoiseModel& model, Rng& rng) {
    StateVector out = state;
    for (std::size_t q = 1; q <= state.num_qubits(); ++q) out = apply_noise(out, q, model, rng);
    return out;
}

} // namespace qibs
