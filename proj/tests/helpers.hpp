// Shared test utilities.
#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "qibs/statevector.hpp"

namespace testutil {

inline oracle::cvec to_vec(const qibs::StateVector& s) {
    return oracle::cvec(s.amplitudes().begin(), s.amplitudes().end());
}

inline double max_amp_diff(const qibs::StateVector& s, const oracle::cvec& v) {
    double worst = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        worst = std::max(worst, std::abs(s.amplitude(i) - v[i]));
    return worst;
}

// fidelity between a library state and an oracle vector
inline double cross_fidelity(const qibs::StateVector& s, const oracle::cvec& v) {
    return oracle::state_fidelity(to_vec(s), v);
}

inline std::string bits_of(std::size_t value, std::size_t width) {
    std::string out(width, '0');
    for (std::size_t i = 0; i < width; ++i)
        if (value >> (width - 1 - i) & 1) out[i] = '1';
    return out;
}

} // namespace testutil
