// Density matrices, used only where mixtures matter (the one-time pad
// secrecy argument). Dense row-major storage.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qibs/statevector.hpp"

namespace qibs {

class DensityMatrix {
public:
    explicit DensityMatrix(std::size_t dim)
        : dim_(dim), entries_(dim * dim, complex_t(0)) {
        if (dim == 0) throw std::invalid_argument("DensityMatrix: empty dimension");
    }

    std::size_t dim() const { return dim_; }

    complex_t at(std::size_t row, std::size_t col) const {
        check(row, col);
        return entries_[row * dim_ + col];
    }

    complex_t& at(std::size_t row, std::size_t col) {
        check(row, col);
        return entries_[row * dim_ + col];
    }

    complex_t trace() const {
        complex_t t = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) t += entries_[i * dim_ + i];
        return t;
    }

    bool is_hermitian(double tol = 1e-9) const {
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t c = r; c < dim_; ++c)
                if (std::abs(entries_[r * dim_ + c] - std::conj(entries_[c * dim_ + r])) > tol)
                    return false;
        return true;
    }

private:
    void check(std::size_t row, std::size_t col) const {
        if (row >= dim_ || col >= dim_) throw std::out_of_range("DensityMatrix: index out of range");
    }

    std::size_t dim_;
    std::vector<complex_t> entries_;
};

inline DensityMatrix density_of(const StateVector& state) {
    DensityMatrix rho(state.dim());
    for (std::size_t r = 0; r < state.dim(); ++r)
        for (std::size_t c = 0; c < state.dim(); ++c)
            rho.at(r, c) = state.amplitude(r) * std::conj(state.amplitude(c));
    return rho;
}

// Convex combination; weights must be nonnegative and sum to 1 within 1e-9.
inline DensityMatrix mix(const std::vector<DensityMatrix>& parts, const std::vector<double>& weights) {
    if (parts.empty()) throw std::invalid_argument("mix: no parts");
    if (parts.size() != weights.size()) throw std::invalid_argument("mix: weight count mismatch");
    const std::size_t d = parts.front().dim();
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("mix: negative weight");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("mix: weights must sum to 1");
    DensityMatrix out(d);
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (parts[k].dim() != d) throw std::invalid_argument("mix: dimension mismatch");
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c)
                out.at(r, c) += weights[k] * parts[k].at(r, c);
    }
    return out;
}

inline DensityMatrix maximally_mixed(std::size_t num_qubits) {
    const std::size_t d = std::size_t{1} << num_qubits;
    DensityMatrix rho(d);
    for (std::size_t i = 0; i < d; ++i) rho.at(i, i) = 1.0 / static_cast<double>(d);
    return rho;
}

inline double max_entry_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("max_entry_distance: dimension mismatch");
    double worst = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c)
            worst = std::max(worst, std::abs(a.at(r, c) - b.at(r, c)));
    return worst;
}

} // namespace qibs
