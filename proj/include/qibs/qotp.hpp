// Quantum one-time pad. A key of 2n classical bits encrypts an n-qubit state
// qubit by qubit: bit 2i-1 selects a Z on qubit i, bit 2i selects an X, with
// Z applied first so the per-qubit operator is X^{k_{2i}} Z^{k_{2i-1}}.
// Decryption applies X first, then Z, which inverts encryption exactly.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

#include "qibs/density.hpp"
#include "qibs/rng.hpp"
#include "qibs/statevector.hpp"

namespace qibs {

class OtpKey {
public:
    explicit OtpKey(std::string bits) : bits_(std::move(bits)) {
        if (bits_.empty()) throw std::invalid_argument("OtpKey: empty key");
        for (char c : bits_)
            if (c != '0' && c != '1') throw std::invalid_argument("OtpKey: key must be 0/1 bits");
    }

    static OtpKey random(std::size_t num_qubits, Rng& rng) {
        std::string bits(2 * num_qubits, '0');
        for (char& c : bits) c = static_cast<char>('0' + rng.next_bit());
        return OtpKey(std::move(bits));
    }

    std::size_t size() const { return bits_.size(); }
    const std::string& bits() const { return bits_; }

    // 1-based access matching the k_{2i-1}/k_{2i} convention; this is the one
    // place the 1-based key indexing meets 0-based storage
    int bit(std::size_t i) const {
        if (i < 1 || i > bits_.size()) throw std::out_of_range("OtpKey: bit index out of range");
        return bits_[i - 1] - '0';
    }

    int z_bit(std::size_t qubit) const { return bit(2 * qubit - 1); }
    int x_bit(std::size_t qubit) const { return bit(2 * qubit); }

    OtpKey subkey(std::size_t first_bit, std::size_t bit_count) const {
        if (first_bit < 1 || bit_count == 0 || first_bit + bit_count - 1 > bits_.size())
            throw std::out_of_range("OtpKey: subkey range out of range");
        return OtpKey(bits_.substr(first_bit - 1, bit_count));
    }

    friend bool operator==(const OtpKey&, const OtpKey&) = default;

private:
    std::string bits_;
};

// Keys longer than 2n bits are allowed; the leading 2n bits are consumed.
inline StateVector encrypt(const StateVector& message, const OtpKey& key) {
    const std::size_t n = message.num_qubits();
    if (key.size() < 2 * n) throw std::invalid_argument("encrypt: key shorter than 2n bits");
    StateVector out = message;
    for (std::size_t q = 1; q <= n; ++q) {
        if (key.z_bit(q)) out = apply_single(out, gates::pauli_z, q);
        if (key.x_bit(q)) out = apply_single(out, gates::pauli_x, q);
    }
    return out;
}

inline StateVector decrypt(const StateVector& cipher, const OtpKey& key) {
    const std::size_t n = cipher.num_qubits();
    if (key.size() < 2 * n) throw std::invalid_argument("decrypt: key shorter than 2n bits");
    StateVector out = cipher;
    for (std::size_t q = 1; q <= n; ++q) {
        if (key.x_bit(q)) out = apply_single(out, gates::pauli_x, q);
        if (key.z_bit(q)) out = apply_single(out, gates::pauli_z, q);
    }
    return out;
}

// Key-averaged cipher state over every 2m-bit key. For any input this is the
// maximally mixed state; exhaustive enumeration bounds the register at 4 qubits.
inline DensityMatrix secrecy_oracle(const StateVector& message) {
    const std::size_t m = message.num_qubits();
    if (m > 4) throw std::invalid_argument("secrecy_oracle: enumeration bound is 4 qubits");
    const std::size_t key_count = std::size_t{1} << (2 * m);
    std::vector<DensityMatrix> parts;
    parts.reserve(key_count);
    for (std::size_t k = 0; k < key_count; ++k) {
        std::string bits(2 * m, '0');
        for (std::size_t j = 0; j < 2 * m; ++j)
            if (k >> (2 * m - 1 - j) & 1) bits[j] = '1';
        parts.push_back(density_of(encrypt(message, OtpKey(std::move(bits)))));
    }
    const std::vector<double> weights(key_count, 1.0 / static_cast<double>(key_count));
    return mix(parts, weights);
}

} // namespace qibs
