// Resource accounting for protocol runs.
//
// Qubit transmissions by leg, for message size m and phase precision n:
//   key establishment (initializing)        4m   two 2m-bit pad keys
//   phase authentication (initializing)     2n
//   signer -> verifier signature tuple      3m
//   verifier -> SKG verify request          2m
//   SKG -> verifier response                 m
//   total                                   10m + 2n
//
// Measurement-unit events (one per key bit consulted in a pad pass, one per
// single-qubit gate application):
//   initializing: key establishment 4m, phase authentication 3n
//   signing: rotation pass m, pad encryption 2m
//   request: pad encryption of signature 2m and of identity 2m
//   SKG: pad decryption of both blocks 4m, identity readout m,
//        signer-pad decryption 2m, inverse rotation pass m,
//        response encryption 2m
//   finalize: response decryption 2m
//   total: (4m + 3n) + 19m = 23m + 3n
//
// Conversion-unit events, meaningful on classical-message runs only:
//   two message copies 2m, identity encoding m, phase bits n  ->  3m + n
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qibs {

enum class QubitLeg {
    key_establishment,
    phase_authentication,
    signature_delivery,
    verify_request,
    verify_response,
};

inline constexpr std::size_t qubit_leg_count = 5;

inline const char* leg_name(QubitLeg leg) {
    switch (leg) {
        case QubitLeg::key_establishment: return "key_establishment";
        case QubitLeg::phase_authentication: return "phase_authentication";
        case QubitLeg::signature_delivery: return "signature_delivery";
        case QubitLeg::verify_request: return "verify_request";
        case QubitLeg::verify_response: return "verify_response";
    }
    throw std::invalid_argument("leg_name: unknown leg");
}

class CostLedger {
public:
    void record_qubits(QubitLeg leg, std::int64_t count) {
        qubits_[static_cast<std::size_t>(leg)] += static_cast<std::uint64_t>(check(count));
    }

    void record_measurements(std::int64_t count) {
        measurements_ += static_cast<std::uint64_t>(check(count));
    }

    void record_conversions(std::int64_t count) {
        conversions_ += static_cast<std::uint64_t>(check(count));
    }

    void set_conversions_applicable(bool applicable) { conversions_applicable_ = applicable; }

    std::uint64_t qubits(QubitLeg leg) const { return qubits_[static_cast<std::size_t>(leg)]; }

    std::uint64_t initializing_qubits() const {
        return qubits(QubitLeg::key_establishment) + qubits(QubitLeg::phase_authentication);
    }

    std::uint64_t total_qubits() const {
        std::uint64_t total = 0;
        for (std::uint64_t q : qubits_) total += q;
        return total;
    }

    std::uint64_t measurements() const { return measurements_; }
    std::uint64_t conversions() const { return conversions_; }
    bool conversions_applicable() const { return conversions_applicable_; }

    CostLedger& merge(const CostLedger& other) {
        for (std::size_t i = 0; i < qubit_leg_count; ++i) qubits_[i] += other.qubits_[i];
        measurements_ += other.measurements_;
        conversions_ += other.conversions_;
        conversions_applicable_ = conversions_applicable_ && other.conversions_applicable_;
        return *this;
    }

private:
    static std::int64_t check(std::int64_t count) {
        if (count < 0) throw std::invalid_argument("CostLedger: negative count");
        return count;
    }

    std::array<std::uint64_t, qubit_leg_count> qubits_{};
    std::uint64_t measurements_ = 0;
    std::uint64_t conversions_ = 0;
    bool conversions_applicable_ = true;
};

struct FormulaCheck {
    std::string name;
    std::uint64_t expected = 0;
    std::uint64_t actual = 0;
    bool pass = false;
};

struct FormulaReport {
    std::vector<FormulaCheck> checks;

    bool all_pass() const {
        for (const FormulaCheck& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Reconciles a ledger for one honest run against the closed forms above.
// The conversion check is emitted only when the ledger marks it applicable.
inline FormulaReport check_formulas(const CostLedger& ledger, std::size_t m, std::size_t n) {
    const std::uint64_t um = m;
    const std::uint64_t un = n;
    FormulaReport report;
    auto add = [&](std::string name, std::uint64_t expected, std::uint64_t actual) {
        report.checks.push_back({std::move(name), expected, actual, expected == actual});
    };
    add("qubits_key_establishment", 4 * um, ledger.qubits(QubitLeg::key_establishment));
    add("qubits_phase_authentication", 2 * un, ledger.qubits(QubitLeg::phase_authentication));
    add("qubits_signature_delivery", 3 * um, ledger.qubits(QubitLeg::signature_delivery));
    add("qubits_verify_request", 2 * um, ledger.qubits(QubitLeg::verify_request));
    add("qubits_verify_response", um, ledger.qubits(QubitLeg::verify_response));
    add("qubits_initializing", 4 * um + 2 * un, ledger.initializing_qubits());
    add("qubits_total", 10 * um + 2 * un, ledger.total_qubits());
    add("measurements_total", 23 * um + 3 * un, ledger.measurements());
    if (ledger.conversions_applicable())
        add("conversions_total", 3 * um + un, ledger.conversions());
    return report;
}

} // namespace qibs
