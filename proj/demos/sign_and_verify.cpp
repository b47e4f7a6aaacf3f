// Minimal end-to-end usage: set up parties, sign a random product-state
// message, run verification, and print the outcome with the resource counts.

#include <iostream>

#include "qibs/qibs.hpp"

int main() {
    qibs::ProtocolConfig config;
    config.message_qubits = 3;
    config.signer_id = "011";
    config.seed = 42;

    const qibs::Transcript transcript = qibs::run_protocol(config);

    for (const qibs::TranscriptEntry& entry : transcript.messages)
        std::cout << entry.sender << " -> " << entry.receiver << ": " << entry.kind
                  << " (" << entry.qubits << " qubits)\n";
    std::cout << "outcome: "
              << (transcript.outcome == qibs::Outcome::accept ? "accept" : "reject")
              << ", fidelity " << transcript.final_fidelity << "\n";
    std::cout << "qubits " << transcript.ledger.total_qubits() << ", measurement units "
              << transcript.ledger.measurements() << "\n";
    return transcript.outcome == qibs::Outcome::accept ? 0 : 1;
}
