// JSON views of run artifacts. ordered_json keeps key order fixed so equal
// runs serialize to identical bytes.
#pragma once

#include <string>

#include <json.hpp>

#include "qibs/adversary.hpp"
#include "qibs/costs.hpp"
#include "qibs/experiment.hpp"
#include "qibs/protocol.hpp"
#include "qibs/toy.hpp"

namespace qibs {

using ordered_json = nlohmann::ordered_json;

inline ordered_json ledger_json(const CostLedger& ledger) {
    ordered_json legs;
    legs["key_establishment"] = ledger.qubits(QubitLeg::key_establishment);
    legs["phase_authentication"] = ledger.qubits(QubitLeg::phase_authentication);
    legs["signature_delivery"] = ledger.qubits(QubitLeg::signature_delivery);
    legs["verify_request"] = ledger.qubits(QubitLeg::verify_request);
    legs["verify_response"] = ledger.qubits(QubitLeg::verify_response);
    ordered_json j;
    j["qubits"] = legs;
    j["qubits_initializing"] = ledger.initializing_qubits();
    j["qubits_total"] = ledger.total_qubits();
    j["measurements"] = ledger.measurements();
    if (ledger.conversions_applicable())
        j["conversions"] = ledger.conversions();
    else
        j["conversions"] = nullptr;
    return j;
}

inline const char* outcome_name(Outcome outcome) {
    return outcome == Outcome::accept ? "accept" : "reject";
}

inline ordered_json transcript_json(const Transcript& transcript) {
    ordered_json j;
    ordered_json messages = ordered_json::array();
    for (const TranscriptEntry& entry : transcript.messages) {
        ordered_json e;
        e["sender"] = entry.sender;
        e["receiver"] = entry.receiver;
        e["kind"] = entry.kind;
        e["qubits"] = entry.qubits;
        messages.push_back(e);
    }
    j["messages"] = messages;
    j["outcome"] = transcript.outcome ? outcome_name(*transcript.outcome) : "incomplete";
    j["fidelity"] = transcript.final_fidelity;
    if (!transcript.reject_reason.empty()) j["reject_reason"] = transcript.reject_reason;
    j["comparison_measurement"] = transcript.comparison_measurement;
    j["ledger"] = ledger_json(transcript.ledger);
    return j;
}

inline ordered_json formulas_json(const FormulaReport& report) {
    ordered_json checks = ordered_json::array();
    for (const FormulaCheck& c : report.checks) {
        ordered_json e;
        e["name"] = c.name;
        e["expected"] = c.expected;
        e["actual"] = c.actual;
        e["pass"] = c.pass;
        checks.push_back(e);
    }
    ordered_json j;
    j["checks"] = checks;
    j["all_pass"] = report.all_pass();
    return j;
}

inline ordered_json experiment_json(const ExperimentResult& result) {
    ordered_json j;
    j["trials"] = result.trials;
    j["accepted"] = result.accepted;
    j["acceptance"] = result.acceptance;
    j["ci_low"] = result.ci_low;
    j["ci_high"] = result.ci_high;
    ordered_json hist;
    for (const auto& [label, count] : result.histogram) hist[label] = count;
    j["histogram"] = hist;
    return j;
}

inline ordered_json attack_json(const AttackReport& report, bool include_trials = true) {
    ordered_json j;
    j["kind"] = report.kind;
    j["trials"] = report.trials;
    j["rejections"] = report.rejections;
    j["rejection_rate"] = report.rejection_rate;
    j["mean_recovered_fidelity"] = report.mean_recovered_fidelity;
    if (include_trials) {
        ordered_json trials = ordered_json::array();
        for (const AttackTrial& t : report.trial_log) {
            ordered_json e;
            if (!t.forger_key.empty()) e["forger_key"] = t.forger_key;
            if (t.forger_phase) {
                e["forger_phase_numerator"] = t.forger_phase->numerator;
                e["forger_phase_bits"] = t.forger_phase->bits;
            }
            if (!t.pauli.empty()) e["pauli"] = t.pauli;
            if (!t.message.empty()) {
                ordered_json amps = ordered_json::array();
                for (const complex_t& a : t.message) {
                    amps.push_back(a.real());
                    amps.push_back(a.imag());
                }
                e["message"] = amps;
            }
            e["recovered_fidelity"] = t.recovered_fidelity;
            e["rejected"] = t.rejected;
            trials.push_back(e);
        }
        j["trial_log"] = trials;
    }
    return j;
}

inline ordered_json walkthrough_json(const toy::WalkthroughReport& report) {
    ordered_json checkpoints = ordered_json::array();
    for (const toy::Checkpoint& c : report.checkpoints) {
        ordered_json e;
        e["stage"] = c.stage;
        e["pass"] = c.pass;
        e["deviation"] = c.deviation;
        e["note"] = c.note;
        checkpoints.push_back(e);
    }
    ordered_json j;
    j["checkpoints"] = checkpoints;
    j["accepted"] = report.accepted;
    j["all_pass"] = report.all_pass();
    if (const toy::Checkpoint* failure = report.first_failure())
        j["failed_stage"] = failure->stage;
    return j;
}

inline ordered_json evidence_json(const Evidence& evidence) {
    ordered_json j;
    j["id"] = evidence.id_bits;
    j["fidelity"] = evidence.fidelity;
    j["records_checked"] = evidence.records_checked;
    j["matches"] = evidence.matches;
    return j;
}

} // namespace qibs
