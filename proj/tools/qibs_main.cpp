// Command-line front end for the simulator: toy walkthrough, single protocol
// runs, attack campaigns, noise experiments, a signed-email demonstration,
// and cost-formula reconciliation.
//
// Exit codes: 0 on success (including attacks whose outcome is the expected
// unanimous one), 1 when a verification or reconciliation fails, 2 on usage
// errors.

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qibs/qibs.hpp"

namespace {

constexpr double calibration_threshold = 0.892;

std::string fmt_double(double value) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, ptr);
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("QIBS_SEED")) {
        std::uint64_t value = 0;
        const std::string text(env);
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size())
            throw CLI::ValidationError("QIBS_SEED", "not an unsigned integer");
        return value;
    }
    return 0;
}

qibs::PhaseSecret parse_phase(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos)
        throw CLI::ValidationError("--inject-phi", "expected K/N");
    std::uint32_t k = 0;
    std::uint32_t n = 0;
    const auto [p1, e1] = std::from_chars(text.data(), text.data() + slash, k);
    const auto [p2, e2] =
        std::from_chars(text.data() + slash + 1, text.data() + text.size(), n);
    if (e1 != std::errc() || e2 != std::errc() || p1 != text.data() + slash ||
        p2 != text.data() + text.size())
        throw CLI::ValidationError("--inject-phi", "expected K/N with integers");
    try {
        return qibs::PhaseSecret::from_fraction(k, n);
    } catch (const std::invalid_argument& err) {
        throw CLI::ValidationError("--inject-phi", err.what());
    }
}

qibs::NoiseKind parse_noise_kind(const std::string& text) {
    if (text == "depolarizing") return qibs::NoiseKind::depolarizing;
    if (text == "bit-flip") return qibs::NoiseKind::bit_flip;
    if (text == "phase-flip") return qibs::NoiseKind::phase_flip;
    throw CLI::ValidationError("--noise-kind", "expected depolarizing, bit-flip or phase-flip");
}

std::string default_identity(std::size_t m) {
    if (m == 1) return "1";
    std::string id(m, '0');
    id[m - 1] = '1';
    id[m - 2] = '1';
    return id;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + out_path);
    file << text;
}

// Shared per-run options; each subcommand registers the subset it honors.
struct RunOptions {
    std::size_t m = 3;
    std::size_t n = 8;
    std::string id;
    std::string message; // bit string or "random"
    std::optional<std::string> inject_ti;
    std::optional<std::string> inject_tu;
    std::optional<std::string> inject_phi;
    std::optional<std::uint64_t> seed;
    std::string noise_kind = "depolarizing";
    double p = 0.0;
    std::string comparator = "exact";
    std::size_t shots = 512;
    std::optional<std::string> forge_key;
    std::optional<std::string> forge_phi;
    std::optional<std::string> pauli;
    bool json = false;
    std::string out_path;
};

void add_config_flags(CLI::App* cmd, RunOptions& o) {
    cmd->add_option("--m", o.m, "message register size in qubits");
    cmd->add_option("--n", o.n, "phase precision in bits");
    cmd->add_option("--id", o.id, "signer identity bits (length m)");
    cmd->add_option("--inject-ti", o.inject_ti, "pin the signer pad key (2m bits)");
    cmd->add_option("--inject-tu", o.inject_tu, "pin the verifier pad key (2m or 4m bits)");
    cmd->add_option("--inject-phi", o.inject_phi, "pin the signing phase as K/N");
    cmd->add_option("--seed", o.seed, "run seed (falls back to QIBS_SEED, then 0)");
    cmd->add_option("--noise-kind", o.noise_kind, "depolarizing, bit-flip or phase-flip");
    cmd->add_option("--comparator", o.comparator, "exact or swap");
    cmd->add_option("--shots", o.shots, "swap-test shots");
}

void add_output_flags(CLI::App* cmd, RunOptions& o) {
    cmd->add_flag("--json", o.json, "machine-readable output");
    cmd->add_option("--out", o.out_path, "write the report to a file instead of stdout");
}

qibs::ProtocolConfig build_config(const RunOptions& o) {
    qibs::ProtocolConfig config;
    config.message_qubits = o.m;
    config.phase_bits = o.n;
    config.signer_id = o.id.empty() ? default_identity(o.m) : o.id;
    if (o.message != "random") config.message_bits = o.message;
    config.inject_signer_key = o.inject_ti;
    config.inject_verifier_key = o.inject_tu;
    if (o.inject_phi) {
        const qibs::PhaseSecret phase = parse_phase(*o.inject_phi);
        if (phase.bits != o.n)
            throw CLI::ValidationError("--inject-phi", "phase bit count must equal --n");
        config.inject_phase = phase;
    }
    config.seed = resolve_seed(o.seed);
    config.noise.kind = parse_noise_kind(o.noise_kind);
    config.noise.p = o.p;
    if (o.comparator == "exact")
        config.comparator = qibs::Comparator::exact;
    else if (o.comparator == "swap")
        config.comparator = qibs::Comparator::swap_test;
    else
        throw CLI::ValidationError("--comparator", "expected exact or swap");
    config.shots = o.shots;
    config.forge_key = o.forge_key;
    if (o.forge_phi) {
        const qibs::PhaseSecret phase = parse_phase(*o.forge_phi);
        if (phase.bits != o.n)
            throw CLI::ValidationError("--forge-phi", "phase bit count must equal --n");
        config.forge_phase = phase;
    }
    config.tamper_pauli = o.pauli;
    return config;
}

qibs::ordered_json golden_json(const qibs::toy::GoldenTable& table) {
    auto amps = [](const std::vector<qibs::complex_t>& v) {
        qibs::ordered_json a = qibs::ordered_json::array();
        for (const qibs::complex_t& c : v) a.push_back({c.real(), c.imag()});
        return a;
    };
    qibs::ordered_json j;
    j["pad_plain"] = table.pad_plain;
    j["pad_cipher"] = table.pad_cipher;
    j["signature"] = amps(table.signature);
    j["enc_signature"] = amps(table.enc_signature);
    j["enc_identity"] = table.enc_identity;
    j["recovery"] = table.recovery;
    j["response"] = table.response;
    return j;
}

qibs::toy::GoldenTable golden_from_json(const qibs::ordered_json& j) {
    auto amps = [](const qibs::ordered_json& a) {
        std::vector<qibs::complex_t> v;
        for (const auto& pair : a) v.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
        return v;
    };
    qibs::toy::GoldenTable table;
    table.pad_plain = j.at("pad_plain").get<std::string>();
    table.pad_cipher = j.at("pad_cipher").get<std::string>();
    table.signature = amps(j.at("signature"));
    table.enc_signature = amps(j.at("enc_signature"));
    table.enc_identity = j.at("enc_identity").get<std::string>();
    table.recovery = j.at("recovery").get<std::string>();
    table.response = j.at("response").get<std::string>();
    return table;
}

int cmd_toy(const std::string& golden_path, const std::string& write_golden_path,
            bool json, const std::string& out_path) {
    if (!write_golden_path.empty()) {
        emit(golden_json(qibs::toy::golden()).dump(2) + "\n", write_golden_path);
        return 0;
    }
    qibs::toy::GoldenTable expected = qibs::toy::golden();
    if (!golden_path.empty()) {
        std::ifstream file(golden_path);
        if (!file) throw std::runtime_error("cannot open golden file: " + golden_path);
        qibs::ordered_json j;
        file >> j;
        expected = golden_from_json(j);
    }
    const qibs::toy::WalkthroughReport report = qibs::toy::run_walkthrough(expected);
    if (json) {
        emit(qibs::walkthrough_json(report).dump(2) + "\n", out_path);
    } else {
        std::ostringstream text;
        for (const qibs::toy::Checkpoint& c : report.checkpoints)
            text << (c.pass ? "PASS " : "FAIL ") << c.stage
                 << " (deviation " << fmt_double(c.deviation) << ") " << c.note << "\n";
        if (const qibs::toy::Checkpoint* failure = report.first_failure())
            text << "MISMATCH at stage " << failure->stage << "\n";
        else
            text << "all checkpoints reproduced\n";
        emit(text.str(), out_path);
    }
    return report.all_pass() ? 0 : 1;
}

int cmd_run(const RunOptions& options) {
    const qibs::ProtocolConfig config = build_config(options);
    const qibs::Transcript transcript = qibs::run_protocol(config);
    if (options.json) {
        emit(qibs::transcript_json(transcript).dump(2) + "\n", options.out_path);
    } else {
        std::ostringstream text;
        for (const qibs::TranscriptEntry& e : transcript.messages)
            text << e.sender << " -> " << e.receiver << ": " << e.kind
                 << " (" << e.qubits << " qubits)\n";
        text << "outcome: "
             << (transcript.outcome ? qibs::outcome_name(*transcript.outcome) : "incomplete")
             << " (fidelity " << fmt_double(transcript.final_fidelity) << ")\n";
        if (!transcript.reject_reason.empty())
            text << "reject reason: " << transcript.reject_reason << "\n";
        text << "qubits total: " << transcript.ledger.total_qubits()
             << ", measurements: " << transcript.ledger.measurements() << "\n";
        emit(text.str(), options.out_path);
    }
    return transcript.outcome == qibs::Outcome::accept ? 0 : 1;
}

int cmd_attack(const std::string& kind_text, std::size_t trials, const RunOptions& options) {
    qibs::AttackKind kind;
    if (kind_text == "forgery")
        kind = qibs::AttackKind::forgery;
    else if (kind_text == "pauli")
        kind = qibs::AttackKind::pauli_tamper;
    else
        throw CLI::ValidationError("--kind", "expected forgery or pauli");

    // campaigns run against the pinned reference instance unless overridden
    RunOptions base = options;
    if (!base.inject_ti) base.inject_ti = qibs::toy::signer_key_bits;
    if (!base.inject_tu) base.inject_tu = qibs::toy::verifier_key_bits;
    if (!base.inject_phi) base.inject_phi = "128/8";
    if (base.id.empty()) base.id = qibs::toy::signer_id_bits;
    if (base.message.empty()) base.message = qibs::toy::message_bits;
    qibs::ProtocolConfig config = build_config(base);

    std::optional<qibs::PauliString> fixed;
    if (options.pauli) {
        fixed = qibs::PauliString(*options.pauli);
        config.tamper_pauli.reset(); // the suite drives the tampering
    }
    const qibs::AttackReport report =
        qibs::attack_suite(kind, config, trials, resolve_seed(options.seed), fixed);

    if (options.json) {
        emit(qibs::attack_json(report).dump(2) + "\n", options.out_path);
    } else {
        std::ostringstream text;
        text << report.kind << ": " << report.rejections << "/" << report.trials
             << " rejected (rate " << fmt_double(report.rejection_rate)
             << "), mean recovered fidelity "
             << fmt_double(report.mean_recovered_fidelity) << "\n";
        emit(text.str(), options.out_path);
    }
    const bool unanimous =
        report.trials == 0 || report.rejections == 0 || report.rejections == report.trials;
    return unanimous ? 0 : 1;
}

int cmd_experiment(const std::string& grid_text, std::size_t trials, const RunOptions& options,
                   const std::string& histogram_out) {
    std::vector<double> grid;
    std::stringstream stream(grid_text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(item, &used);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--p", "not a number: " + item);
        }
        if (used != item.size()) throw CLI::ValidationError("--p", "not a number: " + item);
        if (value < 0.0 || value > 1.0) throw CLI::ValidationError("--p", "p out of [0,1]");
        grid.push_back(value);
    }
    if (grid.empty()) throw CLI::ValidationError("--p", "empty grid");

    RunOptions base = options;
    if (base.message.empty()) base.message = qibs::toy::message_bits;
    if (base.id.empty()) base.id = qibs::toy::signer_id_bits;
    const qibs::ProtocolConfig config = build_config(base);
    const std::uint64_t seed = resolve_seed(options.seed);
    const qibs::NoiseKind kind = parse_noise_kind(options.noise_kind);

    std::vector<qibs::ExperimentResult> results;
    std::optional<double> first_p_below;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const qibs::NoiseModel model{kind, grid[i]};
        // each grid point gets its own derived seed so points are independent
        results.push_back(qibs::success_experiment(config, trials, model,
                                                   qibs::split_seed(seed, 3000 + i)));
        if (!first_p_below && results.back().acceptance < calibration_threshold)
            first_p_below = grid[i];
    }

    if (!histogram_out.empty()) {
        qibs::ordered_json hist;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            qibs::ordered_json point;
            for (const auto& [label, count] : results[i].histogram) point[label] = count;
            hist[fmt_double(grid[i])] = point;
        }
        emit(hist.dump(2) + "\n", histogram_out);
    }

    if (options.json) {
        qibs::ordered_json j;
        j["noise_kind"] = options.noise_kind;
        j["trials_per_point"] = trials;
        j["seed"] = seed;
        qibs::ordered_json points = qibs::ordered_json::array();
        for (std::size_t i = 0; i < grid.size(); ++i) {
            qibs::ordered_json point = qibs::experiment_json(results[i]);
            point["p"] = grid[i];
            points.push_back(point);
        }
        j["grid"] = points;
        qibs::ordered_json calibration;
        calibration["threshold"] = calibration_threshold;
        calibration["first_p_below"] = first_p_below ? qibs::ordered_json(*first_p_below)
                                                     : qibs::ordered_json(nullptr);
        j["calibration"] = calibration;
        emit(j.dump(2) + "\n", options.out_path);
    } else {
        std::ostringstream text;
        text << "noise_kind,p,trials,accepted,acceptance,ci_low,ci_high\n";
        for (std::size_t i = 0; i < grid.size(); ++i)
            text << options.noise_kind << ',' << fmt_double(grid[i]) << ',' << results[i].trials
                 << ',' << results[i].accepted << ',' << fmt_double(results[i].acceptance) << ','
                 << fmt_double(results[i].ci_low) << ',' << fmt_double(results[i].ci_high) << "\n";
        emit(text.str(), options.out_path);
    }
    return 0;
}

// Non-cryptographic stand-in digest: FNV-1a folded down to `bits` bits.
std::string text_digest(const std::string& text, std::size_t bits) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::uint64_t folded = 0;
    for (std::size_t shift = 0; shift < 64; shift += bits)
        folded ^= (h >> shift) & ((std::uint64_t{1} << bits) - 1);
    std::string out(bits, '0');
    for (std::size_t i = 0; i < bits; ++i)
        if (folded >> (bits - 1 - i) & 1) out[i] = '1';
    return out;
}

int cmd_email_demo(const std::string& text, bool tamper, const RunOptions& options) {
    if (text.empty()) throw CLI::ValidationError("message", "empty message");
    if (options.m < 1 || options.m > 16)
        throw CLI::ValidationError("--m", "digest size must be 1..16 bits");

    const std::string sent_digest = text_digest(text, options.m);
    RunOptions run = options;
    run.message = sent_digest;
    run.id = options.id.empty() ? default_identity(options.m) : options.id;
    const qibs::ProtocolConfig config = build_config(run);
    const qibs::Transcript transcript = qibs::run_protocol(config);

    std::string received_text = text;
    if (tamper && !received_text.empty()) received_text[0] ^= 0x01; // transit bit flip
    const std::string received_digest = text_digest(received_text, options.m);
    const bool signature_ok = transcript.outcome == qibs::Outcome::accept;
    const bool digest_ok = received_digest == sent_digest;
    const bool accepted = signature_ok && digest_ok;

    if (options.json) {
        qibs::ordered_json j;
        j["text"] = text;
        j["received_text"] = received_text;
        j["digest"] = sent_digest;
        j["received_digest"] = received_digest;
        j["signature_ok"] = signature_ok;
        j["digest_ok"] = digest_ok;
        j["accepted"] = accepted;
        j["protocol"] = qibs::transcript_json(transcript);
        emit(j.dump(2) + "\n", options.out_path);
    } else {
        std::ostringstream out;
        out << "digest: " << sent_digest << "\n"
            << "signature verification: " << (signature_ok ? "accept" : "reject") << "\n"
            << "digest comparison: " << (digest_ok ? "match" : "mismatch") << "\n"
            << "email " << (accepted ? "accepted" : "rejected") << "\n";
        emit(out.str(), options.out_path);
    }
    return accepted ? 0 : 1;
}

int cmd_costs(const RunOptions& options) {
    RunOptions run = options;
    if (run.message.empty() || run.message == "random") {
        std::string bits(run.m, '0');
        for (std::size_t i = 1; i < bits.size(); i += 2) bits[i] = '1';
        run.message = bits; // classical message so conversions apply
    }
    const qibs::ProtocolConfig config = build_config(run);
    const qibs::Transcript transcript = qibs::run_protocol(config);
    const qibs::FormulaReport report =
        qibs::check_formulas(transcript.ledger, options.m, options.n);

    if (options.json) {
        qibs::ordered_json j = qibs::formulas_json(report);
        j["ledger"] = qibs::ledger_json(transcript.ledger);
        emit(j.dump(2) + "\n", options.out_path);
    } else {
        std::ostringstream text;
        for (const qibs::FormulaCheck& c : report.checks)
            text << (c.pass ? "PASS " : "FAIL ") << c.name << ": expected " << c.expected
                 << ", counted " << c.actual << "\n";
        text << (report.all_pass() ? "all formulas reconciled\n" : "reconciliation failed\n");
        emit(text.str(), options.out_path);
    }
    return report.all_pass() && transcript.outcome == qibs::Outcome::accept ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"identity-based quantum signature simulator"};
    app.require_subcommand(1);

    RunOptions toy_opts;
    std::string golden_path;
    std::string write_golden_path;
    CLI::App* toy = app.add_subcommand("toy", "replay the reference instance against its golden values");
    toy->add_option("--golden", golden_path, "golden table JSON to compare against");
    toy->add_option("--write-golden", write_golden_path, "write the embedded golden table and exit");
    add_output_flags(toy, toy_opts);

    RunOptions run_opts;
    run_opts.message = "random";
    CLI::App* run = app.add_subcommand("run", "execute one full protocol pass");
    add_config_flags(run, run_opts);
    run->add_option("--message", run_opts.message, "basis-state message bits, or 'random'");
    run->add_option("--p", run_opts.p, "noise probability per transmitted qubit");
    run->add_option("--forge-key", run_opts.forge_key, "sign with this pad key instead (2m bits)");
    run->add_option("--forge-phi", run_opts.forge_phi, "sign with this phase instead, as K/N");
    run->add_option("--pauli", run_opts.pauli, "apply this Pauli string in transit");
    add_output_flags(run, run_opts);

    RunOptions attack_opts;
    std::string attack_kind;
    std::size_t attack_trials = 200;
    CLI::App* attack = app.add_subcommand("attack", "run an attack campaign");
    attack->add_option("--kind", attack_kind, "forgery or pauli")->required();
    attack->add_option("--trials", attack_trials, "number of attack trials");
    attack->add_option("--pauli", attack_opts.pauli, "fix the tamper string instead of sampling");
    add_config_flags(attack, attack_opts);
    add_output_flags(attack, attack_opts);

    RunOptions exp_opts;
    std::string grid_text = "0,0.02,0.04,0.06,0.08,0.1,0.12,0.14,0.16,0.18,0.2";
    std::size_t exp_trials = 2000;
    std::string histogram_out;
    CLI::App* experiment = app.add_subcommand("experiment", "acceptance rate over a noise grid");
    experiment->add_option("--p", grid_text, "comma-separated noise grid");
    experiment->add_option("--trials", exp_trials, "trials per grid point");
    experiment->add_option("--histogram-out", histogram_out, "write per-point readout histograms");
    add_config_flags(experiment, exp_opts);
    add_output_flags(experiment, exp_opts);

    RunOptions email_opts;
    email_opts.m = 8;
    std::string email_text;
    bool email_tamper = false;
    CLI::App* email = app.add_subcommand("email-demo", "sign and verify an email body digest");
    email->add_option("message", email_text, "email body text")->required();
    email->add_flag("--tamper", email_tamper, "flip a text bit after signing");
    add_config_flags(email, email_opts);
    email->add_option("--p", email_opts.p, "noise probability per transmitted qubit");
    add_output_flags(email, email_opts);

    RunOptions costs_opts;
    CLI::App* costs = app.add_subcommand("costs", "reconcile ledger counts with the closed forms");
    add_config_flags(costs, costs_opts);
    add_output_flags(costs, costs_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (toy->parsed()) return cmd_toy(golden_path, write_golden_path, toy_opts.json, toy_opts.out_path);
        if (run->parsed()) return cmd_run(run_opts);
        if (attack->parsed()) return cmd_attack(attack_kind, attack_trials, attack_opts);
        if (experiment->parsed())
            return cmd_experiment(grid_text, exp_trials, exp_opts, histogram_out);
        if (email->parsed()) return cmd_email_demo(email_text, email_tamper, email_opts);
        if (costs->parsed()) return cmd_costs(costs_opts);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
