// Repeated-trial experiments over the protocol under a noise model.
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>

#include "qibs/noise.hpp"
#include "qibs/protocol.hpp"
#include "qibs/rng.hpp"

namespace qibs {

struct ExperimentResult {
    std::size_t trials = 0;
    std::size_t accepted = 0;
    double acceptance = 0.0;
    // normal-approximation 95% interval, clamped to [0,1]
    double ci_low = 0.0;
    double ci_high = 0.0;
    // final comparison-register readout per trial; SKG rejections bucket as
    // "reject-signal"
    std::map<std::string, std::uint64_t> histogram;
};

// Trial t runs the base configuration with the given noise model and seed
// split_seed(seed, t). Trials are independent and executed in order.
inline ExperimentResult success_experiment(const ProtocolConfig& base, std::size_t trials,
                                           const NoiseModel& model, std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("success_experiment: need at least one trial");
    ExperimentResult result;
    result.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        ProtocolConfig config = base;
        config.noise = model;
        config.seed = split_seed(seed, t);
        const Transcript transcript = run_protocol(config);
        if (transcript.outcome == Outcome::accept) ++result.accepted;
        ++result.histogram[transcript.comparison_measurement];
    }
    result.acceptance = static_cast<double>(result.accepted) / static_cast<double>(trials);
    const double half = 1.96 * std::sqrt(result.acceptance * (1.0 - result.acceptance) /
                                         static_cast<double>(trials));
    result.ci_low = std::max(0.0, result.acceptance - half);
    result.ci_high = std::min(1.0, result.acceptance + half);
    return result;
}

} // namespace qibs
