#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstddef>

#include "helpers.hpp"
#include "qibs/experiment.hpp"
#include "qibs/noise.hpp"
#include "qibs/toy.hpp"

using namespace qibs;

TEST_CASE("zero-strength noise is a strict no-op") {
    Rng rng(7);
    const StateVector before = random_product_state(3, rng);
    const std::uint64_t draws_before = rng.next_u64();

    Rng replay(7);
    const StateVector again = random_product_state(3, replay);
    const StateVector after = apply_noise_all(again, NoiseModel{NoiseKind::depolarizing, 0.0}, replay);
    CHECK(testutil::max_amp_diff(after, before.amplitudes()) == 0.0);
    // no randomness may be consumed on the p == 0 path
    CHECK(replay.next_u64() == draws_before);
}

TEST_CASE("certain flips act as Pauli gates") {
    Rng rng(11);
    const StateVector flipped =
        apply_noise(basis_state("0"), 1, NoiseModel{NoiseKind::bit_flip, 1.0}, rng);
    CHECK(fidelity(flipped, basis_state("1")) == Catch::Approx(1.0));

    const StateVector plus = apply_single(basis_state("0"), gates::hadamard, 1);
    const StateVector minus = apply_single(basis_state("1"), gates::hadamard, 1);
    const StateVector dephased =
        apply_noise(plus, 1, NoiseModel{NoiseKind::phase_flip, 1.0}, rng);
    CHECK(fidelity(dephased, minus) == Catch::Approx(1.0));
}

TEST_CASE("depolarizing strength matches its flip statistics") {
    // on |0>, X and Y flip the bit and Z does not: flip probability is 2p/3
    Rng rng(23);
    const NoiseModel model{NoiseKind::depolarizing, 0.3};
    std::size_t flips = 0;
    const std::size_t trials = 100000;
    for (std::size_t t = 0; t < trials; ++t) {
        const StateVector out = apply_noise(basis_state("0"), 1, model, rng);
        if (std::abs(out.amplitude(1)) > 0.5) ++flips;
    }
    const double rate = static_cast<double>(flips) / static_cast<double>(trials);
    CHECK(rate == Catch::Approx(0.2).margin(0.01));
}

TEST_CASE("noise parameters are validated") {
    Rng rng(1);
    CHECK_THROWS_AS(apply_noise(basis_state("0"), 1, NoiseModel{NoiseKind::bit_flip, -0.1}, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(apply_noise(basis_state("0"), 1, NoiseModel{NoiseKind::bit_flip, 1.5}, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(apply_noise(basis_state("0"), 2, NoiseModel{NoiseKind::bit_flip, 0.5}, rng),
                    std::out_of_range);
}

TEST_CASE("noiseless experiments accept every trial") {
    const ExperimentResult result =
        success_experiment(toy::config(), 400, NoiseModel{NoiseKind::depolarizing, 0.0}, 17);
    CHECK(result.trials == 400);
    CHECK(result.accepted == 400);
    CHECK(result.acceptance == 1.0);
    CHECK(result.ci_high == 1.0);
    REQUIRE(result.histogram.size() == 1);
    CHECK(result.histogram.begin()->first == "010");
    CHECK(result.histogram.begin()->second == 400);
}

TEST_CASE("acceptance decays as noise grows") {
    const double grid[] = {0.0, 0.1, 0.2};
    double previous = 1.0;
    for (const double p : grid) {
        const ExperimentResult result =
            success_experiment(toy::config(), 300, NoiseModel{NoiseKind::depolarizing, p}, 4);
        CHECK(result.acceptance <= previous + 0.03);
        previous = result.acceptance;
    }
    // strong noise must actually bite
    const ExperimentResult noisy =
        success_experiment(toy::config(), 300, NoiseModel{NoiseKind::depolarizing, 0.2}, 4);
    CHECK(noisy.acceptance < 0.9);
}

TEST_CASE("experiments replay byte for byte") {
    const NoiseModel model{NoiseKind::bit_flip, 0.05};
    const ExperimentResult a = success_experiment(toy::config(), 200, model, 99);
    const ExperimentResult b = success_experiment(toy::config(), 200, model, 99);
    CHECK(a.accepted == b.accepted);
    CHECK(a.acceptance == b.acceptance);
    CHECK(a.histogram == b.histogram);

    const ExperimentResult c = success_experiment(toy::config(), 200, model, 100);
    CHECK((a.accepted != c.accepted || a.histogram != c.histogram));
}

TEST_CASE("noisy rejects bucket under their comparison labels") {
    const ExperimentResult result =
        success_experiment(toy::config(), 2000, NoiseModel{NoiseKind::bit_flip, 0.15}, 12);
    CHECK(result.accepted < result.trials);
    std::uint64_t total = 0;
    for (const auto& [label, count] : result.histogram) total += count;
    CHECK(total == result.trials);
    CHECK(result.histogram.count("010") == 1);
    CHECK(result.histogram.size() > 1);
}
