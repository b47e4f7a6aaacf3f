#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <map>
#include <numbers>

#include "helpers.hpp"
#include "oracle.hpp"
#include "qibs/density.hpp"
#include "qibs/statevector.hpp"

using namespace qibs;
using std::numbers::pi;

namespace {
const double isq2 = 1.0 / std::sqrt(2.0);
}

TEST_CASE("basis states map labels to indices with qubit 1 leftmost") {
    const StateVector s = basis_state("010");
    REQUIRE(s.num_qubits() == 3);
    for (std::size_t i = 0; i < 8; ++i)
        CHECK(std::abs(s.amplitude(i) - (i == 2 ? 1.0 : 0.0)) < 1e-15);

    CHECK(std::abs(basis_state("111").amplitude(7) - 1.0) < 1e-15);
    CHECK(std::abs(basis_state("0").amplitude(0) - 1.0) < 1e-15);
    CHECK(basis_label(2, 3) == "010");

    CHECK_THROWS_AS(basis_state(""), std::invalid_argument);
    CHECK_THROWS_AS(basis_state("01a"), std::invalid_argument);
}

TEST_CASE("state construction validates shape and norm") {
    CHECK_THROWS_AS(StateVector(2, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(StateVector(1, {1.0, 1.0}), std::invalid_argument);
    const double nan = std::nan("");
    CHECK_THROWS_AS(StateVector(1, {complex_t(nan, 0), 0.0}), std::invalid_argument);
    CHECK_NOTHROW(StateVector(1, {complex_t(isq2, 0), complex_t(0, -isq2)}));
}

TEST_CASE("u_gate matches its matrix definition") {
    const Gate u = u_gate(pi / 2, pi, 0.0);
    CHECK(std::abs(u(0, 0) - complex_t(isq2, 0)) < 1e-12);
    CHECK(std::abs(u(0, 1) - complex_t(-isq2, 0)) < 1e-12);
    CHECK(std::abs(u(1, 0) - complex_t(-isq2, 0)) < 1e-12);
    CHECK(std::abs(u(1, 1) - complex_t(-isq2, 0)) < 1e-12);

    const Gate v = u_gate(pi / 2, 0.0, 0.0);
    CHECK(std::abs(v(1, 0) - complex_t(isq2, 0)) < 1e-12);
    CHECK(std::abs(v(1, 1) - complex_t(isq2, 0)) < 1e-12);

    // theta = 0 at zero phases is the identity
    const Gate id = u_gate(0.0, 0.0, 0.0);
    CHECK(std::abs(id(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(id(1, 1) - 1.0) < 1e-15);

    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        const Gate g = u_gate(rng.next_double() * 2 * pi, rng.next_double() * 2 * pi,
                              rng.next_double() * 2 * pi);
        CHECK(g.is_unitary());
    }
}

TEST_CASE("apply_single acts on the addressed qubit") {
    CHECK(fidelity(apply_single(basis_state("010"), gates::pauli_x, 1), basis_state("110")) ==
          Catch::Approx(1.0));

    // Z on qubit 2 of |010> flips the sign only
    const StateVector z = apply_single(basis_state("010"), gates::pauli_z, 2);
    CHECK(std::abs(z.amplitude(2) + 1.0) < 1e-15);

    // U(pi/2, pi, 0)|0> = (|0> - |1>)/sqrt(2)
    const StateVector minus = apply_single(basis_state("0"), u_gate(pi / 2, pi, 0.0), 1);
    CHECK(std::abs(minus.amplitude(0) - isq2) < 1e-12);
    CHECK(std::abs(minus.amplitude(1) + isq2) < 1e-12);

    CHECK_THROWS_AS(apply_single(basis_state("01"), gates::pauli_x, 0), std::out_of_range);
    CHECK_THROWS_AS(apply_single(basis_state("01"), gates::pauli_x, 3), std::out_of_range);
}

TEST_CASE("apply_single agrees with the Kronecker-product oracle") {
    Rng rng(23);
    for (std::size_t m = 1; m <= 3; ++m) {
        for (int rep = 0; rep < 20; ++rep) {
            const StateVector state = random_product_state(m, rng);
            const Gate g = u_gate(rng.next_double() * 2 * pi, rng.next_double() * 2 * pi,
                                  rng.next_double() * 2 * pi);
            const std::size_t target = 1 + rng.next_index(m);

            oracle::cmat big = oracle::eye(1);
            for (std::size_t q = 1; q <= m; ++q) {
                const oracle::cmat factor =
                    q == target ? oracle::cmat{{g(0, 0), g(0, 1)}, {g(1, 0), g(1, 1)}}
                                : oracle::eye(2);
                big = oracle::kron(big, factor);
            }
            const oracle::cvec expected = oracle::matvec(big, testutil::to_vec(state));
            CHECK(testutil::max_amp_diff(apply_single(state, g, target), expected) < 1e-12);
        }
    }
}

TEST_CASE("tensor products expand with the left factor leading") {
    CHECK(fidelity(tensor(basis_state("0"), basis_state("1")), basis_state("01")) ==
          Catch::Approx(1.0));

    const StateVector minus(1, {complex_t(isq2, 0), complex_t(-isq2, 0)});
    const StateVector plus(1, {complex_t(isq2, 0), complex_t(isq2, 0)});
    const StateVector mp = tensor(minus, plus);
    const double expected_mp[] = {0.5, 0.5, -0.5, -0.5};
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(std::abs(mp.amplitude(i) - expected_mp[i]) < 1e-12);

    // |-+-> expansion, all amplitudes +-1/(2 sqrt 2)
    const StateVector mpm = tensor(mp, minus);
    const double r = 1.0 / (2.0 * std::sqrt(2.0));
    const double expected_mpm[] = {r, -r, r, -r, -r, r, -r, r};
    for (std::size_t i = 0; i < 8; ++i)
        CHECK(std::abs(mpm.amplitude(i) - expected_mpm[i]) < 1e-12);
}

TEST_CASE("fidelity is a phase-insensitive overlap") {
    const StateVector zero = basis_state("0");
    const StateVector one = basis_state("1");
    CHECK(fidelity(zero, zero) == Catch::Approx(1.0));
    CHECK(fidelity(zero, one) == Catch::Approx(0.0).margin(1e-15));

    const StateVector plus(1, {complex_t(isq2, 0), complex_t(isq2, 0)});
    CHECK(fidelity(zero, plus) == Catch::Approx(0.5));

    // global phase on one argument changes nothing
    const StateVector rotated(1, {std::exp(complex_t(0, 1.1)) * isq2,
                                  std::exp(complex_t(0, 1.1)) * isq2});
    CHECK(fidelity(plus, rotated) == Catch::Approx(1.0));
    CHECK(fidelity(plus, zero) == Catch::Approx(fidelity(zero, plus)));

    CHECK_THROWS_AS(fidelity(zero, basis_state("00")), std::invalid_argument);
}

TEST_CASE("measure_all follows the Born rule") {
    Rng rng(5);
    // deterministic on a basis state
    for (int i = 0; i < 20; ++i) CHECK(measure_all(basis_state("010"), rng) == "010");

    // |+> lands on each side about half the time
    const StateVector plus(1, {complex_t(isq2, 0), complex_t(isq2, 0)});
    int ones = 0;
    for (int i = 0; i < 10000; ++i)
        if (measure_all(plus, rng) == "1") ++ones;
    CHECK(std::abs(ones / 10000.0 - 0.5) < 0.02);

    // a uniform-magnitude 3-qubit state covers all eight labels uniformly
    std::vector<complex_t> amps(8, complex_t(1.0 / (2.0 * std::sqrt(2.0)), 0));
    for (std::size_t i = 0; i < 4; ++i) amps[i] = -amps[i];
    const StateVector uniform(3, amps);
    std::map<std::string, int> counts;
    for (int i = 0; i < 16000; ++i) ++counts[measure_all(uniform, rng)];
    REQUIRE(counts.size() == 8);
    for (const auto& [label, count] : counts)
        CHECK(std::abs(count / 16000.0 - 0.125) < 0.02);
}

TEST_CASE("random_product_state is normalized and margin-bounded") {
    Rng rng(77);
    for (int rep = 0; rep < 50; ++rep) {
        const StateVector s = random_product_state(3, rng, 0.3);
        double n2 = 0.0;
        for (std::size_t i = 0; i < s.dim(); ++i) n2 += std::norm(s.amplitude(i));
        CHECK(std::abs(n2 - 1.0) < 1e-12);
    }
    // margin keeps single-qubit populations away from 0 and 1
    for (int rep = 0; rep < 200; ++rep) {
        const StateVector q = random_product_state(1, rng, 0.3);
        const double p0 = std::norm(q.amplitude(0));
        CHECK(p0 > std::pow(std::cos(std::numbers::pi / 2 - 0.3), 2) - 1e-12);
        CHECK(p0 < std::pow(std::cos(0.3), 2) + 1e-12);
    }
    CHECK_THROWS_AS(random_product_state(0, rng), std::invalid_argument);
    CHECK_THROWS_AS(random_product_state(1, rng, 1.0), std::invalid_argument);
}

TEST_CASE("density matrices and mixtures") {
    const DensityMatrix rho = density_of(basis_state("0"));
    CHECK(std::abs(rho.at(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(rho.at(1, 1)) < 1e-15);
    CHECK(rho.is_hermitian());
    CHECK(std::abs(rho.trace() - 1.0) < 1e-15);

    const DensityMatrix half =
        mix({density_of(basis_state("0")), density_of(basis_state("1"))}, {0.5, 0.5});
    CHECK(max_entry_distance(half, maximally_mixed(1)) < 1e-15);

    CHECK_THROWS_AS(mix({rho}, {0.5}), std::invalid_argument);
    CHECK_THROWS_AS(mix({rho, rho}, {0.7, 0.7}), std::invalid_argument);
    CHECK_THROWS_AS(mix({rho, rho}, {-1.0, 2.0}), std::invalid_argument);

    // positive semidefiniteness spot check: x^H rho x >= 0 for random x
    Rng rng(3);
    const DensityMatrix mixed = mix(
        {density_of(random_product_state(2, rng)), density_of(random_product_state(2, rng))},
        {0.25, 0.75});
    for (int rep = 0; rep < 50; ++rep) {
        oracle::cvec x(4);
        for (auto& c : x) c = oracle::cx(rng.next_double() - 0.5, rng.next_double() - 0.5);
        oracle::cx quad(0);
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c)
                quad += std::conj(x[r]) * mixed.at(r, c) * x[c];
        CHECK(quad.real() > -1e-9);
        CHECK(std::abs(quad.imag()) < 1e-9);
    }
}

TEST_CASE("phase_aligned_max_diff tolerates a global phase only") {
    const StateVector s = basis_state("01");
    std::vector<complex_t> target = {0.0, complex_t(0, 1), 0.0, 0.0}; // i|01>
    CHECK(phase_aligned_max_diff(s, target) < 1e-15);
    target[1] = 0.0;
    target[2] = 1.0;
    CHECK(phase_aligned_max_diff(s, target) > 0.9);
}
