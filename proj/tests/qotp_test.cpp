#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "oracle.hpp"
#include "qibs/qotp.hpp"

using namespace qibs;
using std::numbers::pi;

TEST_CASE("pad keys validate and index 1-based") {
    CHECK_THROWS_AS(OtpKey(""), std::invalid_argument);
    CHECK_THROWS_AS(OtpKey("01x"), std::invalid_argument);

    const OtpKey key("010110");
    CHECK(key.size() == 6);
    // per-qubit masks of the reference signer key: X, X, Z
    CHECK(key.z_bit(1) == 0);
    CHECK(key.x_bit(1) == 1);
    CHECK(key.z_bit(2) == 0);
    CHECK(key.x_bit(2) == 1);
    CHECK(key.z_bit(3) == 1);
    CHECK(key.x_bit(3) == 0);
    CHECK_THROWS_AS(key.bit(0), std::out_of_range);
    CHECK_THROWS_AS(key.bit(7), std::out_of_range);

    CHECK(key.subkey(1, 4).bits() == "0101");
    CHECK(key.subkey(5, 2).bits() == "10");
    CHECK_THROWS_AS(key.subkey(5, 3), std::out_of_range);
}

TEST_CASE("reference pad values") {
    // signer key 010110 sends |010> to |100>
    const StateVector cipher = encrypt(basis_state("010"), OtpKey("010110"));
    CHECK(fidelity(cipher, basis_state("100")) == Catch::Approx(1.0));
    CHECK(fidelity(decrypt(cipher, OtpKey("010110")), basis_state("010")) == Catch::Approx(1.0));

    // verifier key 100101 sends |011> to |000>
    CHECK(fidelity(encrypt(basis_state("011"), OtpKey("100101")), basis_state("000")) ==
          Catch::Approx(1.0));

    // all-zero key is the identity
    const StateVector plus = apply_single(basis_state("0"), gates::hadamard, 1);
    CHECK(testutil::max_amp_diff(encrypt(plus, OtpKey("00")), testutil::to_vec(plus)) < 1e-15);
}

TEST_CASE("encryption matches the operator oracle") {
    Rng rng(31);
    for (std::size_t m = 1; m <= 3; ++m) {
        for (int rep = 0; rep < 25; ++rep) {
            const StateVector message = random_product_state(m, rng);
            const OtpKey key = OtpKey::random(m, rng);
            const oracle::cmat op = oracle::otp_matrix(key.bits());
            CHECK(testutil::max_amp_diff(encrypt(message, key),
                                         oracle::matvec(op, testutil::to_vec(message))) < 1e-12);
            CHECK(testutil::max_amp_diff(
                      decrypt(message, key),
                      oracle::matvec(oracle::otp_inverse_matrix(key.bits()),
                                     testutil::to_vec(message))) < 1e-12);
        }
    }
}

TEST_CASE("decrypt inverts encrypt across sizes and keys") {
    Rng rng(17);
    for (int rep = 0; rep < 400; ++rep) {
        const std::size_t m = 1 + rng.next_index(4);
        const StateVector message = random_product_state(m, rng);
        const OtpKey key = OtpKey::random(m, rng);
        CHECK(fidelity(decrypt(encrypt(message, key), key), message) >= 1.0 - 1e-9);
    }
}

TEST_CASE("longer keys use their leading bits") {
    const StateVector message = basis_state("01");
    const OtpKey exact("0110");
    const OtpKey longer("01101001");
    CHECK(fidelity(encrypt(message, exact), encrypt(message, longer)) == Catch::Approx(1.0));
    CHECK_THROWS_AS(encrypt(message, OtpKey("011")), std::invalid_argument);
    CHECK_THROWS_AS(decrypt(message, OtpKey("011")), std::invalid_argument);
}

TEST_CASE("a single wrong mask bit is visible in the state") {
    // flipping one X mask bit turns |010> into a different basis state
    const StateVector cipher = encrypt(basis_state("010"), OtpKey("010110"));
    const StateVector wrong = decrypt(cipher, OtpKey("000110"));
    CHECK(fidelity(wrong, basis_state("010")) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("key-averaged cipher is maximally mixed") {
    Rng rng(41);
    // pinned inputs from the protocol plus random product states
    CHECK(max_entry_distance(secrecy_oracle(basis_state("0")), maximally_mixed(1)) < 1e-9);
    const StateVector plus = apply_single(basis_state("0"), gates::hadamard, 1);
    CHECK(max_entry_distance(secrecy_oracle(plus), maximally_mixed(1)) < 1e-9);
    CHECK(max_entry_distance(secrecy_oracle(basis_state("01")), maximally_mixed(2)) < 1e-9);
    for (std::size_t m = 1; m <= 3; ++m)
        CHECK(max_entry_distance(secrecy_oracle(random_product_state(m, rng)),
                                 maximally_mixed(m)) < 1e-9);

    CHECK_THROWS_AS(secrecy_oracle(random_product_state(5, rng)), std::invalid_argument);
}
