// Shows the one-time pad hiding a message: averaged over all keys the cipher
// is maximally mixed, while any single key is a reversible mask.

#include <iostream>

#include "qibs/qibs.hpp"

int main() {
    qibs::Rng rng(7);
    const qibs::StateVector message = qibs::random_product_state(2, rng);

    const qibs::OtpKey key = qibs::OtpKey::random(2, rng);
    const qibs::StateVector cipher = qibs::encrypt(message, key);
    std::cout << "round-trip fidelity: "
              << qibs::fidelity(qibs::decrypt(cipher, key), message) << "\n";

    const qibs::DensityMatrix averaged = qibs::secrecy_oracle(message);
    std::cout << "distance from maximally mixed: "
              << qibs::max_entry_distance(averaged, qibs::maximally_mixed(2)) << "\n";
    return 0;
}
