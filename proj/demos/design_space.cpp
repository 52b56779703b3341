// Prints the design-space numbers: key-space sizes of the cascade layers,
// the two-defence attack cost as the cascade deepens, and what channel noise
// does to net throughput.

#include <iostream>

#include "xlsec/xlsec.hpp"

int main() {
    using namespace xlsec;

    std::cout << "key space per stage (k=8, memory=2):\n";
    std::cout << "  matrix connections: " << keyspace_matrix_connections(8, 2) << "\n";
    std::cout << "  transition functions: " << keyspace_transition_functions(8) << "\n";
    std::cout << "  2-bit substitutions (4 boxes): " << keyspace_sbox(4, 2) << "\n";
    std::cout << "  8-line permutations: " << keyspace_pbox(8) << "\n\n";

    AttackSweep attack;
    attack.base.rsa_p = 1009;
    attack.base.rsa_q = 1013;
    attack.base.p_blocks = 10;
    attack.base.q_states = 2;
    attack.base.k = 8;
    attack.stages_lo = 1;
    attack.stages_hi = 4;
    std::cout << "attack cost vs cascade depth:\n" << emit_curves(attack) << "\n";

    ThroughputSweep thr;
    thr.rate = 0.5;
    thr.block_bits = 424;
    thr.pe = {0.0, 0.002, 0.0005};
    std::cout << "net throughput vs channel error rate:\n" << emit_curves(thr) << "\n";

    BerSweep ber;
    ber.snr_db = {0, 10, 2};
    std::cout << "post-decoding error bound vs SNR:\n" << emit_curves(ber);
    return 0;
}
