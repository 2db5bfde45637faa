#pragma once

// Shared fixtures: the two worked examples, the swap illustrations, and the
// six published circuits used as cost references.

#include "mct/circuit.hpp"
#include "mct/spec.hpp"

#include <vector>

namespace fixtures {

inline constexpr const char* example1_spec_text =
    ".n 3\n"
    "000 001\n"
    "001 000\n"
    "010 110\n"
    "011 111\n"
    "100 101\n"
    "101 100\n"
    "110 011\n"
    "111 010\n";

inline constexpr const char* example2_spec_text =
    ".n 3\n"
    "000 00-\n"
    "001 00-\n"
    "010 11-\n"
    "011 ---\n"
    "100 101\n"
    "101 100\n"
    "110 011\n"
    "111 010\n";

inline mct::Circuit from_gates(int n, int m, const std::vector<mct::Gate>& gates) {
    mct::Circuit circuit(n, m);
    for (std::size_t i = 0; i < gates.size(); ++i) {
        circuit.set_slot(static_cast<int>(i + 1), gates[i]);
    }
    return circuit;
}

/// CNOT on qubit 1 controlled by 2; Toffoli on 3 controlled by 1,2; NOT on 3.
inline mct::Circuit example1_circuit() {
    return from_gates(3, 3, {mct::Gate(1, {2}), mct::Gate(3, {1, 2}), mct::Gate(3)});
}

/// CNOT on qubit 1 controlled by 2; NOT on 3.
inline mct::Circuit example2_circuit() {
    return from_gates(3, 2, {mct::Gate(1, {2}), mct::Gate(3)});
}

inline mct::Circuit swap2_before() {
    return from_gates(4, 2, {mct::Gate(4, {1, 3}), mct::Gate(2, {3})});
}

inline mct::Circuit swap2_after() {
    return from_gates(4, 2, {mct::Gate(2, {3}), mct::Gate(4, {1, 3})});
}

inline mct::Circuit swap3_before() {
    return from_gates(4, 2, {mct::Gate(3, {1}), mct::Gate(3, {2, 4})});
}

inline mct::Circuit swap3_after() {
    return from_gates(4, 2, {mct::Gate(3, {2, 4}), mct::Gate(3, {1})});
}

// The six best-known circuits shipped as cost fixtures, transcribed from
// their diagrams. Expected quantum costs: 47, 30, 18, 17, 16, 17.

inline mct::Circuit rd53_m11() {
    return from_gates(7, 11,
                      {mct::Gate(6, {1}), mct::Gate(1, {4}), mct::Gate(3, {6}),
                       mct::Gate(6, {1, 3}), mct::Gate(3, {4}), mct::Gate(7, {2, 3, 6}),
                       mct::Gate(6, {2, 3}), mct::Gate(2, {3}), mct::Gate(7, {2, 5, 6}),
                       mct::Gate(6, {2, 5}), mct::Gate(5, {2})});
}

inline mct::Circuit four_mod7_v0_m10() {
    return from_gates(5, 10,
                      {mct::Gate(1, {5}), mct::Gate(5, {2}), mct::Gate(2, {3}),
                       mct::Gate(1, {2, 5}), mct::Gate(5, {1, 4}), mct::Gate(1, {3, 5}),
                       mct::Gate(5, {1, 4}), mct::Gate(1, {5}), mct::Gate(3, {1, 4}),
                       mct::Gate(4, {1})});
}

inline mct::Circuit decod24_enable_m6() {
    return from_gates(6, 6,
                      {mct::Gate(4, {1, 3}), mct::Gate(3, {4}), mct::Gate(6, {2, 4}),
                       mct::Gate(4, {6}), mct::Gate(5, {2, 3}), mct::Gate(3, {5})});
}

inline mct::Circuit one_two_three_v0_m9() {
    return from_gates(5, 9,
                      {mct::Gate(3, {4}), mct::Gate(4, {5}), mct::Gate(1, {4}),
                       mct::Gate(4, {1, 3}), mct::Gate(3, {4}), mct::Gate(2, {3, 5}),
                       mct::Gate(4, {2}), mct::Gate(3, {4}), mct::Gate(5, {2})});
}

inline mct::Circuit one_two_three_v1_m8() {
    return from_gates(5, 8,
                      {mct::Gate(3, {4}), mct::Gate(4, {5}), mct::Gate(2, {4}),
                       mct::Gate(4, {2, 3}), mct::Gate(1, {4, 5}), mct::Gate(3, {1}),
                       mct::Gate(4, {3}), mct::Gate(5, {1})});
}

inline mct::Circuit one_two_three_v3_m9() {
    return from_gates(5, 9,
                      {mct::Gate(2, {5}), mct::Gate(4, {3}), mct::Gate(3, {5}),
                       mct::Gate(1, {3}), mct::Gate(3, {1, 4}), mct::Gate(5, {4}),
                       mct::Gate(4, {2, 3}), mct::Gate(3, {4}), mct::Gate(5, {3})});
}

} // namespace fixtures
