#pragma once

#include "mct/circuit.hpp"
#include "mct/spec.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace mct {

/// A bijection on the 2^n basis states, stored densely by state index.
class Permutation {
public:
    /// Verifies bijectivity; a circuit-induced mapping failing this check is
    /// a defect, so the failure surfaces as std::logic_error.
    Permutation(int qubit_count, std::vector<std::uint32_t> images);
    static Permutation identity(int qubit_count);

    int qubit_count() const { return n_; }
    const std::vector<std::uint32_t>& images() const { return images_; }

    BasisState image(const BasisState& state) const;
    std::uint32_t image_index(std::uint32_t state_index) const;

    Permutation inverse() const;
    bool is_identity() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    int n_;
    std::vector<std::uint32_t> images_;
};

/// Transition rule: the target flips iff every control reads 1 (vacuously
/// true for a gate without controls).
BasisState apply_gate(const Gate& gate, const BasisState& state);

/// Empty slots leave the state unchanged.
BasisState apply_slot(const std::optional<Gate>& slot, const BasisState& state);

/// Left-to-right application of all slots.
BasisState run_circuit(const Circuit& circuit, const BasisState& state);

/// The permutation the circuit performs on all basis states.
Permutation induced_permutation(const Circuit& circuit);

/// True iff every input lands on a state matching its output pattern.
bool satisfies(const Circuit& circuit, const Specification& spec);

/// Smallest input state violating its pattern, or nullopt when the circuit
/// satisfies the specification.
std::optional<BasisState> first_violation(const Circuit& circuit, const Specification& spec);

} // namespace mct
