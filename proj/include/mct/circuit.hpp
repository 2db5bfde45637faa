#pragma once

#include "mct/spec.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mct {

/// One multiple-control Toffoli gate: a target qubit plus a set of control
/// qubits. The target flips exactly when every control reads 1; a gate with
/// no controls is a plain NOT.
class Gate {
public:
    explicit Gate(int target, std::uint32_t control_mask = 0);
    Gate(int target, std::initializer_list<int> control_qubits);

    int target() const { return target_; }
    /// Bit (q-1) is set iff qubit q is a control.
    std::uint32_t control_mask() const { return controls_; }
    int control_count() const;
    bool controls_qubit(int qubit) const;
    /// Control qubits in ascending order.
    std::vector<int> controls() const;
    /// Total qubits the gate touches: 1 + |controls|.
    int width() const { return 1 + control_count(); }
    /// True iff every touched qubit lies in 1..qubit_count.
    bool fits(int qubit_count) const;

    friend bool operator==(const Gate&, const Gate&) = default;

private:
    int target_;
    std::uint32_t controls_;
};

/// An ordered sequence of gate slots. Each slot is either empty or holds one
/// MCT gate; the slot count m is the gate budget the circuit was declared
/// with, so empty slots are meaningful and preserved.
class Circuit {
public:
    Circuit(int qubit_count, int slot_count);

    int qubit_count() const { return n_; }
    int slot_count() const { return static_cast<int>(slots_.size()); }
    int gate_count() const;

    /// Slots are 1-based, matching the column numbering of circuit diagrams.
    const std::optional<Gate>& slot(int d) const;
    void set_slot(int d, std::optional<Gate> gate);
    const std::vector<std::optional<Gate>>& slots() const { return slots_; }

    friend bool operator==(const Circuit&, const Circuit&) = default;

private:
    int n_;
    std::vector<std::optional<Gate>> slots_;
};

/// Parse the circuit text format: a header ".n <int> .m <int>" followed by
/// one line per slot, either "E" or "T<q> C<q1> C<q2> ...". '#' comments and
/// blank lines are ignored.
Circuit parse_circuit(std::string_view text);

/// Serialize in the same format; controls are emitted in ascending order, so
/// output is canonical for a given circuit.
std::string format_circuit(const Circuit& circuit);

/// Qubits that read 0 in the given state, ascending.
std::vector<int> zero_qubits(const BasisState& state);

// The three cost-preserving exchanges of adjacent slots. Each takes the pair
// in circuit order (slot d, slot d+1) and reports whether exchanging them is
// permitted.

/// Empty slot directly before a gate.
bool swap1_applies(const std::optional<Gate>& first, const std::optional<Gate>& second);
/// Distinct targets q > r where neither target line carries the other gate's
/// control.
bool swap2_applies(const std::optional<Gate>& first, const std::optional<Gate>& second);
/// Equal targets with the earlier gate strictly smaller.
bool swap3_applies(const std::optional<Gate>& first, const std::optional<Gate>& second);

/// True iff none of the three swaps applies to this adjacent pair.
bool adjacent_pair_canonical(const std::optional<Gate>& first, const std::optional<Gate>& second);

/// True iff no adjacent slot pair admits any swap.
bool is_canonical(const Circuit& circuit);

/// Apply swaps until none is possible. Empty slots move to the tail first;
/// afterwards swap 2 (which strictly lowers the target vector
/// lexicographically) and swap 3 (which sorts same-target runs by control
/// count) alternate until both are exhausted. The result induces the same
/// permutation at the same cost as the input.
Circuit canonicalize(const Circuit& circuit);

} // namespace mct
