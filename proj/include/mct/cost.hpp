#pragma once

#include "mct/circuit.hpp"

#include <cstdint>
#include <map>
#include <string_view>

namespace mct {

/// Best-known elementary-gate counts for one MCT gate, keyed by control count
/// p and slack count s (slack qubits are present in the circuit but untouched
/// by the gate; extra slack can cheapen wide gates).
///
/// The table stores explicit cells only. A lookup at (p, s) resolves to the
/// cell at the largest slack <= s for that p, so sparse rows behave like the
/// published table where a blank cell repeats the value above it. Columns
/// with no cells at all fall back to the generic wide-gate count 2^(p+1) - 3,
/// which applies at every slack; no cheaper decomposition with slack is known
/// for p >= 7, so that column is flat.
class QuantumCostTable {
public:
    /// The built-in table.
    static const QuantumCostTable& standard();

    /// The built-in table with cells replaced/added from override text, one
    /// cell per line: "<p> <s> <cost>". '#' comments and blank lines are
    /// ignored. Rejects overrides that would break monotonicity in slack or
    /// alter the fixed wide-gate count at zero slack.
    static QuantumCostTable with_overrides(std::string_view text);

    std::int64_t cost(int controls, int slack) const;

private:
    QuantumCostTable() = default;
    void validate() const;

    // p -> (s -> cost), both ascending.
    std::map<int, std::map<int, std::int64_t>> cells_;
};

/// Cost of a single gate with the given control and slack counts, from the
/// built-in table.
std::int64_t gate_cost(int controls, int slack);

/// Total cost of a circuit: each gate with p controls on n qubits is costed
/// at slack n - 1 - p; empty slots are free.
std::int64_t circuit_cost(const Circuit& circuit);
std::int64_t circuit_cost(const Circuit& circuit, const QuantumCostTable& table);

} // namespace mct
