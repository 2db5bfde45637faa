#pragma once

#include "mct/circuit.hpp"
#include "mct/spec.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mct {

enum class SearchStatus : std::uint8_t {
    Optimal,   ///< witness found and proven minimum-cost for the slot budget
    Feasible,  ///< witness found, minimality not claimed (feasibility probe)
    Infeasible,///< exhaustion proved no circuit fits the budget
    TimedOut,  ///< limit hit; best incumbent (if any) attached
};

struct SearchOutcome {
    SearchStatus status = SearchStatus::Infeasible;
    std::optional<Circuit> best_circuit;
    std::optional<std::int64_t> best_cost;
    /// Human-readable closure statement for Optimal/Infeasible results.
    std::string proof;
    std::uint64_t nodes_explored = 0;
    double elapsed_seconds = 0.0;
};

struct SearchOptions {
    double time_limit_seconds = 3600.0;
    /// Prune branches whose adjacent slot pair admits a swap; sound because
    /// every circuit has an unswappable equivalent of the same cost.
    bool symmetry_pruning = true;
    /// Start the incumbent bound below +inf: search only for circuits with
    /// cost strictly below this value.
    std::optional<std::int64_t> initial_upper_bound;
    /// Workers splitting the first-slot branches; cost/status results do not
    /// depend on the count. < 1 reads as 1.
    int threads = 1;
};

/// All possible gates on n qubits in the search's branch order: targets
/// ascending; per target, control sets by ascending size, ties broken
/// lexicographically. There are n * 2^(n-1) of them.
std::vector<Gate> all_gates(int qubit_count);

/// Exact minimum-quantum-cost synthesis by depth-first branch-and-bound over
/// the gate slots. Empty slots are normalized to the tail; an unrealizable
/// specification short-circuits to Infeasible.
SearchOutcome synthesize(const Specification& spec, int gate_slots, SearchOptions options = {});

/// Independent oracle: plain enumeration of all (1 + n*2^(n-1))^m slot
/// assignments with no pruning and no canonicalization. Guarded to n <= 3,
/// m <= 3; throws std::invalid_argument above that.
SearchOutcome brute_force_min_cost(const Specification& spec, int gate_slots);

/// Decide whether any circuit with the given slot budget meets the
/// specification: exhaustive canonical enumeration without cost bounding,
/// stopping at the first witness (status Feasible). Infeasible only on full
/// exhaustion within the limit.
SearchOutcome prove_gate_infeasibility(const Specification& spec, int gate_slots,
                                       double time_limit_seconds = 3600.0);

} // namespace mct
