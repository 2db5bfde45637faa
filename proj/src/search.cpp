#include "mct/search.hpp"

#include "mct/cost.hpp"
#include "mct/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <chrono>
#include <limits>
#include <mutex>
#include <thread>

namespace mct {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::int64_t cost_infinity = std::numeric_limits<std::int64_t>::max();

std::vector<std::uint32_t> control_masks_by_size_then_lex(int n, int target) {
    std::vector<int> candidates;
    for (int q = 1; q <= n; ++q) {
        if (q != target) {
            candidates.push_back(q);
        }
    }
    std::vector<std::uint32_t> masks;
    masks.reserve(std::size_t{1} << candidates.size());
    const int pool = static_cast<int>(candidates.size());
    for (int size = 0; size <= pool; ++size) {
        // Standard lexicographic combination walk over the ascending pool.
        std::vector<int> pick(static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i) {
            pick[static_cast<std::size_t>(i)] = i;
        }
        for (;;) {
            std::uint32_t mask = 0;
            for (int i : pick) {
                mask |= 1u << (candidates[static_cast<std::size_t>(i)] - 1);
            }
            masks.push_back(mask);
            int j = size - 1;
            while (j >= 0 && pick[static_cast<std::size_t>(j)] == pool - size + j) {
                --j;
            }
            if (j < 0) {
                break;
            }
            ++pick[static_cast<std::size_t>(j)];
            for (int i = j + 1; i < size; ++i) {
                pick[static_cast<std::size_t>(i)] = pick[static_cast<std::size_t>(i - 1)] + 1;
            }
        }
    }
    return masks;
}

// Precomputed per-gate data in index space: controls satisfied iff
// (state & ctrl_bits) == ctrl_bits, then xor tgt_bit.
struct GateOp {
    Gate gate;
    std::uint32_t ctrl_bits = 0;
    std::uint32_t tgt_bit = 0;
    std::int64_t cost = 0;
};

std::vector<GateOp> prepare_ops(int n) {
    std::vector<GateOp> ops;
    for (const Gate& gate : all_gates(n)) {
        std::uint32_t ctrl_bits = 0;
        for (int q : gate.controls()) {
            ctrl_bits |= 1u << (n - q);
        }
        ops.push_back({gate, ctrl_bits, 1u << (n - gate.target()),
                       gate_cost(gate.control_count(), n - gate.width())});
    }
    return ops;
}

// Row patterns in index space: matched iff (state & care) == value.
struct RowMask {
    std::uint32_t care = 0;
    std::uint32_t value = 0;
};

std::vector<RowMask> prepare_rows(const Specification& spec) {
    const int n = spec.qubit_count();
    std::vector<RowMask> rows(spec.state_count());
    for (std::uint32_t s = 0; s < spec.state_count(); ++s) {
        const OutputPattern& pattern = spec.row(s);
        for (int q = 1; q <= n; ++q) {
            if (pattern.trit(q) == Trit::DontCare) {
                continue;
            }
            rows[s].care |= 1u << (n - q);
            if (pattern.trit(q) == Trit::One) {
                rows[s].value |= 1u << (n - q);
            }
        }
    }
    return rows;
}

// Pairwise symmetry filter for slots (d, d+1), both holding gates; swap 1
// never applies to such a pair.
bool pair_unswappable(const GateOp& first, const GateOp& second) {
    const Gate& a = first.gate;
    const Gate& b = second.gate;
    if (a.target() == b.target()) {
        return a.control_count() >= b.control_count();
    }
    if (a.target() > b.target()) {
        return b.controls_qubit(a.target()) || a.controls_qubit(b.target());
    }
    return true;
}

struct SharedSearch {
    std::atomic<std::int64_t> incumbent_cost{cost_infinity};
    std::atomic<bool> stop{false};       // timeout or first-witness stop
    std::atomic<bool> timed_out{false};
    std::mutex best_mutex;
    std::vector<int> best_choices;       // op index per slot, -1 = empty
    std::int64_t best_cost = cost_infinity;
    std::size_t best_root = 0;           // first-slot branch of the best, for merges
    bool have_best = false;
};

class Worker {
public:
    Worker(int n, int m, const std::vector<GateOp>& ops, const std::vector<RowMask>& rows,
           bool symmetry, bool stop_on_first, Clock::time_point deadline, bool has_deadline,
           SharedSearch& shared)
        : n_(n), m_(m), ops_(ops), rows_(rows), symmetry_(symmetry),
          stop_on_first_(stop_on_first), deadline_(deadline), has_deadline_(has_deadline),
          shared_(shared) {
        const std::uint32_t states = 1u << n_;
        layers_.assign(static_cast<std::size_t>(m_) + 1, std::vector<std::uint32_t>(states));
        for (std::uint32_t s = 0; s < states; ++s) {
            layers_[0][s] = s;
        }
        choices_.assign(static_cast<std::size_t>(m_), -1);
    }

    std::uint64_t nodes() const { return nodes_; }

    /// Explore the subtree under first-slot branch `root` (ops_.size() means
    /// the all-empty circuit).
    void run_root(std::size_t root) {
        root_ = root;
        if (root == ops_.size()) {
            ++nodes_;
            tick();
            if (current_bound() > 0) {
                leaf(0, 0);
            }
            return;
        }
        const std::int64_t cost = ops_[root].cost;
        if (cost >= current_bound()) {
            return;
        }
        ++nodes_;
        tick();
        apply(1, root);
        choices_[0] = static_cast<int>(root);
        if (m_ == 1) {
            leaf(1, cost);
        } else {
            descend(2, cost);
        }
    }

private:
    std::int64_t current_bound() const {
        return stop_on_first_ ? cost_infinity
                              : shared_.incumbent_cost.load(std::memory_order_relaxed);
    }

    void tick() {
        if (++tick_counter_ % 4096 != 0) {
            return;
        }
        if (has_deadline_ && Clock::now() >= deadline_) {
            shared_.timed_out.store(true, std::memory_order_relaxed);
            shared_.stop.store(true, std::memory_order_relaxed);
        }
    }

    void apply(int depth, std::size_t op_index) {
        const GateOp& op = ops_[op_index];
        const std::vector<std::uint32_t>& prev = layers_[static_cast<std::size_t>(depth - 1)];
        std::vector<std::uint32_t>& next = layers_[static_cast<std::size_t>(depth)];
        for (std::size_t s = 0; s < prev.size(); ++s) {
            const std::uint32_t v = prev[s];
            next[s] = (v & op.ctrl_bits) == op.ctrl_bits ? v ^ op.tgt_bit : v;
        }
    }

    bool matches_all(const std::vector<std::uint32_t>& outputs) const {
        for (std::size_t s = 0; s < outputs.size(); ++s) {
            const RowMask& row = rows_[s];
            if ((outputs[s] & row.care) != row.value) {
                return false;
            }
        }
        return true;
    }

    // Accept the assignment choices_[0 .. filled-1] with trailing empties.
    void leaf(int filled, std::int64_t cost) {
        if (!matches_all(layers_[static_cast<std::size_t>(filled)])) {
            return;
        }
        std::lock_guard<std::mutex> lock(shared_.best_mutex);
        const bool better =
            !shared_.have_best || cost < shared_.best_cost ||
            (cost == shared_.best_cost && root_ < shared_.best_root);
        if (better) {
            shared_.have_best = true;
            shared_.best_cost = cost;
            shared_.best_root = root_;
            shared_.best_choices = choices_;
            std::fill(shared_.best_choices.begin() + filled, shared_.best_choices.end(), -1);
            if (!stop_on_first_) {
                shared_.incumbent_cost.store(cost, std::memory_order_relaxed);
            }
        }
        if (stop_on_first_) {
            shared_.stop.store(true, std::memory_order_relaxed);
        }
    }

    void descend(int depth, std::int64_t cost) {
        if (shared_.stop.load(std::memory_order_relaxed)) {
            return;
        }
        const int prev_choice = choices_[static_cast<std::size_t>(depth - 2)];
        for (std::size_t i = 0; i < ops_.size(); ++i) {
            if (symmetry_ && prev_choice >= 0 &&
                !pair_unswappable(ops_[static_cast<std::size_t>(prev_choice)], ops_[i])) {
                continue;
            }
            const std::int64_t next_cost = cost + ops_[i].cost;
            if (next_cost >= current_bound()) {
                continue;
            }
            ++nodes_;
            tick();
            if (shared_.stop.load(std::memory_order_relaxed)) {
                return;
            }
            apply(depth, i);
            choices_[static_cast<std::size_t>(depth - 1)] = static_cast<int>(i);
            if (depth == m_) {
                leaf(depth, next_cost);
            } else {
                descend(depth + 1, next_cost);
            }
        }
        // Empty slot: all later slots are forced empty too, so this branch is
        // a leaf evaluated at the current layer.
        choices_[static_cast<std::size_t>(depth - 1)] = -1;
        ++nodes_;
        tick();
        if (shared_.stop.load(std::memory_order_relaxed)) {
            return;
        }
        if (cost < current_bound()) {
            leaf(depth - 1, cost);
        }
    }

    int n_;
    int m_;
    const std::vector<GateOp>& ops_;
    const std::vector<RowMask>& rows_;
    bool symmetry_;
    bool stop_on_first_;
    Clock::time_point deadline_;
    bool has_deadline_;
    SharedSearch& shared_;

    std::vector<std::vector<std::uint32_t>> layers_;
    std::vector<int> choices_;
    std::size_t root_ = 0;
    std::uint64_t nodes_ = 0;
    std::uint64_t tick_counter_ = 0;
};

Circuit circuit_from_choices(int n, const std::vector<GateOp>& ops,
                             const std::vector<int>& choices) {
    Circuit circuit(n, static_cast<int>(choices.size()));
    for (std::size_t d = 0; d < choices.size(); ++d) {
        if (choices[d] >= 0) {
            circuit.set_slot(static_cast<int>(d + 1),
                             ops[static_cast<std::size_t>(choices[d])].gate);
        }
    }
    return circuit;
}

SearchOutcome run_search(const Specification& spec, int gate_slots, const SearchOptions& options,
                         bool stop_on_first) {
    const auto start = Clock::now();
    const int n = spec.qubit_count();

    SearchOutcome outcome;

    if (!stop_on_first && !validate_realizable(spec)) {
        outcome.status = SearchStatus::Infeasible;
        outcome.proof = "specification unrealizable: no bijection matches the output patterns";
        outcome.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
        return outcome;
    }

    const std::vector<GateOp> ops = prepare_ops(n);
    const std::vector<RowMask> rows = prepare_rows(spec);

    SharedSearch shared;
    if (!stop_on_first && options.initial_upper_bound) {
        shared.incumbent_cost.store(*options.initial_upper_bound, std::memory_order_relaxed);
    }
    const bool has_deadline = options.time_limit_seconds > 0;
    const auto deadline =
        start + std::chrono::duration_cast<Clock::duration>(
                    std::chrono::duration<double>(options.time_limit_seconds));

    // Branch order at every slot, the first included: gates (targets
    // ascending, control sets by size then lexicographically), then empty.
    const std::size_t root_count = gate_slots == 0 ? 1 : ops.size() + 1;
    auto root_of_task = [&](std::size_t task) {
        return gate_slots == 0 ? ops.size() : task;
    };

    const int threads = std::max(1, options.threads);
    std::uint64_t total_nodes = 0;
    if (threads == 1 || root_count == 1) {
        Worker worker(n, gate_slots, ops, rows, options.symmetry_pruning, stop_on_first,
                      deadline, has_deadline, shared);
        for (std::size_t task = 0; task < root_count; ++task) {
            if (shared.stop.load(std::memory_order_relaxed)) {
                break;
            }
            worker.run_root(root_of_task(task));
        }
        total_nodes = worker.nodes();
    } else {
        std::atomic<std::size_t> next_task{0};
        std::atomic<std::uint64_t> nodes{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                Worker worker(n, gate_slots, ops, rows, options.symmetry_pruning,
                              stop_on_first, deadline, has_deadline, shared);
                for (;;) {
                    const std::size_t task = next_task.fetch_add(1);
                    if (task >= root_count || shared.stop.load(std::memory_order_relaxed)) {
                        break;
                    }
                    worker.run_root(root_of_task(task));
                }
                nodes.fetch_add(worker.nodes());
            });
        }
        for (std::thread& t : pool) {
            t.join();
        }
        total_nodes = nodes.load();
    }

    outcome.nodes_explored = total_nodes;
    outcome.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();

    const bool timed_out = shared.timed_out.load(std::memory_order_relaxed);
    if (shared.have_best) {
        Circuit witness = circuit_from_choices(n, ops, shared.best_choices);
        if (!options.symmetry_pruning) {
            witness = canonicalize(witness);
        }
        assert(is_canonical(witness));
        outcome.best_circuit = witness;
        outcome.best_cost = shared.best_cost;
    }

    if (stop_on_first) {
        if (shared.have_best) {
            outcome.status = SearchStatus::Feasible;
            outcome.proof = "feasibility witness found; cost not proven minimal";
        } else if (timed_out) {
            outcome.status = SearchStatus::TimedOut;
        } else {
            outcome.status = SearchStatus::Infeasible;
            outcome.proof = "exhaustive over canonical circuits with <= " +
                            std::to_string(gate_slots) + " slots";
        }
        return outcome;
    }
    if (timed_out) {
        outcome.status = SearchStatus::TimedOut;
        return outcome;
    }

    std::string coverage = options.symmetry_pruning
                               ? "exhaustive over canonical circuits with <= " +
                                     std::to_string(gate_slots) + " slots"
                               : "exhaustive over circuits with <= " +
                                     std::to_string(gate_slots) +
                                     " slots (empty slots normalized to the tail)";
    if (options.initial_upper_bound) {
        coverage += "; restricted to cost < " + std::to_string(*options.initial_upper_bound);
    }
    outcome.status = shared.have_best ? SearchStatus::Optimal : SearchStatus::Infeasible;
    outcome.proof = coverage;
    return outcome;
}

} // namespace

std::vector<Gate> all_gates(int qubit_count) {
    assert(qubit_count >= 1 && qubit_count <= max_qubits);
    std::vector<Gate> gates;
    gates.reserve(static_cast<std::size_t>(qubit_count) << (qubit_count - 1));
    for (int target = 1; target <= qubit_count; ++target) {
        for (std::uint32_t mask : control_masks_by_size_then_lex(qubit_count, target)) {
            gates.emplace_back(target, mask);
        }
    }
    return gates;
}

SearchOutcome synthesize(const Specification& spec, int gate_slots, SearchOptions options) {
    if (gate_slots < 0) {
        throw std::invalid_argument("gate budget must be non-negative");
    }
    return run_search(spec, gate_slots, options, /*stop_on_first=*/false);
}

SearchOutcome brute_force_min_cost(const Specification& spec, int gate_slots) {
    if (spec.qubit_count() > 3 || gate_slots > 3) {
        throw std::invalid_argument("brute force oracle is guarded to n <= 3, m <= 3");
    }
    if (gate_slots < 0) {
        throw std::invalid_argument("gate budget must be non-negative");
    }
    const auto start = Clock::now();
    const int n = spec.qubit_count();
    const std::vector<Gate> gates = all_gates(n);
    const std::size_t options_per_slot = gates.size() + 1; // last option = empty

    SearchOutcome outcome;
    std::optional<Circuit> best;
    std::int64_t best_cost = cost_infinity;

    std::vector<std::size_t> pick(static_cast<std::size_t>(gate_slots), 0);
    for (;;) {
        Circuit circuit(n, gate_slots);
        for (int d = 1; d <= gate_slots; ++d) {
            const std::size_t choice = pick[static_cast<std::size_t>(d - 1)];
            if (choice < gates.size()) {
                circuit.set_slot(d, gates[choice]);
            }
        }
        ++outcome.nodes_explored;
        if (satisfies(circuit, spec)) {
            const std::int64_t cost = circuit_cost(circuit);
            if (cost < best_cost) {
                best_cost = cost;
                best = circuit;
            }
        }

        int d = gate_slots - 1;
        while (d >= 0 && pick[static_cast<std::size_t>(d)] == options_per_slot - 1) {
            pick[static_cast<std::size_t>(d)] = 0;
            --d;
        }
        if (d < 0) {
            break;
        }
        ++pick[static_cast<std::size_t>(d)];
    }

    if (best) {
        outcome.status = SearchStatus::Optimal;
        outcome.best_circuit = canonicalize(*best);
        outcome.best_cost = best_cost;
    } else {
        outcome.status = SearchStatus::Infeasible;
    }
    outcome.proof = "exhaustive over all " + std::to_string(options_per_slot) + "^" +
                    std::to_string(gate_slots) + " slot assignments";
    outcome.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return outcome;
}

SearchOutcome prove_gate_infeasibility(const Specification& spec, int gate_slots,
                                       double time_limit_seconds) {
    if (gate_slots < 0) {
        throw std::invalid_argument("gate budget must be non-negative");
    }
    SearchOptions options;
    options.time_limit_seconds = time_limit_seconds;
    options.symmetry_pruning = true;
    return run_search(spec, gate_slots, options, /*stop_on_first=*/true);
}

} // namespace mct
