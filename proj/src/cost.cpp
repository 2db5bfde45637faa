#include "mct/cost.hpp"

#include "mct/errors.hpp"

#include <cassert>
#include <sstream>

namespace mct {

namespace {

std::int64_t wide_gate_cost(int controls) {
    return (std::int64_t{1} << (controls + 1)) - 3;
}

} // namespace

const QuantumCostTable& QuantumCostTable::standard() {
    static const QuantumCostTable table = [] {
        QuantumCostTable t;
        const std::int64_t zero_slack[] = {1, 1, 5, 13, 29, 62, 125};
        for (int p = 0; p <= 6; ++p) {
            t.cells_[p][0] = zero_slack[p];
        }
        t.cells_[5][1] = 52;
        t.cells_[6][1] = 80;
        t.cells_[4][2] = 26;
        t.cells_[5][3] = 38;
        t.cells_[6][4] = 50;
        t.validate();
        return t;
    }();
    return table;
}

QuantumCostTable QuantumCostTable::with_overrides(std::string_view text) {
    QuantumCostTable table = standard();

    std::istringstream stream{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        std::string line = raw;
        if (std::size_t hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream ls(line);
        long long p = 0, s = 0, cost = 0;
        if (!(ls >> p)) {
            continue; // blank or comment-only line
        }
        std::string trailing;
        if (!(ls >> s >> cost) || (ls >> trailing)) {
            throw parse_error("cost table line " + std::to_string(line_no) +
                              ": expected '<p> <s> <cost>'");
        }
        if (p < 0 || s < 0 || cost <= 0) {
            throw parse_error("cost table line " + std::to_string(line_no) +
                              ": indices must be non-negative and cost positive");
        }
        if (p >= 7 && s == 0 && cost != wide_gate_cost(static_cast<int>(p))) {
            throw parse_error("cost table line " + std::to_string(line_no) +
                              ": zero-slack cost for p >= 7 is fixed at 2^(p+1)-3");
        }
        table.cells_[static_cast<int>(p)][static_cast<int>(s)] = cost;
    }
    table.validate();
    return table;
}

void QuantumCostTable::validate() const {
    for (const auto& [p, row] : cells_) {
        // Effective cost at the row's smallest explicit slack must not exceed
        // the value inherited from smaller slacks (the built-in cell or the
        // wide-gate count); each later cell must not exceed its predecessor.
        std::int64_t previous = p >= 7 ? wide_gate_cost(p) : row.begin()->second;
        for (const auto& [s, value] : row) {
            if (value > previous) {
                throw parse_error("cost table not monotone: p=" + std::to_string(p) +
                                  " s=" + std::to_string(s) + " exceeds the smaller-slack cost");
            }
            previous = value;
        }
    }
}

std::int64_t QuantumCostTable::cost(int controls, int slack) const {
    assert(controls >= 0 && slack >= 0);
    auto row = cells_.find(controls);
    if (row != cells_.end()) {
        // Largest explicit slack not exceeding the requested one.
        auto it = row->second.upper_bound(slack);
        if (it != row->second.begin()) {
            return std::prev(it)->second;
        }
    }
    return wide_gate_cost(controls);
}

std::int64_t gate_cost(int controls, int slack) {
    return QuantumCostTable::standard().cost(controls, slack);
}

std::int64_t circuit_cost(const Circuit& circuit) {
    return circuit_cost(circuit, QuantumCostTable::standard());
}

std::int64_t circuit_cost(const Circuit& circuit, const QuantumCostTable& table) {
    std::int64_t total = 0;
    for (int d = 1; d <= circuit.slot_count(); ++d) {
        const auto& slot = circuit.slot(d);
        if (!slot) {
            continue;
        }
        const int p = slot->control_count();
        total += table.cost(p, circuit.qubit_count() - 1 - p);
    }
    return total;
}

} // namespace mct
