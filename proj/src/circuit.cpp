#include "mct/circuit.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace mct {

Gate::Gate(int target, std::uint32_t control_mask)
    : target_(target), controls_(control_mask) {
    if (target < 1 || target > max_qubits) {
        throw std::invalid_argument("gate target " + std::to_string(target) + " out of range");
    }
    if (control_mask >> max_qubits) {
        throw std::invalid_argument("gate control set exceeds the supported qubit range");
    }
    if (control_mask & (1u << (target - 1))) {
        throw std::invalid_argument("gate target " + std::to_string(target) +
                                    " cannot also be a control");
    }
}

Gate::Gate(int target, std::initializer_list<int> control_qubits) : Gate(target) {
    for (int q : control_qubits) {
        if (q < 1 || q > max_qubits) {
            throw std::invalid_argument("gate control " + std::to_string(q) + " out of range");
        }
        controls_ |= 1u << (q - 1);
    }
    if (controls_ & (1u << (target - 1))) {
        throw std::invalid_argument("gate target " + std::to_string(target) +
                                    " cannot also be a control");
    }
}

int Gate::control_count() const {
    return std::popcount(controls_);
}

bool Gate::controls_qubit(int qubit) const {
    assert(qubit >= 1 && qubit <= max_qubits);
    return (controls_ >> (qubit - 1)) & 1u;
}

std::vector<int> Gate::controls() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(control_count()));
    for (int q = 1; q <= max_qubits; ++q) {
        if (controls_qubit(q)) {
            out.push_back(q);
        }
    }
    return out;
}

bool Gate::fits(int qubit_count) const {
    if (target_ > qubit_count) {
        return false;
    }
    return (controls_ >> qubit_count) == 0;
}

Circuit::Circuit(int qubit_count, int slot_count) : n_(qubit_count) {
    if (qubit_count < 1 || qubit_count > max_qubits) {
        throw std::invalid_argument("circuit qubit count must be in [1, " +
                                    std::to_string(max_qubits) + "]");
    }
    if (slot_count < 0) {
        throw std::invalid_argument("circuit slot count must be non-negative");
    }
    slots_.assign(static_cast<std::size_t>(slot_count), std::nullopt);
}

int Circuit::gate_count() const {
    return static_cast<int>(std::count_if(slots_.begin(), slots_.end(),
                                          [](const auto& s) { return s.has_value(); }));
}

const std::optional<Gate>& Circuit::slot(int d) const {
    assert(d >= 1 && d <= slot_count());
    return slots_[static_cast<std::size_t>(d - 1)];
}

void Circuit::set_slot(int d, std::optional<Gate> gate) {
    assert(d >= 1 && d <= slot_count());
    if (gate && !gate->fits(n_)) {
        throw std::invalid_argument("gate does not fit a " + std::to_string(n_) +
                                    "-qubit circuit");
    }
    slots_[static_cast<std::size_t>(d - 1)] = std::move(gate);
}

namespace {

[[noreturn]] void fail_parse(std::size_t line_no, const std::string& message) {
    std::ostringstream os;
    os << "line " << line_no << ": " << message;
    throw parse_error(os.str());
}

int parse_qubit_token(std::size_t line_no, const std::string& token, char prefix) {
    if (token.size() < 2 || token[0] != prefix) {
        fail_parse(line_no, "expected '" + std::string(1, prefix) + "<qubit>', got '" + token + "'");
    }
    int value = 0;
    try {
        value = std::stoi(token.substr(1));
    } catch (const std::exception&) {
        fail_parse(line_no, "invalid qubit in token '" + token + "'");
    }
    if (value < 1 || value > max_qubits) {
        fail_parse(line_no, "qubit in token '" + token + "' out of range");
    }
    return value;
}

} // namespace

Circuit parse_circuit(std::string_view text) {
    std::istringstream stream{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;

    int n = -1;
    int m = -1;
    std::vector<std::optional<Gate>> slots;
    bool saw_header = false;

    while (std::getline(stream, raw)) {
        ++line_no;
        std::string line = raw;
        if (std::size_t hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        for (std::string tok; ls >> tok;) {
            tokens.push_back(tok);
        }
        if (tokens.empty()) {
            continue;
        }

        if (!saw_header) {
            if (tokens.size() != 4 || tokens[0] != ".n" || tokens[2] != ".m") {
                fail_parse(line_no, "expected header '.n <int> .m <int>'");
            }
            try {
                n = std::stoi(tokens[1]);
                m = std::stoi(tokens[3]);
            } catch (const std::exception&) {
                fail_parse(line_no, "invalid header integers");
            }
            if (n < 1 || n > max_qubits) {
                fail_parse(line_no, "qubit count must be in [1, " + std::to_string(max_qubits) + "]");
            }
            if (m < 0) {
                fail_parse(line_no, "slot count must be non-negative");
            }
            saw_header = true;
            continue;
        }

        if (static_cast<int>(slots.size()) == m) {
            fail_parse(line_no, "more slot lines than declared by .m");
        }
        if (tokens.size() == 1 && tokens[0] == "E") {
            slots.push_back(std::nullopt);
            continue;
        }
        int target = parse_qubit_token(line_no, tokens[0], 'T');
        std::uint32_t controls = 0;
        for (std::size_t i = 1; i < tokens.size(); ++i) {
            int q = parse_qubit_token(line_no, tokens[i], 'C');
            if (controls & (1u << (q - 1))) {
                fail_parse(line_no, "duplicate control C" + std::to_string(q));
            }
            controls |= 1u << (q - 1);
        }
        try {
            Gate gate(target, controls);
            if (!gate.fits(n)) {
                fail_parse(line_no, "gate uses qubits beyond .n " + std::to_string(n));
            }
            slots.push_back(gate);
        } catch (const std::invalid_argument& e) {
            fail_parse(line_no, e.what());
        }
    }

    if (!saw_header) {
        throw parse_error("missing circuit header '.n <int> .m <int>'");
    }
    if (static_cast<int>(slots.size()) != m) {
        throw parse_error("expected " + std::to_string(m) + " slot lines, found " +
                          std::to_string(slots.size()));
    }

    Circuit circuit(n, m);
    for (int d = 1; d <= m; ++d) {
        circuit.set_slot(d, slots[static_cast<std::size_t>(d - 1)]);
    }
    return circuit;
}

std::string format_circuit(const Circuit& circuit) {
    std::ostringstream os;
    os << ".n " << circuit.qubit_count() << " .m " << circuit.slot_count() << '\n';
    for (int d = 1; d <= circuit.slot_count(); ++d) {
        const auto& slot = circuit.slot(d);
        if (!slot) {
            os << "E\n";
            continue;
        }
        os << 'T' << slot->target();
        for (int q : slot->controls()) {
            os << " C" << q;
        }
        os << '\n';
    }
    return os.str();
}

std::vector<int> zero_qubits(const BasisState& state) {
    std::vector<int> out;
    for (int q = 1; q <= state.qubit_count(); ++q) {
        if (state.bit(q) == 0) {
            out.push_back(q);
        }
    }
    return out;
}

bool swap1_applies(const std::optional<Gate>& first, const std::optional<Gate>& second) {
    return !first.has_value() && second.has_value();
}

bool swap2_applies(const std::optional<Gate>& first, const std::optional<Gate>& second) {
    if (!first || !second) {
        return false;
    }
    const int q = first->target();
    const int r = second->target();
    return q > r && !second->controls_qubit(q) && !first->controls_qubit(r);
}

bool swap3_applies(const std::optional<Gate>& first, const std::optional<Gate>& second) {
    if (!first || !second) {
        return false;
    }
    return first->target() == second->target() &&
           first->control_count() < second->control_count();
}

bool adjacent_pair_canonical(const std::optional<Gate>& first, const std::optional<Gate>& second) {
    return !swap1_applies(first, second) && !swap2_applies(first, second) &&
           !swap3_applies(first, second);
}

bool is_canonical(const Circuit& circuit) {
    for (int d = 1; d + 1 <= circuit.slot_count(); ++d) {
        if (!adjacent_pair_canonical(circuit.slot(d), circuit.slot(d + 1))) {
            return false;
        }
    }
    return true;
}

Circuit canonicalize(const Circuit& circuit) {
    std::vector<std::optional<Gate>> slots = circuit.slots();
    const std::size_t m = slots.size();

    // Swap 1 exhausted first: gates keep their order, empty slots sink to the
    // tail and stay there (swaps 2 and 3 only exchange two gates).
    std::stable_partition(slots.begin(), slots.end(),
                          [](const auto& s) { return s.has_value(); });

    auto exhaust = [&](auto applies) {
        bool any = false;
        for (;;) {
            bool applied = false;
            for (std::size_t d = 0; d + 1 < m; ++d) {
                if (applies(slots[d], slots[d + 1])) {
                    std::swap(slots[d], slots[d + 1]);
                    applied = true;
                    any = true;
                    break;
                }
            }
            if (!applied) {
                return any;
            }
        }
    };

    for (;;) {
        exhaust([](const auto& a, const auto& b) { return swap2_applies(a, b); });
        if (!exhaust([](const auto& a, const auto& b) { return swap3_applies(a, b); })) {
            break;
        }
    }

    Circuit result(circuit.qubit_count(), static_cast<int>(m));
    for (std::size_t d = 0; d < m; ++d) {
        result.set_slot(static_cast<int>(d + 1), slots[d]);
    }
    assert(is_canonical(result));
    return result;
}

} // namespace mct
