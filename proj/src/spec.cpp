#include "mct/spec.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>

namespace mct {

namespace {

[[noreturn]] void fail_parse(std::size_t line_no, const std::string& message) {
    std::ostringstream os;
    os << "line " << line_no << ": " << message;
    throw parse_error(os.str());
}

std::vector<std::string> tokenize(std::string_view line) {
    std::vector<std::string> tokens;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) {
            ++pos;
        }
        std::size_t start = pos;
        while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) {
            ++pos;
        }
        if (pos > start) {
            tokens.emplace_back(line.substr(start, pos - start));
        }
    }
    return tokens;
}

} // namespace

BasisState::BasisState(std::uint32_t index, int qubit_count)
    : n_(qubit_count), index_(index) {
    assert(qubit_count >= 1 && qubit_count <= max_qubits);
    assert(index < (1u << qubit_count));
}

BasisState BasisState::from_string(std::string_view bits) {
    if (bits.empty() || bits.size() > static_cast<std::size_t>(max_qubits)) {
        throw parse_error("basis state '" + std::string(bits) + "' has unsupported length");
    }
    std::uint32_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw parse_error("basis state '" + std::string(bits) + "' contains non-binary character");
        }
        index = (index << 1) | static_cast<std::uint32_t>(c - '0');
    }
    return BasisState(index, static_cast<int>(bits.size()));
}

int BasisState::bit(int qubit) const {
    assert(qubit >= 1 && qubit <= n_);
    return static_cast<int>((index_ >> (n_ - qubit)) & 1u);
}

BasisState BasisState::with_flipped(int qubit) const {
    assert(qubit >= 1 && qubit <= n_);
    return BasisState(index_ ^ (1u << (n_ - qubit)), n_);
}

std::string BasisState::str() const {
    std::string out(static_cast<std::size_t>(n_), '0');
    for (int q = 1; q <= n_; ++q) {
        out[static_cast<std::size_t>(q - 1)] = static_cast<char>('0' + bit(q));
    }
    return out;
}

OutputPattern OutputPattern::from_string(std::string_view text) {
    if (text.empty() || text.size() > static_cast<std::size_t>(max_qubits)) {
        throw parse_error("output pattern '" + std::string(text) + "' has unsupported length");
    }
    OutputPattern pattern;
    pattern.trits_.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '0': pattern.trits_.push_back(Trit::Zero); break;
        case '1': pattern.trits_.push_back(Trit::One); break;
        case '-': pattern.trits_.push_back(Trit::DontCare); break;
        default:
            throw parse_error("output pattern '" + std::string(text) + "' contains invalid character");
        }
    }
    return pattern;
}

OutputPattern OutputPattern::all_dont_care(int qubit_count) {
    assert(qubit_count >= 1 && qubit_count <= max_qubits);
    OutputPattern pattern;
    pattern.trits_.assign(static_cast<std::size_t>(qubit_count), Trit::DontCare);
    return pattern;
}

Trit OutputPattern::trit(int qubit) const {
    assert(qubit >= 1 && qubit <= qubit_count());
    return trits_[static_cast<std::size_t>(qubit - 1)];
}

bool OutputPattern::matches(const BasisState& state) const {
    assert(state.qubit_count() == qubit_count());
    for (int q = 1; q <= qubit_count(); ++q) {
        Trit t = trit(q);
        if (t == Trit::DontCare) {
            continue;
        }
        if ((t == Trit::One) != (state.bit(q) == 1)) {
            return false;
        }
    }
    return true;
}

std::vector<BasisState> OutputPattern::match_states() const {
    const int n = qubit_count();
    std::uint32_t fixed = 0;
    std::vector<int> free_positions; // qubit numbers with a don't-care
    for (int q = 1; q <= n; ++q) {
        if (trit(q) == Trit::One) {
            fixed |= 1u << (n - q);
        } else if (trit(q) == Trit::DontCare) {
            free_positions.push_back(q);
        }
    }
    std::vector<BasisState> states;
    states.reserve(std::size_t{1} << free_positions.size());
    const std::uint32_t combos = 1u << free_positions.size();
    for (std::uint32_t c = 0; c < combos; ++c) {
        std::uint32_t index = fixed;
        for (std::size_t i = 0; i < free_positions.size(); ++i) {
            if ((c >> i) & 1u) {
                index |= 1u << (n - free_positions[i]);
            }
        }
        states.emplace_back(index, n);
    }
    std::sort(states.begin(), states.end());
    return states;
}

int OutputPattern::dont_care_count() const {
    return static_cast<int>(std::count(trits_.begin(), trits_.end(), Trit::DontCare));
}

std::string OutputPattern::str() const {
    std::string out;
    out.reserve(trits_.size());
    for (Trit t : trits_) {
        out.push_back(t == Trit::Zero ? '0' : t == Trit::One ? '1' : '-');
    }
    return out;
}

Specification::Specification(int qubit_count) : n_(qubit_count) {
    if (qubit_count < 1 || qubit_count > max_qubits) {
        throw parse_error("qubit count must be in [1, " + std::to_string(max_qubits) + "]");
    }
    rows_.assign(std::size_t{1} << qubit_count, OutputPattern::all_dont_care(qubit_count));
}

const OutputPattern& Specification::row(std::uint32_t input_index) const {
    assert(input_index < state_count());
    return rows_[input_index];
}

const OutputPattern& Specification::row(const BasisState& input) const {
    assert(input.qubit_count() == n_);
    return row(input.index());
}

void Specification::set_row(std::uint32_t input_index, OutputPattern pattern) {
    assert(input_index < state_count());
    assert(pattern.qubit_count() == n_);
    rows_[input_index] = std::move(pattern);
}

bool Specification::fully_specified() const {
    return std::all_of(rows_.begin(), rows_.end(),
                       [](const OutputPattern& p) { return p.fully_specified(); });
}

Specification parse_spec(std::string_view text) {
    int n = 0;
    bool saw_row = false;
    std::vector<std::pair<std::uint32_t, OutputPattern>> rows;
    std::vector<bool> seen;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        std::vector<std::string> tokens = tokenize(line);
        if (tokens.empty()) {
            if (end == text.size()) break;
            continue;
        }

        if (tokens[0] == ".n") {
            if (n != 0) fail_parse(line_no, "duplicate .n header");
            if (saw_row) fail_parse(line_no, ".n header must precede all rows");
            if (tokens.size() != 2) fail_parse(line_no, ".n header expects one integer");
            int value = 0;
            try {
                value = std::stoi(tokens[1]);
            } catch (const std::exception&) {
                fail_parse(line_no, "invalid qubit count '" + tokens[1] + "'");
            }
            if (value < 1 || value > max_qubits) {
                fail_parse(line_no, "qubit count must be in [1, " + std::to_string(max_qubits) + "]");
            }
            n = value;
        } else {
            if (tokens.size() != 2) {
                fail_parse(line_no, "expected '<input bits> <output pattern>'");
            }
            BasisState input = [&] {
                try {
                    return BasisState::from_string(tokens[0]);
                } catch (const parse_error& e) {
                    fail_parse(line_no, e.what());
                }
            }();
            OutputPattern pattern = [&] {
                try {
                    return OutputPattern::from_string(tokens[1]);
                } catch (const parse_error& e) {
                    fail_parse(line_no, e.what());
                }
            }();
            if (n == 0) {
                n = input.qubit_count();
                seen.assign(std::size_t{1} << n, false);
            }
            if (input.qubit_count() != n || pattern.qubit_count() != n) {
                fail_parse(line_no, "row width does not match qubit count " + std::to_string(n));
            }
            if (seen.empty()) {
                seen.assign(std::size_t{1} << n, false);
            }
            if (seen[input.index()]) {
                fail_parse(line_no, "duplicate input row '" + input.str() + "'");
            }
            seen[input.index()] = true;
            saw_row = true;
            rows.emplace_back(input.index(), std::move(pattern));
        }

        if (end == text.size()) break;
    }

    if (n == 0) {
        throw parse_error("empty specification: qubit count unknown (add a '.n <int>' header)");
    }
    Specification spec(n);
    for (auto& [index, pattern] : rows) {
        spec.set_row(index, std::move(pattern));
    }
    return spec;
}

CommoditySet build_commodities(const Specification& spec) {
    CommoditySet set;
    set.n = spec.qubit_count();
    std::map<std::string, std::size_t> by_pattern;
    for (std::uint32_t index = 0; index < spec.state_count(); ++index) {
        const OutputPattern& pattern = spec.row(index);
        auto [it, inserted] = by_pattern.try_emplace(pattern.str(), set.commodities.size());
        if (inserted) {
            Commodity commodity;
            commodity.pattern = pattern;
            commodity.out_states = pattern.match_states();
            set.commodities.push_back(std::move(commodity));
        }
        set.commodities[it->second].in_states.emplace_back(index, spec.qubit_count());
    }
    return set;
}

namespace {

// Kuhn's augmenting-path step for the realizability matching. Inputs are
// adjacent to every state matched by their commodity's pattern.
bool augment(std::uint32_t input, const std::vector<int>& commodity_of,
             const CommoditySet& commodities, std::vector<std::int32_t>& matched_input,
             std::vector<bool>& visited) {
    const Commodity& commodity =
        commodities.commodities[static_cast<std::size_t>(commodity_of[input])];
    for (const BasisState& out : commodity.out_states) {
        std::uint32_t candidate = out.index();
        if (visited[candidate]) {
            continue;
        }
        visited[candidate] = true;
        if (matched_input[candidate] < 0 ||
            augment(static_cast<std::uint32_t>(matched_input[candidate]), commodity_of,
                    commodities, matched_input, visited)) {
            matched_input[candidate] = static_cast<std::int32_t>(input);
            return true;
        }
    }
    return false;
}

} // namespace

bool validate_realizable(const Specification& spec) {
    const std::uint32_t states = spec.state_count();
    CommoditySet commodities = build_commodities(spec);
    std::vector<int> commodity_of(states, -1);
    for (std::size_t k = 0; k < commodities.commodities.size(); ++k) {
        for (const BasisState& in : commodities.commodities[k].in_states) {
            commodity_of[in.index()] = static_cast<int>(k);
        }
    }

    std::vector<std::int32_t> matched_input(states, -1);
    std::vector<bool> visited(states, false);
    for (std::uint32_t input = 0; input < states; ++input) {
        std::fill(visited.begin(), visited.end(), false);
        if (!augment(input, commodity_of, commodities, matched_input, visited)) {
            return false;
        }
    }
    return true;
}

} // namespace mct
