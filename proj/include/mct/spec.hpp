#pragma once

#include "mct/errors.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mct {

/// Hard cap on the number of qubits. Every module enumerates all 2^n basis
/// states, so anything beyond this is out of reach regardless.
inline constexpr int max_qubits = 16;

/// A classical assignment of all qubits.
///
/// Qubit 1 is the leftmost character of the string form, so "110" reads
/// (qubit1, qubit2, qubit3) = (1, 1, 0). The integer index is the big-endian
/// value of the bit string: "110" <-> 6.
class BasisState {
public:
    BasisState(std::uint32_t index, int qubit_count);
    static BasisState from_string(std::string_view bits);

    int qubit_count() const { return n_; }
    std::uint32_t index() const { return index_; }

    /// Value of qubit q (1-based), 0 or 1.
    int bit(int qubit) const;
    /// Copy of this state with qubit q flipped.
    BasisState with_flipped(int qubit) const;

    std::string str() const;

    friend auto operator<=>(const BasisState&, const BasisState&) = default;

private:
    int n_;
    std::uint32_t index_;
};

enum class Trit : std::uint8_t { Zero, One, DontCare };

/// Per-qubit output requirement. '-' positions are unconstrained; a pattern
/// with k don't-cares matches exactly 2^k states.
class OutputPattern {
public:
    static OutputPattern from_string(std::string_view text);
    static OutputPattern all_dont_care(int qubit_count);

    int qubit_count() const { return static_cast<int>(trits_.size()); }
    Trit trit(int qubit) const;

    bool matches(const BasisState& state) const;
    /// All matching states, ascending by index.
    std::vector<BasisState> match_states() const;

    int dont_care_count() const;
    bool fully_specified() const { return dont_care_count() == 0; }

    std::string str() const;

    friend bool operator==(const OutputPattern&, const OutputPattern&) = default;

private:
    std::vector<Trit> trits_;
};

/// A reversible-function specification: one output pattern per input state.
/// Rows never present in the source text default to all-don't-care.
class Specification {
public:
    explicit Specification(int qubit_count);

    int qubit_count() const { return n_; }
    std::uint32_t state_count() const { return static_cast<std::uint32_t>(rows_.size()); }

    const OutputPattern& row(std::uint32_t input_index) const;
    const OutputPattern& row(const BasisState& input) const;
    void set_row(std::uint32_t input_index, OutputPattern pattern);

    bool fully_specified() const;

private:
    int n_;
    std::vector<OutputPattern> rows_;
};

/// Input states sharing one output pattern, together with the states that
/// pattern permits.
struct Commodity {
    OutputPattern pattern;
    std::vector<BasisState> in_states;  // ascending by index
    std::vector<BasisState> out_states; // the pattern's match set, ascending
};

/// The commodity partition of the input states. Commodities are ordered by
/// their smallest member input, which makes the grouping reproducible.
struct CommoditySet {
    int n = 0;
    std::vector<Commodity> commodities;
};

/// Parse a specification file.
///
/// Format: optional header line ".n <int>"; each following non-empty,
/// non-comment line is "<input bits> <output pattern>" separated by
/// whitespace. '#' starts a comment to end of line. Pattern characters are
/// {0, 1, -}. Without a header, n is inferred from the first row's input.
/// Duplicate input rows are rejected.
Specification parse_spec(std::string_view text);

/// True iff some bijection on the basis states maps every input to a state
/// matching its pattern. Decided by maximum bipartite matching; a cheap
/// infeasibility certificate independent of any gate budget.
bool validate_realizable(const Specification& spec);

/// Group input states by identical output pattern.
CommoditySet build_commodities(const Specification& spec);

} // namespace mct
