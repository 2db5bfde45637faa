#include "mct/simulate.hpp"

#include <cassert>
#include <numeric>
#include <stdexcept>

namespace mct {

Permutation::Permutation(int qubit_count, std::vector<std::uint32_t> images)
    : n_(qubit_count), images_(std::move(images)) {
    const std::size_t states = std::size_t{1} << qubit_count;
    if (images_.size() != states) {
        throw std::logic_error("permutation image table has the wrong size");
    }
    std::vector<bool> seen(states, false);
    for (std::uint32_t image : images_) {
        if (image >= states || seen[image]) {
            throw std::logic_error("permutation image table is not a bijection");
        }
        seen[image] = true;
    }
}

Permutation Permutation::identity(int qubit_count) {
    std::vector<std::uint32_t> images(std::size_t{1} << qubit_count);
    std::iota(images.begin(), images.end(), 0u);
    return Permutation(qubit_count, std::move(images));
}

BasisState Permutation::image(const BasisState& state) const {
    assert(state.qubit_count() == n_);
    return BasisState(images_[state.index()], n_);
}

std::uint32_t Permutation::image_index(std::uint32_t state_index) const {
    assert(state_index < images_.size());
    return images_[state_index];
}

Permutation Permutation::inverse() const {
    std::vector<std::uint32_t> inv(images_.size());
    for (std::uint32_t s = 0; s < images_.size(); ++s) {
        inv[images_[s]] = s;
    }
    return Permutation(n_, std::move(inv));
}

bool Permutation::is_identity() const {
    for (std::uint32_t s = 0; s < images_.size(); ++s) {
        if (images_[s] != s) {
            return false;
        }
    }
    return true;
}

BasisState apply_gate(const Gate& gate, const BasisState& state) {
    assert(gate.fits(state.qubit_count()));
    for (int q : gate.controls()) {
        if (state.bit(q) == 0) {
            return state;
        }
    }
    return state.with_flipped(gate.target());
}

BasisState apply_slot(const std::optional<Gate>& slot, const BasisState& state) {
    return slot ? apply_gate(*slot, state) : state;
}

BasisState run_circuit(const Circuit& circuit, const BasisState& state) {
    assert(circuit.qubit_count() == state.qubit_count());
    BasisState current = state;
    for (int d = 1; d <= circuit.slot_count(); ++d) {
        current = apply_slot(circuit.slot(d), current);
    }
    return current;
}

Permutation induced_permutation(const Circuit& circuit) {
    const int n = circuit.qubit_count();
    const std::uint32_t states = 1u << n;
    std::vector<std::uint32_t> images(states);
    for (std::uint32_t s = 0; s < states; ++s) {
        images[s] = run_circuit(circuit, BasisState(s, n)).index();
    }
    return Permutation(n, std::move(images));
}

bool satisfies(const Circuit& circuit, const Specification& spec) {
    return !first_violation(circuit, spec).has_value();
}

std::optional<BasisState> first_violation(const Circuit& circuit, const Specification& spec) {
    assert(circuit.qubit_count() == spec.qubit_count());
    for (std::uint32_t s = 0; s < spec.state_count(); ++s) {
        BasisState input(s, spec.qubit_count());
        if (!spec.row(s).matches(run_circuit(circuit, input))) {
            return input;
        }
    }
    return std::nullopt;
}

} // namespace mct
