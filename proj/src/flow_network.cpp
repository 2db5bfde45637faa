#include "mct/flow_network.hpp"

#include "mct/simulate.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace mct {

CommodityNetwork::CommodityNetwork(int qubit_count, int gate_slots, int commodity_index,
                                   std::vector<BasisState> in_states,
                                   std::vector<BasisState> out_states)
    : n_(qubit_count), m_(gate_slots), k_(commodity_index), in_(std::move(in_states)),
      out_(std::move(out_states)) {
    assert(qubit_count >= 1 && qubit_count <= max_qubits);
    assert(gate_slots >= 0);
    assert(std::is_sorted(in_.begin(), in_.end()));
    assert(std::is_sorted(out_.begin(), out_.end()));

    const std::uint32_t states = 1u << n_;
    arcs_.reserve(in_.size() + out_.size() +
                  static_cast<std::size_t>(m_) * states * static_cast<std::size_t>(n_ + 1));
    for (const BasisState& s : in_) {
        arcs_.push_back({ArcKind::SourceArc, s.index(), 0, 0});
    }
    for (const BasisState& s : out_) {
        arcs_.push_back({ArcKind::SinkArc, s.index(), 0, 0});
    }
    for (int d = 1; d <= m_; ++d) {
        for (std::uint32_t s = 0; s < states; ++s) {
            arcs_.push_back({ArcKind::KeepArc, s, d, 0});
            for (int q = 1; q <= n_; ++q) {
                arcs_.push_back({ArcKind::FlipArc, s, d, q});
            }
        }
    }

    out_by_vertex_.resize(vertex_count());
    in_by_vertex_.resize(vertex_count());
    for (std::size_t a = 0; a < arcs_.size(); ++a) {
        const auto id = static_cast<std::int32_t>(a);
        out_by_vertex_[static_cast<std::size_t>(vertex_id(tail(id)))].push_back(id);
        in_by_vertex_[static_cast<std::size_t>(vertex_id(head(id)))].push_back(id);
    }
}

std::size_t CommodityNetwork::vertex_count() const {
    return 2 + (std::size_t{1} << n_) * static_cast<std::size_t>(m_ + 1);
}

int CommodityNetwork::vertex_id(const Vertex& vertex) const {
    switch (vertex.kind) {
    case VertexKind::Source:
        return 0;
    case VertexKind::Sink:
        return 1;
    case VertexKind::StateLayer:
        if (vertex.layer < 1 || vertex.layer > m_ + 1 || vertex.state >= (1u << n_)) {
            throw std::out_of_range("vertex does not belong to this network");
        }
        return 2 + (vertex.layer - 1) * (1 << n_) + static_cast<int>(vertex.state);
    }
    throw std::out_of_range("unknown vertex kind");
}

Vertex CommodityNetwork::vertex_at(int id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= vertex_count()) {
        throw std::out_of_range("vertex id out of range");
    }
    if (id == 0) {
        return Vertex::source();
    }
    if (id == 1) {
        return Vertex::sink();
    }
    const int offset = id - 2;
    const int layer = offset / (1 << n_) + 1;
    const auto state = static_cast<std::uint32_t>(offset % (1 << n_));
    return Vertex::state_layer(state, layer);
}

Vertex CommodityNetwork::tail(int arc_id) const {
    const Arc& arc = arcs_.at(static_cast<std::size_t>(arc_id));
    switch (arc.kind) {
    case ArcKind::SourceArc:
        return Vertex::source();
    case ArcKind::SinkArc:
        return Vertex::state_layer(arc.state, m_ + 1);
    case ArcKind::FlipArc:
    case ArcKind::KeepArc:
        return Vertex::state_layer(arc.state, arc.gate);
    }
    throw std::out_of_range("unknown arc kind");
}

Vertex CommodityNetwork::head(int arc_id) const {
    const Arc& arc = arcs_.at(static_cast<std::size_t>(arc_id));
    switch (arc.kind) {
    case ArcKind::SourceArc:
        return Vertex::state_layer(arc.state, 1);
    case ArcKind::SinkArc:
        return Vertex::sink();
    case ArcKind::FlipArc:
        return Vertex::state_layer(arc.state ^ (1u << (n_ - arc.qubit)), arc.gate + 1);
    case ArcKind::KeepArc:
        return Vertex::state_layer(arc.state, arc.gate + 1);
    }
    throw std::out_of_range("unknown arc kind");
}

std::span<const std::int32_t> CommodityNetwork::out_arcs(const Vertex& vertex) const {
    return out_by_vertex_[static_cast<std::size_t>(vertex_id(vertex))];
}

std::span<const std::int32_t> CommodityNetwork::in_arcs(const Vertex& vertex) const {
    return in_by_vertex_[static_cast<std::size_t>(vertex_id(vertex))];
}

std::string CommodityNetwork::dump() const {
    std::ostringstream os;
    for (std::size_t a = 0; a < arcs_.size(); ++a) {
        const Arc& arc = arcs_[a];
        os << "ARC " << a << ' ';
        switch (arc.kind) {
        case ArcKind::SourceArc:
            os << "source " << BasisState(arc.state, n_).str() << " 1";
            break;
        case ArcKind::SinkArc:
            os << "sink " << BasisState(arc.state, n_).str() << ' ' << (m_ + 1);
            break;
        case ArcKind::FlipArc:
            os << "flip " << BasisState(arc.state, n_).str() << ' ' << arc.gate << ' '
               << arc.qubit;
            break;
        case ArcKind::KeepArc:
            os << "keep " << BasisState(arc.state, n_).str() << ' ' << arc.gate;
            break;
        }
        os << '\n';
    }
    return os.str();
}

CommodityNetwork build_network(int qubit_count, int gate_slots, const Commodity& commodity,
                               int commodity_index) {
    return CommodityNetwork(qubit_count, gate_slots, commodity_index, commodity.in_states,
                            commodity.out_states);
}

InducedFlow induced_flow(const Circuit& circuit, const CommodityNetwork& network) {
    if (circuit.qubit_count() != network.qubit_count() ||
        circuit.slot_count() != network.gate_slots()) {
        throw std::invalid_argument("circuit dimensions do not match the network");
    }

    InducedFlow flow;
    flow.arc_values.assign(network.arcs().size(), 0);

    // Arc ids by construction: source arcs first, sink arcs next, then per
    // (d, state) a keep arc followed by n flip arcs.
    const int n = network.qubit_count();
    const int m = network.gate_slots();
    const std::size_t sink_base = network.in_states().size();
    const std::size_t transit_base = sink_base + network.out_states().size();
    auto keep_arc = [&](std::uint32_t state, int d) {
        return transit_base +
               (static_cast<std::size_t>(d - 1) * (std::size_t{1} << n) + state) *
                   static_cast<std::size_t>(n + 1);
    };

    for (std::size_t i = 0; i < network.in_states().size(); ++i) {
        const BasisState input = network.in_states()[i];
        flow.arc_values[i] = 1; // source arc
        BasisState current = input;
        for (int d = 1; d <= m; ++d) {
            BasisState next = apply_slot(circuit.slot(d), current);
            if (next == current) {
                flow.arc_values[keep_arc(current.index(), d)] = 1;
            } else {
                flow.arc_values[keep_arc(current.index(), d) +
                                static_cast<std::size_t>(circuit.slot(d)->target())] = 1;
            }
            current = next;
        }
        auto it = std::lower_bound(network.out_states().begin(), network.out_states().end(),
                                   current);
        if (it == network.out_states().end() || !(*it == current)) {
            return InducedFlow{false, input, {}};
        }
        flow.arc_values[sink_base +
                        static_cast<std::size_t>(it - network.out_states().begin())] = 1;
    }

    flow.feasible = true;
    return flow;
}

} // namespace mct
