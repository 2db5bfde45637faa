#pragma once

#include "mct/circuit.hpp"
#include "mct/spec.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mct {

enum class VertexKind : std::uint8_t { Source, Sink, StateLayer };

/// A vertex of the layered transition graph: the source, the sink, or
/// "state sigma right before gate d is applied" for d in 1..m+1.
struct Vertex {
    VertexKind kind = VertexKind::Source;
    std::uint32_t state = 0; // StateLayer only
    int layer = 0;           // StateLayer only, 1..m+1

    static Vertex source() { return {VertexKind::Source, 0, 0}; }
    static Vertex sink() { return {VertexKind::Sink, 0, 0}; }
    static Vertex state_layer(std::uint32_t state, int layer) {
        return {VertexKind::StateLayer, state, layer};
    }

    friend bool operator==(const Vertex&, const Vertex&) = default;
};

enum class ArcKind : std::uint8_t { SourceArc, SinkArc, FlipArc, KeepArc };

/// One arc of a commodity network.
///   SourceArc: S -> (state, 1)            for each commodity input state
///   SinkArc:   (state, m+1) -> T          for each permitted output state
///   FlipArc:   (state, d) -> (state^q, d+1), gate d flips qubit q
///   KeepArc:   (state, d) -> (state, d+1),   gate d leaves the state alone
struct Arc {
    ArcKind kind = ArcKind::SourceArc;
    std::uint32_t state = 0; // transition origin (flip/keep) or endpoint state
    int gate = 0;            // d, flip/keep only
    int qubit = 0;           // q, flip only
};

/// The layered flow graph G_k for one commodity. Arcs live in one fixed
/// order (source arcs by state, sink arcs by state, then per gate slot and
/// origin state a keep arc followed by the flip arcs by qubit), and the arc
/// id is the position in that list. Variable names in the optimization model
/// reuse these ids, so the order is part of the export contract.
class CommodityNetwork {
public:
    CommodityNetwork(int qubit_count, int gate_slots, int commodity_index,
                     std::vector<BasisState> in_states, std::vector<BasisState> out_states);

    int qubit_count() const { return n_; }
    int gate_slots() const { return m_; }
    int commodity_index() const { return k_; }
    const std::vector<BasisState>& in_states() const { return in_; }
    const std::vector<BasisState>& out_states() const { return out_; }
    /// Required source-to-sink flow: one unit per commodity input.
    int demand() const { return static_cast<int>(in_.size()); }

    std::size_t vertex_count() const;
    const std::vector<Arc>& arcs() const { return arcs_; }

    /// Dense vertex id: 0 = source, 1 = sink, then layers in (d, state) order.
    int vertex_id(const Vertex& vertex) const;
    Vertex vertex_at(int id) const;

    Vertex tail(int arc_id) const;
    Vertex head(int arc_id) const;

    /// Arc ids leaving/entering a vertex, ascending. Throws on a vertex that
    /// does not belong to this network.
    std::span<const std::int32_t> out_arcs(const Vertex& vertex) const;
    std::span<const std::int32_t> in_arcs(const Vertex& vertex) const;

    /// Line-oriented debug listing ("ARC <id> <kind> <state> <d> [<q>]");
    /// not a stability-guaranteed format.
    std::string dump() const;

private:
    int n_;
    int m_;
    int k_;
    std::vector<BasisState> in_;
    std::vector<BasisState> out_;
    std::vector<Arc> arcs_;
    std::vector<std::vector<std::int32_t>> out_by_vertex_;
    std::vector<std::vector<std::int32_t>> in_by_vertex_;
};

/// Build G_k for a commodity of an n-qubit, m-slot instance.
CommodityNetwork build_network(int qubit_count, int gate_slots, const Commodity& commodity,
                               int commodity_index = 1);

/// The 0/1 arc usage a concrete circuit induces on a commodity network, or
/// the first commodity input whose terminal state the pattern rejects.
struct InducedFlow {
    bool feasible = false;
    std::optional<BasisState> violating_input;
    std::vector<std::uint8_t> arc_values; // indexed by arc id
};

InducedFlow induced_flow(const Circuit& circuit, const CommodityNetwork& network);

} // namespace mct
