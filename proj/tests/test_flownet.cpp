#include "mct/flow_network.hpp"

#include "mct/simulate.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace mct;

namespace {

Commodity make_commodity(int n, const std::vector<std::string>& in,
                         const std::string& pattern) {
    Commodity commodity;
    commodity.pattern = OutputPattern::from_string(pattern);
    for (const std::string& s : in) {
        commodity.in_states.push_back(BasisState::from_string(s));
    }
    commodity.out_states = commodity.pattern.match_states();
    return commodity;
}

std::size_t expected_arcs(int n, int m, std::size_t in, std::size_t out) {
    return in + out + static_cast<std::size_t>(m) * (std::size_t{1} << n) *
                          static_cast<std::size_t>(n + 1);
}

// Net outflow minus inflow under a feasible induced flow, per vertex.
void check_flow_balance(const CommodityNetwork& net, const InducedFlow& flow) {
    for (int v = 0; v < static_cast<int>(net.vertex_count()); ++v) {
        const Vertex vertex = net.vertex_at(v);
        int net_out = 0;
        for (std::int32_t a : net.out_arcs(vertex)) {
            net_out += flow.arc_values[static_cast<std::size_t>(a)];
        }
        for (std::int32_t a : net.in_arcs(vertex)) {
            net_out -= flow.arc_values[static_cast<std::size_t>(a)];
        }
        if (vertex.kind == VertexKind::Source) {
            CHECK(net_out == net.demand());
        } else if (vertex.kind == VertexKind::Sink) {
            CHECK(net_out == -net.demand());
        } else {
            CHECK(net_out == 0);
        }
    }
}

} // namespace

TEST_CASE("network size for the running example") {
    // Commodity of input 010 with output specification 11-.
    const CommodityNetwork net =
        build_network(3, 2, make_commodity(3, {"010"}, "11-"), 2);
    CHECK(net.vertex_count() == 26);
    CHECK(net.arcs().size() == 67);
    CHECK(net.demand() == 1);

    std::size_t sources = 0, sinks = 0, flips = 0, keeps = 0;
    for (const Arc& arc : net.arcs()) {
        switch (arc.kind) {
        case ArcKind::SourceArc: ++sources; break;
        case ArcKind::SinkArc: ++sinks; break;
        case ArcKind::FlipArc: ++flips; break;
        case ArcKind::KeepArc: ++keeps; break;
        }
    }
    CHECK(sources == 1);
    CHECK(sinks == 2);
    CHECK(flips == 48);
    CHECK(keeps == 16);
}

TEST_CASE("network size for a single qubit") {
    const CommodityNetwork net = build_network(1, 1, make_commodity(1, {"0"}, "-"), 1);
    CHECK(net.vertex_count() == 6);
    CHECK(net.arcs().size() == 7);
}

TEST_CASE("zero-slot network has only source and sink arcs") {
    const CommodityNetwork net = build_network(2, 0, make_commodity(2, {"01"}, "1-"), 1);
    CHECK(net.arcs().size() == 1 + 2);
    for (const Arc& arc : net.arcs()) {
        CHECK((arc.kind == ArcKind::SourceArc || arc.kind == ArcKind::SinkArc));
    }
}

TEST_CASE("vertex and arc counts match the closed forms") {
    std::mt19937 rng(37);
    for (int n = 1; n <= 6; ++n) {
        for (int m : {0, 1, 3, 7}) {
            std::string pattern;
            for (int q = 0; q < n; ++q) {
                pattern.push_back("01-"[rng() % 3]);
            }
            Commodity commodity = make_commodity(n, {std::string(n, '0')}, pattern);
            const CommodityNetwork net = build_network(n, m, commodity, 1);
            CHECK(net.vertex_count() == 2 + (std::size_t{1} << n) * (m + 1));
            CHECK(net.arcs().size() ==
                  expected_arcs(n, m, commodity.in_states.size(),
                                commodity.out_states.size()));
        }
    }
}

TEST_CASE("adjacency queries") {
    const CommodityNetwork net =
        build_network(3, 2, make_commodity(3, {"010"}, "11-"), 2);

    // Interior vertices emit one keep arc followed by n flip arcs.
    for (int d = 1; d <= 2; ++d) {
        auto out = net.out_arcs(Vertex::state_layer(5, d));
        REQUIRE(out.size() == 4);
        CHECK(net.arcs()[static_cast<std::size_t>(out[0])].kind == ArcKind::KeepArc);
        for (int i = 1; i <= 3; ++i) {
            const Arc& arc = net.arcs()[static_cast<std::size_t>(out[i])];
            CHECK(arc.kind == ArcKind::FlipArc);
            CHECK(arc.qubit == i);
        }
    }

    CHECK(net.in_arcs(Vertex::sink()).size() == 2);
    CHECK(net.out_arcs(Vertex::sink()).empty());
    CHECK(net.out_arcs(Vertex::source()).size() == 1);
    CHECK(net.in_arcs(Vertex::source()).empty());

    // Layer-1 vertices have no inflow except through source arcs.
    CHECK(net.in_arcs(Vertex::state_layer(2, 1)).size() == 1);
    CHECK(net.in_arcs(Vertex::state_layer(0, 1)).empty());

    CHECK_THROWS_AS(net.vertex_id(Vertex::state_layer(0, 4)), std::out_of_range);
    CHECK_THROWS_AS(net.out_arcs(Vertex::state_layer(8, 1)), std::out_of_range);
}

TEST_CASE("induced flow of the cheap circuit follows the illustrated path") {
    const CommodityNetwork net =
        build_network(3, 2, make_commodity(3, {"010"}, "11-"), 2);
    const InducedFlow flow = induced_flow(fixtures::example2_circuit(), net);
    REQUIRE(flow.feasible);

    std::set<std::size_t> used;
    for (std::size_t a = 0; a < flow.arc_values.size(); ++a) {
        if (flow.arc_values[a]) {
            used.insert(a);
        }
    }
    REQUIRE(used.size() == 4); // source, two transitions, sink

    for (std::size_t a : used) {
        const Arc& arc = net.arcs()[a];
        switch (arc.kind) {
        case ArcKind::SourceArc:
            CHECK(BasisState(arc.state, 3).str() == "010");
            break;
        case ArcKind::FlipArc:
            if (arc.gate == 1) {
                CHECK(BasisState(arc.state, 3).str() == "010");
                CHECK(arc.qubit == 1); // 010 -> 110
            } else {
                CHECK(BasisState(arc.state, 3).str() == "110");
                CHECK(arc.qubit == 3); // 110 -> 111
            }
            break;
        case ArcKind::SinkArc:
            CHECK(BasisState(arc.state, 3).str() == "111");
            break;
        case ArcKind::KeepArc:
            FAIL("no keep arc belongs to this path");
        }
    }

    check_flow_balance(net, flow);
}

TEST_CASE("induced flow reports the violating input") {
    // A zero-slot circuit cannot leave the input state.
    const CommodityNetwork net =
        build_network(3, 0, make_commodity(3, {"010"}, "11-"), 2);
    const InducedFlow flow = induced_flow(Circuit(3, 0), net);
    CHECK_FALSE(flow.feasible);
    REQUIRE(flow.violating_input.has_value());
    CHECK(flow.violating_input->str() == "010");
}

TEST_CASE("induced flow rejects mismatched dimensions") {
    const CommodityNetwork net =
        build_network(3, 2, make_commodity(3, {"010"}, "11-"), 2);
    CHECK_THROWS_AS(induced_flow(Circuit(3, 1), net), std::invalid_argument);
    CHECK_THROWS_AS(induced_flow(Circuit(2, 2), net), std::invalid_argument);
}

TEST_CASE("empty circuit keeps every state when permitted") {
    Commodity commodity = make_commodity(2, {"00", "01"}, "0-");
    const CommodityNetwork net = build_network(2, 2, commodity, 1);
    const InducedFlow flow = induced_flow(Circuit(2, 2), net);
    REQUIRE(flow.feasible);
    for (std::size_t a = 0; a < flow.arc_values.size(); ++a) {
        if (flow.arc_values[a]) {
            CHECK(net.arcs()[a].kind != ArcKind::FlipArc);
        }
    }
    check_flow_balance(net, flow);
}

TEST_CASE("induced flows balance and stay vertex-disjoint") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const int m = static_cast<int>(rng() % 4);

        Circuit circuit(n, m);
        for (int d = 1; d <= m; ++d) {
            if (rng() % 4 == 0) {
                continue;
            }
            const int target = 1 + static_cast<int>(rng() % n);
            std::uint32_t controls = 0;
            for (int q = 1; q <= n; ++q) {
                if (q != target && rng() % 2 == 0) {
                    controls |= 1u << (q - 1);
                }
            }
            circuit.set_slot(d, Gate(target, controls));
        }

        // Follow the circuit so the flow is feasible by construction.
        std::vector<std::string> ins;
        std::set<std::uint32_t> outs;
        const std::uint32_t count = 1 + rng() % (1u << n);
        for (std::uint32_t s = 0; s < count; ++s) {
            ins.push_back(BasisState(s, n).str());
            outs.insert(run_circuit(circuit, BasisState(s, n)).index());
        }
        Commodity commodity;
        commodity.pattern = OutputPattern::all_dont_care(n);
        for (const std::string& s : ins) {
            commodity.in_states.push_back(BasisState::from_string(s));
        }
        commodity.out_states = commodity.pattern.match_states();

        const CommodityNetwork net = build_network(n, m, commodity, 1);
        const InducedFlow flow = induced_flow(circuit, net);
        REQUIRE(flow.feasible);
        check_flow_balance(net, flow);

        // Unit paths never share a layer vertex.
        for (int v = 2; v < static_cast<int>(net.vertex_count()); ++v) {
            int through = 0;
            for (std::int32_t a : net.in_arcs(net.vertex_at(v))) {
                through += flow.arc_values[static_cast<std::size_t>(a)];
            }
            CHECK(through <= 1);
        }
    }
}

TEST_CASE("network dump lists each arc once") {
    const CommodityNetwork net = build_network(1, 1, make_commodity(1, {"0"}, "-"), 1);
    const std::string dump = net.dump();
    CHECK(dump.find("ARC 0 source") != std::string::npos);
    CHECK(std::count(dump.begin(), dump.end(), '\n') == 7);
}
