// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include "mct/circuit.hpp"
#include "mct/cost.hpp"
#include "mct/model.hpp"
#include "mct/search.hpp"
#include "mct/simulate.hpp"
#include "mct/spec.hpp"

#include "fixtures.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace mct;

namespace {

struct Criterion {
    int number;
    std::string name;
    double time_budget_seconds; // 0 = unbounded
    std::function<void(std::vector<std::string>&)> run;
};

#define REQUIRE_EQ(lhs, rhs, context)                                                        \
    do {                                                                                     \
        auto lhs_value = (lhs);                                                              \
        auto rhs_value = decltype(lhs_value)(rhs);                                           \
        if (lhs_value != rhs_value) {                                                        \
            std::ostringstream os;                                                           \
            os << context << ": expected " << rhs_value << ", got " << lhs_value;            \
            failures.push_back(os.str());                                                    \
        }                                                                                    \
    } while (0)

#define REQUIRE_TRUE(cond, context)                                                          \
    do {                                                                                     \
        if (!(cond)) {                                                                       \
            failures.push_back(std::string(context));                                        \
        }                                                                                    \
    } while (0)

Specification random_spec(int n, std::mt19937& rng) {
    Specification spec(n);
    for (std::uint32_t s = 0; s < spec.state_count(); ++s) {
        std::string pattern;
        for (int q = 0; q < n; ++q) {
            pattern.push_back("01-"[rng() % 3]);
        }
        spec.set_row(s, OutputPattern::from_string(pattern));
    }
    return spec;
}

Circuit random_circuit(int n, int m, std::mt19937& rng) {
    Circuit circuit(n, m);
    for (int d = 1; d <= m; ++d) {
        if (rng() % 5 == 0) {
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
    return circuit;
}

/// All circuits over n qubits with exactly m slots (empty slots allowed
/// anywhere), in enumeration order.
std::vector<Circuit> all_circuits(int n, int m) {
    const std::vector<Gate> gates = all_gates(n);
    const std::size_t options = gates.size() + 1;
    std::vector<Circuit> circuits;
    std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
    for (;;) {
        Circuit circuit(n, m);
        for (int d = 1; d <= m; ++d) {
            const std::size_t choice = pick[static_cast<std::size_t>(d - 1)];
            if (choice < gates.size()) {
                circuit.set_slot(d, gates[choice]);
            }
        }
        circuits.push_back(circuit);
        int d = m - 1;
        while (d >= 0 && pick[static_cast<std::size_t>(d)] == options - 1) {
            pick[static_cast<std::size_t>(d)] = 0;
            --d;
        }
        if (d < 0) {
            break;
        }
        ++pick[static_cast<std::size_t>(d)];
    }
    return circuits;
}

void criterion_cost_table(std::vector<std::string>& failures) {
    const std::int64_t zero_slack[] = {1, 1, 5, 13, 29, 62, 125};
    for (int p = 0; p <= 6; ++p) {
        REQUIRE_EQ(gate_cost(p, 0), zero_slack[p], "f(" << p << ", 0)");
    }
    REQUIRE_EQ(gate_cost(5, 1), 52, "f(5, 1)");
    REQUIRE_EQ(gate_cost(6, 1), 80, "f(6, 1)");
    REQUIRE_EQ(gate_cost(4, 2), 26, "f(4, 2)");
    REQUIRE_EQ(gate_cost(5, 3), 38, "f(5, 3)");
    REQUIRE_EQ(gate_cost(6, 4), 50, "f(6, 4)");
    for (int p = 7; p <= 10; ++p) {
        REQUIRE_EQ(gate_cost(p, 0), (std::int64_t{1} << (p + 1)) - 3, "f(" << p << ", 0)");
    }
    for (int p = 0; p <= 6; ++p) {
        for (int s = 0; s <= 8; ++s) {
            REQUIRE_TRUE(gate_cost(p, s + 1) <= gate_cost(p, s),
                         "slack monotonicity at p=" + std::to_string(p));
        }
    }
}

void criterion_worked_examples(std::vector<std::string>& failures) {
    const Specification spec1 = parse_spec(fixtures::example1_spec_text);
    const Specification spec2 = parse_spec(fixtures::example2_spec_text);
    const Circuit circuit1 = fixtures::example1_circuit();
    const Circuit circuit2 = fixtures::example2_circuit();

    const char* table1[][2] = {{"000", "001"}, {"001", "000"}, {"010", "110"},
                               {"011", "111"}, {"100", "101"}, {"101", "100"},
                               {"110", "011"}, {"111", "010"}};
    for (const auto& row : table1) {
        REQUIRE_EQ(run_circuit(circuit1, BasisState::from_string(row[0])).str(),
                   std::string(row[1]), "example 1 row " << row[0]);
    }

    REQUIRE_TRUE(satisfies(circuit2, spec2), "example 2 circuit satisfies its spec");
    const char* impl2[][2] = {{"000", "001"}, {"001", "000"}, {"010", "111"},
                              {"011", "110"}, {"100", "101"}, {"101", "100"},
                              {"110", "011"}, {"111", "010"}};
    const Permutation perm = induced_permutation(circuit2);
    for (const auto& row : impl2) {
        REQUIRE_EQ(perm.image(BasisState::from_string(row[0])).str(), std::string(row[1]),
                   "example 2 implementation column " << row[0]);
    }

    REQUIRE_EQ(circuit_cost(circuit1), 7, "example 1 circuit cost");
    REQUIRE_EQ(circuit_cost(circuit2), 2, "example 2 circuit cost");
}

void criterion_published_fixtures(std::vector<std::string>& failures) {
    REQUIRE_EQ(circuit_cost(fixtures::rd53_m11()), 47, "rd53 m=11");
    REQUIRE_EQ(circuit_cost(fixtures::four_mod7_v0_m10()), 30, "4mod7-v0 m=10");
    REQUIRE_EQ(circuit_cost(fixtures::decod24_enable_m6()), 18, "decod24-enable m=6");
    REQUIRE_EQ(circuit_cost(fixtures::one_two_three_v0_m9()), 17, "one-two-three-v0 m=9");
    REQUIRE_EQ(circuit_cost(fixtures::one_two_three_v1_m8()), 16, "one-two-three-v1 m=8");
    REQUIRE_EQ(circuit_cost(fixtures::one_two_three_v3_m9()), 17, "one-two-three-v3 m=9");
}

void criterion_oracle_equivalence(std::vector<std::string>& failures) {
    std::vector<Specification> specs;
    specs.push_back(parse_spec(fixtures::example1_spec_text));
    specs.push_back(parse_spec(fixtures::example2_spec_text));
    std::mt19937 rng(0xC0FFEE);
    for (int i = 0; i < 200; ++i) {
        specs.push_back(random_spec(3, rng));
    }

    for (std::size_t i = 0; i < specs.size(); ++i) {
        for (int m = 1; m <= 3; ++m) {
            const SearchOutcome oracle = brute_force_min_cost(specs[i], m);
            for (bool symmetry : {true, false}) {
                SearchOptions options;
                options.symmetry_pruning = symmetry;
                const SearchOutcome outcome = synthesize(specs[i], m, options);
                const std::string context = "spec " + std::to_string(i) + " m=" +
                                            std::to_string(m) +
                                            (symmetry ? " sym" : " nosym");
                REQUIRE_TRUE(outcome.status == oracle.status, context + " status");
                REQUIRE_TRUE(outcome.best_cost == oracle.best_cost, context + " cost");
                if (outcome.best_circuit) {
                    REQUIRE_TRUE(satisfies(*outcome.best_circuit, specs[i]),
                                 context + " witness satisfies");
                    REQUIRE_EQ(circuit_cost(*outcome.best_circuit), *outcome.best_cost,
                               context << " witness cost");
                }
            }
        }
    }
}

void criterion_proposition1(std::vector<std::string>& failures) {
    // Exhaustive n=3, m=2: the (permutation, cost) pairs reachable by any
    // circuit coincide with those reachable by canonical circuits, through
    // the constructive witness canonicalize() provides.
    using Key = std::pair<std::vector<std::uint32_t>, std::int64_t>;
    std::set<Key> reachable;
    std::set<Key> reachable_canonical;
    for (const Circuit& circuit : all_circuits(3, 2)) {
        const Key key{induced_permutation(circuit).images(), circuit_cost(circuit)};
        reachable.insert(key);
        if (is_canonical(circuit)) {
            reachable_canonical.insert(key);
        }
        const Circuit canon = canonicalize(circuit);
        REQUIRE_TRUE(is_canonical(canon), "canonicalize output is canonical");
        REQUIRE_TRUE(induced_permutation(canon).images() == key.first,
                     "canonicalize preserves the permutation");
        REQUIRE_EQ(circuit_cost(canon), key.second, "canonicalize preserves cost");
    }
    REQUIRE_TRUE(reachable == reachable_canonical,
                 "every reachable (permutation, cost) pair has a canonical witness");

    std::mt19937 rng(0xBEEF);
    for (int trial = 0; trial < 10000; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 4);
        const int m = static_cast<int>(rng() % 7);
        const Circuit circuit = random_circuit(n, m, rng);
        const Circuit canon = canonicalize(circuit);
        if (!(canonicalize(canon) == canon)) {
            failures.push_back("canonicalize is not idempotent");
            return;
        }
        if (circuit_cost(canon) != circuit_cost(circuit)) {
            failures.push_back("canonicalize changed the cost");
            return;
        }
        if (!(induced_permutation(canon) == induced_permutation(circuit))) {
            failures.push_back("canonicalize changed the permutation");
            return;
        }
    }
}

void criterion_model_equivalence(std::vector<std::string>& failures) {
    // Every spec with a single constrained row (4 inputs x 9 patterns, the
    // all-don't-care one included) against every n=2, m=2 circuit.
    const std::vector<Circuit> circuits = all_circuits(2, 2);
    const char* patterns[] = {"00", "01", "10", "11", "0-", "1-", "-0", "-1", "--"};

    for (std::uint32_t input = 0; input < 4; ++input) {
        for (const char* pattern : patterns) {
            Specification spec(2);
            spec.set_row(input, OutputPattern::from_string(pattern));

            ModelOptions options;
            options.symmetry = false;
            const Model model = build_model(spec, 2, options);

            for (const Circuit& circuit : circuits) {
                const bool expected = satisfies(circuit, spec);
                const EmbedResult embed = embed_solution(circuit, model);
                bool passes = embed.feasible;
                double objective = 0.0;
                if (embed.feasible) {
                    const CheckReport report = check_assignment(model, embed.values);
                    passes = report.pass;
                    objective = report.objective;
                }
                const std::string context = "input " + std::to_string(input) + " pattern " +
                                            pattern;
                REQUIRE_TRUE(passes == expected, context + ": model/simulator disagree");
                if (passes) {
                    REQUIRE_TRUE(objective == double(circuit_cost(circuit)),
                                 context + ": objective differs from the circuit cost");
                }
            }
        }
    }
}

void criterion_model_shape(std::vector<std::string>& failures) {
    // 3nm binaries with relaxed flow.
    const Specification spec1 = parse_spec(fixtures::example1_spec_text);
    const Specification spec2 = parse_spec(fixtures::example2_spec_text);
    for (int m = 1; m <= 3; ++m) {
        REQUIRE_EQ(build_model(spec1, m).binary_count(), std::size_t(9 * m),
                   "binaries example 1 m=" << m);
        REQUIRE_EQ(build_model(spec2, m).binary_count(), std::size_t(9 * m),
                   "binaries example 2 m=" << m);
    }
    Specification small(2);
    small.set_row(0, OutputPattern::from_string("1-"));
    REQUIRE_EQ(build_model(small, 4).binary_count(), std::size_t(24), "binaries n=2 m=4");

    // Closed-form vertex/arc counts for every n <= 8, m <= 15, checked for a
    // fully specified pattern and for the all-don't-care pattern.
    for (int n = 1; n <= 8; ++n) {
        for (int m = 0; m <= 15; ++m) {
            for (int shape = 0; shape < 2; ++shape) {
                Commodity commodity;
                commodity.pattern = shape == 0
                                        ? OutputPattern::from_string(std::string(n, '1'))
                                        : OutputPattern::all_dont_care(n);
                commodity.in_states.emplace_back(0u, n);
                commodity.out_states = commodity.pattern.match_states();
                const CommodityNetwork net = build_network(n, m, commodity, 1);
                const std::size_t states = std::size_t{1} << n;
                REQUIRE_EQ(net.vertex_count(), 2 + states * (m + 1),
                           "vertices n=" << n << " m=" << m);
                REQUIRE_EQ(net.arcs().size(),
                           1 + commodity.out_states.size() + m * states * (n + 1),
                           "arcs n=" << n << " m=" << m);
            }
        }
    }
}

void criterion_determinism(std::vector<std::string>& failures) {
    const Specification spec2 = parse_spec(fixtures::example2_spec_text);
    const Specification spec1 = parse_spec(fixtures::example1_spec_text);

    std::string lp, json;
    for (int run = 0; run < 3; ++run) {
        const Model model = build_model(parse_spec(fixtures::example2_spec_text), 2);
        const std::string lp_now = export_lp(model);
        const std::string json_now = export_json(model);
        if (run == 0) {
            lp = lp_now;
            json = json_now;
        } else {
            REQUIRE_TRUE(lp == lp_now, "LP export differs across runs");
            REQUIRE_TRUE(json == json_now, "JSON export differs across runs");
        }
    }

    for (const Specification* spec : {&spec1, &spec2}) {
        SearchOutcome first = synthesize(*spec, 3);
        for (int run = 0; run < 2; ++run) {
            const SearchOutcome again = synthesize(*spec, 3);
            REQUIRE_TRUE(again.status == first.status, "synthesis status differs");
            REQUIRE_TRUE(again.best_cost == first.best_cost, "synthesis cost differs");
            REQUIRE_TRUE(again.best_circuit == first.best_circuit,
                         "synthesis witness differs");
            REQUIRE_TRUE(again.nodes_explored == first.nodes_explored,
                         "synthesis node count differs");
        }
    }
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "cost-table fidelity", 1.0, criterion_cost_table},
        {2, "worked-example fidelity", 1.0, criterion_worked_examples},
        {3, "published circuit fixtures", 1.0, criterion_published_fixtures},
        {4, "oracle equivalence", 600.0, criterion_oracle_equivalence},
        {5, "canonicalization at desk scale", 300.0, criterion_proposition1},
        {6, "model/simulator equivalence", 600.0, criterion_model_equivalence},
        {7, "model shape", 60.0, criterion_model_shape},
        {8, "determinism", 0.0, criterion_determinism},
    };

    int failed = 0;
    for (const Criterion& criterion : criteria) {
        std::vector<std::string> failures;
        const auto start = std::chrono::steady_clock::now();
        criterion.run(failures);
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (criterion.time_budget_seconds > 0 && elapsed > criterion.time_budget_seconds) {
            std::ostringstream os;
            os << "exceeded the " << criterion.time_budget_seconds << " s budget";
            failures.push_back(os.str());
        }
        const bool pass = failures.empty();
        failed += pass ? 0 : 1;
        std::printf("[%s] criterion %d: %s (%.2f s)\n", pass ? "PASS" : "FAIL",
                    criterion.number, criterion.name.c_str(), elapsed);
        for (const std::string& failure : failures) {
            std::printf("       %s\n", failure.c_str());
        }
    }

    std::printf("ACCEPTANCE: %zu/%zu criteria passed\n", criteria.size() - failed,
                criteria.size());
    return failed == 0 ? 0 : 1;
}
