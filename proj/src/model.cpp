#include "mct/model.hpp"

#include <json.hpp>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mct {

namespace {

std::string index_name(char prefix, int a, int b) {
    std::ostringstream os;
    os << prefix << '_' << a << '_' << b;
    return os.str();
}

} // namespace

int Model::t_var(int qubit, int gate) const {
    assert(qubit >= 1 && qubit <= n && gate >= 1 && gate <= m);
    return (gate - 1) * n + (qubit - 1);
}

int Model::w_var(int qubit, int gate) const {
    return n * m + t_var(qubit, gate);
}

int Model::y_var(int width, int gate) const {
    return 2 * n * m + t_var(width, gate);
}

int Model::x_var(int commodity, int arc) const {
    assert(commodity >= 1 && static_cast<std::size_t>(commodity) <= networks.size());
    int base = 3 * n * m;
    for (int k = 1; k < commodity; ++k) {
        base += static_cast<int>(networks[static_cast<std::size_t>(k - 1)].arcs().size());
    }
    assert(arc >= 0 &&
           static_cast<std::size_t>(arc) < networks[static_cast<std::size_t>(commodity - 1)].arcs().size());
    return base + arc;
}

int Model::var_id(std::string_view name) const {
    for (std::size_t i = 0; i < variables.size(); ++i) {
        if (variables[i].name == name) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

std::size_t Model::binary_count() const {
    return static_cast<std::size_t>(
        std::count_if(variables.begin(), variables.end(),
                      [](const VarRef& v) { return v.domain == VarDomain::Binary; }));
}

Model build_model(const Specification& spec, int gate_slots, ModelOptions options) {
    if (gate_slots < 1) {
        throw std::invalid_argument("model requires at least one gate slot");
    }
    if (!validate_realizable(spec)) {
        throw unrealizable_error("specification admits no bijection on the basis states");
    }

    Model model;
    model.n = spec.qubit_count();
    model.m = gate_slots;
    model.options = options;
    model.commodities = build_commodities(spec);

    const int n = model.n;
    const int m = model.m;
    for (std::size_t k = 0; k < model.commodities.commodities.size(); ++k) {
        model.networks.push_back(build_network(n, m, model.commodities.commodities[k],
                                               static_cast<int>(k) + 1));
    }

    // Variables: t, w, y blocks ordered by (gate, qubit), then the flow block
    // of each commodity in arc order.
    for (int d = 1; d <= m; ++d) {
        for (int q = 1; q <= n; ++q) {
            model.variables.push_back(
                {index_name('t', q, d), VarKind::Target, VarDomain::Binary, q, d, 0, 0});
        }
    }
    for (int d = 1; d <= m; ++d) {
        for (int q = 1; q <= n; ++q) {
            model.variables.push_back(
                {index_name('w', q, d), VarKind::Control, VarDomain::Binary, q, d, 0, 0});
        }
    }
    for (int d = 1; d <= m; ++d) {
        for (int q = 1; q <= n; ++q) {
            model.variables.push_back(
                {index_name('y', q, d), VarKind::Width, VarDomain::Binary, q, d, 0, 0});
        }
    }
    const VarDomain flow_domain =
        options.relax_flow ? VarDomain::UnitInterval : VarDomain::Binary;
    for (std::size_t k = 0; k < model.networks.size(); ++k) {
        for (std::size_t a = 0; a < model.networks[k].arcs().size(); ++a) {
            model.variables.push_back({index_name('x', static_cast<int>(k) + 1,
                                                  static_cast<int>(a)),
                                       VarKind::Flow, flow_domain, 0, 0,
                                       static_cast<int>(k) + 1, static_cast<int>(a)});
        }
    }

    // Objective: a gate of width q has q-1 controls and leaves n-q qubits
    // slack.
    const QuantumCostTable& costs = QuantumCostTable::standard();
    for (int d = 1; d <= m; ++d) {
        for (int q = 1; q <= n; ++q) {
            model.objective.push_back({costs.cost(q - 1, n - q), model.y_var(q, d)});
        }
    }

    auto add = [&](std::string tag, std::vector<LinearTerm> terms, Sense sense,
                   std::int64_t rhs) {
        model.constraints.push_back({std::move(tag), std::move(terms), sense, rhs});
    };

    // Each spot carries a target, a control, or neither.
    for (int d = 1; d <= m; ++d) {
        for (int q = 1; q <= n; ++q) {
            add("eq2_q" + std::to_string(q) + "_d" + std::to_string(d),
                {{1, model.t_var(q, d)}, {1, model.w_var(q, d)}}, Sense::LessEqual, 1);
        }
    }
    // At most one target per gate.
    for (int d = 1; d <= m; ++d) {
        std::vector<LinearTerm> terms;
        for (int q = 1; q <= n; ++q) {
            terms.push_back({1, model.t_var(q, d)});
        }
        add("eq3_d" + std::to_string(d), std::move(terms), Sense::LessEqual, 1);
    }
    // A control requires a target somewhere in the gate.
    for (int d = 1; d <= m; ++d) {
        for (int q = 1; q <= n; ++q) {
            std::vector<LinearTerm> terms{{1, model.w_var(q, d)}};
            for (int r = 1; r <= n; ++r) {
                terms.push_back({-1, model.t_var(r, d)});
            }
            add("eq4_q" + std::to_string(q) + "_d" + std::to_string(d), std::move(terms),
                Sense::LessEqual, 0);
        }
    }
    // Width indicators count the touched qubits...
    for (int d = 1; d <= m; ++d) {
        std::vector<LinearTerm> terms;
        for (int q = 1; q <= n; ++q) {
            terms.push_back({q, model.y_var(q, d)});
        }
        for (int q = 1; q <= n; ++q) {
            terms.push_back({-1, model.t_var(q, d)});
        }
        for (int q = 1; q <= n; ++q) {
            terms.push_back({-1, model.w_var(q, d)});
        }
        add("eq5_d" + std::to_string(d), std::move(terms), Sense::Equal, 0);
    }
    // ...with at most one indicator active.
    for (int d = 1; d <= m; ++d) {
        std::vector<LinearTerm> terms;
        for (int q = 1; q <= n; ++q) {
            terms.push_back({1, model.y_var(q, d)});
        }
        add("eq6_d" + std::to_string(d), std::move(terms), Sense::LessEqual, 1);
    }

    // Per-commodity block: flow balance, then the linearized coupling rows
    // that close arcs contradicting the circuit design.
    for (std::size_t kk = 0; kk < model.networks.size(); ++kk) {
        const CommodityNetwork& net = model.networks[kk];
        const int k = static_cast<int>(kk) + 1;
        const std::string k_tag = "_k" + std::to_string(k);

        for (int v = 0; v < static_cast<int>(net.vertex_count()); ++v) {
            const Vertex vertex = net.vertex_at(v);
            std::vector<LinearTerm> terms;
            for (std::int32_t a : net.out_arcs(vertex)) {
                terms.push_back({1, model.x_var(k, a)});
            }
            for (std::int32_t a : net.in_arcs(vertex)) {
                terms.push_back({-1, model.x_var(k, a)});
            }
            std::int64_t rhs = 0;
            if (vertex.kind == VertexKind::Source) {
                rhs = net.demand();
            } else if (vertex.kind == VertexKind::Sink) {
                rhs = -net.demand();
            }
            add("eq7" + k_tag + "_v" + std::to_string(v), std::move(terms), Sense::Equal, rhs);
        }

        // Flip arc needs the flipped qubit to be the target...
        for (std::size_t a = 0; a < net.arcs().size(); ++a) {
            const Arc& arc = net.arcs()[a];
            if (arc.kind != ArcKind::FlipArc) {
                continue;
            }
            add("eq11a" + k_tag + "_a" + std::to_string(a),
                {{1, model.x_var(k, static_cast<int>(a))},
                 {-1, model.t_var(arc.qubit, arc.gate)}},
                Sense::LessEqual, 0);
        }
        // ...and no control on a qubit the origin state reads as 0.
        for (std::size_t a = 0; a < net.arcs().size(); ++a) {
            const Arc& arc = net.arcs()[a];
            if (arc.kind != ArcKind::FlipArc) {
                continue;
            }
            for (int q0 : zero_qubits(BasisState(arc.state, n))) {
                add("eq11b" + k_tag + "_a" + std::to_string(a) + "_q" + std::to_string(q0),
                    {{1, model.x_var(k, static_cast<int>(a))},
                     {1, model.w_var(q0, arc.gate)}},
                    Sense::LessEqual, 1);
            }
        }
        // Keep arc is closed when a target exists and no control sits on a
        // zero qubit of the origin state.
        for (std::size_t a = 0; a < net.arcs().size(); ++a) {
            const Arc& arc = net.arcs()[a];
            if (arc.kind != ArcKind::KeepArc) {
                continue;
            }
            std::vector<LinearTerm> terms{{1, model.x_var(k, static_cast<int>(a))}};
            for (int q = 1; q <= n; ++q) {
                terms.push_back({1, model.t_var(q, arc.gate)});
            }
            for (int q0 : zero_qubits(BasisState(arc.state, n))) {
                terms.push_back({-1, model.w_var(q0, arc.gate)});
            }
            add("eq11c" + k_tag + "_a" + std::to_string(a), std::move(terms),
                Sense::LessEqual, 1);
        }
    }

    if (options.symmetry) {
        // Unswappable circuits only: empty slots trail, adjacent targets on
        // distinct lines ascend unless a control blocks the exchange, and
        // same-target runs never grow in control count.
        for (int d = 1; d + 1 <= m; ++d) {
            std::vector<LinearTerm> terms;
            for (int q = 1; q <= n; ++q) {
                terms.push_back({1, model.t_var(q, d)});
            }
            for (int q = 1; q <= n; ++q) {
                terms.push_back({-1, model.t_var(q, d + 1)});
            }
            add("sym_empty_d" + std::to_string(d), std::move(terms), Sense::GreaterEqual, 0);
        }
        for (int d = 1; d + 1 <= m; ++d) {
            for (int q = 2; q <= n; ++q) {
                for (int r = 1; r < q; ++r) {
                    add("sym_target_d" + std::to_string(d) + "_q" + std::to_string(q) +
                            "_r" + std::to_string(r),
                        {{1, model.t_var(q, d)},
                         {1, model.t_var(r, d + 1)},
                         {-1, model.w_var(q, d + 1)},
                         {-1, model.w_var(r, d)}},
                        Sense::LessEqual, 1);
                }
            }
        }
        for (int d = 1; d + 1 <= m; ++d) {
            for (int q = 1; q <= n; ++q) {
                std::vector<LinearTerm> terms;
                for (int r = 1; r <= n; ++r) {
                    terms.push_back({1, model.w_var(r, d)});
                }
                for (int r = 1; r <= n; ++r) {
                    terms.push_back({-1, model.w_var(r, d + 1)});
                }
                if (n > 1) { // big-M term vanishes on a single qubit
                    terms.push_back({-(n - 1), model.t_var(q, d)});
                    terms.push_back({-(n - 1), model.t_var(q, d + 1)});
                }
                add("sym_same_d" + std::to_string(d) + "_q" + std::to_string(q),
                    std::move(terms), Sense::GreaterEqual, std::int64_t{-2} * (n - 1));
            }
        }
    }

    return model;
}

namespace {

// Token-level writer that wraps long rows; LP readers accept arbitrary
// breaks between tokens.
class LpLine {
public:
    explicit LpLine(std::ostringstream& os) : os_(os) {}

    void token(const std::string& text) {
        if (column_ > 0 && column_ + text.size() + 1 > 96) {
            os_ << "\n  ";
            column_ = 2;
        } else if (column_ > 0) {
            os_ << ' ';
            column_ += 1;
        }
        os_ << text;
        column_ += text.size();
    }

    void finish() { os_ << '\n'; }

private:
    std::ostringstream& os_;
    std::size_t column_ = 0;
};

void write_terms(LpLine& line, const std::vector<LinearTerm>& terms,
                 const std::vector<VarRef>& variables) {
    bool first = true;
    for (const LinearTerm& term : terms) {
        const std::int64_t coef = term.coefficient;
        std::string sign;
        if (first) {
            sign = coef < 0 ? "-" : "";
            first = false;
        } else {
            line.token(coef < 0 ? "-" : "+");
        }
        const std::int64_t mag = coef < 0 ? -coef : coef;
        const std::string& name = variables[static_cast<std::size_t>(term.var)].name;
        if (mag == 1) {
            line.token(sign + name);
        } else {
            line.token(sign + std::to_string(mag));
            line.token(name);
        }
    }
    if (first) {
        line.token("0");
    }
}

const char* sense_text(Sense sense) {
    switch (sense) {
    case Sense::LessEqual: return "<=";
    case Sense::Equal: return "=";
    case Sense::GreaterEqual: return ">=";
    }
    return "=";
}

} // namespace

std::string export_lp(const Model& model) {
    std::ostringstream os;
    os << "Minimize\n";
    {
        LpLine line(os);
        line.token("obj:");
        write_terms(line, model.objective, model.variables);
        line.finish();
    }
    os << "Subject To\n";
    for (const LinearConstraint& c : model.constraints) {
        LpLine line(os);
        line.token(c.tag + ":");
        write_terms(line, c.terms, model.variables);
        line.token(sense_text(c.sense));
        line.token(std::to_string(c.rhs));
        line.finish();
    }
    bool any_bounds = false;
    for (const VarRef& v : model.variables) {
        if (v.domain == VarDomain::UnitInterval) {
            if (!any_bounds) {
                os << "Bounds\n";
                any_bounds = true;
            }
            os << " 0 <= " << v.name << " <= 1\n";
        }
    }
    os << "Binaries\n";
    for (const VarRef& v : model.variables) {
        if (v.domain == VarDomain::Binary) {
            os << ' ' << v.name << '\n';
        }
    }
    os << "End\n";
    return os.str();
}

std::string export_json(const Model& model) {
    using nlohmann::json;

    json j;
    j["format"] = "mct-model";
    j["version"] = 1;
    j["n"] = model.n;
    j["m"] = model.m;
    j["symmetry"] = model.options.symmetry;
    j["relaxed_flow"] = model.options.relax_flow;

    json vars = json::array();
    for (const VarRef& v : model.variables) {
        const char* kind = v.kind == VarKind::Target    ? "target"
                           : v.kind == VarKind::Control ? "control"
                           : v.kind == VarKind::Width   ? "width"
                                                        : "flow";
        vars.push_back({{"name", v.name},
                        {"kind", kind},
                        {"domain", v.domain == VarDomain::Binary ? "binary" : "unit_interval"}});
    }
    j["variables"] = std::move(vars);

    json objective = json::array();
    for (const LinearTerm& term : model.objective) {
        objective.push_back({{"coef", term.coefficient},
                             {"var", model.variables[static_cast<std::size_t>(term.var)].name}});
    }
    j["objective"] = std::move(objective);

    json constraints = json::array();
    for (const LinearConstraint& c : model.constraints) {
        json terms = json::array();
        for (const LinearTerm& term : c.terms) {
            terms.push_back({{"coef", term.coefficient},
                             {"var", model.variables[static_cast<std::size_t>(term.var)].name}});
        }
        constraints.push_back({{"tag", c.tag},
                               {"terms", std::move(terms)},
                               {"sense", sense_text(c.sense)},
                               {"rhs", c.rhs}});
    }
    j["constraints"] = std::move(constraints);

    return j.dump(2) + "\n";
}

EmbedResult embed_solution(const Circuit& circuit, const Model& model) {
    if (circuit.qubit_count() != model.n || circuit.slot_count() != model.m) {
        throw std::invalid_argument("circuit dimensions do not match the model");
    }

    EmbedResult result;
    result.values.assign(model.variables.size(), 0.0);

    for (int d = 1; d <= model.m; ++d) {
        const auto& slot = circuit.slot(d);
        if (!slot) {
            continue;
        }
        result.values[static_cast<std::size_t>(model.t_var(slot->target(), d))] = 1.0;
        for (int q : slot->controls()) {
            result.values[static_cast<std::size_t>(model.w_var(q, d))] = 1.0;
        }
        result.values[static_cast<std::size_t>(model.y_var(slot->width(), d))] = 1.0;
    }

    for (std::size_t kk = 0; kk < model.networks.size(); ++kk) {
        const CommodityNetwork& net = model.networks[kk];
        InducedFlow flow = induced_flow(circuit, net);
        if (!flow.feasible) {
            result.feasible = false;
            result.commodity = static_cast<int>(kk) + 1;
            result.violating_input = flow.violating_input;
            return result;
        }
        for (std::size_t a = 0; a < flow.arc_values.size(); ++a) {
            result.values[static_cast<std::size_t>(
                model.x_var(static_cast<int>(kk) + 1, static_cast<int>(a)))] =
                flow.arc_values[a];
        }
    }

    result.feasible = true;
    return result;
}

CheckReport check_assignment(const Model& model, const Assignment& assignment) {
    if (assignment.size() != model.variables.size()) {
        throw std::invalid_argument("assignment does not cover all model variables");
    }
    constexpr double eps = 1e-6;

    CheckReport report;
    report.objective = 0.0;
    for (const LinearTerm& term : model.objective) {
        report.objective += static_cast<double>(term.coefficient) *
                            assignment[static_cast<std::size_t>(term.var)];
    }

    for (const LinearConstraint& c : model.constraints) {
        double lhs = 0.0;
        for (const LinearTerm& term : c.terms) {
            lhs += static_cast<double>(term.coefficient) *
                   assignment[static_cast<std::size_t>(term.var)];
        }
        const double rhs = static_cast<double>(c.rhs);
        const bool ok = c.sense == Sense::LessEqual      ? lhs <= rhs + eps
                        : c.sense == Sense::GreaterEqual ? lhs >= rhs - eps
                                                         : std::abs(lhs - rhs) <= eps;
        if (!ok) {
            report.pass = false;
            report.first_violated_tag = c.tag;
            return report;
        }
    }

    report.pass = true;
    return report;
}

} // namespace mct
