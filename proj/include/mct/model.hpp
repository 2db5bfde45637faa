#pragma once

#include "mct/circuit.hpp"
#include "mct/cost.hpp"
#include "mct/flow_network.hpp"
#include "mct/spec.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mct {

enum class VarKind : std::uint8_t { Target, Control, Width, Flow };
enum class VarDomain : std::uint8_t { Binary, UnitInterval };

/// One model variable. Names are deterministic: "t_q_d", "w_q_d", "y_q_d"
/// with 1-based qubit/gate indices, and "x_k_a" with the 1-based commodity
/// index and the arc id from the commodity network's fixed arc order.
struct VarRef {
    std::string name;
    VarKind kind = VarKind::Target;
    VarDomain domain = VarDomain::Binary;
    int qubit = 0;     // t/w/y
    int gate = 0;      // t/w/y
    int commodity = 0; // x, 1-based
    int arc = 0;       // x
};

enum class Sense : std::uint8_t { LessEqual, Equal, GreaterEqual };

struct LinearTerm {
    std::int64_t coefficient = 0;
    int var = 0; // index into Model::variables
};

/// tag identifies the constraint family and instance ("eq3_d1",
/// "eq11b_k2_a12_q3", "sym_empty_d1", ...); exports use it as the row name.
struct LinearConstraint {
    std::string tag;
    std::vector<LinearTerm> terms;
    Sense sense = Sense::LessEqual;
    std::int64_t rhs = 0;
};

struct ModelOptions {
    /// Emit the symmetry-breaking rows restricting the search to unswappable
    /// circuits.
    bool symmetry = true;
    /// Keep flow variables continuous in [0,1]. For a fixed circuit design
    /// the flow subproblems are plain min-cost flows, so integrality comes
    /// for free and the model needs only the 3nm design binaries.
    bool relax_flow = true;
};

/// The assembled optimization model. Everything is ordered deterministically,
/// so exports are byte-stable for identical inputs.
struct Model {
    int n = 0;
    int m = 0;
    ModelOptions options;
    CommoditySet commodities;
    std::vector<CommodityNetwork> networks; // one per commodity, same order
    std::vector<VarRef> variables;
    std::vector<LinearTerm> objective;
    std::vector<LinearConstraint> constraints;

    int t_var(int qubit, int gate) const;
    int w_var(int qubit, int gate) const;
    int y_var(int width, int gate) const;
    int x_var(int commodity, int arc) const; // commodity 1-based
    /// Index of a variable by name, or -1.
    int var_id(std::string_view name) const;

    std::size_t binary_count() const;
};

/// Assemble the model for a specification and gate budget. Throws
/// unrealizable_error when no bijection can meet the specification (checked
/// before any construction work).
Model build_model(const Specification& spec, int gate_slots, ModelOptions options = {});

/// Deterministic LP-format text (Minimize / Subject To / Bounds / Binaries /
/// End) with constraint tags as row names.
std::string export_lp(const Model& model);

/// Deterministic JSON export; top-level fields n, m, variables, objective,
/// constraints. See the README for the schema.
std::string export_json(const Model& model);

/// Values for every model variable, indexed like Model::variables.
using Assignment = std::vector<double>;

/// Result of mapping a concrete circuit onto the model's variables.
struct EmbedResult {
    bool feasible = false;
    int commodity = 0; // 1-based index of the commodity without feasible flow
    std::optional<BasisState> violating_input;
    Assignment values;
};

EmbedResult embed_solution(const Circuit& circuit, const Model& model);

struct CheckReport {
    bool pass = false;
    std::string first_violated_tag;
    double objective = 0.0;
};

/// Evaluate every constraint in build order against a full assignment.
/// Throws std::invalid_argument when the assignment does not cover all
/// variables.
CheckReport check_assignment(const Model& model, const Assignment& assignment);

} // namespace mct
