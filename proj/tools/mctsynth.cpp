#include "mct/circuit.hpp"
#include "mct/cost.hpp"
#include "mct/model.hpp"
#include "mct/search.hpp"
#include "mct/simulate.hpp"
#include "mct/spec.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

// Exit codes are the machine contract:
//   0 success / optimal, 1 parse or dimension error, 2 unrealizable
//   specification, 3 infeasible or failed verification, 4 time limit.
constexpr int exit_ok = 0;
constexpr int exit_parse = 1;
constexpr int exit_unrealizable = 2;
constexpr int exit_infeasible = 3;
constexpr int exit_timeout = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw mct::parse_error("cannot read file: " + path);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw mct::parse_error("cannot write file: " + path);
    }
    out << content;
}

int default_threads() {
    if (const char* env = std::getenv("MCTSYNTH_THREADS")) {
        const int value = std::atoi(env);
        if (value >= 1) {
            return value;
        }
    }
    return 1;
}

const char* status_name(mct::SearchStatus status) {
    switch (status) {
    case mct::SearchStatus::Optimal: return "optimal";
    case mct::SearchStatus::Feasible: return "feasible";
    case mct::SearchStatus::Infeasible: return "infeasible";
    case mct::SearchStatus::TimedOut: return "timed_out";
    }
    return "unknown";
}

std::string echo_command(int argc, char** argv) {
    std::string echo;
    for (int i = 0; i < argc; ++i) {
        if (i > 0) {
            echo += ' ';
        }
        echo += argv[i];
    }
    return echo;
}

struct SynthArgs {
    std::string spec_path;
    int gates = 0;
    double time_limit = 3600.0;
    bool no_symmetry = false;
    std::string out_path;
    bool json = false;
};

int cmd_synth(const SynthArgs& args, const std::string& command_echo) {
    const mct::Specification spec = mct::parse_spec(read_file(args.spec_path));
    if (!mct::validate_realizable(spec)) {
        std::cerr << "error: specification is unrealizable (no bijection matches the output"
                     " patterns)\n";
        return exit_unrealizable;
    }

    mct::SearchOptions options;
    options.time_limit_seconds = args.time_limit;
    options.symmetry_pruning = !args.no_symmetry;
    options.threads = default_threads();
    const mct::SearchOutcome outcome = mct::synthesize(spec, args.gates, options);

    std::string circuit_text;
    if (outcome.best_circuit) {
        circuit_text = mct::format_circuit(*outcome.best_circuit);
        if (!args.out_path.empty()) {
            write_file(args.out_path, circuit_text);
        }
    }

    if (args.json) {
        nlohmann::json report;
        report["command"] = command_echo;
        report["spec_path"] = args.spec_path;
        report["n"] = spec.qubit_count();
        report["m"] = args.gates;
        report["status"] = status_name(outcome.status);
        if (outcome.best_cost) {
            report["cost"] = *outcome.best_cost;
        } else {
            report["cost"] = nullptr;
        }
        report["runtime_seconds"] = outcome.elapsed_seconds;
        report["nodes_explored"] = outcome.nodes_explored;
        report["outputs"] = nlohmann::json::object();
        if (outcome.best_circuit && !args.out_path.empty()) {
            report["outputs"]["circuit"] = args.out_path;
        }
        std::cout << report.dump(2) << '\n';
    } else {
        std::cout << "status: " << status_name(outcome.status) << '\n';
        if (outcome.best_cost) {
            std::cout << "cost: " << *outcome.best_cost << '\n';
        }
        if (!outcome.proof.empty()) {
            std::cout << "proof: " << outcome.proof << '\n';
        }
        std::cout << "nodes: " << outcome.nodes_explored << '\n';
        std::cout << "runtime_seconds: " << outcome.elapsed_seconds << '\n';
        if (outcome.best_circuit && args.out_path.empty()) {
            std::cout << circuit_text;
        }
    }

    switch (outcome.status) {
    case mct::SearchStatus::Optimal: return exit_ok;
    case mct::SearchStatus::Infeasible: return exit_infeasible;
    case mct::SearchStatus::TimedOut: return exit_timeout;
    case mct::SearchStatus::Feasible: return exit_ok; // not produced by synthesize
    }
    return exit_ok;
}

int cmd_verify(const std::string& circuit_path, const std::string& spec_path) {
    const mct::Circuit circuit = mct::parse_circuit(read_file(circuit_path));
    const mct::Specification spec = mct::parse_spec(read_file(spec_path));
    if (circuit.qubit_count() != spec.qubit_count()) {
        std::cerr << "error: circuit has " << circuit.qubit_count()
                  << " qubits but the specification has " << spec.qubit_count() << '\n';
        return exit_parse;
    }
    const auto violation = mct::first_violation(circuit, spec);
    if (!violation) {
        std::cout << "ok: circuit satisfies the specification\n";
        return exit_ok;
    }
    const mct::BasisState output = mct::run_circuit(circuit, *violation);
    std::cout << "violated: input " << violation->str() << " maps to " << output.str()
              << ", specification requires " << spec.row(*violation).str() << '\n';
    return exit_infeasible;
}

int cmd_cost(const std::string& circuit_path) {
    const mct::Circuit circuit = mct::parse_circuit(read_file(circuit_path));
    std::cout << mct::circuit_cost(circuit) << '\n';
    return exit_ok;
}

struct ExportArgs {
    std::string spec_path;
    int gates = 0;
    std::string format = "lp";
    bool no_symmetry = false;
    bool binary_x = false;
    std::string out_path;
};

int cmd_export(const ExportArgs& args) {
    const mct::Specification spec = mct::parse_spec(read_file(args.spec_path));
    mct::ModelOptions options;
    options.symmetry = !args.no_symmetry;
    options.relax_flow = !args.binary_x;

    mct::Model model;
    try {
        model = mct::build_model(spec, args.gates, options);
    } catch (const mct::unrealizable_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_unrealizable;
    }

    const std::string text =
        args.format == "json" ? mct::export_json(model) : mct::export_lp(model);
    if (args.out_path.empty()) {
        std::cout << text;
    } else {
        write_file(args.out_path, text);
    }
    return exit_ok;
}

int cmd_canonicalize(const std::string& circuit_path, const std::string& out_path) {
    const mct::Circuit circuit = mct::parse_circuit(read_file(circuit_path));
    const bool already = mct::is_canonical(circuit);
    const mct::Circuit result = mct::canonicalize(circuit);
    std::cout << (already ? "already canonical\n" : "canonicalized\n");
    const std::string text = mct::format_circuit(result);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_file(out_path, text);
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mctsynth: exact synthesis toolkit for multiple-control Toffoli circuits"};
    app.require_subcommand(1);

    SynthArgs synth_args;
    CLI::App* synth = app.add_subcommand("synth", "synthesize a minimum-cost circuit");
    synth->add_option("spec", synth_args.spec_path, "specification file")->required();
    synth->add_option("--gates", synth_args.gates, "gate slot budget m")
        ->required()
        ->check(CLI::NonNegativeNumber);
    synth->add_option("--time-limit", synth_args.time_limit, "time limit in seconds");
    synth->add_flag("--no-symmetry", synth_args.no_symmetry, "disable symmetry pruning");
    synth->add_option("--out", synth_args.out_path, "write the witness circuit here");
    synth->add_flag("--json", synth_args.json, "print a JSON run report");

    std::string verify_circuit, verify_spec;
    CLI::App* verify = app.add_subcommand("verify", "check a circuit against a specification");
    verify->add_option("circuit", verify_circuit, "circuit file")->required();
    verify->add_option("spec", verify_spec, "specification file")->required();

    std::string cost_circuit;
    CLI::App* cost = app.add_subcommand("cost", "print the quantum cost of a circuit");
    cost->add_option("circuit", cost_circuit, "circuit file")->required();

    ExportArgs export_args;
    CLI::App* exporter = app.add_subcommand("export", "export the optimization model");
    exporter->add_option("spec", export_args.spec_path, "specification file")->required();
    exporter->add_option("--gates", export_args.gates, "gate slot budget m")
        ->required()
        ->check(CLI::PositiveNumber);
    exporter->add_option("--format", export_args.format, "lp or json")
        ->check(CLI::IsMember({"lp", "json"}));
    exporter->add_flag("--no-symmetry", export_args.no_symmetry,
                       "omit symmetry-breaking constraints");
    exporter->add_flag("--binary-x", export_args.binary_x,
                       "keep flow variables binary instead of relaxed");
    exporter->add_option("--out", export_args.out_path, "write the export here");

    std::string canon_circuit, canon_out;
    CLI::App* canon = app.add_subcommand("canonicalize", "apply swaps until unswappable");
    canon->add_option("circuit", canon_circuit, "circuit file")->required();
    canon->add_option("--out", canon_out, "write the result here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed()) {
            return cmd_synth(synth_args, echo_command(argc, argv));
        }
        if (verify->parsed()) {
            return cmd_verify(verify_circuit, verify_spec);
        }
        if (cost->parsed()) {
            return cmd_cost(cost_circuit);
        }
        if (exporter->parsed()) {
            return cmd_export(export_args);
        }
        if (canon->parsed()) {
            return cmd_canonicalize(canon_circuit, canon_out);
        }
    } catch (const mct::parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_parse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_parse;
    }
    return exit_ok;
}
