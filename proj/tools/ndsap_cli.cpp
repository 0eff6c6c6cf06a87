/* ndsap_cli.cpp -- command-line driver over the C API.
 *
 * Exit codes: 0 success/satisfied, 1 check failed (witnesses on stdout),
 * 2 usage error, 3 specification unsatisfiable even under full activation,
 * 4 state cap exceeded.
 */

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ndsap.h"

namespace {

struct StringOut {
    char* value = nullptr;
    ~StringOut() { ndsap_string_free(value); }
    std::string str() const { return value ? value : ""; }
};

using PlantPtr = std::unique_ptr<ndsap_plant, decltype(&ndsap_plant_free)>;
using CommPtr = std::unique_ptr<ndsap_comm, decltype(&ndsap_comm_free)>;

int exit_code_for(ndsap_status status) {
    switch (status) {
        case NDSAP_OK:
            return 0;
        case NDSAP_ERR_CHECK_FAILED:
            return 1;
        case NDSAP_ERR_USAGE:
            return 2;
        case NDSAP_ERR_UNSAT:
            return 3;
        case NDSAP_ERR_STATE_CAP:
            return 4;
        default:
            return 2;
    }
}

int fail(ndsap_status status) {
    std::cerr << "error: " << ndsap_last_error() << "\n";
    return exit_code_for(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CLI::ValidationError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spill(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CLI::ValidationError("cannot write " + path);
    out << content;
}

PlantPtr load_plant_or_throw(const std::string& path, ndsap_status& status) {
    ndsap_plant* raw = nullptr;
    status = ndsap_plant_load(path.c_str(), &raw);
    return PlantPtr(raw, ndsap_plant_free);
}

std::string faults_to_json(const std::vector<std::string>& clauses) {
    // name=e1,e2 clauses -> [{"name":..., "events":[...]}]
    std::string out = "[";
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        const std::string& clause = clauses[i];
        auto eq = clause.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--fault must look like name=e1,e2");
        if (i) out += ",";
        out += "{\"name\":\"" + clause.substr(0, eq) + "\",\"events\":[";
        std::string rest = clause.substr(eq + 1);
        std::size_t start = 0;
        bool first = true;
        while (start <= rest.size()) {
            auto comma = rest.find(',', start);
            std::string name =
                rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            if (!name.empty()) {
                if (!first) out += ",";
                out += "\"" + name + "\"";
                first = false;
            }
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        out += "]}";
    }
    return out + "]";
}

std::string order_argument(const std::string& order) {
    if (order == "desc" || order == "asc" || order.empty()) return order;
    return slurp(order);  // a file holding the explicit pick list
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sensor-activation policy synthesis for networked discrete-event systems"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    std::string model_path, policy_path, spec_path, agents_path, out_path, trace_path,
        dot_path, pairs_path, order = "desc";
    unsigned n_o = 0, n_c = 0, k = 1, runs = 1, max_len = 50, horizon = 8;
    std::size_t cap = 0;
    unsigned long long seed = 1;
    bool want_w = false, liveness = false, refined_policy = false, randomize = false,
         brute = false;
    std::vector<std::string> fault_clauses;

    auto add_bounds = [&](CLI::App* cmd) {
        cmd->add_option("--no", n_o, "observation delay bound (time units)")->required();
        cmd->add_option("--nc", n_c, "control delay bound (time units)")->required();
    };

    auto* build = app.add_subcommand("build-comm", "build the communication automaton");
    build->add_option("model", model_path)->required();
    add_bounds(build);
    build->add_option("--dot", dot_path, "write DOT rendering");
    build->add_option("-o,--out", out_path, "write automaton JSON");
    build->add_flag("--w", want_w, "export the refined automaton W instead");
    build->add_option("--cap", cap, "state cap");

    auto* check = app.add_subcommand("check-feasibility", "check delay feasibility of a policy");
    check->add_option("model", model_path)->required();
    check->add_option("policy", policy_path)->required();
    add_bounds(check);
    check->add_option("--cap", cap, "state cap");

    auto* maxsub = app.add_subcommand("max-subpolicy", "maximal delay-feasible subpolicy");
    maxsub->add_option("model", model_path)->required();
    maxsub->add_option("policy", policy_path)->required();
    add_bounds(maxsub);
    maxsub->add_option("-o,--out", out_path, "write subpolicy JSON");
    maxsub->add_option("--pairs", pairs_path, "write confusable pairs JSON");
    maxsub->add_option("--cap", cap, "state cap");

    auto* synth = app.add_subcommand("synthesize", "minimal policy for a pair specification");
    synth->add_option("model", model_path)->required();
    synth->add_option("spec", spec_path)->required();
    add_bounds(synth);
    synth->add_option("--order", order, "pick order: desc, asc, or a JSON file");
    synth->add_option("-o,--out", out_path, "write policy JSON");
    synth->add_option("--trace", trace_path, "write synthesis trace JSON");
    synth->add_option("--cap", cap, "state cap");

    auto* diag = app.add_subcommand("diag", "delay K-diagnosability");
    diag->require_subcommand(1);
    auto add_diag_common = [&](CLI::App* cmd) {
        cmd->add_option("model", model_path)->required();
        cmd->add_option("--fault", fault_clauses, "fault class, name=e1,e2")->required();
        cmd->add_option("--k", k, "detection window")->required();
        cmd->add_flag("--live", liveness, "add unobservable self-loops at terminal states");
    };
    auto* diag_refine = diag->add_subcommand("refine", "counter-refined plant");
    add_diag_common(diag_refine);
    diag_refine->add_option("-o,--out", out_path, "write refined model JSON");
    auto* diag_spec_cmd = diag->add_subcommand("spec", "disambiguation specification");
    add_diag_common(diag_spec_cmd);
    diag_spec_cmd->add_option("-o,--out", out_path, "write pair specification JSON");
    auto* diag_check = diag->add_subcommand("check", "check delay K-diagnosability");
    add_diag_common(diag_check);
    add_bounds(diag_check);
    diag_check->add_option("--policy", policy_path, "policy JSON")->required();
    diag_check->add_flag("--refined-policy", refined_policy,
                         "policy addresses refined states directly");
    diag_check->add_option("--cap", cap, "state cap");

    auto* dec = app.add_subcommand("synthesize-dec", "decentralized minimal policy vector");
    dec->add_option("model", model_path)->required();
    dec->add_option("spec", spec_path, "joint specification (tuples)")->required();
    dec->add_option("--agents", agents_path, "agents JSON")->required();
    dec->add_flag("--random", randomize, "randomize agent order");
    dec->add_option("--seed", seed, "seed for --random");
    dec->add_option("-o,--out", out_path, "write policy vector JSON");
    dec->add_option("--cap", cap, "state cap");

    auto* joint = app.add_subcommand("joint-check", "joint confusability against a spec");
    joint->add_option("model", model_path)->required();
    joint->add_option("spec", spec_path)->required();
    joint->add_option("--agents", agents_path)->required();
    joint->add_option("--policies", policy_path, "policy vector JSON")->required();
    joint->add_flag("--brute", brute, "bounded brute-force engine");
    joint->add_option("--horizon", horizon, "brute-force word length bound");
    joint->add_option("--cap", cap, "state cap");

    auto* sim = app.add_subcommand("simulate", "seeded random walks");
    sim->add_option("model", model_path)->required();
    sim->add_option("policy", policy_path)->required();
    add_bounds(sim);
    sim->add_option("--runs", runs, "number of runs");
    sim->add_option("--seed", seed, "base seed");
    sim->add_option("--max-len", max_len, "steps per run");
    sim->add_option("--trace-log", trace_path, "write per-run trace log");
    sim->add_option("--cap", cap, "state cap");

    auto* dot = app.add_subcommand("export-dot", "DOT rendering of a model");
    dot->add_option("model", model_path)->required();
    dot->add_option("-o,--out", out_path, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        ndsap_status status = NDSAP_OK;
        PlantPtr plant = load_plant_or_throw(model_path, status);
        if (status != NDSAP_OK) return fail(status);

        auto build_comm = [&](CommPtr& comm) {
            ndsap_comm* raw = nullptr;
            ndsap_status rc = ndsap_comm_build(plant.get(), n_o, n_c, cap, &raw);
            comm = CommPtr(raw, ndsap_comm_free);
            return rc;
        };

        if (build->parsed()) {
            CommPtr comm(nullptr, ndsap_comm_free);
            if (auto rc = build_comm(comm)) return fail(rc);
            std::size_t comm_states = 0, w_states = 0;
            ndsap_comm_states(comm.get(), &comm_states, &w_states);
            std::cout << "communication automaton: " << comm_states << " states; W: " << w_states
                      << " states\n";
            if (!dot_path.empty()) {
                StringOut dot_text;
                if (auto rc = ndsap_comm_to_dot(comm.get(), want_w ? 1 : 0, &dot_text.value))
                    return fail(rc);
                spill(dot_path, dot_text.str());
            }
            if (!out_path.empty()) {
                StringOut json_text;
                if (auto rc = ndsap_comm_to_json(comm.get(), &json_text.value)) return fail(rc);
                spill(out_path, json_text.str());
            }
            return 0;
        }

        if (check->parsed()) {
            CommPtr comm(nullptr, ndsap_comm_free);
            if (auto rc = build_comm(comm)) return fail(rc);
            StringOut report;
            std::string policy = slurp(policy_path);
            ndsap_status rc = ndsap_check_feasibility(comm.get(), policy.c_str(), &report.value);
            std::cout << report.str();
            if (rc == NDSAP_ERR_CHECK_FAILED) return 1;
            if (rc != NDSAP_OK) return fail(rc);
            return 0;
        }

        if (maxsub->parsed()) {
            CommPtr comm(nullptr, ndsap_comm_free);
            if (auto rc = build_comm(comm)) return fail(rc);
            StringOut policy_out, pairs_out;
            std::string policy = slurp(policy_path);
            if (auto rc = ndsap_max_subpolicy(comm.get(), policy.c_str(), &policy_out.value,
                                              &pairs_out.value))
                return fail(rc);
            if (out_path.empty())
                std::cout << policy_out.str();
            else
                spill(out_path, policy_out.str());
            if (!pairs_path.empty()) spill(pairs_path, pairs_out.str());
            return 0;
        }

        if (synth->parsed()) {
            CommPtr comm(nullptr, ndsap_comm_free);
            if (auto rc = build_comm(comm)) return fail(rc);
            StringOut policy_out, trace_out;
            std::string spec = slurp(spec_path);
            std::string order_arg = order_argument(order);
            if (auto rc = ndsap_synthesize(comm.get(), spec.c_str(), order_arg.c_str(),
                                           &policy_out.value, &trace_out.value))
                return fail(rc);
            if (out_path.empty())
                std::cout << policy_out.str();
            else
                spill(out_path, policy_out.str());
            if (!trace_path.empty()) spill(trace_path, trace_out.str());
            return 0;
        }

        if (diag->parsed()) {
            std::string faults = faults_to_json(fault_clauses);
            if (diag_refine->parsed()) {
                ndsap_plant* raw = nullptr;
                if (auto rc = ndsap_diag_refine(plant.get(), faults.c_str(), k,
                                                liveness ? 1 : 0, &raw))
                    return fail(rc);
                PlantPtr refined(raw, ndsap_plant_free);
                StringOut json_text;
                if (auto rc = ndsap_plant_to_json(refined.get(), &json_text.value))
                    return fail(rc);
                if (out_path.empty())
                    std::cout << json_text.str();
                else
                    spill(out_path, json_text.str());
                return 0;
            }
            if (diag_spec_cmd->parsed()) {
                StringOut pairs_out;
                if (auto rc = ndsap_diag_spec(plant.get(), faults.c_str(), k, liveness ? 1 : 0,
                                              &pairs_out.value))
                    return fail(rc);
                if (out_path.empty())
                    std::cout << pairs_out.str();
                else
                    spill(out_path, pairs_out.str());
                return 0;
            }
            // diag check
            StringOut witnesses;
            std::string policy = slurp(policy_path);
            ndsap_status rc =
                ndsap_diag_check(plant.get(), faults.c_str(), k, n_o, n_c, policy.c_str(),
                                 refined_policy ? 1 : 0, liveness ? 1 : 0, cap, &witnesses.value);
            if (rc == NDSAP_ERR_CHECK_FAILED) {
                std::cout << "not delay " << k << "-diagnosable; witness pairs:\n"
                          << witnesses.str();
                return 1;
            }
            if (rc != NDSAP_OK) return fail(rc);
            std::cout << "delay " << k << "-diagnosable\n";
            return 0;
        }

        if (dec->parsed()) {
            StringOut policies;
            std::string agents = slurp(agents_path);
            std::string spec = slurp(spec_path);
            if (auto rc = ndsap_synthesize_dec(plant.get(), agents.c_str(), spec.c_str(),
                                               randomize ? 1 : 0, seed, cap, &policies.value))
                return fail(rc);
            if (out_path.empty())
                std::cout << policies.str();
            else
                spill(out_path, policies.str());
            return 0;
        }

        if (joint->parsed()) {
            StringOut witnesses;
            std::string agents = slurp(agents_path);
            std::string policies = slurp(policy_path);
            std::string spec = slurp(spec_path);
            ndsap_status rc =
                ndsap_joint_check(plant.get(), agents.c_str(), policies.c_str(), spec.c_str(),
                                  brute ? 1 : 0, horizon, cap, &witnesses.value);
            if (rc == NDSAP_ERR_CHECK_FAILED) {
                std::cout << "joint specification violated; witness tuples:\n" << witnesses.str();
                return 1;
            }
            if (rc != NDSAP_OK) return fail(rc);
            std::cout << "joint specification satisfied\n";
            return 0;
        }

        if (sim->parsed()) {
            CommPtr comm(nullptr, ndsap_comm_free);
            if (auto rc = build_comm(comm)) return fail(rc);
            StringOut summary, log;
            std::string policy = slurp(policy_path);
            if (auto rc = ndsap_simulate(comm.get(), policy.c_str(), runs, seed, max_len,
                                         &summary.value,
                                         trace_path.empty() ? nullptr : &log.value))
                return fail(rc);
            std::cout << summary.str();
            if (!trace_path.empty()) spill(trace_path, log.str());
            return 0;
        }

        if (dot->parsed()) {
            StringOut dot_text;
            if (auto rc = ndsap_plant_to_dot(plant.get(), &dot_text.value)) return fail(rc);
            if (out_path.empty())
                std::cout << dot_text.str();
            else
                spill(out_path, dot_text.str());
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
