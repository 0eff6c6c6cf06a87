/* capi.cpp -- the extern-C surface. Exceptions from the core are mapped to
 * status codes here and never cross the boundary. */

#include "ndsap.h"

#include <cstring>
#include <string>

#include <json.hpp>

#include "ndsap/io.hpp"

using namespace ndsap;

struct ndsap_plant {
    TimedPlant model;
};

struct ndsap_comm {
    CommContext ctx;
};

namespace {

thread_local std::string g_last_error;

ndsap_status status_of(const Error& e) {
    switch (e.code()) {
        case Errc::StateExplosion:
            return NDSAP_ERR_STATE_CAP;
        case Errc::SpecUnsatisfiable:
            return NDSAP_ERR_UNSAT;
        case Errc::Parse:
            return NDSAP_ERR_PARSE;
        case Errc::Io:
            return NDSAP_ERR_IO;
        default:
            return NDSAP_ERR_INVALID_MODEL;
    }
}

template <typename Fn>
ndsap_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return NDSAP_ERR_INTERNAL;
    }
}

char* copy_out(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

ndsap_status require(bool ok, const char* message) {
    if (!ok) {
        g_last_error = message;
        return NDSAP_ERR_USAGE;
    }
    return NDSAP_OK;
}

FaultSpec faults_from_json(const std::string& text, const TimedPlant& model, unsigned k) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Error(Errc::Parse, "malformed fault JSON");
    FaultSpec faults;
    faults.k = k;
    try {
        for (const auto& cls : j) {
            faults.names.push_back(cls.at("name").get<std::string>());
            std::vector<EventId> events;
            for (const auto& e : cls.at("events"))
                events.push_back(model.event_index(e.get<std::string>()));
            faults.classes.push_back(std::move(events));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::Parse, std::string("fault JSON: ") + e.what());
    }
    return faults;
}

SynthesisOptions order_from_string(const std::string& order, const TimedPlant& model) {
    SynthesisOptions options;
    if (order.empty() || order == "desc") {
        options.order = PickOrder::Desc;
    } else if (order == "asc") {
        options.order = PickOrder::Asc;
    } else {
        nlohmann::json j = nlohmann::json::parse(order, nullptr, false);
        if (j.is_discarded() || !j.is_array())
            throw Error(Errc::Parse, "order must be \"desc\", \"asc\" or a JSON array");
        for (const auto& p : j) {
            if (!p.is_array() || p.size() != 2)
                throw Error(Errc::Parse, "order entries must be [state, event]");
            options.forced.push_back({model.state_index(p[0].get<std::string>()),
                                      model.event_index(p[1].get<std::string>())});
        }
    }
    return options;
}

RefinedPlant refined_from(const ndsap_plant* plant, const char* faults_json, unsigned k,
                          int liveness, FaultSpec* faults_out) {
    TimedPlant base = plant->model;
    if (liveness) base = add_liveness_loops(base);
    FaultSpec faults = faults_from_json(faults_json, base, k);
    RefinedPlant refined = refine_k_diag(base, faults);
    if (faults_out) *faults_out = std::move(faults);
    return refined;
}

}  // namespace

extern "C" {

const char* ndsap_version(void) { return "0.1.0"; }

const char* ndsap_last_error(void) { return g_last_error.c_str(); }

void ndsap_string_free(char* s) { delete[] s; }

ndsap_status ndsap_plant_parse(const char* json, ndsap_plant** out) {
    if (auto rc = require(json && out, "ndsap_plant_parse: null argument")) return rc;
    return guarded([&] {
        *out = new ndsap_plant{plant_from_json(json)};
        return NDSAP_OK;
    });
}

ndsap_status ndsap_plant_load(const char* path, ndsap_plant** out) {
    if (auto rc = require(path && out, "ndsap_plant_load: null argument")) return rc;
    return guarded([&] {
        *out = new ndsap_plant{load_plant(path)};
        return NDSAP_OK;
    });
}

void ndsap_plant_free(ndsap_plant* plant) { delete plant; }

ndsap_status ndsap_plant_to_json(const ndsap_plant* plant, char** out_json) {
    if (auto rc = require(plant && out_json, "ndsap_plant_to_json: null argument")) return rc;
    return guarded([&] {
        *out_json = copy_out(plant_to_json(plant->model));
        return NDSAP_OK;
    });
}

ndsap_status ndsap_plant_to_dot(const ndsap_plant* plant, char** out_dot) {
    if (auto rc = require(plant && out_dot, "ndsap_plant_to_dot: null argument")) return rc;
    return guarded([&] {
        *out_dot = copy_out(plant_to_dot(plant->model));
        return NDSAP_OK;
    });
}

ndsap_status ndsap_comm_build(const ndsap_plant* plant, unsigned n_o, unsigned n_c,
                              size_t state_cap, ndsap_comm** out) {
    if (auto rc = require(plant && out, "ndsap_comm_build: null argument")) return rc;
    return guarded([&] {
        DelayBounds bounds{n_o, n_c};
        *out = new ndsap_comm{
            make_context(plant->model, bounds, state_cap ? state_cap : kDefaultStateCap)};
        return NDSAP_OK;
    });
}

void ndsap_comm_free(ndsap_comm* comm) { delete comm; }

ndsap_status ndsap_comm_states(const ndsap_comm* comm, size_t* comm_states, size_t* w_states) {
    if (auto rc = require(comm != nullptr, "ndsap_comm_states: null argument")) return rc;
    if (comm_states) *comm_states = comm->ctx.comm.automaton.num_states;
    if (w_states) *w_states = comm->ctx.w.automaton.num_states;
    return NDSAP_OK;
}

ndsap_status ndsap_comm_to_json(const ndsap_comm* comm, char** out_json) {
    if (auto rc = require(comm && out_json, "ndsap_comm_to_json: null argument")) return rc;
    return guarded([&] {
        *out_json = copy_out(comm_to_json(comm->ctx.comm, comm->ctx.model));
        return NDSAP_OK;
    });
}

ndsap_status ndsap_comm_to_dot(const ndsap_comm* comm, int which, char** out_dot) {
    if (auto rc = require(comm && out_dot, "ndsap_comm_to_dot: null argument")) return rc;
    return guarded([&] {
        *out_dot = copy_out(which ? w_to_dot(comm->ctx.w, comm->ctx.comm, comm->ctx.model)
                                  : comm_to_dot(comm->ctx.comm, comm->ctx.model));
        return NDSAP_OK;
    });
}

ndsap_status ndsap_check_feasibility(const ndsap_comm* comm, const char* policy_json,
                                     char** report_json) {
    if (auto rc = require(comm && policy_json, "ndsap_check_feasibility: null argument"))
        return rc;
    return guarded([&] {
        SensorPolicy policy = policy_from_json(policy_json, comm->ctx.model);
        FeasibilityReport report = check_delay_feasible(comm->ctx, policy);
        if (report_json) *report_json = copy_out(feasibility_report_to_json(report, comm->ctx));
        if (!report.feasible) {
            g_last_error = "policy is not delay feasible";
            return NDSAP_ERR_CHECK_FAILED;
        }
        return NDSAP_OK;
    });
}

ndsap_status ndsap_max_subpolicy(const ndsap_comm* comm, const char* policy_json,
                                 char** policy_out, char** pairs_out) {
    if (auto rc = require(comm && policy_json, "ndsap_max_subpolicy: null argument")) return rc;
    return guarded([&] {
        SensorPolicy policy = policy_from_json(policy_json, comm->ctx.model);
        MaxSubpolicyResult result = max_feasible_subpolicy(comm->ctx, policy);
        if (policy_out) *policy_out = copy_out(policy_to_json(result.policy, comm->ctx.model));
        if (pairs_out) *pairs_out = copy_out(pairs_to_json(result.conf, comm->ctx.model));
        return NDSAP_OK;
    });
}

ndsap_status ndsap_synthesize(const ndsap_comm* comm, const char* spec_pairs_json,
                              const char* order, char** policy_out, char** trace_out) {
    if (auto rc = require(comm && spec_pairs_json, "ndsap_synthesize: null argument")) return rc;
    return guarded([&] {
        PairSet spec = pairs_from_json(spec_pairs_json, comm->ctx.model);
        SynthesisOptions options = order_from_string(order ? order : "", comm->ctx.model);
        SynthesisResult result = minimize_sap(comm->ctx, spec, options);
        if (policy_out) *policy_out = copy_out(policy_to_json(result.policy, comm->ctx.model));
        if (trace_out) *trace_out = copy_out(trace_to_json(result.trace, comm->ctx.model));
        return NDSAP_OK;
    });
}

ndsap_status ndsap_diag_refine(const ndsap_plant* plant, const char* faults_json, unsigned k,
                               int add_liveness, ndsap_plant** refined_out) {
    if (auto rc = require(plant && faults_json && refined_out, "ndsap_diag_refine: null argument"))
        return rc;
    return guarded([&] {
        RefinedPlant refined = refined_from(plant, faults_json, k, add_liveness, nullptr);
        *refined_out = new ndsap_plant{std::move(refined.plant)};
        return NDSAP_OK;
    });
}

ndsap_status ndsap_diag_spec(const ndsap_plant* plant, const char* faults_json, unsigned k,
                             int add_liveness, char** pairs_out) {
    if (auto rc = require(plant && faults_json && pairs_out, "ndsap_diag_spec: null argument"))
        return rc;
    return guarded([&] {
        FaultSpec faults;
        RefinedPlant refined = refined_from(plant, faults_json, k, add_liveness, &faults);
        *pairs_out = copy_out(pairs_to_json(diag_spec(refined, faults), refined.plant));
        return NDSAP_OK;
    });
}

ndsap_status ndsap_diag_lift_policy(const ndsap_plant* plant, const char* faults_json, unsigned k,
                                    int add_liveness, const char* base_policy_json,
                                    char** refined_policy_out) {
    if (auto rc = require(plant && faults_json && base_policy_json && refined_policy_out,
                          "ndsap_diag_lift_policy: null argument"))
        return rc;
    return guarded([&] {
        RefinedPlant refined = refined_from(plant, faults_json, k, add_liveness, nullptr);
        TimedPlant base = plant->model;
        if (add_liveness) base = add_liveness_loops(base);
        SensorPolicy policy = policy_from_json(base_policy_json, base);
        *refined_policy_out =
            copy_out(policy_to_json(lift_policy(refined, policy), refined.plant));
        return NDSAP_OK;
    });
}

ndsap_status ndsap_diag_check(const ndsap_plant* plant, const char* faults_json, unsigned k,
                              unsigned n_o, unsigned n_c, const char* policy_json,
                              int policy_is_refined, int add_liveness, size_t state_cap,
                              char** witnesses_out) {
    if (auto rc =
            require(plant && faults_json && policy_json, "ndsap_diag_check: null argument"))
        return rc;
    return guarded([&] {
        FaultSpec faults;
        RefinedPlant refined = refined_from(plant, faults_json, k, add_liveness, &faults);
        SensorPolicy policy;
        if (policy_is_refined) {
            policy = policy_from_json(policy_json, refined.plant);
        } else {
            TimedPlant base = plant->model;
            if (add_liveness) base = add_liveness_loops(base);
            policy = lift_policy(refined, policy_from_json(policy_json, base));
        }
        DiagCheckResult result =
            check_delay_k_diag(refined, faults, DelayBounds{n_o, n_c}, policy,
                               state_cap ? state_cap : kDefaultStateCap);
        if (witnesses_out)
            *witnesses_out = copy_out(pairs_to_json(result.witnesses, refined.plant));
        if (!result.diagnosable) {
            g_last_error = "language is not delay K-diagnosable under the policy";
            return NDSAP_ERR_CHECK_FAILED;
        }
        return NDSAP_OK;
    });
}

ndsap_status ndsap_synthesize_dec(const ndsap_plant* plant, const char* agents_json,
                                  const char* joint_spec_json, int randomize,
                                  unsigned long long seed, size_t state_cap,
                                  char** policies_out) {
    if (auto rc = require(plant && agents_json && joint_spec_json && policies_out,
                          "ndsap_synthesize_dec: null argument"))
        return rc;
    return guarded([&] {
        auto agents = agents_from_json(agents_json, plant->model);
        JointSpec spec = joint_spec_from_json(joint_spec_json, plant->model, agents.size() + 1);
        DecentralizedOptions options;
        options.randomize = randomize != 0;
        options.seed = seed;
        if (state_cap) options.state_cap = state_cap;
        PolicyVector result = minimize_decentralized(plant->model, agents, spec, options);
        *policies_out = copy_out(policy_vector_to_json(result, plant->model));
        return NDSAP_OK;
    });
}

ndsap_status ndsap_joint_check(const ndsap_plant* plant, const char* agents_json,
                               const char* policies_json, const char* joint_spec_json,
                               int engine, unsigned horizon, size_t state_cap,
                               char** witnesses_out) {
    if (auto rc = require(plant && agents_json && policies_json && joint_spec_json,
                          "ndsap_joint_check: null argument"))
        return rc;
    return guarded([&] {
        auto agents = agents_from_json(agents_json, plant->model);
        PolicyVector policies = policy_vector_from_json(policies_json, plant->model);
        if (policies.policies.size() != agents.size())
            throw Error(Errc::InvalidModel, "policy count does not match agent count");
        JointSpec spec = joint_spec_from_json(joint_spec_json, plant->model, agents.size() + 1);
        JointCheckResult result =
            engine ? joint_conf_check_brute(plant->model, agents, policies, spec, horizon)
                   : joint_conf_check(plant->model, agents, policies, spec,
                                      state_cap ? state_cap : kDefaultStateCap);
        if (witnesses_out) {
            nlohmann::json j = nlohmann::json::array();
            for (const auto& t : result.witnesses) {
                nlohmann::json tuple = nlohmann::json::array();
                for (StateId q : t) tuple.push_back(plant->model.state_names[q]);
                j.push_back(tuple);
            }
            *witnesses_out = copy_out(j.dump(2) + "\n");
        }
        if (!result.disjoint) {
            g_last_error = "joint specification violated";
            return NDSAP_ERR_CHECK_FAILED;
        }
        return NDSAP_OK;
    });
}

ndsap_status ndsap_simulate(const ndsap_comm* comm, const char* policy_json, unsigned runs,
                            unsigned long long seed, unsigned max_len, char** summary_json,
                            char** trace_log_out) {
    if (auto rc = require(comm && policy_json, "ndsap_simulate: null argument")) return rc;
    return guarded([&] {
        SensorPolicy policy = policy_from_json(policy_json, comm->ctx.model);
        std::size_t total_steps = 0;
        std::size_t total_observed = 0;
        std::string log;
        for (unsigned r = 0; r < runs; ++r) {
            SimTrace trace =
                simulate_run(comm->ctx.comm, comm->ctx.model, policy, seed + r, max_len);
            total_steps += trace.mu.size();
            total_observed += trace.observation.size();
            if (trace_log_out) {
                log += "run " + std::to_string(r) + "\n";
                log += sim_trace_to_text(trace, comm->ctx.comm, comm->ctx.model);
            }
        }
        if (summary_json) {
            nlohmann::json j{{"runs", runs},
                             {"seed", seed},
                             {"max_len", max_len},
                             {"total_steps", total_steps},
                             {"total_observed", total_observed}};
            *summary_json = copy_out(j.dump(2) + "\n");
        }
        if (trace_log_out) *trace_log_out = copy_out(log);
        return NDSAP_OK;
    });
}

}  // extern "C"
