#include "ndsap/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ndsap {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Error(Errc::Parse, "malformed JSON");
    return j;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::Io, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::Io, "cannot write " + path);
    out << content;
}

TimedPlant plant_from_json(const std::string& text) {
    json j = parse(text);
    TimedPlant model;
    try {
        for (const auto& s : j.at("states")) model.state_names.push_back(s.get<std::string>());
        for (const auto& e : j.at("events").at("observable")) {
            model.event_names.push_back(e.get<std::string>());
            model.observable.push_back(true);
        }
        for (const auto& e : j.at("events").value("unobservable", json::array())) {
            model.event_names.push_back(e.get<std::string>());
            model.observable.push_back(false);
        }
        model.transitions.resize(model.num_states());
        model.initial = model.state_index(j.at("initial").get<std::string>());
        for (const auto& t : j.at("transitions")) {
            StateId from = model.state_index(t.at("from").get<std::string>());
            EventId event = model.event_index(t.at("event").get<std::string>());
            StateId to = model.state_index(t.at("to").get<std::string>());
            std::uint32_t t_min = t.at("t_min").get<std::uint32_t>();
            auto& out = model.transitions[from];
            auto it = std::lower_bound(
                out.begin(), out.end(), event,
                [](const PlantTransition& a, EventId e) { return a.event < e; });
            if (it != out.end() && it->event == event)
                throw Error(Errc::DuplicateTransition,
                            "duplicate transition on (" + t.at("from").get<std::string>() + ", " +
                                t.at("event").get<std::string>() + ")");
            out.insert(it, {event, to, t_min});
        }
    } catch (const json::exception& e) {
        throw Error(Errc::Parse, std::string("model JSON: ") + e.what());
    }
    validate_plant(model);
    return model;
}

TimedPlant load_plant(const std::string& path) { return plant_from_json(read_file(path)); }

std::string plant_to_json(const TimedPlant& model) {
    json j;
    j["states"] = model.state_names;
    j["initial"] = model.state_names[model.initial];
    json obs = json::array(), unobs = json::array();
    for (EventId e = 0; e < model.num_events(); ++e)
        (model.observable[e] ? obs : unobs).push_back(model.event_names[e]);
    j["events"] = {{"observable", obs}, {"unobservable", unobs}};
    json trans = json::array();
    for (StateId q = 0; q < model.num_states(); ++q)
        for (const auto& t : model.transitions[q])
            trans.push_back({{"from", model.state_names[q]},
                             {"event", model.event_names[t.event]},
                             {"to", model.state_names[t.target]},
                             {"t_min", t.t_min}});
    j["transitions"] = trans;
    return j.dump(2) + "\n";
}

SensorPolicy policy_from_json(const std::string& text, const TimedPlant& model) {
    json j = parse(text);
    SensorPolicy policy;
    try {
        for (const auto& entry : j.at("activate"))
            policy.insert(model.state_index(entry.at("state").get<std::string>()),
                          model.event_index(entry.at("event").get<std::string>()));
    } catch (const json::exception& e) {
        throw Error(Errc::Parse, std::string("policy JSON: ") + e.what());
    }
    policy.validate_against(model);
    return policy;
}

SensorPolicy load_policy(const std::string& path, const TimedPlant& model) {
    return policy_from_json(read_file(path), model);
}

std::string policy_to_json(const SensorPolicy& policy, const TimedPlant& model) {
    json entries = json::array();
    for (const auto& [q, e] : policy.entries())
        entries.push_back(
            {{"state", model.state_names[q]}, {"event", model.event_names[e]}});
    return json{{"activate", entries}}.dump(2) + "\n";
}

PairSet pairs_from_json(const std::string& text, const TimedPlant& model) {
    json j = parse(text);
    if (j.is_object() && j.contains("pairs")) j = j["pairs"];
    PairSet out;
    try {
        for (const auto& p : j) {
            if (!p.is_array() || p.size() != 2)
                throw Error(Errc::Parse, "pair file entries must be two-element arrays");
            out.insert(model.state_index(p[0].get<std::string>()),
                       model.state_index(p[1].get<std::string>()));
        }
    } catch (const json::exception& e) {
        throw Error(Errc::Parse, std::string("pairs JSON: ") + e.what());
    }
    return out;
}

PairSet load_pairs(const std::string& path, const TimedPlant& model) {
    return pairs_from_json(read_file(path), model);
}

std::string pairs_to_json(const PairSet& pairs, const TimedPlant& model) {
    json j = json::array();
    for (const auto& [a, b] : pairs.non_diagonal())
        j.push_back({model.state_names[a], model.state_names[b]});
    return j.dump(2) + "\n";
}

std::vector<AgentProfile> agents_from_json(const std::string& text, const TimedPlant& model) {
    json j = parse(text);
    std::vector<AgentProfile> agents;
    try {
        for (const auto& a : j) {
            AgentProfile agent;
            agent.id = a.at("id").get<std::uint32_t>();
            for (const auto& e : a.at("observable"))
                agent.observable.push_back(model.event_index(e.get<std::string>()));
            agent.bounds.n_o = a.at("no").get<std::uint32_t>();
            agent.bounds.n_c = a.at("nc").get<std::uint32_t>();
            agents.push_back(std::move(agent));
        }
    } catch (const json::exception& e) {
        throw Error(Errc::Parse, std::string("agents JSON: ") + e.what());
    }
    return agents;
}

std::vector<AgentProfile> load_agents(const std::string& path, const TimedPlant& model) {
    return agents_from_json(read_file(path), model);
}

JointSpec joint_spec_from_json(const std::string& text, const TimedPlant& model,
                               std::size_t arity) {
    json j = parse(text);
    if (j.is_object() && j.contains("tuples")) j = j["tuples"];
    JointSpec spec;
    spec.arity = arity;
    try {
        for (const auto& t : j) {
            if (!t.is_array() || t.size() != arity)
                throw Error(Errc::Parse, "joint spec tuples must have " + std::to_string(arity) +
                                             " components");
            JointTuple tuple;
            for (const auto& name : t) tuple.push_back(model.state_index(name.get<std::string>()));
            spec.tuples.insert(std::move(tuple));
        }
    } catch (const json::exception& e) {
        throw Error(Errc::Parse, std::string("joint spec JSON: ") + e.what());
    }
    return spec;
}

JointSpec load_joint_spec(const std::string& path, const TimedPlant& model, std::size_t arity) {
    return joint_spec_from_json(read_file(path), model, arity);
}

std::string policy_vector_to_json(const PolicyVector& policies, const TimedPlant& model) {
    json j = json::array();
    for (const auto& policy : policies.policies) {
        json entries = json::array();
        for (const auto& [q, e] : policy.entries())
            entries.push_back(
                {{"state", model.state_names[q]}, {"event", model.event_names[e]}});
        j.push_back({{"activate", entries}});
    }
    return j.dump(2) + "\n";
}

PolicyVector policy_vector_from_json(const std::string& text, const TimedPlant& model) {
    json j = parse(text);
    PolicyVector out;
    try {
        for (const auto& p : j) {
            SensorPolicy policy;
            for (const auto& entry : p.at("activate"))
                policy.insert(model.state_index(entry.at("state").get<std::string>()),
                              model.event_index(entry.at("event").get<std::string>()));
            policy.validate_against(model);
            out.policies.push_back(std::move(policy));
        }
    } catch (const json::exception& e) {
        throw Error(Errc::Parse, std::string("policy vector JSON: ") + e.what());
    }
    return out;
}

FaultSpec parse_fault_clauses(const std::vector<std::string>& clauses, std::uint32_t k,
                              const TimedPlant& model) {
    FaultSpec faults;
    faults.k = k;
    for (const auto& clause : clauses) {
        auto eq = clause.find('=');
        if (eq == std::string::npos)
            throw Error(Errc::Parse, "fault clause must look like name=e1,e2: " + clause);
        faults.names.push_back(clause.substr(0, eq));
        std::vector<EventId> events;
        std::string rest = clause.substr(eq + 1);
        std::size_t start = 0;
        while (start <= rest.size()) {
            auto comma = rest.find(',', start);
            std::string name =
                rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            if (!name.empty()) events.push_back(model.event_index(name));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (events.empty()) throw Error(Errc::Parse, "fault clause lists no events: " + clause);
        faults.classes.push_back(std::move(events));
    }
    return faults;
}

std::string render_ext_event(const ExtEvent& e, const TimedPlant& model) {
    switch (e.kind) {
        case EventKind::Plant:
            return model.event_names[e.event];
        case EventKind::Comm:
            return "h(" + model.event_names[e.event] + ")";
        case EventKind::Exec:
            return "g(" + model.event_names[e.event] + ")";
    }
    return "?";
}

std::string render_comm_state(const CommState& s, const TimedPlant& model) {
    return "(" + model.state_names[s.plant] + " | " + render_fifo(s.obs.fifo, model) + " | " +
           render_fifo(s.ctrl.fifo, model) + ")";
}

std::string feasibility_report_to_json(const FeasibilityReport& report, const CommContext& ctx) {
    const TimedPlant& model = ctx.model;
    json violations = json::array();
    for (const auto& v : report.violations) {
        if (v.kind == FeasibilityViolation::Kind::Condition1) {
            const WState& w = ctx.w.states[v.w_state];
            const CommState& cs = ctx.comm.states[w.comm];
            violations.push_back({{"condition", 1},
                                  {"state", model.state_names[cs.plant]},
                                  {"obs_channel", render_fifo(cs.obs.fifo, model)},
                                  {"ctrl_channel", render_fifo(cs.ctrl.fifo, model)},
                                  {"command_state", model.state_names[w.command]},
                                  {"event", model.event_names[v.event]}});
        } else {
            violations.push_back({{"condition", 2},
                                  {"pair", {model.state_names[v.pair_first],
                                            model.state_names[v.pair_second]}},
                                  {"event", model.event_names[v.event]}});
        }
    }
    json j{{"feasible", report.feasible}, {"violations", violations}};
    return j.dump(2) + "\n";
}

std::string trace_to_json(const std::vector<SynthesisIteration>& trace, const TimedPlant& model) {
    json iterations = json::array();
    for (const auto& it : trace)
        iterations.push_back({{"picked", {model.state_names[it.state], model.event_names[it.event]}},
                              {"result_size", it.result_size},
                              {"accepted", it.accepted}});
    return json{{"iterations", iterations}}.dump(2) + "\n";
}

std::string sim_trace_to_text(const SimTrace& trace, const CommAutomaton& comm,
                              const TimedPlant& model) {
    std::ostringstream out;
    StateId at = comm.automaton.initial;
    out << "seed " << trace.seed << "\n";
    for (std::size_t i = 0; i < trace.mu.size(); ++i) {
        at = *comm.automaton.next(at, trace.mu[i]);
        const CommState& cs = comm.states[at];
        out << i + 1 << " " << render_ext_event(trace.mu[i], model) << " "
            << render_comm_state(cs, model) << " cmd="
            << model.state_names[trace.command_states[i]] << "\n";
    }
    out << "observation ";
    if (trace.observation.empty()) out << "eps";
    for (EventId e : trace.observation) out << model.event_names[e];
    out << "\n";
    return out.str();
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string plant_to_dot(const TimedPlant& model) {
    std::ostringstream out;
    out << "digraph plant {\n  rankdir=LR;\n  node [shape=circle];\n";
    out << "  init [shape=point];\n  init -> s" << model.initial << ";\n";
    for (StateId q = 0; q < model.num_states(); ++q)
        out << "  s" << q << " [label=\"" << dot_escape(model.state_names[q]) << "\"];\n";
    for (StateId q = 0; q < model.num_states(); ++q)
        for (const auto& t : model.transitions[q])
            out << "  s" << q << " -> s" << t.target << " [label=\""
                << dot_escape(model.event_names[t.event]) << " /" << t.t_min << "\"];\n";
    out << "}\n";
    return out.str();
}

namespace {

std::string automaton_to_dot(const Automaton& aut, const TimedPlant& model,
                             const std::function<std::string(StateId)>& label) {
    std::ostringstream out;
    out << "digraph comm {\n  rankdir=LR;\n  node [shape=box];\n";
    out << "  init [shape=point];\n  init -> s" << aut.initial << ";\n";
    for (StateId q = 0; q < aut.num_states; ++q)
        out << "  s" << q << " [label=\"" << dot_escape(label(q)) << "\"];\n";
    for (StateId q = 0; q < aut.num_states; ++q)
        for (const auto& [l, target] : aut.transitions[q])
            out << "  s" << q << " -> s" << target << " [label=\""
                << dot_escape(render_ext_event(aut.alphabet[l], model)) << "\"];\n";
    out << "}\n";
    return out.str();
}

}  // namespace

std::string comm_to_dot(const CommAutomaton& comm, const TimedPlant& model) {
    return automaton_to_dot(comm.automaton, model, [&](StateId q) {
        return render_comm_state(comm.states[q], model);
    });
}

std::string w_to_dot(const WAutomaton& w, const CommAutomaton& comm, const TimedPlant& model) {
    return automaton_to_dot(w.automaton, model, [&](StateId q) {
        const WState& ws = w.states[q];
        const CommState& cs = comm.states[ws.comm];
        return "(" + model.state_names[cs.plant] + " | " + render_fifo(cs.obs.fifo, model) +
               " | " + render_fifo(cs.ctrl.fifo, model) + " | " +
               model.state_names[ws.command] + ")";
    });
}

std::string comm_to_json(const CommAutomaton& comm, const TimedPlant& model) {
    json j;
    json states = json::array();
    for (const auto& s : comm.states) states.push_back(render_comm_state(s, model));
    j["states"] = states;
    j["initial"] = render_comm_state(comm.states[comm.automaton.initial], model);
    json events = json::array();
    static const char* kKind[] = {"plant", "comm", "exec"};
    for (const auto& e : comm.automaton.alphabet)
        events.push_back({{"name", model.event_names[e.event]},
                          {"kind", kKind[static_cast<int>(e.kind)]}});
    j["events"] = events;
    json trans = json::array();
    for (StateId q = 0; q < comm.automaton.num_states; ++q)
        for (const auto& [l, target] : comm.automaton.transitions[q]) {
            const ExtEvent& e = comm.automaton.alphabet[l];
            trans.push_back({{"from", render_comm_state(comm.states[q], model)},
                             {"event", model.event_names[e.event]},
                             {"kind", kKind[static_cast<int>(e.kind)]},
                             {"to", render_comm_state(comm.states[target], model)}});
        }
    j["transitions"] = trans;
    return j.dump(2) + "\n";
}

}  // namespace ndsap
