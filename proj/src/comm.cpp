#include "ndsap/comm.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace ndsap {

CommAutomaton build_comm(const TimedPlant& model, DelayBounds bounds, std::size_t state_cap) {
    CommAutomaton out;
    out.bounds = bounds;

    auto& aut = out.automaton;
    for (EventId e = 0; e < model.num_events(); ++e) aut.alphabet.push_back(plant_ev(e));
    for (EventId e = 0; e < model.num_events(); ++e) aut.alphabet.push_back(comm_ev(e));
    for (EventId e = 0; e < model.num_events(); ++e) aut.alphabet.push_back(exec_ev(e));
    std::sort(aut.alphabet.begin(), aut.alphabet.end());

    std::map<CommState, StateId> index;
    std::deque<StateId> queue;
    auto intern = [&](CommState&& s) {
        auto [it, fresh] = index.try_emplace(std::move(s), static_cast<StateId>(out.states.size()));
        if (fresh) {
            if (out.states.size() >= state_cap)
                throw Error(Errc::StateExplosion,
                            "communication automaton exceeds state cap of " +
                                std::to_string(state_cap));
            out.states.push_back(it->first);
            aut.transitions.emplace_back();
            queue.push_back(it->second);
        }
        return it->second;
    };

    aut.initial = intern(CommState{model.initial, {}, {}});
    while (!queue.empty()) {
        StateId from = queue.front();
        queue.pop_front();
        // Copy: out.states may reallocate while successors are interned.
        const CommState at = out.states[from];
        for (EventId sigma = 0; sigma < model.num_events(); ++sigma) {
            if (auto target = model.next(at.plant, sigma)) {
                auto obs = in_obs(at.obs, at.plant, sigma, model, bounds.n_o);
                auto ctrl = plus(at.ctrl, at.plant, sigma, model, bounds.n_c);
                if (obs && ctrl) {
                    StateId to = intern(CommState{*target, std::move(*obs), std::move(*ctrl)});
                    aut.add_transition(from, *aut.label_of(plant_ev(sigma)), to);
                }
            }
            if (auto obs = out_obs(at.obs, sigma)) {
                StateId to = intern(CommState{at.plant, std::move(*obs), in_ctr(at.ctrl, sigma)});
                aut.add_transition(from, *aut.label_of(comm_ev(sigma)), to);
            }
            if (auto ctrl = out_ctr(at.ctrl, sigma)) {
                StateId to = intern(CommState{at.plant, at.obs, std::move(*ctrl)});
                aut.add_transition(from, *aut.label_of(exec_ev(sigma)), to);
            }
        }
    }
    aut.num_states = out.states.size();
    return out;
}

Word psi(const ExtWord& mu) {
    Word out;
    for (const auto& e : mu)
        if (e.kind == EventKind::Plant) out.push_back(e.event);
    return out;
}

Word effective_command_string(const ExtWord& mu) {
    Word out;
    for (const auto& e : mu)
        if (e.kind == EventKind::Exec) out.push_back(e.event);
    return out;
}

WAutomaton build_w(const CommAutomaton& comm, const TimedPlant& model) {
    Product prod = parallel_compose(comm.automaton, relabel_exec(model));
    WAutomaton out;
    out.automaton = std::move(prod.automaton);
    out.states.reserve(prod.origin.size());
    for (const auto& [comm_state, command] : prod.origin)
        out.states.push_back(WState{comm_state, command});
    return out;
}

CommContext make_context(const TimedPlant& model, DelayBounds bounds, std::size_t state_cap) {
    CommContext ctx{model, bounds, build_comm(model, bounds, state_cap), {}};
    ctx.w = build_w(ctx.comm, model);
    return ctx;
}

std::set<Word> bounded_psi_language(const CommAutomaton& comm, std::size_t k) {
    const Automaton& aut = comm.automaton;
    // Closure under communication/execution moves, which project to epsilon.
    auto silent_closure = [&](std::set<StateId> states) {
        std::deque<StateId> queue(states.begin(), states.end());
        while (!queue.empty()) {
            StateId q = queue.front();
            queue.pop_front();
            for (const auto& [label, target] : aut.transitions[q]) {
                if (aut.alphabet[label].kind == EventKind::Plant) continue;
                if (states.insert(target).second) queue.push_back(target);
            }
        }
        return states;
    };

    std::set<Word> out;
    std::map<Word, std::set<StateId>> frontier;
    frontier[{}] = silent_closure({aut.initial});
    out.insert(Word{});
    for (std::size_t depth = 0; depth < k && !frontier.empty(); ++depth) {
        std::map<Word, std::set<StateId>> next_frontier;
        for (const auto& [word, states] : frontier) {
            std::map<EventId, std::set<StateId>> successors;
            for (StateId q : states)
                for (const auto& [label, target] : aut.transitions[q])
                    if (aut.alphabet[label].kind == EventKind::Plant)
                        successors[aut.alphabet[label].event].insert(target);
            for (auto& [sigma, targets] : successors) {
                Word next = word;
                next.push_back(sigma);
                out.insert(next);
                next_frontier[std::move(next)] = silent_closure(std::move(targets));
            }
        }
        frontier = std::move(next_frontier);
    }
    return out;
}

}  // namespace ndsap
