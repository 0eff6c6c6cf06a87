#include "ndsap/observe.hpp"

#include <algorithm>
#include <deque>

namespace ndsap {

SensorPolicy SensorPolicy::full(const TimedPlant& model) {
    return full(model, model.observable_events());
}

SensorPolicy SensorPolicy::full(const TimedPlant& model, const std::vector<EventId>& events) {
    std::set<std::pair<StateId, EventId>> entries;
    for (StateId q = 0; q < model.num_states(); ++q)
        for (EventId e : events) entries.insert({q, e});
    return SensorPolicy(std::move(entries));
}

bool SensorPolicy::subset_of(const SensorPolicy& other) const {
    return std::includes(other.entries_.begin(), other.entries_.end(), entries_.begin(),
                         entries_.end());
}

SensorPolicy SensorPolicy::unite(const SensorPolicy& other) const {
    std::set<std::pair<StateId, EventId>> entries = entries_;
    entries.insert(other.entries_.begin(), other.entries_.end());
    return SensorPolicy(std::move(entries));
}

void SensorPolicy::validate_against(const TimedPlant& model) const {
    for (const auto& [q, e] : entries_) {
        if (q >= model.num_states() || e >= model.num_events())
            throw Error(Errc::UnknownStateOrEvent, "policy entry references unknown ids");
        if (!model.observable[e])
            throw Error(Errc::InvalidModel,
                        "policy activates unobservable event " + model.event_names[e]);
    }
}

ObservationWord info_map(const TimedPlant& model, const SensorPolicy& policy, const Word& s) {
    ObservationWord out;
    StateId q = model.initial;
    for (EventId sigma : s) {
        auto next = model.next(q, sigma);
        if (!next) throw Error(Errc::WordNotInLanguage, "word leaves the model language");
        if (policy.contains(q, sigma)) out.push_back(sigma);
        q = *next;
    }
    return out;
}

ObservationWord p_map(const CommAutomaton& comm, const TimedPlant& model,
                      const SensorPolicy& policy, const ExtWord& mu) {
    ObservationWord out;
    StateId at = comm.automaton.initial;
    StateId command = model.initial;  // delta(q0, g^{-1}(psi^g(prefix)))
    for (const auto& e : mu) {
        auto next = comm.automaton.next(at, e);
        if (!next)
            throw Error(Errc::WordNotInLanguage, "word leaves the communication automaton");
        switch (e.kind) {
            case EventKind::Plant:
                if (policy.contains(command, e.event)) out.push_back(e.event);
                break;
            case EventKind::Exec: {
                auto moved = model.next(command, e.event);
                if (!moved)
                    throw Error(Errc::WordNotInLanguage, "effective command string leaves model");
                command = *moved;
                break;
            }
            case EventKind::Comm:
                break;
        }
        at = *next;
    }
    return out;
}

PairSet confusable_pairs(const Automaton& a,
                         const std::function<bool(StateId, const ExtEvent&)>& observed) {
    PairSet out;
    std::set<std::pair<StateId, StateId>> seen;
    std::deque<std::pair<StateId, StateId>> queue;
    auto push = [&](StateId u, StateId v) {
        if (u > v) std::swap(u, v);
        if (seen.insert({u, v}).second) queue.push_back({u, v});
    };
    push(a.initial, a.initial);
    while (!queue.empty()) {
        auto [u, v] = queue.front();
        queue.pop_front();
        out.insert(u, v);
        for (const auto& [label, target] : a.transitions[u]) {
            const ExtEvent& ev = a.alphabet[label];
            if (!observed(u, ev)) {
                push(target, v);
            } else if (auto vt = a.next_label(v, label); vt && observed(v, ev)) {
                push(target, *vt);
            }
        }
        for (const auto& [label, target] : a.transitions[v]) {
            if (!observed(v, a.alphabet[label])) push(u, target);
        }
    }
    return out;
}

PairSet confusable_w_pairs(const WAutomaton& w, const SensorPolicy& policy) {
    return confusable_pairs(w.automaton, [&](StateId state, const ExtEvent& e) {
        return e.kind == EventKind::Plant && policy.contains(w.states[state].command, e.event);
    });
}

PairSet project_conf_pairs(const PairSet& w_pairs, const WAutomaton& w,
                           const CommAutomaton& comm) {
    PairSet out;
    for (const auto& [u, v] : w_pairs.pairs())
        out.insert(comm.states[w.states[u].comm].plant, comm.states[w.states[v].comm].plant);
    return out;
}

PairSet conf_pairs(const CommContext& ctx, const SensorPolicy& policy) {
    return project_conf_pairs(confusable_w_pairs(ctx.w, policy), ctx.w, ctx.comm);
}

std::set<StateId> reach_within(const TimedPlant& model, StateId q, std::size_t n) {
    std::set<StateId> out{q};
    std::set<StateId> frontier{q};
    for (std::size_t depth = 0; depth < n && !frontier.empty(); ++depth) {
        std::set<StateId> next;
        for (StateId at : frontier)
            for (const auto& t : model.transitions[at])
                if (out.insert(t.target).second) next.insert(t.target);
        frontier = std::move(next);
    }
    return out;
}

PairSet delayed_conf_pairs(const TimedPlant& model, const PairSet& conf, std::uint32_t n_o) {
    std::vector<std::set<StateId>> reach(model.num_states());
    std::vector<bool> have(model.num_states(), false);
    auto reach_of = [&](StateId q) -> const std::set<StateId>& {
        if (!have[q]) {
            reach[q] = reach_within(model, q, n_o);
            have[q] = true;
        }
        return reach[q];
    };
    PairSet out;
    for (const auto& [q, qp] : conf.pairs())
        for (StateId x : reach_of(q))
            for (StateId xp : reach_of(qp)) out.insert(x, xp);
    return out;
}

}  // namespace ndsap
