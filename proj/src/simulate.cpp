#include "ndsap/simulate.hpp"

#include <deque>
#include <map>
#include <random>

namespace ndsap {

SimTrace simulate_run(const CommAutomaton& comm, const TimedPlant& model,
                      const SensorPolicy& policy, std::uint64_t seed, std::size_t max_len) {
    SimTrace trace;
    trace.seed = seed;
    std::mt19937_64 rng(seed);

    StateId at = comm.automaton.initial;
    StateId command = model.initial;
    for (std::size_t i = 0; i < max_len; ++i) {
        const auto& out = comm.automaton.transitions[at];
        if (out.empty()) break;
        std::uniform_int_distribution<std::size_t> dist(0, out.size() - 1);
        const auto& [label, target] = out[dist(rng)];
        const ExtEvent& ev = comm.automaton.alphabet[label];
        switch (ev.kind) {
            case EventKind::Plant:
                if (policy.contains(command, ev.event)) trace.observation.push_back(ev.event);
                break;
            case EventKind::Exec:
                command = *model.next(command, ev.event);
                break;
            case EventKind::Comm:
                break;
        }
        trace.mu.push_back(ev);
        trace.command_states.push_back(command);
        at = target;
    }
    return trace;
}

PairSet brute_force_conf_pairs(const TimedPlant& model, const SensorPolicy& policy,
                               const CommAutomaton& comm, std::size_t len_bound) {
    // Walk every communication word, carrying the observation so far and the
    // effective command state; group plant states by observation.
    struct Node {
        StateId at;       // communication automaton state
        StateId command;  // effective command state
        std::size_t len;
        ObservationWord obs;
    };
    std::map<ObservationWord, std::set<StateId>> groups;
    std::deque<Node> queue;
    queue.push_back({comm.automaton.initial, model.initial, 0, {}});
    while (!queue.empty()) {
        Node node = std::move(queue.front());
        queue.pop_front();
        groups[node.obs].insert(comm.states[node.at].plant);
        if (node.len == len_bound) continue;
        for (const auto& [label, target] : comm.automaton.transitions[node.at]) {
            const ExtEvent& ev = comm.automaton.alphabet[label];
            Node next = node;
            next.at = target;
            ++next.len;
            if (ev.kind == EventKind::Plant && policy.contains(node.command, ev.event))
                next.obs.push_back(ev.event);
            else if (ev.kind == EventKind::Exec)
                next.command = *model.next(node.command, ev.event);
            queue.push_back(std::move(next));
        }
    }

    PairSet out;
    for (const auto& [obs, states] : groups)
        for (StateId a : states)
            for (StateId b : states) out.insert(a, b);
    return out;
}

PairSet brute_force_delayed_overlap(const TimedPlant& model, const SensorPolicy& policy,
                                    std::uint32_t n_o, std::size_t len_bound) {
    // For every plant word s, its delayed observation set is the set of
    // observations of the prefixes lacking at most n_o trailing events.
    struct Node {
        StateId at;
        std::size_t len;
        ObservationWord obs;
        std::vector<std::size_t> prefix_obs_len;
    };
    std::map<ObservationWord, std::set<StateId>> buckets;
    std::deque<Node> queue;
    queue.push_back({model.initial, 0, {}, {0}});
    while (!queue.empty()) {
        Node node = std::move(queue.front());
        queue.pop_front();
        for (std::uint32_t j = 0; j <= n_o; ++j) {
            std::size_t cut = node.len > j ? node.len - j : 0;
            ObservationWord trunc(node.obs.begin(), node.obs.begin() + node.prefix_obs_len[cut]);
            buckets[std::move(trunc)].insert(node.at);
        }
        if (node.len == len_bound) continue;
        for (const auto& t : model.transitions[node.at]) {
            Node next = node;
            next.at = t.target;
            ++next.len;
            if (policy.contains(node.at, t.event)) next.obs.push_back(t.event);
            next.prefix_obs_len.push_back(next.obs.size());
            queue.push_back(std::move(next));
        }
    }

    PairSet out;
    for (const auto& [obs, states] : buckets)
        for (StateId a : states)
            for (StateId b : states) out.insert(a, b);
    return out;
}

}  // namespace ndsap
