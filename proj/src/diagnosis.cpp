#include "ndsap/diagnosis.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace ndsap {

namespace {

std::string refined_name(const TimedPlant& base, StateId q, const std::vector<int>& counters) {
    std::string name = base.state_names[q] + "#";
    for (std::size_t i = 0; i < counters.size(); ++i) {
        if (i > 0) name += "_";
        name += std::to_string(counters[i]);
    }
    return name;
}

}  // namespace

RefinedPlant refine_k_diag(const TimedPlant& h, const FaultSpec& faults) {
    if (faults.classes.empty())
        throw Error(Errc::InvalidModel, "no fault classes given");
    if (faults.k < 1) throw Error(Errc::InvalidModel, "window k must be >= 1");
    std::vector<bool> claimed(h.num_events(), false);
    std::vector<std::vector<bool>> is_fault(faults.classes.size(),
                                            std::vector<bool>(h.num_events(), false));
    for (std::size_t i = 0; i < faults.classes.size(); ++i) {
        for (EventId e : faults.classes[i]) {
            if (e >= h.num_events())
                throw Error(Errc::UnknownStateOrEvent, "fault class references unknown event");
            if (claimed[e])
                throw Error(Errc::OverlappingFaultClasses,
                            "event " + h.event_names[e] + " appears in two fault classes");
            claimed[e] = true;
            is_fault[i][e] = true;
        }
    }

    const int k = static_cast<int>(faults.k);
    auto advance = [&](const std::vector<int>& counters, EventId sigma) {
        std::vector<int> next = counters;
        for (std::size_t i = 0; i < next.size(); ++i) {
            int n = next[i];
            if (n == k) continue;
            if (n == -1 && !is_fault[i][sigma]) continue;
            next[i] = n + 1;  // fault fires from -1, or an event counts toward k
        }
        return next;
    };

    RefinedPlant out;
    out.plant.event_names = h.event_names;
    out.plant.observable = h.observable;

    using Key = std::pair<StateId, std::vector<int>>;
    std::map<Key, StateId> index;
    std::deque<StateId> queue;
    auto intern = [&](StateId q, std::vector<int>&& counters) {
        auto [it, fresh] =
            index.try_emplace({q, std::move(counters)}, static_cast<StateId>(out.base.size()));
        if (fresh) {
            out.base.push_back(it->first.first);
            out.counters.push_back(it->first.second);
            out.plant.state_names.push_back(refined_name(h, it->first.first, it->first.second));
            out.plant.transitions.emplace_back();
            queue.push_back(it->second);
        }
        return it->second;
    };

    out.plant.initial = intern(h.initial, std::vector<int>(faults.classes.size(), -1));
    while (!queue.empty()) {
        StateId from = queue.front();
        queue.pop_front();
        StateId base_from = out.base[from];
        std::vector<int> counters = out.counters[from];
        for (const auto& t : h.transitions[base_from]) {
            StateId to = intern(t.target, advance(counters, t.event));
            out.plant.transitions[from].push_back({t.event, to, t.t_min});
        }
        std::sort(out.plant.transitions[from].begin(), out.plant.transitions[from].end(),
                  [](const PlantTransition& a, const PlantTransition& b) { return a.event < b.event; });
    }
    validate_plant(out.plant);
    return out;
}

TimedPlant add_liveness_loops(const TimedPlant& model) {
    bool needed = false;
    for (const auto& out : model.transitions)
        if (out.empty()) needed = true;
    if (!needed) return model;

    TimedPlant live = model;
    std::string name = "idle";
    while (std::find(live.event_names.begin(), live.event_names.end(), name) !=
           live.event_names.end())
        name += "_";
    EventId idle = static_cast<EventId>(live.event_names.size());
    live.event_names.push_back(name);
    live.observable.push_back(false);
    for (StateId q = 0; q < live.num_states(); ++q)
        if (live.transitions[q].empty()) live.transitions[q].push_back({idle, q, 1});
    return live;
}

PairSet diag_spec(const RefinedPlant& refined, const FaultSpec& faults) {
    const int k = static_cast<int>(faults.k);
    PairSet out;
    for (StateId a = 0; a < refined.plant.num_states(); ++a) {
        for (StateId b = 0; b < refined.plant.num_states(); ++b) {
            for (std::size_t i = 0; i < faults.classes.size(); ++i) {
                if (refined.counters[a][i] == k && refined.counters[b][i] == -1) {
                    out.insert(a, b);
                    break;
                }
            }
        }
    }
    return out;
}

SensorPolicy lift_policy(const RefinedPlant& refined, const SensorPolicy& base_policy) {
    SensorPolicy out;
    for (StateId r = 0; r < refined.plant.num_states(); ++r)
        for (const auto& [q, e] : base_policy.entries())
            if (refined.base[r] == q) out.insert(r, e);
    return out;
}

std::optional<SensorPolicy> project_policy(const RefinedPlant& refined,
                                           const SensorPolicy& refined_policy) {
    std::map<std::pair<StateId, EventId>, std::pair<std::size_t, std::size_t>> tally;
    std::map<StateId, std::size_t> copies;
    for (StateId r = 0; r < refined.plant.num_states(); ++r) ++copies[refined.base[r]];
    for (const auto& [r, e] : refined_policy.entries()) ++tally[{refined.base[r], e}].first;
    for (auto& [key, counts] : tally) counts.second = copies[key.first];

    SensorPolicy out;
    for (const auto& [key, counts] : tally) {
        if (counts.first != counts.second) return std::nullopt;  // copies disagree
        out.insert(key.first, key.second);
    }
    return out;
}

DiagCheckResult check_delay_k_diag(const RefinedPlant& refined, const FaultSpec& faults,
                                   DelayBounds bounds, const SensorPolicy& refined_policy,
                                   std::size_t state_cap) {
    CommContext ctx = make_context(refined.plant, bounds, state_cap);
    PairSet conf = conf_pairs(ctx, refined_policy);
    PairSet delayed = delayed_conf_pairs(refined.plant, conf, bounds.n_o);
    PairSet witnesses = delayed.intersect(diag_spec(refined, faults));
    return {witnesses.empty(), std::move(witnesses)};
}

}  // namespace ndsap
