#include "ndsap/synthesis.hpp"

#include <algorithm>
#include <map>

namespace ndsap {

namespace {

// For every plant event enabled somewhere in W: the distinct
// (plant component, command component) pairs of states enabling it,
// plus the W state that witnesses each pair.
struct EnabledIndex {
    // per event: (plant, command) -> witness W state
    std::vector<std::map<std::pair<StateId, StateId>, StateId>> by_event;
};

EnabledIndex index_enabled(const CommContext& ctx) {
    EnabledIndex idx;
    idx.by_event.resize(ctx.model.num_events());
    const auto& aut = ctx.w.automaton;
    for (StateId w = 0; w < aut.num_states; ++w) {
        StateId plant = ctx.comm.states[ctx.w.states[w].comm].plant;
        StateId command = ctx.w.states[w].command;
        for (const auto& [label, target] : aut.transitions[w]) {
            const ExtEvent& ev = aut.alphabet[label];
            if (ev.kind != EventKind::Plant) continue;
            idx.by_event[ev.event].try_emplace({plant, command}, w);
        }
    }
    return idx;
}

}  // namespace

FeasibilityReport check_delay_feasible(const CommContext& ctx, const SensorPolicy& policy) {
    policy.validate_against(ctx.model);
    FeasibilityReport report;

    EnabledIndex idx = index_enabled(ctx);
    for (EventId sigma = 0; sigma < ctx.model.num_events(); ++sigma) {
        for (const auto& [qx, witness] : idx.by_event[sigma]) {
            auto [plant, command] = qx;
            if (policy.contains(plant, sigma) != policy.contains(command, sigma)) {
                FeasibilityViolation v;
                v.kind = FeasibilityViolation::Kind::Condition1;
                v.w_state = witness;
                v.event = sigma;
                report.violations.push_back(v);
            }
        }
    }

    report.conf = conf_pairs(ctx, policy);
    for (const auto& [q, qp] : report.conf.pairs()) {
        if (q == qp) continue;
        for (EventId sigma : ctx.model.observable_events()) {
            if (policy.contains(q, sigma) != policy.contains(qp, sigma)) {
                FeasibilityViolation v;
                v.kind = FeasibilityViolation::Kind::Condition2;
                v.pair_first = q;
                v.pair_second = qp;
                v.event = sigma;
                report.violations.push_back(v);
            }
        }
    }

    report.feasible = report.violations.empty();
    return report;
}

MaxSubpolicyResult max_feasible_subpolicy(const CommContext& ctx, const SensorPolicy& policy) {
    policy.validate_against(ctx.model);
    EnabledIndex idx = index_enabled(ctx);

    SensorPolicy current = policy;
    PairSet conf;
    for (;;) {
        conf = conf_pairs(ctx, current);

        std::vector<std::pair<StateId, EventId>> doomed;
        for (const auto& [q, sigma] : current.entries()) {
            bool violates = false;
            // The entry activates sigma at q while some command in effect at a
            // state enabling sigma does not, or vice versa.
            for (const auto& [qx, witness] : idx.by_event[sigma]) {
                auto [plant, command] = qx;
                if ((plant == q && !current.contains(command, sigma)) ||
                    (command == q && !current.contains(plant, sigma))) {
                    violates = true;
                    break;
                }
            }
            if (!violates) {
                for (const auto& [a, b] : conf.pairs()) {
                    if ((a == q && !current.contains(b, sigma)) ||
                        (b == q && !current.contains(a, sigma))) {
                        violates = true;
                        break;
                    }
                }
            }
            if (violates) doomed.push_back({q, sigma});
        }

        if (doomed.empty()) break;
        for (const auto& [q, sigma] : doomed) current.erase(q, sigma);
    }
    return {std::move(current), std::move(conf)};
}

SynthesisResult minimize_sap(const CommContext& ctx, const PairSet& spec,
                             const SynthesisOptions& options) {
    SensorPolicy full = SensorPolicy::full(ctx.model);
    PairSet base_conf = conf_pairs(ctx, full);
    if (delayed_conf_pairs(ctx.model, base_conf, ctx.bounds.n_o).intersects(spec))
        throw Error(Errc::SpecUnsatisfiable,
                    "specification unsatisfiable even under full activation");

    SynthesisResult result;
    SensorPolicy current = full;
    std::set<std::pair<StateId, EventId>> dead;
    std::size_t forced_cursor = 0;

    auto pick = [&]() -> std::optional<std::pair<StateId, EventId>> {
        while (forced_cursor < options.forced.size()) {
            auto candidate = options.forced[forced_cursor++];
            if (current.contains(candidate.first, candidate.second) && !dead.count(candidate))
                return candidate;
        }
        if (options.order == PickOrder::Desc) {
            for (auto it = current.entries().rbegin(); it != current.entries().rend(); ++it)
                if (!dead.count(*it)) return *it;
        } else {
            for (const auto& entry : current.entries())
                if (!dead.count(entry)) return entry;
        }
        return std::nullopt;
    };

    while (auto candidate = pick()) {
        auto [q, sigma] = *candidate;
        SensorPolicy trimmed = current;
        trimmed.erase(q, sigma);
        MaxSubpolicyResult repaired = max_feasible_subpolicy(ctx, trimmed);
        PairSet delayed = delayed_conf_pairs(ctx.model, repaired.conf, ctx.bounds.n_o);
        bool accepted = !delayed.intersects(spec);
        result.trace.push_back({q, sigma, repaired.policy.size(), accepted});
        if (accepted)
            current = std::move(repaired.policy);
        else
            dead.insert(*candidate);
    }

    result.policy = std::move(current);
    return result;
}

}  // namespace ndsap
