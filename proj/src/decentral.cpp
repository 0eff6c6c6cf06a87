#include "ndsap/decentral.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>

namespace ndsap {

namespace {

void validate_agents(const TimedPlant& model, const std::vector<AgentProfile>& agents) {
    if (agents.empty()) throw Error(Errc::InvalidModel, "no agents given");
    for (const auto& agent : agents) {
        for (EventId e : agent.observable) {
            if (e >= model.num_events())
                throw Error(Errc::UnknownStateOrEvent, "agent observes unknown event");
            if (!model.observable[e])
                throw Error(Errc::InvalidModel,
                            "agent observes event outside the observable set: " +
                                model.event_names[e]);
        }
    }
}

// Per-agent verifier configuration. The agent tracks a candidate word s_i
// whose delayed observations must overlap those of the shared word s.
//   lag   : -1 while the matched prefix of s still grows, else the number of
//           s-events since it ended (at most the agent's delay bound).
//   spare : -1 while the matched prefix of s_i still grows, else the number
//           of trailing s_i-events taken (at most the delay bound).
struct AgentConfig {
    StateId v;
    int lag;
    int spare;

    friend auto operator<=>(const AgentConfig&, const AgentConfig&) = default;
};

using JointConfig = std::pair<StateId, std::vector<AgentConfig>>;

}  // namespace

bool PolicyVector::subset_of(const PolicyVector& other) const {
    if (policies.size() != other.policies.size()) return false;
    for (std::size_t i = 0; i < policies.size(); ++i)
        if (!policies[i].subset_of(other.policies[i])) return false;
    return true;
}

std::set<JointTuple> joint_conf_tuples(const TimedPlant& model,
                                       const std::vector<AgentProfile>& agents,
                                       const PolicyVector& policies, std::size_t state_cap) {
    validate_agents(model, agents);
    const std::size_t n = agents.size();

    std::set<JointConfig> seen;
    std::deque<JointConfig> queue;
    auto push = [&](JointConfig&& cfg) {
        if (seen.size() >= state_cap)
            throw Error(Errc::StateExplosion, "joint verifier exceeds state cap");
        if (seen.insert(cfg).second) queue.push_back(std::move(cfg));
    };

    JointConfig init{model.initial, std::vector<AgentConfig>(n, {model.initial, -1, -1})};
    push(std::move(init));

    std::set<JointTuple> tuples;
    while (!queue.empty()) {
        JointConfig cfg = queue.front();
        queue.pop_front();
        const auto& [u, acfgs] = cfg;

        JointTuple tuple(n + 1);
        tuple[0] = u;
        for (std::size_t i = 0; i < n; ++i) tuple[i + 1] = acfgs[i].v;
        tuples.insert(std::move(tuple));

        // Single-agent moves: the candidate word advances or a side is cut.
        for (std::size_t i = 0; i < n; ++i) {
            const AgentConfig& ac = acfgs[i];
            const int bound = static_cast<int>(agents[i].bounds.n_o);
            if (ac.spare == -1) {
                for (const auto& t : model.transitions[ac.v]) {
                    if (policies.policies[i].contains(ac.v, t.event)) continue;  // silent only
                    JointConfig next = cfg;
                    next.second[i].v = t.target;
                    push(std::move(next));
                }
                JointConfig cut = cfg;
                cut.second[i].spare = 0;
                push(std::move(cut));
            } else if (ac.spare < bound) {
                for (const auto& t : model.transitions[ac.v]) {
                    JointConfig next = cfg;
                    next.second[i].v = t.target;
                    next.second[i].spare = ac.spare + 1;
                    push(std::move(next));
                }
            }
            if (ac.lag == -1) {
                JointConfig cut = cfg;
                cut.second[i].lag = 0;
                push(std::move(cut));
            }
        }

        // Shared moves: the true word takes an event; every agent follows.
        for (const auto& t : model.transitions[u]) {
            JointConfig next = cfg;
            next.first = t.target;
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i) {
                AgentConfig& ac = next.second[i];
                const int bound = static_cast<int>(agents[i].bounds.n_o);
                if (ac.lag >= 0) {
                    if (ac.lag + 1 > bound) {
                        ok = false;
                    } else {
                        ++ac.lag;
                    }
                } else if (policies.policies[i].contains(u, t.event)) {
                    // Observed: the candidate must match it while still matching.
                    auto vt = model.next(ac.v, t.event);
                    if (ac.spare != -1 || !vt ||
                        !policies.policies[i].contains(ac.v, t.event)) {
                        ok = false;
                    } else {
                        ac.v = *vt;
                    }
                }
            }
            if (ok) push(std::move(next));
        }
    }
    return tuples;
}

std::set<JointTuple> joint_conf_tuples_brute(const TimedPlant& model,
                                             const std::vector<AgentProfile>& agents,
                                             const PolicyVector& policies, std::size_t horizon,
                                             bool* horizon_saturated) {
    validate_agents(model, agents);
    const std::size_t n = agents.size();

    struct WordInfo {
        StateId end;
        // Per agent: the delayed observation set of this word.
        std::vector<std::vector<ObservationWord>> delayed;
    };

    std::vector<WordInfo> words;
    bool saturated = false;
    {
        struct Node {
            StateId state;
            std::size_t len;
            std::vector<ObservationWord> obs;  // running observation per agent
            std::vector<std::vector<std::size_t>> prefix_len;  // per agent, per prefix
        };
        std::deque<Node> queue;
        Node root{model.initial, 0, std::vector<ObservationWord>(n), {}};
        root.prefix_len.assign(n, {0});
        queue.push_back(root);
        while (!queue.empty()) {
            Node node = std::move(queue.front());
            queue.pop_front();

            WordInfo info;
            info.end = node.state;
            info.delayed.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t bound = agents[i].bounds.n_o;
                for (std::size_t j = 0; j <= bound; ++j) {
                    std::size_t cut = node.len > j ? node.len - j : 0;
                    ObservationWord trunc(node.obs[i].begin(),
                                          node.obs[i].begin() + node.prefix_len[i][cut]);
                    info.delayed[i].push_back(std::move(trunc));
                }
            }
            words.push_back(std::move(info));

            if (node.len == horizon) {
                saturated = saturated || !model.transitions[node.state].empty();
                continue;
            }
            for (const auto& t : model.transitions[node.state]) {
                Node next = node;
                next.state = t.target;
                ++next.len;
                for (std::size_t i = 0; i < n; ++i) {
                    if (policies.policies[i].contains(node.state, t.event))
                        next.obs[i].push_back(t.event);
                    next.prefix_len[i].push_back(next.obs[i].size());
                }
                queue.push_back(std::move(next));
            }
        }
    }
    if (horizon_saturated) *horizon_saturated = saturated;

    // Bucket end states by the observations their delayed sets contain.
    std::vector<std::map<ObservationWord, std::set<StateId>>> buckets(n);
    for (const auto& info : words)
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& o : info.delayed[i]) buckets[i][o].insert(info.end);

    std::set<JointTuple> tuples;
    for (const auto& info : words) {
        std::vector<std::vector<StateId>> candidates(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::set<StateId> joined;
            for (const auto& o : info.delayed[i]) {
                auto it = buckets[i].find(o);
                if (it != buckets[i].end()) joined.insert(it->second.begin(), it->second.end());
            }
            candidates[i].assign(joined.begin(), joined.end());
        }
        JointTuple tuple(n + 1);
        tuple[0] = info.end;
        std::vector<std::size_t> pick(n, 0);
        for (;;) {
            for (std::size_t i = 0; i < n; ++i) tuple[i + 1] = candidates[i][pick[i]];
            tuples.insert(tuple);
            std::size_t i = 0;
            while (i < n && ++pick[i] == candidates[i].size()) pick[i++] = 0;
            if (i == n) break;
        }
    }
    return tuples;
}

namespace {

JointCheckResult check_against(const std::set<JointTuple>& tuples, const JointSpec& spec) {
    JointCheckResult out;
    for (const auto& t : spec.tuples)
        if (tuples.count(t)) out.witnesses.push_back(t);
    out.disjoint = out.witnesses.empty();
    return out;
}

}  // namespace

JointCheckResult joint_conf_check(const TimedPlant& model, const std::vector<AgentProfile>& agents,
                                  const PolicyVector& policies, const JointSpec& spec,
                                  std::size_t state_cap) {
    if (spec.arity != agents.size() + 1)
        throw Error(Errc::InvalidModel, "joint specification arity does not match agent count");
    return check_against(joint_conf_tuples(model, agents, policies, state_cap), spec);
}

JointCheckResult joint_conf_check_brute(const TimedPlant& model,
                                        const std::vector<AgentProfile>& agents,
                                        const PolicyVector& policies, const JointSpec& spec,
                                        std::size_t horizon) {
    if (spec.arity != agents.size() + 1)
        throw Error(Errc::InvalidModel, "joint specification arity does not match agent count");
    bool saturated = false;
    auto tuples = joint_conf_tuples_brute(model, agents, policies, horizon, &saturated);
    JointCheckResult out = check_against(tuples, spec);
    out.horizon_saturated = saturated;
    return out;
}

PolicyVector minimize_decentralized(const TimedPlant& model,
                                    const std::vector<AgentProfile>& agents,
                                    const JointSpec& spec, const DecentralizedOptions& options) {
    validate_agents(model, agents);
    const std::size_t n = agents.size();

    PolicyVector current;
    current.policies.reserve(n);
    for (const auto& agent : agents)
        current.policies.push_back(SensorPolicy::full(model, agent.observable));

    if (!joint_conf_check(model, agents, current, spec, options.state_cap).disjoint)
        throw Error(Errc::SpecUnsatisfiable,
                    "joint specification unsatisfiable even under full activation");

    // One communication context per distinct bound pair.
    std::map<std::pair<std::uint32_t, std::uint32_t>, CommContext> contexts;
    auto context_for = [&](const AgentProfile& agent) -> const CommContext& {
        auto key = std::make_pair(agent.bounds.n_o, agent.bounds.n_c);
        auto it = contexts.find(key);
        if (it == contexts.end())
            it = contexts.emplace(key, make_context(model, agent.bounds, options.state_cap)).first;
        return it->second;
    };

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    if (options.randomize) {
        std::mt19937_64 rng(options.seed);
        std::shuffle(order.begin(), order.end(), rng);
    }

    for (std::size_t i : order) {
        const CommContext& ctx = context_for(agents[i]);
        std::set<std::pair<StateId, EventId>> dead;
        auto pick = [&]() -> std::optional<std::pair<StateId, EventId>> {
            const auto& entries = current.policies[i].entries();
            if (options.order == PickOrder::Desc) {
                for (auto it = entries.rbegin(); it != entries.rend(); ++it)
                    if (!dead.count(*it)) return *it;
            } else {
                for (const auto& entry : entries)
                    if (!dead.count(entry)) return entry;
            }
            return std::nullopt;
        };
        while (auto candidate = pick()) {
            SensorPolicy trimmed = current.policies[i];
            trimmed.erase(candidate->first, candidate->second);
            MaxSubpolicyResult repaired = max_feasible_subpolicy(ctx, trimmed);
            PolicyVector probe = current;
            probe.policies[i] = repaired.policy;
            if (joint_conf_check(model, agents, probe, spec, options.state_cap).disjoint)
                current.policies[i] = std::move(repaired.policy);
            else
                dead.insert(*candidate);
        }
    }
    return current;
}

}  // namespace ndsap
