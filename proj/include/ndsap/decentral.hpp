/* decentral.hpp -- decentralized sensor activation: per-agent policies,
 * joint delayed confusability of state tuples, and the per-agent greedy
 * minimization loop. */

#ifndef NDSAP_DECENTRAL_HPP_
#define NDSAP_DECENTRAL_HPP_

#include <cstdint>
#include <set>
#include <vector>

#include "ndsap/synthesis.hpp"

namespace ndsap {

struct AgentProfile {
    std::uint32_t id = 0;
    std::vector<EventId> observable;  // subset of the model's observable events
    DelayBounds bounds;
};

struct PolicyVector {
    std::vector<SensorPolicy> policies;  // one per agent

    bool subset_of(const PolicyVector& other) const;
};

/// (n+1)-tuples (q, q_1, ..., q_n): the true state followed by one
/// candidate state per agent.
using JointTuple = std::vector<StateId>;

struct JointSpec {
    std::size_t arity = 0;  // n + 1
    std::set<JointTuple> tuples;
};

struct JointCheckResult {
    bool disjoint = true;
    std::vector<JointTuple> witnesses;
    // Brute-force engine only: the language still grows at the horizon, so a
    // clean result is not conclusive.
    bool horizon_saturated = false;
};

/// Joint confusable tuples: a shared witness word s reaches the first
/// component while, per agent, some word s_i reaches the agent's component
/// with overlapping delayed observations against the same s.

/// Exact engine: a synchronized product whose component 0 generates s and
/// whose agent components run a pair verifier with lag counters bounded by
/// the agent's observation delay.
std::set<JointTuple> joint_conf_tuples(const TimedPlant& model,
                                       const std::vector<AgentProfile>& agents,
                                       const PolicyVector& policies,
                                       std::size_t state_cap = kDefaultStateCap);

/// Reference engine: enumerate all word tuples up to `horizon` events.
std::set<JointTuple> joint_conf_tuples_brute(const TimedPlant& model,
                                             const std::vector<AgentProfile>& agents,
                                             const PolicyVector& policies, std::size_t horizon,
                                             bool* horizon_saturated = nullptr);

JointCheckResult joint_conf_check(const TimedPlant& model,
                                  const std::vector<AgentProfile>& agents,
                                  const PolicyVector& policies, const JointSpec& spec,
                                  std::size_t state_cap = kDefaultStateCap);

JointCheckResult joint_conf_check_brute(const TimedPlant& model,
                                        const std::vector<AgentProfile>& agents,
                                        const PolicyVector& policies, const JointSpec& spec,
                                        std::size_t horizon);

struct DecentralizedOptions {
    // Agents are processed in declaration order unless randomize is set.
    bool randomize = false;
    std::uint64_t seed = 0;
    PickOrder order = PickOrder::Desc;
    std::size_t state_cap = kDefaultStateCap;
};

/// Outer loop over agents; per agent, greedy deletion with feasibility
/// repair, accepting a deletion iff the joint check still avoids the
/// specification. Throws SpecUnsatisfiable when full activation fails.
PolicyVector minimize_decentralized(const TimedPlant& model,
                                    const std::vector<AgentProfile>& agents,
                                    const JointSpec& spec,
                                    const DecentralizedOptions& options = {});

}  // namespace ndsap

#endif  // NDSAP_DECENTRAL_HPP_
