/* synthesis.hpp -- delay-feasibility checking, the maximal delay-feasible
 * subpolicy fixpoint, and greedy policy minimization against a state-pair
 * disambiguation specification. */

#ifndef NDSAP_SYNTHESIS_HPP_
#define NDSAP_SYNTHESIS_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "ndsap/observe.hpp"

namespace ndsap {

struct FeasibilityViolation {
    enum class Kind { Condition1, Condition2 };
    Kind kind;
    // Condition 1: the W state (by index) and the plant event whose activation
    // decision differs between the plant component and the command component.
    StateId w_state = kNoState;
    // Condition 2: a confusable plant-state pair with differing decisions.
    StateId pair_first = kNoState;
    StateId pair_second = kNoState;
    EventId event = 0;
};

struct FeasibilityReport {
    bool feasible = false;
    std::vector<FeasibilityViolation> violations;
    PairSet conf;  // confusable plant pairs under the checked policy
};

/// Delay feasibility of a transition-based policy: every enabled plant event
/// gets the same decision from the plant state and from the command in
/// effect, and confusable states agree on every decision.
FeasibilityReport check_delay_feasible(const CommContext& ctx, const SensorPolicy& policy);

struct MaxSubpolicyResult {
    SensorPolicy policy;  // the maximal delay-feasible subpolicy
    PairSet conf;         // its confusable plant pairs
};

/// Fixpoint: repeatedly recompute the confusable pairs and delete every
/// entry that violates one of the feasibility conditions, until stable.
MaxSubpolicyResult max_feasible_subpolicy(const CommContext& ctx, const SensorPolicy& policy);

enum class PickOrder { Desc, Asc };

struct SynthesisOptions {
    PickOrder order = PickOrder::Desc;
    // Tried first, in order, before falling back to `order`; entries that are
    // no longer candidates are skipped.
    std::vector<std::pair<StateId, EventId>> forced;
};

struct SynthesisIteration {
    StateId state;
    EventId event;
    std::size_t result_size;  // |policy| after the repair fixpoint
    bool accepted;
};

struct SynthesisResult {
    SensorPolicy policy;
    std::vector<SynthesisIteration> trace;
};

/// Greedy deletion from the fully activated policy. A candidate deletion is
/// accepted iff the repaired policy keeps the delayed confusable pairs
/// disjoint from the specification. Throws SpecUnsatisfiable when even full
/// activation violates the specification.
SynthesisResult minimize_sap(const CommContext& ctx, const PairSet& spec,
                             const SynthesisOptions& options = {});

}  // namespace ndsap

#endif  // NDSAP_SYNTHESIS_HPP_
