/* diagnosis.hpp -- delay K-diagnosability as a state-pair disambiguation
 * problem: counter refinement of the plant, the induced specification, and
 * the disjointness check. */

#ifndef NDSAP_DIAGNOSIS_HPP_
#define NDSAP_DIAGNOSIS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "ndsap/observe.hpp"

namespace ndsap {

struct FaultSpec {
    std::vector<std::string> names;            // one per fault class
    std::vector<std::vector<EventId>> classes;  // pairwise disjoint event sets
    std::uint32_t k = 1;                        // detection window, in events
};

/// The counter-refined plant. Counter i is -1 until the first class-i fault
/// fires, then counts subsequent events, saturating at k.
struct RefinedPlant {
    TimedPlant plant;
    std::vector<StateId> base;                // refined state -> base state
    std::vector<std::vector<int>> counters;   // refined state -> counter vector
};

/// Throws OverlappingFaultClasses when the classes share an event.
RefinedPlant refine_k_diag(const TimedPlant& h, const FaultSpec& faults);

/// Adds an unobservable self-loop (t_min 1) at every terminal state so the
/// language becomes live. The dummy event is named "idle" (uniquified).
TimedPlant add_liveness_loops(const TimedPlant& model);

/// All refined-state pairs where some class has counted to k on one side
/// while the other side has not faulted.
PairSet diag_spec(const RefinedPlant& refined, const FaultSpec& faults);

/// Lifts a base-state policy uniformly across counter vectors.
SensorPolicy lift_policy(const RefinedPlant& refined, const SensorPolicy& base_policy);

/// The base-state projection of a refined policy when all counter copies of
/// every (base state, event) agree; std::nullopt otherwise.
std::optional<SensorPolicy> project_policy(const RefinedPlant& refined,
                                           const SensorPolicy& refined_policy);

struct DiagCheckResult {
    bool diagnosable;
    PairSet witnesses;  // delayed confusable pairs inside the specification
};

/// Delay K-diagnosability holds iff the delayed confusable pairs under the
/// policy avoid the refinement specification.
DiagCheckResult check_delay_k_diag(const RefinedPlant& refined, const FaultSpec& faults,
                                   DelayBounds bounds, const SensorPolicy& refined_policy,
                                   std::size_t state_cap = kDefaultStateCap);

}  // namespace ndsap

#endif  // NDSAP_DIAGNOSIS_HPP_
