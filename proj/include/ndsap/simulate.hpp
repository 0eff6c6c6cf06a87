/* simulate.hpp -- seeded random walks over the communication automaton and
 * brute-force enumeration oracles for the confusable-pair computations. */

#ifndef NDSAP_SIMULATE_HPP_
#define NDSAP_SIMULATE_HPP_

#include <cstdint>
#include <vector>

#include "ndsap/observe.hpp"

namespace ndsap {

struct SimTrace {
    ExtWord mu;
    ObservationWord observation;
    std::vector<StateId> command_states;  // effective command state after each step
    std::uint64_t seed = 0;
};

/// Uniformly samples one enabled extended event per step until max_len steps
/// or deadlock. Same seed, same trace.
SimTrace simulate_run(const CommAutomaton& comm, const TimedPlant& model,
                      const SensorPolicy& policy, std::uint64_t seed, std::size_t max_len);

/// Confusable plant pairs by enumerating all communication words up to
/// len_bound and grouping by observation.
PairSet brute_force_conf_pairs(const TimedPlant& model, const SensorPolicy& policy,
                               const CommAutomaton& comm, std::size_t len_bound);

/// Confusable plant pairs under the delayed observation mapping by
/// enumerating all plant words up to len_bound.
PairSet brute_force_delayed_overlap(const TimedPlant& model, const SensorPolicy& policy,
                                    std::uint32_t n_o, std::size_t len_bound);

}  // namespace ndsap

#endif  // NDSAP_SIMULATE_HPP_
