/* observe.hpp -- transition-based sensor activation policies, observation
 * mappings with and without delays, and the confusable-pair machinery. */

#ifndef NDSAP_OBSERVE_HPP_
#define NDSAP_OBSERVE_HPP_

#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "ndsap/comm.hpp"
#include "ndsap/fsa.hpp"

namespace ndsap {

/// A transition-based sensor activation policy: the set of (state, event)
/// pairs whose sensor is switched on. The domain is the whole Q x Sigma_o,
/// so entries may name events that are not enabled at the state.
class SensorPolicy {
public:
    SensorPolicy() = default;
    explicit SensorPolicy(std::set<std::pair<StateId, EventId>> entries)
        : entries_(std::move(entries)) {}

    static SensorPolicy full(const TimedPlant& model);
    /// Q x E for an explicit event subset (decentralized agents use this).
    static SensorPolicy full(const TimedPlant& model, const std::vector<EventId>& events);

    bool contains(StateId q, EventId e) const { return entries_.count({q, e}) != 0; }
    void insert(StateId q, EventId e) { entries_.insert({q, e}); }
    void erase(StateId q, EventId e) { entries_.erase({q, e}); }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    const std::set<std::pair<StateId, EventId>>& entries() const { return entries_; }

    bool subset_of(const SensorPolicy& other) const;
    SensorPolicy unite(const SensorPolicy& other) const;

    /// Every entry's event must be observable in the model.
    void validate_against(const TimedPlant& model) const;

    friend bool operator==(const SensorPolicy&, const SensorPolicy&) = default;

private:
    std::set<std::pair<StateId, EventId>> entries_;
};

using ObservationWord = Word;

/// Information mapping theta under a transition-based policy: the event is
/// recorded iff the policy activates it at the state the word has reached.
/// Throws WordNotInLanguage when the word leaves the model.
ObservationWord info_map(const TimedPlant& model, const SensorPolicy& policy, const Word& s);

/// Observation mapping over the communication automaton: the event is
/// recorded iff the policy activates it at the state reached by the
/// effective command string of the preceding prefix.
ObservationWord p_map(const CommAutomaton& comm, const TimedPlant& model,
                      const SensorPolicy& policy, const ExtWord& mu);

/// Pair-product fixpoint over a deterministic automaton: the reachable set
/// equals all unordered state pairs (u, v) such that two words with equal
/// observations reach u and v. `observed` decides per (state, label) whether
/// the transition is recorded.
PairSet confusable_pairs(const Automaton& a,
                         const std::function<bool(StateId, const ExtEvent&)>& observed);

/// Confusable pairs of W under the policy lifted through the command
/// component: a plant event is observed at a W state iff the policy
/// activates it at the state's command component.
PairSet confusable_w_pairs(const WAutomaton& w, const SensorPolicy& policy);

/// Projects W-state pairs to plant-state pairs (first components).
PairSet project_conf_pairs(const PairSet& w_pairs, const WAutomaton& w,
                           const CommAutomaton& comm);

/// Confusable plant-state pairs of the model under the observation mapping,
/// computed through W.
PairSet conf_pairs(const CommContext& ctx, const SensorPolicy& policy);

/// States reachable from q by at most n events.
std::set<StateId> reach_within(const TimedPlant& model, StateId q, std::size_t n);

/// Expands confusable pairs by up to n_o trailing events on each side: the
/// confusable pairs under the delayed observation mapping.
PairSet delayed_conf_pairs(const TimedPlant& model, const PairSet& conf, std::uint32_t n_o);

}  // namespace ndsap

#endif  // NDSAP_OBSERVE_HPP_
