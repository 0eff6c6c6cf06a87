/* fsa.hpp -- deterministic finite automata with per-transition minimum
 * occurring times, plus the generic automaton type used for products. */

#ifndef NDSAP_FSA_HPP_
#define NDSAP_FSA_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ndsap {

using StateId = std::uint32_t;
using EventId = std::uint32_t;

inline constexpr StateId kNoState = static_cast<StateId>(-1);

enum class Errc {
    DuplicateTransition,
    ZeroOccurringTime,
    UnknownStateOrEvent,
    NoInitialState,
    InvalidModel,
    StateExplosion,
    WordNotInLanguage,
    OverlappingFaultClasses,
    SpecUnsatisfiable,
    Parse,
    Io,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

/// Kinds of events in the communication automaton: a plant event sigma, its
/// communication h(sigma), and the execution g(sigma) of the command issued
/// after communicating sigma.
enum class EventKind : std::uint8_t { Plant = 0, Comm = 1, Exec = 2 };

struct ExtEvent {
    EventKind kind = EventKind::Plant;
    EventId event = 0;

    friend bool operator==(const ExtEvent&, const ExtEvent&) = default;
    friend auto operator<=>(const ExtEvent&, const ExtEvent&) = default;
};

inline ExtEvent plant_ev(EventId e) { return {EventKind::Plant, e}; }
inline ExtEvent comm_ev(EventId e) { return {EventKind::Comm, e}; }
inline ExtEvent exec_ev(EventId e) { return {EventKind::Exec, e}; }

using ExtWord = std::vector<ExtEvent>;
using Word = std::vector<EventId>;

struct PlantTransition {
    EventId event;
    StateId target;
    std::uint32_t t_min;  // time units, always >= 1
};

/// Deterministic plant automaton G = (Q, Sigma, delta, q0) with an
/// observable/unobservable event partition and the minimum occurring time
/// t_min on every transition.
struct TimedPlant {
    std::vector<std::string> state_names;
    std::vector<std::string> event_names;
    std::vector<bool> observable;  // indexed by EventId
    StateId initial = kNoState;
    // Outgoing transitions per state, sorted by event id.
    std::vector<std::vector<PlantTransition>> transitions;

    std::size_t num_states() const { return state_names.size(); }
    std::size_t num_events() const { return event_names.size(); }

    const PlantTransition* find(StateId q, EventId e) const;
    std::optional<StateId> next(StateId q, EventId e) const;

    StateId state_index(const std::string& name) const;
    EventId event_index(const std::string& name) const;

    std::vector<EventId> observable_events() const;
};

/// Throws unless the model invariants hold (determinism, t_min >= 1,
/// valid indices, an initial state).
const TimedPlant& validate_plant(const TimedPlant& model);

/// Extended transition function; std::nullopt when some step is missing.
std::optional<StateId> step(const TimedPlant& model, StateId from, const Word& word);

/// Drops the last min(i, |word|) symbols.
Word suffix_truncate(const Word& word, std::size_t i);

/// Generic automaton over extended events; used for the communication
/// automaton, relabelings and products. Deterministic by construction.
struct Automaton {
    std::vector<ExtEvent> alphabet;  // sorted, duplicate-free
    StateId initial = 0;
    std::size_t num_states = 0;
    // Per state: (alphabet index, target), sorted by alphabet index.
    std::vector<std::vector<std::pair<std::uint32_t, StateId>>> transitions;

    std::optional<StateId> next(StateId q, const ExtEvent& e) const;
    std::optional<StateId> next_label(StateId q, std::uint32_t label) const;
    std::optional<std::uint32_t> label_of(const ExtEvent& e) const;
    void add_transition(StateId from, std::uint32_t label, StateId to);
};

/// View of a plant as a generic automaton (labels are Plant events).
Automaton as_automaton(const TimedPlant& model);

/// Replaces every Plant label sigma by Exec(g(sigma)). Rejects automata that
/// already carry Comm/Exec labels.
Automaton relabel_exec(const Automaton& a);
Automaton relabel_exec(const TimedPlant& model);

struct Product {
    Automaton automaton;
    // For each product state, the originating (A-state, B-state) pair.
    std::vector<std::pair<StateId, StateId>> origin;
};

/// Synchronous product: labels present in both alphabets synchronize,
/// private labels interleave. Only the reachable part is constructed.
Product parallel_compose(const Automaton& a, const Automaton& b);

/// All words of length <= k accepted from the initial state.
std::set<Word> bounded_language(const TimedPlant& model, std::size_t k);
std::set<ExtWord> bounded_language(const Automaton& a, std::size_t k);

/// Set of unordered state pairs, stored normalized as (min, max).
class PairSet {
public:
    void insert(StateId a, StateId b);
    bool contains(StateId a, StateId b) const;
    bool empty() const { return pairs_.empty(); }
    std::size_t size() const { return pairs_.size(); }

    const std::set<std::pair<StateId, StateId>>& pairs() const { return pairs_; }

    /// Pairs with the diagonal elided, in sorted order.
    std::vector<std::pair<StateId, StateId>> non_diagonal() const;

    bool intersects(const PairSet& other) const;
    PairSet intersect(const PairSet& other) const;

    friend bool operator==(const PairSet&, const PairSet&) = default;

private:
    std::set<std::pair<StateId, StateId>> pairs_;
};

}  // namespace ndsap

#endif  // NDSAP_FSA_HPP_
