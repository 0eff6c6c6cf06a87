/* comm.hpp -- the communication automaton over plant / communication /
 * execution events, the string projections, and the product W that tracks
 * which activation command is in effect. */

#ifndef NDSAP_COMM_HPP_
#define NDSAP_COMM_HPP_

#include <cstddef>
#include <vector>

#include "ndsap/channels.hpp"
#include "ndsap/fsa.hpp"

namespace ndsap {

inline constexpr std::size_t kDefaultStateCap = 5'000'000;

struct CommState {
    StateId plant;
    ObsConfig obs;
    CtrlConfig ctrl;

    friend bool operator==(const CommState&, const CommState&) = default;
    friend auto operator<=>(const CommState&, const CommState&) = default;
};

/// The communication automaton. States pair a plant state with both channel
/// configurations; the initial state is (q0, eps, eps).
struct CommAutomaton {
    Automaton automaton;
    std::vector<CommState> states;  // indexed by automaton state
    DelayBounds bounds;
};

/// Breadth-first construction from (q0, eps, eps). A plant event moves when
/// the plant transition exists and both channel updates stay within bounds;
/// a communication pops the observation channel and feeds the control
/// channel; an execution pops the control channel.
CommAutomaton build_comm(const TimedPlant& model, DelayBounds bounds,
                         std::size_t state_cap = kDefaultStateCap);

/// Keeps plant events, in order.
Word psi(const ExtWord& mu);

/// The string whose activation command is currently in effect: execution
/// events, unwrapped and in order.
Word effective_command_string(const ExtWord& mu);

struct WState {
    StateId comm;     // index into CommAutomaton::states
    StateId command;  // plant state reached by the effective command string
};

/// W = comm automaton || exec-relabeled plant. Execution events synchronize;
/// the second component tracks the command in effect.
struct WAutomaton {
    Automaton automaton;
    std::vector<WState> states;
};

WAutomaton build_w(const CommAutomaton& comm, const TimedPlant& model);

/// Convenience bundle: everything delay-feasibility checking and synthesis
/// need for one (model, bounds) pair. The construction is policy independent.
struct CommContext {
    TimedPlant model;
    DelayBounds bounds;
    CommAutomaton comm;
    WAutomaton w;
};

CommContext make_context(const TimedPlant& model, DelayBounds bounds,
                         std::size_t state_cap = kDefaultStateCap);

/// Words of the plant language of length <= k reachable through the
/// communication automaton, i.e. bounded psi-image of its language.
std::set<Word> bounded_psi_language(const CommAutomaton& comm, std::size_t k);

}  // namespace ndsap

#endif  // NDSAP_COMM_HPP_
