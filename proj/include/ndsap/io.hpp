/* io.hpp -- JSON file formats and DOT export. The on-disk schemas are
 * documented in docs/formats.md. */

#ifndef NDSAP_IO_HPP_
#define NDSAP_IO_HPP_

#include <string>
#include <vector>

#include "ndsap/decentral.hpp"
#include "ndsap/diagnosis.hpp"
#include "ndsap/simulate.hpp"
#include "ndsap/synthesis.hpp"

namespace ndsap {

TimedPlant plant_from_json(const std::string& text);
TimedPlant load_plant(const std::string& path);
std::string plant_to_json(const TimedPlant& model);

SensorPolicy policy_from_json(const std::string& text, const TimedPlant& model);
SensorPolicy load_policy(const std::string& path, const TimedPlant& model);
std::string policy_to_json(const SensorPolicy& policy, const TimedPlant& model);

PairSet pairs_from_json(const std::string& text, const TimedPlant& model);
PairSet load_pairs(const std::string& path, const TimedPlant& model);
/// Sorted name pairs, diagonal elided.
std::string pairs_to_json(const PairSet& pairs, const TimedPlant& model);

std::vector<AgentProfile> agents_from_json(const std::string& text, const TimedPlant& model);
std::vector<AgentProfile> load_agents(const std::string& path, const TimedPlant& model);

JointSpec joint_spec_from_json(const std::string& text, const TimedPlant& model,
                               std::size_t arity);
JointSpec load_joint_spec(const std::string& path, const TimedPlant& model, std::size_t arity);

std::string policy_vector_to_json(const PolicyVector& policies, const TimedPlant& model);
PolicyVector policy_vector_from_json(const std::string& text, const TimedPlant& model);

/// "name=e1,e2" clauses accumulated into a fault specification.
FaultSpec parse_fault_clauses(const std::vector<std::string>& clauses, std::uint32_t k,
                              const TimedPlant& model);

std::string feasibility_report_to_json(const FeasibilityReport& report, const CommContext& ctx);
std::string trace_to_json(const std::vector<SynthesisIteration>& trace, const TimedPlant& model);
std::string sim_trace_to_text(const SimTrace& trace, const CommAutomaton& comm,
                              const TimedPlant& model);

std::string render_ext_event(const ExtEvent& e, const TimedPlant& model);
std::string render_comm_state(const CommState& s, const TimedPlant& model);

std::string plant_to_dot(const TimedPlant& model);
std::string comm_to_dot(const CommAutomaton& comm, const TimedPlant& model);
std::string w_to_dot(const WAutomaton& w, const CommAutomaton& comm, const TimedPlant& model);

/// Communication automaton in the model schema extended with an event kind.
std::string comm_to_json(const CommAutomaton& comm, const TimedPlant& model);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace ndsap

#endif  // NDSAP_IO_HPP_
