/* channels.hpp -- FIFO observation/control channel configurations and their
 * update operators. Ages count time units; a configuration is a queue of
 * (event, age) pairs with the oldest entry at the front. */

#ifndef NDSAP_CHANNELS_HPP_
#define NDSAP_CHANNELS_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ndsap/fsa.hpp"

namespace ndsap {

struct ChannelEntry {
    EventId event;
    std::uint32_t age;

    friend bool operator==(const ChannelEntry&, const ChannelEntry&) = default;
    friend auto operator<=>(const ChannelEntry&, const ChannelEntry&) = default;
};

using ChannelFifo = std::vector<ChannelEntry>;

struct DelayBounds {
    std::uint32_t n_o = 0;  // observation delay bound, time units
    std::uint32_t n_c = 0;  // control delay bound, time units
};

/// Events that occurred but have not been communicated yet.
struct ObsConfig {
    ChannelFifo fifo;

    std::uint32_t max_age() const { return fifo.empty() ? 0 : fifo.front().age; }
    bool empty() const { return fifo.empty(); }

    friend bool operator==(const ObsConfig&, const ObsConfig&) = default;
    friend auto operator<=>(const ObsConfig&, const ObsConfig&) = default;
};

/// Events that were communicated but whose activation commands have not been
/// executed yet.
struct CtrlConfig {
    ChannelFifo fifo;

    std::uint32_t max_age() const { return fifo.empty() ? 0 : fifo.front().age; }
    bool empty() const { return fifo.empty(); }

    friend bool operator==(const CtrlConfig&, const CtrlConfig&) = default;
    friend auto operator<=>(const CtrlConfig&, const CtrlConfig&) = default;
};

/// Event sigma occurs at state q: all ages grow by t_min(q, sigma) and
/// (sigma, 0) is appended. Undefined when the aged front would exceed n_o.
std::optional<ObsConfig> in_obs(const ObsConfig& cfg, StateId q, EventId sigma,
                                const TimedPlant& model, std::uint32_t n_o);

/// Event sigma is communicated: pops the front iff it carries sigma.
std::optional<ObsConfig> out_obs(const ObsConfig& cfg, EventId sigma);

/// Event sigma occurs at state q: all ages grow by t_min(q, sigma); the empty
/// configuration stays empty. Undefined when the aged front would exceed n_c.
std::optional<CtrlConfig> plus(const CtrlConfig& cfg, StateId q, EventId sigma,
                               const TimedPlant& model, std::uint32_t n_c);

/// Event sigma is communicated: a command is issued, (sigma, 0) is appended.
CtrlConfig in_ctr(const CtrlConfig& cfg, EventId sigma);

/// The command issued after communicating sigma executes: pops the front iff
/// it carries sigma.
std::optional<CtrlConfig> out_ctr(const CtrlConfig& cfg, EventId sigma);

/// Renders "(b,1)(f,0)" using the model's event names; empty reads as the
/// empty-string symbol.
std::string render_fifo(const ChannelFifo& fifo, const TimedPlant& model);

}  // namespace ndsap

#endif  // NDSAP_CHANNELS_HPP_
