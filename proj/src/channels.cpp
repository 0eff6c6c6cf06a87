#include "ndsap/channels.hpp"

namespace ndsap {

namespace {

std::uint32_t occurring_time(const TimedPlant& model, StateId q, EventId sigma) {
    const auto* t = model.find(q, sigma);
    if (!t)
        throw Error(Errc::UnknownStateOrEvent,
                    "no transition (" + model.state_names[q] + ", " + model.event_names[sigma] + ")");
    return t->t_min;
}

}  // namespace

std::optional<ObsConfig> in_obs(const ObsConfig& cfg, StateId q, EventId sigma,
                                const TimedPlant& model, std::uint32_t n_o) {
    std::uint32_t dt = occurring_time(model, q, sigma);
    ObsConfig out = cfg;
    for (auto& entry : out.fifo) entry.age += dt;
    out.fifo.push_back({sigma, 0});
    if (out.max_age() > n_o) return std::nullopt;
    return out;
}

std::optional<ObsConfig> out_obs(const ObsConfig& cfg, EventId sigma) {
    if (cfg.empty() || cfg.fifo.front().event != sigma) return std::nullopt;
    ObsConfig out;
    out.fifo.assign(cfg.fifo.begin() + 1, cfg.fifo.end());
    return out;
}

std::optional<CtrlConfig> plus(const CtrlConfig& cfg, StateId q, EventId sigma,
                               const TimedPlant& model, std::uint32_t n_c) {
    std::uint32_t dt = occurring_time(model, q, sigma);
    CtrlConfig out = cfg;
    for (auto& entry : out.fifo) entry.age += dt;
    if (out.max_age() > n_c) return std::nullopt;
    return out;
}

CtrlConfig in_ctr(const CtrlConfig& cfg, EventId sigma) {
    CtrlConfig out = cfg;
    out.fifo.push_back({sigma, 0});
    return out;
}

std::optional<CtrlConfig> out_ctr(const CtrlConfig& cfg, EventId sigma) {
    if (cfg.empty() || cfg.fifo.front().event != sigma) return std::nullopt;
    CtrlConfig out;
    out.fifo.assign(cfg.fifo.begin() + 1, cfg.fifo.end());
    return out;
}

std::string render_fifo(const ChannelFifo& fifo, const TimedPlant& model) {
    if (fifo.empty()) return "eps";
    std::string out;
    for (const auto& entry : fifo) {
        out += "(";
        out += model.event_names[entry.event];
        out += ",";
        out += std::to_string(entry.age);
        out += ")";
    }
    return out;
}

}  // namespace ndsap
