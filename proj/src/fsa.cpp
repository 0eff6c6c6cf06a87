#include "ndsap/fsa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

namespace ndsap {

const PlantTransition* TimedPlant::find(StateId q, EventId e) const {
    if (q >= transitions.size()) return nullptr;
    const auto& out = transitions[q];
    auto it = std::lower_bound(out.begin(), out.end(), e,
                               [](const PlantTransition& t, EventId ev) { return t.event < ev; });
    if (it == out.end() || it->event != e) return nullptr;
    return &*it;
}

std::optional<StateId> TimedPlant::next(StateId q, EventId e) const {
    const auto* t = find(q, e);
    if (!t) return std::nullopt;
    return t->target;
}

StateId TimedPlant::state_index(const std::string& name) const {
    for (StateId i = 0; i < state_names.size(); ++i)
        if (state_names[i] == name) return i;
    throw Error(Errc::UnknownStateOrEvent, "unknown state: " + name);
}

EventId TimedPlant::event_index(const std::string& name) const {
    for (EventId i = 0; i < event_names.size(); ++i)
        if (event_names[i] == name) return i;
    throw Error(Errc::UnknownStateOrEvent, "unknown event: " + name);
}

std::vector<EventId> TimedPlant::observable_events() const {
    std::vector<EventId> out;
    for (EventId e = 0; e < num_events(); ++e)
        if (observable[e]) out.push_back(e);
    return out;
}

const TimedPlant& validate_plant(const TimedPlant& model) {
    if (model.state_names.empty() || model.initial == kNoState)
        throw Error(Errc::NoInitialState, "model has no initial state");
    if (model.initial >= model.num_states())
        throw Error(Errc::UnknownStateOrEvent, "initial state out of range");
    if (model.observable.size() != model.num_events())
        throw Error(Errc::InvalidModel, "observable flags do not match event count");
    if (model.transitions.size() != model.num_states())
        throw Error(Errc::InvalidModel, "transition table does not match state count");
    for (StateId q = 0; q < model.num_states(); ++q) {
        const auto& out = model.transitions[q];
        for (std::size_t i = 0; i < out.size(); ++i) {
            const auto& t = out[i];
            if (t.event >= model.num_events() || t.target >= model.num_states())
                throw Error(Errc::UnknownStateOrEvent,
                            "transition from " + model.state_names[q] + " references unknown ids");
            if (t.t_min < 1)
                throw Error(Errc::ZeroOccurringTime,
                            "t_min < 1 on (" + model.state_names[q] + ", " +
                                model.event_names[t.event] + ")");
            if (i > 0 && out[i - 1].event >= t.event)
                throw Error(Errc::DuplicateTransition,
                            "duplicate transition on (" + model.state_names[q] + ", " +
                                model.event_names[t.event] + ")");
        }
    }
    return model;
}

std::optional<StateId> step(const TimedPlant& model, StateId from, const Word& word) {
    StateId q = from;
    for (EventId e : word) {
        auto nxt = model.next(q, e);
        if (!nxt) return std::nullopt;
        q = *nxt;
    }
    return q;
}

Word suffix_truncate(const Word& word, std::size_t i) {
    Word out(word.begin(), word.end() - std::min(i, word.size()));
    return out;
}

std::optional<StateId> Automaton::next_label(StateId q, std::uint32_t label) const {
    const auto& out = transitions[q];
    auto it = std::lower_bound(out.begin(), out.end(), label,
                               [](const auto& p, std::uint32_t l) { return p.first < l; });
    if (it == out.end() || it->first != label) return std::nullopt;
    return it->second;
}

std::optional<StateId> Automaton::next(StateId q, const ExtEvent& e) const {
    auto label = label_of(e);
    if (!label) return std::nullopt;
    return next_label(q, *label);
}

std::optional<std::uint32_t> Automaton::label_of(const ExtEvent& e) const {
    auto it = std::lower_bound(alphabet.begin(), alphabet.end(), e);
    if (it == alphabet.end() || *it != e) return std::nullopt;
    return static_cast<std::uint32_t>(it - alphabet.begin());
}

void Automaton::add_transition(StateId from, std::uint32_t label, StateId to) {
    auto& out = transitions[from];
    auto it = std::lower_bound(out.begin(), out.end(), label,
                               [](const auto& p, std::uint32_t l) { return p.first < l; });
    if (it != out.end() && it->first == label) {
        if (it->second != to)
            throw Error(Errc::DuplicateTransition, "nondeterministic transition in automaton");
        return;
    }
    out.insert(it, {label, to});
}

Automaton as_automaton(const TimedPlant& model) {
    Automaton a;
    a.alphabet.reserve(model.num_events());
    for (EventId e = 0; e < model.num_events(); ++e) a.alphabet.push_back(plant_ev(e));
    a.initial = model.initial;
    a.num_states = model.num_states();
    a.transitions.resize(a.num_states);
    for (StateId q = 0; q < model.num_states(); ++q)
        for (const auto& t : model.transitions[q]) a.add_transition(q, t.event, t.target);
    return a;
}

Automaton relabel_exec(const Automaton& a) {
    Automaton out;
    out.alphabet.reserve(a.alphabet.size());
    for (const auto& e : a.alphabet) {
        if (e.kind != EventKind::Plant)
            throw Error(Errc::InvalidModel, "relabel_exec: automaton already carries comm/exec events");
        out.alphabet.push_back(exec_ev(e.event));
    }
    out.initial = a.initial;
    out.num_states = a.num_states;
    out.transitions = a.transitions;  // label indices are preserved by the relabeling
    return out;
}

Automaton relabel_exec(const TimedPlant& model) { return relabel_exec(as_automaton(model)); }

Product parallel_compose(const Automaton& a, const Automaton& b) {
    // Label spaces of the product: union of both alphabets.
    std::vector<ExtEvent> alphabet;
    alphabet.reserve(a.alphabet.size() + b.alphabet.size());
    alphabet.insert(alphabet.end(), a.alphabet.begin(), a.alphabet.end());
    alphabet.insert(alphabet.end(), b.alphabet.begin(), b.alphabet.end());
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());

    Product prod;
    prod.automaton.alphabet = alphabet;

    std::map<std::pair<StateId, StateId>, StateId> index;
    std::deque<std::pair<StateId, StateId>> queue;
    auto intern = [&](StateId qa, StateId qb) {
        auto [it, fresh] = index.try_emplace({qa, qb}, static_cast<StateId>(prod.origin.size()));
        if (fresh) {
            prod.origin.emplace_back(qa, qb);
            prod.automaton.transitions.emplace_back();
            queue.emplace_back(qa, qb);
        }
        return it->second;
    };

    prod.automaton.initial = intern(a.initial, b.initial);
    while (!queue.empty()) {
        auto [qa, qb] = queue.front();
        queue.pop_front();
        StateId from = index.at({qa, qb});
        for (std::uint32_t l = 0; l < alphabet.size(); ++l) {
            const ExtEvent& ev = alphabet[l];
            bool in_a = a.label_of(ev).has_value();
            bool in_b = b.label_of(ev).has_value();
            std::optional<StateId> na = in_a ? a.next(qa, ev) : std::optional<StateId>(qa);
            std::optional<StateId> nb = in_b ? b.next(qb, ev) : std::optional<StateId>(qb);
            if (!na || !nb) continue;
            prod.automaton.add_transition(from, l, intern(*na, *nb));
        }
    }
    prod.automaton.num_states = prod.origin.size();
    return prod;
}

std::set<Word> bounded_language(const TimedPlant& model, std::size_t k) {
    std::set<Word> out;
    std::deque<std::pair<StateId, Word>> queue;
    queue.push_back({model.initial, {}});
    out.insert(Word{});
    while (!queue.empty()) {
        auto [q, w] = queue.front();
        queue.pop_front();
        if (w.size() == k) continue;
        for (const auto& t : model.transitions[q]) {
            Word next = w;
            next.push_back(t.event);
            out.insert(next);
            queue.push_back({t.target, std::move(next)});
        }
    }
    return out;
}

std::set<ExtWord> bounded_language(const Automaton& a, std::size_t k) {
    std::set<ExtWord> out;
    std::deque<std::pair<StateId, ExtWord>> queue;
    queue.push_back({a.initial, {}});
    out.insert(ExtWord{});
    while (!queue.empty()) {
        auto [q, w] = queue.front();
        queue.pop_front();
        if (w.size() == k) continue;
        for (const auto& [label, target] : a.transitions[q]) {
            ExtWord next = w;
            next.push_back(a.alphabet[label]);
            out.insert(next);
            queue.push_back({target, std::move(next)});
        }
    }
    return out;
}

void PairSet::insert(StateId a, StateId b) {
    if (a > b) std::swap(a, b);
    pairs_.insert({a, b});
}

bool PairSet::contains(StateId a, StateId b) const {
    if (a > b) std::swap(a, b);
    return pairs_.count({a, b}) != 0;
}

std::vector<std::pair<StateId, StateId>> PairSet::non_diagonal() const {
    std::vector<std::pair<StateId, StateId>> out;
    for (const auto& p : pairs_)
        if (p.first != p.second) out.push_back(p);
    return out;
}

bool PairSet::intersects(const PairSet& other) const {
    const PairSet& small = size() <= other.size() ? *this : other;
    const PairSet& large = size() <= other.size() ? other : *this;
    for (const auto& p : small.pairs_)
        if (large.pairs_.count(p)) return true;
    return false;
}

PairSet PairSet::intersect(const PairSet& other) const {
    PairSet out;
    for (const auto& p : pairs_)
        if (other.pairs_.count(p)) out.pairs_.insert(p);
    return out;
}

}  // namespace ndsap
