/* acceptance.cpp -- end-to-end acceptance checks. Each criterion prints one
 * PASS/FAIL line; the binary exits nonzero if any executed criterion fails.
 * Run with no arguments for all criteria or with a number (1..7) for one. */

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ndsap/decentral.hpp"
#include "ndsap/diagnosis.hpp"
#include "ndsap/io.hpp"
#include "ndsap/simulate.hpp"
#include "ndsap/synthesis.hpp"

using namespace ndsap;
using Clock = std::chrono::steady_clock;

namespace {

std::string data_path(const std::string& name) {
    return std::string(NDSAP_DATA_DIR) + "/" + name;
}

struct Criterion {
    int failures = 0;
    std::ostringstream log;

    void expect(bool ok, const std::string& what) {
        if (!ok) {
            ++failures;
            log << "    failed: " << what << "\n";
        }
    }
};

std::string show_policy(const SensorPolicy& p, const TimedPlant& m) {
    std::string out = "{";
    for (const auto& [q, e] : p.entries())
        out += "(" + m.state_names[q] + "," + m.event_names[e] + ")";
    return out + "}";
}

std::string show_pairs(const PairSet& p, const TimedPlant& m) {
    std::string out = "{";
    for (const auto& [a, b] : p.non_diagonal())
        out += "(" + m.state_names[a] + "," + m.state_names[b] + ")";
    return out + "}";
}

PairSet non_diagonal_only(const PairSet& p) {
    PairSet out;
    for (const auto& [a, b] : p.non_diagonal()) out.insert(a, b);
    return out;
}

SensorPolicy toy_dstar(const TimedPlant& model) {
    SensorPolicy p;
    p.insert(model.state_index("0"), model.event_index("a"));
    p.insert(model.state_index("0"), model.event_index("b"));
    p.insert(model.state_index("2"), model.event_index("a"));
    p.insert(model.state_index("3"), model.event_index("a"));
    return p;
}

PairSet toy_spec(const TimedPlant& model) {
    PairSet spec;
    spec.insert(model.state_index("0"), model.state_index("5"));
    spec.insert(model.state_index("1"), model.state_index("5"));
    spec.insert(model.state_index("2"), model.state_index("5"));
    return spec;
}

// ---------------------------------------------------------------- criterion 1

void criterion1(Criterion& c) {
    TimedPlant model = load_plant(data_path("toy.json"));
    EventId b = model.event_index("b"), f = model.event_index("f");
    StateId s2 = model.state_index("2");

    auto r1 = in_obs(ObsConfig{{{b, 0}}}, s2, f, model, 1);
    c.expect(r1 && r1->fifo == ChannelFifo{{b, 1}, {f, 0}}, "in_obs((b,0),2,f) = (b,1)(f,0)");

    auto r2 = out_obs(ObsConfig{{{b, 1}, {f, 0}}}, b);
    c.expect(r2 && r2->fifo == ChannelFifo{{f, 0}}, "out_obs((b,1)(f,0),b) = (f,0)");

    auto r3 = plus(CtrlConfig{{{b, 0}}}, s2, f, model, 2);
    c.expect(r3 && r3->fifo == ChannelFifo{{b, 1}}, "plus((b,0),2,f) = (b,1)");

    auto r4 = in_ctr(CtrlConfig{{{b, 1}}}, f);
    c.expect(r4.fifo == ChannelFifo{{b, 1}, {f, 0}}, "in_ctr((b,1),f) = (b,1)(f,0)");

    auto r5 = out_ctr(CtrlConfig{{{b, 1}, {f, 0}}}, b);
    c.expect(r5 && r5->fifo == ChannelFifo{{f, 0}}, "out_ctr((b,1)(f,0),b) = (f,0)");
}

// ---------------------------------------------------------------- criterion 2

void criterion2(Criterion& c) {
    TimedPlant model = load_plant(data_path("toy.json"));
    CommAutomaton comm = build_comm(model, {1, 2});
    EventId a = model.event_index("a");

    const CommState& init = comm.states[comm.automaton.initial];
    c.expect(init.plant == model.initial && init.obs.empty() && init.ctrl.empty(),
             "initial state is (0, eps, eps)");

    auto q1 = comm.automaton.next(comm.automaton.initial, plant_ev(a));
    c.expect(q1 && comm.states[*q1].plant == model.state_index("1") &&
                 comm.states[*q1].obs.fifo == ChannelFifo{{a, 0}} && comm.states[*q1].ctrl.empty(),
             "delta((0,eps,eps), a) = (1,(a,0),eps)");

    EventId b = model.event_index("b");
    auto q2 = comm.automaton.next(comm.automaton.initial, plant_ev(b));
    c.expect(q2 && comm.states[*q2].plant == model.state_index("2") &&
                 comm.states[*q2].obs.fifo == ChannelFifo{{b, 0}} && comm.states[*q2].ctrl.empty(),
             "delta((0,eps,eps), b) = (2,(b,0),eps)");
    if (q1) {
        auto q1h = comm.automaton.next(*q1, comm_ev(a));
        c.expect(q1h && comm.states[*q1h].plant == model.state_index("1") &&
                     comm.states[*q1h].obs.empty() &&
                     comm.states[*q1h].ctrl.fifo == ChannelFifo{{a, 0}},
                 "delta((1,(a,0),eps), h(a)) = (1,eps,(a,0))");
    }

    c.expect(bounded_psi_language(comm, 10) == bounded_language(model, 6),
             "projected language equals the full toy language");

    TimedPlant line = load_plant(data_path("prodline.json"));
    CommAutomaton line_comm = build_comm(line, {2, 2});
    c.expect(bounded_psi_language(line_comm, 10) == bounded_language(line, 10),
             "projected language equals the plant language up to length 10");
}

// ---------------------------------------------------------------- criterion 3

void criterion3(Criterion& c) {
    TimedPlant model = load_plant(data_path("toy.json"));
    CommContext ctx = make_context(model, {1, 2});

    SensorPolicy input = SensorPolicy::full(model);
    input.erase(model.state_index("4"), model.event_index("b"));
    MaxSubpolicyResult result = max_feasible_subpolicy(ctx, input);

    SensorPolicy pinned = SensorPolicy::full(model);
    for (const char* q : {"2", "3", "4"})
        pinned.erase(model.state_index(q), model.event_index("b"));
    c.expect(result.policy == pinned,
             "subpolicy = Qx{a,b} minus {(2,b),(3,b),(4,b)}; computed " +
                 show_policy(result.policy, model));

    PairSet conf_expected;
    conf_expected.insert(model.state_index("2"), model.state_index("3"));
    conf_expected.insert(model.state_index("4"), model.state_index("5"));
    c.expect(non_diagonal_only(result.conf) == conf_expected,
             "confusable pairs = {(2,3),(4,5)}; computed " + show_pairs(result.conf, model));

    PairSet delayed = delayed_conf_pairs(model, result.conf, 1);
    PairSet delayed_expected;
    delayed_expected.insert(model.state_index("2"), model.state_index("3"));
    delayed_expected.insert(model.state_index("2"), model.state_index("4"));
    delayed_expected.insert(model.state_index("3"), model.state_index("4"));
    delayed_expected.insert(model.state_index("4"), model.state_index("5"));
    c.expect(non_diagonal_only(delayed) == delayed_expected,
             "delayed pairs = {(2,3),(2,4),(3,4),(4,5)}; computed " +
                 show_pairs(delayed, model));
}

// ---------------------------------------------------------------- criterion 4

void criterion4(Criterion& c) {
    TimedPlant model = load_plant(data_path("toy.json"));
    CommContext ctx = make_context(model, {1, 2});
    SensorPolicy dstar = toy_dstar(model);
    PairSet spec = toy_spec(model);

    c.expect(check_delay_feasible(ctx, dstar).feasible, "reference policy is delay feasible");

    PairSet delayed = delayed_conf_pairs(model, conf_pairs(ctx, dstar), 1);
    c.expect(!delayed.intersects(spec), "reference policy satisfies the specification");

    for (const auto& [q, e] : dstar.entries()) {
        SensorPolicy trimmed = dstar;
        trimmed.erase(q, e);
        MaxSubpolicyResult repaired = max_feasible_subpolicy(ctx, trimmed);
        PairSet d = delayed_conf_pairs(model, repaired.conf, 1);
        c.expect(d.intersects(spec), "removing (" + model.state_names[q] + "," +
                                         model.event_names[e] + ") breaks the specification");
    }
}

// ---------------------------------------------------------------- criterion 5

void criterion5(Criterion& c) {
    TimedPlant line = load_plant(data_path("prodline.json"));
    FaultSpec faults{{"belt"}, {{line.event_index("f")}}, 2};
    RefinedPlant refined = refine_k_diag(line, faults);
    DelayBounds bounds{2, 2};
    CommContext ctx = make_context(refined.plant, bounds);

    SensorPolicy dstar = lift_policy(refined, load_policy(data_path("prodline_dstar.json"), line));
    FeasibilityReport feas = check_delay_feasible(ctx, dstar);
    {
        std::string detail;
        for (const auto& v : feas.violations)
            if (v.kind == FeasibilityViolation::Kind::Condition2)
                detail += " C2(" + refined.plant.state_names[v.pair_first] + "," +
                          refined.plant.state_names[v.pair_second] + ";" +
                          refined.plant.event_names[v.event] + ")";
        c.expect(feas.feasible, "lifted reference policy is delay feasible; violations:" + detail);
    }

    DiagCheckResult dstar_check = check_delay_k_diag(refined, faults, bounds, dstar);
    c.expect(dstar_check.diagnosable,
             "lifted reference policy achieves delay 2-diagnosability; witnesses " +
                 show_pairs(dstar_check.witnesses, refined.plant));

    SensorPolicy static_ac;
    for (StateId q = 0; q < refined.plant.num_states(); ++q) {
        static_ac.insert(q, refined.plant.event_index("a"));
        static_ac.insert(q, refined.plant.event_index("c"));
    }
    DiagCheckResult ac_check = check_delay_k_diag(refined, faults, bounds, static_ac);
    c.expect(ac_check.diagnosable,
             "static {a,c} policy achieves delay 2-diagnosability; witnesses " +
                 show_pairs(ac_check.witnesses, refined.plant));

    DiagCheckResult blind = check_delay_k_diag(refined, faults, bounds, SensorPolicy{});
    c.expect(!blind.diagnosable && !blind.witnesses.empty(),
             "the empty policy fails with a witness");
}

// ---------------------------------------------------------------- criterion 6

TimedPlant random_plant6(std::mt19937_64& rng, std::size_t max_states, std::size_t max_events) {
    std::uniform_int_distribution<std::size_t> state_count(2, max_states);
    std::uniform_int_distribution<std::size_t> event_count(2, max_events);
    std::size_t n = state_count(rng), m = event_count(rng);
    TimedPlant model;
    for (std::size_t q = 0; q < n; ++q) model.state_names.push_back("s" + std::to_string(q));
    for (std::size_t e = 0; e < m; ++e) {
        model.event_names.push_back(std::string(1, static_cast<char>('a' + e)));
        model.observable.push_back(e == 0 ? true : rng() % 2 == 0);
    }
    model.initial = 0;
    model.transitions.resize(n);
    std::uniform_int_distribution<std::uint32_t> t_min(1, 3);
    auto add = [&](StateId from, EventId ev, StateId to, std::uint32_t t) {
        if (model.find(from, ev)) return;
        auto& out = model.transitions[from];
        auto it = std::lower_bound(out.begin(), out.end(), ev,
                                   [](const PlantTransition& x, EventId e) { return x.event < e; });
        out.insert(it, {ev, to, t});
    };
    for (StateId q = 1; q < n; ++q)
        add(static_cast<StateId>(rng() % q), static_cast<EventId>(rng() % m), q, t_min(rng));
    for (std::size_t i = 0, extras = rng() % (n + 1); i < extras; ++i)
        add(static_cast<StateId>(rng() % n), static_cast<EventId>(rng() % m),
            static_cast<StateId>(rng() % n), t_min(rng));
    return model;
}

SensorPolicy random_policy6(std::mt19937_64& rng, const TimedPlant& model) {
    SensorPolicy policy;
    for (StateId q = 0; q < model.num_states(); ++q)
        for (EventId e = 0; e < model.num_events(); ++e)
            if (model.observable[e] && rng() % 2 == 0) policy.insert(q, e);
    return policy;
}

void criterion6(Criterion& c) {
    // Union closure on 100 random delay-feasible pairs.
    {
        std::mt19937_64 rng(1009);
        int bad = 0;
        for (int i = 0; i < 100; ++i) {
            TimedPlant model = random_plant6(rng, 6, 3);
            DelayBounds bounds{1 + static_cast<std::uint32_t>(rng() % 2),
                               1 + static_cast<std::uint32_t>(rng() % 2)};
            CommContext ctx = make_context(model, bounds);
            SensorPolicy p1 = max_feasible_subpolicy(ctx, random_policy6(rng, model)).policy;
            SensorPolicy p2 = max_feasible_subpolicy(ctx, random_policy6(rng, model)).policy;
            if (!check_delay_feasible(ctx, p1.unite(p2)).feasible) ++bad;
        }
        c.expect(bad == 0, "union closure holds on 100 random feasible pairs (violations: " +
                               std::to_string(bad) + ")");
    }

    // Delayed observation equals plain observation for every communication
    // word up to length 10 under a synthesized (hence feasible) policy.
    {
        TimedPlant model = load_plant(data_path("toy.json"));
        CommContext ctx = make_context(model, {1, 2});
        SensorPolicy policy = minimize_sap(ctx, toy_spec(model)).policy;

        TimedPlant line = load_plant(data_path("prodline.json"));
        FaultSpec faults{{"belt"}, {{line.event_index("f")}}, 2};
        RefinedPlant refined = refine_k_diag(line, faults);
        CommContext line_ctx = make_context(refined.plant, {1, 2});
        SensorPolicy line_policy = minimize_sap(line_ctx, diag_spec(refined, faults)).policy;

        auto check_equal = [&](const CommContext& cx, const SensorPolicy& pol) {
            long long words = 0, mismatches = 0;
            // DFS over communication words, tracking both observation routes.
            struct Frame {
                StateId comm;     // communication automaton state
                StateId command;  // state reached by the effective command string
                StateId plant;    // state reached by the occurred string
                std::size_t len;
            };
            std::vector<Frame> stack{
                {cx.comm.automaton.initial, cx.model.initial, cx.model.initial, 0}};
            std::vector<bool> equal_stack{true};
            while (!stack.empty()) {
                Frame frame = stack.back();
                stack.pop_back();
                bool equal = equal_stack.back();
                equal_stack.pop_back();
                ++words;
                if (!equal) ++mismatches;
                if (frame.len == 10) continue;
                for (const auto& [label, target] : cx.comm.automaton.transitions[frame.comm]) {
                    const ExtEvent& ev = cx.comm.automaton.alphabet[label];
                    Frame next = frame;
                    next.comm = target;
                    ++next.len;
                    bool next_equal = equal;
                    if (ev.kind == EventKind::Plant) {
                        // Both routes must record the event identically.
                        next_equal = equal && pol.contains(frame.command, ev.event) ==
                                                  pol.contains(frame.plant, ev.event);
                        next.plant = *cx.model.next(frame.plant, ev.event);
                    } else if (ev.kind == EventKind::Exec) {
                        next.command = *cx.model.next(frame.command, ev.event);
                    }
                    stack.push_back(next);
                    equal_stack.push_back(next_equal);
                }
            }
            return std::pair<long long, long long>(words, mismatches);
        };
        auto [toy_words, toy_bad] = check_equal(ctx, policy);
        c.expect(toy_bad == 0, "delayed = plain observation on " + std::to_string(toy_words) +
                                   " toy words (mismatches: " + std::to_string(toy_bad) + ")");
        auto [line_words, line_bad] = check_equal(line_ctx, line_policy);
        c.expect(line_bad == 0,
                 "delayed = plain observation on " + std::to_string(line_words) +
                     " production-line words (mismatches: " + std::to_string(line_bad) + ")");
    }

    // Monotonicity: larger feasible policies confuse no more delayed pairs.
    {
        std::mt19937_64 rng(2027);
        int bad = 0;
        for (int i = 0; i < 40; ++i) {
            TimedPlant model = random_plant6(rng, 6, 3);
            DelayBounds bounds{1 + static_cast<std::uint32_t>(rng() % 2), 1};
            CommContext ctx = make_context(model, bounds);
            SensorPolicy larger = max_feasible_subpolicy(ctx, random_policy6(rng, model)).policy;
            SensorPolicy cut = larger;
            for (const auto& entry : std::vector(cut.entries().begin(), cut.entries().end()))
                if (rng() % 3 == 0) cut.erase(entry.first, entry.second);
            SensorPolicy smaller = max_feasible_subpolicy(ctx, cut).policy;
            PairSet dl = delayed_conf_pairs(model, conf_pairs(ctx, larger), bounds.n_o);
            PairSet ds = delayed_conf_pairs(model, conf_pairs(ctx, smaller), bounds.n_o);
            for (const auto& [x, y] : dl.pairs())
                if (!ds.contains(x, y)) ++bad;
        }
        c.expect(bad == 0, "anti-monotonicity holds on nested feasible policies (violations: " +
                               std::to_string(bad) + ")");
    }

    // Pair verifier against word enumeration on 50 random models.
    {
        std::mt19937_64 rng(3061);
        int bad = 0;
        for (int i = 0; i < 50; ++i) {
            TimedPlant model = random_plant6(rng, 5, 4);
            SensorPolicy policy = random_policy6(rng, model);
            PairSet verifier =
                confusable_pairs(as_automaton(model), [&](StateId q, const ExtEvent& e) {
                    return policy.contains(q, e.event);
                });
            // Enumerate words up to length 8 and group end states by
            // observation.
            std::map<ObservationWord, std::set<StateId>> groups;
            struct Node {
                StateId at;
                std::size_t len;
                ObservationWord obs;
            };
            std::vector<Node> stack{{model.initial, 0, {}}};
            while (!stack.empty()) {
                Node node = std::move(stack.back());
                stack.pop_back();
                groups[node.obs].insert(node.at);
                if (node.len == 8) continue;
                for (const auto& t : model.transitions[node.at]) {
                    Node next{t.target, node.len + 1, node.obs};
                    if (policy.contains(node.at, t.event)) next.obs.push_back(t.event);
                    stack.push_back(std::move(next));
                }
            }
            PairSet brute;
            for (const auto& [obs, states] : groups)
                for (StateId x : states)
                    for (StateId y : states) brute.insert(x, y);
            if (!(verifier == brute)) ++bad;
        }
        c.expect(bad == 0, "pair verifier equals word enumeration on 50 random models "
                           "(mismatches: " +
                               std::to_string(bad) + ")");
    }

    // Maximality by exhaustive subpolicy enumeration.
    {
        TimedPlant model = load_plant(data_path("toy.json"));
        CommContext ctx = make_context(model, {1, 2});
        auto exhaustive = [&](const SensorPolicy& input) {
            std::vector<std::pair<StateId, EventId>> entries(input.entries().begin(),
                                                             input.entries().end());
            SensorPolicy expected = max_feasible_subpolicy(ctx, input).policy;
            bool expected_seen = false;
            for (std::size_t mask = 0; mask < (std::size_t{1} << entries.size()); ++mask) {
                SensorPolicy sub;
                for (std::size_t i = 0; i < entries.size(); ++i)
                    if (mask & (std::size_t{1} << i))
                        sub.insert(entries[i].first, entries[i].second);
                if (!check_delay_feasible(ctx, sub).feasible) continue;
                if (!sub.subset_of(expected)) return false;  // not an upper bound
                expected_seen = expected_seen || sub == expected;
            }
            return expected_seen;  // the bound itself is feasible
        };
        c.expect(exhaustive(SensorPolicy::full(model)),
                 "repair fixpoint is the maximal feasible subpolicy of the full policy");
        SensorPolicy input = SensorPolicy::full(model);
        input.erase(model.state_index("4"), model.event_index("b"));
        c.expect(exhaustive(input),
                 "repair fixpoint is the maximal feasible subpolicy after dropping (4,b)");
    }
}

// ---------------------------------------------------------------- criterion 7

void criterion7(Criterion& c) {
    TimedPlant model = load_plant(data_path("toy.json"));

    // Single-agent run equals the centralized loop under the same order.
    {
        CommContext ctx = make_context(model, {1, 2});
        SensorPolicy centralized = minimize_sap(ctx, toy_spec(model)).policy;
        PairSet spec_pairs = toy_spec(model);
        JointSpec spec;
        spec.arity = 2;
        for (const auto& [a, b] : spec_pairs.pairs()) {
            spec.tuples.insert({a, b});
            spec.tuples.insert({b, a});
        }
        std::vector<AgentProfile> one = {{1, model.observable_events(), {1, 2}}};
        PolicyVector vec = minimize_decentralized(model, one, spec);
        c.expect(vec.policies.size() == 1 && vec.policies[0] == centralized,
                 "single-agent optimization equals the centralized result");
    }

    // Two agents with split alphabets.
    {
        std::vector<AgentProfile> agents = {{1, {model.event_index("a")}, {1, 2}},
                                            {2, {model.event_index("b")}, {1, 2}}};
        PolicyVector full{{SensorPolicy::full(model, agents[0].observable),
                           SensorPolicy::full(model, agents[1].observable)}};
        auto confusable = joint_conf_tuples(model, agents, full);
        JointSpec spec;
        spec.arity = 3;
        StateId five = model.state_index("5");
        for (StateId q1 = 0; q1 < model.num_states(); ++q1)
            for (StateId q2 = 0; q2 < model.num_states(); ++q2)
                if (!confusable.count({five, q1, q2})) spec.tuples.insert({five, q1, q2});
        c.expect(!spec.tuples.empty(), "the two-agent instance has a satisfiable specification");

        PolicyVector result = minimize_decentralized(model, agents, spec);
        bool feasible = true;
        for (std::size_t i = 0; i < agents.size(); ++i) {
            CommContext ctx = make_context(model, agents[i].bounds);
            feasible = feasible && check_delay_feasible(ctx, result.policies[i]).feasible;
        }
        c.expect(feasible, "both agent policies are delay feasible");
        c.expect(joint_conf_check(model, agents, result, spec).disjoint,
                 "product engine accepts the result");
        c.expect(joint_conf_check_brute(model, agents, result, spec, 8).disjoint,
                 "brute-force engine accepts the result");

        int weak = 0;
        for (std::size_t i = 0; i < agents.size(); ++i) {
            CommContext ctx = make_context(model, agents[i].bounds);
            for (const auto& [q, e] : result.policies[i].entries()) {
                SensorPolicy trimmed = result.policies[i];
                trimmed.erase(q, e);
                PolicyVector probe = result;
                probe.policies[i] = max_feasible_subpolicy(ctx, trimmed).policy;
                if (joint_conf_check(model, agents, probe, spec).disjoint) ++weak;
            }
        }
        c.expect(weak == 0, "every single-entry removal violates the specification (removable: " +
                                std::to_string(weak) + ")");
    }
}

struct Entry {
    int id;
    const char* label;
    double budget_seconds;
    std::function<void(Criterion&)> run;
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<Entry> entries = {
        {1, "channel operators reproduce the worked values", 1.0, criterion1},
        {2, "communication automaton transitions and language preservation", 5.0, criterion2},
        {3, "repair fixpoint and delayed expansion on the known instance", 5.0, criterion3},
        {4, "reference policy is feasible, satisfying, and minimal", 10.0, criterion4},
        {5, "production-line diagnosability results", 20.0, criterion5},
        {6, "property suites", 60.0, criterion6},
        {7, "decentralized optimization", 30.0, criterion7},
    };

    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    bool all_ok = true;
    for (auto& entry : entries) {
        if (only != 0 && entry.id != only) continue;
        Criterion c;
        auto start = Clock::now();
        try {
            entry.run(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("unexpected exception: ") + e.what());
        }
        double seconds = std::chrono::duration<double>(Clock::now() - start).count();
        c.expect(seconds <= entry.budget_seconds,
                 "runtime " + std::to_string(seconds) + "s exceeds " +
                     std::to_string(entry.budget_seconds) + "s");
        bool ok = c.failures == 0;
        all_ok = all_ok && ok;
        std::printf("[%s] criterion %d: %s (%.2fs)\n", ok ? "PASS" : "FAIL", entry.id,
                    entry.label, seconds);
        if (!ok) std::fputs(c.log.str().c_str(), stdout);
    }
    return all_ok ? 0 : 1;
}
