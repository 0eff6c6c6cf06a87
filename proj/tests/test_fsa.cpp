#include <doctest.h>

#include "ndsap/fsa.hpp"
#include "test_helpers.hpp"

using namespace ndsap;
using namespace ndsap::test;

namespace {

Word word_of(const TimedPlant& model, const std::string& letters) {
    Word out;
    for (char c : letters) out.push_back(model.event_index(std::string(1, c)));
    return out;
}

}  // namespace

TEST_SUITE("fsa") {

TEST_CASE("toy fixture validates") {
    TimedPlant model = toy();
    CHECK_NOTHROW(validate_plant(model));
    CHECK(model.num_states() == 6);
    CHECK(model.num_events() == 3);
    CHECK(model.find(model.state_index("2"), model.event_index("f"))->t_min == 1);
    CHECK(model.find(model.state_index("3"), model.event_index("a"))->t_min == 2);
}

TEST_CASE("zero occurring time is rejected") {
    TimedPlant model = toy();
    model.transitions[model.state_index("2")][0].t_min = 0;
    CHECK_THROWS_AS_MESSAGE(validate_plant(model), Error, "t_min");
    try {
        validate_plant(model);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ZeroOccurringTime);
    }
}

TEST_CASE("duplicate transitions are rejected") {
    TimedPlant model = toy();
    // Force a second (0, a) entry past the sorted-insert guard.
    model.transitions[0].insert(model.transitions[0].begin(),
                                {model.event_index("a"), model.state_index("2"), 2});
    try {
        validate_plant(model);
        FAIL("expected DuplicateTransition");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DuplicateTransition);
    }
}

TEST_CASE("unknown ids and missing initial are rejected") {
    TimedPlant model = toy();
    model.transitions[0][0].target = 99;
    try {
        validate_plant(model);
        FAIL("expected UnknownStateOrEvent");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::UnknownStateOrEvent);
    }

    TimedPlant empty;
    try {
        validate_plant(empty);
        FAIL("expected NoInitialState");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NoInitialState);
    }
}

TEST_CASE("step follows the toy transitions") {
    TimedPlant model = toy();
    CHECK(step(model, 0, word_of(model, "bfa")) == model.state_index("4"));
    CHECK(step(model, 0, {}) == model.state_index("0"));
    CHECK(step(model, 0, word_of(model, "ab")) == std::nullopt);
}

TEST_CASE("suffix_truncate clamps at zero") {
    TimedPlant model = toy();
    Word bfab = word_of(model, "bfab");
    CHECK(suffix_truncate(bfab, 1) == word_of(model, "bfa"));
    CHECK(suffix_truncate(bfab, 9) == Word{});
    CHECK(suffix_truncate({}, 2) == Word{});
}

TEST_CASE("bounded language of the toy is the full finite language") {
    TimedPlant model = toy();
    std::set<Word> expect = {word_of(model, ""),   word_of(model, "a"),
                             word_of(model, "b"),  word_of(model, "bf"),
                             word_of(model, "bfa"), word_of(model, "bfab")};
    CHECK(bounded_language(model, 6) == expect);
    CHECK(bounded_language(model, 0) == std::set<Word>{{}});
}

TEST_CASE("bounded language of the production line at 3") {
    TimedPlant model = prodline();
    std::set<Word> expect = {word_of(model, ""),   word_of(model, "a"),
                             word_of(model, "ab"), word_of(model, "af"),
                             word_of(model, "abc"), word_of(model, "afa")};
    CHECK(bounded_language(model, 3) == expect);
}

TEST_CASE("relabel_exec wraps every event and refuses to re-wrap") {
    TimedPlant model = toy();
    Automaton g_exec = relabel_exec(model);
    CHECK(g_exec.num_states == model.num_states());
    for (const auto& e : g_exec.alphabet) CHECK(e.kind == EventKind::Exec);
    CHECK(g_exec.next(0, exec_ev(model.event_index("b"))) == model.state_index("2"));
    CHECK(g_exec.next(0, plant_ev(model.event_index("b"))) == std::nullopt);
    CHECK_THROWS_AS(relabel_exec(g_exec), Error);

    TimedPlant bare;
    bare.state_names = {"only"};
    bare.event_names = {"a"};
    bare.observable = {true};
    bare.initial = 0;
    bare.transitions.resize(1);
    Automaton empty = relabel_exec(bare);
    CHECK(empty.transitions[0].empty());
}

TEST_CASE("parallel composition is idempotent on identical components") {
    TimedPlant model = toy();
    Automaton a = as_automaton(model);
    Product p = parallel_compose(a, a);
    CHECK(p.automaton.num_states == 6);  // reachable part of the diagonal
    for (const auto& [qa, qb] : p.origin) CHECK(qa == qb);
    CHECK(bounded_language(p.automaton, 6).size() == 6);
}

TEST_CASE("disjoint alphabets give the full shuffle") {
    Automaton a;
    a.alphabet = {plant_ev(0)};
    a.num_states = 2;
    a.initial = 0;
    a.transitions.resize(2);
    a.add_transition(0, 0, 1);

    Automaton b;
    b.alphabet = {plant_ev(7)};
    b.num_states = 3;
    b.initial = 0;
    b.transitions.resize(3);
    b.add_transition(0, 0, 1);
    b.add_transition(1, 0, 2);

    Product p = parallel_compose(a, b);
    CHECK(p.automaton.num_states == 6);  // 2 x 3, every interleaving
}

TEST_CASE("shared-alphabet composition intersects bounded languages") {
    std::mt19937_64 rng(20240811);
    for (int i = 0; i < 25; ++i) {
        TimedPlant ma = random_plant(rng);
        TimedPlant mb = random_plant(rng);
        // Align the event universes: reuse ma's events in mb.
        while (mb.event_names.size() < ma.event_names.size()) {
            mb.event_names.push_back(ma.event_names[mb.event_names.size()]);
            mb.observable.push_back(true);
        }
        mb.event_names.resize(ma.event_names.size());
        mb.observable.resize(ma.observable.size());
        for (auto& out : mb.transitions)
            for (auto& t : out)
                t.event = t.event % ma.num_events();
        // Deduplicate events after the remap.
        for (auto& out : mb.transitions) {
            std::vector<PlantTransition> clean;
            for (const auto& t : out) {
                bool seen = false;
                for (const auto& c : clean) seen = seen || c.event == t.event;
                if (!seen) clean.push_back(t);
            }
            std::sort(clean.begin(), clean.end(),
                      [](const PlantTransition& x, const PlantTransition& y) {
                          return x.event < y.event;
                      });
            out = clean;
        }

        Automaton a = as_automaton(ma);
        Automaton b = as_automaton(mb);
        Product p = parallel_compose(a, b);
        for (std::size_t k = 0; k <= 8; k += 4) {
            auto la = bounded_language(a, k);
            auto lb = bounded_language(b, k);
            std::set<ExtWord> expect;
            for (const auto& w : la)
                if (lb.count(w)) expect.insert(w);
            CHECK(bounded_language(p.automaton, k) == expect);
        }
    }
}

TEST_CASE("pair sets normalize orientation") {
    PairSet pairs;
    pairs.insert(3, 1);
    CHECK(pairs.contains(1, 3));
    CHECK(pairs.contains(3, 1));
    pairs.insert(2, 2);
    CHECK(pairs.non_diagonal().size() == 1);
    CHECK(pairs.size() == 2);
}

}  // TEST_SUITE
