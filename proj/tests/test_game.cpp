#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "smvsynth/error.hpp"
#include "smvsynth/game.hpp"
#include "smvsynth/mc.hpp"
#include "smvsynth/symbolic.hpp"

using namespace smvsynth;
using aig::AigerDoc;
using aig::Lit;

namespace {

std::vector<bool> bits_of(std::uint64_t s, std::size_t n)
{
    std::vector<bool> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = (s >> i) & 1u;
    return v;
}

std::vector<bool> symbolic_region(Game& g, const bdd::Bdd& w)
{
    std::size_t n = g.doc().latches.size();
    std::vector<bool> out;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s)
        out.push_back(!(w & g.model().state_cube(bits_of(s, n))).is_false());
    return out;
}

// l' = u xor c, bad = l: the system cancels u in the same step.
AigerDoc echo_game()
{
    AigerDoc d;
    d.format = aig::Format::new_format;
    Lit u = d.add_input("u");
    Lit c = d.add_input("controllable_c");
    Lit l = d.add_latch("l");
    d.latches[0].next = d.aig.lxor(u, c);
    d.bad.push_back({l, "bad"});
    return d;
}

}  // namespace

TEST_CASE("symbolic model variable layout")
{
    AigerDoc d = echo_game();
    SymbolicModel m(d);
    CHECK(m.cur() == std::vector<bdd::Var>{0});
    CHECK(m.nxt() == std::vector<bdd::Var>{1});
    CHECK(m.uvars() == std::vector<bdd::Var>{2});
    CHECK(m.cvars() == std::vector<bdd::Var>{3});
    CHECK(m.input_var(1) == 3);
    CHECK(m.contains_initial(m.initial()));
    CHECK(!m.contains_initial(m.mgr().var(0)));
    CHECK(m.bad() == m.mgr().var(0));
    CHECK(m.inv().is_true());
    // after_step replaces l by u xor c
    CHECK(m.after_step(m.mgr().var(0)) == (m.mgr().var(2) ^ m.mgr().var(3)));
    bdd::Bdd tr = m.transition_relation();
    CHECK(tr == m.mgr().ite(m.mgr().var(1), m.mgr().var(2) ^ m.mgr().var(3), ~(m.mgr().var(2) ^ m.mgr().var(3))));
}

TEST_CASE("controllable predecessor with the system answering the environment")
{
    AigerDoc d = echo_game();
    Game g(d);
    bdd::Manager& m = g.mgr();
    bdd::Bdd not_l = m.nvar(0);
    CHECK(g.cpre(not_l) == not_l);
    CHECK(g.cpre(m.zero()).is_false());
    CHECK(g.cpre(m.one()) == not_l);  // bad states are lost at once
    CHECK(g.realizable(g.solve()));
    CHECK(g.solve() == not_l);
}

TEST_CASE("constraints release the system")
{
    // l' = u, bad = l, but the constraint forbids u.
    AigerDoc d;
    d.format = aig::Format::new_format;
    Lit u = d.add_input("u");
    Lit l = d.add_latch("l");
    d.latches[0].next = u;
    d.bad.push_back({l, "bad"});
    {
        Game g(d);
        CHECK(!g.realizable(g.solve()));
    }
    d.constraints.push_back({aig::negate(u), "no_u"});
    Game g(d);
    CHECK(g.realizable(g.solve()));
    // states where l already holds are lost regardless
    CHECK(g.solve() == g.mgr().nvar(0));
}

TEST_CASE("justice needs a strategy that keeps coming back")
{
    // l' = c; the system must make l true infinitely often but u & l is bad.
    AigerDoc d;
    d.format = aig::Format::new_format;
    Lit u = d.add_input("u");
    Lit c = d.add_input("controllable_c");
    Lit l = d.add_latch("l");
    d.latches[0].next = c;
    d.bad.push_back({d.aig.land(u, l), "bad"});
    d.justice.push_back({{l}, "just"});
    {
        Game g(d);
        CHECK(!g.realizable(g.solve()));
    }
    d.bad[0].lit = aig::kFalse;
    Game g(d);
    bdd::Bdd w = g.solve();
    CHECK(w.is_true());
    auto ly = g.layers(w);
    REQUIRE(ly.size() >= 2);
    CHECK(ly.front().is_false());
    for (std::size_t i = 1; i < ly.size(); ++i)
        CHECK(ly[i - 1].implies(ly[i]));
    CHECK(ly.back() == w);
}

TEST_CASE("symbolic winning region equals two explicit computations")
{
    std::mt19937 rng(99);
    int wins = 0;
    for (int trial = 0; trial < 40; ++trial) {
        oracle::RandomGameOptions opt;
        opt.latches = 1 + trial % 5;
        opt.uinputs = 1 + trial % 2;
        opt.cinputs = 1 + (trial / 2) % 2;
        AigerDoc d = oracle::random_game(rng, opt);
        Game g(d);
        bdd::Bdd w = g.solve();
        auto sym = symbolic_region(g, w);
        auto mine = oracle::winning_region(d);
        mc::ExplicitResult lib = mc::solve_explicit(d);
        CHECK(sym == mine);
        for (std::uint64_t s = 0; s < sym.size(); ++s)
            CHECK(lib.wins(s) == sym[s]);
        CHECK(lib.initial_winning == g.realizable(w));
        wins += g.realizable(w);
    }
    CHECK(wins > 0);
    CHECK(wins < 40);
}

TEST_CASE("input-dependent justice is delayed by one latch")
{
    std::mt19937 rng(4);
    int delayed = 0;
    for (int trial = 0; trial < 20; ++trial) {
        AigerDoc d = oracle::random_game(rng, {3, 1, 1, 20, true, true});
        d.justice[0].lits[0] = d.aig.lor(d.justice[0].lits[0], d.inputs[trial % 2].lit);
        Game g(d);
        if (!g.just_delayed())
            continue;
        ++delayed;
        CHECK(g.doc().latches.back().name == "__just_delay");
        CHECK(g.doc().latches.size() == d.latches.size() + 1);
        // delayed justice is state-based, so the explicit solver accepts it
        mc::ExplicitResult e = mc::solve_explicit(g.doc());
        CHECK(e.initial_winning == g.realizable(g.solve()));
        CHECK_THROWS_AS(mc::solve_explicit(d), Error);
    }
    CHECK(delayed > 0);
}

TEST_CASE("strategy extraction")
{
    AigerDoc d = echo_game();
    Game g(d);
    bdd::Bdd w = g.solve();
    Strategy s = extract_strategy(g, w);
    REQUIRE(s.functions.size() == 1);
    // inside the winning region c must copy u
    CHECK((s.functions[0] & w) == (g.mgr().var(2) & w));
    AigerDoc model = strategy_to_circuit(g, s);
    CHECK(model.controllable_inputs().empty());
    CHECK(model.inputs.size() == 1);
    CHECK(mc::check_safety(model).holds);
}

TEST_CASE("no strategy from a losing initial state")
{
    AigerDoc d;
    d.format = aig::Format::new_format;
    Lit u = d.add_input("u");
    Lit l = d.add_latch("l");
    d.latches[0].next = u;
    d.bad.push_back({l, "bad"});
    Game g(d);
    try {
        extract_strategy(g, g.solve());
        FAIL("expected strategy_precondition");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::strategy_precondition);
    }
}

TEST_CASE("synthesized circuits satisfy the objective on random games")
{
    std::mt19937 rng(1234);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        oracle::RandomGameOptions opt;
        opt.latches = 2 + trial % 4;
        AigerDoc d = oracle::random_game(rng, opt);
        if (trial % 3 == 0)
            d.justice[0].lits[0] = d.aig.land(d.justice[0].lits[0], d.inputs[0].lit);
        Game g(d);
        bdd::Bdd w = g.solve();
        if (!g.realizable(w))
            continue;
        ++checked;
        Strategy s = extract_strategy(g, w);
        for (const auto& f : s.functions)
            for (bdd::Var v : g.mgr().support(f)) {
                bool ok = false;
                for (bdd::Var x : g.model().cur())
                    ok = ok || x == v;
                for (bdd::Var x : g.model().uvars())
                    ok = ok || x == v;
                CHECK(ok);
            }
        AigerDoc model = strategy_to_circuit(g, s);
        CHECK(model.controllable_inputs().empty());
        oracle::Graph gr = oracle::explore(model);
        CHECK(!oracle::safety_violated(gr));
        CHECK(!oracle::universal_justice_violated(gr));
        CHECK(mc::check_safety(model).holds);
        CHECK(mc::check_justice_universal(model).holds);
    }
    CHECK(checked > 5);
}
