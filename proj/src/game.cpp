#include "smvsynth/game.hpp"

#include <unordered_map>

#include "smvsynth/error.hpp"

namespace smvsynth {

using aig::AigerDoc;
using aig::Lit;
using bdd::Bdd;

namespace {

AigerDoc with_state_based_justice(const AigerDoc& doc, bool& delayed)
{
    if (doc.justice.size() > 1 || (doc.justice.size() == 1 && doc.justice[0].lits.size() != 1))
        throw Error(Errc::justice_count, "expected at most one justice literal");
    delayed = false;
    if (doc.justice.empty() || !doc.depends_on_inputs(doc.justice[0].lits[0]))
        return doc;
    AigerDoc out = doc;
    Lit d = out.add_latch("__just_delay");
    out.latches.back().next = doc.justice[0].lits[0];
    out.justice[0].lits[0] = d;
    delayed = true;
    return out;
}

}  // namespace

Game::Game(const AigerDoc& doc) : model_(with_state_based_justice(doc, just_delayed_))
{
    bad_ = model_.bad();
    inv_ = model_.inv();
    const AigerDoc& d = model_.doc();
    just_ = d.justice.empty() ? mgr().one() : model_.from_aig(d.justice[0].lits[0]);
    u_cube_ = mgr().cube(model_.uvars());
    c_cube_ = mgr().cube(model_.cvars());
}

Bdd Game::cpre(const Bdd& target)
{
    Bdd step = ~inv_ | (~bad_ & model_.after_step(target));
    return mgr().forall_cube(mgr().exists_cube(step, c_cube_), u_cube_);
}

std::vector<Bdd> Game::layers(const Bdd& z)
{
    Bdd recur = just_ & z;
    std::vector<Bdd> ys{mgr().zero()};
    for (;;) {
        Bdd y = cpre(recur | ys.back());
        if (y == ys.back())
            return ys;
        ys.push_back(y);
    }
}

Bdd Game::solve()
{
    Bdd z = mgr().one();
    for (;;) {
        Bdd y = layers(z).back();
        if (y == z)
            return z;
        z = y;
    }
}

Strategy extract_strategy(Game& g, const Bdd& winning)
{
    if (!g.realizable(winning))
        throw Error(Errc::strategy_precondition, "the initial state is not winning; no strategy exists");
    bdd::Manager& m = g.mgr();
    SymbolicModel& sm = g.model();
    std::vector<Bdd> ys = g.layers(winning);
    Bdd recur = g.just() & winning;

    // From layer i + 1 the play must move into recur | layer i.
    Bdd progress = m.zero();
    for (std::size_t i = 1; i < ys.size(); ++i) {
        Bdd band = ys[i] & ~ys[i - 1];
        progress |= band & sm.after_step(recur | ys[i - 1]);
    }
    Bdd r = ~winning | ~g.inv() | (~g.bad() & progress);

    Strategy s;
    s.winning = winning;
    const auto& cvars = sm.cvars();
    for (std::size_t i = 0; i < cvars.size(); ++i) {
        std::vector<bdd::Var> later(cvars.begin() + static_cast<std::ptrdiff_t>(i) + 1, cvars.end());
        Bdd can1 = m.exists(m.cofactor(r, cvars[i], true), later);
        Bdd can0 = m.exists(m.cofactor(r, cvars[i], false), later);
        Bdd f = can1 & ~can0;
        s.functions.push_back(f);
        r = m.substitute(r, {{cvars[i], f}});
    }
    return s;
}

AigerDoc strategy_to_circuit(Game& g, const Strategy& s)
{
    const AigerDoc& src = g.doc();
    SymbolicModel& sm = g.model();
    bdd::Manager& m = g.mgr();
    AigerDoc out;
    out.format = src.format;
    out.comment = src.comment;
    aig::AigCopier copier(src.aig, out.aig);

    std::unordered_map<bdd::Var, Lit> var_lit;
    for (std::size_t i : src.uncontrollable_inputs()) {
        Lit l = out.add_input(src.inputs[i].name);
        copier.map_leaf(src.inputs[i].lit, l);
        var_lit[sm.input_var(i)] = l;
    }
    for (std::size_t i = 0; i < src.latches.size(); ++i) {
        Lit l = out.add_latch(src.latches[i].name);
        copier.map_leaf(src.latches[i].lit, l);
        var_lit[sm.cur()[i]] = l;
    }

    // One multiplexer per BDD node, shared across all functions.
    std::unordered_map<bdd::NodeId, Lit> mux{{bdd::kFalseId, aig::kFalse}, {bdd::kTrueId, aig::kTrue}};
    auto build = [&](const Bdd& f) {
        std::vector<bdd::NodeId> stack{f.id()};
        while (!stack.empty()) {
            bdd::NodeId n = stack.back();
            if (mux.contains(n)) {
                stack.pop_back();
                continue;
            }
            bdd::NodeId lo = m.node_low(n), hi = m.node_high(n);
            if (!mux.contains(lo) || !mux.contains(hi)) {
                if (!mux.contains(lo))
                    stack.push_back(lo);
                if (!mux.contains(hi))
                    stack.push_back(hi);
                continue;
            }
            auto v = var_lit.find(m.node_var(n));
            if (v == var_lit.end())
                throw Error(Errc::strategy_precondition, "strategy reads a variable that is not a latch or an "
                                                         "uncontrollable input");
            mux[n] = out.aig.ite(v->second, mux[hi], mux[lo]);
            stack.pop_back();
        }
        return mux[f.id()];
    };
    auto cins = src.controllable_inputs();
    if (cins.size() != s.functions.size())
        throw Error(Errc::strategy_precondition, "strategy has " + std::to_string(s.functions.size()) +
                                                     " functions for " + std::to_string(cins.size()) +
                                                     " controllable inputs");
    for (std::size_t i = 0; i < cins.size(); ++i)
        copier.map_leaf(src.inputs[cins[i]].lit, build(s.functions[i]));

    for (std::size_t i = 0; i < src.latches.size(); ++i)
        out.latches[i].next = copier.copy(src.latches[i].next);
    for (const auto& o : src.outputs)
        out.outputs.push_back({copier.copy(o.lit), o.name});
    for (const auto& b : src.bad)
        out.bad.push_back({copier.copy(b.lit), b.name});
    for (const auto& c : src.constraints)
        out.constraints.push_back({copier.copy(c.lit), c.name});
    for (const auto& j : src.justice) {
        aig::Justice nj{{}, j.name};
        for (Lit l : j.lits)
            nj.lits.push_back(copier.copy(l));
        out.justice.push_back(std::move(nj));
    }
    return out;
}

}  // namespace smvsynth
