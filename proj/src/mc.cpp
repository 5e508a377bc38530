#include "smvsynth/mc.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

#include "smvsynth/error.hpp"
#include "smvsynth/symbolic.hpp"

namespace smvsynth::mc {

using aig::AigerDoc;
using bdd::Bdd;

std::string format_trace(const AigerDoc& doc, const Trace& t)
{
    std::ostringstream out;
    auto names = [&](const char* kind, char prefix, const auto& items) {
        out << kind;
        for (std::size_t i = 0; i < items.size(); ++i)
            out << ' ' << (items[i].name.empty() ? prefix + std::to_string(i) : items[i].name);
        out << '\n';
    };
    names("inputs", 'i', doc.inputs);
    names("latches", 'l', doc.latches);
    if (t.loop_start)
        out << "loop " << *t.loop_start << '\n';
    for (std::size_t i = 0; i < t.length(); ++i) {
        for (bool b : t.inputs[i])
            out << (b ? '1' : '0');
        out << ' ';
        for (bool b : t.states[i])
            out << (b ? '1' : '0');
        out << '\n';
    }
    return out.str();
}

Simulator::Simulator(const AigerDoc& doc) : doc_(doc), values_(doc.aig.num_nodes(), false) {}

void Simulator::evaluate(const std::vector<bool>& latches, const std::vector<bool>& inputs)
{
    values_[0] = false;
    for (std::size_t i = 0; i < doc_.latches.size(); ++i)
        values_[aig::node_of(doc_.latches[i].lit)] = latches[i];
    for (std::size_t i = 0; i < doc_.inputs.size(); ++i)
        values_[aig::node_of(doc_.inputs[i].lit)] = inputs[i];
    const aig::Aig& g = doc_.aig;
    for (std::uint32_t n = 1; n < g.num_nodes(); ++n)
        if (g.is_and(n))
            values_[n] = value(g.left(n)) && value(g.right(n));
}

std::vector<bool> Simulator::next_state() const
{
    std::vector<bool> out;
    out.reserve(doc_.latches.size());
    for (const auto& l : doc_.latches)
        out.push_back(value(l.next));
    return out;
}

bool Simulator::any_bad() const
{
    for (const auto& b : doc_.bad)
        if (value(b.lit))
            return true;
    if (doc_.format == aig::Format::old_format)
        for (const auto& o : doc_.outputs)
            if (value(o.lit))
                return true;
    return false;
}

bool Simulator::all_constraints() const
{
    return std::all_of(doc_.constraints.begin(), doc_.constraints.end(),
                       [&](const aig::Symbol& c) { return value(c.lit); });
}

bool Simulator::justice() const
{
    if (doc_.justice.empty())
        return true;
    return std::all_of(doc_.justice[0].lits.begin(), doc_.justice[0].lits.end(),
                       [&](aig::Lit l) { return value(l); });
}

namespace {

aig::Lit justice_literal(const AigerDoc& doc)
{
    if (doc.justice.empty())
        return aig::kTrue;
    if (doc.justice.size() > 1 || doc.justice[0].lits.size() != 1)
        throw Error(Errc::justice_count, "expected at most one justice literal");
    return doc.justice[0].lits[0];
}

// Walks the circuit explicitly along inputs chosen from BDD constraints.
class Walker {
public:
    explicit Walker(SymbolicModel& sm) : sm_(sm), sim_(sm.doc()) {}

    // Inputs for one step from `state` satisfying `cond` (over state and
    // inputs), if any. Free inputs are set to 0.
    std::optional<std::vector<bool>> choose(const std::vector<bool>& state, const Bdd& cond)
    {
        auto cube = sm_.mgr().pick_cube(sm_.state_cube(state) & cond);
        if (!cube)
            return std::nullopt;
        std::vector<bool> in(sm_.doc().inputs.size(), false);
        for (std::size_t i = 0; i < in.size(); ++i)
            in[i] = (*cube)[sm_.input_var(i)] == 1;
        return in;
    }

    std::vector<bool> step(const std::vector<bool>& state, const std::vector<bool>& in)
    {
        sim_.evaluate(state, in);
        return sim_.next_state();
    }

    bool in(const std::vector<bool>& state, const Bdd& set)
    {
        std::vector<bool> a(sm_.mgr().num_vars(), false);
        for (std::size_t i = 0; i < state.size(); ++i)
            a[sm_.cur()[i]] = state[i];
        return sm_.mgr().eval(set, a);
    }

    // Index of the first layer containing the state.
    std::size_t layer_of(const std::vector<bool>& state, const std::vector<Bdd>& layers)
    {
        for (std::size_t i = 0; i < layers.size(); ++i)
            if (in(state, layers[i]))
                return i;
        throw Error(Errc::invalid_doc, "internal: state outside every layer");
    }

private:
    SymbolicModel& sm_;
    Simulator sim_;
};

// Repeats `choose_step` from `state` until a state recurs; the trace gets a
// loop back to that state's first visit.
template <typename ChooseStep>
void close_lasso(Walker& w, Trace& t, std::vector<bool> state, ChooseStep choose_step)
{
    std::map<std::vector<bool>, std::size_t> seen;
    for (std::size_t i = 0; i < t.states.size(); ++i)
        seen.emplace(t.states[i], i);
    for (;;) {
        auto it = seen.find(state);
        if (it != seen.end()) {
            t.loop_start = it->second;
            return;
        }
        std::vector<bool> in = choose_step(state);
        seen.emplace(state, t.states.size());
        t.states.push_back(state);
        t.inputs.push_back(in);
        state = w.step(state, in);
    }
}

}  // namespace

Verdict check_safety(const AigerDoc& doc)
{
    SymbolicModel sm(doc);
    bdd::Manager& m = sm.mgr();
    Bdd x = m.cube(sm.input_vars());
    Bdd inv = sm.inv();
    Bdd bad = sm.bad();

    // layers[i]: states that can violate within i steps.
    std::vector<Bdd> layers{m.exists_cube(inv & bad, x)};
    while (!sm.contains_initial(layers.back())) {
        Bdd next = layers.back() | m.exists_cube(inv & sm.after_step(layers.back()), x);
        if (next == layers.back())
            return {};
        layers.push_back(next);
    }

    Verdict v;
    v.holds = false;
    Walker w(sm);
    std::vector<bool> state(doc.latches.size(), false);
    for (;;) {
        std::size_t i = w.layer_of(state, layers);
        Bdd cond = i == 0 ? inv & bad : inv & sm.after_step(layers[i - 1]);
        auto in = w.choose(state, cond);
        v.trace.states.push_back(state);
        v.trace.inputs.push_back(*in);
        if (i == 0)
            return v;
        state = w.step(state, *in);
    }
}

Verdict check_justice_universal(const AigerDoc& doc)
{
    SymbolicModel sm(doc);
    bdd::Manager& m = sm.mgr();
    Bdd x = m.cube(sm.input_vars());
    Bdd inv = sm.inv();
    Bdd stay = inv & ~sm.from_aig(justice_literal(doc));

    // States with an infinite path of inv & !just steps.
    Bdd n = m.one();
    for (;;) {
        Bdd next = m.exists_cube(stay & sm.after_step(n), x);
        if (next == n)
            break;
        n = next;
    }
    std::vector<Bdd> layers{n};
    while (!sm.contains_initial(layers.back())) {
        Bdd next = layers.back() | m.exists_cube(inv & sm.after_step(layers.back()), x);
        if (next == layers.back())
            return {};
        layers.push_back(next);
    }

    Verdict v;
    v.holds = false;
    Walker w(sm);
    std::vector<bool> state(doc.latches.size(), false);
    for (std::size_t i = w.layer_of(state, layers); i > 0; i = w.layer_of(state, layers)) {
        auto in = w.choose(state, inv & sm.after_step(layers[i - 1]));
        v.trace.states.push_back(state);
        v.trace.inputs.push_back(*in);
        state = w.step(state, *in);
    }
    Bdd loop_step = stay & sm.after_step(n);
    close_lasso(w, v.trace, state, [&](const std::vector<bool>& s) { return *w.choose(s, loop_step); });
    return v;
}

Verdict find_fair_trace(const AigerDoc& doc)
{
    SymbolicModel sm(doc);
    bdd::Manager& m = sm.mgr();
    Bdd x = m.cube(sm.input_vars());
    Bdd inv = sm.inv();
    Bdd just = sm.from_aig(justice_literal(doc));

    auto layers_for = [&](const Bdd& z) {
        Bdd base = m.exists_cube(inv & just & sm.after_step(z), x);
        std::vector<Bdd> ys{base};
        for (;;) {
            Bdd y = base | m.exists_cube(inv & sm.after_step(ys.back()), x);
            if (y == ys.back())
                return ys;
            ys.push_back(y);
        }
    };
    Bdd z = m.one();
    std::vector<Bdd> ys;
    for (;;) {
        ys = layers_for(z);
        if (ys.back() == z)
            break;
        z = ys.back();
    }
    Verdict v;
    if (!sm.contains_initial(z))
        return v;
    v.holds = false;
    Walker w(sm);
    Bdd fair_step = inv & just & sm.after_step(z);
    close_lasso(w, v.trace, std::vector<bool>(doc.latches.size(), false), [&](const std::vector<bool>& s) {
        std::size_t i = w.layer_of(s, ys);
        return *w.choose(s, i == 0 ? fair_step : inv & sm.after_step(ys[i - 1]));
    });
    return v;
}

bool ExplicitResult::wins(std::uint64_t state) const
{
    if (states.empty())
        return winning.at(state);
    auto it = std::lower_bound(states.begin(), states.end(), state);
    if (it == states.end() || *it != state)
        throw Error(Errc::state_space_too_large, "state " + std::to_string(state) + " was not explored");
    return winning[static_cast<std::size_t>(it - states.begin())];
}

ExplicitResult solve_explicit(const AigerDoc& doc, const ExplicitOptions& opt)
{
    aig::Lit just_lit = justice_literal(doc);
    if (doc.depends_on_inputs(just_lit))
        throw Error(Errc::unsupported, "explicit solver needs a justice literal over latches only");
    std::size_t nl = doc.latches.size();
    auto uin = doc.uncontrollable_inputs();
    auto cin = doc.controllable_inputs();
    std::size_t nu = uin.size(), nc = cin.size();
    if (nl > 63 || nu + nc > 24)
        throw Error(Errc::state_space_too_large, "too many latches or inputs for explicit solving");
    if (!opt.reachable_only && nl + nu + nc > opt.max_bits)
        throw Error(Errc::state_space_too_large, std::to_string(nl + nu + nc) + " state and input bits exceed the " +
                                                     std::to_string(opt.max_bits) + "-bit limit");

    Simulator sim(doc);
    std::uint64_t nuv = 1ull << nu, ncv = 1ull << nc;
    auto decode = [&](std::uint64_t s) {
        std::vector<bool> v(nl);
        for (std::size_t i = 0; i < nl; ++i)
            v[i] = (s >> i) & 1u;
        return v;
    };
    auto inputs_of = [&](std::uint64_t u, std::uint64_t c) {
        std::vector<bool> in(doc.inputs.size(), false);
        for (std::size_t i = 0; i < nu; ++i)
            in[uin[i]] = (u >> i) & 1u;
        for (std::size_t i = 0; i < nc; ++i)
            in[cin[i]] = (c >> i) & 1u;
        return in;
    };
    auto encode_next = [&]() {
        std::uint64_t n = 0;
        for (std::size_t i = 0; i < nl; ++i)
            if (sim.value(doc.latches[i].next))
                n |= 1ull << i;
        return n;
    };

    // Per state and move: 0 = constraints fail, 1 = bad, 2 = next state in `succ`.
    struct Move {
        std::uint8_t kind;
        std::uint32_t succ;
    };
    std::vector<std::uint64_t> states;
    std::unordered_map<std::uint64_t, std::uint32_t> index;
    std::vector<Move> moves;
    std::vector<bool> just;

    auto add_state = [&](std::uint64_t s) {
        auto [it, fresh] = index.emplace(s, static_cast<std::uint32_t>(states.size()));
        if (fresh)
            states.push_back(s);
        return it->second;
    };
    ExplicitResult res;
    if (opt.reachable_only) {
        add_state(0);
        for (std::size_t k = 0; k < states.size(); ++k) {
            if (states.size() > opt.max_states)
                throw Error(Errc::state_space_too_large, "more than " + std::to_string(opt.max_states) +
                                                             " reachable states");
            std::vector<bool> sv = decode(states[k]);
            for (std::uint64_t u = 0; u < nuv; ++u)
                for (std::uint64_t c = 0; c < ncv; ++c) {
                    sim.evaluate(sv, inputs_of(u, c));
                    add_state(encode_next());
                }
        }
        std::sort(states.begin(), states.end());
        index.clear();
        for (std::size_t k = 0; k < states.size(); ++k)
            index[states[k]] = static_cast<std::uint32_t>(k);
    } else {
        states.resize(std::size_t{1} << nl);
        for (std::uint64_t s = 0; s < states.size(); ++s)
            states[s] = s;
    }
    auto idx = [&](std::uint64_t s) -> std::uint32_t {
        return opt.reachable_only ? index.at(s) : static_cast<std::uint32_t>(s);
    };

    std::size_t ns = states.size();
    moves.resize(ns * nuv * ncv);
    just.resize(ns);
    for (std::size_t k = 0; k < ns; ++k) {
        std::vector<bool> sv = decode(states[k]);
        for (std::uint64_t u = 0; u < nuv; ++u) {
            for (std::uint64_t c = 0; c < ncv; ++c) {
                sim.evaluate(sv, inputs_of(u, c));
                Move mv{2, 0};
                if (!sim.all_constraints())
                    mv.kind = 0;
                else if (sim.any_bad())
                    mv.kind = 1;
                else
                    mv.succ = idx(encode_next());
                moves[(k * nuv + u) * ncv + c] = mv;
                if (u == 0 && c == 0)
                    just[k] = sim.value(just_lit);
            }
        }
    }

    std::vector<bool> z(ns, true);
    for (;;) {
        std::vector<bool> y(ns, false);
        for (;;) {
            std::vector<bool> ny(ns, false);
            for (std::size_t k = 0; k < ns; ++k) {
                bool all_u = true;
                for (std::uint64_t u = 0; u < nuv && all_u; ++u) {
                    bool some_c = false;
                    for (std::uint64_t c = 0; c < ncv && !some_c; ++c) {
                        const Move& mv = moves[(k * nuv + u) * ncv + c];
                        some_c = mv.kind == 0 || (mv.kind == 2 && ((just[mv.succ] && z[mv.succ]) || y[mv.succ]));
                    }
                    all_u = some_c;
                }
                ny[k] = all_u;
            }
            if (ny == y)
                break;
            y = std::move(ny);
        }
        if (y == z)
            break;
        z = std::move(y);
    }
    res.winning = z;
    res.initial_winning = z[idx(0)];
    if (opt.reachable_only)
        res.states = states;
    return res;
}

}  // namespace smvsynth::mc
