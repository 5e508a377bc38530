#include "smvsynth/compile.hpp"

#include <unordered_map>

#include "smvsynth/error.hpp"

namespace smvsynth {

using aig::Lit;

bool fair_is_trivial(const automata::Monitor& m)
{
    const auto& a = m.automaton;
    for (std::size_t s = 0; s < a.states.size(); ++s)
        if (!a.accepting[s] && !a.is_trap(s))
            return false;
    return true;
}

namespace {

class ExprCompiler {
public:
    explicit ExprCompiler(aig::Aig& g) : g_(g) {}

    void bind(const std::string& name, Lit l) { signals_[name] = l; }
    bool bound(const std::string& name) const { return signals_.contains(name); }
    Lit signal(const std::string& name) const { return signals_.at(name); }

    Lit operator()(const flat::BoolExpr& e)
    {
        if (auto it = memo_.find(e.get()); it != memo_.end())
            return it->second;
        Lit r = aig::kFalse;
        switch (e->op) {
        case flat::BoolOp::constant: r = e->value ? aig::kTrue : aig::kFalse; break;
        case flat::BoolOp::ref: {
            auto it = signals_.find(e->name);
            if (it == signals_.end())
                throw Error(Errc::undefined_proposition, "'" + e->name + "' is not a signal of the model");
            r = it->second;
            break;
        }
        case flat::BoolOp::lnot: r = aig::negate((*this)(e->args[0])); break;
        case flat::BoolOp::land: r = g_.land((*this)(e->args[0]), (*this)(e->args[1])); break;
        case flat::BoolOp::lor: r = g_.lor((*this)(e->args[0]), (*this)(e->args[1])); break;
        case flat::BoolOp::lxor: r = g_.lxor((*this)(e->args[0]), (*this)(e->args[1])); break;
        case flat::BoolOp::ite: r = g_.ite((*this)(e->args[0]), (*this)(e->args[1]), (*this)(e->args[2])); break;
        }
        memo_.emplace(e.get(), r);
        return r;
    }

private:
    aig::Aig& g_;
    std::unordered_map<std::string, Lit> signals_;
    std::unordered_map<const flat::BoolNode*, Lit> memo_;
};

struct PlacedMonitor {
    const NamedMonitor* nm;
    std::size_t first_latch;
    Lit bad = aig::kFalse;
    Lit fair = aig::kFalse;
};

}  // namespace

aig::AigerDoc compile(const flat::FlatModel& model, const std::vector<NamedMonitor>& sys,
                      const std::vector<NamedMonitor>& env)
{
    aig::AigerDoc doc;
    doc.format = aig::Format::new_format;
    ExprCompiler cc(doc.aig);

    for (const auto& n : model.inputs_u)
        cc.bind(n, doc.add_input(n));
    for (const auto& n : model.inputs_c)
        cc.bind(n, doc.add_input(std::string(aig::kControllablePrefix) + n));
    // A latch that starts at 1 is stored inverted so every latch resets to 0.
    for (const auto& l : model.latches)
        cc.bind(l.name, aig::negate_if(doc.add_latch(l.name), l.init));

    std::vector<PlacedMonitor> placed;
    auto place = [&](const NamedMonitor& nm) {
        PlacedMonitor p{&nm, doc.latches.size()};
        for (unsigned j = 0; j < nm.monitor.state_bits; ++j)
            doc.add_latch(flat::bit_name(nm.name, j));
        placed.push_back(p);
    };
    for (const auto& nm : sys)
        place(nm);
    for (const auto& nm : env)
        place(nm);

    for (const auto& [name, e] : model.defines)
        cc.bind(name, cc(e));
    for (std::size_t i = 0; i < model.latches.size(); ++i) {
        const auto& l = model.latches[i];
        doc.latches[i].next = aig::negate_if(cc(l.next), l.init);
    }

    for (auto& p : placed) {
        const automata::Monitor& m = p.nm->monitor;
        ExprCompiler mc(doc.aig);
        for (const auto& prop : m.automaton.props) {
            if (!cc.bound(prop))
                throw Error(Errc::undefined_proposition, "automaton '" + p.nm->name + "' uses proposition '" + prop +
                                                             "', which is not a signal of module main");
            mc.bind(prop, cc.signal(prop));
        }
        for (unsigned j = 0; j < m.state_bits; ++j)
            mc.bind(automata::Monitor::state_ref(j), doc.latches[p.first_latch + j].lit);
        for (unsigned j = 0; j < m.state_bits; ++j)
            doc.latches[p.first_latch + j].next = mc(m.next[j]);
        p.bad = mc(m.bad);
        p.fair = mc(m.fair);
    }

    std::vector<Lit> fairs;
    for (std::size_t i = 0; i < sys.size(); ++i) {
        doc.bad.push_back({placed[i].bad, sys[i].name});
        if (!fair_is_trivial(sys[i].monitor))
            fairs.push_back(placed[i].fair);
    }
    for (std::size_t i = 0; i < env.size(); ++i)
        doc.constraints.push_back({aig::negate(placed[sys.size() + i].bad), env[i].name});
    if (!flat::is_const(model.input_constraint, true))
        doc.constraints.push_back({cc(model.input_constraint), "input_domain"});

    if (fairs.size() == 1) {
        doc.justice.push_back({{fairs[0]}, "just"});
    } else if (fairs.size() > 1) {
        // Round-robin counter over the fair signals: it waits for fair[c], then
        // moves on; just is the last fair seen while waiting for it.
        std::size_t n = fairs.size();
        unsigned nb = flat::bits_for(n);
        std::vector<Lit> bits;
        std::size_t first = doc.latches.size();
        for (unsigned j = 0; j < nb; ++j)
            bits.push_back(doc.add_latch(flat::bit_name("__gb", j)));
        auto is_code = [&](std::size_t c) {
            Lit r = aig::kTrue;
            for (unsigned j = 0; j < nb; ++j)
                r = doc.aig.land(r, aig::negate_if(bits[j], !((c >> j) & 1u)));
            return r;
        };
        std::vector<Lit> next(nb, aig::kFalse);
        for (std::size_t c = 0; c < n; ++c) {
            Lit at = is_code(c);
            std::size_t succ = (c + 1) % n;
            for (unsigned j = 0; j < nb; ++j) {
                // Stay at c without fair[c]; advance to succ with it.
                Lit stay = doc.aig.land(at, aig::negate(fairs[c]));
                Lit go = doc.aig.land(at, fairs[c]);
                if ((c >> j) & 1u)
                    next[j] = doc.aig.lor(next[j], stay);
                if ((succ >> j) & 1u)
                    next[j] = doc.aig.lor(next[j], go);
            }
        }
        for (unsigned j = 0; j < nb; ++j)
            doc.latches[first + j].next = next[j];
        doc.justice.push_back({{doc.aig.land(is_code(n - 1), fairs[n - 1])}, "just"});
    }
    return doc;
}

}  // namespace smvsynth
