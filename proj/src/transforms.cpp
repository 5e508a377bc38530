#include "smvsynth/transforms.hpp"

#include <algorithm>

#include "smvsynth/error.hpp"
#include "smvsynth/flatten.hpp"

namespace smvsynth {

using aig::AigerDoc;
using aig::Lit;

namespace {

Lit single_justice(const AigerDoc& doc)
{
    if (doc.justice.size() != 1 || doc.justice[0].lits.size() != 1)
        throw Error(Errc::justice_count, "expected exactly one justice literal, found " +
                                             std::to_string(doc.justice.size()) + " group(s)");
    return doc.justice[0].lits[0];
}

std::string fresh_latch_name(const AigerDoc& doc, std::string base)
{
    auto taken = [&](const std::string& n) {
        return std::any_of(doc.latches.begin(), doc.latches.end(), [&](const aig::Latch& l) { return l.name == n; });
    };
    std::string name = base;
    for (int i = 1; taken(name); ++i)
        name = base + "_" + std::to_string(i);
    return name;
}

}  // namespace

AigerDoc justice_to_safety(const AigerDoc& doc, unsigned k)
{
    Lit just = single_justice(doc);
    AigerDoc out = doc;
    aig::Aig& g = out.aig;

    Lit inv = aig::kTrue;
    for (const auto& c : doc.constraints)
        inv = g.land(inv, c.lit);
    Lit any_bad = aig::kFalse;
    for (const auto& b : doc.bad)
        any_bad = g.lor(any_bad, b.lit);
    if (doc.format == aig::Format::old_format)
        for (const auto& o : doc.outputs)
            any_bad = g.lor(any_bad, o.lit);

    // Steps since just last held, saturating at k + 1.
    std::uint32_t top = k + 1;
    unsigned nb = flat::bits_for(static_cast<std::size_t>(top) + 1);
    std::vector<Lit> bits;
    std::size_t first = out.latches.size();
    for (unsigned j = 0; j < nb; ++j)
        bits.push_back(out.add_latch(fresh_latch_name(out, flat::bit_name("__window", j))));
    auto is_code = [&](std::uint32_t v) {
        Lit r = aig::kTrue;
        for (unsigned j = 0; j < nb; ++j)
            r = g.land(r, aig::negate_if(bits[j], !((v >> j) & 1u)));
        return r;
    };
    std::vector<Lit> next(nb, aig::kFalse);
    Lit exceeded = aig::kFalse;
    for (std::uint32_t v = 0; v < (1u << nb); ++v) {
        Lit at = is_code(v);
        std::uint32_t succ = std::min(v + 1, top);
        for (unsigned j = 0; j < nb; ++j)
            if ((succ >> j) & 1u)
                next[j] = g.lor(next[j], at);
        if (v > k)
            exceeded = g.lor(exceeded, at);
    }
    for (unsigned j = 0; j < nb; ++j)
        out.latches[first + j].next = g.land(aig::negate(just), next[j]);

    Lit env_fail = out.add_latch(fresh_latch_name(out, "__env_fail"));
    out.latches.back().next = g.lor(env_fail, aig::negate(inv));

    // A violation at the step where the constraints first fail does not count.
    Lit bad = g.land(g.land(aig::negate(env_fail), inv), g.lor(any_bad, exceeded));

    out.outputs = {{bad, "bad"}};
    out.bad.clear();
    out.constraints.clear();
    out.justice.clear();
    out.format = aig::Format::old_format;
    return out;
}

AigerDoc reverse_justice(const AigerDoc& model, Lit just)
{
    AigerDoc out = model;
    aig::Aig& g = out.aig;
    std::string aux = "aux";
    auto taken = [&](const std::string& n) {
        return std::any_of(out.inputs.begin(), out.inputs.end(), [&](const aig::Symbol& s) { return s.name == n; });
    };
    for (int i = 1; taken(aux); ++i)
        aux = "aux_" + std::to_string(i);
    Lit a = out.add_input(aux);

    // waiting = !checking & !dead
    Lit checking = out.add_latch(fresh_latch_name(out, "__rj_checking"));
    std::size_t ci = out.latches.size() - 1;
    Lit dead = out.add_latch(fresh_latch_name(out, "__rj_dead"));
    std::size_t di = out.latches.size() - 1;
    Lit waiting = g.land(aig::negate(checking), aig::negate(dead));
    out.latches[ci].next = g.lor(g.land(waiting, a), g.land(checking, aig::negate(just)));
    out.latches[di].next = g.lor(dead, g.land(checking, just));

    out.justice = {{{g.land(checking, aig::negate(just))}, "just"}};
    if (model.format == aig::Format::old_format) {
        // Plain SYNTCOMP models carry their bad signal as the output.
        for (const auto& o : out.outputs)
            out.bad.push_back(o);
        out.outputs.clear();
    }
    out.format = aig::Format::new_format;
    return out;
}

AigerDoc reverse_justice(const AigerDoc& model)
{
    Lit just = model.justice.empty() ? aig::kTrue : single_justice(model);
    return reverse_justice(model, just);
}

}  // namespace smvsynth
