#include "smvsynth/aig.hpp"

#include <algorithm>
#include <cassert>

#include "smvsynth/error.hpp"

namespace smvsynth::aig {

Aig::Aig()
{
    nodes_.push_back({kFalse, kFalse});
}

Lit Aig::new_leaf()
{
    nodes_.push_back({kLeafMark, kLeafMark});
    return lit_of(num_nodes() - 1);
}

Lit Aig::land(Lit a, Lit b)
{
    assert(node_of(a) < nodes_.size() && node_of(b) < nodes_.size());
    if (a < b)
        std::swap(a, b);
    // a >= b from here on.
    if (b == kFalse)
        return kFalse;
    if (b == kTrue)
        return a;
    if (a == b)
        return a;
    if (a == negate(b))
        return kFalse;

    std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
    auto it = strash_.find(key);
    if (it != strash_.end())
        return lit_of(it->second);
    nodes_.push_back({a, b});
    ++num_ands_;
    std::uint32_t node = num_nodes() - 1;
    strash_.emplace(key, node);
    return lit_of(node);
}

Lit Aig::lxor(Lit a, Lit b)
{
    return lor(land(a, negate(b)), land(negate(a), b));
}

Lit Aig::ite(Lit sel, Lit then_lit, Lit else_lit)
{
    if (then_lit == else_lit)
        return then_lit;
    if (sel == kTrue)
        return then_lit;
    if (sel == kFalse)
        return else_lit;
    if (then_lit == kTrue && else_lit == kFalse)
        return sel;
    if (then_lit == kFalse && else_lit == kTrue)
        return negate(sel);
    if (then_lit == kTrue)
        return lor(sel, else_lit);
    if (then_lit == kFalse)
        return land(negate(sel), else_lit);
    if (else_lit == kFalse)
        return land(sel, then_lit);
    if (else_lit == kTrue)
        return lor(negate(sel), then_lit);
    return lor(land(sel, then_lit), land(negate(sel), else_lit));
}

Lit Aig::land_all(std::span<const Lit> lits)
{
    Lit r = kTrue;
    for (Lit l : lits)
        r = land(r, l);
    return r;
}

Lit Aig::lor_all(std::span<const Lit> lits)
{
    Lit r = kFalse;
    for (Lit l : lits)
        r = lor(r, l);
    return r;
}

std::vector<bool> Aig::cone(std::span<const Lit> roots) const
{
    std::vector<bool> mark(nodes_.size(), false);
    std::vector<std::uint32_t> stack;
    for (Lit l : roots)
        stack.push_back(node_of(l));
    while (!stack.empty()) {
        std::uint32_t n = stack.back();
        stack.pop_back();
        if (n == 0 || mark[n])
            continue;
        mark[n] = true;
        if (is_and(n)) {
            stack.push_back(node_of(nodes_[n].left));
            stack.push_back(node_of(nodes_[n].right));
        }
    }
    return mark;
}

Lit AigerDoc::add_input(std::string name)
{
    Lit l = aig.new_leaf();
    inputs.push_back({l, std::move(name)});
    return l;
}

Lit AigerDoc::add_latch(std::string name)
{
    Lit l = aig.new_leaf();
    latches.push_back({l, kFalse, std::move(name)});
    return l;
}

bool AigerDoc::is_controllable(std::size_t input) const
{
    return inputs[input].name.starts_with(kControllablePrefix);
}

std::vector<std::size_t> AigerDoc::uncontrollable_inputs() const
{
    std::vector<std::size_t> r;
    for (std::size_t i = 0; i < inputs.size(); ++i)
        if (!is_controllable(i))
            r.push_back(i);
    return r;
}

std::vector<std::size_t> AigerDoc::controllable_inputs() const
{
    std::vector<std::size_t> r;
    for (std::size_t i = 0; i < inputs.size(); ++i)
        if (is_controllable(i))
            r.push_back(i);
    return r;
}

std::vector<Lit> AigerDoc::roots() const
{
    std::vector<Lit> r;
    for (const auto& l : latches)
        r.push_back(l.next);
    for (const auto& s : outputs)
        r.push_back(s.lit);
    for (const auto& s : bad)
        r.push_back(s.lit);
    for (const auto& s : constraints)
        r.push_back(s.lit);
    for (const auto& j : justice)
        r.insert(r.end(), j.lits.begin(), j.lits.end());
    return r;
}

int AigerDoc::input_index(Lit l) const
{
    for (std::size_t i = 0; i < inputs.size(); ++i)
        if (node_of(inputs[i].lit) == node_of(l))
            return static_cast<int>(i);
    return -1;
}

int AigerDoc::latch_index(Lit l) const
{
    for (std::size_t i = 0; i < latches.size(); ++i)
        if (node_of(latches[i].lit) == node_of(l))
            return static_cast<int>(i);
    return -1;
}

bool AigerDoc::depends_on_inputs(Lit l) const
{
    Lit roots[] = {l};
    auto mark = aig.cone(roots);
    for (const auto& in : inputs)
        if (mark[node_of(in.lit)])
            return true;
    return false;
}

std::size_t AigerDoc::live_ands() const
{
    auto mark = aig.cone(roots());
    std::size_t n = 0;
    for (std::uint32_t i = 1; i < aig.num_nodes(); ++i)
        if (mark[i] && aig.is_and(i))
            ++n;
    return n;
}

void AigerDoc::validate() const
{
    if (format == Format::old_format && (!bad.empty() || !constraints.empty() || !justice.empty()))
        throw Error(Errc::invalid_doc, "old-format document carries bad/constraint/justice sections");
    std::vector<int> role(aig.num_nodes(), 0);
    auto claim = [&](Lit l, const char* what) {
        if (is_negated(l) || node_of(l) == 0 || !aig.is_leaf(node_of(l)))
            throw Error(Errc::invalid_doc, std::string(what) + " literal is not a leaf");
        if (role[node_of(l)] != 0)
            throw Error(Errc::invalid_doc, std::string(what) + " literal is used twice");
        role[node_of(l)] = 1;
    };
    for (const auto& in : inputs)
        claim(in.lit, "input");
    for (const auto& la : latches)
        claim(la.lit, "latch");
    auto mark = aig.cone(roots());
    for (std::uint32_t n = 1; n < aig.num_nodes(); ++n)
        if (mark[n] && aig.is_leaf(n) && role[n] == 0)
            throw Error(Errc::invalid_doc, "a section depends on an unlisted leaf");
    for (const auto& j : justice)
        if (j.lits.empty())
            throw Error(Errc::invalid_doc, "empty justice group");
}

void AigCopier::map_leaf(Lit src_leaf, Lit dst_lit)
{
    assert(!is_negated(src_leaf));
    image_[node_of(src_leaf)] = dst_lit;
}

Lit AigCopier::copy(Lit l)
{
    std::uint32_t root = node_of(l);
    if (root == 0)
        return l;
    // Iterative post-order so deep cones do not exhaust the stack.
    std::vector<std::uint32_t> stack{root};
    while (!stack.empty()) {
        std::uint32_t n = stack.back();
        if (image_.contains(n)) {
            stack.pop_back();
            continue;
        }
        if (src_.is_leaf(n))
            throw Error(Errc::invalid_doc, "copy reached an unmapped leaf");
        std::uint32_t a = node_of(src_.left(n));
        std::uint32_t b = node_of(src_.right(n));
        bool ready = true;
        for (std::uint32_t c : {a, b}) {
            if (c != 0 && !image_.contains(c)) {
                stack.push_back(c);
                ready = false;
            }
        }
        if (!ready)
            continue;
        stack.pop_back();
        auto image_of = [&](Lit x) {
            return node_of(x) == 0 ? x : negate_if(image_.at(node_of(x)), is_negated(x));
        };
        image_[n] = dst_.land(image_of(src_.left(n)), image_of(src_.right(n)));
    }
    return negate_if(image_.at(root), is_negated(l));
}

}  // namespace smvsynth::aig
