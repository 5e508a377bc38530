#include "smvsynth/bdd.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <set>
#include <stdexcept>

namespace smvsynth::bdd {

Bdd Bdd::operator~() const
{
    return {mgr_, mgr_->not_id(id_)};
}

Bdd Bdd::operator&(const Bdd& other) const
{
    assert(mgr_ == other.mgr_);
    return {mgr_, mgr_->and_id(id_, other.id_)};
}

Bdd Bdd::operator|(const Bdd& other) const
{
    assert(mgr_ == other.mgr_);
    return {mgr_, mgr_->or_id(id_, other.id_)};
}

Bdd Bdd::operator^(const Bdd& other) const
{
    assert(mgr_ == other.mgr_);
    return {mgr_, mgr_->ite_id(id_, mgr_->not_id(other.id_), other.id_)};
}

bool Bdd::implies(const Bdd& other) const
{
    return mgr_->and_id(id_, mgr_->not_id(other.id_)) == kFalseId;
}

Manager::Manager(unsigned num_vars) : num_vars_(num_vars)
{
    nodes_.push_back({kTerminalVar, kFalseId, kFalseId});
    nodes_.push_back({kTerminalVar, kTrueId, kTrueId});
}

NodeId Manager::make_node(Var v, NodeId low, NodeId high)
{
    if (low == high)
        return low;
    assert(v < top_var(low) && v < top_var(high));
    Key3 key{v, low, high};
    auto it = unique_.find(key);
    if (it != unique_.end())
        return it->second;
    auto id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back({v, low, high});
    unique_.emplace(key, id);
    return id;
}

Bdd Manager::var(Var v)
{
    if (v >= num_vars_)
        throw std::out_of_range("bdd variable " + std::to_string(v) + " not allocated");
    return {this, make_node(v, kFalseId, kTrueId)};
}

NodeId Manager::ite_id(NodeId f, NodeId g, NodeId h)
{
    if (f == kTrueId)
        return g;
    if (f == kFalseId)
        return h;
    if (g == h)
        return g;
    if (g == kTrueId && h == kFalseId)
        return f;
    if (g == f)
        g = kTrueId;
    if (h == f)
        h = kFalseId;
    if (g == h)
        return g;

    Key3 key{f, g, h};
    auto it = ite_cache_.find(key);
    if (it != ite_cache_.end())
        return it->second;

    Var v = std::min({top_var(f), top_var(g), top_var(h)});
    auto branch = [&](NodeId x, bool high) {
        if (top_var(x) != v)
            return x;
        return high ? nodes_[x].high : nodes_[x].low;
    };
    NodeId low = ite_id(branch(f, false), branch(g, false), branch(h, false));
    NodeId high = ite_id(branch(f, true), branch(g, true), branch(h, true));
    NodeId r = make_node(v, low, high);
    ite_cache_.emplace(key, r);
    return r;
}

Bdd Manager::ite(const Bdd& f, const Bdd& g, const Bdd& h)
{
    return {this, ite_id(f.id(), g.id(), h.id())};
}

Bdd Manager::cube(std::span<const Var> vars)
{
    std::vector<Var> sorted(vars.begin(), vars.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    NodeId r = kTrueId;
    for (Var v : sorted) {
        if (v >= num_vars_)
            throw std::out_of_range("bdd variable not allocated");
        r = make_node(v, kFalseId, r);
    }
    return {this, r};
}

NodeId Manager::exists_rec(NodeId f, NodeId cube)
{
    if (f <= kTrueId || cube == kTrueId)
        return f;
    Var fv = top_var(f);
    while (cube != kTrueId && top_var(cube) < fv)
        cube = nodes_[cube].high;
    if (cube == kTrueId)
        return f;

    Key3 key{f, static_cast<std::uint32_t>(Op::exists), cube};
    auto it = op_cache_.find(key);
    if (it != op_cache_.end())
        return it->second;

    NodeId r;
    NodeId low = nodes_[f].low;
    NodeId high = nodes_[f].high;
    if (top_var(cube) == fv) {
        NodeId rest = nodes_[cube].high;
        NodeId l = exists_rec(low, rest);
        r = l == kTrueId ? kTrueId : or_id(l, exists_rec(high, rest));
    } else {
        r = make_node(fv, exists_rec(low, cube), exists_rec(high, cube));
    }
    op_cache_.emplace(key, r);
    return r;
}

Bdd Manager::exists_cube(const Bdd& f, const Bdd& cube)
{
    return {this, exists_rec(f.id(), cube.id())};
}

Bdd Manager::forall_cube(const Bdd& f, const Bdd& cube)
{
    return {this, not_id(exists_rec(not_id(f.id()), cube.id()))};
}

Bdd Manager::quantify(const Bdd& f, std::span<const Var> vars, Quantifier mode)
{
    Bdd c = cube(vars);
    return mode == Quantifier::exists ? exists_cube(f, c) : forall_cube(f, c);
}

NodeId Manager::compose_rec(NodeId f, std::span<const NodeId> table,
                            std::unordered_map<NodeId, NodeId>& memo)
{
    if (f <= kTrueId)
        return f;
    auto it = memo.find(f);
    if (it != memo.end())
        return it->second;
    Var v = top_var(f);
    NodeId low = compose_rec(nodes_[f].low, table, memo);
    NodeId high = compose_rec(nodes_[f].high, table, memo);
    NodeId sel = v < table.size() ? table[v] : make_node(v, kFalseId, kTrueId);
    NodeId r = ite_id(sel, high, low);
    memo.emplace(f, r);
    return r;
}

Bdd Manager::vector_compose(const Bdd& f, std::span<const Bdd> replacement)
{
    std::vector<NodeId> table(replacement.size());
    for (std::size_t v = 0; v < replacement.size(); ++v) {
        assert(replacement[v].manager() == this);
        table[v] = replacement[v].id();
    }
    std::unordered_map<NodeId, NodeId> memo;
    return {this, compose_rec(f.id(), table, memo)};
}

Bdd Manager::substitute(const Bdd& f, const std::map<Var, Bdd>& map)
{
    if (map.empty())
        return f;
    std::vector<NodeId> table(map.rbegin()->first + 1);
    for (Var v = 0; v < table.size(); ++v)
        table[v] = v < num_vars_ ? make_node(v, kFalseId, kTrueId) : kFalseId;
    for (const auto& [v, g] : map)
        table[v] = g.id();
    std::unordered_map<NodeId, NodeId> memo;
    return {this, compose_rec(f.id(), table, memo)};
}

Bdd Manager::cofactor(const Bdd& f, Var v, bool value)
{
    std::function<NodeId(NodeId)> rec = [&](NodeId x) -> NodeId {
        if (x <= kTrueId || top_var(x) > v)
            return x;
        if (top_var(x) == v)
            return value ? nodes_[x].high : nodes_[x].low;
        Key3 key{x, static_cast<std::uint32_t>(value ? Op::cofactor1 : Op::cofactor0), v};
        auto it = op_cache_.find(key);
        if (it != op_cache_.end())
            return it->second;
        NodeId r = make_node(top_var(x), rec(nodes_[x].low), rec(nodes_[x].high));
        op_cache_.emplace(key, r);
        return r;
    };
    return {this, rec(f.id())};
}

bool Manager::eval(const Bdd& f, const std::vector<bool>& assignment) const
{
    NodeId x = f.id();
    while (x > kTrueId) {
        Var v = top_var(x);
        bool bit = v < assignment.size() && assignment[v];
        x = bit ? nodes_[x].high : nodes_[x].low;
    }
    return x == kTrueId;
}

std::vector<Var> Manager::support(const Bdd& f) const
{
    std::set<Var> vars;
    std::vector<NodeId> stack{f.id()};
    std::vector<bool> seen(nodes_.size(), false);
    while (!stack.empty()) {
        NodeId x = stack.back();
        stack.pop_back();
        if (x <= kTrueId || seen[x])
            continue;
        seen[x] = true;
        vars.insert(top_var(x));
        stack.push_back(nodes_[x].low);
        stack.push_back(nodes_[x].high);
    }
    return {vars.begin(), vars.end()};
}

std::size_t Manager::dag_size(const Bdd& f) const
{
    std::size_t count = 0;
    std::vector<NodeId> stack{f.id()};
    std::vector<bool> seen(nodes_.size(), false);
    while (!stack.empty()) {
        NodeId x = stack.back();
        stack.pop_back();
        if (x <= kTrueId || seen[x])
            continue;
        seen[x] = true;
        ++count;
        stack.push_back(nodes_[x].low);
        stack.push_back(nodes_[x].high);
    }
    return count;
}

std::optional<std::vector<int>> Manager::pick_cube(const Bdd& f) const
{
    if (f.is_false())
        return std::nullopt;
    std::vector<int> cube(num_vars_, -1);
    NodeId x = f.id();
    while (x > kTrueId) {
        if (nodes_[x].low != kFalseId) {
            cube[top_var(x)] = 0;
            x = nodes_[x].low;
        } else {
            cube[top_var(x)] = 1;
            x = nodes_[x].high;
        }
    }
    return cube;
}

double Manager::sat_count(const Bdd& f, unsigned over_vars) const
{
    std::unordered_map<NodeId, double> memo;
    // Fraction of assignments satisfying the node, independent of level gaps.
    std::function<double(NodeId)> rec = [&](NodeId x) -> double {
        if (x == kFalseId)
            return 0.0;
        if (x == kTrueId)
            return 1.0;
        auto it = memo.find(x);
        if (it != memo.end())
            return it->second;
        double r = 0.5 * rec(nodes_[x].low) + 0.5 * rec(nodes_[x].high);
        memo.emplace(x, r);
        return r;
    };
    return std::ldexp(rec(f.id()), static_cast<int>(over_vars));
}

}  // namespace smvsynth::bdd
