#include "smvsynth/symbolic.hpp"

#include "smvsynth/error.hpp"

namespace smvsynth {

using bdd::Bdd;

SymbolicModel::SymbolicModel(aig::AigerDoc doc) : doc_(std::move(doc)), mgr_(std::make_unique<bdd::Manager>())
{
    doc_.validate();
    bdd::Manager& m = *mgr_;
    for (std::size_t i = 0; i < doc_.latches.size(); ++i) {
        cur_.push_back(m.add_var());
        nxt_.push_back(m.add_var());
    }
    input_var_.assign(doc_.inputs.size(), 0);
    u_inputs_ = doc_.uncontrollable_inputs();
    c_inputs_ = doc_.controllable_inputs();
    for (std::size_t i : u_inputs_) {
        uvars_.push_back(m.add_var());
        input_var_[i] = uvars_.back();
    }
    for (std::size_t i : c_inputs_) {
        cvars_.push_back(m.add_var());
        input_var_[i] = cvars_.back();
    }

    std::uint32_t n = doc_.aig.num_nodes();
    node_bdd_.assign(n, m.zero());
    node_done_.assign(n, false);
    node_done_[0] = true;
    for (std::size_t i = 0; i < doc_.latches.size(); ++i) {
        std::uint32_t node = aig::node_of(doc_.latches[i].lit);
        node_bdd_[node] = m.var(cur_[i]);
        node_done_[node] = true;
    }
    for (std::size_t i = 0; i < doc_.inputs.size(); ++i) {
        std::uint32_t node = aig::node_of(doc_.inputs[i].lit);
        node_bdd_[node] = m.var(input_var_[i]);
        node_done_[node] = true;
    }
    for (const auto& l : doc_.latches)
        delta_.push_back(from_aig(l.next));
    compose_table_.reserve(m.num_vars());
    for (bdd::Var v = 0; v < m.num_vars(); ++v)
        compose_table_.push_back(m.var(v));
    for (std::size_t i = 0; i < cur_.size(); ++i)
        compose_table_[cur_[i]] = delta_[i];
}

Bdd SymbolicModel::from_aig(aig::Lit l)
{
    std::uint32_t root = aig::node_of(l);
    if (!node_done_[root]) {
        // Node indices are topological, so an explicit stack suffices.
        std::vector<std::uint32_t> stack{root};
        while (!stack.empty()) {
            std::uint32_t n = stack.back();
            if (node_done_[n]) {
                stack.pop_back();
                continue;
            }
            if (!doc_.aig.is_and(n))
                throw Error(Errc::invalid_doc, "leaf node " + std::to_string(n) + " is neither input nor latch");
            std::uint32_t a = aig::node_of(doc_.aig.left(n));
            std::uint32_t b = aig::node_of(doc_.aig.right(n));
            if (!node_done_[a] || !node_done_[b]) {
                if (!node_done_[a])
                    stack.push_back(a);
                if (!node_done_[b])
                    stack.push_back(b);
                continue;
            }
            auto lit_bdd = [&](aig::Lit x) {
                Bdd f = node_bdd_[aig::node_of(x)];
                return aig::is_negated(x) ? ~f : f;
            };
            node_bdd_[n] = lit_bdd(doc_.aig.left(n)) & lit_bdd(doc_.aig.right(n));
            node_done_[n] = true;
            stack.pop_back();
        }
    }
    Bdd f = node_bdd_[root];
    return aig::is_negated(l) ? ~f : f;
}

std::vector<bdd::Var> SymbolicModel::input_vars() const
{
    std::vector<bdd::Var> v = uvars_;
    v.insert(v.end(), cvars_.begin(), cvars_.end());
    return v;
}

Bdd SymbolicModel::after_step(const Bdd& f)
{
    return mgr_->vector_compose(f, compose_table_);
}

Bdd SymbolicModel::transition_relation()
{
    if (!trans_) {
        Bdd t = mgr_->one();
        for (std::size_t i = delta_.size(); i-- > 0;)
            t &= ~(mgr_->var(nxt_[i]) ^ delta_[i]);
        trans_ = t;
    }
    return *trans_;
}

Bdd SymbolicModel::rename_next_to_cur(const Bdd& f)
{
    std::map<bdd::Var, Bdd> m;
    for (std::size_t i = 0; i < cur_.size(); ++i)
        m.emplace(nxt_[i], mgr_->var(cur_[i]));
    return mgr_->substitute(f, m);
}

Bdd SymbolicModel::initial()
{
    return state_cube(std::vector<bool>(cur_.size(), false));
}

bool SymbolicModel::contains_initial(const Bdd& states) const
{
    return mgr_->eval(states, std::vector<bool>(mgr_->num_vars(), false));
}

Bdd SymbolicModel::state_cube(const std::vector<bool>& values)
{
    Bdd c = mgr_->one();
    for (std::size_t i = cur_.size(); i-- > 0;)
        c &= values[i] ? mgr_->var(cur_[i]) : mgr_->nvar(cur_[i]);
    return c;
}

Bdd SymbolicModel::inv()
{
    Bdd r = mgr_->one();
    for (const auto& c : doc_.constraints)
        r &= from_aig(c.lit);
    return r;
}

Bdd SymbolicModel::bad()
{
    Bdd r = mgr_->zero();
    for (const auto& b : doc_.bad)
        r |= from_aig(b.lit);
    if (doc_.format == aig::Format::old_format)
        for (const auto& o : doc_.outputs)
            r |= from_aig(o.lit);
    return r;
}

}  // namespace smvsynth
