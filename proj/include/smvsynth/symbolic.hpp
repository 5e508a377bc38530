#pragma once

// BDD view of an AIGER doc. Variable order: latch i at 2i (current) and
// 2i + 1 (next), then uncontrollable inputs, then controllable inputs.

#include <memory>
#include <vector>

#include "smvsynth/aig.hpp"
#include "smvsynth/bdd.hpp"

namespace smvsynth {

class SymbolicModel {
public:
    explicit SymbolicModel(aig::AigerDoc doc);

    SymbolicModel(SymbolicModel&&) = default;
    SymbolicModel& operator=(SymbolicModel&&) = default;

    const aig::AigerDoc& doc() const { return doc_; }
    bdd::Manager& mgr() const { return *mgr_; }

    // Function of a literal over current-state and input variables.
    bdd::Bdd from_aig(aig::Lit l);

    const std::vector<bdd::Var>& cur() const { return cur_; }
    const std::vector<bdd::Var>& nxt() const { return nxt_; }
    const std::vector<bdd::Var>& uvars() const { return uvars_; }
    const std::vector<bdd::Var>& cvars() const { return cvars_; }
    std::vector<bdd::Var> input_vars() const;
    // Doc input index of each entry of uvars() / cvars().
    const std::vector<std::size_t>& u_inputs() const { return u_inputs_; }
    const std::vector<std::size_t>& c_inputs() const { return c_inputs_; }
    // BDD variable of doc input i.
    bdd::Var input_var(std::size_t i) const { return input_var_[i]; }

    const std::vector<bdd::Bdd>& delta() const { return delta_; }

    // f with every current-state variable replaced by its next-state function.
    bdd::Bdd after_step(const bdd::Bdd& f);
    // Conjunction of next_i <-> delta_i.
    bdd::Bdd transition_relation();
    bdd::Bdd rename_next_to_cur(const bdd::Bdd& f);
    // The all-zero state.
    bdd::Bdd initial();
    bool contains_initial(const bdd::Bdd& states) const;
    // Cube fixing the current-state variables to `values`.
    bdd::Bdd state_cube(const std::vector<bool>& values);

    // Conjunction of the constraint literals, disjunction of the bad literals
    // (or of the outputs for an old-format doc).
    bdd::Bdd inv();
    bdd::Bdd bad();

private:
    aig::AigerDoc doc_;
    std::unique_ptr<bdd::Manager> mgr_;
    std::vector<bdd::Var> cur_, nxt_, uvars_, cvars_, input_var_;
    std::vector<std::size_t> u_inputs_, c_inputs_;
    std::vector<bdd::Bdd> node_bdd_;
    std::vector<bool> node_done_;
    std::vector<bdd::Bdd> delta_;
    std::vector<bdd::Bdd> compose_table_;
    std::optional<bdd::Bdd> trans_;
};

}  // namespace smvsynth
