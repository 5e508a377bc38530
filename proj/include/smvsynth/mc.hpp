#pragma once

// Model checking of synthesized circuits and the explicit-state oracles.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smvsynth/aig.hpp"

namespace smvsynth::mc {

// Step i: input values read at step i and latch values at step i. A lasso's
// last step leads back to step loop_start.
struct Trace {
    std::vector<std::vector<bool>> inputs;
    std::vector<std::vector<bool>> states;
    std::optional<std::size_t> loop_start;

    std::size_t length() const { return states.size(); }
};

std::string format_trace(const aig::AigerDoc& doc, const Trace& t);

struct Verdict {
    bool holds = true;
    Trace trace;  // witness of the violation, or of the fair cycle
};

// (!bad W !inv): a counterexample reaches bad with the constraints holding on
// every step up to and including it.
Verdict check_safety(const aig::AigerDoc& doc);

// G inv -> GF just: a counterexample is a lasso with inv everywhere and just
// nowhere on the loop.
Verdict check_justice_universal(const aig::AigerDoc& doc);

// Standard existential reading: a lasso whose steps all satisfy the constraints
// and whose loop contains a step with the justice literal. `holds` is true when
// no such trace exists.
Verdict find_fair_trace(const aig::AigerDoc& doc);

// Explicit circuit evaluation, one step at a time.
class Simulator {
public:
    explicit Simulator(const aig::AigerDoc& doc);

    // Evaluates every node for the given leaf values.
    void evaluate(const std::vector<bool>& latches, const std::vector<bool>& inputs);
    bool value(aig::Lit l) const { return values_[aig::node_of(l)] != aig::is_negated(l); }
    std::vector<bool> next_state() const;

    bool any_bad() const;
    bool all_constraints() const;
    bool justice() const;  // TRUE when the doc has no justice literal

    const aig::AigerDoc& doc() const { return doc_; }

private:
    const aig::AigerDoc& doc_;
    std::vector<bool> values_;
};

struct ExplicitOptions {
    // Limit on latches + inputs for full enumeration.
    unsigned max_bits = 20;
    // Explore only states reachable from the initial state.
    bool reachable_only = false;
    // Cap on reachable states explored.
    std::size_t max_states = 1u << 20;
};

struct ExplicitResult {
    // Indexed by state number (latch i = bit i) for full enumeration; for
    // reachable-only runs, the states explored and their verdicts.
    std::vector<std::uint64_t> states;
    std::vector<bool> winning;
    bool initial_winning = false;

    bool wins(std::uint64_t state) const;
};

// Literal fixpoint over enumerated states: W = nu Z. mu Y. CPre((just & Z) | Y)
// with CPre(T)(s) = forall u exists c: !inv | (!bad & T(next)). The justice
// literal must not read inputs.
ExplicitResult solve_explicit(const aig::AigerDoc& doc, const ExplicitOptions& opt = {});

}  // namespace smvsynth::mc
