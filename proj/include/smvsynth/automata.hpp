#pragma once

// Büchi automata in GOAL's GFF XML format, their role checks, and the
// deterministic monitors compiled from them.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smvsynth/flatten.hpp"

namespace smvsynth::automata {

struct Literal {
    std::string prop;
    bool positive = true;
    bool operator==(const Literal&) const = default;
};

// Conjunction of literals; empty means True.
struct Label {
    std::vector<Literal> lits;

    bool is_true() const { return lits.empty(); }
    bool eval(const std::map<std::string, bool>& letter) const;
    std::string str() const;
};

Label parse_label(std::string_view text);
bool compatible(const Label& a, const Label& b);

struct Transition {
    std::size_t src = 0;
    Label label;
    std::size_t dst = 0;
};

struct BuchiAutomaton {
    std::vector<std::string> states;  // ids, document order
    std::size_t initial = 0;
    std::vector<std::string> props;
    std::vector<Transition> transitions;
    std::vector<bool> accepting;
    std::vector<std::string> warnings;

    std::optional<std::size_t> find_state(std::string_view id) const;
    // Targets of all transitions enabled from `state` on `letter`.
    std::vector<std::size_t> successors(std::size_t state, const std::map<std::string, bool>& letter) const;
    // Non-accepting, with outgoing transitions that are all self-loops.
    bool is_trap(std::size_t state) const;
    std::vector<std::size_t> reachable() const;
};

BuchiAutomaton parse_gff(std::string_view xml);
BuchiAutomaton parse_gff_file(const std::string& path);

enum class Role { guarantee, assumption };

// Completes, checks determinism, optionally complements by swapping the
// accepting set, and applies the role restriction to the result.
BuchiAutomaton validate_for_role(BuchiAutomaton a, Role role, bool negated);

// Every SCC is uniformly accepting or uniformly rejecting.
bool is_weak(const BuchiAutomaton& a);

// Bit-level monitor. Latch values are the state code xor the initial state's
// code, so the initial state is the all-zero latch vector.
struct Monitor {
    BuchiAutomaton automaton;
    unsigned state_bits = 0;
    std::uint32_t init_code = 0;

    // Symbolic form over state_ref(i) (latch space) and the proposition names.
    std::vector<flat::BoolExpr> next;
    flat::BoolExpr bad;
    flat::BoolExpr fair;

    static std::string state_ref(unsigned i) { return "@s" + std::to_string(i); }

    std::uint32_t latch_value(std::size_t state) const { return static_cast<std::uint32_t>(state) ^ init_code; }
    std::size_t state_of(std::uint32_t latch) const { return latch ^ init_code; }
    bool valid_latch(std::uint32_t latch) const { return state_of(latch) < automaton.states.size(); }

    // Evaluation of the symbolic form, on latch values.
    std::uint32_t step(std::uint32_t latch, const std::map<std::string, bool>& letter) const;
    bool is_bad(std::uint32_t latch) const;
    bool is_fair(std::uint32_t latch) const;
};

Monitor to_monitor(const BuchiAutomaton& a);

}  // namespace smvsynth::automata
