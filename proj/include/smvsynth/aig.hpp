#pragma once

// And-inverter graphs with structural hashing, and the AIGER document model
// (ASCII "aag" only, old and 1.9-style new header).

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace smvsynth::aig {

// Even literal = node, odd literal = its negation. Node 0 is constant FALSE.
using Lit = std::uint32_t;

inline constexpr Lit kFalse = 0;
inline constexpr Lit kTrue = 1;

constexpr Lit negate(Lit l) { return l ^ 1u; }
constexpr Lit negate_if(Lit l, bool c) { return l ^ static_cast<Lit>(c); }
constexpr std::uint32_t node_of(Lit l) { return l >> 1; }
constexpr bool is_negated(Lit l) { return (l & 1u) != 0; }
constexpr Lit lit_of(std::uint32_t node) { return node << 1; }

class Aig {
public:
    Aig();

    // A leaf is an input or a latch output; its role is recorded by the doc.
    Lit new_leaf();

    Lit land(Lit a, Lit b);
    Lit lor(Lit a, Lit b) { return negate(land(negate(a), negate(b))); }
    Lit lxor(Lit a, Lit b);
    Lit lxnor(Lit a, Lit b) { return negate(lxor(a, b)); }
    Lit ite(Lit sel, Lit then_lit, Lit else_lit);
    Lit land_all(std::span<const Lit> lits);
    Lit lor_all(std::span<const Lit> lits);

    std::uint32_t num_nodes() const { return static_cast<std::uint32_t>(nodes_.size()); }
    std::size_t num_ands() const { return num_ands_; }
    bool is_leaf(std::uint32_t node) const { return node != 0 && nodes_[node].left == kLeafMark; }
    bool is_and(std::uint32_t node) const { return node != 0 && nodes_[node].left != kLeafMark; }
    Lit left(std::uint32_t node) const { return nodes_[node].left; }
    Lit right(std::uint32_t node) const { return nodes_[node].right; }

    // Nodes in the transitive fan-in of the given roots (leaves included),
    // as a membership vector indexed by node.
    std::vector<bool> cone(std::span<const Lit> roots) const;

private:
    static constexpr Lit kLeafMark = UINT32_MAX;
    struct Node {
        Lit left;
        Lit right;
    };

    std::vector<Node> nodes_;
    std::unordered_map<std::uint64_t, std::uint32_t> strash_;
    std::size_t num_ands_ = 0;
};

struct Symbol {
    Lit lit = kFalse;
    std::string name;
};

struct Latch {
    Lit lit = kFalse;
    Lit next = kFalse;
    std::string name;
};

struct Justice {
    std::vector<Lit> lits;
    std::string name;
};

enum class Format { old_format, new_format };

inline constexpr std::string_view kControllablePrefix = "controllable_";

struct AigerDoc {
    Aig aig;
    std::vector<Symbol> inputs;
    std::vector<Latch> latches;
    std::vector<Symbol> outputs;
    std::vector<Symbol> bad;
    std::vector<Symbol> constraints;
    std::vector<Justice> justice;
    Format format = Format::old_format;
    // Text following the "c" line, kept verbatim.
    std::string comment;

    Lit add_input(std::string name);
    // The next-state literal is set later through latches[i].next.
    Lit add_latch(std::string name);

    bool is_controllable(std::size_t input) const;
    std::vector<std::size_t> uncontrollable_inputs() const;
    std::vector<std::size_t> controllable_inputs() const;

    // Every literal that roots a section: latch nexts, outputs, bad,
    // constraints and justice.
    std::vector<Lit> roots() const;
    // Literal -> leaf role lookup; -1 when the node is not a listed leaf.
    int input_index(Lit l) const;
    int latch_index(Lit l) const;
    // True when the cone of `l` reaches any input.
    bool depends_on_inputs(Lit l) const;
    // AND gates in the cone of the section roots, the gates a writer emits.
    std::size_t live_ands() const;

    // Throws Error(invalid_doc) on a structural violation.
    void validate() const;
};

// Copies the cones of literals from one graph into another, with a caller-
// supplied image for every leaf that is reached.
class AigCopier {
public:
    AigCopier(const Aig& src, Aig& dst) : src_(src), dst_(dst) {}

    void map_leaf(Lit src_leaf, Lit dst_lit);
    Lit copy(Lit l);

private:
    const Aig& src_;
    Aig& dst_;
    std::unordered_map<std::uint32_t, Lit> image_;
};

std::string write_aiger(const AigerDoc& doc);
AigerDoc read_aiger(std::string_view text);

AigerDoc read_aiger_file(const std::string& path);
void write_aiger_file(const AigerDoc& doc, const std::string& path);

}  // namespace smvsynth::aig
