#pragma once

// Reduced ordered BDDs with a fixed variable order (variable index == level).
// No complement edges, no reordering, no garbage collection: the manager only
// grows, so a handle stays valid for the manager's lifetime.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace smvsynth::bdd {

using NodeId = std::uint32_t;
using Var = std::uint32_t;

inline constexpr NodeId kFalseId = 0;
inline constexpr NodeId kTrueId = 1;
inline constexpr Var kTerminalVar = UINT32_MAX;

class Manager;

enum class Quantifier { exists, forall };

class Bdd {
public:
    Bdd() = default;
    Bdd(Manager* mgr, NodeId id) : mgr_(mgr), id_(id) {}

    Manager* manager() const { return mgr_; }
    NodeId id() const { return id_; }

    bool is_false() const { return id_ == kFalseId; }
    bool is_true() const { return id_ == kTrueId; }
    bool is_const() const { return id_ <= kTrueId; }

    Bdd operator~() const;
    Bdd operator!() const { return ~*this; }
    Bdd operator&(const Bdd& other) const;
    Bdd operator|(const Bdd& other) const;
    Bdd operator^(const Bdd& other) const;
    Bdd& operator&=(const Bdd& other) { return *this = *this & other; }
    Bdd& operator|=(const Bdd& other) { return *this = *this | other; }
    Bdd& operator^=(const Bdd& other) { return *this = *this ^ other; }

    // f <= g as functions.
    bool implies(const Bdd& other) const;

    friend bool operator==(const Bdd& a, const Bdd& b) { return a.mgr_ == b.mgr_ && a.id_ == b.id_; }

private:
    Manager* mgr_ = nullptr;
    NodeId id_ = kFalseId;
};

class Manager {
public:
    explicit Manager(unsigned num_vars = 0);

    Manager(const Manager&) = delete;
    Manager& operator=(const Manager&) = delete;

    unsigned num_vars() const { return num_vars_; }
    Var add_var() { return num_vars_++; }

    Bdd zero() { return {this, kFalseId}; }
    Bdd one() { return {this, kTrueId}; }
    Bdd constant(bool value) { return value ? one() : zero(); }
    Bdd var(Var v);
    Bdd nvar(Var v) { return ~var(v); }

    Bdd ite(const Bdd& f, const Bdd& g, const Bdd& h);

    // Conjunction of the given variables, the usual representation of a
    // quantification set.
    Bdd cube(std::span<const Var> vars);
    Bdd quantify(const Bdd& f, std::span<const Var> vars, Quantifier mode);
    Bdd exists(const Bdd& f, std::span<const Var> vars) { return quantify(f, vars, Quantifier::exists); }
    Bdd forall(const Bdd& f, std::span<const Var> vars) { return quantify(f, vars, Quantifier::forall); }
    Bdd exists_cube(const Bdd& f, const Bdd& cube);
    Bdd forall_cube(const Bdd& f, const Bdd& cube);

    // Simultaneous substitution of variables by functions.
    Bdd substitute(const Bdd& f, const std::map<Var, Bdd>& map);
    // Same, with a dense table: replacement[v] for v < size, identity beyond.
    Bdd vector_compose(const Bdd& f, std::span<const Bdd> replacement);

    Bdd cofactor(const Bdd& f, Var v, bool value);

    bool eval(const Bdd& f, const std::vector<bool>& assignment) const;
    std::vector<Var> support(const Bdd& f) const;
    std::size_t dag_size(const Bdd& f) const;
    // One satisfying partial assignment: -1 marks a don't-care variable.
    // Free branches prefer the low (0) child, so the choice is deterministic.
    std::optional<std::vector<int>> pick_cube(const Bdd& f) const;
    double sat_count(const Bdd& f, unsigned over_vars) const;

    std::size_t node_count() const { return nodes_.size(); }

    Var node_var(NodeId id) const { return nodes_[id].var; }
    NodeId node_low(NodeId id) const { return nodes_[id].low; }
    NodeId node_high(NodeId id) const { return nodes_[id].high; }

    // Internal-id level API, used by the recursive algorithms and by code that
    // walks diagrams directly.
    NodeId make_node(Var v, NodeId low, NodeId high);
    NodeId ite_id(NodeId f, NodeId g, NodeId h);
    NodeId not_id(NodeId f) { return ite_id(f, kFalseId, kTrueId); }
    NodeId and_id(NodeId f, NodeId g) { return ite_id(f, g, kFalseId); }
    NodeId or_id(NodeId f, NodeId g) { return ite_id(f, kTrueId, g); }

private:
    struct Node {
        Var var;
        NodeId low;
        NodeId high;
    };
    struct Key3 {
        std::uint32_t a, b, c;
        bool operator==(const Key3&) const = default;
    };
    struct Key3Hash {
        std::size_t operator()(const Key3& k) const
        {
            std::uint64_t h = k.a * 0x9E3779B97F4A7C15ull;
            h ^= (h >> 29) + k.b * 0xBF58476D1CE4E5B9ull;
            h ^= (h >> 31) + k.c * 0x94D049BB133111EBull;
            return static_cast<std::size_t>(h ^ (h >> 32));
        }
    };
    enum class Op : std::uint32_t { exists = 1, cofactor0, cofactor1 };

    Var top_var(NodeId id) const { return nodes_[id].var; }
    NodeId exists_rec(NodeId f, NodeId cube);
    NodeId compose_rec(NodeId f, std::span<const NodeId> table,
                       std::unordered_map<NodeId, NodeId>& memo);

    unsigned num_vars_;
    std::vector<Node> nodes_;
    std::unordered_map<Key3, NodeId, Key3Hash> unique_;
    std::unordered_map<Key3, NodeId, Key3Hash> ite_cache_;
    std::unordered_map<Key3, NodeId, Key3Hash> op_cache_;
};

}  // namespace smvsynth::bdd
