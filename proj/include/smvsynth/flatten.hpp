#pragma once

// Boolean-only view of a resolved specification: every instance inlined,
// every range/enumeration variable bit-blasted.

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "smvsynth/resolve.hpp"

namespace smvsynth::flat {

struct BoolNode;
using BoolExpr = std::shared_ptr<const BoolNode>;

enum class BoolOp { constant, ref, lnot, land, lor, lxor, ite };

struct BoolNode {
    BoolOp op = BoolOp::constant;
    bool value = false;
    std::string name;  // ref: input, latch or define
    std::vector<BoolExpr> args;
};

BoolExpr constant(bool v);
BoolExpr ref(std::string name);
BoolExpr lnot(const BoolExpr& a);
BoolExpr land(const BoolExpr& a, const BoolExpr& b);
BoolExpr lor(const BoolExpr& a, const BoolExpr& b);
BoolExpr lxor(const BoolExpr& a, const BoolExpr& b);
BoolExpr ite(const BoolExpr& s, const BoolExpr& t, const BoolExpr& e);
bool is_const(const BoolExpr& e, bool v);

std::string to_string(const BoolExpr& e);

// Direct evaluation with signal values supplied by `env`.
bool eval(const BoolExpr& e, const std::function<bool(const std::string&)>& env);

struct FlatLatch {
    std::string name;
    bool init = false;
    BoolExpr next;
};

struct FlatModel {
    std::vector<std::string> inputs_u;
    std::vector<std::string> inputs_c;
    std::vector<FlatLatch> latches;
    // In dependency order: a define only refers to earlier ones.
    std::vector<std::pair<std::string, BoolExpr>> defines;
    // Restricts multi-bit inputs to valid codes; TRUE when every input domain
    // fills its encoding.
    BoolExpr input_constraint = constant(true);

    const BoolExpr* find_define(const std::string& name) const;
    bool is_signal(const std::string& name) const;
};

FlatModel flatten(const smv::ResolvedSpec& rs, std::vector<std::string>* warnings = nullptr);

// Throws invalid_doc if an expression names something undeclared or a define
// refers to a later one.
void check_closed(const FlatModel& m);

// Stable textual dump, one item per line.
std::string format_model(const FlatModel& m);

// Values of signals in one step. Defines are computed on demand and memoized.
class Evaluator {
public:
    explicit Evaluator(const FlatModel& m);

    void set(const std::string& signal, bool v)
    {
        values_[signal] = v;
        cache_.clear();
        define_cache_.clear();
    }
    bool eval(const BoolExpr& e);
    bool define(const std::string& name) { return eval(ref(name)); }

private:
    const FlatModel& model_;
    std::map<std::string, const BoolExpr*> defines_;
    std::unordered_map<std::string, bool> values_;
    std::unordered_map<const BoolNode*, bool> cache_;
    std::unordered_map<std::string, bool> define_cache_;
};

// Names of the encoding bits of a variable with `n` values.
unsigned bits_for(std::size_t n);
std::string bit_name(const std::string& var, unsigned i);

}  // namespace smvsynth::flat
