#pragma once

// Abstract syntax of the extended SMV input language and its parser.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smvsynth/error.hpp"

namespace smvsynth::smv {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class ExprKind {
    bool_const,
    int_const,
    name,  // possibly dotted: parts = {"h", "reached42"}
    unary,
    binary,
    case_expr,
};

enum class UnaryOp { lnot, neg };

enum class BinaryOp {
    land,
    lor,
    lxor,
    lxnor,
    implies,
    iff,
    eq,
    ne,
    lt,
    le,
    gt,
    ge,
    add,
    sub,
};

const char* to_string(BinaryOp op);

struct CaseBranch {
    ExprPtr guard;
    ExprPtr value;
};

struct Expr {
    ExprKind kind;
    SourceLoc loc;
    bool bool_value = false;
    long int_value = 0;
    std::vector<std::string> parts;
    UnaryOp unary_op = UnaryOp::lnot;
    BinaryOp binary_op = BinaryOp::land;
    std::vector<ExprPtr> args;
    std::vector<CaseBranch> branches;

    std::string dotted() const;
};

struct VarType {
    enum class Kind { boolean, range, enumeration, instance };
    Kind kind = Kind::boolean;
    long lo = 0;
    long hi = 0;
    std::vector<std::string> symbols;
    std::string module;
};

struct VarDecl {
    std::string name;
    VarType type;
    bool controllable = false;
    SourceLoc loc;
};

struct DefineDecl {
    std::string name;
    ExprPtr expr;
    SourceLoc loc;
};

struct Assign {
    std::string target;
    ExprPtr init;
    ExprPtr next;
    SourceLoc loc;
};

struct InstanceDecl {
    std::string name;
    std::string module;
    std::vector<ExprPtr> actuals;
    SourceLoc loc;
};

struct AutomatonRef {
    std::string path;
    bool negated = false;
    SourceLoc loc;
};

struct SmvModule {
    std::string name;
    std::vector<std::string> params;
    std::vector<VarDecl> vars;
    std::vector<DefineDecl> defines;
    std::vector<Assign> assigns;
    std::vector<InstanceDecl> instances;
    std::vector<AutomatonRef> sys_automata;
    std::vector<AutomatonRef> env_automata;
    SourceLoc loc;

    const VarDecl* find_var(std::string_view n) const;
    const DefineDecl* find_define(std::string_view n) const;
    const Assign* find_assign(std::string_view n) const;
    const InstanceDecl* find_instance(std::string_view n) const;
    int param_index(std::string_view n) const;
};

struct SmvSpec {
    std::vector<SmvModule> modules;
    std::string main_name = "main";

    const SmvModule* find_module(std::string_view n) const;
    const SmvModule& main() const;
};

SmvSpec parse_smv(std::string_view text);

}  // namespace smvsynth::smv
