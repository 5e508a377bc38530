#pragma once

// Name binding and type checking over the instance tree rooted at main.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "smvsynth/smv.hpp"

namespace smvsynth::smv {

struct Type {
    enum class Kind { boolean, integer, enumeration };
    Kind kind = Kind::boolean;
    long lo = 0;  // integer bounds, inclusive
    long hi = 0;
    std::vector<std::string> symbols;

    static Type boolean() { return {}; }
    static Type integer(long lo, long hi) { return {Kind::integer, lo, hi, {}}; }
    static Type enumeration(std::vector<std::string> symbols) { return {Kind::enumeration, 0, 0, std::move(symbols)}; }
    static Type of(const VarType& vt);

    std::string str() const;
    bool operator==(const Type&) const = default;
};

// One module instance. Parameters are evaluated in `parent`.
struct Scope {
    const SmvModule* module = nullptr;
    std::string prefix;  // "" for main, "h." for main.h, "h.f." below it
    const Scope* parent = nullptr;
    const InstanceDecl* decl = nullptr;
    std::vector<std::unique_ptr<Scope>> children;

    const Scope* child(std::string_view name) const;
    std::string qualify(std::string_view name) const { return prefix + std::string(name); }
};

struct Binding {
    enum class Kind { var, define, expr, instance, enum_const };
    Kind kind = Kind::var;
    const Scope* scope = nullptr;  // owner of var/define; evaluation scope of expr
    const VarDecl* var = nullptr;
    const DefineDecl* define = nullptr;
    ExprPtr expr;                      // parameter actual
    const Scope* instance = nullptr;
    std::string symbol;
};

class ResolvedSpec {
public:
    const SmvSpec& spec() const { return *spec_; }
    const Scope& root() const { return *root_; }
    // All scopes, parents before children, siblings in declaration order.
    std::vector<const Scope*> scopes() const;

    Binding lookup(const Scope& scope, const Expr& name) const;
    Type type_of(const Scope& scope, const Expr& e) const;
    Type define_type(const Scope& scope, const DefineDecl& d) const;
    bool is_enum_symbol(const std::string& s) const { return enum_symbols_.contains(s); }

    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    friend class Elaborator;
    friend ResolvedSpec resolve(SmvSpec spec);

    std::shared_ptr<const SmvSpec> spec_;
    std::unique_ptr<Scope> root_;
    std::map<std::pair<const Scope*, const DefineDecl*>, Type> define_types_;
    std::set<std::string> enum_symbols_;
    std::vector<std::string> warnings_;
};

ResolvedSpec resolve(SmvSpec spec);

// Automaton propositions must name boolean defines or boolean variables of main.
void check_propositions(const ResolvedSpec& rs, std::span<const std::string> props);

// Position of each enumeration symbol under the order shared by two enumeration
// types, or nullopt when they do not agree on an order.
std::optional<std::vector<std::string>> common_enum_order(const Type& a, const Type& b);

}  // namespace smvsynth::smv
