#include "smvsynth/resolve.hpp"

#include <algorithm>
#include <functional>

namespace smvsynth::smv {

Type Type::of(const VarType& vt)
{
    switch (vt.kind) {
    case VarType::Kind::boolean: return boolean();
    case VarType::Kind::range: return integer(vt.lo, vt.hi);
    case VarType::Kind::enumeration: return enumeration(vt.symbols);
    case VarType::Kind::instance: break;
    }
    throw Error(Errc::type_mismatch, "module instance '" + vt.module + "' has no value type");
}

std::string Type::str() const
{
    switch (kind) {
    case Kind::boolean: return "boolean";
    case Kind::integer: return std::to_string(lo) + ".." + std::to_string(hi);
    case Kind::enumeration: {
        std::string s = "{";
        for (std::size_t i = 0; i < symbols.size(); ++i)
            s += (i ? ", " : "") + symbols[i];
        return s + "}";
    }
    }
    return "?";
}

const Scope* Scope::child(std::string_view name) const
{
    for (const auto& c : children)
        if (c->decl->name == name)
            return c.get();
    return nullptr;
}

std::optional<std::vector<std::string>> common_enum_order(const Type& a, const Type& b)
{
    // x embeds in y keeping its relative order
    auto subset = [](const std::vector<std::string>& x, const std::vector<std::string>& y) {
        auto from = y.begin();
        for (const auto& s : x) {
            from = std::find(from, y.end(), s);
            if (from == y.end())
                return false;
            ++from;
        }
        return true;
    };
    if (subset(a.symbols, b.symbols))
        return b.symbols;
    if (subset(b.symbols, a.symbols))
        return a.symbols;
    return std::nullopt;
}

namespace {

using DefineTypeFn = std::function<Type(const Scope&, const DefineDecl&)>;

Binding lookup_in(const ResolvedSpec& rs, const Scope& scope, const Expr& name);

Binding lookup_part(const ResolvedSpec& rs, const Scope& scope, const std::string& part, const Expr& at)
{
    const SmvModule& m = *scope.module;
    Binding b;
    b.scope = &scope;
    int pi = m.param_index(part);
    if (pi >= 0) {
        const ExprPtr& actual = scope.decl->actuals[static_cast<std::size_t>(pi)];
        // A bare name passed as actual aliases whatever it names, which lets an
        // instance be handed down and dereferenced.
        if (actual->kind == ExprKind::name)
            return lookup_in(rs, *scope.parent, *actual);
        b.kind = Binding::Kind::expr;
        b.scope = scope.parent;
        b.expr = actual;
        return b;
    }
    if (const VarDecl* v = m.find_var(part)) {
        b.kind = Binding::Kind::var;
        b.var = v;
        return b;
    }
    if (const DefineDecl* d = m.find_define(part)) {
        b.kind = Binding::Kind::define;
        b.define = d;
        return b;
    }
    if (const Scope* c = scope.child(part)) {
        b.kind = Binding::Kind::instance;
        b.instance = c;
        return b;
    }
    throw Error(Errc::unbound_identifier, at.loc,
                "'" + part + "' is not declared in module " + m.name);
}

Binding lookup_in(const ResolvedSpec& rs, const Scope& scope, const Expr& name)
{
    const auto& parts = name.parts;
    if (parts.size() == 1) {
        const SmvModule& m = *scope.module;
        bool local = m.param_index(parts[0]) >= 0 || m.find_var(parts[0]) || m.find_define(parts[0]) ||
                     scope.child(parts[0]);
        if (!local && rs.is_enum_symbol(parts[0])) {
            Binding b;
            b.kind = Binding::Kind::enum_const;
            b.symbol = parts[0];
            return b;
        }
    }
    Binding b = lookup_part(rs, scope, parts[0], name);
    for (std::size_t i = 1; i < parts.size(); ++i) {
        if (b.kind != Binding::Kind::instance)
            throw Error(Errc::unbound_identifier, name.loc,
                        "'" + name.dotted() + "': '" + parts[i - 1] + "' is not a module instance");
        b = lookup_part(rs, *b.instance, parts[i], name);
    }
    return b;
}

[[noreturn]] void mismatch(const Expr& e, const std::string& msg)
{
    throw Error(Errc::type_mismatch, e.loc, msg);
}

Type infer(const ResolvedSpec& rs, const Scope& scope, const Expr& e, const DefineTypeFn& define_type)
{
    auto sub = [&](const Expr& x) { return infer(rs, scope, x, define_type); };
    switch (e.kind) {
    case ExprKind::bool_const: return Type::boolean();
    case ExprKind::int_const: return Type::integer(e.int_value, e.int_value);
    case ExprKind::name: {
        Binding b = lookup_in(rs, scope, e);
        switch (b.kind) {
        case Binding::Kind::var: return Type::of(b.var->type);
        case Binding::Kind::define: return define_type(*b.scope, *b.define);
        case Binding::Kind::expr: return infer(rs, *b.scope, *b.expr, define_type);
        case Binding::Kind::enum_const: return Type::enumeration({b.symbol});
        case Binding::Kind::instance: mismatch(e, "module instance '" + e.dotted() + "' used as a value");
        }
        break;
    }
    case ExprKind::unary: {
        if (e.unary_op == UnaryOp::neg)
            throw Error(Errc::unsupported, e.loc, "arithmetic negation is not supported");
        if (sub(*e.args[0]).kind != Type::Kind::boolean)
            mismatch(e, "'!' needs a boolean operand");
        return Type::boolean();
    }
    case ExprKind::binary: {
        if (e.binary_op == BinaryOp::add || e.binary_op == BinaryOp::sub)
            throw Error(Errc::unsupported, e.loc,
                        std::string("arithmetic operator '") + to_string(e.binary_op) + "' is not supported");
        Type a = sub(*e.args[0]);
        Type b = sub(*e.args[1]);
        switch (e.binary_op) {
        case BinaryOp::land:
        case BinaryOp::lor:
        case BinaryOp::lxor:
        case BinaryOp::lxnor:
        case BinaryOp::implies:
        case BinaryOp::iff:
            if (a.kind != Type::Kind::boolean || b.kind != Type::Kind::boolean)
                mismatch(e, std::string("'") + to_string(e.binary_op) + "' needs boolean operands, got " + a.str() +
                                " and " + b.str());
            return Type::boolean();
        case BinaryOp::eq:
        case BinaryOp::ne:
            if (a.kind != b.kind)
                mismatch(e, "cannot compare " + a.str() + " with " + b.str());
            return Type::boolean();
        default:
            if (a.kind == Type::Kind::integer && b.kind == Type::Kind::integer)
                return Type::boolean();
            if (a.kind == Type::Kind::enumeration && b.kind == Type::Kind::enumeration && common_enum_order(a, b))
                return Type::boolean();
            mismatch(e, std::string("cannot order ") + a.str() + " and " + b.str() + " with '" +
                            to_string(e.binary_op) + "'");
        }
    }
    case ExprKind::case_expr: {
        std::optional<Type> result;
        for (const auto& br : e.branches) {
            if (sub(*br.guard).kind != Type::Kind::boolean)
                mismatch(*br.guard, "case guard must be boolean");
            Type t = sub(*br.value);
            if (!result) {
                result = t;
                continue;
            }
            if (t.kind != result->kind)
                mismatch(*br.value, "case branches mix " + result->str() + " and " + t.str());
            if (t.kind == Type::Kind::integer) {
                result->lo = std::min(result->lo, t.lo);
                result->hi = std::max(result->hi, t.hi);
            } else if (t.kind == Type::Kind::enumeration) {
                for (const auto& s : t.symbols)
                    if (std::find(result->symbols.begin(), result->symbols.end(), s) == result->symbols.end())
                        result->symbols.push_back(s);
            }
        }
        return *result;
    }
    }
    mismatch(e, "untypable expression");
}

}  // namespace

Binding ResolvedSpec::lookup(const Scope& scope, const Expr& name) const
{
    return lookup_in(*this, scope, name);
}

Type ResolvedSpec::define_type(const Scope& scope, const DefineDecl& d) const
{
    auto it = define_types_.find({&scope, &d});
    if (it == define_types_.end())
        throw Error(Errc::unbound_identifier, d.loc, "define '" + d.name + "' was not resolved");
    return it->second;
}

Type ResolvedSpec::type_of(const Scope& scope, const Expr& e) const
{
    return infer(*this, scope, e, [this](const Scope& s, const DefineDecl& d) { return define_type(s, d); });
}

std::vector<const Scope*> ResolvedSpec::scopes() const
{
    std::vector<const Scope*> out;
    std::function<void(const Scope&)> walk = [&](const Scope& s) {
        out.push_back(&s);
        for (const auto& c : s.children)
            walk(*c);
    };
    walk(*root_);
    return out;
}

class Elaborator {
public:
    explicit Elaborator(ResolvedSpec& rs) : rs_(rs) {}

    void run();

private:
    void check_instantiation_graph();
    std::unique_ptr<Scope> build(const SmvModule& m, std::string prefix, const Scope* parent,
                                 const InstanceDecl* decl);
    void check_scope(const Scope& s);
    Type define_type(const Scope& s, const DefineDecl& d);
    Type infer_here(const Scope& s, const Expr& e)
    {
        return infer(rs_, s, e, [this](const Scope& sc, const DefineDecl& d) { return define_type(sc, d); });
    }

    ResolvedSpec& rs_;
    std::set<std::pair<const Scope*, const DefineDecl*>> in_progress_;
};

void Elaborator::check_instantiation_graph()
{
    const SmvSpec& spec = *rs_.spec_;
    for (const auto& m : spec.modules) {
        for (const auto& inst : m.instances) {
            const SmvModule* target = spec.find_module(inst.module);
            if (target == nullptr)
                throw Error(Errc::unbound_identifier, inst.loc, "unknown module '" + inst.module + "'");
            if (target->params.size() != inst.actuals.size())
                throw Error(Errc::type_mismatch, inst.loc,
                            "module " + inst.module + " takes " + std::to_string(target->params.size()) +
                                " parameters, " + std::to_string(inst.actuals.size()) + " given");
        }
    }
    // 0 = unvisited, 1 = on stack, 2 = done
    std::map<std::string, int> state;
    std::function<void(const SmvModule&)> dfs = [&](const SmvModule& m) {
        state[m.name] = 1;
        for (const auto& inst : m.instances) {
            int st = state[inst.module];
            if (st == 1)
                throw Error(Errc::cyclic_instantiation, inst.loc,
                            "module " + m.name + " instantiates " + inst.module + " cyclically");
            if (st == 0)
                dfs(*spec.find_module(inst.module));
        }
        state[m.name] = 2;
    };
    for (const auto& m : spec.modules)
        if (state[m.name] == 0)
            dfs(m);
}

std::unique_ptr<Scope> Elaborator::build(const SmvModule& m, std::string prefix, const Scope* parent,
                                         const InstanceDecl* decl)
{
    auto s = std::make_unique<Scope>();
    s->module = &m;
    s->prefix = std::move(prefix);
    s->parent = parent;
    s->decl = decl;
    for (const auto& inst : m.instances)
        s->children.push_back(build(*rs_.spec_->find_module(inst.module), s->prefix + inst.name + ".", s.get(), &inst));
    return s;
}

Type Elaborator::define_type(const Scope& s, const DefineDecl& d)
{
    auto key = std::make_pair(&s, &d);
    auto it = rs_.define_types_.find(key);
    if (it != rs_.define_types_.end())
        return it->second;
    if (!in_progress_.insert(key).second)
        throw Error(Errc::cyclic_define, d.loc, "define '" + s.qualify(d.name) + "' depends on itself");
    Type t = infer_here(s, *d.expr);
    in_progress_.erase(key);
    rs_.define_types_.emplace(key, t);
    return t;
}

void Elaborator::check_scope(const Scope& s)
{
    const SmvModule& m = *s.module;
    for (const auto& d : m.defines)
        define_type(s, d);
    if (s.decl != nullptr)
        for (const auto& actual : s.decl->actuals)
            infer_here(*s.parent, *actual);
    for (const auto& a : m.assigns) {
        const VarDecl* v = m.find_var(a.target);
        if (v->controllable)
            throw Error(Errc::unsupported, a.loc, "controllable variable '" + v->name + "' cannot be assigned");
        Type vt = Type::of(v->type);
        for (const ExprPtr& rhs : {a.init, a.next}) {
            if (!rhs)
                continue;
            Type t = infer_here(s, *rhs);
            if (t.kind != vt.kind)
                throw Error(Errc::type_mismatch, rhs->loc,
                            "cannot assign " + t.str() + " to '" + v->name + "' of type " + vt.str());
            if (t.kind == Type::Kind::enumeration) {
                for (const auto& sym : t.symbols)
                    if (std::find(vt.symbols.begin(), vt.symbols.end(), sym) == vt.symbols.end())
                        throw Error(Errc::type_mismatch, rhs->loc,
                                    "symbol '" + sym + "' is not a value of '" + v->name + "' (" + vt.str() + ")");
            }
        }
    }
    for (const auto& c : s.children)
        check_scope(*c);
}

void Elaborator::run()
{
    const SmvSpec& spec = *rs_.spec_;
    const SmvModule& main = spec.main();
    if (!main.params.empty())
        throw Error(Errc::type_mismatch, main.loc, "module main cannot take parameters");
    for (const auto& m : spec.modules)
        for (const auto& v : m.vars)
            if (v.type.kind == VarType::Kind::enumeration)
                rs_.enum_symbols_.insert(v.type.symbols.begin(), v.type.symbols.end());
    check_instantiation_graph();
    rs_.root_ = build(main, "", nullptr, nullptr);
    check_scope(*rs_.root_);
}

ResolvedSpec resolve(SmvSpec spec)
{
    ResolvedSpec rs;
    rs.spec_ = std::make_shared<const SmvSpec>(std::move(spec));
    Elaborator(rs).run();
    return rs;
}

void check_propositions(const ResolvedSpec& rs, std::span<const std::string> props)
{
    const Scope& root = rs.root();
    const SmvModule& main = *root.module;
    for (const auto& p : props) {
        if (const DefineDecl* d = main.find_define(p)) {
            if (rs.define_type(root, *d).kind != Type::Kind::boolean)
                throw Error(Errc::undefined_proposition, d->loc, "proposition '" + p + "' is not a boolean define");
            continue;
        }
        if (const VarDecl* v = main.find_var(p)) {
            if (v->type.kind != VarType::Kind::boolean)
                throw Error(Errc::undefined_proposition, v->loc, "proposition '" + p + "' is not boolean");
            continue;
        }
        throw Error(Errc::undefined_proposition, "proposition '" + p + "' is not defined in module main");
    }
}

}  // namespace smvsynth::smv
