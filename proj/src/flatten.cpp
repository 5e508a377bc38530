#include "smvsynth/flatten.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

namespace smvsynth::flat {

namespace {

BoolExpr make(BoolOp op, std::vector<BoolExpr> args)
{
    auto n = std::make_shared<BoolNode>();
    n->op = op;
    n->args = std::move(args);
    return n;
}

bool is_not_of(const BoolExpr& a, const BoolExpr& b)
{
    return (a->op == BoolOp::lnot && a->args[0] == b) || (b->op == BoolOp::lnot && b->args[0] == a);
}

}  // namespace

BoolExpr constant(bool v)
{
    static const BoolExpr t = [] {
        auto n = std::make_shared<BoolNode>();
        n->value = true;
        return BoolExpr(n);
    }();
    static const BoolExpr f = std::make_shared<BoolNode>();
    return v ? t : f;
}

BoolExpr ref(std::string name)
{
    auto n = std::make_shared<BoolNode>();
    n->op = BoolOp::ref;
    n->name = std::move(name);
    return n;
}

bool is_const(const BoolExpr& e, bool v)
{
    return e->op == BoolOp::constant && e->value == v;
}

BoolExpr lnot(const BoolExpr& a)
{
    if (a->op == BoolOp::constant)
        return constant(!a->value);
    if (a->op == BoolOp::lnot)
        return a->args[0];
    return make(BoolOp::lnot, {a});
}

BoolExpr land(const BoolExpr& a, const BoolExpr& b)
{
    if (is_const(a, false) || is_const(b, false) || is_not_of(a, b))
        return constant(false);
    if (is_const(a, true) || a == b)
        return b;
    if (is_const(b, true))
        return a;
    return make(BoolOp::land, {a, b});
}

BoolExpr lor(const BoolExpr& a, const BoolExpr& b)
{
    if (is_const(a, true) || is_const(b, true) || is_not_of(a, b))
        return constant(true);
    if (is_const(a, false) || a == b)
        return b;
    if (is_const(b, false))
        return a;
    return make(BoolOp::lor, {a, b});
}

BoolExpr lxor(const BoolExpr& a, const BoolExpr& b)
{
    if (a->op == BoolOp::constant)
        return a->value ? lnot(b) : b;
    if (b->op == BoolOp::constant)
        return b->value ? lnot(a) : a;
    if (a == b)
        return constant(false);
    if (is_not_of(a, b))
        return constant(true);
    return make(BoolOp::lxor, {a, b});
}

BoolExpr ite(const BoolExpr& s, const BoolExpr& t, const BoolExpr& e)
{
    if (s->op == BoolOp::constant)
        return s->value ? t : e;
    if (t == e)
        return t;
    if (is_const(t, true))
        return lor(s, e);
    if (is_const(t, false))
        return land(lnot(s), e);
    if (is_const(e, true))
        return lor(lnot(s), t);
    if (is_const(e, false))
        return land(s, t);
    return make(BoolOp::ite, {s, t, e});
}

std::string to_string(const BoolExpr& e)
{
    switch (e->op) {
    case BoolOp::constant: return e->value ? "TRUE" : "FALSE";
    case BoolOp::ref: return e->name;
    case BoolOp::lnot: return "!" + to_string(e->args[0]);
    case BoolOp::land: return "(" + to_string(e->args[0]) + " & " + to_string(e->args[1]) + ")";
    case BoolOp::lor: return "(" + to_string(e->args[0]) + " | " + to_string(e->args[1]) + ")";
    case BoolOp::lxor: return "(" + to_string(e->args[0]) + " xor " + to_string(e->args[1]) + ")";
    case BoolOp::ite:
        return "(" + to_string(e->args[0]) + " ? " + to_string(e->args[1]) + " : " + to_string(e->args[2]) + ")";
    }
    return "?";
}

bool eval(const BoolExpr& e, const std::function<bool(const std::string&)>& env)
{
    switch (e->op) {
    case BoolOp::constant: return e->value;
    case BoolOp::ref: return env(e->name);
    case BoolOp::lnot: return !eval(e->args[0], env);
    case BoolOp::land: return eval(e->args[0], env) && eval(e->args[1], env);
    case BoolOp::lor: return eval(e->args[0], env) || eval(e->args[1], env);
    case BoolOp::lxor: return eval(e->args[0], env) != eval(e->args[1], env);
    case BoolOp::ite: return eval(e->args[0], env) ? eval(e->args[1], env) : eval(e->args[2], env);
    }
    return false;
}

unsigned bits_for(std::size_t n)
{
    unsigned b = 0;
    while ((std::size_t{1} << b) < n)
        ++b;
    return b;
}

std::string bit_name(const std::string& var, unsigned i)
{
    return var + ".__bit" + std::to_string(i);
}

const BoolExpr* FlatModel::find_define(const std::string& name) const
{
    for (const auto& [n, e] : defines)
        if (n == name)
            return &e;
    return nullptr;
}

bool FlatModel::is_signal(const std::string& name) const
{
    auto has = [&](const std::vector<std::string>& v) { return std::find(v.begin(), v.end(), name) != v.end(); };
    if (has(inputs_u) || has(inputs_c))
        return true;
    return std::any_of(latches.begin(), latches.end(), [&](const FlatLatch& l) { return l.name == name; });
}

namespace {

using smv::Binding;
using smv::BinaryOp;
using smv::Expr;
using smv::ExprKind;
using smv::Scope;
using smv::Type;

// A typed value as a set of mutually exclusive guarded alternatives.
struct Sym {
    Type::Kind kind = Type::Kind::boolean;
    BoolExpr b = constant(false);
    std::map<long, BoolExpr> ints;
    std::map<std::string, BoolExpr> syms;
};

void add_alt(BoolExpr& slot, const BoolExpr& cond)
{
    slot = slot ? lor(slot, cond) : cond;
}

class Flattener {
public:
    Flattener(const smv::ResolvedSpec& rs, std::vector<std::string>* warnings) : rs_(rs), warnings_(warnings) {}

    FlatModel run();

private:
    Sym eval(const Scope& s, const Expr& e);
    Sym eval_binary(const Scope& s, const Expr& e);
    Sym eval_case(const Scope& s, const Expr& e);
    Sym var_sym(const Scope& s, const smv::VarDecl& v);
    Sym define_sym(const Scope& s, const smv::DefineDecl& d);

    BoolExpr inline_defines(const BoolExpr& e);
    std::size_t init_code(const Scope& s, const smv::VarDecl& v, const smv::Assign* a);

    // Alternatives of `value` indexed by the code of the variable's type.
    std::vector<BoolExpr> by_code(const Type& t, const Sym& value, const Expr& at, const std::string& var);

    const smv::ResolvedSpec& rs_;
    std::vector<std::string>* warnings_;
    FlatModel out_;
    std::map<std::pair<const Scope*, const smv::DefineDecl*>, Sym> define_memo_;
    std::map<std::pair<const Scope*, const smv::VarDecl*>, Sym> var_memo_;
    std::unordered_map<const BoolNode*, BoolExpr> inline_memo_;
};

Sym bool_sym(BoolExpr b)
{
    Sym s;
    s.b = std::move(b);
    return s;
}

std::vector<std::string> value_names(const Type& t)
{
    std::vector<std::string> out;
    if (t.kind == Type::Kind::boolean)
        return {"FALSE", "TRUE"};
    if (t.kind == Type::Kind::integer) {
        for (long v = t.lo; v <= t.hi; ++v)
            out.push_back(std::to_string(v));
        return out;
    }
    return t.symbols;
}

Sym Flattener::var_sym(const Scope& s, const smv::VarDecl& v)
{
    auto key = std::make_pair(&s, &v);
    if (auto it = var_memo_.find(key); it != var_memo_.end())
        return it->second;
    std::string name = s.qualify(v.name);
    Type t = Type::of(v.type);
    Sym out;
    out.kind = t.kind;
    if (t.kind == Type::Kind::boolean) {
        out.b = ref(name);
    } else {
        std::size_t n = t.kind == Type::Kind::integer ? static_cast<std::size_t>(t.hi - t.lo + 1) : t.symbols.size();
        unsigned nb = bits_for(n);
        for (std::size_t code = 0; code < n; ++code) {
            BoolExpr c = constant(true);
            for (unsigned j = 0; j < nb; ++j) {
                BoolExpr bit = ref(bit_name(name, j));
                c = land(c, (code >> j) & 1u ? bit : lnot(bit));
            }
            if (t.kind == Type::Kind::integer)
                out.ints[t.lo + static_cast<long>(code)] = c;
            else
                out.syms[t.symbols[code]] = c;
        }
    }
    var_memo_.emplace(key, out);
    return out;
}

Sym Flattener::define_sym(const Scope& s, const smv::DefineDecl& d)
{
    auto key = std::make_pair(&s, &d);
    if (auto it = define_memo_.find(key); it != define_memo_.end())
        return it->second;
    Sym v = eval(s, *d.expr);
    if (v.kind == Type::Kind::boolean) {
        std::string name = s.qualify(d.name);
        out_.defines.emplace_back(name, v.b);
        v = bool_sym(ref(name));
    }
    define_memo_.emplace(key, v);
    return v;
}

Sym Flattener::eval(const Scope& s, const Expr& e)
{
    switch (e.kind) {
    case ExprKind::bool_const: return bool_sym(constant(e.bool_value));
    case ExprKind::int_const: {
        Sym v;
        v.kind = Type::Kind::integer;
        v.ints[e.int_value] = constant(true);
        return v;
    }
    case ExprKind::name: {
        Binding b = rs_.lookup(s, e);
        switch (b.kind) {
        case Binding::Kind::var: return var_sym(*b.scope, *b.var);
        case Binding::Kind::define: return define_sym(*b.scope, *b.define);
        case Binding::Kind::expr: return eval(*b.scope, *b.expr);
        case Binding::Kind::enum_const: {
            Sym v;
            v.kind = Type::Kind::enumeration;
            v.syms[b.symbol] = constant(true);
            return v;
        }
        case Binding::Kind::instance: break;
        }
        throw Error(Errc::type_mismatch, e.loc, "module instance '" + e.dotted() + "' used as a value");
    }
    case ExprKind::unary:
        if (e.unary_op != smv::UnaryOp::lnot)
            throw Error(Errc::unsupported, e.loc, "arithmetic negation is not supported");
        return bool_sym(lnot(eval(s, *e.args[0]).b));
    case ExprKind::binary: return eval_binary(s, e);
    case ExprKind::case_expr: return eval_case(s, e);
    }
    throw Error(Errc::unsupported, e.loc, "unsupported expression");
}

Sym Flattener::eval_binary(const Scope& s, const Expr& e)
{
    if (e.binary_op == BinaryOp::add || e.binary_op == BinaryOp::sub)
        throw Error(Errc::unsupported, e.loc,
                    std::string("arithmetic operator '") + smv::to_string(e.binary_op) + "' is not supported");
    Sym a = eval(s, *e.args[0]);
    Sym b = eval(s, *e.args[1]);
    switch (e.binary_op) {
    case BinaryOp::land: return bool_sym(land(a.b, b.b));
    case BinaryOp::lor: return bool_sym(lor(a.b, b.b));
    case BinaryOp::lxor: return bool_sym(lxor(a.b, b.b));
    case BinaryOp::lxnor:
    case BinaryOp::iff: return bool_sym(lnot(lxor(a.b, b.b)));
    case BinaryOp::implies: return bool_sym(lor(lnot(a.b), b.b));
    default: break;
    }

    BinaryOp op = e.binary_op;
    auto holds = [op](long x, long y) {
        switch (op) {
        case BinaryOp::eq: return x == y;
        case BinaryOp::ne: return x != y;
        case BinaryOp::lt: return x < y;
        case BinaryOp::le: return x <= y;
        case BinaryOp::gt: return x > y;
        case BinaryOp::ge: return x >= y;
        default: return false;
        }
    };
    if (a.kind == Type::Kind::boolean) {
        BoolExpr eq = lnot(lxor(a.b, b.b));
        return bool_sym(op == BinaryOp::eq ? eq : lnot(eq));
    }
    BoolExpr r = constant(false);
    if (a.kind == Type::Kind::integer) {
        for (const auto& [x, cx] : a.ints)
            for (const auto& [y, cy] : b.ints)
                if (holds(x, y))
                    r = lor(r, land(cx, cy));
        return bool_sym(r);
    }
    // Enumerations: equality by symbol, ordering by the shared declaration order.
    std::map<std::string, long> pos;
    if (op != BinaryOp::eq && op != BinaryOp::ne) {
        auto order = smv::common_enum_order(rs_.type_of(s, *e.args[0]), rs_.type_of(s, *e.args[1]));
        if (!order)
            throw Error(Errc::type_mismatch, e.loc, "enumerations have no common order");
        for (std::size_t i = 0; i < order->size(); ++i)
            pos[(*order)[i]] = static_cast<long>(i);
    } else {
        long i = 0;
        for (const auto& [x, _] : a.syms)
            pos.emplace(x, i++);
        for (const auto& [y, _] : b.syms)
            pos.emplace(y, i++);
    }
    for (const auto& [x, cx] : a.syms)
        for (const auto& [y, cy] : b.syms)
            if (holds(pos.at(x), pos.at(y)))
                r = lor(r, land(cx, cy));
    return bool_sym(r);
}

Sym Flattener::eval_case(const Scope& s, const Expr& e)
{
    // Branch i is taken when its guard holds and no earlier one did. With no
    // branch taken the value is FALSE, or no alternative at all (code 0).
    BoolExpr none_before = constant(true);
    Sym out;
    bool first = true;
    for (const auto& br : e.branches) {
        BoolExpr guard = eval(s, *br.guard).b;
        BoolExpr g = land(none_before, guard);
        none_before = land(none_before, lnot(guard));
        Sym v = eval(s, *br.value);
        if (first) {
            out.kind = v.kind;
            first = false;
        }
        if (v.kind == Type::Kind::boolean) {
            out.b = lor(out.b, land(g, v.b));
        } else {
            for (const auto& [x, c] : v.ints)
                add_alt(out.ints[x], land(g, c));
            for (const auto& [x, c] : v.syms)
                add_alt(out.syms[x], land(g, c));
        }
        if (is_const(none_before, false))
            break;
    }
    return out;
}

std::vector<BoolExpr> Flattener::by_code(const Type& t, const Sym& value, const Expr& at, const std::string& var)
{
    std::vector<BoolExpr> out;
    if (t.kind == Type::Kind::integer) {
        out.assign(static_cast<std::size_t>(t.hi - t.lo + 1), constant(false));
        for (const auto& [x, c] : value.ints) {
            if (x < t.lo || x > t.hi) {
                if (!is_const(c, false))
                    throw Error(Errc::type_mismatch, at.loc,
                                "value " + std::to_string(x) + " is outside the range of '" + var + "' (" + t.str() +
                                    ")");
                continue;
            }
            out[static_cast<std::size_t>(x - t.lo)] = c;
        }
    } else {
        out.assign(t.symbols.size(), constant(false));
        for (const auto& [x, c] : value.syms) {
            auto it = std::find(t.symbols.begin(), t.symbols.end(), x);
            if (it == t.symbols.end()) {
                if (!is_const(c, false))
                    throw Error(Errc::type_mismatch, at.loc, "'" + x + "' is not a value of '" + var + "'");
                continue;
            }
            out[static_cast<std::size_t>(it - t.symbols.begin())] = c;
        }
    }
    return out;
}

BoolExpr Flattener::inline_defines(const BoolExpr& e)
{
    if (auto it = inline_memo_.find(e.get()); it != inline_memo_.end())
        return it->second;
    BoolExpr r;
    switch (e->op) {
    case BoolOp::constant: r = e; break;
    case BoolOp::ref: {
        const BoolExpr* d = out_.find_define(e->name);
        r = d ? inline_defines(*d) : e;
        break;
    }
    case BoolOp::lnot: r = lnot(inline_defines(e->args[0])); break;
    case BoolOp::land: r = land(inline_defines(e->args[0]), inline_defines(e->args[1])); break;
    case BoolOp::lor: r = lor(inline_defines(e->args[0]), inline_defines(e->args[1])); break;
    case BoolOp::lxor: r = lxor(inline_defines(e->args[0]), inline_defines(e->args[1])); break;
    case BoolOp::ite:
        r = ite(inline_defines(e->args[0]), inline_defines(e->args[1]), inline_defines(e->args[2]));
        break;
    }
    inline_memo_.emplace(e.get(), r);
    return r;
}

std::size_t Flattener::init_code(const Scope& s, const smv::VarDecl& v, const smv::Assign* a)
{
    Type t = Type::of(v.type);
    std::string name = s.qualify(v.name);
    if (a == nullptr || !a->init) {
        if (warnings_)
            warnings_->push_back("'" + name + "' has no init; defaulting to " + value_names(t).front());
        return 0;
    }
    Sym val = eval(s, *a->init);
    std::vector<BoolExpr> alts;
    if (t.kind == Type::Kind::boolean)
        alts = {lnot(val.b), val.b};
    else
        alts = by_code(t, val, *a->init, name);
    std::size_t chosen = 0;
    for (std::size_t i = 0; i < alts.size(); ++i) {
        BoolExpr c = inline_defines(alts[i]);
        if (c->op != BoolOp::constant)
            throw Error(Errc::unsupported, a->init->loc, "init of '" + name + "' must be a constant");
        if (c->value)
            chosen = i;
    }
    return chosen;
}

FlatModel Flattener::run()
{
    std::vector<const Scope*> scopes = rs_.scopes();
    const Scope& root = rs_.root();

    for (const Scope* s : scopes) {
        const smv::SmvModule& m = *s->module;
        for (const auto& v : m.vars) {
            const smv::Assign* a = m.find_assign(v.name);
            std::string name = s->qualify(v.name);
            Type t = Type::of(v.type);
            std::size_t n = value_names(t).size();
            unsigned nb = t.kind == Type::Kind::boolean ? 1 : bits_for(n);
            auto bit = [&](unsigned j) { return t.kind == Type::Kind::boolean ? name : bit_name(name, j); };

            if (a == nullptr || !a->next) {
                if (s != &root)
                    throw Error(Errc::unsupported, v.loc,
                                "variable '" + name + "' outside main has no next() assignment");
                if (a != nullptr && a->init)
                    throw Error(Errc::unsupported, a->loc,
                                "variable '" + name + "' has init() without next(); free variables must be unassigned");
                for (unsigned j = 0; j < nb; ++j)
                    (v.controllable ? out_.inputs_c : out_.inputs_u).push_back(bit(j));
                if (t.kind != Type::Kind::boolean && n < (std::size_t{1} << nb)) {
                    BoolExpr valid = constant(false);
                    Sym vs = var_sym(*s, v);
                    for (const auto& [_, c] : vs.ints)
                        valid = lor(valid, c);
                    for (const auto& [_, c] : vs.syms)
                        valid = lor(valid, c);
                    out_.input_constraint = land(out_.input_constraint, valid);
                }
                continue;
            }

            std::size_t init = init_code(*s, v, a);
            Sym next = eval(*s, *a->next);
            if (t.kind == Type::Kind::boolean) {
                out_.latches.push_back({name, init == 1, next.b});
                continue;
            }
            std::vector<BoolExpr> alts = by_code(t, next, *a->next, name);
            for (unsigned j = 0; j < nb; ++j) {
                BoolExpr nx = constant(false);
                for (std::size_t code = 0; code < alts.size(); ++code)
                    if ((code >> j) & 1u)
                        nx = lor(nx, alts[code]);
                out_.latches.push_back({bit(j), ((init >> j) & 1u) != 0, nx});
            }
        }
    }
    // Every boolean define becomes a named signal, used or not.
    for (const Scope* s : scopes)
        for (const auto& d : s->module->defines)
            define_sym(*s, d);
    return std::move(out_);
}

}  // namespace

FlatModel flatten(const smv::ResolvedSpec& rs, std::vector<std::string>* warnings)
{
    return Flattener(rs, warnings).run();
}

void check_closed(const FlatModel& m)
{
    std::unordered_set<std::string> known(m.inputs_u.begin(), m.inputs_u.end());
    for (const auto& n : m.inputs_c)
        if (!known.insert(n).second)
            throw Error(Errc::invalid_doc, "signal '" + n + "' is both controllable and uncontrollable");
    for (const auto& l : m.latches)
        if (!known.insert(l.name).second)
            throw Error(Errc::invalid_doc, "signal '" + l.name + "' declared twice");
    std::unordered_set<std::string> all_defines;
    for (const auto& [n, _] : m.defines)
        all_defines.insert(n);

    std::unordered_set<const BoolNode*> seen;
    auto walk = [&](const BoolExpr& root, const std::string& where) {
        std::vector<const BoolNode*> stack{root.get()};
        while (!stack.empty()) {
            const BoolNode* n = stack.back();
            stack.pop_back();
            if (!seen.insert(n).second)
                continue;
            if (n->op == BoolOp::ref && !known.contains(n->name))
                throw Error(Errc::invalid_doc,
                            where + " refers to " +
                                (all_defines.contains(n->name) ? "later define '" : "undeclared '") + n->name + "'");
            for (const auto& a : n->args)
                stack.push_back(a.get());
        }
    };
    for (const auto& [n, e] : m.defines) {
        seen.clear();
        walk(e, "define '" + n + "'");
        if (!known.insert(n).second)
            throw Error(Errc::invalid_doc, "define '" + n + "' declared twice");
    }
    seen.clear();
    for (const auto& l : m.latches)
        walk(l.next, "next of '" + l.name + "'");
    walk(m.input_constraint, "input constraint");
}

std::string format_model(const FlatModel& m)
{
    std::ostringstream out;
    for (const auto& n : m.inputs_u)
        out << "input " << n << '\n';
    for (const auto& n : m.inputs_c)
        out << "controllable " << n << '\n';
    for (const auto& l : m.latches)
        out << "latch " << l.name << " init " << l.init << " next " << to_string(l.next) << '\n';
    for (const auto& [n, e] : m.defines)
        out << "define " << n << " := " << to_string(e) << '\n';
    if (!is_const(m.input_constraint, true))
        out << "input_constraint " << to_string(m.input_constraint) << '\n';
    return out.str();
}

Evaluator::Evaluator(const FlatModel& m) : model_(m)
{
    for (const auto& [n, e] : m.defines)
        defines_[n] = &e;
}

bool Evaluator::eval(const BoolExpr& e)
{
    if (auto it = cache_.find(e.get()); it != cache_.end())
        return it->second;
    bool r = false;
    switch (e->op) {
    case BoolOp::constant: r = e->value; break;
    case BoolOp::ref: {
        if (auto d = defines_.find(e->name); d != defines_.end()) {
            if (auto c = define_cache_.find(e->name); c != define_cache_.end())
                return c->second;
            r = eval(*d->second);
            define_cache_[e->name] = r;
            return r;
        }
        auto v = values_.find(e->name);
        if (v == values_.end())
            throw Error(Errc::invalid_doc, "no value for signal '" + e->name + "'");
        return v->second;
    }
    case BoolOp::lnot: r = !eval(e->args[0]); break;
    case BoolOp::land: r = eval(e->args[0]) && eval(e->args[1]); break;
    case BoolOp::lor: r = eval(e->args[0]) || eval(e->args[1]); break;
    case BoolOp::lxor: r = eval(e->args[0]) != eval(e->args[1]); break;
    case BoolOp::ite: r = eval(e->args[0]) ? eval(e->args[1]) : eval(e->args[2]); break;
    }
    cache_.emplace(e.get(), r);
    return r;
}

}  // namespace smvsynth::flat
