#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "smvsynth/smv.hpp"

namespace smvsynth::smv {

const char* to_string(BinaryOp op)
{
    switch (op) {
    case BinaryOp::land: return "&";
    case BinaryOp::lor: return "|";
    case BinaryOp::lxor: return "xor";
    case BinaryOp::lxnor: return "xnor";
    case BinaryOp::implies: return "->";
    case BinaryOp::iff: return "<->";
    case BinaryOp::eq: return "=";
    case BinaryOp::ne: return "!=";
    case BinaryOp::lt: return "<";
    case BinaryOp::le: return "<=";
    case BinaryOp::gt: return ">";
    case BinaryOp::ge: return ">=";
    case BinaryOp::add: return "+";
    case BinaryOp::sub: return "-";
    }
    return "?";
}

std::string Expr::dotted() const
{
    std::string r;
    for (const auto& p : parts) {
        if (!r.empty())
            r += '.';
        r += p;
    }
    return r;
}

const VarDecl* SmvModule::find_var(std::string_view n) const
{
    for (const auto& v : vars)
        if (v.name == n)
            return &v;
    return nullptr;
}

const DefineDecl* SmvModule::find_define(std::string_view n) const
{
    for (const auto& d : defines)
        if (d.name == n)
            return &d;
    return nullptr;
}

const Assign* SmvModule::find_assign(std::string_view n) const
{
    for (const auto& a : assigns)
        if (a.target == n)
            return &a;
    return nullptr;
}

const InstanceDecl* SmvModule::find_instance(std::string_view n) const
{
    for (const auto& i : instances)
        if (i.name == n)
            return &i;
    return nullptr;
}

int SmvModule::param_index(std::string_view n) const
{
    for (std::size_t i = 0; i < params.size(); ++i)
        if (params[i] == n)
            return static_cast<int>(i);
    return -1;
}

const SmvModule* SmvSpec::find_module(std::string_view n) const
{
    for (const auto& m : modules)
        if (m.name == n)
            return &m;
    return nullptr;
}

const SmvModule& SmvSpec::main() const
{
    const SmvModule* m = find_module(main_name);
    if (m == nullptr)
        throw Error(Errc::missing_main, "no module named '" + main_name + "'");
    return *m;
}

namespace {

enum class Tok {
    ident,
    number,
    assign,    // :=
    colon,
    semi,
    comma,
    lparen,
    rparen,
    lbrace,
    rbrace,
    dot,
    dotdot,
    ellipsis,
    bang,
    amp,
    bar,
    arrow,     // ->
    dblarrow,  // <->
    eq,
    ne,
    lt,
    le,
    gt,
    ge,
    plus,
    minus,
    controllable_mark,
    eof,
};

struct Token {
    Tok kind = Tok::eof;
    std::string text;
    long number = 0;
    SourceLoc loc;
};

bool iequals(std::string_view a, std::string_view b)
{
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

constexpr std::string_view kSysMarker = "SYS_AUTOMATON_SPEC";
constexpr std::string_view kEnvMarker = "ENV_AUTOMATON_SPEC";
constexpr std::string_view kControllableMarker = "controllable";

bool is_ident_start(char c)
{
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$' || c == '#';
}

bool is_section_keyword(std::string_view word)
{
    return iequals(word, "MODULE") || iequals(word, "VAR") || iequals(word, "DEFINE") ||
           iequals(word, "ASSIGN") || word == kSysMarker || word == kEnvMarker;
}

bool is_unsupported_section(std::string_view word)
{
    static constexpr std::string_view kWords[] = {
        "TRANS", "INIT", "INVAR", "IVAR", "FROZENVAR", "SPEC", "LTLSPEC", "CTLSPEC", "INVARSPEC",
        "PSLSPEC", "FAIRNESS", "JUSTICE", "COMPASSION", "CONSTANTS", "COMPUTE", "ISA", "PRED",
    };
    return std::any_of(std::begin(kWords), std::end(kWords), [&](std::string_view k) { return word == k; });
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next();

    // Skips blanks and comments; reports whether the input is exhausted.
    void skip_trivia(bool keep_marks);
    SourceLoc loc() const { return {line_, col_}; }
    std::size_t pos() const { return pos_; }
    std::string_view text() const { return text_; }
    char peek_char(std::size_t ahead = 0) const
    {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }
    void bump()
    {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw Error(Errc::syntax, loc(), msg); }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    bool pending_mark_ = false;
    SourceLoc mark_loc_;
};

void Lexer::skip_trivia(bool keep_marks)
{
    for (;;) {
        char c = peek_char();
        if (c == '\0')
            return;
        if (std::isspace(static_cast<unsigned char>(c))) {
            bump();
            continue;
        }
        bool dash = c == '-' && peek_char(1) == '-';
        bool slash = c == '/' && peek_char(1) == '/';
        if (dash || slash) {
            SourceLoc start = loc();
            bump();
            bump();
            std::size_t body = pos_;
            while (peek_char() != '\0' && peek_char() != '\n')
                bump();
            if (dash && keep_marks && text_.substr(body).starts_with(kControllableMarker)) {
                pending_mark_ = true;
                mark_loc_ = start;
                return;
            }
            continue;
        }
        return;
    }
}

Token Lexer::next()
{
    skip_trivia(true);
    Token t;
    if (pending_mark_) {
        pending_mark_ = false;
        t.kind = Tok::controllable_mark;
        t.loc = mark_loc_;
        return t;
    }
    t.loc = loc();
    char c = peek_char();
    if (c == '\0')
        return t;
    if (is_ident_start(c)) {
        std::size_t start = pos_;
        while (is_ident_char(peek_char()))
            bump();
        t.kind = Tok::ident;
        t.text = std::string(text_.substr(start, pos_ - start));
        return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek_char())))
            bump();
        t.kind = Tok::number;
        t.text = std::string(text_.substr(start, pos_ - start));
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
        if (ec != std::errc())
            fail("integer constant out of range: " + t.text);
        return t;
    }
    auto single = [&](Tok kind, int width) {
        t.kind = kind;
        t.text = std::string(text_.substr(pos_, width));
        for (int i = 0; i < width; ++i)
            bump();
        return t;
    };
    switch (c) {
    case ':': return peek_char(1) == '=' ? single(Tok::assign, 2) : single(Tok::colon, 1);
    case ';': return single(Tok::semi, 1);
    case ',': return single(Tok::comma, 1);
    case '(': return single(Tok::lparen, 1);
    case ')': return single(Tok::rparen, 1);
    case '{': return single(Tok::lbrace, 1);
    case '}': return single(Tok::rbrace, 1);
    case '.':
        if (peek_char(1) == '.')
            return peek_char(2) == '.' ? single(Tok::ellipsis, 3) : single(Tok::dotdot, 2);
        return single(Tok::dot, 1);
    case '!': return peek_char(1) == '=' ? single(Tok::ne, 2) : single(Tok::bang, 1);
    case '&': return single(Tok::amp, 1);
    case '|': return single(Tok::bar, 1);
    case '-': return peek_char(1) == '>' ? single(Tok::arrow, 2) : single(Tok::minus, 1);
    case '<':
        if (peek_char(1) == '-' && peek_char(2) == '>')
            return single(Tok::dblarrow, 3);
        return peek_char(1) == '=' ? single(Tok::le, 2) : single(Tok::lt, 1);
    case '>': return peek_char(1) == '=' ? single(Tok::ge, 2) : single(Tok::gt, 1);
    case '=': return single(Tok::eq, 1);
    case '+': return single(Tok::plus, 1);
    default: break;
    }
    fail(std::string("unexpected character '") + c + "'");
}

class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) { advance(); }

    SmvSpec run();

private:
    [[noreturn]] void fail(const std::string& msg) const { throw Error(Errc::syntax, tok_.loc, msg); }
    [[noreturn]] void fail_at(Errc code, SourceLoc loc, const std::string& msg) const { throw Error(code, loc, msg); }

    void advance()
    {
        bool after_var = tok_.kind == Tok::ident && iequals(tok_.text, "VAR");
        tok_ = lex_.next();
        while (tok_.kind == Tok::controllable_mark && !after_var)
            tok_ = lex_.next();
    }
    bool at(Tok k) const { return tok_.kind == k; }
    bool at_keyword(std::string_view kw) const { return tok_.kind == Tok::ident && iequals(tok_.text, kw); }
    bool at_section_start() const
    {
        return tok_.kind == Tok::eof || (tok_.kind == Tok::ident && is_section_keyword(tok_.text));
    }
    void expect(Tok k, const char* what)
    {
        if (!at(k))
            fail(std::string("expected ") + what + (tok_.text.empty() ? "" : ", found '" + tok_.text + "'"));
        advance();
    }
    std::string expect_ident(const char* what)
    {
        if (!at(Tok::ident))
            fail(std::string("expected ") + what);
        std::string s = tok_.text;
        advance();
        return s;
    }

    void parse_module(SmvSpec& spec);
    void parse_var_section(SmvModule& m);
    void parse_define_section(SmvModule& m);
    void parse_assign_section(SmvModule& m);
    void parse_automaton_section(SmvModule& m, bool sys, SourceLoc marker_loc);
    VarType parse_type();
    long parse_signed_number();

    ExprPtr parse_expr() { return parse_implies(); }
    ExprPtr parse_implies();
    ExprPtr parse_iff();
    ExprPtr parse_or();
    ExprPtr parse_and();
    ExprPtr parse_cmp();
    ExprPtr parse_add();
    ExprPtr parse_unary();
    ExprPtr parse_atom();

    static ExprPtr binary(BinaryOp op, ExprPtr a, ExprPtr b, SourceLoc loc)
    {
        auto e = std::make_shared<Expr>();
        e->kind = ExprKind::binary;
        e->binary_op = op;
        e->loc = loc;
        e->args = {std::move(a), std::move(b)};
        return e;
    }

    void declare(SmvModule& m, const std::string& name, SourceLoc loc);

    Lexer lex_;
    Token tok_;
    std::set<std::string> declared_;
};

SmvSpec Parser::run()
{
    SmvSpec spec;
    while (!at(Tok::eof)) {
        if (!at_keyword("MODULE"))
            fail("expected MODULE");
        parse_module(spec);
    }
    return spec;
}

void Parser::declare(SmvModule& m, const std::string& name, SourceLoc loc)
{
    if (!declared_.insert(name).second)
        fail_at(Errc::duplicate_definition, loc, "'" + name + "' is declared twice in module " + m.name);
}

void Parser::parse_module(SmvSpec& spec)
{
    SmvModule m;
    m.loc = tok_.loc;
    advance();
    SourceLoc name_loc = tok_.loc;
    m.name = expect_ident("module name");
    if (spec.find_module(m.name) != nullptr)
        fail_at(Errc::duplicate_module, name_loc, "module '" + m.name + "' is defined twice");
    declared_.clear();
    if (at(Tok::lparen)) {
        advance();
        if (!at(Tok::rparen)) {
            for (;;) {
                SourceLoc loc = tok_.loc;
                std::string p = expect_ident("parameter name");
                declare(m, p, loc);
                m.params.push_back(p);
                if (!at(Tok::comma))
                    break;
                advance();
            }
        }
        expect(Tok::rparen, "')'");
    }

    while (!at(Tok::eof) && !at_keyword("MODULE")) {
        if (at(Tok::ellipsis)) {
            advance();
            continue;
        }
        if (at_keyword("VAR")) {
            parse_var_section(m);
        } else if (at_keyword("DEFINE")) {
            advance();
            parse_define_section(m);
        } else if (at_keyword("ASSIGN")) {
            advance();
            parse_assign_section(m);
        } else if (at(Tok::ident) && (tok_.text == kSysMarker || tok_.text == kEnvMarker)) {
            bool sys = tok_.text == kSysMarker;
            SourceLoc loc = tok_.loc;
            // The entries are file paths, so they are read raw, bypassing the
            // token stream; `tok_` is the marker and the lexer sits right after it.
            parse_automaton_section(m, sys, loc);
            advance();
        } else if (at(Tok::ident) && is_unsupported_section(tok_.text)) {
            fail_at(Errc::unsupported, tok_.loc, "section " + tok_.text + " is not supported");
        } else {
            fail("expected VAR, DEFINE, ASSIGN or an automaton section");
        }
    }

    if (m.name != spec.main_name) {
        for (const auto& v : m.vars)
            if (v.controllable)
                fail_at(Errc::controllable_outside_main, v.loc,
                        "controllable variable '" + v.name + "' outside module main");
    }
    for (const auto& a : m.assigns)
        if (!m.find_var(a.target))
            fail_at(Errc::unbound_identifier, a.loc, "assignment to undeclared variable '" + a.target + "'");
    spec.modules.push_back(std::move(m));
}

void Parser::parse_var_section(SmvModule& m)
{
    advance();  // VAR
    bool controllable = false;
    if (at(Tok::controllable_mark)) {
        controllable = true;
        if (m.name != "main")
            fail_at(Errc::controllable_outside_main, tok_.loc, "'--controllable' outside module main");
        advance();
    }
    while (!at_section_start()) {
        if (at(Tok::ellipsis)) {
            advance();
            continue;
        }
        SourceLoc loc = tok_.loc;
        std::string name = expect_ident("variable name");
        expect(Tok::colon, "':'");
        VarType type = parse_type();
        std::vector<ExprPtr> actuals;
        if (type.kind == VarType::Kind::instance && at(Tok::lparen)) {
            advance();
            if (!at(Tok::rparen)) {
                for (;;) {
                    actuals.push_back(parse_expr());
                    if (!at(Tok::comma))
                        break;
                    advance();
                }
            }
            expect(Tok::rparen, "')'");
        }
        expect(Tok::semi, "';'");
        declare(m, name, loc);
        if (type.kind == VarType::Kind::instance) {
            if (controllable)
                fail_at(Errc::controllable_non_boolean, loc, "controllable variable '" + name + "' must be boolean");
            m.instances.push_back({name, type.module, std::move(actuals), loc});
            continue;
        }
        if (controllable && type.kind != VarType::Kind::boolean)
            fail_at(Errc::controllable_non_boolean, loc, "controllable variable '" + name + "' must be boolean");
        m.vars.push_back({name, std::move(type), controllable, loc});
    }
}

long Parser::parse_signed_number()
{
    bool neg = false;
    if (at(Tok::minus)) {
        neg = true;
        advance();
    }
    if (!at(Tok::number))
        fail("expected an integer");
    long v = tok_.number;
    advance();
    return neg ? -v : v;
}

VarType Parser::parse_type()
{
    VarType t;
    if (at_keyword("boolean")) {
        advance();
        return t;
    }
    if (at(Tok::number) || at(Tok::minus)) {
        SourceLoc loc = tok_.loc;
        t.kind = VarType::Kind::range;
        t.lo = parse_signed_number();
        expect(Tok::dotdot, "'..'");
        t.hi = parse_signed_number();
        if (t.lo > t.hi)
            fail_at(Errc::type_mismatch, loc, "empty range " + std::to_string(t.lo) + ".." + std::to_string(t.hi));
        return t;
    }
    if (at(Tok::lbrace)) {
        SourceLoc loc = tok_.loc;
        advance();
        t.kind = VarType::Kind::enumeration;
        for (;;) {
            if (at(Tok::number) || at(Tok::minus))
                fail_at(Errc::unsupported, tok_.loc, "integer members in enumerations are not supported");
            std::string sym = expect_ident("enumeration symbol");
            if (std::find(t.symbols.begin(), t.symbols.end(), sym) != t.symbols.end())
                fail_at(Errc::duplicate_definition, loc, "enumeration symbol '" + sym + "' repeated");
            t.symbols.push_back(sym);
            if (!at(Tok::comma))
                break;
            advance();
        }
        expect(Tok::rbrace, "'}'");
        return t;
    }
    if (at(Tok::ident)) {
        if (at_keyword("array") || at_keyword("word") || at_keyword("integer") || at_keyword("real") ||
            at_keyword("process"))
            fail_at(Errc::unsupported, tok_.loc, "type '" + tok_.text + "' is not supported");
        t.kind = VarType::Kind::instance;
        t.module = tok_.text;
        advance();
        return t;
    }
    fail("expected a type");
}

void Parser::parse_define_section(SmvModule& m)
{
    while (!at_section_start()) {
        if (at(Tok::ellipsis)) {
            advance();
            continue;
        }
        SourceLoc loc = tok_.loc;
        std::string name = expect_ident("define name");
        expect(Tok::assign, "':='");
        ExprPtr e = parse_expr();
        expect(Tok::semi, "';'");
        declare(m, name, loc);
        m.defines.push_back({name, std::move(e), loc});
    }
}

void Parser::parse_assign_section(SmvModule& m)
{
    while (!at_section_start()) {
        if (at(Tok::ellipsis)) {
            advance();
            continue;
        }
        SourceLoc loc = tok_.loc;
        bool is_init = at_keyword("init");
        bool is_next = at_keyword("next");
        if (!is_init && !is_next) {
            std::string name = expect_ident("init(...) or next(...)");
            if (at(Tok::assign))
                fail_at(Errc::unsupported, loc, "direct assignment '" + name + " := ...' is not supported");
            fail("expected init(...) or next(...)");
        }
        advance();
        expect(Tok::lparen, "'('");
        std::string target = expect_ident("variable name");
        expect(Tok::rparen, "')'");
        expect(Tok::assign, "':='");
        ExprPtr e = parse_expr();
        expect(Tok::semi, "';'");

        auto it = std::find_if(m.assigns.begin(), m.assigns.end(), [&](const Assign& a) { return a.target == target; });
        if (it == m.assigns.end()) {
            m.assigns.push_back({target, nullptr, nullptr, loc});
            it = std::prev(m.assigns.end());
        }
        ExprPtr& slot = is_init ? it->init : it->next;
        if (slot)
            fail_at(Errc::duplicate_definition, loc,
                    std::string(is_init ? "init" : "next") + "(" + target + ") assigned twice");
        slot = std::move(e);
    }
}

void Parser::parse_automaton_section(SmvModule& m, bool sys, SourceLoc marker_loc)
{
    if (m.name != "main")
        fail_at(Errc::unsupported, marker_loc, "automaton sections are only allowed in module main");
    auto& list = sys ? m.sys_automata : m.env_automata;
    for (;;) {
        lex_.skip_trivia(false);
        if (lex_.peek_char() == '\0')
            return;
        std::size_t word_end = lex_.pos();
        std::string_view text = lex_.text();
        while (word_end < text.size() && is_ident_char(text[word_end]))
            ++word_end;
        if (is_section_keyword(text.substr(lex_.pos(), word_end - lex_.pos())))
            return;
        if (text.substr(lex_.pos()).starts_with("...")) {
            for (int i = 0; i < 3; ++i)
                lex_.bump();
            continue;
        }
        SourceLoc loc = lex_.loc();
        std::string entry;
        while (lex_.peek_char() != ';') {
            char c = lex_.peek_char();
            if (c == '\0' || c == '\n')
                throw Error(Errc::syntax, loc, "automaton entry must end with ';'");
            entry += c;
            lex_.bump();
        }
        lex_.bump();  // ';'
        while (!entry.empty() && std::isspace(static_cast<unsigned char>(entry.back())))
            entry.pop_back();
        AutomatonRef ref;
        ref.loc = loc;
        if (!entry.empty() && entry.front() == '!') {
            ref.negated = true;
            entry.erase(0, 1);
            while (!entry.empty() && std::isspace(static_cast<unsigned char>(entry.front())))
                entry.erase(0, 1);
        }
        if (entry.empty())
            throw Error(Errc::syntax, loc, "empty automaton path");
        ref.path = std::move(entry);
        list.push_back(std::move(ref));
    }
}

ExprPtr Parser::parse_implies()
{
    ExprPtr lhs = parse_iff();
    if (at(Tok::arrow)) {
        SourceLoc loc = tok_.loc;
        advance();
        return binary(BinaryOp::implies, lhs, parse_implies(), loc);
    }
    return lhs;
}

ExprPtr Parser::parse_iff()
{
    ExprPtr lhs = parse_or();
    while (at(Tok::dblarrow)) {
        SourceLoc loc = tok_.loc;
        advance();
        lhs = binary(BinaryOp::iff, lhs, parse_or(), loc);
    }
    return lhs;
}

ExprPtr Parser::parse_or()
{
    ExprPtr lhs = parse_and();
    for (;;) {
        SourceLoc loc = tok_.loc;
        BinaryOp op;
        if (at(Tok::bar))
            op = BinaryOp::lor;
        else if (at_keyword("xor"))
            op = BinaryOp::lxor;
        else if (at_keyword("xnor"))
            op = BinaryOp::lxnor;
        else
            return lhs;
        advance();
        lhs = binary(op, lhs, parse_and(), loc);
    }
}

ExprPtr Parser::parse_and()
{
    ExprPtr lhs = parse_cmp();
    while (at(Tok::amp)) {
        SourceLoc loc = tok_.loc;
        advance();
        lhs = binary(BinaryOp::land, lhs, parse_cmp(), loc);
    }
    return lhs;
}

ExprPtr Parser::parse_cmp()
{
    ExprPtr lhs = parse_add();
    BinaryOp op;
    switch (tok_.kind) {
    case Tok::eq: op = BinaryOp::eq; break;
    case Tok::ne: op = BinaryOp::ne; break;
    case Tok::lt: op = BinaryOp::lt; break;
    case Tok::le: op = BinaryOp::le; break;
    case Tok::gt: op = BinaryOp::gt; break;
    case Tok::ge: op = BinaryOp::ge; break;
    default: return lhs;
    }
    SourceLoc loc = tok_.loc;
    advance();
    return binary(op, lhs, parse_add(), loc);
}

ExprPtr Parser::parse_add()
{
    ExprPtr lhs = parse_unary();
    while (at(Tok::plus) || at(Tok::minus)) {
        SourceLoc loc = tok_.loc;
        BinaryOp op = at(Tok::plus) ? BinaryOp::add : BinaryOp::sub;
        advance();
        lhs = binary(op, lhs, parse_unary(), loc);
    }
    return lhs;
}

ExprPtr Parser::parse_unary()
{
    if (at(Tok::bang) || at(Tok::minus)) {
        auto e = std::make_shared<Expr>();
        e->kind = ExprKind::unary;
        e->loc = tok_.loc;
        bool neg = at(Tok::minus);
        e->unary_op = neg ? UnaryOp::neg : UnaryOp::lnot;
        advance();
        ExprPtr operand = parse_unary();
        if (neg && operand->kind == ExprKind::int_const) {
            auto c = std::make_shared<Expr>(*operand);
            c->int_value = -c->int_value;
            c->loc = e->loc;
            return c;
        }
        e->args = {std::move(operand)};
        return e;
    }
    return parse_atom();
}

ExprPtr Parser::parse_atom()
{
    auto e = std::make_shared<Expr>();
    e->loc = tok_.loc;
    if (at(Tok::number)) {
        e->kind = ExprKind::int_const;
        e->int_value = tok_.number;
        advance();
        return e;
    }
    if (at(Tok::lparen)) {
        advance();
        ExprPtr inner = parse_expr();
        expect(Tok::rparen, "')'");
        return inner;
    }
    if (at_keyword("TRUE") || at_keyword("FALSE")) {
        e->kind = ExprKind::bool_const;
        e->bool_value = at_keyword("TRUE");
        advance();
        return e;
    }
    if (at_keyword("case")) {
        advance();
        e->kind = ExprKind::case_expr;
        while (!at_keyword("esac")) {
            if (at(Tok::eof))
                fail("unterminated case expression");
            ExprPtr guard = parse_expr();
            expect(Tok::colon, "':'");
            ExprPtr value = parse_expr();
            expect(Tok::semi, "';'");
            e->branches.push_back({std::move(guard), std::move(value)});
        }
        advance();
        if (e->branches.empty())
            fail_at(Errc::syntax, e->loc, "empty case expression");
        return e;
    }
    if (at_keyword("next") || at_keyword("init")) {
        fail_at(Errc::unsupported, tok_.loc, "'" + tok_.text + "(...)' inside expressions is not supported");
    }
    if (at(Tok::lbrace))
        fail_at(Errc::unsupported, tok_.loc, "set expressions are not supported");
    if (at(Tok::ident)) {
        e->kind = ExprKind::name;
        e->parts.push_back(tok_.text);
        advance();
        while (at(Tok::dot)) {
            advance();
            e->parts.push_back(expect_ident("member name"));
        }
        if (at(Tok::lparen))
            fail_at(Errc::unsupported, e->loc, "function application '" + e->dotted() + "(...)' is not supported");
        return e;
    }
    fail("expected an expression" + (tok_.text.empty() ? std::string() : ", found '" + tok_.text + "'"));
}

}  // namespace

SmvSpec parse_smv(std::string_view text)
{
    return Parser(text).run();
}

}  // namespace smvsynth::smv
