#include "smvsynth/automata.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "smvsynth/error.hpp"

namespace smvsynth::automata {

namespace pt = boost::property_tree;

bool Label::eval(const std::map<std::string, bool>& letter) const
{
    for (const auto& l : lits) {
        auto it = letter.find(l.prop);
        if (it == letter.end())
            throw Error(Errc::bad_label, "letter has no value for proposition '" + l.prop + "'");
        if (it->second != l.positive)
            return false;
    }
    return true;
}

std::string Label::str() const
{
    if (lits.empty())
        return "True";
    std::string s;
    for (const auto& l : lits) {
        if (!s.empty())
            s += ' ';
        s += (l.positive ? "" : "~") + l.prop;
    }
    return s;
}

namespace {

bool valid_prop(std::string_view p)
{
    if (p.empty() || !(std::isalpha(static_cast<unsigned char>(p[0])) || p[0] == '_'))
        return false;
    return std::all_of(p.begin(), p.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '$' || c == '#';
    });
}

}  // namespace

Label parse_label(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::vector<std::string> toks;
    for (std::string t; in >> t;)
        toks.push_back(t);
    Label out;
    if (toks.size() == 1 && (toks[0] == "True" || toks[0] == "true"))
        return out;
    if (toks.empty())
        throw Error(Errc::bad_label, "empty transition label");
    for (const auto& t : toks) {
        Literal l;
        std::string_view body = t;
        if (body.starts_with('~')) {
            l.positive = false;
            body.remove_prefix(1);
        }
        if (!valid_prop(body) || body == "True" || body == "true" || body == "False" || body == "false")
            throw Error(Errc::bad_label, "unparsable label '" + std::string(text) +
                                             "': only True or space-separated literals p / ~p are supported");
        l.prop = std::string(body);
        auto clash = std::find_if(out.lits.begin(), out.lits.end(), [&](const Literal& x) { return x.prop == l.prop; });
        if (clash != out.lits.end()) {
            if (clash->positive != l.positive)
                throw Error(Errc::bad_label, "label '" + std::string(text) + "' uses '" + l.prop + "' with both signs");
            continue;
        }
        out.lits.push_back(std::move(l));
    }
    return out;
}

bool compatible(const Label& a, const Label& b)
{
    for (const auto& x : a.lits)
        for (const auto& y : b.lits)
            if (x.prop == y.prop && x.positive != y.positive)
                return false;
    return true;
}

std::optional<std::size_t> BuchiAutomaton::find_state(std::string_view id) const
{
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i] == id)
            return i;
    return std::nullopt;
}

std::vector<std::size_t> BuchiAutomaton::successors(std::size_t state, const std::map<std::string, bool>& letter) const
{
    std::vector<std::size_t> out;
    for (const auto& t : transitions)
        if (t.src == state && t.label.eval(letter))
            out.push_back(t.dst);
    return out;
}

bool BuchiAutomaton::is_trap(std::size_t state) const
{
    if (accepting[state])
        return false;
    bool any = false;
    for (const auto& t : transitions) {
        if (t.src != state)
            continue;
        if (t.dst != state)
            return false;
        any = true;
    }
    return any;
}

std::vector<std::size_t> BuchiAutomaton::reachable() const
{
    std::vector<bool> seen(states.size(), false);
    std::vector<std::size_t> order{initial}, stack{initial};
    seen[initial] = true;
    while (!stack.empty()) {
        std::size_t s = stack.back();
        stack.pop_back();
        for (const auto& t : transitions) {
            if (t.src == s && !seen[t.dst]) {
                seen[t.dst] = true;
                order.push_back(t.dst);
                stack.push_back(t.dst);
            }
        }
    }
    std::sort(order.begin(), order.end());
    return order;
}

namespace {

std::string lower(std::string_view s)
{
    std::string out(s);
    for (char& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

bool is(const std::string& key, std::string_view name)
{
    return lower(key) == name;
}

std::string trimmed(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::optional<std::string> attribute(const pt::ptree& node, std::string_view name)
{
    auto attrs = node.get_child_optional("<xmlattr>");
    if (!attrs)
        return std::nullopt;
    for (const auto& [k, v] : *attrs)
        if (is(k, name))
            return v.data();
    return std::nullopt;
}

const pt::ptree* child(const pt::ptree& node, std::string_view name)
{
    for (const auto& [k, v] : node)
        if (is(k, name))
            return &v;
    return nullptr;
}

bool is_meta(const std::string& key)
{
    return key == "<xmlattr>" || key == "<xmlcomment>";
}

}  // namespace

BuchiAutomaton parse_gff(std::string_view xml)
{
    pt::ptree tree;
    try {
        std::istringstream in{std::string(xml)};
        pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
    } catch (const pt::xml_parser_error& e) {
        throw Error(Errc::malformed_xml, SourceLoc{static_cast<int>(e.line()), 0}, e.message());
    }
    const pt::ptree* root = child(tree, "structure");
    if (root == nullptr)
        throw Error(Errc::malformed_xml, "missing <Structure> root element");

    BuchiAutomaton a;
    bool alphabet_declared = false;
    const pt::ptree* state_set = nullptr;
    const pt::ptree* init_set = nullptr;
    const pt::ptree* trans_set = nullptr;
    const pt::ptree* acc = nullptr;
    for (const auto& [k, v] : *root) {
        if (is_meta(k))
            continue;
        if (is(k, "alphabet")) {
            auto type = attribute(v, "type");
            if (type && lower(*type) != "propositional")
                throw Error(Errc::unsupported, "alphabet type '" + *type + "' is not supported; use Propositional");
            alphabet_declared = true;
            for (const auto& [pk, pv] : v) {
                if (is_meta(pk))
                    continue;
                if (!is(pk, "prop"))
                    throw Error(Errc::malformed_xml, "unexpected <" + pk + "> in <Alphabet>");
                std::string p = trimmed(pv.data());
                if (!valid_prop(p))
                    throw Error(Errc::bad_label, "invalid proposition name '" + p + "'");
                if (std::find(a.props.begin(), a.props.end(), p) == a.props.end())
                    a.props.push_back(p);
            }
        } else if (is(k, "stateset")) {
            state_set = &v;
        } else if (is(k, "initialstateset")) {
            init_set = &v;
        } else if (is(k, "transitionset")) {
            trans_set = &v;
        } else if (is(k, "acc")) {
            acc = &v;
        } else if (!is(k, "name") && !is(k, "description") && !is(k, "formula") && !is(k, "properties")) {
            a.warnings.push_back("ignoring element <" + k + ">");
        }
    }
    if (state_set == nullptr)
        throw Error(Errc::malformed_xml, "missing <StateSet>");
    if (acc == nullptr)
        throw Error(Errc::unsupported_acceptance, "missing <Acc> element; a Buchi acceptance set is required");

    for (const auto& [k, v] : *state_set) {
        if (is_meta(k))
            continue;
        if (!is(k, "state"))
            throw Error(Errc::malformed_xml, "unexpected <" + k + "> in <StateSet>");
        auto sid = attribute(v, "sid");
        if (!sid)
            sid = attribute(v, "id");
        if (!sid || trimmed(*sid).empty())
            throw Error(Errc::malformed_xml, "<State> without sid");
        std::string id = trimmed(*sid);
        if (a.find_state(id))
            throw Error(Errc::malformed_xml, "duplicate state id '" + id + "'");
        a.states.push_back(id);
    }
    if (a.states.empty())
        throw Error(Errc::malformed_xml, "automaton has no states");
    a.accepting.assign(a.states.size(), false);

    auto state_ref = [&](const std::string& text, const char* where) {
        auto s = a.find_state(trimmed(text));
        if (!s)
            throw Error(Errc::malformed_xml, std::string(where) + " names unknown state '" + trimmed(text) + "'");
        return *s;
    };

    std::vector<std::size_t> initial;
    if (init_set != nullptr)
        for (const auto& [k, v] : *init_set)
            if (!is_meta(k) && is(k, "stateid"))
                initial.push_back(state_ref(v.data(), "<InitialStateSet>"));
    if (initial.size() != 1)
        throw Error(Errc::bad_initial_states,
                    "expected exactly one initial state, found " + std::to_string(initial.size()));
    a.initial = initial[0];

    if (trans_set != nullptr) {
        for (const auto& [k, v] : *trans_set) {
            if (is_meta(k))
                continue;
            if (!is(k, "transition"))
                throw Error(Errc::malformed_xml, "unexpected <" + k + "> in <TransitionSet>");
            const pt::ptree* from = child(v, "from");
            const pt::ptree* to = child(v, "to");
            const pt::ptree* label = child(v, "label");
            if (from == nullptr || to == nullptr)
                throw Error(Errc::malformed_xml, "<Transition> needs <From> and <To>");
            if (label == nullptr)
                throw Error(Errc::bad_label, "<Transition> without <Label>");
            Transition t{state_ref(from->data(), "<From>"), parse_label(label->data()), state_ref(to->data(), "<To>")};
            for (const auto& l : t.label.lits) {
                if (std::find(a.props.begin(), a.props.end(), l.prop) != a.props.end())
                    continue;
                if (alphabet_declared)
                    throw Error(Errc::bad_label, "label uses '" + l.prop + "', which is not in the alphabet");
                a.props.push_back(l.prop);
            }
            a.transitions.push_back(std::move(t));
        }
    }

    auto type = attribute(*acc, "type");
    if (!type || lower(*type) != "buchi")
        throw Error(Errc::unsupported_acceptance,
                    "acceptance type '" + type.value_or("") + "' is not supported; only Buchi is");
    for (const auto& [k, v] : *acc)
        if (!is_meta(k) && is(k, "stateid"))
            a.accepting[state_ref(v.data(), "<Acc>")] = true;
    return a;
}

BuchiAutomaton parse_gff_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(Errc::io, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_gff(buf.str());
    } catch (const Error& e) {
        throw Error(e.code(), e.loc(), path + ": " + e.what());
    }
}

namespace {

// Letters (as cubes) not covered by any of `cubes`, split on propositions in
// alphabet order.
void uncovered(const std::vector<const Label*>& cubes, const std::vector<std::string>& props, Label partial,
               std::vector<Label>& out)
{
    if (cubes.empty()) {
        out.push_back(std::move(partial));
        return;
    }
    auto fixed = [&](const Literal& l) {
        return std::find(partial.lits.begin(), partial.lits.end(), l) != partial.lits.end();
    };
    for (const Label* c : cubes)
        if (std::all_of(c->lits.begin(), c->lits.end(), fixed))
            return;
    std::string split;
    for (const auto& p : props) {
        bool free = std::none_of(partial.lits.begin(), partial.lits.end(), [&](const Literal& l) { return l.prop == p; });
        bool used = std::any_of(cubes.begin(), cubes.end(), [&](const Label* c) {
            return std::any_of(c->lits.begin(), c->lits.end(), [&](const Literal& l) { return l.prop == p; });
        });
        if (free && used) {
            split = p;
            break;
        }
    }
    for (bool pos : {true, false}) {
        Label next = partial;
        next.lits.push_back({split, pos});
        std::vector<const Label*> rest;
        for (const Label* c : cubes)
            if (compatible(*c, next))
                rest.push_back(c);
        uncovered(rest, props, std::move(next), out);
    }
}

// reach[s][t]: t reachable from s in one or more steps.
std::vector<std::vector<bool>> reach_matrix(const BuchiAutomaton& a)
{
    std::size_t n = a.states.size();
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<std::size_t> stack{s};
        while (!stack.empty()) {
            std::size_t x = stack.back();
            stack.pop_back();
            for (const auto& t : a.transitions) {
                if (t.src == x && !r[s][t.dst]) {
                    r[s][t.dst] = true;
                    stack.push_back(t.dst);
                }
            }
        }
    }
    return r;
}

void complete(BuchiAutomaton& a)
{
    std::size_t trap = a.states.size();
    std::string trap_id = "__trap";
    while (a.find_state(trap_id))
        trap_id += "_";
    std::vector<Transition> added;
    for (std::size_t s = 0; s < trap; ++s) {
        std::vector<const Label*> cubes;
        for (const auto& t : a.transitions)
            if (t.src == s)
                cubes.push_back(&t.label);
        std::vector<Label> missing;
        uncovered(cubes, a.props, Label{}, missing);
        for (auto& m : missing)
            added.push_back({s, std::move(m), trap});
    }
    a.states.push_back(trap_id);
    a.accepting.push_back(false);
    a.transitions.insert(a.transitions.end(), added.begin(), added.end());
    a.transitions.push_back({trap, Label{}, trap});

    auto live = a.reachable();
    if (!std::binary_search(live.begin(), live.end(), trap)) {
        a.states.pop_back();
        a.accepting.pop_back();
        std::erase_if(a.transitions, [&](const Transition& t) { return t.src == trap || t.dst == trap; });
    }
}

void check_deterministic(const BuchiAutomaton& a)
{
    for (std::size_t i = 0; i < a.transitions.size(); ++i) {
        for (std::size_t j = i + 1; j < a.transitions.size(); ++j) {
            const auto& x = a.transitions[i];
            const auto& y = a.transitions[j];
            if (x.src == y.src && compatible(x.label, y.label))
                throw Error(Errc::nondeterministic,
                            "state '" + a.states[x.src] + "' has overlapping transitions labelled '" + x.label.str() +
                                "' and '" + y.label.str() +
                                "'; determinize the automaton (for example with GOAL) before using it");
        }
    }
}

void check_safety(const BuchiAutomaton& a)
{
    auto live = a.reachable();
    auto r = reach_matrix(a);
    for (std::size_t s : live) {
        if (a.accepting[s]) {
            for (const auto& t : a.transitions)
                if (t.src == s && !a.accepting[t.dst] && !a.is_trap(t.dst))
                    throw Error(Errc::not_safety, "assumption is not a safety automaton: accepting state '" +
                                                      a.states[s] + "' moves to non-accepting state '" +
                                                      a.states[t.dst] + "' that is not a trap");
        } else if (!a.is_trap(s) && r[s][s]) {
            throw Error(Errc::not_safety, "assumption is not a safety automaton: non-accepting state '" + a.states[s] +
                                              "' lies on a cycle");
        }
    }
}

}  // namespace

bool is_weak(const BuchiAutomaton& a)
{
    auto r = reach_matrix(a);
    for (std::size_t s = 0; s < a.states.size(); ++s)
        for (std::size_t t = s + 1; t < a.states.size(); ++t)
            if (r[s][t] && r[t][s] && a.accepting[s] != a.accepting[t])
                return false;
    return true;
}

BuchiAutomaton validate_for_role(BuchiAutomaton a, Role role, bool negated)
{
    complete(a);
    check_deterministic(a);
    if (negated) {
        if (!is_weak(a))
            throw Error(Errc::illegal_negation,
                        "cannot negate: a strongly connected component mixes accepting and rejecting states, so "
                        "swapping the accepting set would not complement the language");
        for (std::size_t s = 0; s < a.accepting.size(); ++s)
            a.accepting[s] = !a.accepting[s];
    }
    if (role == Role::assumption) {
        try {
            check_safety(a);
        } catch (const Error& e) {
            if (negated)
                throw Error(Errc::illegal_negation, std::string("negated ") + e.what());
            throw;
        }
    }
    return a;
}

Monitor to_monitor(const BuchiAutomaton& a)
{
    using namespace flat;
    Monitor m;
    m.automaton = a;
    m.state_bits = bits_for(a.states.size());
    m.init_code = static_cast<std::uint32_t>(a.initial);

    auto in_state = [&](std::size_t s) {
        BoolExpr c = constant(true);
        std::uint32_t v = m.latch_value(s);
        for (unsigned j = 0; j < m.state_bits; ++j) {
            BoolExpr bit = ref(Monitor::state_ref(j));
            c = land(c, (v >> j) & 1u ? bit : lnot(bit));
        }
        return c;
    };
    auto label_expr = [](const Label& l) {
        BoolExpr c = constant(true);
        for (const auto& lit : l.lits)
            c = land(c, lit.positive ? ref(lit.prop) : lnot(ref(lit.prop)));
        return c;
    };

    std::vector<BoolExpr> in;
    for (std::size_t s = 0; s < a.states.size(); ++s)
        in.push_back(in_state(s));
    m.next.assign(m.state_bits, constant(false));
    for (const auto& t : a.transitions) {
        BoolExpr fire = land(in[t.src], label_expr(t.label));
        std::uint32_t v = m.latch_value(t.dst);
        for (unsigned j = 0; j < m.state_bits; ++j)
            if ((v >> j) & 1u)
                m.next[j] = lor(m.next[j], fire);
    }
    m.bad = constant(false);
    m.fair = constant(false);
    for (std::size_t s = 0; s < a.states.size(); ++s) {
        if (a.accepting[s])
            m.fair = lor(m.fair, in[s]);
        if (a.is_trap(s))
            m.bad = lor(m.bad, in[s]);
    }
    return m;
}

namespace {

std::function<bool(const std::string&)> env_of(std::uint32_t latch, const std::map<std::string, bool>& letter)
{
    return [latch, &letter](const std::string& name) {
        if (name.starts_with("@s"))
            return ((latch >> std::stoul(name.substr(2))) & 1u) != 0;
        auto it = letter.find(name);
        if (it == letter.end())
            throw Error(Errc::bad_label, "letter has no value for proposition '" + name + "'");
        return it->second;
    };
}

}  // namespace

std::uint32_t Monitor::step(std::uint32_t latch, const std::map<std::string, bool>& letter) const
{
    auto env = env_of(latch, letter);
    std::uint32_t out = 0;
    for (unsigned j = 0; j < state_bits; ++j)
        if (flat::eval(next[j], env))
            out |= 1u << j;
    return out;
}

bool Monitor::is_bad(std::uint32_t latch) const
{
    std::map<std::string, bool> none;
    return flat::eval(bad, env_of(latch, none));
}

bool Monitor::is_fair(std::uint32_t latch) const
{
    std::map<std::string, bool> none;
    return flat::eval(fair, env_of(latch, none));
}

}  // namespace smvsynth::automata
