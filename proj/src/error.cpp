#include "smvsynth/error.hpp"

namespace smvsynth {

const char* to_string(Errc code)
{
    switch (code) {
    case Errc::syntax: return "syntax error";
    case Errc::duplicate_module: return "duplicate module";
    case Errc::duplicate_definition: return "duplicate definition";
    case Errc::controllable_outside_main: return "controllable mark outside main";
    case Errc::controllable_non_boolean: return "controllable variable is not boolean";
    case Errc::missing_main: return "missing main module";
    case Errc::unbound_identifier: return "unbound identifier";
    case Errc::type_mismatch: return "type mismatch";
    case Errc::cyclic_instantiation: return "cyclic instantiation";
    case Errc::cyclic_define: return "cyclic define";
    case Errc::undefined_proposition: return "undefined proposition";
    case Errc::unsupported: return "unsupported construct";
    case Errc::malformed_xml: return "malformed XML";
    case Errc::bad_initial_states: return "bad initial state set";
    case Errc::unsupported_acceptance: return "unsupported acceptance";
    case Errc::bad_label: return "unparsable label";
    case Errc::nondeterministic: return "nondeterministic automaton";
    case Errc::not_safety: return "assumption is not a safety automaton";
    case Errc::illegal_negation: return "illegal negation";
    case Errc::malformed_aiger: return "malformed AIGER";
    case Errc::invalid_doc: return "invalid AIGER document";
    case Errc::justice_count: return "unexpected number of justice signals";
    case Errc::strategy_precondition: return "initial state is not winning";
    case Errc::state_space_too_large: return "state space too large";
    case Errc::io: return "I/O error";
    }
    return "error";
}

static std::string with_loc(SourceLoc loc, const std::string& message)
{
    return std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " + message;
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(message), code_(code)
{
}

Error::Error(Errc code, SourceLoc loc, const std::string& message)
    : std::runtime_error(with_loc(loc, message)), code_(code), loc_(loc)
{
}

}  // namespace smvsynth
