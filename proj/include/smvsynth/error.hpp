#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace smvsynth {

enum class Errc {
    syntax,
    duplicate_module,
    duplicate_definition,
    controllable_outside_main,
    controllable_non_boolean,
    missing_main,
    unbound_identifier,
    type_mismatch,
    cyclic_instantiation,
    cyclic_define,
    undefined_proposition,
    unsupported,
    malformed_xml,
    bad_initial_states,
    unsupported_acceptance,
    bad_label,
    nondeterministic,
    not_safety,
    illegal_negation,
    malformed_aiger,
    invalid_doc,
    justice_count,
    strategy_precondition,
    state_space_too_large,
    io,
};

const char* to_string(Errc code);

struct SourceLoc {
    int line = 0;
    int column = 0;
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message);
    Error(Errc code, SourceLoc loc, const std::string& message);

    Errc code() const { return code_; }
    SourceLoc loc() const { return loc_; }

private:
    Errc code_;
    SourceLoc loc_;
};

}  // namespace smvsynth
