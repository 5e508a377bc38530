#pragma once

// Reference interpreter for resolved SMV specifications. Works on typed values
// directly (no bit encoding), so flattening can be checked against it.

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "smvsynth/resolve.hpp"

namespace oracle {

using Value = std::variant<bool, long, std::string>;
using Env = std::map<std::string, Value>;  // qualified variable name -> value

struct VarInfo {
    std::string name;  // qualified
    smvsynth::smv::Type type;
    bool is_input = false;
    bool controllable = false;
};

class SmvInterpreter {
public:
    explicit SmvInterpreter(const smvsynth::smv::ResolvedSpec& rs);

    const std::vector<VarInfo>& vars() const { return vars_; }
    std::vector<Value> domain(const VarInfo& v) const;

    Env initial() const;
    // Latch values of the following step; `env` holds latches and inputs.
    Env step(const Env& env) const;
    // A define by qualified name ("h.reached").
    Value define(const Env& env, const std::string& qualified) const;

    // Position of the value in its declaration, the flat encoding's code.
    static unsigned code_of(const smvsynth::smv::Type& t, const Value& v);

private:
    Value eval(const smvsynth::smv::Scope& s, const smvsynth::smv::Expr& e, const Env& env) const;

    const smvsynth::smv::ResolvedSpec& rs_;
    std::vector<VarInfo> vars_;
};

}  // namespace oracle
