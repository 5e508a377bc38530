#pragma once

// FlatModel plus guarantee/assumption monitors to an extended-format game
// circuit: one bad literal per guarantee monitor, one constraint per
// assumption monitor, and at most one justice literal.

#include <string>
#include <vector>

#include "smvsynth/aig.hpp"
#include "smvsynth/automata.hpp"
#include "smvsynth/flatten.hpp"

namespace smvsynth {

struct NamedMonitor {
    std::string name;  // prefix of the monitor's latch names
    automata::Monitor monitor;
};

// A fair signal is trivial when every state is accepting or a bad trap: under
// G !bad it then holds at every step and needs no justice.
bool fair_is_trivial(const automata::Monitor& m);

aig::AigerDoc compile(const flat::FlatModel& model, const std::vector<NamedMonitor>& sys,
                      const std::vector<NamedMonitor>& env);

}  // namespace smvsynth
