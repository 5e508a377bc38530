#pragma once

// Format-level rewrites of extended-format game circuits.

#include "smvsynth/aig.hpp"

namespace smvsynth {

// Replaces GF just by G(just | X just | ... | X^k just) with a saturating
// counter, and folds the constraints into an "environment failed" latch. The
// result is an old-format doc with one output named "bad".
aig::AigerDoc justice_to_safety(const aig::AigerDoc& doc, unsigned k);

// Adds a fresh uncontrollable input "aux" and a waiting/checking/dead monitor
// so that the result has a fair trace (GF just') exactly when the model has a
// trace with G inv & FG !just.
aig::AigerDoc reverse_justice(const aig::AigerDoc& model, aig::Lit just);
aig::AigerDoc reverse_justice(const aig::AigerDoc& model);

}  // namespace smvsynth
