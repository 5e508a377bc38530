#pragma once

// Symbolic solver for games with objective (!bad W !inv) & (G inv -> GF just),
// environment moving first, and memory-less strategy extraction.

#include <vector>

#include "smvsynth/aig.hpp"
#include "smvsynth/bdd.hpp"
#include "smvsynth/symbolic.hpp"

namespace smvsynth {

class Game {
public:
    // Takes bad/inv/just from the doc's sections; an old-format doc uses its
    // outputs as bad. A justice literal that reads inputs is first delayed
    // through a new latch.
    explicit Game(const aig::AigerDoc& doc);

    SymbolicModel& model() { return model_; }
    const aig::AigerDoc& doc() const { return model_.doc(); }
    bdd::Manager& mgr() { return model_.mgr(); }
    bool just_delayed() const { return just_delayed_; }

    const bdd::Bdd& bad() const { return bad_; }
    const bdd::Bdd& inv() const { return inv_; }
    const bdd::Bdd& just() const { return just_; }

    // Forall U exists C: !inv | (!bad & target(delta)).
    bdd::Bdd cpre(const bdd::Bdd& target);
    // Greatest fixpoint of Z = mu Y. cpre((just & Z) | Y).
    bdd::Bdd solve();
    // mu Y. cpre((just & z) | Y), keeping every iterate (first entry FALSE).
    std::vector<bdd::Bdd> layers(const bdd::Bdd& z);

    bool realizable(const bdd::Bdd& winning) const { return model_.contains_initial(winning); }

private:
    bool just_delayed_ = false;  // set while model_ is built
    SymbolicModel model_;
    bdd::Bdd bad_, inv_, just_;
    bdd::Bdd u_cube_, c_cube_;
};

struct Strategy {
    bdd::Bdd winning;
    // One function over latches and uncontrollable inputs per controllable
    // input, in the doc's controllable-input order.
    std::vector<bdd::Bdd> functions;
};

Strategy extract_strategy(Game& g, const bdd::Bdd& winning);

// Replaces each controllable input of the game's doc by a multiplexer cone of
// its strategy function.
aig::AigerDoc strategy_to_circuit(Game& g, const Strategy& s);

}  // namespace smvsynth
