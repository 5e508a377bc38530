#include "smvsynth/pipeline.hpp"

#include <fstream>
#include <sstream>

#include "smvsynth/automata.hpp"
#include "smvsynth/compile.hpp"
#include "smvsynth/error.hpp"
#include "smvsynth/flatten.hpp"
#include "smvsynth/game.hpp"
#include "smvsynth/resolve.hpp"
#include "smvsynth/smv.hpp"
#include "smvsynth/transforms.hpp"

namespace smvsynth {

aig::AigerDoc spec_to_aag(std::string_view text, const std::filesystem::path& base_dir,
                          std::vector<std::string>* warnings)
{
    smv::ResolvedSpec rs = smv::resolve(smv::parse_smv(text));
    const smv::SmvModule& main = rs.spec().main();

    auto load = [&](const std::vector<smv::AutomatonRef>& refs, automata::Role role, const char* prefix) {
        std::vector<NamedMonitor> out;
        for (std::size_t i = 0; i < refs.size(); ++i) {
            const auto& r = refs[i];
            std::filesystem::path p = r.path;
            if (p.is_relative())
                p = base_dir / p;
            automata::BuchiAutomaton a;
            try {
                a = automata::validate_for_role(automata::parse_gff_file(p.string()), role, r.negated);
                smv::check_propositions(rs, a.props);
            } catch (const Error& e) {
                throw Error(e.code(), r.loc, std::string(e.what()) + " (automaton " + r.path + ")");
            }
            if (warnings)
                for (const auto& w : a.warnings)
                    warnings->push_back(p.string() + ": " + w);
            out.push_back({prefix + std::to_string(i), automata::to_monitor(a)});
        }
        return out;
    };
    auto sys = load(main.sys_automata, automata::Role::guarantee, "__sys");
    auto env = load(main.env_automata, automata::Role::assumption, "__env");
    flat::FlatModel model = flat::flatten(rs, warnings);
    return compile(model, sys, env);
}

aig::AigerDoc spec_file_to_aag(const std::filesystem::path& path, std::vector<std::string>* warnings)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(Errc::io, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return spec_to_aag(buf.str(), path.parent_path(), warnings);
}

aig::AigerDoc to_standard(const aig::AigerDoc& doc, unsigned k)
{
    if (!doc.justice.empty())
        return justice_to_safety(doc, k);
    aig::AigerDoc with_just = doc;
    with_just.justice.push_back({{aig::kTrue}, "just"});
    return justice_to_safety(with_just, k);
}

SynthResult synthesize(const aig::AigerDoc& game, bool extract)
{
    Game g(game);
    bdd::Bdd w = g.solve();
    SynthResult r;
    r.realizable = g.realizable(w);
    if (r.realizable && extract)
        r.model = strategy_to_circuit(g, extract_strategy(g, w));
    return r;
}

}  // namespace smvsynth
