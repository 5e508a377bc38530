#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "smvsynth/aig.hpp"
#include "smvsynth/error.hpp"
#include "smvsynth/mc.hpp"
#include "smvsynth/pipeline.hpp"
#include "smvsynth/transforms.hpp"

using namespace smvsynth;

namespace {

std::string summary(const aig::AigerDoc& d)
{
    return std::to_string(d.inputs.size()) + " inputs, " + std::to_string(d.latches.size()) + " latches, " +
           std::to_string(d.live_ands()) + " and gates, " + std::to_string(d.bad.size()) + " bad, " +
           std::to_string(d.constraints.size()) + " constraints, " + std::to_string(d.justice.size()) + " justice";
}

void report_trace(const aig::AigerDoc& doc, const mc::Trace& t, const std::string& path)
{
    std::string text = mc::format_trace(doc, t);
    std::cerr << text;
    if (!path.empty()) {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw Error(Errc::io, "cannot write " + path);
        out << text;
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Synthesis from extended SMV specifications through AIGER games"};
    app.require_subcommand(1);

    std::string in, out, trace_path;
    unsigned k = 0;
    bool standard = false, extended = false, only_realizability = false, existential = false;

    auto* spec2aag = app.add_subcommand("spec2aag", "compile a specification into a game circuit");
    spec2aag->add_option("spec", in, "specification (.smv)")->required();
    spec2aag->add_option("-o,--output", out, "output .aag")->required();
    auto* std_flag = spec2aag->add_flag("--standard", standard, "emit a SYNTCOMP safety game (needs --k)");
    auto* ext_flag = spec2aag->add_flag("--extended", extended, "emit the bad/constraint/justice game (default)");
    auto* k_opt = spec2aag->add_option("--k", k, "liveness window for --standard");
    std_flag->excludes(ext_flag);
    std_flag->needs(k_opt);

    auto* just2safe = app.add_subcommand("just2safe", "replace the justice literal by a bounded window");
    just2safe->add_option("input", in, "game (.aag)")->required();
    just2safe->add_option("-o,--output", out, "output .aag")->required();
    just2safe->add_option("--k", k, "liveness window")->required();

    auto* synth = app.add_subcommand("synth", "solve a game and write the synthesized model");
    synth->add_option("input", in, "game (.aag)")->required();
    auto* synth_out = synth->add_option("-o,--output", out, "model (.aag)");
    synth->add_flag("--print-realizability-only", only_realizability, "solve without extracting a strategy");

    auto* hwmcc = app.add_subcommand("synt2hwmcc", "prepare a model for existential fair-trace checking");
    hwmcc->add_option("model", in, "model (.aag)")->required();
    hwmcc->add_option("-o,--output", out, "output .aag")->required();

    auto* mcheck = app.add_subcommand("mc", "model check a synthesized model");
    mcheck->add_option("model", in, "model (.aag)")->required();
    mcheck->add_flag("--existential", existential, "search for a fair trace of the justice literal");
    mcheck->add_option("--trace", trace_path, "also write the counterexample or witness here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (spec2aag->parsed()) {
            std::vector<std::string> warnings;
            aig::AigerDoc doc = spec_file_to_aag(in, &warnings);
            for (const auto& w : warnings)
                std::cerr << "warning: " << w << '\n';
            if (standard)
                doc = to_standard(doc, k);
            aig::write_aiger_file(doc, out);
            std::cout << "spec2aag: wrote " << out << " (" << summary(doc) << ")\n";
            return 0;
        }
        if (just2safe->parsed()) {
            aig::AigerDoc doc = to_standard(aig::read_aiger_file(in), k);
            aig::write_aiger_file(doc, out);
            std::cout << "just2safe: wrote " << out << " with k=" << k << " (" << summary(doc) << ")\n";
            return 0;
        }
        if (synth->parsed()) {
            if (!only_realizability && synth_out->count() == 0) {
                std::cerr << "synth: --output is required unless --print-realizability-only is given\n";
                return 2;
            }
            SynthResult r = synthesize(aig::read_aiger_file(in), !only_realizability);
            if (!r.realizable) {
                std::cout << "UNREALIZABLE\n";
                return 1;
            }
            if (r.model) {
                aig::write_aiger_file(*r.model, out);
                std::cerr << "synth: wrote " << out << " (" << summary(*r.model) << ")\n";
            }
            std::cout << "REALIZABLE\n";
            return 0;
        }
        if (hwmcc->parsed()) {
            aig::AigerDoc doc = reverse_justice(aig::read_aiger_file(in));
            aig::write_aiger_file(doc, out);
            std::cout << "synt2hwmcc: wrote " << out << " (" << summary(doc) << ")\n";
            return 0;
        }
        if (mcheck->parsed()) {
            aig::AigerDoc doc = aig::read_aiger_file(in);
            if (existential) {
                mc::Verdict v = mc::find_fair_trace(doc);
                if (v.holds) {
                    std::cout << "NO FAIR TRACE\n";
                    return 0;
                }
                std::cout << "FAIR TRACE FOUND\n";
                report_trace(doc, v.trace, trace_path);
                return 1;
            }
            mc::Verdict safety = mc::check_safety(doc);
            if (!safety.holds) {
                std::cout << "VIOLATED safety\n";
                report_trace(doc, safety.trace, trace_path);
                return 1;
            }
            mc::Verdict live = mc::check_justice_universal(doc);
            if (!live.holds) {
                std::cout << "VIOLATED justice\n";
                report_trace(doc, live.trace, trace_path);
                return 1;
            }
            std::cout << "HOLDS\n";
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
