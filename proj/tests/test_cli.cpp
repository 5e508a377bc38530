#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "smvsynth/aig.hpp"
#include "smvsynth/mc.hpp"

namespace fs = std::filesystem;
using namespace smvsynth;

namespace {

struct Run {
    int code;
    std::string out;
};

fs::path scratch()
{
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("smvsynth_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

Run run(const std::string& args)
{
    fs::path log = scratch() / "log.txt";
    std::string cmd = std::string("\"") + CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
    int st = std::system(cmd.c_str());
    std::ifstream in(log);
    std::ostringstream s;
    s << in.rdbuf();
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, s.str()};
}

std::string q(const fs::path& p)
{
    return "\"" + p.string() + "\"";
}

bool contains(const std::string& hay, const std::string& needle)
{
    return hay.find(needle) != std::string::npos;
}

const fs::path kExample = fs::path(FIXTURE_DIR) / "example" / "complete.smv";
const fs::path kHuffman = fs::path(BENCH_DIR) / "huffman4" / "huffman4.smv";

}  // namespace

TEST_CASE("spec2aag writes the extended game")
{
    fs::path out = scratch() / "example.aag";
    Run r = run("spec2aag " + q(kExample) + " -o " + q(out));
    CHECK(r.code == 0);
    CHECK(contains(r.out, "5 inputs, 11 latches"));
    aig::AigerDoc d = aig::read_aiger_file(out.string());
    CHECK(d.format == aig::Format::new_format);
    CHECK(d.bad.size() == 2);
    CHECK(d.constraints.size() == 2);
    CHECK(d.justice.size() == 1);
    CHECK(d.controllable_inputs() == std::vector<std::size_t>{4});

    Run e = run("spec2aag " + q(kExample) + " --extended -o " + q(scratch() / "example_e.aag"));
    CHECK(e.code == 0);
}

TEST_CASE("spec2aag flag combinations")
{
    CHECK(run("spec2aag " + q(kExample) + " --standard -o " + q(scratch() / "x.aag")).code == 2);
    CHECK(run("spec2aag " + q(kExample) + " --standard --extended --k 2 -o " + q(scratch() / "x.aag")).code == 2);
    fs::path s = scratch() / "std.aag";
    CHECK(run("spec2aag " + q(kExample) + " --standard --k 2 -o " + q(s)).code == 0);
    aig::AigerDoc d = aig::read_aiger_file(s.string());
    CHECK(d.format == aig::Format::old_format);
    CHECK(d.outputs.size() == 1);
    CHECK(d.justice.empty());
}

TEST_CASE("errors are reported with exit code 2")
{
    fs::path bad = scratch() / "bad.smv";
    std::ofstream(bad) << "MODULE main\nVAR x : boolean\nASSIGN next(x) := ;\n";
    Run r = run("spec2aag " + q(bad) + " -o " + q(scratch() / "bad.aag"));
    CHECK(r.code == 2);
    CHECK(contains(r.out, "error"));
    CHECK(contains(r.out, "3:1"));

    Run m = run("synth " + q(scratch() / "missing.aag") + " --print-realizability-only");
    CHECK(m.code == 2);
    CHECK(run("synth " + q(scratch() / "missing.aag")).code == 2);  // no --output
    CHECK(run("no-such-command").code == 2);
}

TEST_CASE("extended pipeline on the example")
{
    fs::path game = scratch() / "ex.aag", model = scratch() / "ex_model.aag", rj = scratch() / "ex_rj.aag";
    REQUIRE(run("spec2aag " + q(kExample) + " -o " + q(game)).code == 0);
    Run s = run("synth " + q(game) + " -o " + q(model));
    CHECK(s.code == 0);
    CHECK(contains(s.out, "REALIZABLE"));
    aig::AigerDoc m = aig::read_aiger_file(model.string());
    CHECK(m.controllable_inputs().empty());

    Run v = run("mc " + q(model));
    CHECK(v.code == 0);
    CHECK(contains(v.out, "HOLDS"));

    REQUIRE(run("synt2hwmcc " + q(model) + " -o " + q(rj)).code == 0);
    Run f = run("mc --existential " + q(rj));
    CHECK(f.code == 0);
    CHECK(contains(f.out, "NO FAIR TRACE"));
}

TEST_CASE("bounded window games on the benchmark")
{
    fs::path game = scratch() / "huff.aag";
    REQUIRE(run("spec2aag " + q(kHuffman) + " -o " + q(game)).code == 0);
    fs::path k2 = scratch() / "huff_k2.aag", k3 = scratch() / "huff_k3.aag";
    REQUIRE(run("just2safe " + q(game) + " --k 2 -o " + q(k2)).code == 0);
    REQUIRE(run("just2safe " + q(game) + " --k 3 -o " + q(k3)).code == 0);
    Run r2 = run("synth " + q(k2) + " --print-realizability-only");
    CHECK(r2.code == 1);
    CHECK(contains(r2.out, "UNREALIZABLE"));
    Run r3 = run("synth " + q(k3) + " --print-realizability-only");
    CHECK(r3.code == 0);
    CHECK(contains(r3.out, "REALIZABLE"));
}

TEST_CASE("mc reports violations with a trace")
{
    // l' = x, bad when l: violated after one step
    fs::path m = scratch() / "viol.aag", t = scratch() / "viol.trace";
    std::ofstream(m) << "aag 2 1 1 0 0 1\n2\n4 2\n4\ni0 x\nl0 l\nb0 err\n";
    Run r = run("mc " + q(m) + " --trace " + q(t));
    CHECK(r.code == 1);
    CHECK(contains(r.out, "VIOLATED safety"));
    std::ifstream in(t);
    std::string first;
    std::getline(in, first);
    CHECK(first == "inputs x");

    // justice on l with l' = x: some run avoids l forever
    fs::path j = scratch() / "just.aag";
    std::ofstream(j) << "aag 2 1 1 0 0 0 0 1\n2\n4 2\n1\n4\ni0 x\nl0 l\n";
    Run rj = run("mc " + q(j));
    CHECK(rj.code == 1);
    CHECK(contains(rj.out, "VIOLATED justice"));
    Run fe = run("mc --existential " + q(j));
    CHECK(fe.code == 1);
    CHECK(contains(fe.out, "FAIR TRACE FOUND"));
}
