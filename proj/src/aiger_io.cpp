#include <charconv>
#include <fstream>
#include <sstream>

#include "smvsynth/aig.hpp"
#include "smvsynth/error.hpp"

namespace smvsynth::aig {

namespace {

class Numbering {
public:
    explicit Numbering(const AigerDoc& doc) : var_(doc.aig.num_nodes(), 0)
    {
        std::uint32_t next = 1;
        for (const auto& in : doc.inputs)
            var_[node_of(in.lit)] = next++;
        for (const auto& la : doc.latches)
            var_[node_of(la.lit)] = next++;
        auto mark = doc.aig.cone(doc.roots());
        for (std::uint32_t n = 1; n < doc.aig.num_nodes(); ++n) {
            if (mark[n] && doc.aig.is_and(n)) {
                var_[n] = next++;
                ands_.push_back(n);
            }
        }
        max_var_ = next - 1;
    }

    std::uint32_t file_lit(Lit l) const { return 2 * var_[node_of(l)] + (l & 1u); }
    const std::vector<std::uint32_t>& ands() const { return ands_; }
    std::uint32_t max_var() const { return max_var_; }

private:
    std::vector<std::uint32_t> var_;
    std::vector<std::uint32_t> ands_;
    std::uint32_t max_var_ = 0;
};

}  // namespace

std::string write_aiger(const AigerDoc& doc)
{
    doc.validate();
    Numbering num(doc);
    std::ostringstream out;
    out << "aag " << num.max_var() << ' ' << doc.inputs.size() << ' ' << doc.latches.size() << ' '
        << doc.outputs.size() << ' ' << num.ands().size();
    if (doc.format == Format::new_format)
        out << ' ' << doc.bad.size() << ' ' << doc.constraints.size() << ' ' << doc.justice.size() << " 0";
    out << '\n';

    for (const auto& in : doc.inputs)
        out << num.file_lit(in.lit) << '\n';
    for (const auto& la : doc.latches)
        out << num.file_lit(la.lit) << ' ' << num.file_lit(la.next) << '\n';
    for (const auto& o : doc.outputs)
        out << num.file_lit(o.lit) << '\n';
    for (const auto& b : doc.bad)
        out << num.file_lit(b.lit) << '\n';
    for (const auto& c : doc.constraints)
        out << num.file_lit(c.lit) << '\n';
    for (const auto& j : doc.justice)
        out << j.lits.size() << '\n';
    for (const auto& j : doc.justice)
        for (Lit l : j.lits)
            out << num.file_lit(l) << '\n';
    for (std::uint32_t n : num.ands()) {
        std::uint32_t a = num.file_lit(doc.aig.left(n));
        std::uint32_t b = num.file_lit(doc.aig.right(n));
        if (a < b)
            std::swap(a, b);
        out << num.file_lit(lit_of(n)) << ' ' << a << ' ' << b << '\n';
    }

    auto symbols = [&](char kind, const auto& items) {
        for (std::size_t i = 0; i < items.size(); ++i)
            if (!items[i].name.empty())
                out << kind << i << ' ' << items[i].name << '\n';
    };
    symbols('i', doc.inputs);
    symbols('l', doc.latches);
    symbols('o', doc.outputs);
    symbols('b', doc.bad);
    symbols('c', doc.constraints);
    symbols('j', doc.justice);
    if (!doc.comment.empty())
        out << "c\n" << doc.comment;
    return out.str();
}

namespace {

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    AigerDoc run();

private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw Error(Errc::malformed_aiger, SourceLoc{line_no_, 1}, msg);
    }

    bool next_line(std::string_view& line)
    {
        if (pos_ >= text_.size())
            return false;
        auto end = text_.find('\n', pos_);
        if (end == std::string_view::npos)
            end = text_.size();
        line = text_.substr(pos_, end - pos_);
        pos_ = end + 1;
        ++line_no_;
        return true;
    }

    std::string_view require_line(const char* what)
    {
        std::string_view line;
        if (!next_line(line))
            fail(std::string("unexpected end of file, expected ") + what);
        return line;
    }

    std::vector<std::uint32_t> numbers(std::string_view line, std::size_t min_count, std::size_t max_count)
    {
        std::vector<std::uint32_t> out;
        std::size_t i = 0;
        while (i < line.size()) {
            if (line[i] == ' ') {
                ++i;
                continue;
            }
            std::uint32_t v = 0;
            auto [p, ec] = std::from_chars(line.data() + i, line.data() + line.size(), v);
            if (ec != std::errc() || (p != line.data() + line.size() && *p != ' '))
                fail("expected an unsigned number in '" + std::string(line) + "'");
            out.push_back(v);
            i = static_cast<std::size_t>(p - line.data());
        }
        if (out.size() < min_count || out.size() > max_count)
            fail("wrong number of fields in '" + std::string(line) + "'");
        return out;
    }

    std::uint32_t literal(std::uint32_t file_lit)
    {
        if (file_lit / 2 > max_var_)
            fail("literal " + std::to_string(file_lit) + " out of range");
        return file_lit;
    }

    Lit image(std::uint32_t file_lit)
    {
        literal(file_lit);
        Lit base = image_[file_lit / 2];
        if (base == kUndefined)
            fail("literal " + std::to_string(file_lit) + " is not defined");
        return negate_if(base, file_lit & 1u);
    }

    void define_leaf(std::uint32_t file_lit, Lit l)
    {
        literal(file_lit);
        if (file_lit & 1u || file_lit < 2)
            fail("input/latch literal must be a positive variable");
        if (image_[file_lit / 2] != kUndefined)
            fail("variable " + std::to_string(file_lit / 2) + " defined twice");
        image_[file_lit / 2] = l;
    }

    static constexpr Lit kUndefined = UINT32_MAX;

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_no_ = 0;
    std::uint32_t max_var_ = 0;
    std::vector<Lit> image_;
};

AigerDoc Reader::run()
{
    AigerDoc doc;
    std::string_view header = require_line("header");
    if (!header.starts_with("aag "))
        fail("header must start with 'aag' (binary AIGER is not supported)");
    auto h = numbers(header.substr(4), 5, 9);
    max_var_ = h[0];
    std::uint32_t ni = h[1], nl = h[2], no = h[3], na = h[4];
    std::uint32_t nb = h.size() > 5 ? h[5] : 0;
    std::uint32_t nc = h.size() > 6 ? h[6] : 0;
    std::uint32_t nj = h.size() > 7 ? h[7] : 0;
    std::uint32_t nf = h.size() > 8 ? h[8] : 0;
    doc.format = h.size() > 5 ? Format::new_format : Format::old_format;
    if (static_cast<std::uint64_t>(ni) + nl + na > max_var_)
        fail("header: M is smaller than I + L + A");
    if (nf != 0)
        throw Error(Errc::unsupported, SourceLoc{line_no_, 1}, "fairness sections are not supported");
    image_.assign(static_cast<std::size_t>(max_var_) + 1, kUndefined);
    image_[0] = kFalse;

    for (std::uint32_t i = 0; i < ni; ++i) {
        auto v = numbers(require_line("input"), 1, 1);
        define_leaf(v[0], doc.add_input(""));
    }
    std::vector<std::uint32_t> latch_next;
    for (std::uint32_t i = 0; i < nl; ++i) {
        auto v = numbers(require_line("latch"), 2, 3);
        define_leaf(v[0], doc.add_latch(""));
        literal(v[1]);
        if (v.size() == 3 && v[2] != 0)
            throw Error(Errc::unsupported, SourceLoc{line_no_, 1}, "only zero-initialized latches are supported");
        latch_next.push_back(v[1]);
    }
    auto read_lits = [&](std::uint32_t count, const char* what) {
        std::vector<std::uint32_t> lits;
        for (std::uint32_t i = 0; i < count; ++i)
            lits.push_back(literal(numbers(require_line(what), 1, 1)[0]));
        return lits;
    };
    auto outputs = read_lits(no, "output");
    auto bads = read_lits(nb, "bad");
    auto constraints = read_lits(nc, "constraint");
    std::vector<std::uint32_t> justice_sizes;
    for (std::uint32_t i = 0; i < nj; ++i)
        justice_sizes.push_back(numbers(require_line("justice size"), 1, 1)[0]);
    std::vector<std::vector<std::uint32_t>> justice;
    for (std::uint32_t size : justice_sizes)
        justice.push_back(read_lits(size, "justice literal"));

    for (std::uint32_t i = 0; i < na; ++i) {
        auto v = numbers(require_line("and gate"), 3, 3);
        literal(v[0]);
        if (v[0] & 1u || v[0] < 2)
            fail("and-gate output must be a positive variable");
        if (image_[v[0] / 2] != kUndefined)
            fail("variable " + std::to_string(v[0] / 2) + " defined twice");
        for (std::uint32_t k : {v[1], v[2]}) {
            literal(k);
            if (image_[k / 2] == kUndefined)
                fail("non-topological and gate: operand " + std::to_string(k) + " is not defined yet");
        }
        image_[v[0] / 2] = doc.aig.land(image(v[1]), image(v[2]));
    }

    for (std::uint32_t i = 0; i < nl; ++i)
        doc.latches[i].next = image(latch_next[i]);
    for (auto l : outputs)
        doc.outputs.push_back({image(l), ""});
    for (auto l : bads)
        doc.bad.push_back({image(l), ""});
    for (auto l : constraints)
        doc.constraints.push_back({image(l), ""});
    for (const auto& group : justice) {
        Justice j;
        for (auto l : group)
            j.lits.push_back(image(l));
        doc.justice.push_back(std::move(j));
    }

    std::string_view line;
    while (next_line(line)) {
        if (line == "c") {
            doc.comment = std::string(text_.substr(std::min(pos_, text_.size())));
            break;
        }
        if (line.empty())
            fail("empty line in symbol table");
        char kind = line[0];
        auto space = line.find(' ');
        if (space == std::string_view::npos || space < 2)
            fail("malformed symbol line '" + std::string(line) + "'");
        std::uint32_t index = 0;
        auto digits = line.substr(1, space - 1);
        auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
        if (ec != std::errc() || p != digits.data() + digits.size())
            fail("malformed symbol index in '" + std::string(line) + "'");
        std::string name(line.substr(space + 1));
        auto assign = [&](auto& items) {
            if (index >= items.size())
                fail("symbol index out of range in '" + std::string(line) + "'");
            items[index].name = name;
        };
        switch (kind) {
        case 'i': assign(doc.inputs); break;
        case 'l': assign(doc.latches); break;
        case 'o': assign(doc.outputs); break;
        case 'b': assign(doc.bad); break;
        case 'c': assign(doc.constraints); break;
        case 'j': assign(doc.justice); break;
        default: fail("unknown symbol kind in '" + std::string(line) + "'");
        }
    }
    doc.validate();
    return doc;
}

}  // namespace

AigerDoc read_aiger(std::string_view text)
{
    return Reader(text).run();
}

AigerDoc read_aiger_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(Errc::io, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return read_aiger(buf.str());
}

void write_aiger_file(const AigerDoc& doc, const std::string& path)
{
    std::string text = write_aiger(doc);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(Errc::io, "cannot write " + path);
    out << text;
    if (!out)
        throw Error(Errc::io, "write failed for " + path);
}

}  // namespace smvsynth::aig
