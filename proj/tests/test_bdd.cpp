#include <doctest.h>

#include <bit>
#include <cstdint>
#include <random>

#include "smvsynth/bdd.hpp"

using namespace smvsynth::bdd;

namespace {

// Six-variable functions as 64-bit truth tables, row r assigns var i = bit i of r.
constexpr unsigned N = 6;
using Table = std::uint64_t;

Table var_table(unsigned v)
{
    Table t = 0;
    for (unsigned r = 0; r < 64; ++r)
        if ((r >> v) & 1u)
            t |= Table{1} << r;
    return t;
}

std::vector<bool> row(unsigned r)
{
    std::vector<bool> a(N);
    for (unsigned i = 0; i < N; ++i)
        a[i] = (r >> i) & 1u;
    return a;
}

struct Pair {
    Bdd f;
    Table t;
};

Pair random_fn(Manager& m, std::mt19937& rng, int depth)
{
    std::uniform_int_distribution<int> op(0, depth > 0 ? 5 : 0);
    std::uniform_int_distribution<unsigned> var(0, N - 1);
    switch (op(rng)) {
    case 0: {
        unsigned v = var(rng);
        return {m.var(v), var_table(v)};
    }
    case 1: {
        auto a = random_fn(m, rng, depth - 1);
        return {~a.f, ~a.t};
    }
    case 2: {
        auto a = random_fn(m, rng, depth - 1), b = random_fn(m, rng, depth - 1);
        return {a.f & b.f, a.t & b.t};
    }
    case 3: {
        auto a = random_fn(m, rng, depth - 1), b = random_fn(m, rng, depth - 1);
        return {a.f | b.f, a.t | b.t};
    }
    case 4: {
        auto a = random_fn(m, rng, depth - 1), b = random_fn(m, rng, depth - 1);
        return {a.f ^ b.f, a.t ^ b.t};
    }
    default: {
        auto s = random_fn(m, rng, depth - 1), a = random_fn(m, rng, depth - 1), b = random_fn(m, rng, depth - 1);
        return {m.ite(s.f, a.f, b.f), (s.t & a.t) | (~s.t & b.t)};
    }
    }
}

Table table_of(const Manager& m, const Bdd& f)
{
    Table t = 0;
    for (unsigned r = 0; r < 64; ++r)
        if (m.eval(f, row(r)))
            t |= Table{1} << r;
    return t;
}

Table quantify_table(Table t, unsigned v, bool exists)
{
    Table r = 0;
    for (unsigned x = 0; x < 64; ++x) {
        bool a = (t >> (x & ~(1u << v))) & 1u, b = (t >> (x | (1u << v))) & 1u;
        if (exists ? (a || b) : (a && b))
            r |= Table{1} << x;
    }
    return r;
}

}  // namespace

TEST_CASE("constants and variables")
{
    Manager m(N);
    CHECK(m.zero().is_false());
    CHECK(m.one().is_true());
    CHECK((m.var(0) & m.nvar(0)).is_false());
    CHECK((m.var(3) | m.nvar(3)).is_true());
    CHECK(table_of(m, m.var(2)) == var_table(2));
}

TEST_CASE("random formulas agree with truth tables and are canonical")
{
    Manager m(N);
    std::mt19937 rng(7);
    std::vector<Pair> seen;
    for (int i = 0; i < 300; ++i) {
        Pair p = random_fn(m, rng, 4);
        REQUIRE(table_of(m, p.f) == p.t);
        for (const auto& q : seen)
            CHECK((q.f == p.f) == (q.t == p.t));
        if (seen.size() < 60)
            seen.push_back(p);
        CHECK(m.sat_count(p.f, N) == doctest::Approx(std::popcount(p.t)));
        CHECK(p.f.implies(p.f | m.var(0)));
    }
}

TEST_CASE("quantification, cofactors and cubes")
{
    Manager m(N);
    std::mt19937 rng(11);
    for (int i = 0; i < 200; ++i) {
        Pair p = random_fn(m, rng, 4);
        unsigned v = i % N, w = (i + 2) % N;
        Table ex = quantify_table(quantify_table(p.t, v, true), w, true);
        Table fa = quantify_table(quantify_table(p.t, v, false), w, false);
        std::vector<Var> vs{v, w};
        CHECK(table_of(m, m.exists(p.f, vs)) == ex);
        CHECK(table_of(m, m.forall(p.f, vs)) == fa);
        CHECK(m.exists_cube(p.f, m.cube(vs)) == m.exists(p.f, vs));
        CHECK(m.forall_cube(p.f, m.cube(vs)) == m.forall(p.f, vs));

        Bdd c1 = m.cofactor(p.f, v, true), c0 = m.cofactor(p.f, v, false);
        CHECK(m.ite(m.var(v), c1, c0) == p.f);
        for (Var s : m.support(c1))
            CHECK(s != v);

        auto cube = m.pick_cube(p.f);
        CHECK(cube.has_value() == (p.t != 0));
        if (cube) {
            std::vector<bool> a(N);
            for (unsigned k = 0; k < N; ++k)
                a[k] = (*cube)[k] == 1;
            CHECK(m.eval(p.f, a));
        }
    }
}

TEST_CASE("simultaneous substitution")
{
    Manager m(N);
    std::mt19937 rng(3);
    for (int i = 0; i < 150; ++i) {
        Pair f = random_fn(m, rng, 3), g = random_fn(m, rng, 3), h = random_fn(m, rng, 3);
        // x0 := g, x1 := h simultaneously
        Table expect = 0;
        for (unsigned r = 0; r < 64; ++r) {
            unsigned r2 = r & ~3u;
            r2 |= ((g.t >> r) & 1u) ? 1u : 0u;
            r2 |= ((h.t >> r) & 1u) ? 2u : 0u;
            if ((f.t >> r2) & 1u)
                expect |= Table{1} << r;
        }
        std::map<Var, Bdd> sub{{0, g.f}, {1, h.f}};
        CHECK(table_of(m, m.substitute(f.f, sub)) == expect);
        std::vector<Bdd> table{g.f, h.f};
        CHECK(table_of(m, m.vector_compose(f.f, table)) == expect);
    }
}

TEST_CASE("swap of two variables through substitution")
{
    Manager m(2);
    Bdd f = m.var(0) & m.nvar(1);
    Bdd s = m.substitute(f, {{0, m.var(1)}, {1, m.var(0)}});
    CHECK(s == (m.var(1) & m.nvar(0)));
}

TEST_CASE("support and size")
{
    Manager m(N);
    Bdd f = (m.var(1) & m.var(4)) | m.var(5);
    CHECK(m.support(f) == std::vector<Var>{1, 4, 5});
    CHECK(m.dag_size(m.one()) == 0);  // internal nodes only
    CHECK(m.dag_size(m.var(0)) == 1);
    CHECK(m.dag_size(f) == 3);
}
