#include <doctest.h>

#include <kndual/algebra.hh>
#include <kndual/error.hh>
#include <kndual/kn.hh>
#include <kndual/lattice.hh>

#include <random>
#include <set>

using namespace kndual;
using std::size_t;
using std::vector;

namespace
{
    auto algebra_from_orders(size_t n, const vector<std::pair<size_t, size_t>> & k_covers,
        const vector<std::pair<size_t, size_t>> & t_covers, vector<Element> neg, vector<std::string> names) -> FiniteAlgebra
    {
        auto k = lattice_tables(Poset::generated_by(n, k_covers));
        auto t = lattice_tables(Poset::generated_by(n, t_covers));
        Operations ops{k.meet, k.join, t.meet, t.join, std::move(neg), k.bot, k.top};
        return FiniteAlgebra(n, std::move(ops), std::move(names));
    }

    // The seven-valued default bilattice with its usual labels, listed in a
    // different order from K_1: t, f, T, B, dt, df, dT.
    auto seven() -> FiniteAlgebra
    {
        enum { t, f, T, B, dt, df, dT };
        return algebra_from_orders(7, {{B, dt}, {B, df}, {dt, dT}, {df, dT}, {dT, t}, {dT, f}, {t, T}, {f, T}},
            {{f, df}, {df, B}, {df, dT}, {B, dt}, {dT, dt}, {dt, t}, {f, T}, {T, t}}, {f, t, T, B, df, dt, dT},
            {"t", "f", "T", "B", "dt", "df", "dT"});
    }

    auto square(const FiniteAlgebra & a) -> FiniteAlgebra
    {
        return product({a, a});
    }

    auto relation_algebras(size_t n) -> std::set<Subset>
    {
        std::set<Subset> expected;
        auto full = Subset((3 * n + 4) * (3 * n + 4));
        full.set();
        expected.insert(full);
        for (size_t m = 0; m <= n; ++m) {
            auto s = s_nm(n, m);
            auto r = relation_subset(s), rc = relation_subset(s.converse());
            expected.insert(r);
            expected.insert(rc);
            expected.insert(r & rc);
        }
        return expected;
    }
}

TEST_CASE("generation")
{
    for (size_t n = 0; n <= 3; ++n) {
        auto k = build_kn(n).algebra;
        CHECK(generate(k, Subset(k.size())).count() == k.size());

        auto k2 = square(k);
        Subset seed(k2.size());
        seed.set(k.bot() * k.size() + k.bot());
        seed.set(k.top() * k.size() + k.top());
        Subset diagonal(k2.size());
        for (size_t a = 0; a < k.size(); ++a)
            diagonal.set(a * k.size() + a);
        CHECK(generate(k2, seed) == diagonal);

        Subset all(k2.size());
        all.set();
        CHECK(generate(k2, all) == all);
    }
}

TEST_CASE("generation is monotone and idempotent")
{
    auto k = build_kn(1).algebra;
    auto a = product({k, build_kn(0).algebra});
    std::mt19937 rng(99);
    std::bernoulli_distribution coin(0.08);
    for (int trial = 0; trial < 40; ++trial) {
        Subset s(a.size()), t(a.size());
        for (size_t x = 0; x < a.size(); ++x) {
            if (coin(rng))
                s.set(x);
            if (coin(rng))
                t.set(x);
        }
        auto gs = generate(a, s);
        CHECK(generate(a, gs) == gs);
        CHECK(s.is_subset_of(gs));
        CHECK(gs.is_subset_of(generate(a, s | t)));
    }
}

TEST_CASE("subalgebra census of K_n^2")
{
    for (size_t n = 0; n <= 4; ++n)
        CHECK(all_subalgebras(build_kn(n).algebra).size() == 1);
    for (size_t n = 0; n <= 2; ++n) {
        auto subs = all_subalgebras(square(build_kn(n).algebra));
        CHECK(subs.size() == 3 * n + 4);
        CHECK(std::set<Subset>(subs.begin(), subs.end()) == relation_algebras(n));
    }
}

TEST_CASE("homomorphism census")
{
    auto k0 = build_kn(0).algebra, k1 = build_kn(1).algebra;
    auto h = homs(k1, k0);
    REQUIRE(h.size() == 1);
    CHECK(h[0] == h_nm(1, 0));
    CHECK(homs(k0, k1).empty());

    for (auto [n, m] : {std::pair<size_t, size_t>{1, 1}, {2, 1}, {2, 2}}) {
        auto s = s_nm_algebra(n, m);
        auto km = build_kn(m).algebra;
        auto hs = homs(s, km);
        CHECK(hs.size() == 2);
        // Restrictions of the two projections, followed by h_{n,m}.
        auto h = h_nm(n, m);
        std::set<vector<Element>> expected;
        for (int side = 0; side < 2; ++side) {
            vector<Element> table;
            for (Element x = 0; x < s.size(); ++x) {
                auto name = s.name(x);
                auto comma = name.find(',');
                auto part = side == 0 ? name.substr(1, comma - 1) : name.substr(comma + 1, name.size() - comma - 2);
                table.push_back(h[*build_kn(n).algebra.index_of(part)]);
            }
            expected.insert(table);
        }
        CHECK(std::set<vector<Element>>(hs.begin(), hs.end()) == expected);
    }
}

TEST_CASE("congruences")
{
    auto k2 = build_kn(2).algebra;
    auto con = congruence_lattice(k2);
    CHECK(con.size() == 4);
    for (size_t i = 0; i + 1 < con.size(); ++i)
        CHECK(congruence_leq(con[i], con[i + 1]));
    std::set<Congruence> kernels;
    for (size_t m = 0; m <= 2; ++m)
        kernels.insert(kernel(h_nm(2, m)));
    kernels.insert(total_congruence(k2.size()));
    CHECK(std::set<Congruence>(con.begin(), con.end()) == kernels);

    CHECK(congruence_lattice(trivial_algebra()).size() == 1);
    for (auto & c : con)
        CHECK(is_congruence(k2, c));
}

TEST_CASE("quotients")
{
    for (size_t n = 0; n <= 2; ++n) {
        auto k = build_kn(n).algebra;
        CHECK(find_isomorphism(quotient(k, identity_congruence(k.size())), k));
        CHECK(quotient(k, total_congruence(k.size())).size() == 1);
    }
    auto k2 = build_kn(2).algebra;
    CHECK(find_isomorphism(quotient(k2, kernel(h_nm(2, 0))), build_kn(0).algebra));
    CHECK_THROWS_AS(quotient(k2, Congruence{0, 0, 1, 2, 3, 4, 5, 6, 7, 8}), InvalidAlgebra);
}

TEST_CASE("products and powers")
{
    auto k0 = build_kn(0).algebra, k1 = build_kn(1).algebra;
    CHECK(power(k0, 2).size() == 16);
    CHECK(product({}).size() == 1);
    auto p = product({k1, k0});
    CHECK(p.size() == 28);
    CHECK_NOTHROW(p.validate());

    // Subalgebras of K_1 x K_0 are the images of those of K_1^2 under id x h_{1,0}.
    auto h = h_nm(1, 0);
    std::set<Subset> images;
    for (auto & s : all_subalgebras(square(k1))) {
        Subset image(p.size());
        for (auto x = s.find_first(); x != Subset::npos; x = s.find_next(x))
            image.set((x / k1.size()) * k0.size() + h[x % k1.size()]);
        images.insert(image);
    }
    auto subs = all_subalgebras(p);
    CHECK(std::set<Subset>(subs.begin(), subs.end()) == images);

    Limits tight;
    tight.max_table_elements = 20;
    CHECK_THROWS_AS(product({k1, k0}, tight), SizeOverflow);
}

TEST_CASE("isomorphism search")
{
    auto k1 = build_kn(1).algebra;
    auto self = find_isomorphism(k1, k1);
    REQUIRE(self);
    for (Element x = 0; x < k1.size(); ++x)
        CHECK((*self)[x] == x);
    CHECK_FALSE(find_isomorphism(build_kn(0).algebra, k1));

    auto s = seven();
    auto iso = find_isomorphism(k1, s);
    REQUIRE(iso);
    auto named = [&](const char * a, const char * b) { return s.name((*iso)[*k1.index_of(a)]) == b; };
    CHECK(named("T2", "B"));
    CHECK(named("T1", "dT"));
    CHECK(named("t1", "dt"));
    CHECK(named("f0", "f"));
}

TEST_CASE("subdirect irreducibility")
{
    for (size_t n = 0; n <= 3; ++n)
        CHECK(is_subdirectly_irreducible(build_kn(n).algebra));
    auto k0 = build_kn(0).algebra;
    CHECK_FALSE(is_subdirectly_irreducible(product({k0, k0})));
    CHECK_THROWS_AS(is_subdirectly_irreducible(trivial_algebra()), TrivialAlgebra);

    Operations two{{0, 0, 0, 1}, {0, 1, 1, 1}, {0, 0, 0, 1}, {0, 1, 1, 1}, {0, 1}, 0, 1};
    FiniteAlgebra chain(2, two, {}, false);
    CHECK(congruence_lattice(chain).size() == 2);
    CHECK(is_subdirectly_irreducible(chain));
}

TEST_CASE("algebra validation")
{
    auto k = build_kn(1).algebra;
    auto ops = k.ops();
    std::swap(ops.neg[0], ops.neg[1]);
    CHECK_THROWS_AS(FiniteAlgebra(k.size(), ops), InvalidAlgebra);

    for (size_t n = 0; n <= 3; ++n) {
        auto a = build_kn(n).algebra;
        for (Element x = 0; x < a.size(); ++x) {
            CHECK(a.neg(a.neg(x)) == x);
            for (Element y = 0; y < a.size(); ++y) {
                if (a.k_leq(x, y))
                    CHECK(a.k_leq(a.neg(x), a.neg(y)));
                if (a.t_leq(x, y))
                    CHECK(a.t_leq(a.neg(y), a.neg(x)));
            }
        }
    }
}
