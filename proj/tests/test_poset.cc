#include <doctest.h>

#include <kndual/error.hh>
#include <kndual/kn.hh>
#include <kndual/poset.hh>

#include <algorithm>
#include <random>
#include <set>

using namespace kndual;
using std::size_t;
using std::vector;

namespace
{
    // Oracle: test every subset directly against the definition of an up-set.
    auto brute_force_up_sets(const QuasiOrder & p) -> std::set<vector<bool>>
    {
        std::set<vector<bool>> result;
        auto n = p.size();
        for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
            bool ok = true;
            for (size_t x = 0; x < n && ok; ++x)
                for (size_t y = 0; y < n && ok; ++y)
                    if ((mask >> x & 1) && p.leq(x, y) && ! (mask >> y & 1))
                        ok = false;
            if (ok) {
                vector<bool> s(n);
                for (size_t x = 0; x < n; ++x)
                    s[x] = mask >> x & 1;
                result.insert(s);
            }
        }
        return result;
    }

    auto as_bools(const Subset & s) -> vector<bool>
    {
        vector<bool> r(s.size());
        for (size_t i = 0; i < s.size(); ++i)
            r[i] = s[i];
        return r;
    }

    auto random_poset(std::mt19937 & rng, size_t n, double density) -> Poset
    {
        // Orient random pairs along a fixed ranking so the closure stays antisymmetric.
        std::bernoulli_distribution edge(density);
        vector<std::pair<size_t, size_t>> pairs;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (edge(rng))
                    pairs.emplace_back(i, j);
        return Poset::generated_by(n, pairs);
    }

    auto random_semi_constant(std::mt19937 & rng, const Poset & lower, const Poset & upper) -> MonotoneMap
    {
        vector<size_t> table(upper.size());
        for (auto & block : order_components(upper)) {
            auto v = std::uniform_int_distribution<size_t>(0, lower.size() - 1)(rng);
            for (auto x : block)
                table[x] = v;
        }
        return MonotoneMap(upper, lower, table);
    }

    auto kn_sort(size_t m) -> Poset
    {
        return Poset(s_nm(m, m));
    }
}

TEST_CASE("up-sets of small posets")
{
    CHECK(up_sets(Poset::antichain(2)).size() == 4);
    CHECK(count_up_sets(Poset::antichain(2)) == 4);

    auto chain = Poset::chain(2);
    auto grid = Poset::product(chain, chain);
    CHECK(brute_force_up_sets(grid).size() == 6);
    CHECK(up_sets(grid).size() == 6);
    CHECK(count_up_sets(grid) == 6);

    CHECK(up_sets(Poset::antichain(0)).size() == 1);
    CHECK(count_up_sets(Poset::chain(7)) == 8);
}

TEST_CASE("up-set enumeration agrees with brute force on random posets")
{
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 60; ++trial) {
        auto n = size_t(1 + trial % 11);
        auto p = random_poset(rng, n, 0.1 + 0.05 * (trial % 7));
        auto expected = brute_force_up_sets(p);
        auto got = up_sets(p);
        std::set<vector<bool>> got_set;
        for (auto & s : got)
            got_set.insert(as_bools(s));
        CHECK(got_set.size() == got.size());
        CHECK(got_set == expected);
        CHECK(count_up_sets(p) == expected.size());

        // The up-sets form a lattice of sets.
        std::set<Subset> all(got.begin(), got.end());
        for (auto & a : got)
            for (auto & b : got) {
                CHECK(all.count(a | b));
                CHECK(all.count(a & b));
            }
    }
}

TEST_CASE("up-sets of a quasi-order contain whole equivalence classes")
{
    // 0 ~ 1 below 2, and 3 isolated.
    vector<std::pair<size_t, size_t>> pairs{{0, 1}, {1, 0}, {1, 2}};
    auto q = QuasiOrder::generated_by(4, pairs);
    auto expected = brute_force_up_sets(q);
    CHECK(up_sets(q).size() == expected.size());
    CHECK(count_up_sets(q) == expected.size());
    CHECK(expected.size() == 6);
}

TEST_CASE("order components and semi-constant maps")
{
    CHECK(order_components(Poset::antichain(5)).size() == 5);
    CHECK(order_components(Poset::chain(2)).size() == 1);

    auto chain = Poset::chain(2);
    CHECK_FALSE(is_semi_constant(MonotoneMap(chain, chain, {0, 1})));
    CHECK(is_semi_constant(MonotoneMap(Poset::antichain(3), chain, {0, 1, 1})));

    // S_{1,1} on K_1: the diamond below top_1 and three isolated points.
    auto blocks = order_components(s_nm(1, 1));
    CHECK(blocks.size() == 4);
    auto k = build_kn(1);
    vector<size_t> diamond{k.f(1), k.t(1), k.top(1), k.top(2)};
    std::sort(diamond.begin(), diamond.end());
    CHECK(std::count(blocks.begin(), blocks.end(), diamond) == 1);
    for (auto x : {k.f(0), k.t(0), k.top(0)})
        CHECK(std::count(blocks.begin(), blocks.end(), vector<size_t>{x}) == 1);
}

TEST_CASE("monotone maps reject order violations")
{
    auto chain = Poset::chain(2);
    CHECK_THROWS_AS(MonotoneMap(chain, chain, {1, 0}), NotMonotone);
    CHECK_THROWS_AS(MonotoneMap(chain, chain, {0}), NotMonotone);
    CHECK_THROWS_AS(Poset(QuasiOrder::generated_by(2, vector<std::pair<size_t, size_t>>{{0, 1}, {1, 0}})), InvalidOrder);
}

TEST_CASE("restricted linear sum")
{
    auto one = Poset::antichain(1);
    auto sum = restricted_linear_sum(one, one, MonotoneMap(one, one, {0}));
    CHECK(sum.size() == 2);
    CHECK(sum.less(0, 1));
    CHECK(find_poset_isomorphism(sum, Poset::chain(2)));

    auto chain = Poset::chain(2);
    CHECK_THROWS_AS(restricted_linear_sum(chain, chain, MonotoneMap(chain, chain, {0, 1})), NotSemiConstant);

    // K_0 under S_{0,0} below K_1 under S_{1,1}, linked by h_{1,0}.
    auto h = h_nm(1, 0);
    auto low = kn_sort(0), high = kn_sort(1);
    auto layered = restricted_linear_sum(low, high, MonotoneMap(high, low, vector<size_t>(h.begin(), h.end())));
    CHECK(layered.size() == 11);
    Subset bottom(11), top(11);
    for (size_t i = 0; i < 4; ++i)
        bottom.set(i);
    for (size_t i = 4; i < 11; ++i)
        top.set(i);
    CHECK(layered.restrict_to(bottom) == static_cast<const QuasiOrder &>(low));
    CHECK(layered.restrict_to(top) == static_cast<const QuasiOrder &>(high));
}

TEST_CASE("restricted linear sums respect the up-set count bounds")
{
    std::mt19937 rng(777);
    for (int trial = 0; trial < 80; ++trial) {
        auto s = random_poset(rng, 1 + trial % 6, 0.3);
        auto t = random_poset(rng, 1 + (trial / 3) % 7, 0.25);
        auto phi = random_semi_constant(rng, s, t);
        auto sum = restricted_linear_sum(s, t, phi);
        auto us = count_up_sets(s), ut = count_up_sets(t), u = count_up_sets(sum);
        CHECK(u >= us + ut - 1);
        CHECK(u <= us * ut);
        CHECK(u == brute_force_up_sets(sum).size());

        Subset first(sum.size()), second(sum.size());
        for (size_t i = 0; i < s.size(); ++i)
            first.set(i);
        second = ~first;
        CHECK(sum.restrict_to(first) == static_cast<const QuasiOrder &>(s));
        CHECK(sum.restrict_to(second) == static_cast<const QuasiOrder &>(t));
    }
}

TEST_CASE("doubling")
{
    for (size_t n = 0; n <= 5; ++n) {
        vector<Poset> layers(n + 1, Poset::antichain(1));
        vector<MonotoneMap> links(n, MonotoneMap(layers[0], layers[0], {0}));
        auto d = doubling(layers, links);
        CHECK(d.size() == 2 * (n + 1));
        CHECK(count_up_sets(d) == 3 * n + 4);
    }

    auto grid = Poset::product(Poset::chain(2), Poset::chain(2));
    vector<Poset> single{grid};
    auto twice = doubling(single, {});
    vector<Poset> parts{grid, grid};
    CHECK(find_poset_isomorphism(twice, Poset::disjoint_union(parts)));
    CHECK(count_up_sets(twice) == 36);

    vector<Poset> three(3, Poset::antichain(1));
    vector<MonotoneMap> one_link{MonotoneMap(three[0], three[0], {0})};
    CHECK_THROWS_AS(doubling(three, one_link), LengthMismatch);

    auto h = h_nm(1, 0);
    vector<Poset> layers{kn_sort(0), kn_sort(1)};
    vector<MonotoneMap> links{MonotoneMap(layers[1], layers[0], vector<size_t>(h.begin(), h.end()))};
    auto doubled = doubling(layers, links);
    CHECK(doubled.size() == 22);
    CHECK(count_up_sets(doubled) == 5879);
    CHECK(up_sets(doubled).size() == 5879);
}

TEST_CASE("Hasse covers and linear extensions")
{
    auto grid = Poset::product(Poset::chain(2), Poset::chain(2));
    CHECK(grid.hasse().size() == 4);
    auto order = grid.linear_extension();
    for (size_t i = 0; i < order.size(); ++i)
        for (size_t j = i + 1; j < order.size(); ++j)
            CHECK_FALSE(grid.less(order[j], order[i]));
}

TEST_CASE("poset enumeration up to isomorphism")
{
    vector<size_t> expected{1, 1, 2, 5, 16, 63, 318};
    for (size_t n = 0; n < expected.size(); ++n)
        CHECK(enumerate_posets(n).size() == expected[n]);

    auto fours = enumerate_posets(4);
    for (size_t i = 0; i < fours.size(); ++i)
        for (size_t j = 0; j < fours.size(); ++j)
            CHECK(find_poset_isomorphism(fours[i], fours[j]).has_value() == (i == j));
}
