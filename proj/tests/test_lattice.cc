#include <doctest.h>

#include <kndual/error.hh>
#include <kndual/kn.hh>
#include <kndual/lattice.hh>

#include <set>

using namespace kndual;
using std::size_t;
using std::vector;

namespace
{
    // 1 + 2^2 + 1: a new bottom 0 and top 5 around the square 1 < 2, 3 < 4.
    auto linear_sum_lattice() -> DistLattice
    {
        vector<std::pair<size_t, size_t>> pairs{{0, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 4}, {4, 5}};
        return DistLattice::from_order(Poset::generated_by(6, pairs));
    }

    auto knowledge_lattice(size_t n) -> DistLattice
    {
        return DistLattice::from_order(kn_knowledge_order(n));
    }

    auto singleton_doubling(size_t n) -> Poset
    {
        vector<Poset> layers(n + 1, Poset::antichain(1));
        vector<MonotoneMap> links(n, MonotoneMap(layers[0], layers[0], {0}));
        return doubling(layers, links);
    }

    auto upset_lattices(size_t max_size) -> vector<DistLattice>
    {
        vector<DistLattice> result;
        for (size_t n = 0; n <= max_size; ++n)
            for (auto & p : enumerate_posets(n))
                result.push_back(K(p).lattice);
        return result;
    }
}

TEST_CASE("lattice validation")
{
    CHECK_NOTHROW(linear_sum_lattice());
    // The pentagon and the diamond are lattices but not distributive.
    vector<std::pair<size_t, size_t>> pentagon{{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}};
    CHECK_THROWS_AS(DistLattice::from_order(Poset::generated_by(5, pentagon)), InvalidLattice);
    vector<std::pair<size_t, size_t>> diamond{{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}};
    CHECK_THROWS_AS(DistLattice::from_order(Poset::generated_by(5, diamond)), InvalidLattice);
    CHECK_THROWS_AS(DistLattice::from_order(Poset::antichain(2)), InvalidLattice);
}

TEST_CASE("H: dual spaces")
{
    CHECK(H(DistLattice::chain(2)).order.size() == 1);
    CHECK(H(DistLattice::chain(1)).order.size() == 0);

    auto l0 = H(linear_sum_lattice());
    CHECK(l0.order.size() == 4);
    CHECK(find_poset_isomorphism(l0.order, s_nm(0, 0)));

    for (size_t n = 0; n <= 3; ++n) {
        auto dual = H(knowledge_lattice(n));
        CHECK(dual.order.size() == 2 * (n + 1));
        CHECK(find_poset_isomorphism(dual.order, singleton_doubling(n)));
    }

    // Points of the dual correspond to join-irreducibles.
    for (auto & l : upset_lattices(4))
        CHECK(H(l).order.size() == l.join_irreducibles().size());
}

TEST_CASE("K: up-set lattices")
{
    CHECK(K(Poset::antichain(1)).lattice.size() == 2);

    auto grid = Poset::product(Poset::chain(2), Poset::chain(2));
    vector<Poset> parts{grid, grid};
    auto free0 = K(Poset::disjoint_union(parts)).lattice;
    CHECK(free0.size() == 36);

    for (size_t n = 0; n <= 4; ++n) {
        auto u = K(singleton_doubling(n)).lattice;
        CHECK(u.size() == 3 * n + 4);
        CHECK(find_lattice_isomorphism(u, knowledge_lattice(n)));
    }

    // Up-set lattices satisfy the distributive lattice axioms.
    for (size_t n = 0; n <= 4; ++n)
        for (auto & p : enumerate_posets(n)) {
            auto u = K(p).lattice;
            CHECK_NOTHROW(DistLattice(u.size(), u.meet_table(), u.join_table(), u.bot(), u.top()));
        }
}

TEST_CASE("KH isomorphism")
{
    auto two = kh_iso(DistLattice::chain(2));
    CHECK(two.table.size() == 2);

    auto l0 = linear_sum_lattice();
    auto iso0 = kh_iso(l0);
    CHECK(iso0.upsets.lattice.size() == 6);
    CHECK(std::set<Element>(iso0.table.begin(), iso0.table.end()).size() == 6);

    auto l1 = DistLattice::product(DistLattice::boolean(3), l0);
    CHECK(l1.size() == 48);
    auto iso1 = kh_iso(l1);
    CHECK(iso1.dual.order.size() == 7);
    CHECK(find_poset_isomorphism(iso1.dual.order, s_nm(1, 1)));
}

TEST_CASE("complements")
{
    auto chain3 = DistLattice::chain(3);
    CHECK(complement_of(chain3, chain3.bot()) == chain3.top());
    CHECK_FALSE(complement_of(chain3, 1));

    auto b = DistLattice::boolean(4);
    for (Element a = 0; a < b.size(); ++a)
        CHECK(complement_of(b, a) == Element(~a & 15));

    for (auto & l : upset_lattices(4))
        for (Element a = 0; a < l.size(); ++a)
            if (auto c = complement_of(l, a))
                CHECK(complement_of(l, *c) == a);
}

TEST_CASE("dual maps")
{
    for (auto & l : upset_lattices(3)) {
        vector<Element> id(l.size());
        for (Element a = 0; a < l.size(); ++a)
            id[a] = a;
        auto d = hom_dual(LatticeHom(l, l, id));
        for (size_t x = 0; x < d.map.dom().size(); ++x)
            CHECK(d.map(x) == x);
        bool antichain = d.map.dom().pairs().size() == d.map.dom().size();
        CHECK(d.semi_constant == antichain);
        CHECK(d.verdicts_agree());
    }

    auto square = DistLattice::boolean(2);
    auto d = hom_dual(LatticeHom(DistLattice::chain(2), square, {0, 3}));
    CHECK(d.image_complemented);
    CHECK(d.semi_constant);

    auto chain3 = DistLattice::chain(3);
    auto ends = hom_dual(LatticeHom(DistLattice::chain(2), chain3, {0, 2}));
    CHECK(ends.image_complemented);
    CHECK(ends.verdicts_agree());
    auto middle = hom_dual(LatticeHom(chain3, chain3, {0, 1, 2}));
    CHECK_FALSE(middle.image_complemented);
    CHECK_FALSE(middle.semi_constant);

    auto lattices = upset_lattices(3);
    size_t checked = 0;
    for (auto & a : lattices)
        for (auto & b : lattices)
            for (auto & f : lattice_homs(a, b)) {
                CHECK(hom_dual(f).verdicts_agree());
                ++checked;
            }
    CHECK(checked > 100);
}

TEST_CASE("dual maps are contravariantly functorial")
{
    auto lattices = upset_lattices(2);
    size_t checked = 0;
    for (auto & a : lattices)
        for (auto & b : lattices)
            for (auto & c : lattices)
                for (auto & f : lattice_homs(a, b))
                    for (auto & g : lattice_homs(b, c)) {
                        auto composite = hom_dual(g.after(f)).map;
                        auto chained = hom_dual(f).map.after(hom_dual(g).map);
                        CHECK(composite.table() == chained.table());
                        ++checked;
                    }
    CHECK(checked > 50);
}

TEST_CASE("Birkhoff roundtrips on small posets")
{
    for (size_t n = 0; n <= 5; ++n)
        for (auto & p : enumerate_posets(n)) {
            auto u = K(p).lattice;
            CHECK(find_poset_isomorphism(H(u).order, p));
            CHECK_NOTHROW(kh_iso(u));
        }
}

TEST_CASE("lattice isomorphisms")
{
    auto b3 = DistLattice::boolean(3);
    CHECK(lattice_isomorphisms(b3, b3).size() == 6);
    CHECK_FALSE(find_lattice_isomorphism(DistLattice::chain(4), DistLattice::boolean(2)));
    CHECK(lattice_homs(DistLattice::chain(3), DistLattice::chain(2)).size() == 2);
}
