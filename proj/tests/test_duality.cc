#include <doctest.h>

#include <kndual/duality.hh>
#include <kndual/error.hh>
#include <kndual/kn.hh>
#include <kndual/lattice.hh>

#include <set>

using namespace kndual;
using std::size_t;
using std::vector;

namespace
{
    auto subalgebras_of_product(size_t i, size_t j) -> vector<FiniteAlgebra>
    {
        auto p = product({build_kn(i).algebra, build_kn(j).algebra});
        vector<FiniteAlgebra> result;
        for (auto & s : all_subalgebras(p))
            result.push_back(subalgebra(p, s));
        return result;
    }

    auto singleton_doubling(size_t n) -> Poset
    {
        vector<Poset> layers(n + 1, Poset::antichain(1));
        vector<MonotoneMap> links(n, MonotoneMap(layers[0], layers[0], {0}));
        return doubling(layers, links);
    }

    auto space(vector<Poset> sorts, vector<vector<size_t>> links) -> MultisortedSpace
    {
        MultisortedSpace x;
        for (auto & s : sorts)
            x.sorts.push_back(s);
        x.links = std::move(links);
        return x;
    }

    auto is_injective(const vector<size_t> & table) -> bool
    {
        return std::set<size_t>(table.begin(), table.end()).size() == table.size();
    }
}

TEST_CASE("alter ego")
{
    for (size_t n = 0; n <= 4; ++n) {
        auto x = alter_ego(n);
        CHECK(x.sorts.size() == n + 1);
        CHECK(x.links.size() == n);
        for (size_t m = 0; m <= n; ++m)
            CHECK(x.sorts[m].size() == 3 * m + 4);
        CHECK(check_dual_object(x).valid);
        // Each S_{m,m} is a subuniverse of K_m^2.
        for (size_t m = 0; m <= n; ++m) {
            auto km = build_kn(m).algebra;
            auto r = relation_subset(x.sorts[m]);
            CHECK(generate(product({km, km}), r) == r);
        }
    }
}

TEST_CASE("dual-object conditions")
{
    auto chain = Poset::chain(2), one = Poset::antichain(1), two = Poset::antichain(2);
    CHECK(check_dual_object(space({one, chain}, {{0, 0}})).valid);

    auto separated = check_dual_object(space({two, chain}, {{0, 1}}));
    CHECK_FALSE(separated.valid);
    CHECK(separated.condition == 3);

    auto short_link = check_dual_object(space({one, chain}, {{0}}));
    CHECK(short_link.condition == 2);
    CHECK(check_dual_object(space({one, chain}, {})).condition == 2);
    CHECK(check_dual_object(space({one, chain}, {{0, 1}})).condition == 2);

    MultisortedSpace cyclic;
    cyclic.sorts.push_back(QuasiOrder::generated_by(2, vector<std::pair<size_t, size_t>>{{0, 1}, {1, 0}}));
    CHECK(check_dual_object(cyclic).condition == 1);
    CHECK_THROWS_AS(evaluate(cyclic), InvalidDualObject);
}

TEST_CASE("dualizing the generators")
{
    for (size_t n = 0; n <= 3; ++n) {
        auto d = dualize(build_kn(n).algebra, n);
        for (size_t m = 0; m <= n; ++m) {
            REQUIRE(d.space.sorts[m].size() == 1);
            CHECK(d.homs[m][0] == h_nm(n, m));
        }
        CHECK(check_dual_object(d.space).valid);
    }

    auto d = dualize(build_kn(1).algebra, 2);
    CHECK(d.space.sorts[2].size() == 0);

    for (size_t n = 1; n <= 2; ++n)
        for (size_t m = 0; m <= n; ++m) {
            auto s = s_nm_algebra(m, m);
            auto dual = dualize(s, n);
            for (size_t j = 0; j <= n; ++j)
                CHECK(dual.space.sorts[j].size() == (j > m ? 0u : j == m ? 2u : 1u));
            auto & sort = dual.space.sorts[m];
            CHECK(sort.less(0, 1) != sort.less(1, 0));
        }

    // Homomorphisms must keep bottom and top apart, so nothing leaves the
    // one-element algebra.
    auto empty = dualize(trivial_algebra(), 2);
    for (auto & sort : empty.space.sorts)
        CHECK(sort.size() == 0);
    CHECK(evaluate(empty.space).algebra.size() == 1);

    CHECK_THROWS_AS(dualize(build_kn(2).algebra, 1), NotInVariety);
}

TEST_CASE("free algebra on one generator")
{
    auto free0 = free_algebra(0, 1);
    CHECK(free0.algebra.size() == 36);
    CHECK_NOTHROW(free0.algebra.validate());
    CHECK(free_algebra_count(0, 1) == 36);
    CHECK(free_algebra_count_by_maps(0, 1) == 36);

    // Oracle: the subalgebra of K_0^{K_0} generated by the identity tuple.
    auto k0 = build_kn(0).algebra;
    auto p = power(k0, 4);
    Subset seed(p.size());
    seed.set(product_index({4, 4, 4, 4}, {0, 1, 2, 3}));
    auto generated = subalgebra(p, generate(p, seed));
    CHECK(generated.size() == 36);
    CHECK(find_isomorphism(free0.algebra, generated));

    CHECK(free_algebra_count(1, 1) == 5879);
    CHECK(free_algebra_count_by_maps(1, 1) == 5879);
    CHECK_THROWS_AS(free_algebra(1, 1), SizeOverflow);

    CHECK(free_algebra_count(2, 1) == free_algebra_count_by_maps(2, 1));
    for (size_t n = 0; n <= 3; ++n)
        CHECK(free_algebra_count(n, 1) >= free_algebra_lower_bound(n));
    CHECK(free_algebra_lower_bound(0) == 36);
    CHECK(free_algebra_lower_bound(1) == 2340);
}

TEST_CASE("free algebra on two generators in V_0")
{
    CHECK(free_algebra_count(0, 2) == free_algebra_count_by_maps(0, 2));
    auto x = alter_ego_power(0, 2);
    CHECK(x.sorts[0].size() == 16);
    CHECK(check_dual_object(x).valid);
}

TEST_CASE("evaluation maps are isomorphisms")
{
    auto k1 = build_kn(1).algebra;
    auto back = evaluate(dualize(k1, 1).space);
    CHECK(find_isomorphism(back.algebra, k1));

    size_t algebras = 0;
    for (auto [i, j] : {std::pair<size_t, size_t>{1, 1}, {0, 1}, {1, 0}, {0, 0}})
        for (auto & a : subalgebras_of_product(i, j)) {
            auto e = evaluation_map(a, 1);
            CHECK(e.is_isomorphism());
            CHECK(check_dual_object(e.dual.space).valid);
            for (auto & theta : congruence_lattice(a)) {
                auto q = quotient(a, theta);
                if (q.size() > 1)
                    CHECK(evaluation_map(q, 1).is_isomorphism());
            }
            ++algebras;
        }
    CHECK(algebras >= 7);

    auto one = evaluation_map(trivial_algebra(), 1);
    CHECK(one.table == vector<Element>{0});
    CHECK(one.is_isomorphism());

    for (size_t n = 0; n <= 2; ++n)
        CHECK(evaluation_map(build_kn(n).algebra, 2).is_isomorphism());
}

TEST_CASE("evaluated algebras are bilattices")
{
    for (auto & a : subalgebras_of_product(1, 1))
        CHECK_NOTHROW(evaluate(dualize(a, 1).space).algebra.validate());
}

TEST_CASE("counit on small hand-built duals")
{
    auto chain = Poset::chain(2), one = Poset::antichain(1), two = Poset::antichain(2), none = Poset::antichain(0);
    CHECK(counit_check(alter_ego(0)));
    CHECK(counit_check(space({one}, {})));
    CHECK(counit_check(space({chain}, {})));
    CHECK(counit_check(space({one, chain}, {{0, 0}})));
    CHECK(counit_check(space({two, chain}, {{1, 1}})));
    CHECK(counit_check(space({chain, two}, {{0, 1}})));
    CHECK(counit_check(space({one, one, one}, {{0}, {0}})));
    CHECK(counit_check(space({one, none}, {{}})));
    CHECK(counit_check(space({none, none}, {{}})));
}

TEST_CASE("D turns surjections into embeddings and embeddings into surjections")
{
    for (size_t n = 0; n <= 2; ++n) {
        auto kn = build_kn(n).algebra;
        auto dn = dualize(kn, n);
        for (size_t m = 0; m <= n; ++m) {
            auto dm = dualize(build_kn(m).algebra, n);
            for (auto & sort : dual_morphism(h_nm(n, m), dn, dm))
                CHECK(is_injective(sort));
        }
    }

    auto k1 = build_kn(1).algebra;
    auto square = product({k1, k1});
    auto dsq = dualize(square, 1);
    for (auto & s : all_subalgebras(square)) {
        auto sub = subalgebra(square, s);
        vector<Element> inclusion;
        for (auto x = s.find_first(); x != Subset::npos; x = s.find_next(x))
            inclusion.push_back(Element(x));
        auto dsub = dualize(sub, 1);
        auto map = dual_morphism(inclusion, dsub, dsq);
        for (size_t m = 0; m < map.size(); ++m)
            CHECK(std::set<size_t>(map[m].begin(), map[m].end()).size() == dsub.space.sorts[m].size());
    }
}

TEST_CASE("Priestley reconstruction")
{
    for (size_t n = 0; n <= 5; ++n) {
        auto y = priestley_reconstruction(dualize(build_kn(n).algebra, n).space);
        CHECK(count_up_sets(y) == 3 * n + 4);
        CHECK(find_poset_isomorphism(y, singleton_doubling(n)));
    }

    auto y = priestley_reconstruction(alter_ego(1));
    CHECK(y.size() == 22);
    CHECK(count_up_sets(y) == 5879);
    auto h = h_nm(1, 0);
    vector<Poset> layers{Poset(s_nm(0, 0)), Poset(s_nm(1, 1))};
    vector<MonotoneMap> links{MonotoneMap(layers[1], layers[0], vector<size_t>(h.begin(), h.end()))};
    CHECK(find_poset_isomorphism(y, doubling(layers, links)));

    // One copy of one level is the sort itself.
    auto x = alter_ego(2);
    auto z = priestley_reconstruction(x);
    size_t offset = 0;
    for (size_t m = 0; m <= 2; ++m) {
        for (size_t copy = 0; copy < 2; ++copy) {
            Subset keep(z.size());
            for (size_t p = 0; p < x.sorts[m].size(); ++p)
                keep.set(offset + copy * x.sorts[m].size() + p);
            CHECK(z.restrict_to(keep) == x.sorts[m]);
        }
        offset += 2 * x.sorts[m].size();
    }

    for (auto & a : subalgebras_of_product(1, 1)) {
        auto u = K(priestley_reconstruction(dualize(a, 1).space)).lattice;
        CHECK(find_lattice_isomorphism(u, DistLattice::from_order(a.knowledge_order())));
    }

    MultisortedSpace bad;
    bad.sorts = {Poset::antichain(2), Poset::chain(2)};
    bad.links = {{0, 1}};
    CHECK_THROWS_AS(priestley_reconstruction(bad), InvalidDualObject);
}

TEST_CASE("separation by the piggyback maps")
{
    for (size_t n = 0; n <= 3; ++n)
        CHECK(separation_check(n).separated);

    auto k0 = build_kn(0);
    auto zero = separation_check(0);
    bool t0_f0 = false;
    for (auto & w : zero.witnesses)
        if (w.a == k0.f(0) && w.b == k0.t(0))
            t0_f0 = w.j == 0 && w.t;
    CHECK(t0_f0);
    CHECK(omega(0, true, k0.t(0)));
    CHECK_FALSE(omega(0, true, k0.f(0)));

    auto k2 = build_kn(2);
    bool tops = false;
    for (auto & w : separation_check(2).witnesses)
        if (w.m == 2 && w.a == k2.top(2) && w.b == k2.top(3))
            tops = w.j == 2;
    CHECK(tops);
}

TEST_CASE("maximal relations under the piggyback maps")
{
    for (size_t m = 0; m <= 2; ++m)
        for (size_t j = 0; j <= 2; ++j)
            for (bool wt : {true, false})
                for (bool vt : {true, false}) {
                    auto r = maximal_relations(j, wt, m, vt);
                    if (j == m && wt == vt) {
                        REQUIRE(r.size() == 1);
                        CHECK(r[0] == relation_subset(s_nm(m, m)));
                    } else if (j >= m) {
                        CHECK(r.empty());
                    } else {
                        // The converse graph of h_{m,j} qualifies but is not
                        // maximal: the image of S_{m,j} under h_{m,j} x id
                        // stays inside and contains it.
                        auto h = h_nm(m, j);
                        auto km = 3 * m + 4;
                        Subset graph((3 * j + 4) * km), image(graph.size());
                        for (size_t b = 0; b < h.size(); ++b)
                            graph.set(h[b] * km + b);
                        for (auto [c, b] : s_nm(m, j).pairs())
                            image.set(h[c] * km + b);
                        REQUIRE(r.size() == 1);
                        CHECK(r[0] == image);
                        CHECK(graph.is_proper_subset_of(r[0]));
                    }
                }
}

TEST_CASE("optimality witnesses")
{
    for (size_t n = 1; n <= 2; ++n)
        for (size_t m = 0; m <= n; ++m) {
            auto gamma = optimality_witness(n, {DropKind::relation, m});
            CHECK(gamma.construction_found);
            CHECK(non_evaluation_maps(gamma.test_algebra, n, Retained::all(n)).empty());
            if (m >= 1) {
                auto mu = optimality_witness(n, {DropKind::link, m});
                CHECK(mu.construction_found);
                CHECK(non_evaluation_maps(mu.test_algebra, n, Retained::all(n)).empty());
            }
        }

    auto gamma = optimality_witness(1, {DropKind::relation, 1});
    auto k1 = build_kn(1), k0 = build_kn(0);
    auto & sorts = gamma.dual.space.sorts;
    auto rho1 = sorts[1].leq(0, 1) ? 0 : 1;
    // rho_1 is the first projection.
    auto names = gamma.test_algebra.names();
    for (Element c = 0; c < names.size(); ++c) {
        auto first = names[c].substr(1, names[c].find(',') - 1);
        CHECK(gamma.dual.homs[1][rho1][c] == *k1.algebra.index_of(first));
    }
    CHECK(gamma.construction[1][rho1] == k1.f(1));
    CHECK(gamma.construction[1][1 - rho1] == k1.t(1));
    CHECK(gamma.construction[0][0] == k0.top(1));

    auto mu = optimality_witness(1, {DropKind::link, 1});
    CHECK(mu.construction[1][0] == k1.top(0));
    CHECK(mu.construction[0][0] == k0.top(1));

    CHECK_THROWS_AS(optimality_witness(1, {DropKind::link, 0}), BadIndices);
    CHECK_THROWS_AS(optimality_witness(1, {DropKind::relation, 2}), BadIndices);
}

TEST_CASE("quasivariety duality")
{
    for (size_t n = 0; n <= 3; ++n) {
        auto x = quasivariety_alter_ego(n);
        CHECK(x.relations.size() == n + 1);
        CHECK(check_quasi_dual_object(x).valid);

        auto d = quasivariety_dualize(build_kn(n).algebra, n);
        CHECK(d.space.size() == 1);
        for (auto & r : d.space.relations)
            CHECK(r.leq(0, 0));
    }

    for (size_t n = 1; n <= 2; ++n) {
        auto kn = build_kn(n).algebra;
        auto square = product({kn, kn});
        for (auto & s : all_subalgebras(square))
            CHECK(quasivariety_evaluation_map(subalgebra(square, s), n).is_isomorphism());
    }
    CHECK(quasivariety_evaluation_map(s_nm_algebra(1, 1), 1).is_isomorphism());
    CHECK_THROWS_AS(quasivariety_dualize(build_kn(0).algebra, 1), NotInQuasivariety);

    auto x = quasivariety_alter_ego(2);
    std::swap(x.relations[1], x.relations[2]);
    CHECK(check_quasi_dual_object(x).condition == 3);

    QuasiSpace flat;
    flat.relations = {QuasiOrder(Poset::chain(2)), QuasiOrder(Poset::antichain(2))};
    CHECK(check_quasi_dual_object(flat).condition == 2);
    flat.relations = {QuasiOrder(Poset::chain(2)), QuasiOrder(Poset::chain(2))};
    CHECK(check_quasi_dual_object(flat).condition == 4);
    flat.relations = {QuasiOrder::generated_by(2, vector<std::pair<size_t, size_t>>{{0, 1}, {1, 0}})};
    CHECK(check_quasi_dual_object(flat).condition == 1);
}
