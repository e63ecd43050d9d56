#include <doctest.h>

#include <kndual/dot.hh>
#include <kndual/duality.hh>
#include <kndual/error.hh>
#include <kndual/json_io.hh>
#include <kndual/kn.hh>
#include <kndual/product_rep.hh>

#include <string>

using namespace kndual;
using std::size_t;
using std::string;

namespace
{
    auto count_covers(const QuasiOrder & p) -> size_t
    {
        size_t covers = 0;
        for (size_t x = 0; x < p.size(); ++x)
            for (size_t y = 0; y < p.size(); ++y) {
                if (! p.less(x, y))
                    continue;
                bool between = false;
                for (size_t z = 0; z < p.size() && ! between; ++z)
                    between = p.less(x, z) && p.less(z, y);
                covers += ! between;
            }
        return covers;
    }

    auto count_edges(const string & dot) -> size_t
    {
        size_t count = 0;
        for (size_t pos = dot.find("->"); pos != string::npos; pos = dot.find("->", pos + 2))
            ++count;
        return count;
    }

    auto same_tables(const FiniteAlgebra & a, const FiniteAlgebra & b) -> bool
    {
        auto & x = a.ops();
        auto & y = b.ops();
        return a.size() == b.size() && x.kmeet == y.kmeet && x.kjoin == y.kjoin && x.tmeet == y.tmeet
            && x.tjoin == y.tjoin && x.neg == y.neg && x.bot == y.bot && x.top == y.top && a.names() == b.names();
    }
}

TEST_CASE("poset JSON roundtrip")
{
    for (size_t n = 0; n <= 3; ++n) {
        auto p = kn_knowledge_order(n);
        auto back = poset_from_json(parse_json(poset_to_json(p).dump()));
        CHECK(back == p);
        CHECK(back.labels() == p.labels());
    }
    auto chain = poset_from_json(parse_json(R"({"size": 3, "leq": [[0, 1], [1, 2]]})"));
    CHECK(chain.leq(0, 2));
    CHECK_FALSE(chain.leq(2, 0));
    CHECK_THROWS_AS(poset_from_json(parse_json(R"({"size": 2, "leq": [[0, 1], [1, 0]]})")), ParseError);
    CHECK_NOTHROW(quasi_order_from_json(parse_json(R"({"size": 2, "leq": [[0, 1], [1, 0]]})")));
    CHECK_THROWS_AS(poset_from_json(parse_json(R"({"size": 2, "leq": [[0, 2]]})")), ParseError);
    CHECK_THROWS_AS(poset_from_json(parse_json(R"({"leq": []})")), ParseError);
    CHECK_THROWS_AS(parse_json("{not json"), ParseError);
}

TEST_CASE("lattice JSON roundtrip")
{
    for (auto l : {DistLattice::chain(4), DistLattice::boolean(3), K(kn_knowledge_order(1)).lattice}) {
        auto back = lattice_from_json(parse_json(lattice_to_json(l).dump()));
        CHECK(back.meet_table() == l.meet_table());
        CHECK(back.join_table() == l.join_table());
        CHECK(back.bot() == l.bot());
        CHECK(back.top() == l.top());
    }
    auto from_poset = lattice_from_json(parse_json(R"({"from_poset": {"size": 2, "leq": []}})"));
    CHECK(from_poset.size() == 4);
    CHECK_THROWS_AS(
        lattice_from_json(parse_json(R"({"size": 2, "meet": [[0, 0], [0, 1]], "join": [[0, 1], [1, 1]], "bot": 1, "top": 0})")),
        InvalidLattice);
}

TEST_CASE("algebra JSON roundtrip")
{
    for (size_t n = 0; n <= 2; ++n) {
        auto a = build_kn(n).algebra;
        CHECK(same_tables(algebra_from_json(parse_json(algebra_to_json(a).dump())), a));
    }
    auto s = s_nm_algebra(2, 1);
    CHECK(same_tables(algebra_from_json(algebra_to_json(s)), s));
    auto j = algebra_to_json(build_kn(0).algebra);
    j["ops"]["neg"] = {0, 0, 0, 0};
    CHECK_THROWS_AS(algebra_from_json(j), InvalidAlgebra);
    j.erase("ops");
    CHECK_THROWS_AS(algebra_from_json(j), ParseError);
}

TEST_CASE("multisorted space JSON roundtrip")
{
    for (size_t n = 0; n <= 2; ++n) {
        auto x = alter_ego(n);
        auto back = space_from_json(parse_json(space_to_json(x).dump()));
        REQUIRE(back.sorts.size() == x.sorts.size());
        for (size_t m = 0; m <= n; ++m)
            CHECK(back.sorts[m] == x.sorts[m]);
        CHECK(back.links == x.links);
    }
    auto d = dualize(s_nm_algebra(1, 1), 1).space;
    auto back = space_from_json(space_to_json(d));
    CHECK(back.links == d.links);
    CHECK_THROWS_AS(space_from_json(parse_json(R"({"sorts": [{"size": 1, "leq": []}], "links": [[0]]})")), ParseError);
}

TEST_CASE("sequence JSON roundtrip")
{
    auto two = DistLattice::chain(2), four = DistLattice::boolean(2);
    for (auto s : {all_two_sequence(3), make_sequence({two, four}, {{0, 3}}), make_sequence({four, two}, {{0, 0, 1, 1}})}) {
        auto back = sequence_from_json(parse_json(sequence_to_json(s).dump()));
        REQUIRE(back.homs.size() == s.homs.size());
        for (size_t i = 0; i < s.homs.size(); ++i)
            CHECK(back.homs[i].table() == s.homs[i].table());
        CHECK(back.complements == s.complements);
        CHECK(validate_sequence(back).valid);
    }
    CHECK_THROWS_AS(sequence_from_json(parse_json(R"({"lattices": [], "homs": []})")), ParseError);
    CHECK_THROWS_AS(
        sequence_from_json(parse_json(R"({"lattices": [{"from_poset": {"size": 1, "leq": []}}], "homs": [[0, 1]]})")),
        ParseError);
}

TEST_CASE("DOT export draws covers only")
{
    for (size_t n = 0; n <= 3; ++n) {
        auto k = kn_knowledge_order(n);
        auto dot = hasse_dot(k, "k");
        CHECK(count_edges(dot) == count_covers(k));
        CHECK(dot.find("\"T0\"") != string::npos);
        auto a = build_kn(n).algebra;
        auto both = bilattice_dot(a, "kn");
        CHECK(count_edges(both) == count_covers(a.knowledge_order()) + count_covers(a.truth_order()));
        CHECK(both.find("kn_knowledge") != string::npos);
        CHECK(both.find("kn_truth") != string::npos);
    }
    auto l = DistLattice::boolean(3);
    CHECK(count_edges(lattice_dot(l)) == 12);
    CHECK(hasse_dot(kn_truth_order(1)) == hasse_dot(kn_truth_order(1)));
}

TEST_CASE("DOT export of quasi-orders")
{
    for (size_t n = 1; n <= 3; ++n)
        for (size_t m = 0; m <= n; ++m) {
            auto q = s_nm(n, m);
            auto dot = quasi_order_dot(q);
            // Oracle: one dashed edge per element beyond the first of each class.
            size_t expected_dashed = 0;
            for (size_t x = 0; x < q.size(); ++x) {
                bool first = true;
                for (size_t y = 0; y < x && first; ++y)
                    first = ! (q.leq(x, y) && q.leq(y, x));
                expected_dashed += ! first;
            }
            size_t dashed = 0;
            for (auto pos = dot.find("dashed"); pos != string::npos; pos = dot.find("dashed", pos + 1))
                ++dashed;
            CHECK(dashed == expected_dashed);
            if (m == n)
                CHECK(dot.find("dashed") == string::npos);
        }
}
