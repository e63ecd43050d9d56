#include <kndual/error.hh>
#include <kndual/kn.hh>
#include <kndual/lattice.hh>

using std::pair;
using std::size_t;
using std::string;
using std::vector;

namespace kndual
{
    auto kn_index(size_t n, Kind kind, size_t level) -> Element
    {
        switch (kind) {
        case Kind::f:
            if (level <= n)
                return Element(level);
            break;
        case Kind::t:
            if (level <= n)
                return Element(n + 1 + level);
            break;
        case Kind::top:
            if (level <= n + 1)
                return Element(2 * n + 2 + level);
            break;
        }
        throw BadIndices(kn_name(kind, level) + " is not an element of K_" + std::to_string(n));
    }

    auto kn_element(size_t n, Element index) -> KnElement
    {
        if (index <= n)
            return {Kind::f, index};
        if (index <= 2 * n + 1)
            return {Kind::t, index - (n + 1)};
        if (index <= 3 * n + 3)
            return {Kind::top, index - (2 * n + 2)};
        throw BadIndices("index " + std::to_string(index) + " is outside K_" + std::to_string(n));
    }

    auto kn_name(Kind kind, size_t level) -> string
    {
        switch (kind) {
        case Kind::f: return "f" + std::to_string(level);
        case Kind::t: return "t" + std::to_string(level);
        case Kind::top: return "T" + std::to_string(level);
        }
        return "?";
    }

    namespace
    {
        auto kn_names(size_t n) -> vector<string>
        {
            vector<string> names;
            for (Element a = 0; a < 3 * n + 4; ++a) {
                auto e = kn_element(n, a);
                names.push_back(kn_name(e.kind, e.level));
            }
            return names;
        }
    }

    auto kn_knowledge_order(size_t n) -> Poset
    {
        vector<pair<size_t, size_t>> covers;
        for (size_t i = 0; i <= n; ++i) {
            covers.emplace_back(kn_index(n, Kind::f, i), kn_index(n, Kind::top, i));
            covers.emplace_back(kn_index(n, Kind::t, i), kn_index(n, Kind::top, i));
            covers.emplace_back(kn_index(n, Kind::top, i + 1), kn_index(n, Kind::f, i));
            covers.emplace_back(kn_index(n, Kind::top, i + 1), kn_index(n, Kind::t, i));
        }
        auto result = Poset::generated_by(3 * n + 4, covers);
        result.set_labels(kn_names(n));
        return result;
    }

    auto kn_truth_order(size_t n) -> Poset
    {
        vector<pair<size_t, size_t>> pairs;
        auto f = [&](size_t i) { return kn_index(n, Kind::f, i); };
        auto t = [&](size_t i) { return kn_index(n, Kind::t, i); };
        auto top = [&](size_t i) { return kn_index(n, Kind::top, i); };
        for (size_t i = 0; i <= n; ++i) {
            for (size_t j = i; j <= n; ++j) {
                pairs.emplace_back(f(i), f(j));
                pairs.emplace_back(t(j), t(i));
            }
            pairs.emplace_back(f(i), top(i));
            pairs.emplace_back(top(i), t(i));
            pairs.emplace_back(f(i), top(n + 1));
            pairs.emplace_back(top(n + 1), t(i));
        }
        auto result = Poset::generated_by(3 * n + 4, pairs);
        result.set_labels(kn_names(n));
        return result;
    }

    auto build_kn(size_t n) -> KnAlgebra
    {
        auto k = lattice_tables(kn_knowledge_order(n));
        auto t = lattice_tables(kn_truth_order(n));
        Operations ops;
        ops.kmeet = std::move(k.meet);
        ops.kjoin = std::move(k.join);
        ops.tmeet = std::move(t.meet);
        ops.tjoin = std::move(t.join);
        ops.neg.resize(3 * n + 4);
        for (Element a = 0; a < 3 * n + 4; ++a) {
            auto e = kn_element(n, a);
            auto kind = e.kind == Kind::f ? Kind::t : e.kind == Kind::t ? Kind::f : Kind::top;
            ops.neg[a] = kn_index(n, kind, e.level);
        }
        ops.bot = kn_index(n, Kind::top, n + 1);
        ops.top = kn_index(n, Kind::top, 0);
        if (k.bot != ops.bot || k.top != ops.top)
            throw InvalidAlgebra("knowledge order of K_n has unexpected bounds");
        return KnAlgebra{n, FiniteAlgebra(3 * n + 4, std::move(ops), kn_names(n))};
    }

    auto h_nm(size_t n, size_t m) -> vector<Element>
    {
        if (m > n)
            throw BadIndices("h_{n,m} needs m <= n, got n = " + std::to_string(n) + ", m = " + std::to_string(m));
        auto order = kn_knowledge_order(n);
        auto pivot = kn_index(n, Kind::top, m + 1);
        vector<Element> table(3 * n + 4);
        for (Element a = 0; a < table.size(); ++a) {
            if (order.leq(a, pivot))
                table[a] = kn_index(m, Kind::top, m + 1);
            else {
                auto e = kn_element(n, a);
                table[a] = kn_index(m, e.kind, e.level);
            }
        }
        return table;
    }

    auto s_nm(size_t n, size_t m) -> QuasiOrder
    {
        if (m > n)
            throw BadIndices("S_{n,m} needs m <= n, got n = " + std::to_string(n) + ", m = " + std::to_string(m));
        auto order = kn_knowledge_order(n);
        auto low = kn_index(n, Kind::top, m + 1), high = kn_index(n, Kind::top, m);
        auto size = 3 * n + 4;
        vector<Subset> up(size, Subset(size));
        for (size_t a = 0; a < size; ++a)
            for (size_t b = 0; b < size; ++b)
                if (a == b || (order.leq(a, low) && order.leq(b, low)) || (order.leq(a, b) && order.leq(b, high)))
                    up[a].set(b);
        auto result = QuasiOrder::from_matrix(size, up);
        result.set_labels(kn_names(n));
        return result;
    }

    auto relation_subset(const QuasiOrder & r) -> Subset
    {
        Subset s(r.size() * r.size());
        for (auto [a, b] : r.pairs())
            s.set(a * r.size() + b);
        return s;
    }

    auto s_nm_algebra(size_t n, size_t m) -> FiniteAlgebra
    {
        auto k = build_kn(n).algebra;
        return subalgebra(product({k, k}), relation_subset(s_nm(n, m)));
    }

    auto check_interlaced(const FiniteAlgebra & a) -> InterlacingVerdict
    {
        InterlacingVerdict result;
        result.all_failures = interlacing_failures(a);
        result.interlaced = result.all_failures.empty();
        if (! result.interlaced)
            result.witness = result.all_failures.front();
        return result;
    }

    auto check_term_definability(const KnAlgebra & k) -> bool
    {
        auto & a = k.algebra;
        auto bottom = k.top(k.n + 1);
        for (size_t m = 0; m <= k.n; ++m) {
            auto j = a.tjoin(k.top(m), bottom), mt = a.tmeet(k.top(m), bottom);
            if (j != k.t(m) || mt != k.f(m) || a.kmeet(j, mt) != k.top(m + 1))
                return false;
        }
        return true;
    }
}
