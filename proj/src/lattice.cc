#include <kndual/error.hh>
#include <kndual/lattice.hh>

#include <algorithm>

using std::optional;
using std::size_t;
using std::string;
using std::vector;

namespace kndual
{
    auto lattice_tables(const QuasiOrder & order) -> LatticeTables
    {
        if (! order.is_antisymmetric())
            throw InvalidLattice("order is not antisymmetric");
        auto n = order.size();
        if (n == 0)
            throw InvalidLattice("empty order");
        auto bound = [&](const Subset & candidates, bool lower) -> optional<Element> {
            for (auto m = candidates.find_first(); m != Subset::npos; m = candidates.find_next(m))
                if (candidates.is_subset_of(lower ? order.down(m) : order.up(m)))
                    return Element(m);
            return std::nullopt;
        };
        LatticeTables result;
        result.meet.resize(n * n);
        result.join.resize(n * n);
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b) {
                auto m = bound(order.down(a) & order.down(b), true);
                auto j = bound(order.up(a) & order.up(b), false);
                if (! m || ! j)
                    throw InvalidLattice(order.label(a) + " and " + order.label(b) + " lack a meet or join");
                result.meet[a * n + b] = *m;
                result.join[a * n + b] = *j;
            }
        Subset all(n);
        all.set();
        result.bot = *bound(all, false);
        result.top = *bound(all, true);
        return result;
    }

    auto is_distributive(size_t n, const vector<Element> & meet, const vector<Element> & join) -> bool
    {
        for (size_t x = 0; x < n; ++x)
            for (size_t y = 0; y < n; ++y)
                for (size_t z = 0; z < n; ++z)
                    if (meet[x * n + join[y * n + z]] != join[meet[x * n + y] * n + meet[x * n + z]])
                        return false;
        return true;
    }

    DistLattice::DistLattice(size_t size, vector<Element> meet, vector<Element> join, Element bot, Element top,
        vector<string> labels, bool validate)
    {
        if (validate) {
            if (size == 0)
                throw InvalidLattice("empty lattice");
            if (meet.size() != size * size || join.size() != size * size)
                throw InvalidLattice("operation tables have the wrong size");
            if (bot >= size || top >= size)
                throw InvalidLattice("bounds out of range");
            if (! labels.empty() && labels.size() != size)
                throw InvalidLattice("wrong number of labels");
            for (auto v : meet)
                if (v >= size)
                    throw InvalidLattice("meet value out of range");
            for (auto v : join)
                if (v >= size)
                    throw InvalidLattice("join value out of range");
            auto m = [&](size_t a, size_t b) { return meet[a * size + b]; };
            auto j = [&](size_t a, size_t b) { return join[a * size + b]; };
            for (size_t a = 0; a < size; ++a) {
                if (m(a, a) != a || j(a, a) != a)
                    throw InvalidLattice("not idempotent at " + std::to_string(a));
                if (m(a, bot) != bot || j(a, top) != top || j(a, bot) != a || m(a, top) != a)
                    throw InvalidLattice("bounds are not units at " + std::to_string(a));
                for (size_t b = 0; b < size; ++b) {
                    if (m(a, b) != m(b, a) || j(a, b) != j(b, a))
                        throw InvalidLattice("not commutative");
                    if (m(a, j(a, b)) != a || j(a, m(a, b)) != a)
                        throw InvalidLattice("absorption fails");
                    for (size_t c = 0; c < size; ++c)
                        if (m(a, m(b, c)) != m(m(a, b), c) || j(a, j(b, c)) != j(j(a, b), c))
                            throw InvalidLattice("not associative");
                }
            }
            if (! is_distributive(size, meet, join))
                throw InvalidLattice("not distributive");
        }
        _data = std::make_shared<const Data>(Data{size, std::move(meet), std::move(join), bot, top, std::move(labels)});
    }

    auto DistLattice::from_order(const Poset & order) -> DistLattice
    {
        auto t = lattice_tables(order);
        return DistLattice(order.size(), std::move(t.meet), std::move(t.join), t.bot, t.top, order.labels());
    }

    auto DistLattice::chain(size_t size) -> DistLattice
    {
        vector<Element> meet(size * size), join(size * size);
        for (size_t a = 0; a < size; ++a)
            for (size_t b = 0; b < size; ++b) {
                meet[a * size + b] = Element(std::min(a, b));
                join[a * size + b] = Element(std::max(a, b));
            }
        return DistLattice(size, std::move(meet), std::move(join), 0, Element(size - 1));
    }

    auto DistLattice::boolean(size_t k) -> DistLattice
    {
        size_t size = size_t{1} << k;
        vector<Element> meet(size * size), join(size * size);
        for (size_t a = 0; a < size; ++a)
            for (size_t b = 0; b < size; ++b) {
                meet[a * size + b] = Element(a & b);
                join[a * size + b] = Element(a | b);
            }
        return DistLattice(size, std::move(meet), std::move(join), 0, Element(size - 1), {}, false);
    }

    auto DistLattice::product(const DistLattice & a, const DistLattice & b) -> DistLattice
    {
        auto nb = b.size(), size = a.size() * nb;
        vector<Element> meet(size * size), join(size * size);
        for (size_t x = 0; x < size; ++x)
            for (size_t y = 0; y < size; ++y) {
                Element xa = Element(x / nb), xb = Element(x % nb), ya = Element(y / nb), yb = Element(y % nb);
                meet[x * size + y] = Element(a.meet(xa, ya) * nb + b.meet(xb, yb));
                join[x * size + y] = Element(a.join(xa, ya) * nb + b.join(xb, yb));
            }
        return DistLattice(size, std::move(meet), std::move(join), Element(a.bot() * nb + b.bot()),
            Element(a.top() * nb + b.top()), {}, false);
    }

    auto DistLattice::label(Element a) const -> string
    {
        return _data->labels.empty() ? std::to_string(a) : _data->labels[a];
    }

    auto DistLattice::order() const -> Poset
    {
        vector<Subset> up(size(), Subset(size()));
        for (Element a = 0; a < size(); ++a)
            for (Element b = 0; b < size(); ++b)
                if (leq(a, b))
                    up[a].set(b);
        Poset result(QuasiOrder::from_matrix(size(), up));
        result.set_labels(labels());
        return result;
    }

    auto DistLattice::view() const -> TableView
    {
        return TableView{size(), {_data->meet.data(), _data->join.data()}, {}, {bot(), top()}};
    }

    auto DistLattice::join_irreducibles() const -> vector<Element>
    {
        vector<Element> result;
        for (Element x = 0; x < size(); ++x) {
            if (x == bot())
                continue;
            Element below = bot();
            for (Element y = 0; y < size(); ++y)
                if (y != x && leq(y, x))
                    below = join(below, y);
            if (below != x)
                result.push_back(x);
        }
        return result;
    }

    LatticeHom::LatticeHom(DistLattice dom, DistLattice cod, vector<Element> table) :
        _dom(std::move(dom)),
        _cod(std::move(cod)),
        _table(std::move(table))
    {
        if (! is_homomorphism(_dom.view(), _cod.view(), _table))
            throw InvalidHomomorphism("table does not preserve meet, join and bounds");
    }

    auto LatticeHom::after(const LatticeHom & first) const -> LatticeHom
    {
        if (first.cod().size() != _dom.size())
            throw LengthMismatch("composed homomorphisms do not match up");
        vector<Element> table(first.dom().size());
        for (Element a = 0; a < table.size(); ++a)
            table[a] = _table[first(a)];
        return LatticeHom(first.dom(), _cod, std::move(table));
    }

    auto LatticeDual::index_of(const vector<Element> & point) const -> optional<size_t>
    {
        auto it = std::lower_bound(points.begin(), points.end(), point);
        if (it == points.end() || *it != point)
            return std::nullopt;
        return size_t(it - points.begin());
    }

    auto H(const DistLattice & l) -> LatticeDual
    {
        auto two = DistLattice::chain(2);
        auto dom = l.view(), cod = two.view();
        LatticeDual result;
        search_homs(dom, cod, l.join_irreducibles(), {}, [&](const vector<Element> & table) {
            result.points.push_back(table);
            return true;
        });
        std::sort(result.points.begin(), result.points.end());
        auto n = result.points.size();
        vector<Subset> up(n, Subset(n));
        for (size_t x = 0; x < n; ++x)
            for (size_t y = 0; y < n; ++y) {
                bool below = true;
                for (size_t a = 0; a < l.size() && below; ++a)
                    below = result.points[x][a] <= result.points[y][a];
                if (below)
                    up[x].set(y);
            }
        result.order = Poset(QuasiOrder::from_matrix(n, up));
        return result;
    }

    namespace
    {
        auto upset_before(const Subset & a, const Subset & b) -> bool
        {
            auto ca = a.count(), cb = b.count();
            return ca != cb ? ca < cb : a < b;
        }
    }

    auto UpSetLattice::index_of(const Subset & s) const -> optional<Element>
    {
        auto it = std::lower_bound(sets.begin(), sets.end(), s, upset_before);
        if (it == sets.end() || *it != s)
            return std::nullopt;
        return Element(it - sets.begin());
    }

    auto K(const QuasiOrder & p) -> UpSetLattice
    {
        UpSetLattice result;
        result.sets = up_sets(p);
        auto n = result.sets.size();
        vector<Element> meet(n * n), join(n * n);
        for (size_t a = 0; a < n; ++a)
            for (size_t b = a; b < n; ++b) {
                auto m = *result.index_of(result.sets[a] & result.sets[b]);
                auto j = *result.index_of(result.sets[a] | result.sets[b]);
                meet[a * n + b] = meet[b * n + a] = m;
                join[a * n + b] = join[b * n + a] = j;
            }
        result.lattice = DistLattice(n, std::move(meet), std::move(join), 0, Element(n - 1), {}, false);
        return result;
    }

    auto kh_iso(const DistLattice & l) -> KHIso
    {
        KHIso result;
        result.dual = H(l);
        result.upsets = K(result.dual.order);
        if (result.upsets.lattice.size() != l.size())
            throw IsoFailure("lattice has " + std::to_string(l.size()) + " elements but its dual has "
                + std::to_string(result.upsets.lattice.size()) + " up-sets");
        auto points = result.dual.points.size();
        vector<bool> hit(l.size(), false);
        for (Element a = 0; a < l.size(); ++a) {
            Subset s(points);
            for (size_t x = 0; x < points; ++x)
                if (result.dual.points[x][a])
                    s.set(x);
            auto idx = result.upsets.index_of(s);
            if (! idx || hit[*idx])
                throw IsoFailure("element " + l.label(a) + " is not sent to a fresh up-set");
            hit[*idx] = true;
            result.table.push_back(*idx);
        }
        if (! is_homomorphism(l.view(), result.upsets.lattice.view(), result.table))
            throw IsoFailure("representation map does not preserve the lattice operations");
        return result;
    }

    auto complement_of(const DistLattice & l, Element a) -> optional<Element>
    {
        for (Element b = 0; b < l.size(); ++b)
            if (l.meet(a, b) == l.bot() && l.join(a, b) == l.top())
                return b;
        return std::nullopt;
    }

    auto hom_dual(const LatticeHom & f) -> HomDual
    {
        return hom_dual(f, H(f.dom()), H(f.cod()));
    }

    auto hom_dual(const LatticeHom & f, const LatticeDual & dual_dom, const LatticeDual & dual_cod) -> HomDual
    {
        vector<size_t> table;
        for (auto & y : dual_cod.points) {
            vector<Element> composite(f.dom().size());
            for (Element a = 0; a < composite.size(); ++a)
                composite[a] = y[f(a)];
            auto idx = dual_dom.index_of(composite);
            if (! idx)
                throw InvalidHomomorphism("composite is not a point of the dual space");
            table.push_back(*idx);
        }
        HomDual result;
        result.map = MonotoneMap(dual_cod.order, dual_dom.order, std::move(table));
        result.semi_constant = is_semi_constant(result.map);
        result.image_complemented = true;
        for (Element a = 0; a < f.dom().size() && result.image_complemented; ++a)
            result.image_complemented = complement_of(f.cod(), f(a)).has_value();
        return result;
    }

    auto lattice_homs(const DistLattice & a, const DistLattice & b) -> vector<LatticeHom>
    {
        vector<LatticeHom> result;
        auto dom = a.view(), cod = b.view();
        search_homs(dom, cod, a.join_irreducibles(), {}, [&](const vector<Element> & table) {
            result.emplace_back(a, b, table);
            return true;
        });
        return result;
    }

    namespace
    {
        auto lattice_iso_search(const DistLattice & a, const DistLattice & b, bool first_only) -> vector<vector<Element>>
        {
            vector<vector<Element>> result;
            if (a.size() != b.size())
                return result;
            auto rank = [](const DistLattice & l) {
                vector<size_t> r(l.size(), 0);
                for (Element x = 0; x < l.size(); ++x)
                    for (Element y = 0; y < l.size(); ++y)
                        if (l.leq(y, x))
                            ++r[x];
                return r;
            };
            auto ra = rank(a), rb = rank(b);
            auto ja = a.join_irreducibles(), jb = b.join_irreducibles();
            if (ja.size() != jb.size())
                return result;
            vector<bool> irr_a(a.size(), false), irr_b(b.size(), false);
            for (auto x : ja)
                irr_a[x] = true;
            for (auto x : jb)
                irr_b[x] = true;
            HomSearchOptions options;
            options.injective = true;
            options.allowed = [&](Element x, Element y) { return ra[x] == rb[y] && irr_a[x] == irr_b[y]; };
            auto dom = a.view(), cod = b.view();
            search_homs(dom, cod, ja, options, [&](const vector<Element> & table) {
                result.push_back(table);
                return ! first_only;
            });
            return result;
        }
    }

    auto lattice_isomorphisms(const DistLattice & a, const DistLattice & b) -> vector<vector<Element>>
    {
        return lattice_iso_search(a, b, false);
    }

    auto find_lattice_isomorphism(const DistLattice & a, const DistLattice & b) -> optional<vector<Element>>
    {
        auto found = lattice_iso_search(a, b, true);
        if (found.empty())
            return std::nullopt;
        return found.front();
    }
}
