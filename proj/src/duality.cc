#include <kndual/duality.hh>

#include <kndual/error.hh>
#include <kndual/kn.hh>

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

namespace kndual
{
    using std::size_t;
    using std::string;
    using std::vector;

    namespace
    {
        struct Level
        {
            FiniteAlgebra k;
            QuasiOrder order;
            /// preimages[v] lists the a in K_m with h_{m,m-1}(a) = v.
            vector<vector<Element>> preimages;
        };

        auto make_levels(size_t n) -> vector<Level>
        {
            vector<Level> levels;
            for (size_t m = 0; m <= n; ++m) {
                Level level{build_kn(m).algebra, s_nm(m, m), {}};
                if (m > 0) {
                    auto h = h_nm(m, m - 1);
                    level.preimages.resize(3 * (m - 1) + 4);
                    for (Element a = 0; a < h.size(); ++a)
                        level.preimages[h[a]].push_back(a);
                }
                levels.push_back(std::move(level));
            }
            return levels;
        }

        auto up_rows(size_t size, const std::function<auto(size_t, size_t)->bool> & leq) -> vector<Subset>
        {
            vector<Subset> rows(size, Subset(size));
            for (size_t x = 0; x < size; ++x)
                for (size_t y = 0; y < size; ++y)
                    if (leq(x, y))
                        rows[x].set(y);
            return rows;
        }

        auto pointwise(const vector<vector<Element>> & homs, const QuasiOrder & r) -> QuasiOrder
        {
            return QuasiOrder::from_matrix(homs.size(), up_rows(homs.size(), [&](size_t x, size_t y) {
                for (size_t c = 0; c < homs[x].size(); ++c)
                    if (! r.leq(homs[x][c], homs[y][c]))
                        return false;
                return true;
            }));
        }

        /// Throws if some pair of elements of `a` gets the same value under
        /// every homomorphism in `families`.
        template <typename Error>
        auto require_separation(const FiniteAlgebra & a, const vector<const vector<vector<Element>> *> & families)
            -> void
        {
            std::map<vector<Element>, Element> seen;
            for (Element c = 0; c < a.size(); ++c) {
                vector<Element> signature;
                for (auto * family : families)
                    for (auto & h : *family)
                        signature.push_back(h[c]);
                auto [it, inserted] = seen.emplace(std::move(signature), c);
                if (! inserted)
                    throw Error("no homomorphism separates " + a.name(it->second) + " from " + a.name(c));
            }
        }

        auto key_of(const SortedMap & m) -> string
        {
            string key;
            for (auto & sort : m) {
                for (auto v : sort)
                    key.push_back(char(v));
                key.push_back('\xff');
            }
            return key;
        }

        auto map_name(const SortedMap & m, const vector<FiniteAlgebra> & targets) -> string
        {
            string name;
            size_t points = 0;
            for (size_t s = 0; s < m.size(); ++s) {
                if (s > 0)
                    name += " | ";
                for (size_t p = 0; p < m[s].size(); ++p) {
                    if (p > 0)
                        name += ' ';
                    name += targets[s].name(m[s][p]);
                }
                points += m[s].size();
            }
            return points == 0 ? string("*") : name;
        }

        /// The algebra on `maps` with operations computed pointwise in the
        /// target algebras, targets[s] receiving the values of sort s.
        auto tabulate(vector<SortedMap> maps, const vector<FiniteAlgebra> & targets, const Limits & limits) -> Evaluated
        {
            auto size = maps.size();
            check_size(size, limits.max_table_elements, "tabulated algebra of maps");
            std::unordered_map<string, Element> index;
            for (Element i = 0; i < size; ++i)
                index.emplace(key_of(maps[i]), i);
            auto lookup = [&](const SortedMap & m) {
                auto it = index.find(key_of(m));
                if (it == index.end())
                    throw ClosureFailure("pointwise operation left the set of structure-preserving maps");
                return it->second;
            };

            auto constant = [&](bool top) {
                SortedMap c = maps.empty() ? SortedMap(targets.size()) : maps[0];
                for (size_t s = 0; s < c.size(); ++s)
                    for (auto & v : c[s])
                        v = top ? targets[s].top() : targets[s].bot();
                return lookup(c);
            };

            Operations ops;
            ops.bot = constant(false);
            ops.top = constant(true);
            vector<vector<Element> *> binary{&ops.kmeet, &ops.kjoin, &ops.tmeet, &ops.tjoin};
            for (auto * t : binary)
                t->resize(size * size);
            ops.neg.resize(size);
            SortedMap buffer = maps.empty() ? SortedMap{} : maps[0];
            for (size_t op = 0; op < 5; ++op)
                for (Element a = 0; a < size; ++a)
                    for (Element b = 0; b < (op == 4 ? 1u : size); ++b) {
                        for (size_t s = 0; s < buffer.size(); ++s)
                            for (size_t p = 0; p < buffer[s].size(); ++p)
                                buffer[s][p] = apply_operation(targets[s], op, maps[a][s][p], maps[b][s][p]);
                        auto r = lookup(buffer);
                        if (op == 4)
                            ops.neg[a] = r;
                        else
                            (*binary[op])[a * size + b] = r;
                    }

            vector<string> names;
            for (auto & m : maps)
                names.push_back(map_name(m, targets));
            Evaluated result;
            result.algebra = FiniteAlgebra(size, std::move(ops), std::move(names), false);
            result.maps = std::move(maps);
            return result;
        }

        class MorphismSearch
        {
        public:
            MorphismSearch(const MultisortedSpace & x, const Retained & keep) :
                _x(x),
                _keep(keep),
                _levels(make_levels(x.n()))
            {
                for (size_t m = 0; m < x.sorts.size(); ++m) {
                    _values.emplace_back(x.sorts[m].size(), no_element);
                    for (size_t p = 0; p < x.sorts[m].size(); ++p)
                        _order.emplace_back(m, p);
                }
            }

            auto run(const std::function<auto(const SortedMap &)->bool> & visit) -> void
            {
                _visit = &visit;
                _stopped = false;
                step(0);
            }

            auto targets() const -> vector<FiniteAlgebra>
            {
                vector<FiniteAlgebra> result;
                for (auto & l : _levels)
                    result.push_back(l.k);
                return result;
            }

        private:
            const MultisortedSpace & _x;
            const Retained & _keep;
            vector<Level> _levels;
            SortedMap _values;
            vector<std::pair<size_t, size_t>> _order;
            const std::function<auto(const SortedMap &)->bool> * _visit = nullptr;
            bool _stopped = false;

            auto consistent(size_t m, size_t p, Element c) const -> bool
            {
                if (! _keep.relations[m])
                    return true;
                auto & r = _x.sorts[m];
                auto & s = _levels[m].order;
                for (size_t q = 0; q < p; ++q) {
                    if (r.leq(q, p) && ! s.leq(_values[m][q], c))
                        return false;
                    if (r.leq(p, q) && ! s.leq(c, _values[m][q]))
                        return false;
                }
                return true;
            }

            auto try_value(size_t idx, size_t m, size_t p, Element c) -> void
            {
                if (! consistent(m, p, c))
                    return;
                _values[m][p] = c;
                step(idx + 1);
            }

            auto step(size_t idx) -> void
            {
                if (_stopped)
                    return;
                if (idx == _order.size()) {
                    if (! (*_visit)(_values))
                        _stopped = true;
                    return;
                }
                auto [m, p] = _order[idx];
                if (m > 0 && _keep.links[m - 1]) {
                    auto below = _values[m - 1][_x.links[m - 1][p]];
                    for (auto c : _levels[m].preimages[below]) {
                        try_value(idx, m, p, c);
                        if (_stopped)
                            return;
                    }
                } else {
                    for (Element c = 0; c < _levels[m].k.size(); ++c) {
                        try_value(idx, m, p, c);
                        if (_stopped)
                            return;
                    }
                }
            }
        };

        auto require_dual_object(const MultisortedSpace & x) -> void
        {
            if (x.sorts.empty())
                throw InvalidDualObject("no sorts");
            auto verdict = check_dual_object(x);
            if (! verdict.valid)
                throw InvalidDualObject(verdict.detail);
        }

        auto omega_table(size_t j, bool t) -> vector<bool>
        {
            auto order = kn_knowledge_order(j);
            auto base = kn_index(j, t ? Kind::t : Kind::f, j);
            vector<bool> table(order.size());
            for (size_t a = 0; a < order.size(); ++a)
                table[a] = order.leq(base, a);
            return table;
        }

        struct DualAndMaps
        {
            DualSpace dual;
            vector<SortedMap> non_evaluations;
        };

        auto evaluation_at(const DualSpace & d, Element c) -> SortedMap
        {
            SortedMap v(d.homs.size());
            for (size_t m = 0; m < d.homs.size(); ++m)
                for (auto & h : d.homs[m])
                    v[m].push_back(h[c]);
            return v;
        }

        auto find_non_evaluations(const FiniteAlgebra & a, size_t n, const Retained & keep) -> DualAndMaps
        {
            DualAndMaps result{dualize(a, n), {}};
            std::set<SortedMap> evaluations;
            for (Element c = 0; c < a.size(); ++c)
                evaluations.insert(evaluation_at(result.dual, c));
            for (auto & m : enumerate_morphisms(result.dual.space, keep))
                if (! evaluations.count(m))
                    result.non_evaluations.push_back(m);
            return result;
        }
    }

    auto MultisortedSpace::point_count() const -> size_t
    {
        size_t total = 0;
        for (auto & s : sorts)
            total += s.size();
        return total;
    }

    auto alter_ego(size_t n) -> MultisortedSpace
    {
        MultisortedSpace x;
        for (size_t m = 0; m <= n; ++m) {
            x.sorts.push_back(s_nm(m, m));
            if (m > 0) {
                auto h = h_nm(m, m - 1);
                x.links.emplace_back(h.begin(), h.end());
            }
        }
        return x;
    }

    auto check_dual_object(const MultisortedSpace & x) -> DualObjectVerdict
    {
        auto fail = [](int condition, string detail) { return DualObjectVerdict{false, condition, std::move(detail)}; };
        for (size_t m = 0; m < x.sorts.size(); ++m)
            if (! x.sorts[m].is_antisymmetric())
                return fail(1, "sort " + std::to_string(m) + " is not a partial order");
        if (x.sorts.empty() || x.links.size() + 1 != x.sorts.size())
            return fail(2, "expected one link per sort above sort 0");
        for (size_t i = 1; i < x.sorts.size(); ++i) {
            auto & g = x.links[i - 1];
            if (g.size() != x.sorts[i].size())
                return fail(2, "link " + std::to_string(i) + " is not defined on all of sort " + std::to_string(i));
            for (auto v : g)
                if (v >= x.sorts[i - 1].size())
                    return fail(2, "link " + std::to_string(i) + " leaves sort " + std::to_string(i - 1));
        }
        for (size_t i = 1; i < x.sorts.size(); ++i)
            for (auto [p, q] : x.sorts[i].pairs())
                if (x.links[i - 1][p] != x.links[i - 1][q])
                    return fail(3, "link " + std::to_string(i) + " separates related points " + x.sorts[i].label(p)
                            + " and " + x.sorts[i].label(q));
        return {};
    }

    auto dualize(const FiniteAlgebra & a, size_t n) -> DualSpace
    {
        auto levels = make_levels(n);
        DualSpace d;
        for (size_t m = 0; m <= n; ++m)
            d.homs.push_back(homs(a, levels[m].k));
        vector<const vector<vector<Element>> *> families;
        for (auto & h : d.homs)
            families.push_back(&h);
        require_separation<NotInVariety>(a, families);

        for (size_t m = 0; m <= n; ++m) {
            d.space.sorts.push_back(pointwise(d.homs[m], levels[m].order));
            if (m == 0)
                continue;
            auto h = h_nm(m, m - 1);
            std::map<vector<Element>, size_t> below;
            for (size_t y = 0; y < d.homs[m - 1].size(); ++y)
                below.emplace(d.homs[m - 1][y], y);
            vector<size_t> link;
            for (auto & x : d.homs[m]) {
                vector<Element> composite(x.size());
                for (size_t c = 0; c < x.size(); ++c)
                    composite[c] = h[x[c]];
                auto it = below.find(composite);
                if (it == below.end())
                    throw InvalidDualObject("composite with h_{m,m-1} is not a homomorphism");
                link.push_back(it->second);
            }
            d.space.links.push_back(std::move(link));
        }
        return d;
    }

    auto Retained::all(size_t n) -> Retained
    {
        return {vector<bool>(n + 1, true), vector<bool>(n, true)};
    }

    auto enumerate_morphisms(const MultisortedSpace & x, const Retained & keep, const Limits & limits)
        -> vector<SortedMap>
    {
        vector<SortedMap> result;
        MorphismSearch search(x, keep);
        search.run([&](const SortedMap & m) {
            result.push_back(m);
            check_size(result.size(), limits.max_elements, "structure-preserving maps");
            return true;
        });
        return result;
    }

    auto count_morphisms(const MultisortedSpace & x, const Retained & keep) -> std::uint64_t
    {
        std::uint64_t count = 0;
        MorphismSearch search(x, keep);
        search.run([&](const SortedMap &) {
            ++count;
            return true;
        });
        return count;
    }

    auto Evaluated::index_of(const SortedMap & m) const -> std::optional<Element>
    {
        auto it = std::lower_bound(maps.begin(), maps.end(), m);
        if (it == maps.end() || *it != m)
            return std::nullopt;
        return Element(it - maps.begin());
    }

    auto evaluate(const MultisortedSpace & x, const Limits & limits) -> Evaluated
    {
        require_dual_object(x);
        auto maps = enumerate_morphisms(x, Retained::all(x.n()), limits);
        return tabulate(std::move(maps), MorphismSearch(x, Retained::all(x.n())).targets(), limits);
    }

    auto evaluation_map(const FiniteAlgebra & a, size_t n, const Limits & limits) -> EvaluationMap
    {
        EvaluationMap e;
        e.dual = dualize(a, n);
        e.evaluated = evaluate(e.dual.space, limits);
        for (Element c = 0; c < a.size(); ++c) {
            auto index = e.evaluated.index_of(evaluation_at(e.dual, c));
            if (! index)
                throw ClosureFailure("evaluation at " + a.name(c) + " is not structure-preserving");
            e.table.push_back(*index);
        }
        e.homomorphism = is_homomorphism(a, e.evaluated.algebra, e.table);
        e.bijective = std::set<Element>(e.table.begin(), e.table.end()).size() == a.size()
            && e.evaluated.algebra.size() == a.size();
        return e;
    }

    auto counit_check(const MultisortedSpace & x, const Limits & limits) -> bool
    {
        auto e = evaluate(x, limits);
        auto d = dualize(e.algebra, x.n());
        vector<vector<size_t>> eps(x.sorts.size());
        for (size_t m = 0; m < x.sorts.size(); ++m) {
            if (d.space.sorts[m].size() != x.sorts[m].size())
                return false;
            for (size_t p = 0; p < x.sorts[m].size(); ++p) {
                vector<Element> table;
                for (auto & f : e.maps)
                    table.push_back(f[m][p]);
                auto it = std::find(d.homs[m].begin(), d.homs[m].end(), table);
                if (it == d.homs[m].end())
                    return false;
                eps[m].push_back(size_t(it - d.homs[m].begin()));
            }
            if (std::set<size_t>(eps[m].begin(), eps[m].end()).size() != eps[m].size())
                return false;
            for (size_t p = 0; p < x.sorts[m].size(); ++p)
                for (size_t q = 0; q < x.sorts[m].size(); ++q)
                    if (x.sorts[m].leq(p, q) != d.space.sorts[m].leq(eps[m][p], eps[m][q]))
                        return false;
            if (m > 0)
                for (size_t p = 0; p < x.sorts[m].size(); ++p)
                    if (d.space.links[m - 1][eps[m][p]] != eps[m - 1][x.links[m - 1][p]])
                        return false;
        }
        return true;
    }

    auto dual_morphism(const vector<Element> & f, const DualSpace & da, const DualSpace & db) -> vector<vector<size_t>>
    {
        if (da.homs.size() != db.homs.size())
            throw LengthMismatch("dual spaces have different numbers of sorts");
        vector<vector<size_t>> result(db.homs.size());
        for (size_t m = 0; m < db.homs.size(); ++m)
            for (auto & y : db.homs[m]) {
                vector<Element> composite(f.size());
                for (size_t c = 0; c < f.size(); ++c)
                    composite[c] = y[f[c]];
                auto it = std::find(da.homs[m].begin(), da.homs[m].end(), composite);
                if (it == da.homs[m].end())
                    throw InvalidHomomorphism("composite is not a point of the domain's dual");
                result[m].push_back(size_t(it - da.homs[m].begin()));
            }
        return result;
    }

    auto alter_ego_power(size_t n, size_t k, const Limits & limits) -> MultisortedSpace
    {
        if (k == 0)
            throw BadIndices("need at least one generator");
        auto levels = make_levels(n);
        MultisortedSpace x;
        for (size_t m = 0; m <= n; ++m) {
            auto base = levels[m].k.size();
            size_t size = 1;
            for (size_t i = 0; i < k; ++i) {
                size *= base;
                check_size(size, limits.max_elements, "points of a sort of the power");
            }
            vector<size_t> sizes(k, base);
            vector<vector<Element>> coords(size);
            for (size_t p = 0; p < size; ++p)
                coords[p] = product_coordinates(sizes, p);
            auto & s = levels[m].order;
            auto sort = QuasiOrder::from_matrix(size, up_rows(size, [&](size_t p, size_t q) {
                for (size_t i = 0; i < k; ++i)
                    if (! s.leq(coords[p][i], coords[q][i]))
                        return false;
                return true;
            }));
            vector<string> labels;
            for (auto & c : coords) {
                string label = k > 1 ? "(" : "";
                for (size_t i = 0; i < k; ++i)
                    label += (i ? "," : "") + levels[m].k.name(c[i]);
                labels.push_back(k > 1 ? label + ")" : label);
            }
            sort.set_labels(std::move(labels));
            x.sorts.push_back(std::move(sort));
            if (m > 0) {
                auto h = h_nm(m, m - 1);
                vector<size_t> below_sizes(k, levels[m - 1].k.size());
                vector<size_t> link(size);
                for (size_t p = 0; p < size; ++p) {
                    auto c = coords[p];
                    for (auto & v : c)
                        v = h[v];
                    link[p] = product_index(below_sizes, c);
                }
                x.links.push_back(std::move(link));
            }
        }
        return x;
    }

    auto free_algebra(size_t n, size_t k, const Limits & limits) -> Evaluated
    {
        return evaluate(alter_ego_power(n, k, limits), limits);
    }

    auto free_algebra_count(size_t n, size_t k, const Limits & limits) -> std::uint64_t
    {
        return count_up_sets(priestley_reconstruction(alter_ego_power(n, k, limits)));
    }

    auto free_algebra_count_by_maps(size_t n, size_t k, const Limits & limits) -> std::uint64_t
    {
        return count_morphisms(alter_ego_power(n, k, limits), Retained::all(n));
    }

    auto free_algebra_lower_bound(size_t n) -> std::uint64_t
    {
        if (n > 8)
            throw SizeOverflow("lower bound does not fit in 64 bits");
        std::uint64_t power = 1;
        for (size_t i = 0; i <= n; ++i)
            power *= 64;
        return (power - 1) / 63 * 36;
    }

    auto priestley_reconstruction(const MultisortedSpace & x) -> Poset
    {
        require_dual_object(x);
        auto levels = x.sorts.size();
        vector<size_t> offset(levels + 1, 0);
        for (size_t m = 0; m < levels; ++m)
            offset[m + 1] = offset[m] + 2 * x.sorts[m].size();
        auto size = offset[levels];
        auto index = [&](size_t m, size_t p, size_t copy) { return offset[m] + copy * x.sorts[m].size() + p; };

        vector<std::pair<size_t, size_t>> pairs;
        for (size_t m = 0; m < levels; ++m)
            for (auto [p, q] : x.sorts[m].pairs())
                for (size_t copy = 0; copy < 2; ++copy)
                    pairs.emplace_back(index(m, p, copy), index(m, q, copy));
        for (size_t j = 1; j < levels; ++j)
            for (size_t y = 0; y < x.sorts[j].size(); ++y) {
                auto image = y;
                for (size_t i = j; i-- > 0;) {
                    image = x.links[i][image];
                    for (size_t low = 0; low < 2; ++low)
                        for (size_t high = 0; high < 2; ++high)
                            pairs.emplace_back(index(i, image, low), index(j, y, high));
                }
            }

        auto closed = QuasiOrder::generated_by(size, pairs);
        if (! closed.is_antisymmetric())
            throw ClosureFailure("reconstructed relation is not antisymmetric");
        for (size_t m = 0; m < levels; ++m)
            for (size_t p = 0; p < x.sorts[m].size(); ++p)
                for (size_t q = 0; q < x.sorts[m].size(); ++q)
                    if (closed.leq(index(m, p, 0), index(m, q, 1)) || closed.leq(index(m, p, 1), index(m, q, 0)))
                        throw ClosureFailure("the two copies of level " + std::to_string(m) + " are related");

        vector<string> labels(size);
        for (size_t m = 0; m < levels; ++m)
            for (size_t p = 0; p < x.sorts[m].size(); ++p)
                for (size_t copy = 0; copy < 2; ++copy)
                    labels[index(m, p, copy)] = x.sorts[m].label(p) + ":" + std::to_string(m) + (copy ? "f" : "t");
        closed.set_labels(std::move(labels));
        return Poset(std::move(closed));
    }

    auto omega(size_t j, bool t, Element a) -> bool
    {
        return omega_table(j, t).at(a);
    }

    auto separation_check(size_t n) -> SeparationReport
    {
        SeparationReport report;
        vector<std::array<vector<bool>, 2>> omegas;
        for (size_t j = 0; j <= n; ++j)
            omegas.push_back({omega_table(j, true), omega_table(j, false)});
        for (size_t m = 0; m <= n; ++m) {
            vector<vector<Element>> h;
            for (size_t j = 0; j <= m; ++j)
                h.push_back(h_nm(m, j));
            auto size = Element(3 * m + 4);
            for (Element a = 0; a < size; ++a)
                for (Element b = a + 1; b < size; ++b) {
                    bool found = false;
                    for (size_t j = 0; j <= m && ! found; ++j)
                        for (int side = 0; side < 2 && ! found; ++side)
                            if (omegas[j][side][h[j][a]] != omegas[j][side][h[j][b]]) {
                                report.witnesses.push_back({m, a, b, j, side == 0});
                                found = true;
                            }
                    report.separated = report.separated && found;
                }
        }
        return report;
    }

    auto maximal_relations(size_t j, bool omega_t, size_t m, bool omega_prime_t) -> vector<Subset>
    {
        auto kj = build_kn(j).algebra, km = build_kn(m).algebra;
        auto left = omega_table(j, omega_t), right = omega_table(m, omega_prime_t);
        auto p = product({kj, km});
        Subset allowed(p.size());
        for (size_t a = 0; a < kj.size(); ++a)
            for (size_t b = 0; b < km.size(); ++b)
                if (! left[a] || right[b])
                    allowed.set(a * km.size() + b);
        vector<Subset> inside;
        for (auto & s : all_subalgebras(p))
            if (s.is_subset_of(allowed))
                inside.push_back(s);
        vector<Subset> result;
        for (auto & s : inside) {
            bool maximal = true;
            for (auto & t : inside)
                if (s != t && s.is_subset_of(t))
                    maximal = false;
            if (maximal)
                result.push_back(s);
        }
        return result;
    }

    auto non_evaluation_maps(const FiniteAlgebra & a, size_t n, const Retained & keep) -> vector<SortedMap>
    {
        return find_non_evaluations(a, n, keep).non_evaluations;
    }

    auto optimality_witness(size_t n, Drop drop) -> OptimalityWitness
    {
        auto m = drop.m;
        if (m > n || (drop.kind == DropKind::link && m == 0))
            throw BadIndices("no such piece of the alter ego to drop");
        OptimalityWitness w;
        auto keep = Retained::all(n);
        if (drop.kind == DropKind::relation) {
            w.test_algebra = s_nm_algebra(m, m);
            keep.relations[m] = false;
        } else {
            w.test_algebra = build_kn(m).algebra;
            keep.links[m - 1] = false;
        }
        auto found = find_non_evaluations(w.test_algebra, n, keep);
        w.dual = std::move(found.dual);
        w.non_evaluations = std::move(found.non_evaluations);
        if (w.non_evaluations.empty())
            throw NoWitness("every map respecting the remaining structure is an evaluation");

        auto & sorts = w.dual.space.sorts;
        bool shaped = true;
        for (size_t i = 0; i <= n; ++i) {
            size_t expected = i > m ? 0 : (i == m && drop.kind == DropKind::relation ? 2 : 1);
            shaped = shaped && sorts[i].size() == expected;
        }
        if (shaped) {
            w.construction.assign(n + 1, {});
            for (size_t i = 0; i < m; ++i)
                w.construction[i] = {kn_index(i, Kind::top, i + 1)};
            if (drop.kind == DropKind::relation) {
                size_t rho1 = sorts[m].leq(0, 1) ? 0 : 1;
                w.construction[m].assign(2, 0);
                w.construction[m][rho1] = kn_index(m, Kind::f, m);
                w.construction[m][1 - rho1] = kn_index(m, Kind::t, m);
            } else {
                w.construction[m] = {kn_index(m, Kind::top, m - 1)};
            }
            w.construction_found = std::find(w.non_evaluations.begin(), w.non_evaluations.end(), w.construction)
                != w.non_evaluations.end();
        }
        return w;
    }

    auto quasivariety_alter_ego(size_t n) -> QuasiSpace
    {
        QuasiSpace x;
        for (size_t i = 0; i <= n; ++i)
            x.relations.push_back(s_nm(n, n - i));
        return x;
    }

    auto quasivariety_dualize(const FiniteAlgebra & a, size_t n) -> QuasiDual
    {
        QuasiDual d;
        d.homs = homs(a, build_kn(n).algebra);
        require_separation<NotInQuasivariety>(a, {&d.homs});
        for (size_t i = 0; i <= n; ++i)
            d.space.relations.push_back(pointwise(d.homs, s_nm(n, n - i)));
        return d;
    }

    auto quasivariety_evaluate(const QuasiSpace & x, const Limits & limits) -> Evaluated
    {
        auto verdict = check_quasi_dual_object(x);
        if (! verdict.valid)
            throw InvalidDualObject(verdict.detail);
        auto n = x.relations.size() - 1;
        auto kn = build_kn(n).algebra;
        vector<QuasiOrder> s;
        for (size_t i = 0; i <= n; ++i)
            s.push_back(s_nm(n, n - i));

        auto size = x.size();
        vector<SortedMap> maps;
        SortedMap values{vector<Element>(size)};
        auto & v = values[0];
        std::function<void(size_t)> step = [&](size_t p) {
            if (p == size) {
                maps.push_back(values);
                check_size(maps.size(), limits.max_elements, "structure-preserving maps");
                return;
            }
            for (Element c = 0; c < kn.size(); ++c) {
                bool ok = true;
                for (size_t i = 0; i <= n && ok; ++i)
                    for (size_t q = 0; q < p && ok; ++q)
                        ok = (! x.relations[i].leq(q, p) || s[i].leq(v[q], c))
                            && (! x.relations[i].leq(p, q) || s[i].leq(c, v[q]));
                if (ok) {
                    v[p] = c;
                    step(p + 1);
                }
            }
        };
        step(0);
        return tabulate(std::move(maps), {kn}, limits);
    }

    auto quasivariety_evaluation_map(const FiniteAlgebra & a, size_t n, const Limits & limits) -> QuasiEvaluationMap
    {
        QuasiEvaluationMap e;
        e.dual = quasivariety_dualize(a, n);
        e.evaluated = quasivariety_evaluate(e.dual.space, limits);
        for (Element c = 0; c < a.size(); ++c) {
            SortedMap at(1);
            for (auto & h : e.dual.homs)
                at[0].push_back(h[c]);
            auto index = e.evaluated.index_of(at);
            if (! index)
                throw ClosureFailure("evaluation at " + a.name(c) + " is not structure-preserving");
            e.table.push_back(*index);
        }
        e.homomorphism = is_homomorphism(a, e.evaluated.algebra, e.table);
        e.bijective = std::set<Element>(e.table.begin(), e.table.end()).size() == a.size()
            && e.evaluated.algebra.size() == a.size();
        return e;
    }

    auto check_quasi_dual_object(const QuasiSpace & x) -> DualObjectVerdict
    {
        auto fail = [](int condition, string detail) { return DualObjectVerdict{false, condition, std::move(detail)}; };
        auto & r = x.relations;
        if (r.empty())
            return fail(1, "no relations");
        if (! r[0].is_antisymmetric())
            return fail(1, "the first relation is not a partial order");
        for (size_t i = 1; i < r.size(); ++i)
            if (r[i].size() != r[0].size() || ! r[0].is_sub_relation_of(r[i]))
                return fail(2, "relation " + std::to_string(i) + " does not extend the first");
        for (size_t i = 1; i < r.size(); ++i)
            if (! r[i - 1].is_sub_relation_of(r[i]))
                return fail(3, "relation " + std::to_string(i - 1) + " is not contained in relation " + std::to_string(i));
        for (size_t i = 0; i < r.size(); ++i)
            for (size_t j = i + 1; j < r.size(); ++j)
                if (! r[i].converse().is_sub_relation_of(r[j]))
                    return fail(4, "converse of relation " + std::to_string(i) + " escapes relation " + std::to_string(j));
        return {};
    }
}
