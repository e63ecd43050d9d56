#include <kndual/product_rep.hh>

#include <kndual/error.hh>
#include <kndual/kn.hh>

#include <algorithm>
#include <functional>
#include <set>

namespace kndual
{
    using std::size_t;
    using std::string;
    using std::vector;

    namespace
    {
        auto tuple_name(const DefaultSequence & s, const Tuple & a) -> string
        {
            vector<string> labels;
            bool short_labels = true;
            for (size_t c = 0; c < a.size(); ++c) {
                labels.push_back(s.lattices[c / 2].label(a[c]));
                short_labels = short_labels && labels.back().size() == 1;
            }
            string name;
            for (size_t c = 0; c < labels.size(); ++c) {
                if (! short_labels && c > 0)
                    name += ",";
                name += labels[c];
            }
            return short_labels ? name : "(" + name + ")";
        }

        auto require_valid(const DefaultSequence & s) -> void
        {
            auto verdict = validate_sequence(s);
            if (! verdict.valid)
                throw InvalidSequence(verdict.detail);
        }

        /// h_i(a_{i-1,t} v a_{i-1,f}), the least value allowed at level i.
        auto floor_at(const DefaultSequence & s, size_t i, const Tuple & a) -> Element
        {
            auto & below = s.lattices[i - 1];
            return s.homs[i - 1](below.join(a[2 * (i - 1)], a[2 * (i - 1) + 1]));
        }

        /// The element of `l` whose H-points are exactly `points`.
        auto element_with_points(const DistLattice & l, const LatticeDual & dual, const Subset & points)
            -> std::optional<Element>
        {
            for (Element a = 0; a < l.size(); ++a) {
                bool match = true;
                for (size_t z = 0; z < dual.points.size() && match; ++z)
                    match = (dual.points[z][a] == 1) == points[z];
                if (match)
                    return a;
            }
            return std::nullopt;
        }

        /// Value of iota in Case 1: from the bits (z(a_t), z(a_f)).
        auto case_one(size_t i, bool t, bool f) -> Element
        {
            if (t && f)
                return kn_index(i, Kind::top, i);
            if (t)
                return kn_index(i, Kind::t, i);
            if (f)
                return kn_index(i, Kind::f, i);
            return kn_index(i, Kind::top, i + 1);
        }
    }

    auto make_sequence(vector<DistLattice> lattices, const vector<vector<Element>> & hom_tables) -> DefaultSequence
    {
        if (lattices.empty() || hom_tables.size() + 1 != lattices.size())
            throw LengthMismatch("a sequence of " + std::to_string(lattices.size()) + " lattices needs "
                + std::to_string(lattices.empty() ? 0 : lattices.size() - 1) + " homomorphisms");
        DefaultSequence s;
        s.lattices = std::move(lattices);
        for (size_t j = 1; j < s.lattices.size(); ++j) {
            s.homs.emplace_back(s.lattices[j - 1], s.lattices[j], hom_tables[j - 1]);
            vector<Element> comp(s.lattices[j].size(), no_element);
            for (auto c : hom_tables[j - 1])
                if (auto d = complement_of(s.lattices[j], c))
                    comp[c] = *d;
            s.complements.push_back(std::move(comp));
        }
        return s;
    }

    auto all_two_sequence(size_t n) -> DefaultSequence
    {
        return make_sequence(vector<DistLattice>(n + 1, DistLattice::chain(2)), vector<vector<Element>>(n, {0, 1}));
    }

    auto validate_sequence(const DefaultSequence & s) -> SequenceVerdict
    {
        auto fail = [](size_t j, std::optional<Element> c, string detail) {
            return SequenceVerdict{false, j, c, std::move(detail)};
        };
        if (s.lattices.empty())
            return fail(0, std::nullopt, "sequence has no lattices");
        if (s.homs.size() + 1 != s.lattices.size() || s.complements.size() != s.homs.size())
            return fail(0, std::nullopt, "expected one homomorphism and one complement table per level above 0");
        for (size_t j = 1; j < s.lattices.size(); ++j) {
            auto & h = s.homs[j - 1];
            auto & l = s.lattices[j];
            if (h.dom().size() != s.lattices[j - 1].size() || h.cod().size() != l.size())
                return fail(j, std::nullopt, "h_" + std::to_string(j) + " does not map L_" + std::to_string(j - 1)
                        + " into L_" + std::to_string(j));
            if (s.complements[j - 1].size() != l.size())
                return fail(j, std::nullopt, "complement table of level " + std::to_string(j) + " has the wrong size");
            for (Element a = 0; a < h.dom().size(); ++a) {
                auto c = h(a);
                auto d = s.complements[j - 1][c];
                if (d == no_element || d >= l.size() || l.meet(c, d) != l.bot() || l.join(c, d) != l.top())
                    return fail(j, c, "element " + l.label(c) + " of h_" + std::to_string(j) + "(L_"
                            + std::to_string(j - 1) + ") has no complement in L_" + std::to_string(j));
            }
        }
        return {};
    }

    auto make_default_morphism(const DefaultSequence & s, const DefaultSequence & t, vector<LatticeHom> maps)
        -> DefaultMorphism
    {
        if (s.lattices.size() != t.lattices.size() || maps.size() != s.lattices.size())
            throw LengthMismatch("a default morphism needs one map per level of equal-length sequences");
        for (size_t j = 0; j < maps.size(); ++j)
            if (maps[j].dom().size() != s.lattices[j].size() || maps[j].cod().size() != t.lattices[j].size())
                throw InvalidHomomorphism("map " + std::to_string(j) + " has the wrong domain or codomain");
        for (size_t j = 1; j < maps.size(); ++j)
            for (Element a = 0; a < s.lattices[j - 1].size(); ++a)
                if (maps[j](s.homs[j - 1](a)) != t.homs[j - 1](maps[j - 1](a)))
                    throw InvalidHomomorphism("square at level " + std::to_string(j) + " does not commute");
        return {std::move(maps)};
    }

    auto compose(const DefaultMorphism & g, const DefaultMorphism & f) -> DefaultMorphism
    {
        if (g.maps.size() != f.maps.size())
            throw LengthMismatch("default morphisms of different lengths");
        DefaultMorphism result;
        for (size_t j = 0; j < f.maps.size(); ++j)
            result.maps.push_back(g.maps[j].after(f.maps[j]));
        return result;
    }

    auto find_sequence_isomorphism(const DefaultSequence & s, const DefaultSequence & t)
        -> std::optional<DefaultMorphism>
    {
        if (s.lattices.size() != t.lattices.size())
            return std::nullopt;
        vector<vector<vector<Element>>> candidates;
        for (size_t j = 0; j < s.lattices.size(); ++j) {
            candidates.push_back(lattice_isomorphisms(s.lattices[j], t.lattices[j]));
            if (candidates.back().empty())
                return std::nullopt;
        }
        vector<const vector<Element> *> chosen(s.lattices.size());
        std::function<auto(size_t)->bool> extend = [&](size_t j) {
            if (j == s.lattices.size())
                return true;
            for (auto & f : candidates[j]) {
                bool commutes = true;
                if (j > 0)
                    for (Element a = 0; a < s.lattices[j - 1].size() && commutes; ++a)
                        commutes = f[s.homs[j - 1](a)] == t.homs[j - 1]((*chosen[j - 1])[a]);
                if (! commutes)
                    continue;
                chosen[j] = &f;
                if (extend(j + 1))
                    return true;
            }
            return false;
        };
        if (! extend(0))
            return std::nullopt;
        vector<LatticeHom> maps;
        for (size_t j = 0; j < chosen.size(); ++j)
            maps.emplace_back(s.lattices[j], t.lattices[j], *chosen[j]);
        return make_default_morphism(s, t, std::move(maps));
    }

    auto functor_Hn(const DefaultSequence & s) -> SequenceDual
    {
        require_valid(s);
        SequenceDual result;
        for (size_t i = 0; i < s.lattices.size(); ++i) {
            result.duals.push_back(H(s.lattices[i]));
            result.space.sorts.push_back(result.duals.back().order);
            if (i == 0)
                continue;
            auto dual = hom_dual(s.homs[i - 1], result.duals[i - 1], result.duals[i]);
            result.space.links.push_back(dual.map.table());
        }
        auto verdict = check_dual_object(result.space);
        if (! verdict.valid)
            throw InvalidSequence("dual is not a dual object: " + verdict.detail);
        return result;
    }

    auto functor_Kn(const MultisortedSpace & x) -> UpSetSequence
    {
        auto verdict = check_dual_object(x);
        if (! verdict.valid)
            throw InvalidDualObject(verdict.detail);
        UpSetSequence result;
        for (auto & sort : x.sorts) {
            result.upsets.push_back(K(sort));
            result.sequence.lattices.push_back(result.upsets.back().lattice);
        }
        for (size_t i = 1; i < x.sorts.size(); ++i) {
            auto & below = result.upsets[i - 1];
            auto & here = result.upsets[i];
            auto & g = x.links[i - 1];
            vector<Element> table, comp(here.sets.size(), no_element);
            for (auto & u : below.sets) {
                Subset pre(x.sorts[i].size());
                for (size_t p = 0; p < pre.size(); ++p)
                    if (u[g[p]])
                        pre.set(p);
                auto idx = here.index_of(pre);
                auto cidx = here.index_of(~pre);
                if (! idx || ! cidx)
                    throw ClosureFailure("preimage under link " + std::to_string(i) + " is not a clopen up-set");
                table.push_back(*idx);
                comp[*idx] = *cidx;
            }
            result.sequence.homs.emplace_back(below.lattice, here.lattice, std::move(table));
            result.sequence.complements.push_back(std::move(comp));
        }
        return result;
    }

    auto in_universe(const DefaultSequence & s, const Tuple & a) -> bool
    {
        if (a.size() != 2 * s.lattices.size())
            return false;
        for (size_t c = 0; c < a.size(); ++c)
            if (a[c] >= s.lattices[c / 2].size())
                return false;
        for (size_t i = 1; i < s.lattices.size(); ++i) {
            auto low = floor_at(s, i, a);
            auto & l = s.lattices[i];
            if (! l.leq(low, a[2 * i]) || ! l.leq(low, a[2 * i + 1]))
                return false;
        }
        return true;
    }

    auto coordinate_operation(const DefaultSequence & s, size_t op, const Tuple & a, const Tuple & b) -> Tuple
    {
        Tuple r(a.size());
        for (size_t i = 0; i < s.lattices.size(); ++i) {
            auto & l = s.lattices[i];
            auto at = a[2 * i], af = a[2 * i + 1], bt = b[2 * i], bf = b[2 * i + 1];
            Element & rt = r[2 * i];
            Element & rf = r[2 * i + 1];
            switch (op) {
            case 0:
                rt = l.meet(at, bt);
                rf = l.meet(af, bf);
                break;
            case 1:
                rt = l.join(at, bt);
                rf = l.join(af, bf);
                break;
            case 4:
                rt = af;
                rf = at;
                break;
            case 2:
            case 3: {
                bool tmeet = op == 2;
                if (i == 0) {
                    rt = tmeet ? l.meet(at, bt) : l.join(at, bt);
                    rf = tmeet ? l.join(af, bf) : l.meet(af, bf);
                    break;
                }
                auto low = floor_at(s, i, r);
                auto & h = s.homs[i - 1];
                auto & comp = s.complements[i - 1];
                // Guard of a's (resp. b's) contribution: the complement of
                // h_i applied to its level i-1 t-part (truth meet) or f-part.
                size_t part = tmeet ? 0 : 1;
                auto ga = comp[h(a[2 * (i - 1) + part])];
                auto gb = comp[h(b[2 * (i - 1) + part])];
                if (tmeet) {
                    rt = l.join(l.meet(at, bt), low);
                    rf = l.join(l.join(l.meet(af, ga), l.meet(bf, gb)), low);
                } else {
                    rt = l.join(l.join(l.meet(at, ga), l.meet(bt, gb)), low);
                    rf = l.join(l.meet(af, bf), low);
                }
                break;
            }
            default:
                throw BadIndices("operation " + std::to_string(op) + " is not a coordinate operation");
            }
        }
        return r;
    }

    auto ProductBilattice::index_of(const Tuple & a) const -> std::optional<Element>
    {
        auto it = std::lower_bound(universe.begin(), universe.end(), a);
        if (it == universe.end() || *it != a)
            return std::nullopt;
        return Element(it - universe.begin());
    }

    auto build_product(const DefaultSequence & s, const Limits & limits) -> ProductBilattice
    {
        require_valid(s);
        ProductBilattice p;
        p.sequence = s;
        Tuple current;
        std::function<void(size_t)> extend = [&](size_t i) {
            if (i == s.lattices.size()) {
                p.universe.push_back(current);
                check_size(p.universe.size(), limits.max_elements, "sequence product");
                return;
            }
            auto & l = s.lattices[i];
            auto low = i == 0 ? l.bot() : floor_at(s, i, current);
            for (Element x = 0; x < l.size(); ++x) {
                if (! l.leq(low, x))
                    continue;
                for (Element y = 0; y < l.size(); ++y) {
                    if (! l.leq(low, y))
                        continue;
                    current.push_back(x);
                    current.push_back(y);
                    extend(i + 1);
                    current.resize(current.size() - 2);
                }
            }
        };
        extend(0);
        auto size = p.universe.size();
        check_size(size, limits.max_table_elements, "tabulated sequence product");

        auto lookup = [&](const Tuple & t) {
            auto idx = p.index_of(t);
            if (! idx)
                throw ClosureFailure("operation leaves the sequence product at " + tuple_name(s, t));
            return *idx;
        };
        Operations ops;
        vector<Element> * binary[] = {&ops.kmeet, &ops.kjoin, &ops.tmeet, &ops.tjoin};
        for (auto * table : binary)
            table->resize(size * size);
        for (size_t a = 0; a < size; ++a) {
            ops.neg.push_back(lookup(coordinate_operation(s, 4, p.universe[a], p.universe[a])));
            for (size_t b = 0; b < size; ++b)
                for (size_t op = 0; op < 4; ++op)
                    (*binary[op])[a * size + b] = lookup(coordinate_operation(s, op, p.universe[a], p.universe[b]));
        }
        Tuple bot, top;
        for (auto & l : s.lattices) {
            bot.insert(bot.end(), {l.bot(), l.bot()});
            top.insert(top.end(), {l.top(), l.top()});
        }
        ops.bot = lookup(bot);
        ops.top = lookup(top);
        vector<string> names;
        for (auto & t : p.universe)
            names.push_back(tuple_name(s, t));
        p.algebra = FiniteAlgebra(size, std::move(ops), std::move(names), false);
        return p;
    }

    auto iota(const DefaultSequence & s, const SequenceDual & h, const Tuple & a) -> SortedMap
    {
        if (! in_universe(s, a))
            throw NotInUniverse("tuple " + (a.size() == 2 * s.lattices.size() ? tuple_name(s, a) : string("?"))
                + " is not in the sequence product");
        SortedMap f(s.lattices.size());
        for (size_t i = 0; i < s.lattices.size(); ++i) {
            auto & points = h.duals[i].points;
            for (size_t z = 0; z < points.size(); ++z) {
                bool t = points[z][a[2 * i]], fb = points[z][a[2 * i + 1]];
                if (i == 0) {
                    f[i].push_back(case_one(0, t, fb));
                    continue;
                }
                auto below = kn_element(i - 1, f[i - 1][h.space.links[i - 1][z]]);
                if (below.kind == Kind::top && below.level == i)
                    f[i].push_back(case_one(i, t, fb));
                else
                    f[i].push_back(kn_index(i, below.kind, below.level));
            }
        }
        return f;
    }

    auto iota_inv(const DefaultSequence & s, const SequenceDual & h, const SortedMap & f) -> Tuple
    {
        if (f.size() != s.lattices.size())
            throw LengthMismatch("map has the wrong number of sorts");
        Tuple a;
        for (size_t i = 0; i < s.lattices.size(); ++i) {
            auto order = kn_knowledge_order(i);
            auto & dual = h.duals[i];
            if (f[i].size() != dual.points.size())
                throw LengthMismatch("map is not defined on all of sort " + std::to_string(i));
            for (auto kind : {Kind::t, Kind::f}) {
                auto bound = kn_index(i, kind, i);
                Subset points(dual.points.size());
                for (size_t z = 0; z < points.size(); ++z)
                    if (order.leq(bound, f[i][z]))
                        points.set(z);
                auto e = element_with_points(s.lattices[i], dual, points);
                if (! e)
                    throw NotInUniverse("points above " + kn_name(kind, i) + " in sort " + std::to_string(i)
                        + " do not form an element");
                a.push_back(*e);
            }
        }
        return a;
    }

    auto transport_check(const ProductBilattice & p, const Limits & limits) -> TransportReport
    {
        TransportReport report;
        auto h = functor_Hn(p.sequence);
        auto e = evaluate(h.space, limits);
        auto size = p.universe.size();
        vector<Element> forward;
        for (auto & a : p.universe) {
            auto idx = e.index_of(iota(p.sequence, h, a));
            if (! idx) {
                report.first_mismatch = "iota(" + p.algebra.name(Element(forward.size())) + ") is not a morphism";
                return report;
            }
            forward.push_back(*idx);
        }
        report.bijective = e.algebra.size() == size && std::set<Element>(forward.begin(), forward.end()).size() == size;
        if (! report.bijective) {
            report.first_mismatch = "iota is not a bijection onto E(H_n(S))";
            return report;
        }
        vector<Element> backward(size, no_element);
        report.inverse_agrees = true;
        for (Element a = 0; a < size; ++a) {
            backward[forward[a]] = a;
            if (iota_inv(p.sequence, h, e.maps[forward[a]]) != p.universe[a]) {
                report.inverse_agrees = false;
                if (report.first_mismatch.empty())
                    report.first_mismatch = "iota_inv(iota(" + p.algebra.name(a) + ")) differs";
            }
        }
        report.tables_agree = true;
        auto & q = e.algebra;
        auto mismatch = [&](string what) {
            if (report.tables_agree)
                report.first_mismatch = std::move(what);
            report.tables_agree = false;
        };
        for (Element a = 0; a < size; ++a) {
            ++report.comparisons;
            if (backward[q.neg(forward[a])] != p.algebra.neg(a))
                mismatch("neg at " + p.algebra.name(a));
            for (Element b = 0; b < size; ++b)
                for (size_t op = 0; op < 4; ++op) {
                    ++report.comparisons;
                    if (backward[apply_operation(q, op, forward[a], forward[b])] != apply_operation(p.algebra, op, a, b))
                        mismatch(string(operation_name(op)) + " at " + p.algebra.name(a) + ", " + p.algebra.name(b));
                }
        }
        report.comparisons += 2;
        if (backward[q.bot()] != p.algebra.bot())
            mismatch("bottom");
        if (backward[q.top()] != p.algebra.top())
            mismatch("top");
        return report;
    }

    auto product_representation(const FiniteAlgebra & a, size_t n, const Limits & limits) -> ProductRepresentation
    {
        auto d = dualize(a, n);
        ProductRepresentation r;
        r.sequence = functor_Kn(d.space);
        r.product = build_product(r.sequence.sequence, limits);
        // A point x of sort i is identified with the point U -> [x in U] of
        // H(K(X_i)), so iota_inv(e_a(c)) reads the up-sets of points above
        // t_i and f_i directly.
        for (Element c = 0; c < a.size(); ++c) {
            Tuple tuple;
            for (size_t i = 0; i <= n; ++i) {
                auto order = kn_knowledge_order(i);
                for (auto kind : {Kind::t, Kind::f}) {
                    auto bound = kn_index(i, kind, i);
                    Subset points(d.homs[i].size());
                    for (size_t x = 0; x < points.size(); ++x)
                        if (order.leq(bound, d.homs[i][x][c]))
                            points.set(x);
                    auto idx = r.sequence.upsets[i].index_of(points);
                    if (! idx)
                        throw IsoFailure("points above " + kn_name(kind, i) + " at " + a.name(c) + " are not an up-set");
                    tuple.push_back(*idx);
                }
            }
            auto idx = r.product.index_of(tuple);
            if (! idx)
                throw IsoFailure("image of " + a.name(c) + " is not in the sequence product");
            r.iso.push_back(*idx);
        }
        if (r.product.universe.size() != a.size()
            || std::set<Element>(r.iso.begin(), r.iso.end()).size() != a.size())
            throw IsoFailure("map into the sequence product is not a bijection");
        if (! is_homomorphism(a, r.product.algebra, r.iso))
            throw IsoFailure("map into the sequence product does not preserve the operations");
        return r;
    }

    auto phi(size_t n, const Tuple & a) -> Element
    {
        if (a.size() != 2 * (n + 1))
            throw LengthMismatch("tuple length does not match n");
        for (size_t i = 0; i <= n; ++i) {
            bool t = a[2 * i], f = a[2 * i + 1];
            if (t && f)
                return kn_index(n, Kind::top, i);
            if (t)
                return kn_index(n, Kind::t, i);
            if (f)
                return kn_index(n, Kind::f, i);
        }
        return kn_index(n, Kind::top, n + 1);
    }

    auto lex_truth_leq(const Tuple & a, const Tuple & b) -> bool
    {
        for (size_t i = 0; i + 1 < a.size(); i += 2) {
            if (a[i] == b[i] && a[i + 1] == b[i + 1])
                continue;
            return a[i] <= b[i] && a[i + 1] >= b[i + 1];
        }
        return true;
    }

    auto truth_order_lex_check(size_t n) -> bool
    {
        auto p = build_product(all_two_sequence(n));
        for (Element a = 0; a < p.universe.size(); ++a)
            for (Element b = 0; b < p.universe.size(); ++b)
                if (p.algebra.t_leq(a, b) != lex_truth_leq(p.universe[a], p.universe[b]))
                    return false;
        return true;
    }
}
