#include <kndual/algebra.hh>
#include <kndual/error.hh>

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <utility>

using std::optional;
using std::pair;
using std::size_t;
using std::string;
using std::vector;

namespace kndual
{
    FiniteAlgebra::FiniteAlgebra(size_t size, Operations ops, vector<string> names, bool validate)
    {
        _data = std::make_shared<const Data>(Data{size, std::move(ops), std::move(names)});
        if (validate)
            this->validate();
    }

    auto FiniteAlgebra::validate() const -> void
    {
        auto n = size();
        auto & o = ops();
        if (n == 0)
            throw InvalidAlgebra("empty universe");
        for (auto * table : {&o.kmeet, &o.kjoin, &o.tmeet, &o.tjoin})
            if (table->size() != n * n)
                throw InvalidAlgebra("binary table has the wrong size");
        if (o.neg.size() != n)
            throw InvalidAlgebra("negation table has the wrong size");
        if (! names().empty() && names().size() != n)
            throw InvalidAlgebra("wrong number of element names");
        for (auto * table : {&o.kmeet, &o.kjoin, &o.tmeet, &o.tjoin, &o.neg})
            for (auto v : *table)
                if (v >= n)
                    throw InvalidAlgebra("table value out of range");
        if (o.bot >= n || o.top >= n)
            throw InvalidAlgebra("constant out of range");

        auto check_lattice = [&](const vector<Element> & m, const vector<Element> & j, const char * which) {
            auto mm = [&](size_t a, size_t b) { return m[a * n + b]; };
            auto jj = [&](size_t a, size_t b) { return j[a * n + b]; };
            for (size_t a = 0; a < n; ++a) {
                if (mm(a, a) != a || jj(a, a) != a)
                    throw InvalidAlgebra(string(which) + " reduct is not idempotent at " + name(Element(a)));
                for (size_t b = 0; b < n; ++b) {
                    if (mm(a, b) != mm(b, a) || jj(a, b) != jj(b, a))
                        throw InvalidAlgebra(string(which) + " reduct is not commutative");
                    if (mm(a, jj(a, b)) != a || jj(a, mm(a, b)) != a)
                        throw InvalidAlgebra(string(which) + " reduct fails absorption");
                    for (size_t c = 0; c < n; ++c)
                        if (mm(a, mm(b, c)) != mm(mm(a, b), c) || jj(a, jj(b, c)) != jj(jj(a, b), c))
                            throw InvalidAlgebra(string(which) + " reduct is not associative");
                }
            }
        };
        check_lattice(o.kmeet, o.kjoin, "knowledge");
        check_lattice(o.tmeet, o.tjoin, "truth");

        auto t_bot = tmeet(top(), bot()), t_top = tjoin(top(), bot());
        for (Element a = 0; a < n; ++a) {
            if (kmeet(a, bot()) != bot() || kjoin(a, top()) != top())
                throw InvalidAlgebra("bottom and top do not bound the knowledge order at " + name(a));
            if (tmeet(a, t_bot) != t_bot || tjoin(a, t_top) != t_top)
                throw InvalidAlgebra("truth order is not bounded by the meet and join of the constants at " + name(a));
            if (neg(neg(a)) != a)
                throw InvalidAlgebra("negation is not an involution at " + name(a));
            for (Element b = 0; b < n; ++b) {
                if (k_leq(a, b) && ! k_leq(neg(a), neg(b)))
                    throw InvalidAlgebra("negation does not preserve the knowledge order at " + name(a) + ", " + name(b));
                if (t_leq(a, b) && ! t_leq(neg(b), neg(a)))
                    throw InvalidAlgebra("negation does not reverse the truth order at " + name(a) + ", " + name(b));
            }
        }
    }

    auto FiniteAlgebra::name(Element a) const -> string
    {
        return _data->names.empty() ? std::to_string(a) : _data->names[a];
    }

    auto FiniteAlgebra::index_of(const string & name) const -> optional<Element>
    {
        auto it = std::find(_data->names.begin(), _data->names.end(), name);
        if (it == _data->names.end())
            return std::nullopt;
        return Element(it - _data->names.begin());
    }

    namespace
    {
        auto order_from_meet(const FiniteAlgebra & a, bool knowledge) -> Poset
        {
            vector<Subset> up(a.size(), Subset(a.size()));
            for (Element x = 0; x < a.size(); ++x)
                for (Element y = 0; y < a.size(); ++y)
                    if (knowledge ? a.k_leq(x, y) : a.t_leq(x, y))
                        up[x].set(y);
            Poset result(QuasiOrder::from_matrix(a.size(), up));
            result.set_labels(a.names());
            return result;
        }
    }

    auto FiniteAlgebra::knowledge_order() const -> Poset
    {
        return order_from_meet(*this, true);
    }

    auto FiniteAlgebra::truth_order() const -> Poset
    {
        return order_from_meet(*this, false);
    }

    auto FiniteAlgebra::view() const -> TableView
    {
        auto & o = ops();
        return TableView{size(), {o.kmeet.data(), o.kjoin.data(), o.tmeet.data(), o.tjoin.data()}, {o.neg.data()}, {o.bot, o.top}};
    }

    auto operation_name(size_t op) -> const char *
    {
        static const char * const names[] = {"kmeet", "kjoin", "tmeet", "tjoin", "neg"};
        return op < 5 ? names[op] : "?";
    }

    auto apply_operation(const FiniteAlgebra & a, size_t op, Element x, Element y) -> Element
    {
        switch (op) {
        case 0: return a.kmeet(x, y);
        case 1: return a.kjoin(x, y);
        case 2: return a.tmeet(x, y);
        case 3: return a.tjoin(x, y);
        case 4: return a.neg(x);
        }
        throw InvalidAlgebra("no operation with index " + std::to_string(op));
    }

    auto trivial_algebra() -> FiniteAlgebra
    {
        Operations ops{{0}, {0}, {0}, {0}, {0}, 0, 0};
        return FiniteAlgebra(1, std::move(ops), {"*"});
    }

    auto generate(const FiniteAlgebra & a, const Subset & seed) -> Subset
    {
        return closure(a.view(), seed);
    }

    auto all_subalgebras(const FiniteAlgebra & a) -> vector<Subset>
    {
        auto view = a.view();
        std::set<Subset> seen;
        vector<Subset> result;
        std::deque<Subset> queue;
        auto least = closure(view, Subset(a.size()));
        seen.insert(least);
        queue.push_back(least);
        while (! queue.empty()) {
            auto s = std::move(queue.front());
            queue.pop_front();
            result.push_back(s);
            for (size_t x = 0; x < a.size(); ++x) {
                if (s[x])
                    continue;
                auto seed = s;
                seed.set(x);
                auto next = closure(view, seed);
                if (seen.insert(next).second)
                    queue.push_back(std::move(next));
            }
        }
        std::sort(result.begin(), result.end(), [](const Subset & p, const Subset & q) {
            auto cp = p.count(), cq = q.count();
            return cp != cq ? cp < cq : p < q;
        });
        return result;
    }

    auto subalgebra(const FiniteAlgebra & a, const Subset & universe) -> FiniteAlgebra
    {
        if (generate(a, universe) != universe)
            throw InvalidAlgebra("subset is not closed under the operations");
        vector<Element> index, position(a.size(), no_element);
        for (auto x = universe.find_first(); x != Subset::npos; x = universe.find_next(x)) {
            position[x] = Element(index.size());
            index.push_back(Element(x));
        }
        auto n = index.size();
        Operations ops;
        for (auto * t : {&ops.kmeet, &ops.kjoin, &ops.tmeet, &ops.tjoin})
            t->resize(n * n);
        ops.neg.resize(n);
        vector<string> names;
        for (size_t i = 0; i < n; ++i) {
            ops.neg[i] = position[a.neg(index[i])];
            if (! a.names().empty())
                names.push_back(a.name(index[i]));
            for (size_t j = 0; j < n; ++j) {
                ops.kmeet[i * n + j] = position[a.kmeet(index[i], index[j])];
                ops.kjoin[i * n + j] = position[a.kjoin(index[i], index[j])];
                ops.tmeet[i * n + j] = position[a.tmeet(index[i], index[j])];
                ops.tjoin[i * n + j] = position[a.tjoin(index[i], index[j])];
            }
        }
        ops.bot = position[a.bot()];
        ops.top = position[a.top()];
        return FiniteAlgebra(n, std::move(ops), std::move(names), false);
    }

    auto is_homomorphism(const FiniteAlgebra & a, const FiniteAlgebra & b, const vector<Element> & table) -> bool
    {
        return is_homomorphism(a.view(), b.view(), table);
    }

    auto homs(const FiniteAlgebra & a, const FiniteAlgebra & b) -> vector<vector<Element>>
    {
        vector<vector<Element>> result;
        auto dom = a.view(), cod = b.view();
        search_homs(dom, cod, greedy_generators(dom), {}, [&](const vector<Element> & table) {
            result.push_back(table);
            return true;
        });
        return result;
    }

    namespace
    {
        auto element_invariants(const FiniteAlgebra & a) -> vector<vector<std::uint32_t>>
        {
            vector<vector<std::uint32_t>> result(a.size());
            for (Element x = 0; x < a.size(); ++x) {
                std::uint32_t k_above = 0, t_above = 0, k_below = 0, t_below = 0;
                for (Element y = 0; y < a.size(); ++y) {
                    k_above += a.k_leq(x, y);
                    t_above += a.t_leq(x, y);
                    k_below += a.k_leq(y, x);
                    t_below += a.t_leq(y, x);
                }
                result[x] = {k_above, t_above, k_below, t_below, a.neg(x) == x};
            }
            return result;
        }
    }

    auto find_isomorphism(const FiniteAlgebra & a, const FiniteAlgebra & b) -> optional<vector<Element>>
    {
        if (a.size() != b.size())
            return std::nullopt;
        auto ia = element_invariants(a), ib = element_invariants(b);
        auto sa = ia, sb = ib;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb)
            return std::nullopt;
        HomSearchOptions options;
        options.injective = true;
        options.allowed = [&](Element x, Element y) { return ia[x] == ib[y]; };
        optional<vector<Element>> result;
        auto dom = a.view(), cod = b.view();
        search_homs(dom, cod, greedy_generators(dom), options, [&](const vector<Element> & table) {
            result = table;
            return false;
        });
        return result;
    }

    namespace
    {
        class UnionFind
        {
        public:
            explicit UnionFind(size_t n) :
                _parent(n)
            {
                for (size_t i = 0; i < n; ++i)
                    _parent[i] = Element(i);
            }

            auto find(Element x) -> Element
            {
                while (_parent[x] != x) {
                    _parent[x] = _parent[_parent[x]];
                    x = _parent[x];
                }
                return x;
            }

            auto unite(Element x, Element y) -> bool
            {
                x = find(x);
                y = find(y);
                if (x == y)
                    return false;
                if (y < x)
                    std::swap(x, y);
                _parent[y] = x;
                return true;
            }

            auto labels() -> Congruence
            {
                Congruence result(_parent.size());
                vector<Element> block_of_root(_parent.size(), no_element);
                Element next = 0;
                for (Element x = 0; x < _parent.size(); ++x) {
                    auto r = find(x);
                    if (block_of_root[r] == no_element)
                        block_of_root[r] = next++;
                    result[x] = block_of_root[r];
                }
                return result;
            }

        private:
            vector<Element> _parent;
        };

        auto close_under_operations(const FiniteAlgebra & a, UnionFind & uf, vector<pair<Element, Element>> work) -> Congruence
        {
            auto view = a.view();
            while (! work.empty()) {
                auto [x, y] = work.back();
                work.pop_back();
                auto push = [&](Element p, Element q) {
                    if (uf.unite(p, q))
                        work.emplace_back(p, q);
                };
                for (size_t op = 0; op < view.unary.size(); ++op)
                    push(view.apply(op, x), view.apply(op, y));
                for (size_t op = 0; op < view.binary.size(); ++op)
                    for (Element c = 0; c < a.size(); ++c) {
                        push(view.apply(op, x, c), view.apply(op, y, c));
                        push(view.apply(op, c, x), view.apply(op, c, y));
                    }
            }
            return uf.labels();
        }
    }

    auto identity_congruence(size_t size) -> Congruence
    {
        Congruence result(size);
        for (size_t i = 0; i < size; ++i)
            result[i] = Element(i);
        return result;
    }

    auto total_congruence(size_t size) -> Congruence
    {
        return Congruence(size, 0);
    }

    auto is_congruence(const FiniteAlgebra & a, const Congruence & theta) -> bool
    {
        if (theta.size() != a.size())
            return false;
        auto view = a.view();
        for (Element x = 0; x < a.size(); ++x)
            for (Element y = 0; y < a.size(); ++y) {
                if (theta[x] != theta[y])
                    continue;
                for (size_t op = 0; op < view.unary.size(); ++op)
                    if (theta[view.apply(op, x)] != theta[view.apply(op, y)])
                        return false;
                for (size_t op = 0; op < view.binary.size(); ++op)
                    for (Element c = 0; c < a.size(); ++c)
                        if (theta[view.apply(op, x, c)] != theta[view.apply(op, y, c)]
                            || theta[view.apply(op, c, x)] != theta[view.apply(op, c, y)])
                            return false;
            }
        return true;
    }

    auto principal_congruence(const FiniteAlgebra & a, Element x, Element y) -> Congruence
    {
        UnionFind uf(a.size());
        vector<pair<Element, Element>> work;
        if (uf.unite(x, y))
            work.emplace_back(x, y);
        return close_under_operations(a, uf, std::move(work));
    }

    auto join_congruences(const FiniteAlgebra & a, const Congruence & theta, const Congruence & phi) -> Congruence
    {
        UnionFind uf(a.size());
        vector<pair<Element, Element>> work;
        for (auto * c : {&theta, &phi}) {
            vector<Element> first(a.size(), no_element);
            for (Element x = 0; x < a.size(); ++x) {
                auto & f = first[(*c)[x]];
                if (f == no_element)
                    f = x;
                else if (uf.unite(f, x))
                    work.emplace_back(f, x);
            }
        }
        return close_under_operations(a, uf, std::move(work));
    }

    auto congruence_leq(const Congruence & theta, const Congruence & phi) -> bool
    {
        vector<Element> image(theta.size(), no_element);
        for (size_t x = 0; x < theta.size(); ++x) {
            auto & i = image[theta[x]];
            if (i == no_element)
                i = phi[x];
            else if (i != phi[x])
                return false;
        }
        return true;
    }

    auto kernel(const vector<Element> & table) -> Congruence
    {
        Congruence result(table.size());
        std::map<Element, Element> block;
        for (size_t x = 0; x < table.size(); ++x) {
            auto [it, inserted] = block.emplace(table[x], Element(block.size()));
            result[x] = it->second;
        }
        return result;
    }

    namespace
    {
        auto block_count(const Congruence & c) -> size_t
        {
            return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
        }
    }

    auto congruence_lattice(const FiniteAlgebra & a) -> vector<Congruence>
    {
        std::set<Congruence> found{identity_congruence(a.size())};
        vector<Congruence> principal;
        for (Element x = 0; x < a.size(); ++x)
            for (Element y = x + 1; y < a.size(); ++y) {
                auto c = principal_congruence(a, x, y);
                if (found.insert(c).second)
                    principal.push_back(c);
            }
        vector<Congruence> frontier(found.begin(), found.end());
        while (! frontier.empty()) {
            vector<Congruence> next;
            for (auto & c : frontier)
                for (auto & p : principal) {
                    auto j = join_congruences(a, c, p);
                    if (found.insert(j).second)
                        next.push_back(j);
                }
            frontier = std::move(next);
        }
        vector<Congruence> result(found.begin(), found.end());
        std::sort(result.begin(), result.end(), [](const Congruence & p, const Congruence & q) {
            auto bp = block_count(p), bq = block_count(q);
            return bp != bq ? bp > bq : p < q;
        });
        return result;
    }

    auto quotient(const FiniteAlgebra & a, const Congruence & theta) -> FiniteAlgebra
    {
        if (! is_congruence(a, theta))
            throw InvalidAlgebra("partition is not a congruence");
        auto n = block_count(theta);
        vector<Element> rep(n, no_element);
        vector<vector<Element>> members(n);
        for (Element x = 0; x < a.size(); ++x) {
            if (rep[theta[x]] == no_element)
                rep[theta[x]] = x;
            members[theta[x]].push_back(x);
        }
        Operations ops;
        for (auto * t : {&ops.kmeet, &ops.kjoin, &ops.tmeet, &ops.tjoin})
            t->resize(n * n);
        ops.neg.resize(n);
        vector<string> names;
        for (size_t i = 0; i < n; ++i) {
            ops.neg[i] = theta[a.neg(rep[i])];
            for (size_t j = 0; j < n; ++j) {
                ops.kmeet[i * n + j] = theta[a.kmeet(rep[i], rep[j])];
                ops.kjoin[i * n + j] = theta[a.kjoin(rep[i], rep[j])];
                ops.tmeet[i * n + j] = theta[a.tmeet(rep[i], rep[j])];
                ops.tjoin[i * n + j] = theta[a.tjoin(rep[i], rep[j])];
            }
            if (members[i].size() == 1)
                names.push_back(a.name(members[i][0]));
            else {
                string s = "[";
                for (size_t k = 0; k < members[i].size(); ++k)
                    s += (k ? "," : "") + a.name(members[i][k]);
                names.push_back(s + "]");
            }
        }
        ops.bot = theta[a.bot()];
        ops.top = theta[a.top()];
        return FiniteAlgebra(n, std::move(ops), std::move(names), false);
    }

    auto product_coordinates(const vector<size_t> & sizes, size_t index) -> vector<Element>
    {
        vector<Element> result(sizes.size());
        for (size_t i = sizes.size(); i-- > 0;) {
            result[i] = Element(index % sizes[i]);
            index /= sizes[i];
        }
        return result;
    }

    auto product_index(const vector<size_t> & sizes, const vector<Element> & coords) -> Element
    {
        size_t index = 0;
        for (size_t i = 0; i < sizes.size(); ++i)
            index = index * sizes[i] + coords[i];
        return Element(index);
    }

    auto product(const vector<FiniteAlgebra> & factors, const Limits & limits) -> FiniteAlgebra
    {
        if (factors.empty())
            return trivial_algebra();
        vector<size_t> sizes;
        size_t n = 1;
        for (auto & f : factors) {
            sizes.push_back(f.size());
            if (__builtin_mul_overflow(n, f.size(), &n))
                throw SizeOverflow("product size overflows");
        }
        check_size(n, limits.max_table_elements, "product algebra");
        vector<vector<Element>> coords(n);
        for (size_t x = 0; x < n; ++x)
            coords[x] = product_coordinates(sizes, x);

        Operations ops;
        for (auto * t : {&ops.kmeet, &ops.kjoin, &ops.tmeet, &ops.tjoin})
            t->resize(n * n);
        ops.neg.resize(n);
        vector<Element> tmp(factors.size());
        auto combine = [&](size_t op, size_t x, size_t y) {
            for (size_t i = 0; i < factors.size(); ++i)
                tmp[i] = apply_operation(factors[i], op, coords[x][i], coords[y][i]);
            return product_index(sizes, tmp);
        };
        for (size_t x = 0; x < n; ++x) {
            ops.neg[x] = combine(4, x, x);
            for (size_t y = 0; y < n; ++y) {
                ops.kmeet[x * n + y] = combine(0, x, y);
                ops.kjoin[x * n + y] = combine(1, x, y);
                ops.tmeet[x * n + y] = combine(2, x, y);
                ops.tjoin[x * n + y] = combine(3, x, y);
            }
        }
        for (size_t i = 0; i < factors.size(); ++i)
            tmp[i] = factors[i].bot();
        ops.bot = product_index(sizes, tmp);
        for (size_t i = 0; i < factors.size(); ++i)
            tmp[i] = factors[i].top();
        ops.top = product_index(sizes, tmp);

        vector<string> names;
        for (size_t x = 0; x < n; ++x) {
            string s = "(";
            for (size_t i = 0; i < factors.size(); ++i)
                s += (i ? "," : "") + factors[i].name(coords[x][i]);
            names.push_back(s + ")");
        }
        return FiniteAlgebra(n, std::move(ops), std::move(names), false);
    }

    auto power(const FiniteAlgebra & a, size_t k, const Limits & limits) -> FiniteAlgebra
    {
        return product(vector<FiniteAlgebra>(k, a), limits);
    }

    auto is_subdirectly_irreducible(const FiniteAlgebra & a) -> bool
    {
        if (a.size() == 1)
            throw TrivialAlgebra("the one-element algebra has no nontrivial congruences");
        auto con = congruence_lattice(a);
        vector<Congruence> nontrivial(con.begin() + 1, con.end());
        vector<Congruence> atoms;
        for (auto & c : nontrivial) {
            bool minimal = std::none_of(nontrivial.begin(), nontrivial.end(),
                [&](const Congruence & d) { return d != c && congruence_leq(d, c); });
            if (minimal)
                atoms.push_back(c);
        }
        if (atoms.size() != 1)
            return false;
        return std::all_of(nontrivial.begin(), nontrivial.end(), [&](const Congruence & d) { return congruence_leq(atoms[0], d); });
    }

    auto interlacing_failures(const FiniteAlgebra & a) -> vector<InterlacingFailure>
    {
        vector<InterlacingFailure> result;
        for (size_t op = 0; op < 4; ++op) {
            // Knowledge operations must be monotone in the truth order and vice versa.
            bool knowledge_op = op < 2;
            for (Element x = 0; x < a.size(); ++x)
                for (Element y = 0; y < a.size(); ++y) {
                    if (x == y || ! (knowledge_op ? a.t_leq(x, y) : a.k_leq(x, y)))
                        continue;
                    for (Element c = 0; c < a.size(); ++c) {
                        auto u = apply_operation(a, op, x, c), v = apply_operation(a, op, y, c);
                        if (! (knowledge_op ? a.t_leq(u, v) : a.k_leq(u, v)))
                            result.push_back({op, x, y, c});
                    }
                }
        }
        return result;
    }
}
