#include <kndual/error.hh>
#include <kndual/poset.hh>

#include <algorithm>
#include <array>
#include <iterator>
#include <functional>
#include <map>
#include <numeric>
#include <unordered_map>

using std::pair;
using std::size_t;
using std::string;
using std::vector;

namespace kndual
{
    namespace
    {
        struct SubsetHash
        {
            auto operator()(const Subset & s) const -> size_t
            {
                vector<std::uint64_t> blocks;
                boost::to_block_range(s, std::back_inserter(blocks));
                size_t h = s.size();
                for (auto block : blocks)
                    h ^= std::hash<std::uint64_t>{}(block) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
                return h;
            }
        };

        auto closed_rows(size_t size, std::span<const pair<size_t, size_t>> pairs) -> vector<Subset>
        {
            vector<Subset> up(size, Subset(size));
            for (size_t i = 0; i < size; ++i)
                up[i].set(i);
            for (auto & [a, b] : pairs) {
                if (a >= size || b >= size)
                    throw InvalidOrder("pair (" + std::to_string(a) + ", " + std::to_string(b) + ") out of range");
                up[a].set(b);
            }
            for (size_t k = 0; k < size; ++k)
                for (size_t i = 0; i < size; ++i)
                    if (up[i][k])
                        up[i] |= up[k];
            return up;
        }
    }

    auto QuasiOrder::rebuild_down() -> void
    {
        _down.assign(_up.size(), Subset(_up.size()));
        for (size_t i = 0; i < _up.size(); ++i)
            for (auto j = _up[i].find_first(); j != Subset::npos; j = _up[i].find_next(j))
                _down[j].set(i);
    }

    auto QuasiOrder::generated_by(size_t size, std::span<const pair<size_t, size_t>> pairs) -> QuasiOrder
    {
        QuasiOrder result;
        result._up = closed_rows(size, pairs);
        result.rebuild_down();
        return result;
    }

    auto QuasiOrder::from_matrix(size_t size, const vector<Subset> & up_rows) -> QuasiOrder
    {
        if (up_rows.size() != size)
            throw InvalidOrder("expected " + std::to_string(size) + " rows, got " + std::to_string(up_rows.size()));
        for (size_t i = 0; i < size; ++i) {
            if (up_rows[i].size() != size)
                throw InvalidOrder("row " + std::to_string(i) + " has the wrong width");
            if (! up_rows[i][i])
                throw InvalidOrder("not reflexive at " + std::to_string(i));
        }
        for (size_t i = 0; i < size; ++i)
            for (auto j = up_rows[i].find_first(); j != Subset::npos; j = up_rows[i].find_next(j))
                if (! up_rows[j].is_subset_of(up_rows[i]))
                    throw InvalidOrder("not transitive through " + std::to_string(i) + " <= " + std::to_string(j));
        QuasiOrder result;
        result._up = up_rows;
        result.rebuild_down();
        return result;
    }

    auto QuasiOrder::is_antisymmetric() const -> bool
    {
        for (size_t i = 0; i < size(); ++i)
            if ((_up[i] & _down[i]).count() != 1)
                return false;
        return true;
    }

    auto QuasiOrder::is_sub_relation_of(const QuasiOrder & other) const -> bool
    {
        if (other.size() != size())
            return false;
        for (size_t i = 0; i < size(); ++i)
            if (! _up[i].is_subset_of(other._up[i]))
                return false;
        return true;
    }

    auto QuasiOrder::pairs() const -> vector<pair<size_t, size_t>>
    {
        vector<pair<size_t, size_t>> result;
        for (size_t i = 0; i < size(); ++i)
            for (auto j = _up[i].find_first(); j != Subset::npos; j = _up[i].find_next(j))
                result.emplace_back(i, j);
        return result;
    }

    auto QuasiOrder::restrict_to(const Subset & keep) const -> QuasiOrder
    {
        vector<size_t> index;
        for (auto i = keep.find_first(); i != Subset::npos; i = keep.find_next(i))
            index.push_back(i);
        QuasiOrder result;
        result._up.assign(index.size(), Subset(index.size()));
        for (size_t a = 0; a < index.size(); ++a)
            for (size_t b = 0; b < index.size(); ++b)
                if (leq(index[a], index[b]))
                    result._up[a].set(b);
        result.rebuild_down();
        if (! _labels.empty())
            for (auto i : index)
                result._labels.push_back(_labels[i]);
        return result;
    }

    auto QuasiOrder::converse() const -> QuasiOrder
    {
        QuasiOrder result;
        result._up = _down;
        result._down = _up;
        result._labels = _labels;
        return result;
    }

    auto QuasiOrder::label(size_t i) const -> string
    {
        return _labels.empty() ? std::to_string(i) : _labels[i];
    }

    auto QuasiOrder::set_labels(vector<string> labels) -> void
    {
        if (! labels.empty() && labels.size() != size())
            throw LengthMismatch("expected " + std::to_string(size()) + " labels, got " + std::to_string(labels.size()));
        _labels = std::move(labels);
    }

    Poset::Poset(QuasiOrder q) :
        QuasiOrder(std::move(q))
    {
        if (! is_antisymmetric())
            throw InvalidOrder("relation is not antisymmetric");
    }

    auto Poset::generated_by(size_t size, std::span<const pair<size_t, size_t>> pairs) -> Poset
    {
        return Poset(QuasiOrder::generated_by(size, pairs));
    }

    auto Poset::antichain(size_t size) -> Poset
    {
        return generated_by(size, {});
    }

    auto Poset::chain(size_t size) -> Poset
    {
        vector<pair<size_t, size_t>> pairs;
        for (size_t i = 0; i + 1 < size; ++i)
            pairs.emplace_back(i, i + 1);
        return generated_by(size, pairs);
    }

    auto Poset::disjoint_union(std::span<const Poset> parts) -> Poset
    {
        vector<pair<size_t, size_t>> pairs;
        vector<string> labels;
        size_t offset = 0;
        bool any_labels = false;
        for (auto & p : parts) {
            for (auto [a, b] : p.pairs())
                pairs.emplace_back(offset + a, offset + b);
            any_labels = any_labels || ! p.labels().empty();
            offset += p.size();
        }
        auto result = generated_by(offset, pairs);
        if (any_labels) {
            for (size_t s = 0; s < parts.size(); ++s)
                for (size_t i = 0; i < parts[s].size(); ++i)
                    labels.push_back(parts[s].label(i) + (parts.size() > 1 ? ":" + std::to_string(s) : ""));
            result.set_labels(std::move(labels));
        }
        return result;
    }

    auto Poset::product(const Poset & a, const Poset & b) -> Poset
    {
        auto n = a.size() * b.size();
        vector<Subset> up(n, Subset(n));
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j)
                for (size_t k = 0; k < a.size(); ++k)
                    if (a.leq(i, k))
                        for (size_t l = 0; l < b.size(); ++l)
                            if (b.leq(j, l))
                                up[i * b.size() + j].set(k * b.size() + l);
        return Poset(from_matrix(n, up));
    }

    auto Poset::hasse() const -> vector<pair<size_t, size_t>>
    {
        vector<pair<size_t, size_t>> result;
        for (size_t i = 0; i < size(); ++i)
            for (auto j = _up[i].find_first(); j != Subset::npos; j = _up[i].find_next(j))
                if (i != j && (_up[i] & _down[j]).count() == 2)
                    result.emplace_back(i, j);
        return result;
    }

    auto Poset::linear_extension() const -> vector<size_t>
    {
        vector<size_t> order(size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return _down[a].count() < _down[b].count(); });
        return order;
    }

    MonotoneMap::MonotoneMap(Poset dom, Poset cod, vector<size_t> table) :
        _dom(std::move(dom)),
        _cod(std::move(cod)),
        _table(std::move(table))
    {
        if (_table.size() != _dom.size())
            throw NotMonotone("table has " + std::to_string(_table.size()) + " entries for a domain of size " + std::to_string(_dom.size()));
        for (auto v : _table)
            if (v >= _cod.size())
                throw NotMonotone("image " + std::to_string(v) + " outside codomain");
        for (auto [a, b] : _dom.pairs())
            if (! _cod.leq(_table[a], _table[b]))
                throw NotMonotone(_dom.label(a) + " <= " + _dom.label(b) + " but images are not ordered");
    }

    auto MonotoneMap::after(const MonotoneMap & first) const -> MonotoneMap
    {
        if (first.cod().size() != _dom.size())
            throw LengthMismatch("composed maps do not match up");
        vector<size_t> table(first.dom().size());
        for (size_t x = 0; x < table.size(); ++x)
            table[x] = _table[first(x)];
        return MonotoneMap(first.dom(), _cod, std::move(table));
    }

    namespace
    {
        auto quotient_classes(const QuasiOrder & p) -> pair<vector<size_t>, vector<size_t>>
        {
            vector<size_t> class_of(p.size(), p.size()), reps;
            for (size_t i = 0; i < p.size(); ++i)
                if (class_of[i] == p.size()) {
                    auto eq = p.up(i) & p.down(i);
                    for (auto j = eq.find_first(); j != Subset::npos; j = eq.find_next(j))
                        class_of[j] = reps.size();
                    reps.push_back(i);
                }
            return {class_of, reps};
        }
    }

    auto up_sets(const QuasiOrder & p) -> vector<Subset>
    {
        auto [class_of, reps] = quotient_classes(p);
        // Process class representatives from the top down; a representative
        // may be included only if everything strictly above it already is.
        std::sort(reps.begin(), reps.end(), [&](size_t a, size_t b) {
            auto ua = p.up(a).count(), ub = p.up(b).count();
            return ua != ub ? ua < ub : a < b;
        });
        vector<Subset> result;
        Subset current(p.size());
        std::function<void(size_t)> recurse = [&](size_t k) {
            if (k == reps.size()) {
                result.push_back(current);
                return;
            }
            auto x = reps[k];
            recurse(k + 1);
            auto above = p.up(x);
            if (above.is_subset_of(current | (p.up(x) & p.down(x)))) {
                auto added = (p.up(x) & p.down(x)) - current;
                current |= added;
                recurse(k + 1);
                current -= added;
            }
        };
        recurse(0);
        std::sort(result.begin(), result.end(), [](const Subset & a, const Subset & b) {
            auto ca = a.count(), cb = b.count();
            return ca != cb ? ca < cb : a < b;
        });
        return result;
    }

    namespace
    {
        class UpSetCounter
        {
        public:
            explicit UpSetCounter(const QuasiOrder & p) :
                _p(p)
            {
            }

            auto count(const Subset & s) -> std::uint64_t
            {
                if (s.none())
                    return 1;
                if (auto it = _memo.find(s); it != _memo.end())
                    return it->second;

                auto remaining = s;
                std::uint64_t result = 1;
                bool split = false;
                auto first = component_of(remaining.find_first(), s);
                if (first != s) {
                    split = true;
                    while (remaining.any()) {
                        auto comp = component_of(remaining.find_first(), s);
                        remaining -= comp;
                        if (__builtin_mul_overflow(result, count(comp), &result))
                            throw SizeOverflow("up-set count exceeds 64 bits");
                    }
                }
                if (! split) {
                    size_t pivot = s.find_first(), best = 0;
                    for (auto x = s.find_first(); x != Subset::npos; x = s.find_next(x)) {
                        auto degree = ((_p.up(x) | _p.down(x)) & s).count();
                        if (degree > best) {
                            best = degree;
                            pivot = x;
                        }
                    }
                    auto with = count(s - _p.up(pivot));
                    auto without = count(s - _p.down(pivot));
                    if (__builtin_add_overflow(with, without, &result))
                        throw SizeOverflow("up-set count exceeds 64 bits");
                }
                _memo.emplace(s, result);
                return result;
            }

        private:
            const QuasiOrder & _p;
            std::unordered_map<Subset, std::uint64_t, SubsetHash> _memo;

            auto component_of(size_t start, const Subset & within) const -> Subset
            {
                Subset seen(within.size());
                seen.set(start);
                vector<size_t> stack{start};
                while (! stack.empty()) {
                    auto x = stack.back();
                    stack.pop_back();
                    auto next = ((_p.up(x) | _p.down(x)) & within) - seen;
                    for (auto y = next.find_first(); y != Subset::npos; y = next.find_next(y))
                        stack.push_back(y);
                    seen |= next;
                }
                return seen;
            }
        };
    }

    auto count_up_sets(const QuasiOrder & p) -> std::uint64_t
    {
        UpSetCounter counter(p);
        Subset all(p.size());
        all.set();
        return counter.count(all);
    }

    auto is_up_set(const QuasiOrder & p, const Subset & s) -> bool
    {
        for (auto x = s.find_first(); x != Subset::npos; x = s.find_next(x))
            if (! p.up(x).is_subset_of(s))
                return false;
        return true;
    }

    auto is_down_set(const QuasiOrder & p, const Subset & s) -> bool
    {
        for (auto x = s.find_first(); x != Subset::npos; x = s.find_next(x))
            if (! p.down(x).is_subset_of(s))
                return false;
        return true;
    }

    auto order_components(const QuasiOrder & p) -> vector<vector<size_t>>
    {
        vector<vector<size_t>> result;
        Subset seen(p.size());
        for (size_t start = 0; start < p.size(); ++start) {
            if (seen[start])
                continue;
            vector<size_t> block, stack{start};
            seen.set(start);
            while (! stack.empty()) {
                auto x = stack.back();
                stack.pop_back();
                block.push_back(x);
                auto next = (p.up(x) | p.down(x)) - seen;
                for (auto y = next.find_first(); y != Subset::npos; y = next.find_next(y))
                    stack.push_back(y);
                seen |= next;
            }
            std::sort(block.begin(), block.end());
            result.push_back(std::move(block));
        }
        return result;
    }

    auto is_semi_constant(const MonotoneMap & phi) -> bool
    {
        for (auto & block : order_components(phi.dom()))
            for (auto x : block)
                if (phi(x) != phi(block.front()))
                    return false;
        return true;
    }

    namespace
    {
        auto require_link(const Poset & lower, const Poset & upper, const MonotoneMap & phi) -> void
        {
            if (phi.dom().size() != upper.size() || phi.cod().size() != lower.size())
                throw LengthMismatch("linking map does not go from the upper poset to the lower one");
            if (! is_semi_constant(phi))
                throw NotSemiConstant("linking map is not constant on every order component");
        }

        auto labelled(Poset p, vector<string> labels) -> Poset
        {
            bool any = std::any_of(labels.begin(), labels.end(), [](const string & s) { return ! s.empty(); });
            if (any)
                p.set_labels(std::move(labels));
            return p;
        }
    }

    auto restricted_linear_sum(const Poset & s, const Poset & t, const MonotoneMap & phi) -> Poset
    {
        std::array<Poset, 2> layers{s, t};
        std::array<MonotoneMap, 1> links{phi};
        return iterated_linear_sum(layers, links);
    }

    auto iterated_linear_sum(std::span<const Poset> layers, std::span<const MonotoneMap> links) -> Poset
    {
        if (layers.empty() ? ! links.empty() : links.size() + 1 != layers.size())
            throw LengthMismatch("need exactly one link between consecutive layers");
        vector<size_t> offset;
        size_t total = 0;
        for (auto & layer : layers) {
            offset.push_back(total);
            total += layer.size();
        }
        vector<pair<size_t, size_t>> pairs;
        vector<string> labels;
        for (size_t i = 0; i < layers.size(); ++i) {
            for (auto [a, b] : layers[i].pairs())
                pairs.emplace_back(offset[i] + a, offset[i] + b);
            if (i > 0) {
                require_link(layers[i - 1], layers[i], links[i - 1]);
                for (size_t y = 0; y < layers[i].size(); ++y)
                    pairs.emplace_back(offset[i - 1] + links[i - 1](y), offset[i] + y);
            }
            for (size_t x = 0; x < layers[i].size(); ++x)
                labels.push_back(layers[i].labels().empty() ? string() : layers[i].label(x));
        }
        return labelled(Poset::generated_by(total, pairs), std::move(labels));
    }

    auto doubling(std::span<const Poset> layers, std::span<const MonotoneMap> links) -> Poset
    {
        if (layers.empty() ? ! links.empty() : links.size() + 1 != layers.size())
            throw LengthMismatch("need exactly one link between consecutive layers");
        vector<std::array<size_t, 2>> offset;
        size_t total = 0;
        for (auto & layer : layers) {
            offset.push_back({total, total + layer.size()});
            total += 2 * layer.size();
        }
        vector<pair<size_t, size_t>> pairs;
        vector<string> labels;
        for (size_t i = 0; i < layers.size(); ++i) {
            if (i > 0)
                require_link(layers[i - 1], layers[i], links[i - 1]);
            for (int c = 0; c < 2; ++c) {
                for (auto [a, b] : layers[i].pairs())
                    pairs.emplace_back(offset[i][c] + a, offset[i][c] + b);
                if (i > 0)
                    for (int d = 0; d < 2; ++d)
                        for (size_t y = 0; y < layers[i].size(); ++y)
                            pairs.emplace_back(offset[i - 1][d] + links[i - 1](y), offset[i][c] + y);
                for (size_t x = 0; x < layers[i].size(); ++x)
                    labels.push_back(layers[i].label(x) + ":" + std::to_string(c + 1));
            }
        }
        auto result = Poset::generated_by(total, pairs);
        result.set_labels(std::move(labels));
        return result;
    }

    namespace
    {
        auto refined_colours(const QuasiOrder & p) -> vector<std::uint64_t>
        {
            vector<std::uint64_t> base(p.size()), result(p.size());
            for (size_t i = 0; i < p.size(); ++i)
                base[i] = (p.up(i).count() << 16) | p.down(i).count();
            for (size_t i = 0; i < p.size(); ++i) {
                vector<std::uint64_t> above, below;
                for (auto j = p.up(i).find_first(); j != Subset::npos; j = p.up(i).find_next(j))
                    above.push_back(base[j]);
                for (auto j = p.down(i).find_first(); j != Subset::npos; j = p.down(i).find_next(j))
                    below.push_back(base[j]);
                std::sort(above.begin(), above.end());
                std::sort(below.begin(), below.end());
                std::uint64_t h = base[i];
                for (auto v : above)
                    h = h * 1000003 + v;
                h = h * 7919 + 17;
                for (auto v : below)
                    h = h * 999983 + v;
                result[i] = h;
            }
            return result;
        }

        auto search_isomorphism(const QuasiOrder & p, const QuasiOrder & q, const vector<std::uint64_t> & cp,
            const vector<std::uint64_t> & cq) -> std::optional<vector<size_t>>
        {
            auto n = p.size();
            vector<size_t> order(n);
            std::iota(order.begin(), order.end(), 0);
            // Most constrained first: elements whose colour is rarest.
            std::map<std::uint64_t, size_t> frequency;
            for (auto c : cp)
                ++frequency[c];
            std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return frequency[cp[a]] < frequency[cp[b]]; });

            vector<size_t> image(n, n);
            vector<bool> used(n, false);
            std::function<bool(size_t)> recurse = [&](size_t k) -> bool {
                if (k == n)
                    return true;
                auto x = order[k];
                for (size_t y = 0; y < n; ++y) {
                    if (used[y] || cq[y] != cp[x])
                        continue;
                    bool ok = true;
                    for (size_t l = 0; l < k && ok; ++l) {
                        auto x2 = order[l], y2 = image[x2];
                        ok = p.leq(x, x2) == q.leq(y, y2) && p.leq(x2, x) == q.leq(y2, y);
                    }
                    if (! ok)
                        continue;
                    image[x] = y;
                    used[y] = true;
                    if (recurse(k + 1))
                        return true;
                    used[y] = false;
                }
                image[x] = n;
                return false;
            };
            if (recurse(0))
                return image;
            return std::nullopt;
        }
    }

    auto find_poset_isomorphism(const QuasiOrder & p, const QuasiOrder & q) -> std::optional<vector<size_t>>
    {
        if (p.size() != q.size())
            return std::nullopt;
        auto cp = refined_colours(p), cq = refined_colours(q);
        auto sp = cp, sq = cq;
        std::sort(sp.begin(), sp.end());
        std::sort(sq.begin(), sq.end());
        if (sp != sq)
            return std::nullopt;
        return search_isomorphism(p, q, cp, cq);
    }

    auto enumerate_posets(size_t size) -> vector<Poset>
    {
        vector<Poset> current{Poset::antichain(0)};
        for (size_t k = 0; k < size; ++k) {
            vector<Poset> next;
            std::map<vector<std::uint64_t>, vector<size_t>> buckets;
            vector<vector<std::uint64_t>> colours;
            for (auto & p : current) {
                for (auto & down : up_sets(p.converse())) {
                    vector<Subset> rows(k + 1, Subset(k + 1));
                    for (size_t i = 0; i < k; ++i) {
                        rows[i] = p.up(i);
                        rows[i].resize(k + 1);
                        if (down[i])
                            rows[i].set(k);
                    }
                    rows[k].set(k);
                    Poset candidate(QuasiOrder::from_matrix(k + 1, rows));
                    auto colour = refined_colours(candidate);
                    auto key = colour;
                    std::sort(key.begin(), key.end());
                    auto & bucket = buckets[key];
                    bool seen = false;
                    for (auto idx : bucket)
                        if (search_isomorphism(candidate, next[idx], colour, colours[idx])) {
                            seen = true;
                            break;
                        }
                    if (! seen) {
                        bucket.push_back(next.size());
                        next.push_back(std::move(candidate));
                        colours.push_back(std::move(colour));
                    }
                }
            }
            current = std::move(next);
        }
        return current;
    }
}
