#include <kndual/engine.hh>
#include <kndual/error.hh>

#include <algorithm>

using std::size_t;
using std::vector;

namespace kndual
{
    auto closure(const TableView & a, const Subset & seed) -> Subset
    {
        Subset in(a.size);
        vector<Element> members, queue;
        auto add = [&](Element x) {
            if (! in[x]) {
                in.set(x);
                queue.push_back(x);
            }
        };
        for (auto c : a.constants)
            add(c);
        for (auto x = seed.find_first(); x != Subset::npos; x = seed.find_next(x))
            add(Element(x));
        while (! queue.empty()) {
            auto x = queue.back();
            queue.pop_back();
            members.push_back(x);
            for (size_t op = 0; op < a.unary.size(); ++op)
                add(a.apply(op, x));
            for (size_t op = 0; op < a.binary.size(); ++op)
                for (auto y : members) {
                    add(a.apply(op, x, y));
                    add(a.apply(op, y, x));
                }
        }
        return in;
    }

    auto greedy_generators(const TableView & a) -> vector<Element>
    {
        vector<Element> result;
        auto current = closure(a, Subset(a.size));
        while (current.count() != a.size) {
            Subset best_set;
            Element best = no_element;
            size_t tried = 0;
            for (size_t x = 0; x < a.size && tried < 32; ++x) {
                if (current[x])
                    continue;
                ++tried;
                auto seed = current;
                seed.set(x);
                auto next = closure(a, seed);
                if (best == no_element || next.count() > best_set.count()) {
                    best = Element(x);
                    best_set = std::move(next);
                    if (best_set.count() == a.size)
                        break;
                }
            }
            result.push_back(best);
            current = std::move(best_set);
        }
        return result;
    }

    auto is_homomorphism(const TableView & dom, const TableView & cod, const vector<Element> & table) -> bool
    {
        if (table.size() != dom.size || dom.binary.size() != cod.binary.size() || dom.unary.size() != cod.unary.size()
            || dom.constants.size() != cod.constants.size())
            return false;
        for (auto v : table)
            if (v >= cod.size)
                return false;
        for (size_t k = 0; k < dom.constants.size(); ++k)
            if (table[dom.constants[k]] != cod.constants[k])
                return false;
        for (size_t op = 0; op < dom.unary.size(); ++op)
            for (Element x = 0; x < dom.size; ++x)
                if (table[dom.apply(op, x)] != cod.apply(op, table[x]))
                    return false;
        for (size_t op = 0; op < dom.binary.size(); ++op)
            for (Element x = 0; x < dom.size; ++x)
                for (Element y = 0; y < dom.size; ++y)
                    if (table[dom.apply(op, x, y)] != cod.apply(op, table[x], table[y]))
                        return false;
        return true;
    }

    namespace
    {
        class HomSearch
        {
        public:
            HomSearch(const TableView & dom, const TableView & cod, const HomSearchOptions & options) :
                _dom(dom),
                _cod(cod),
                _options(options),
                _image(dom.size, no_element),
                _preimage(options.injective ? cod.size : 0, no_element)
            {
            }

            auto run(const vector<Element> & generators, const std::function<auto(const vector<Element> &)->bool> & visit) -> void
            {
                if (_dom.binary.size() != _cod.binary.size() || _dom.unary.size() != _cod.unary.size()
                    || _dom.constants.size() != _cod.constants.size())
                    throw InvalidHomomorphism("signatures differ");
                if (_options.injective && _dom.size > _cod.size)
                    return;
                for (size_t k = 0; k < _dom.constants.size(); ++k)
                    if (! assign(_dom.constants[k], _cod.constants[k]))
                        return;
                if (! propagate())
                    return;
                _stop = false;
                recurse(generators, 0, visit);
            }

        private:
            const TableView & _dom;
            const TableView & _cod;
            const HomSearchOptions & _options;
            vector<Element> _image, _preimage, _trail, _queue;
            bool _stop = false;

            auto assign(Element x, Element y) -> bool
            {
                if (_image[x] != no_element)
                    return _image[x] == y;
                if (_options.allowed && ! _options.allowed(x, y))
                    return false;
                if (_options.injective) {
                    if (_preimage[y] != no_element)
                        return false;
                    _preimage[y] = x;
                }
                _image[x] = y;
                _trail.push_back(x);
                _queue.push_back(x);
                return true;
            }

            auto propagate() -> bool
            {
                size_t head = 0;
                bool ok = true;
                while (ok && head < _queue.size()) {
                    auto x = _queue[head++];
                    auto ix = _image[x];
                    for (size_t op = 0; ok && op < _dom.unary.size(); ++op)
                        ok = assign(_dom.apply(op, x), _cod.apply(op, ix));
                    for (size_t op = 0; ok && op < _dom.binary.size(); ++op)
                        for (size_t t = 0; ok && t < _trail.size(); ++t) {
                            auto z = _trail[t];
                            auto iz = _image[z];
                            ok = assign(_dom.apply(op, x, z), _cod.apply(op, ix, iz))
                                && assign(_dom.apply(op, z, x), _cod.apply(op, iz, ix));
                        }
                }
                _queue.clear();
                return ok;
            }

            auto undo_to(size_t mark) -> void
            {
                while (_trail.size() > mark) {
                    auto x = _trail.back();
                    _trail.pop_back();
                    if (_options.injective)
                        _preimage[_image[x]] = no_element;
                    _image[x] = no_element;
                }
            }

            auto recurse(const vector<Element> & generators, size_t depth, const std::function<auto(const vector<Element> &)->bool> & visit)
                -> void
            {
                if (_stop)
                    return;
                while (depth < generators.size() && _image[generators[depth]] != no_element)
                    ++depth;
                if (depth == generators.size()) {
                    if (_trail.size() != _dom.size)
                        throw InvalidAlgebra("generator list does not generate the domain");
                    if (! visit(_image))
                        _stop = true;
                    return;
                }
                auto g = generators[depth];
                for (Element y = 0; y < _cod.size && ! _stop; ++y) {
                    auto mark = _trail.size();
                    if (assign(g, y) && propagate())
                        recurse(generators, depth + 1, visit);
                    _queue.clear();
                    undo_to(mark);
                }
            }
        };
    }

    auto search_homs(const TableView & dom, const TableView & cod, const vector<Element> & generators,
        const HomSearchOptions & options, const std::function<auto(const vector<Element> &)->bool> & visit) -> void
    {
        HomSearch search(dom, cod, options);
        search.run(generators, visit);
    }
}
