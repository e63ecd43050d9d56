#include <kndual/dot.hh>

#include <sstream>

namespace kndual
{
    using std::size_t;
    using std::string;

    namespace
    {
        auto quoted(const string & s) -> string
        {
            string out = "\"";
            for (char c : s) {
                if (c == '"' || c == '\\')
                    out += '\\';
                out += c;
            }
            return out + "\"";
        }

        auto graph(const Poset & p, const string & name, const string & rankdir) -> string
        {
            std::ostringstream out;
            out << "digraph " << quoted(name) << " {\n";
            out << "  rankdir=" << rankdir << ";\n";
            out << "  node [shape=circle, fontsize=10];\n";
            out << "  edge [arrowhead=none];\n";
            for (size_t x = 0; x < p.size(); ++x)
                out << "  n" << x << " [label=" << quoted(p.label(x)) << "];\n";
            for (auto [lo, hi] : p.hasse())
                out << "  n" << lo << " -> n" << hi << ";\n";
            out << "}\n";
            return out.str();
        }

        auto named(Poset p, const FiniteAlgebra & a) -> Poset
        {
            std::vector<string> labels;
            for (Element x = 0; x < a.size(); ++x)
                labels.push_back(a.name(x));
            p.set_labels(std::move(labels));
            return p;
        }
    }

    auto hasse_dot(const Poset & p, const string & name) -> string
    {
        return graph(p, name, "BT");
    }

    auto quasi_order_dot(const QuasiOrder & q, const string & name) -> string
    {
        std::ostringstream out;
        out << "digraph " << quoted(name) << " {\n";
        out << "  rankdir=BT;\n";
        out << "  node [shape=circle, fontsize=10];\n";
        out << "  edge [arrowhead=none];\n";
        auto n = q.size();
        auto equivalent = [&](size_t x, size_t y) { return q.leq(x, y) && q.leq(y, x); };
        auto strict = [&](size_t x, size_t y) { return q.leq(x, y) && ! q.leq(y, x); };
        std::vector<size_t> rep(n);
        for (size_t x = 0; x < n; ++x) {
            rep[x] = x;
            for (size_t y = 0; y < x; ++y)
                if (equivalent(x, y)) {
                    rep[x] = rep[y];
                    break;
                }
        }
        for (size_t x = 0; x < n; ++x)
            out << "  n" << x << " [label=" << quoted(q.label(x)) << "];\n";
        for (size_t x = 0; x < n; ++x) {
            size_t previous = x;
            for (size_t y = x + 1; y < n; ++y)
                if (rep[y] == x) {
                    out << "  n" << previous << " -> n" << y << " [style=dashed, constraint=false];\n";
                    previous = y;
                }
        }
        for (size_t x = 0; x < n; ++x)
            for (size_t y = 0; y < n; ++y) {
                if (rep[x] != x || rep[y] != y || ! strict(x, y))
                    continue;
                bool cover = true;
                for (size_t z = 0; z < n && cover; ++z)
                    cover = ! (strict(x, z) && strict(z, y));
                if (cover)
                    out << "  n" << x << " -> n" << y << ";\n";
            }
        out << "}\n";
        return out.str();
    }

    auto lattice_dot(const DistLattice & l, const string & name) -> string
    {
        auto p = l.order();
        std::vector<string> labels;
        for (Element x = 0; x < l.size(); ++x)
            labels.push_back(l.label(x));
        p.set_labels(std::move(labels));
        return hasse_dot(p, name);
    }

    auto bilattice_dot(const FiniteAlgebra & a, const string & name) -> string
    {
        return graph(named(a.knowledge_order(), a), name + "_knowledge", "BT")
            + graph(named(a.truth_order(), a), name + "_truth", "LR");
    }
}
