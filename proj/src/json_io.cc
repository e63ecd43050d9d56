#include <kndual/json_io.hh>

#include <kndual/error.hh>

#include <fstream>
#include <sstream>

namespace kndual
{
    using std::size_t;
    using std::string;
    using std::vector;

    namespace
    {
        auto require(const Json & j, const char * key) -> const Json &
        {
            if (! j.is_object() || ! j.contains(key))
                throw ParseError(string("missing field \"") + key + "\"");
            return j.at(key);
        }

        auto index_in(const Json & j, size_t size, const char * what) -> Element
        {
            if (! j.is_number_unsigned() && ! (j.is_number_integer() && j.get<long long>() >= 0))
                throw ParseError(string(what) + " must be a non-negative integer");
            auto v = j.get<std::uint64_t>();
            if (v >= size)
                throw ParseError(string(what) + " " + std::to_string(v) + " is out of range");
            return Element(v);
        }

        auto size_of(const Json & j) -> size_t
        {
            auto & s = require(j, "size");
            if (! s.is_number_unsigned() && ! (s.is_number_integer() && s.get<long long>() >= 0))
                throw ParseError("size must be a non-negative integer");
            return s.get<size_t>();
        }

        auto unary_table(const Json & j, size_t size, const char * what) -> vector<Element>
        {
            if (! j.is_array() || j.size() != size)
                throw ParseError(string(what) + " must be an array of length " + std::to_string(size));
            vector<Element> table;
            for (auto & v : j)
                table.push_back(index_in(v, size, what));
            return table;
        }

        auto binary_table(const Json & j, size_t size, const char * what) -> vector<Element>
        {
            if (! j.is_array() || j.size() != size)
                throw ParseError(string(what) + " must have " + std::to_string(size) + " rows");
            vector<Element> table;
            for (auto & row : j) {
                auto r = unary_table(row, size, what);
                table.insert(table.end(), r.begin(), r.end());
            }
            return table;
        }

        auto rows(const vector<Element> & table, size_t size) -> Json
        {
            auto out = Json::array();
            for (size_t a = 0; a < size; ++a)
                out.push_back(vector<Element>(table.begin() + a * size, table.begin() + (a + 1) * size));
            return out;
        }

        auto labels_of(const Json & j, size_t size) -> vector<string>
        {
            if (! j.contains("labels") && ! j.contains("names"))
                return {};
            auto & l = j.contains("labels") ? j.at("labels") : j.at("names");
            if (! l.is_array() || l.size() != size)
                throw ParseError("labels must be an array of length " + std::to_string(size));
            vector<string> result;
            for (auto & s : l) {
                if (! s.is_string())
                    throw ParseError("labels must be strings");
                result.push_back(s.get<string>());
            }
            return result;
        }

        template <typename F>
        auto guarded(F && f) -> decltype(f())
        {
            try {
                return f();
            }
            catch (const nlohmann::json::exception & e) {
                throw ParseError(e.what());
            }
        }
    }

    auto poset_to_json(const QuasiOrder & p) -> Json
    {
        Json j;
        j["size"] = p.size();
        auto leq = Json::array();
        for (auto [a, b] : p.pairs())
            if (a != b)
                leq.push_back({a, b});
        j["leq"] = leq;
        if (! p.labels().empty())
            j["labels"] = p.labels();
        return j;
    }

    auto quasi_order_from_json(const Json & j) -> QuasiOrder
    {
        return guarded([&] {
            auto size = size_of(j);
            auto & leq = require(j, "leq");
            if (! leq.is_array())
                throw ParseError("leq must be an array of pairs");
            vector<std::pair<size_t, size_t>> pairs;
            for (auto & pair : leq) {
                if (! pair.is_array() || pair.size() != 2)
                    throw ParseError("leq entries must be pairs");
                pairs.emplace_back(index_in(pair[0], size, "leq element"), index_in(pair[1], size, "leq element"));
            }
            auto q = QuasiOrder::generated_by(size, pairs);
            q.set_labels(labels_of(j, size));
            return q;
        });
    }

    auto poset_from_json(const Json & j) -> Poset
    {
        auto q = quasi_order_from_json(j);
        if (! q.is_antisymmetric())
            throw ParseError("relation is not antisymmetric");
        return Poset(std::move(q));
    }

    auto lattice_to_json(const DistLattice & l) -> Json
    {
        Json j;
        j["size"] = l.size();
        j["meet"] = rows(l.meet_table(), l.size());
        j["join"] = rows(l.join_table(), l.size());
        j["bot"] = l.bot();
        j["top"] = l.top();
        if (! l.labels().empty())
            j["labels"] = l.labels();
        return j;
    }

    auto lattice_from_json(const Json & j) -> DistLattice
    {
        return guarded([&] {
            if (j.is_object() && j.contains("from_poset"))
                return K(poset_from_json(j.at("from_poset"))).lattice;
            auto size = size_of(j);
            if (size == 0)
                throw ParseError("a lattice needs at least one element");
            return DistLattice(size, binary_table(require(j, "meet"), size, "meet"),
                binary_table(require(j, "join"), size, "join"), index_in(require(j, "bot"), size, "bot"),
                index_in(require(j, "top"), size, "top"), labels_of(j, size));
        });
    }

    auto algebra_to_json(const FiniteAlgebra & a) -> Json
    {
        auto & ops = a.ops();
        Json o;
        o["kmeet"] = rows(ops.kmeet, a.size());
        o["kjoin"] = rows(ops.kjoin, a.size());
        o["tmeet"] = rows(ops.tmeet, a.size());
        o["tjoin"] = rows(ops.tjoin, a.size());
        o["neg"] = ops.neg;
        o["bot"] = ops.bot;
        o["top"] = ops.top;
        Json j;
        j["size"] = a.size();
        j["ops"] = o;
        if (! a.names().empty())
            j["names"] = a.names();
        return j;
    }

    auto algebra_from_json(const Json & j) -> FiniteAlgebra
    {
        return guarded([&] {
            auto size = size_of(j);
            if (size == 0)
                throw ParseError("an algebra needs at least one element");
            auto & o = require(j, "ops");
            Operations ops;
            ops.kmeet = binary_table(require(o, "kmeet"), size, "kmeet");
            ops.kjoin = binary_table(require(o, "kjoin"), size, "kjoin");
            ops.tmeet = binary_table(require(o, "tmeet"), size, "tmeet");
            ops.tjoin = binary_table(require(o, "tjoin"), size, "tjoin");
            ops.neg = unary_table(require(o, "neg"), size, "neg");
            ops.bot = index_in(require(o, "bot"), size, "bot");
            ops.top = index_in(require(o, "top"), size, "top");
            return FiniteAlgebra(size, std::move(ops), labels_of(j, size));
        });
    }

    auto space_to_json(const MultisortedSpace & x) -> Json
    {
        Json j;
        j["sorts"] = Json::array();
        for (auto & s : x.sorts)
            j["sorts"].push_back(poset_to_json(s));
        j["links"] = x.links;
        return j;
    }

    auto space_from_json(const Json & j) -> MultisortedSpace
    {
        return guarded([&] {
            MultisortedSpace x;
            auto & sorts = require(j, "sorts");
            if (! sorts.is_array() || sorts.empty())
                throw ParseError("sorts must be a non-empty array");
            for (auto & s : sorts)
                x.sorts.push_back(quasi_order_from_json(s));
            auto & links = require(j, "links");
            if (! links.is_array() || links.size() + 1 != x.sorts.size())
                throw ParseError("expected " + std::to_string(x.sorts.size() - 1) + " links");
            for (size_t i = 1; i < x.sorts.size(); ++i) {
                auto & l = links[i - 1];
                if (! l.is_array() || l.size() != x.sorts[i].size())
                    throw ParseError("link " + std::to_string(i) + " must have one entry per point of sort "
                        + std::to_string(i));
                vector<size_t> table;
                for (auto & v : l)
                    table.push_back(index_in(v, x.sorts[i - 1].size(), "link value"));
                x.links.push_back(std::move(table));
            }
            return x;
        });
    }

    auto sequence_to_json(const DefaultSequence & s) -> Json
    {
        Json j;
        j["lattices"] = Json::array();
        for (auto & l : s.lattices)
            j["lattices"].push_back(lattice_to_json(l));
        j["homs"] = Json::array();
        for (auto & h : s.homs)
            j["homs"].push_back(h.table());
        return j;
    }

    auto sequence_from_json(const Json & j) -> DefaultSequence
    {
        return guarded([&] {
            auto & lattices = require(j, "lattices");
            if (! lattices.is_array() || lattices.empty())
                throw ParseError("lattices must be a non-empty array");
            vector<DistLattice> ls;
            for (auto & l : lattices)
                ls.push_back(lattice_from_json(l));
            auto & homs = require(j, "homs");
            if (! homs.is_array() || homs.size() + 1 != ls.size())
                throw ParseError("expected " + std::to_string(ls.size() - 1) + " homs");
            vector<vector<Element>> tables;
            for (size_t i = 1; i < ls.size(); ++i) {
                auto & h = homs[i - 1];
                if (! h.is_array() || h.size() != ls[i - 1].size())
                    throw ParseError("hom " + std::to_string(i) + " must have one entry per element of its domain");
                vector<Element> table;
                for (auto & v : h)
                    table.push_back(index_in(v, ls[i].size(), "hom value"));
                tables.push_back(std::move(table));
            }
            return make_sequence(std::move(ls), tables);
        });
    }

    auto parse_json(const string & text) -> Json
    {
        try {
            return Json::parse(text);
        }
        catch (const nlohmann::json::exception & e) {
            throw ParseError(e.what());
        }
    }

    auto read_json_file(const string & path) -> Json
    {
        std::ifstream in(path);
        if (! in)
            throw ParseError("cannot open " + path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        return parse_json(buffer.str());
    }
}
