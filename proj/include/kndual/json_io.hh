#pragma once

#include <kndual/algebra.hh>
#include <kndual/duality.hh>
#include <kndual/lattice.hh>
#include <kndual/poset.hh>
#include <kndual/product_rep.hh>

#include <json.hpp>

#include <string>

namespace kndual
{
    using Json = nlohmann::json;

    /// {"size": N, "leq": [[i, j], ...], "labels": [...]}. The loader closes
    /// the pairs reflexively and transitively. Labels are optional.
    auto poset_to_json(const QuasiOrder & p) -> Json;
    auto quasi_order_from_json(const Json & j) -> QuasiOrder;
    /// Also throws ParseError if the closed relation is not antisymmetric.
    auto poset_from_json(const Json & j) -> Poset;

    /// {"size": N, "meet": [[...]], "join": [[...]], "bot": i, "top": j}, or
    /// {"from_poset": <poset>} for the up-set lattice.
    auto lattice_to_json(const DistLattice & l) -> Json;
    auto lattice_from_json(const Json & j) -> DistLattice;

    /// {"size": N, "ops": {"kmeet", "kjoin", "tmeet", "tjoin", "neg", "bot",
    /// "top"}, "names": [...]}.
    auto algebra_to_json(const FiniteAlgebra & a) -> Json;
    auto algebra_from_json(const Json & j) -> FiniteAlgebra;

    /// {"sorts": [<poset>...], "links": [[...], ...]}.
    auto space_to_json(const MultisortedSpace & x) -> Json;
    auto space_from_json(const Json & j) -> MultisortedSpace;

    /// {"lattices": [<lattice>...], "homs": [[...], ...]}; complements are
    /// recomputed on load.
    auto sequence_to_json(const DefaultSequence & s) -> Json;
    auto sequence_from_json(const Json & j) -> DefaultSequence;

    /// Throws ParseError for unreadable files or malformed JSON.
    auto read_json_file(const std::string & path) -> Json;
    auto parse_json(const std::string & text) -> Json;
}
