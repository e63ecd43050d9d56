#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kndual
{
    /// A subset of an indexed universe.
    using Subset = boost::dynamic_bitset<std::uint64_t>;

    /// Finite reflexive, transitive relation over {0, ..., size-1}. Rows are
    /// stored as bitsets in both directions, so up(i) is {j : i <= j} and
    /// down(j) is {i : i <= j}.
    class QuasiOrder
    {
    public:
        QuasiOrder() = default;

        /// Reflexive-transitive closure of the given pairs.
        static auto generated_by(std::size_t size, std::span<const std::pair<std::size_t, std::size_t>> pairs)
            -> QuasiOrder;

        /// Takes the relation exactly as given; throws InvalidOrder unless it
        /// is reflexive and transitive.
        static auto from_matrix(std::size_t size, const std::vector<Subset> & up_rows) -> QuasiOrder;

        auto size() const -> std::size_t { return _up.size(); }
        auto leq(std::size_t i, std::size_t j) const -> bool { return _up[i][j]; }
        auto less(std::size_t i, std::size_t j) const -> bool { return i != j && _up[i][j]; }
        auto up(std::size_t i) const -> const Subset & { return _up[i]; }
        auto down(std::size_t i) const -> const Subset & { return _down[i]; }

        auto is_antisymmetric() const -> bool;
        auto is_sub_relation_of(const QuasiOrder & other) const -> bool;
        auto pairs() const -> std::vector<std::pair<std::size_t, std::size_t>>;

        /// The relation restricted to the given elements, re-indexed in
        /// increasing order.
        auto restrict_to(const Subset & keep) const -> QuasiOrder;
        auto converse() const -> QuasiOrder;

        auto label(std::size_t i) const -> std::string;
        auto labels() const -> const std::vector<std::string> & { return _labels; }
        auto set_labels(std::vector<std::string> labels) -> void;

        auto operator==(const QuasiOrder & other) const -> bool { return _up == other._up; }

    protected:
        std::vector<Subset> _up, _down;
        std::vector<std::string> _labels;

        auto rebuild_down() -> void;
    };

    /// A QuasiOrder that is also antisymmetric.
    class Poset : public QuasiOrder
    {
    public:
        Poset() = default;

        /// Throws InvalidOrder if `q` is not antisymmetric.
        explicit Poset(QuasiOrder q);

        static auto generated_by(std::size_t size, std::span<const std::pair<std::size_t, std::size_t>> pairs)
            -> Poset;
        static auto antichain(std::size_t size) -> Poset;
        static auto chain(std::size_t size) -> Poset;
        static auto disjoint_union(std::span<const Poset> parts) -> Poset;
        /// Cartesian product ordered coordinatewise; index = i * |b| + j.
        static auto product(const Poset & a, const Poset & b) -> Poset;

        /// Cover pairs (i, j), i.e. i < j with nothing strictly between.
        auto hasse() const -> std::vector<std::pair<std::size_t, std::size_t>>;
        /// A linear extension: every element appears after all elements below it.
        auto linear_extension() const -> std::vector<std::size_t>;
    };

    /// Order-preserving map between posets.
    class MonotoneMap
    {
    public:
        MonotoneMap() = default;

        /// Throws NotMonotone if the table is out of range or breaks the order.
        MonotoneMap(Poset dom, Poset cod, std::vector<std::size_t> table);

        auto dom() const -> const Poset & { return _dom; }
        auto cod() const -> const Poset & { return _cod; }
        auto table() const -> const std::vector<std::size_t> & { return _table; }
        auto operator()(std::size_t x) const -> std::size_t { return _table[x]; }

        /// this after `first`, i.e. x -> this(first(x)).
        auto after(const MonotoneMap & first) const -> MonotoneMap;

    private:
        Poset _dom, _cod;
        std::vector<std::size_t> _table;
    };

    /// Every up-set of p, each exactly once, as subsets of p's universe.
    auto up_sets(const QuasiOrder & p) -> std::vector<Subset>;

    /// Number of up-sets, without materialising them. Splits on order
    /// components and branches on a pivot with memoisation. Throws
    /// SizeOverflow if the count does not fit in 64 bits.
    auto count_up_sets(const QuasiOrder & p) -> std::uint64_t;

    auto is_up_set(const QuasiOrder & p, const Subset & s) -> bool;
    auto is_down_set(const QuasiOrder & p, const Subset & s) -> bool;

    /// Connected components of the comparability graph, each sorted, blocks
    /// ordered by their least element.
    auto order_components(const QuasiOrder & p) -> std::vector<std::vector<std::size_t>>;

    /// True iff phi is constant on every order component of its domain.
    auto is_semi_constant(const MonotoneMap & phi) -> bool;

    /// S + T ordered by <=_S, <=_T and x < y whenever x = phi(y). Elements of
    /// s come first, then those of t.
    auto restricted_linear_sum(const Poset & s, const Poset & t, const MonotoneMap & phi) -> Poset;

    /// Layered version: layers[0] at the bottom, links[i-1] : layers[i] -> layers[i-1].
    auto iterated_linear_sum(std::span<const Poset> layers, std::span<const MonotoneMap> links) -> Poset;

    /// Doubling of the iterated restricted linear sum: each layer appears
    /// twice (copy 1 then copy 2, layer by layer from the bottom) and each
    /// copy of layer i sits over both copies of layer i-1 via links[i-1].
    auto doubling(std::span<const Poset> layers, std::span<const MonotoneMap> links) -> Poset;

    /// Order isomorphism p -> q if one exists.
    auto find_poset_isomorphism(const QuasiOrder & p, const QuasiOrder & q)
        -> std::optional<std::vector<std::size_t>>;

    /// All posets on exactly `size` points, one per isomorphism class, in a
    /// deterministic order.
    auto enumerate_posets(std::size_t size) -> std::vector<Poset>;
}
