#pragma once

#include <kndual/poset.hh>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace kndual
{
    using Element = std::uint32_t;

    inline constexpr Element no_element = ~Element{0};

    /// Borrowed view of a finite algebra's operation tables, in whatever
    /// signature the caller cares about. Binary tables are row-major,
    /// op(a, b) = binary[k][a * size + b].
    struct TableView
    {
        std::size_t size = 0;
        std::vector<const Element *> binary;
        std::vector<const Element *> unary;
        std::vector<Element> constants;

        auto apply(std::size_t op, Element a, Element b) const -> Element { return binary[op][a * size + b]; }
        auto apply(std::size_t op, Element a) const -> Element { return unary[op][a]; }
    };

    /// Least subuniverse containing the seed and all constants.
    auto closure(const TableView & a, const Subset & seed) -> Subset;

    /// A small generating set, picked greedily.
    auto greedy_generators(const TableView & a) -> std::vector<Element>;

    auto is_homomorphism(const TableView & dom, const TableView & cod, const std::vector<Element> & table) -> bool;

    struct HomSearchOptions
    {
        bool injective = false;
        /// Optional filter on individual assignments x -> y.
        std::function<auto(Element, Element)->bool> allowed;
    };

    /// Enumerates every homomorphism dom -> cod, in a deterministic order.
    /// `generators` must generate dom. Each homomorphism is passed to `visit`
    /// as a full table; returning false from `visit` stops the search.
    auto search_homs(const TableView & dom, const TableView & cod, const std::vector<Element> & generators,
        const HomSearchOptions & options, const std::function<auto(const std::vector<Element> &)->bool> & visit) -> void;
}
