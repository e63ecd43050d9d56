#pragma once

#include <kndual/engine.hh>
#include <kndual/limits.hh>
#include <kndual/poset.hh>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace kndual
{
    /// Operation tables for the bilattice signature. Binary tables are
    /// row-major over the universe.
    struct Operations
    {
        std::vector<Element> kmeet, kjoin, tmeet, tjoin, neg;
        Element bot = 0, top = 0;
    };

    /// A finite algebra in the bilattice signature (knowledge meet and join,
    /// truth meet and join, negation, bottom, top). Copies share tables.
    class FiniteAlgebra
    {
    public:
        FiniteAlgebra() = default;

        /// Throws InvalidAlgebra unless both reducts are bounded lattices and
        /// negation is an involution that preserves the knowledge order and
        /// reverses the truth order. `validate` false skips the checks.
        FiniteAlgebra(std::size_t size, Operations ops, std::vector<std::string> names = {}, bool validate = true);

        auto size() const -> std::size_t { return _data ? _data->size : 0; }
        auto kmeet(Element a, Element b) const -> Element { return _data->ops.kmeet[a * size() + b]; }
        auto kjoin(Element a, Element b) const -> Element { return _data->ops.kjoin[a * size() + b]; }
        auto tmeet(Element a, Element b) const -> Element { return _data->ops.tmeet[a * size() + b]; }
        auto tjoin(Element a, Element b) const -> Element { return _data->ops.tjoin[a * size() + b]; }
        auto neg(Element a) const -> Element { return _data->ops.neg[a]; }
        auto bot() const -> Element { return _data->ops.bot; }
        auto top() const -> Element { return _data->ops.top; }
        auto k_leq(Element a, Element b) const -> bool { return kmeet(a, b) == a; }
        auto t_leq(Element a, Element b) const -> bool { return tmeet(a, b) == a; }
        auto ops() const -> const Operations & { return _data->ops; }

        auto names() const -> const std::vector<std::string> & { return _data->names; }
        auto name(Element a) const -> std::string;
        auto index_of(const std::string & name) const -> std::optional<Element>;

        auto knowledge_order() const -> Poset;
        auto truth_order() const -> Poset;

        /// Signature order used throughout: binary (kmeet, kjoin, tmeet,
        /// tjoin), unary (neg), constants (bot, top).
        auto view() const -> TableView;

        /// Throws InvalidAlgebra with a description of the first failed check.
        auto validate() const -> void;

    private:
        struct Data
        {
            std::size_t size;
            Operations ops;
            std::vector<std::string> names;
        };
        std::shared_ptr<const Data> _data;
    };

    /// Operation table of a binary or unary operation, by signature position
    /// 0..4 (kmeet, kjoin, tmeet, tjoin, neg).
    auto operation_name(std::size_t op) -> const char *;
    auto apply_operation(const FiniteAlgebra & a, std::size_t op, Element x, Element y) -> Element;

    /// The trivial one-element algebra.
    auto trivial_algebra() -> FiniteAlgebra;

    auto generate(const FiniteAlgebra & a, const Subset & seed) -> Subset;
    auto all_subalgebras(const FiniteAlgebra & a) -> std::vector<Subset>;

    /// The subalgebra on the given subuniverse, re-indexed in increasing
    /// order. Throws InvalidAlgebra if the set is not closed.
    auto subalgebra(const FiniteAlgebra & a, const Subset & universe) -> FiniteAlgebra;

    auto is_homomorphism(const FiniteAlgebra & a, const FiniteAlgebra & b, const std::vector<Element> & table) -> bool;
    auto homs(const FiniteAlgebra & a, const FiniteAlgebra & b) -> std::vector<std::vector<Element>>;
    auto find_isomorphism(const FiniteAlgebra & a, const FiniteAlgebra & b) -> std::optional<std::vector<Element>>;

    /// A congruence as block labels: block[x] is the index of x's block,
    /// blocks numbered in order of their least element.
    using Congruence = std::vector<Element>;

    auto identity_congruence(std::size_t size) -> Congruence;
    auto total_congruence(std::size_t size) -> Congruence;
    auto is_congruence(const FiniteAlgebra & a, const Congruence & theta) -> bool;
    auto principal_congruence(const FiniteAlgebra & a, Element x, Element y) -> Congruence;
    auto join_congruences(const FiniteAlgebra & a, const Congruence & theta, const Congruence & phi) -> Congruence;
    /// theta refines phi.
    auto congruence_leq(const Congruence & theta, const Congruence & phi) -> bool;
    auto kernel(const std::vector<Element> & table) -> Congruence;

    /// Every congruence, sorted by number of blocks descending and then
    /// lexicographically, so the list starts at the identity and ends at the
    /// total relation.
    auto congruence_lattice(const FiniteAlgebra & a) -> std::vector<Congruence>;

    auto quotient(const FiniteAlgebra & a, const Congruence & theta) -> FiniteAlgebra;

    /// Direct product; a tuple (x_0, ..., x_{k-1}) has index
    /// sum x_i * prod_{j > i} |A_j|, so the last coordinate varies fastest.
    auto product(const std::vector<FiniteAlgebra> & factors, const Limits & limits = default_limits()) -> FiniteAlgebra;
    auto power(const FiniteAlgebra & a, std::size_t k, const Limits & limits = default_limits()) -> FiniteAlgebra;
    auto product_coordinates(const std::vector<std::size_t> & sizes, std::size_t index) -> std::vector<Element>;
    auto product_index(const std::vector<std::size_t> & sizes, const std::vector<Element> & coords) -> Element;

    /// Throws TrivialAlgebra for the one-element algebra.
    auto is_subdirectly_irreducible(const FiniteAlgebra & a) -> bool;

    /// First failure of monotonicity of an operation of one lattice reduct in
    /// the order of the other: a <= b in that order but op(a, c) is not below
    /// op(b, c).
    struct InterlacingFailure
    {
        std::size_t op;
        Element a, b, c;
    };

    auto interlacing_failures(const FiniteAlgebra & a) -> std::vector<InterlacingFailure>;
}
