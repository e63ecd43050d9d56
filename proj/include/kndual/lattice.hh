#pragma once

#include <kndual/engine.hh>
#include <kndual/poset.hh>

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kndual
{
    /// Meet and join tables derived from an order by greatest-lower and
    /// least-upper bound search. Throws InvalidLattice if some pair lacks a
    /// bound or the order has no top or bottom.
    struct LatticeTables
    {
        std::vector<Element> meet, join;
        Element bot = 0, top = 0;
    };

    auto lattice_tables(const QuasiOrder & order) -> LatticeTables;

    auto is_distributive(std::size_t size, const std::vector<Element> & meet, const std::vector<Element> & join) -> bool;

    /// Finite bounded distributive lattice. Copies share the underlying tables.
    class DistLattice
    {
    public:
        DistLattice() = default;

        /// Throws InvalidLattice unless the tables form a bounded distributive
        /// lattice with the given bounds (skipped when `validate` is false).
        DistLattice(std::size_t size, std::vector<Element> meet, std::vector<Element> join, Element bot, Element top,
            std::vector<std::string> labels = {}, bool validate = true);

        static auto from_order(const Poset & order) -> DistLattice;
        static auto chain(std::size_t size) -> DistLattice;
        /// Boolean lattice 2^k, elements as bitmasks.
        static auto boolean(std::size_t k) -> DistLattice;
        /// Index = i * |b| + j.
        static auto product(const DistLattice & a, const DistLattice & b) -> DistLattice;

        auto size() const -> std::size_t { return _data ? _data->size : 0; }
        auto meet(Element a, Element b) const -> Element { return _data->meet[a * _data->size + b]; }
        auto join(Element a, Element b) const -> Element { return _data->join[a * _data->size + b]; }
        auto bot() const -> Element { return _data->bot; }
        auto top() const -> Element { return _data->top; }
        auto leq(Element a, Element b) const -> bool { return meet(a, b) == a; }
        auto meet_table() const -> const std::vector<Element> & { return _data->meet; }
        auto join_table() const -> const std::vector<Element> & { return _data->join; }
        auto label(Element a) const -> std::string;
        auto labels() const -> const std::vector<std::string> & { return _data->labels; }

        auto order() const -> Poset;
        auto view() const -> TableView;
        auto join_irreducibles() const -> std::vector<Element>;

    private:
        struct Data
        {
            std::size_t size;
            std::vector<Element> meet, join;
            Element bot, top;
            std::vector<std::string> labels;
        };
        std::shared_ptr<const Data> _data;
    };

    /// Bounded lattice homomorphism.
    class LatticeHom
    {
    public:
        LatticeHom() = default;

        /// Throws InvalidHomomorphism unless the table preserves meet, join and bounds.
        LatticeHom(DistLattice dom, DistLattice cod, std::vector<Element> table);

        auto dom() const -> const DistLattice & { return _dom; }
        auto cod() const -> const DistLattice & { return _cod; }
        auto table() const -> const std::vector<Element> & { return _table; }
        auto operator()(Element a) const -> Element { return _table[a]; }

        /// this after `first`.
        auto after(const LatticeHom & first) const -> LatticeHom;

    private:
        DistLattice _dom, _cod;
        std::vector<Element> _table;
    };

    /// The dual space of a lattice: its homomorphisms into 2, ordered pointwise.
    /// points[x] is the table of the x-th homomorphism.
    struct LatticeDual
    {
        Poset order;
        std::vector<std::vector<Element>> points;

        auto index_of(const std::vector<Element> & point) const -> std::optional<std::size_t>;
    };

    auto H(const DistLattice & l) -> LatticeDual;

    /// The lattice of up-sets of a poset; sets[a] is the up-set for element a.
    struct UpSetLattice
    {
        DistLattice lattice;
        std::vector<Subset> sets;

        auto index_of(const Subset & s) const -> std::optional<Element>;
    };

    auto K(const QuasiOrder & p) -> UpSetLattice;

    /// The isomorphism a -> {x in H(l) : x(a) = 1} onto K(H(l)). Throws
    /// IsoFailure if the map is not a lattice isomorphism.
    struct KHIso
    {
        LatticeDual dual;
        UpSetLattice upsets;
        std::vector<Element> table;
    };

    auto kh_iso(const DistLattice & l) -> KHIso;

    auto complement_of(const DistLattice & l, Element a) -> std::optional<Element>;

    /// The dual map y -> y . f from H(cod) to H(dom), with the two verdicts
    /// that should always coincide: semi-constancy of the dual map and
    /// complementedness of the image of f.
    struct HomDual
    {
        MonotoneMap map;
        bool semi_constant = false;
        bool image_complemented = false;

        auto verdicts_agree() const -> bool { return semi_constant == image_complemented; }
    };

    auto hom_dual(const LatticeHom & f) -> HomDual;
    auto hom_dual(const LatticeHom & f, const LatticeDual & dual_dom, const LatticeDual & dual_cod) -> HomDual;

    auto lattice_homs(const DistLattice & a, const DistLattice & b) -> std::vector<LatticeHom>;
    auto lattice_isomorphisms(const DistLattice & a, const DistLattice & b) -> std::vector<std::vector<Element>>;
    auto find_lattice_isomorphism(const DistLattice & a, const DistLattice & b) -> std::optional<std::vector<Element>>;
}
