#pragma once

#include <kndual/algebra.hh>
#include <kndual/duality.hh>
#include <kndual/lattice.hh>
#include <kndual/limits.hh>

#include <optional>
#include <string>
#include <vector>

namespace kndual
{
    /// L_0 -> L_1 -> ... -> L_n with homs[j-1] = h_j : L_{j-1} -> L_j.
    /// complements[j-1][c] is the stored complement of c in L_j for every c
    /// in the image of h_j, and no_element elsewhere.
    struct DefaultSequence
    {
        std::vector<DistLattice> lattices;
        std::vector<LatticeHom> homs;
        std::vector<std::vector<Element>> complements;

        auto n() const -> std::size_t { return lattices.size() - 1; }
    };

    /// Builds the sequence and looks up complements where they exist. Throws
    /// InvalidHomomorphism if a table is not a lattice homomorphism and
    /// LengthMismatch if the counts disagree.
    auto make_sequence(std::vector<DistLattice> lattices, const std::vector<std::vector<Element>> & hom_tables)
        -> DefaultSequence;

    /// 2 -> 2 -> ... -> 2 with identity maps, n + 1 lattices.
    auto all_two_sequence(std::size_t n) -> DefaultSequence;

    /// Verdict with the first offending level j (1-based, the target of h_j)
    /// and element c of h_j(L_{j-1}) when a complement is missing or wrong.
    struct SequenceVerdict
    {
        bool valid = true;
        std::size_t j = 0;
        std::optional<Element> element;
        std::string detail;
    };

    auto validate_sequence(const DefaultSequence & s) -> SequenceVerdict;

    /// (f_0, ..., f_n) with f_j . h_j = h'_j . f_{j-1}.
    struct DefaultMorphism
    {
        std::vector<LatticeHom> maps;
    };

    /// Throws InvalidHomomorphism unless every square commutes.
    auto make_default_morphism(const DefaultSequence & s, const DefaultSequence & t, std::vector<LatticeHom> maps)
        -> DefaultMorphism;

    /// g after f, componentwise.
    auto compose(const DefaultMorphism & g, const DefaultMorphism & f) -> DefaultMorphism;

    /// A default morphism s -> t made of lattice isomorphisms, if one exists.
    auto find_sequence_isomorphism(const DefaultSequence & s, const DefaultSequence & t)
        -> std::optional<DefaultMorphism>;

    /// H_n(s): sort i is H(L_i), link i is the dual of h_i. duals[i] holds
    /// the homomorphism tables behind the points of sort i.
    struct SequenceDual
    {
        MultisortedSpace space;
        std::vector<LatticeDual> duals;
    };

    /// Throws InvalidSequence if s fails validate_sequence.
    auto functor_Hn(const DefaultSequence & s) -> SequenceDual;

    /// K_n(x): L_i = K(X_i), h_i = preimage under g_i, complements taken as
    /// set complements. upsets[i] describes the elements of L_i. Throws
    /// InvalidDualObject for invalid input.
    struct UpSetSequence
    {
        DefaultSequence sequence;
        std::vector<UpSetLattice> upsets;
    };

    auto functor_Kn(const MultisortedSpace & x) -> UpSetSequence;

    /// An element of L_0^2 x ... x L_n^2 as (a_{0,t}, a_{0,f}, a_{1,t}, ...).
    using Tuple = std::vector<Element>;

    auto in_universe(const DefaultSequence & s, const Tuple & a) -> bool;

    /// a op b computed from coordinates, op indexed as in apply_operation.
    /// Truth meet and join use the level-by-level formulas with the stored
    /// complements.
    auto coordinate_operation(const DefaultSequence & s, std::size_t op, const Tuple & a, const Tuple & b) -> Tuple;

    /// S (.) S: the admissible tuples in lexicographic order, with operation
    /// tables from the coordinate formulas.
    struct ProductBilattice
    {
        DefaultSequence sequence;
        std::vector<Tuple> universe;
        FiniteAlgebra algebra;

        auto index_of(const Tuple & a) const -> std::optional<Element>;
    };

    /// Throws InvalidSequence, SizeOverflow, or ClosureFailure if an
    /// operation leaves the universe.
    auto build_product(const DefaultSequence & s, const Limits & limits = default_limits()) -> ProductBilattice;

    /// iota(a) on H_n(s). Throws NotInUniverse if a is not admissible.
    auto iota(const DefaultSequence & s, const SequenceDual & h, const Tuple & a) -> SortedMap;

    /// The inverse: a_{i,t} and a_{i,f} are the elements whose points are
    /// where f_i lies above t_i and f_i respectively. Throws NotInUniverse if
    /// those point sets are not elements.
    auto iota_inv(const DefaultSequence & s, const SequenceDual & h, const SortedMap & f) -> Tuple;

    /// Comparison of the coordinate tables with the tables transported
    /// through iota from E(H_n(s)).
    struct TransportReport
    {
        bool bijective = false;
        bool inverse_agrees = false;
        bool tables_agree = false;
        std::size_t comparisons = 0;
        std::string first_mismatch;

        auto ok() const -> bool { return bijective && inverse_agrees && tables_agree; }
    };

    auto transport_check(const ProductBilattice & p, const Limits & limits = default_limits()) -> TransportReport;

    /// The sequence K_n(D(a)) with an isomorphism a -> S (.) S, checked
    /// operation by operation. Throws NotInVariety, SizeOverflow, or
    /// IsoFailure if the check fails.
    struct ProductRepresentation
    {
        UpSetSequence sequence;
        ProductBilattice product;
        std::vector<Element> iso;
    };

    auto product_representation(const FiniteAlgebra & a, std::size_t n, const Limits & limits = default_limits())
        -> ProductRepresentation;

    /// The map from tuples of the all-two product onto K_n: the first level
    /// i whose pair is not 00 decides between top_i (11), t_i (10) and f_i
    /// (01); the all-zero tuple goes to top_{n+1}.
    auto phi(std::size_t n, const Tuple & a) -> Element;

    /// Lexicographic order of (2 x 2^op)^(n+1) on tuples of 0/1 values.
    auto lex_truth_leq(const Tuple & a, const Tuple & b) -> bool;

    /// The truth order of the all-two product, read off its truth meet, is
    /// the lexicographic order.
    auto truth_order_lex_check(std::size_t n) -> bool;
}
