#pragma once

#include <kndual/algebra.hh>
#include <kndual/limits.hh>
#include <kndual/poset.hh>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kndual
{
    /// A finite multisorted structure X_0, ..., X_n with a binary relation
    /// on each sort and links g_i : X_i -> X_{i-1}. links[i-1] is g_i.
    struct MultisortedSpace
    {
        std::vector<QuasiOrder> sorts;
        std::vector<std::vector<std::size_t>> links;

        auto n() const -> std::size_t { return sorts.size() - 1; }
        auto point_count() const -> std::size_t;
    };

    /// Sorts (K_m, S_{m,m}) for m = 0..n with links h_{i,i-1}.
    auto alter_ego(std::size_t n) -> MultisortedSpace;

    /// Verdict of the dual-category membership test. `condition` is 0 when
    /// valid, otherwise the first failed condition: 1 when some sort is not
    /// a partial order, 2 when a link is not a total map between the right
    /// sorts, 3 when a link separates two related points.
    struct DualObjectVerdict
    {
        bool valid = true;
        int condition = 0;
        std::string detail;
    };

    auto check_dual_object(const MultisortedSpace & x) -> DualObjectVerdict;

    /// A sort-respecting map out of a multisorted space: values[m][p] is the
    /// image of point p of sort m, an element of K_m.
    using SortedMap = std::vector<std::vector<Element>>;

    /// D(a) together with the homomorphisms behind its points:
    /// homs[m][x] is the table of point x of sort m, a homomorphism a -> K_m.
    struct DualSpace
    {
        MultisortedSpace space;
        std::vector<std::vector<std::vector<Element>>> homs;
    };

    /// Throws NotInVariety if the homomorphisms into K_0, ..., K_n do not
    /// separate the elements of a.
    auto dualize(const FiniteAlgebra & a, std::size_t n) -> DualSpace;

    /// Which pieces of the alter ego a structure-preserving map has to
    /// respect: relations[m] for S_{m,m}, links[i-1] for h_{i,i-1}.
    struct Retained
    {
        std::vector<bool> relations, links;

        static auto all(std::size_t n) -> Retained;
    };

    /// Every map x -> alter_ego(x.n()) respecting the retained structure, in
    /// lexicographic order of the flattened values. Throws SizeOverflow when
    /// there are more than limits.max_elements of them.
    auto enumerate_morphisms(const MultisortedSpace & x, const Retained & keep, const Limits & limits = default_limits())
        -> std::vector<SortedMap>;

    /// Number of such maps, without storing them.
    auto count_morphisms(const MultisortedSpace & x, const Retained & keep) -> std::uint64_t;

    /// An algebra of structure-preserving maps with pointwise operations.
    /// Element i of `algebra` is maps[i].
    struct Evaluated
    {
        FiniteAlgebra algebra;
        std::vector<SortedMap> maps;

        auto index_of(const SortedMap & m) const -> std::optional<Element>;
    };

    /// E(x). Throws InvalidDualObject if x fails check_dual_object and
    /// SizeOverflow if the algebra is too large to tabulate.
    auto evaluate(const MultisortedSpace & x, const Limits & limits = default_limits()) -> Evaluated;

    /// The evaluation map a -> E(D(a)), c -> (x -> x(c)).
    struct EvaluationMap
    {
        DualSpace dual;
        Evaluated evaluated;
        std::vector<Element> table;
        bool homomorphism = false;
        bool bijective = false;

        auto is_isomorphism() const -> bool { return homomorphism && bijective; }
    };

    auto evaluation_map(const FiniteAlgebra & a, std::size_t n, const Limits & limits = default_limits())
        -> EvaluationMap;

    /// The counit x -> D(E(x)) sending a point p of sort m to the
    /// homomorphism f -> f_m(p). True iff it is an isomorphism of
    /// multisorted structures.
    auto counit_check(const MultisortedSpace & x, const Limits & limits = default_limits()) -> bool;

    /// D(f) for a homomorphism f : a -> b: per sort, the map y -> y . f
    /// from D(b) to D(a), as indices into the sorts of da.
    auto dual_morphism(const std::vector<Element> & f, const DualSpace & da, const DualSpace & db)
        -> std::vector<std::vector<std::size_t>>;

    /// Sort-wise k-th power: sort m is K_m^k with pointwise S_{m,m} and
    /// pointwise links.
    auto alter_ego_power(std::size_t n, std::size_t k, const Limits & limits = default_limits()) -> MultisortedSpace;

    /// The free algebra on k generators in V_n, as E of the k-th power.
    auto free_algebra(std::size_t n, std::size_t k, const Limits & limits = default_limits()) -> Evaluated;

    /// Its size from the up-sets of the Priestley reconstruction.
    auto free_algebra_count(std::size_t n, std::size_t k, const Limits & limits = default_limits()) -> std::uint64_t;

    /// Its size by counting structure-preserving maps.
    auto free_algebra_count_by_maps(std::size_t n, std::size_t k, const Limits & limits = default_limits())
        -> std::uint64_t;

    /// 36 ((2^6)^(n+1) - 1) / 63.
    auto free_algebra_lower_bound(std::size_t n) -> std::uint64_t;

    /// The ordered set on two copies (t then f) of every sort, level by
    /// level from sort 0. Within a copy the order is that of the sort; a
    /// point of a lower level lies below a point y of a higher level when it
    /// is the image of y under the composite link. The result is
    /// transitively closed. Throws InvalidDualObject for invalid input and
    /// ClosureFailure if the result is not a partial order or relates the
    /// two copies of a level.
    auto priestley_reconstruction(const MultisortedSpace & x) -> Poset;

    /// omega_j^t(a) = 1 iff a >=_k t_j in K_j, omega_j^f likewise with f_j.
    auto omega(std::size_t j, bool t, Element a) -> bool;

    struct SeparationWitness
    {
        std::size_t m;
        Element a, b;
        std::size_t j;
        bool t;
    };

    struct SeparationReport
    {
        bool separated = true;
        std::vector<SeparationWitness> witnesses;
    };

    /// For every m <= n and a != b in K_m, the first j <= m and omega_j^t or
    /// omega_j^f telling h_{m,j}(a) from h_{m,j}(b).
    auto separation_check(std::size_t n) -> SeparationReport;

    /// The maximal subalgebras of K_j x K_m contained in
    /// {(a, b) : omega(a) <= omega'(b)}, as subsets of product({K_j, K_m}).
    auto maximal_relations(std::size_t j, bool omega_t, std::size_t m, bool omega_prime_t) -> std::vector<Subset>;

    enum class DropKind
    {
        relation,
        link
    };

    /// S_{m,m} or h_{m,m-1} removed from the alter ego.
    struct Drop
    {
        DropKind kind;
        std::size_t m;
    };

    /// Maps D(a) -> alter ego respecting the retained structure that are not
    /// evaluations at any element of a.
    auto non_evaluation_maps(const FiniteAlgebra & a, std::size_t n, const Retained & keep) -> std::vector<SortedMap>;

    struct OptimalityWitness
    {
        FiniteAlgebra test_algebra;
        DualSpace dual;
        std::vector<SortedMap> non_evaluations;
        /// gamma_m (relation drops) or mu_m (link drops) on this dual.
        SortedMap construction;
        bool construction_found = false;
    };

    /// Test algebra S_{m,m} for relation drops, K_m for link drops. Throws
    /// BadIndices for m > n or a link drop at m = 0, and NoWitness if every
    /// retained-structure map is an evaluation.
    auto optimality_witness(std::size_t n, Drop drop) -> OptimalityWitness;

    /// A single-sorted structure for the quasivariety duality: relations[i]
    /// is the i-th quasi-order, all on the same set.
    struct QuasiSpace
    {
        std::vector<QuasiOrder> relations;

        auto size() const -> std::size_t { return relations.empty() ? 0 : relations[0].size(); }
    };

    /// K_n with S_{n,n}, S_{n,n-1}, ..., S_{n,0}.
    auto quasivariety_alter_ego(std::size_t n) -> QuasiSpace;

    struct QuasiDual
    {
        QuasiSpace space;
        std::vector<std::vector<Element>> homs;
    };

    /// Throws NotInQuasivariety if homs(a, K_n) do not separate points.
    auto quasivariety_dualize(const FiniteAlgebra & a, std::size_t n) -> QuasiDual;

    /// Maps x -> K_n preserving every relation, as one-sort SortedMaps.
    auto quasivariety_evaluate(const QuasiSpace & x, const Limits & limits = default_limits()) -> Evaluated;

    struct QuasiEvaluationMap
    {
        QuasiDual dual;
        Evaluated evaluated;
        std::vector<Element> table;
        bool homomorphism = false;
        bool bijective = false;

        auto is_isomorphism() const -> bool { return homomorphism && bijective; }
    };

    auto quasivariety_evaluation_map(const FiniteAlgebra & a, std::size_t n, const Limits & limits = default_limits())
        -> QuasiEvaluationMap;

    /// Finite membership test for the quasivariety dual category: condition
    /// 1 when the first relation is not a partial order, 2 when some
    /// relation fails to extend it, 3 when the relations are not nested,
    /// 4 when the converse of an earlier relation escapes a later one.
    auto check_quasi_dual_object(const QuasiSpace & x) -> DualObjectVerdict;
}
