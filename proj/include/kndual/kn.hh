#pragma once

#include <kndual/algebra.hh>
#include <kndual/poset.hh>

#include <optional>
#include <string>
#include <vector>

namespace kndual
{
    /// Element kinds of K_n.
    enum class Kind
    {
        f,
        t,
        top
    };

    /// Canonical index of f_level, t_level or top_level in K_n: f_0..f_n,
    /// then t_0..t_n, then top_0..top_{n+1}. Throws BadIndices if the element
    /// does not exist in K_n.
    auto kn_index(std::size_t n, Kind kind, std::size_t level) -> Element;

    struct KnElement
    {
        Kind kind;
        std::size_t level;
    };

    auto kn_element(std::size_t n, Element index) -> KnElement;

    /// Printable name: "f0", "t0", "T0", ...
    auto kn_name(Kind kind, std::size_t level) -> std::string;

    /// The knowledge order of K_n, built from its cover relations.
    auto kn_knowledge_order(std::size_t n) -> Poset;

    /// The truth order of K_n, built from its generating comparabilities.
    auto kn_truth_order(std::size_t n) -> Poset;

    struct KnAlgebra
    {
        std::size_t n = 0;
        FiniteAlgebra algebra;

        auto index(Kind kind, std::size_t level) const -> Element { return kn_index(n, kind, level); }
        auto f(std::size_t i) const -> Element { return index(Kind::f, i); }
        auto t(std::size_t i) const -> Element { return index(Kind::t, i); }
        auto top(std::size_t i) const -> Element { return index(Kind::top, i); }
    };

    /// K_n with tables derived from its two orders. Both orders are checked to
    /// be lattice orders and the resulting algebra is validated.
    auto build_kn(std::size_t n) -> KnAlgebra;

    /// h_{n,m}: a -> top_{m+1} if a <=_k top_{m+1}, else the element of K_m
    /// with the same name. Throws BadIndices if m > n.
    auto h_nm(std::size_t n, std::size_t m) -> std::vector<Element>;

    /// S_{n,m} as a quasi-order on K_n. Throws BadIndices if m > n.
    auto s_nm(std::size_t n, std::size_t m) -> QuasiOrder;

    /// The set of pairs of a quasi-order on K_n as a subset of K_n^2, indexed
    /// as in product({K_n, K_n}).
    auto relation_subset(const QuasiOrder & r) -> Subset;

    /// S_{n,m} viewed as a subalgebra of K_n^2.
    auto s_nm_algebra(std::size_t n, std::size_t m) -> FiniteAlgebra;

    /// The verdict of the interlacing scan, with the first witness on failure.
    struct InterlacingVerdict
    {
        bool interlaced = true;
        std::optional<InterlacingFailure> witness;
        std::vector<InterlacingFailure> all_failures;
    };

    auto check_interlaced(const FiniteAlgebra & a) -> InterlacingVerdict;

    /// Checks t_m = top_m v top_{n+1}, f_m = top_m ^ top_{n+1} and
    /// top_{m+1} = (top_m v top_{n+1}) (x) (top_m ^ top_{n+1}) for all m <= n.
    auto check_term_definability(const KnAlgebra & k) -> bool;
}
