#pragma once

#include <kndual/algebra.hh>
#include <kndual/lattice.hh>
#include <kndual/poset.hh>

#include <string>

namespace kndual
{
    /// Hasse diagram as a DOT digraph with edges from lower to upper covers,
    /// drawn bottom to top. Unlabelled elements show their index.
    auto hasse_dot(const Poset & p, const std::string & name = "order") -> std::string;

    /// A quasi-order: covers of the strict part between equivalence
    /// classes, with each class drawn as a dashed undirected path.
    auto quasi_order_dot(const QuasiOrder & q, const std::string & name = "quasi_order") -> std::string;

    auto lattice_dot(const DistLattice & l, const std::string & name = "lattice") -> std::string;

    /// The knowledge order (vertical) and truth order (horizontal) of a
    /// bilattice as two separate graphs, labelled with element names.
    auto bilattice_dot(const FiniteAlgebra & a, const std::string & name = "bilattice") -> std::string;
}
