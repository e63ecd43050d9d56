#pragma once

#include <cstddef>

namespace kndual
{
    /// Size guards for constructions that can blow up combinatorially.
    ///
    /// `max_elements` bounds any enumerated universe (products, hom-sets,
    /// structure-preserving maps, sequence products). `max_table_elements`
    /// bounds algebras whose full operation tables get materialised, since
    /// those cost four N^2 tables.
    struct Limits
    {
        std::size_t max_elements = 10000;
        std::size_t max_table_elements = 2500;
    };

    /// Defaults, with `max_elements` overridden by the KNDUAL_MAX_ELEMENTS
    /// environment variable when it parses as a positive integer.
    auto default_limits() -> Limits;

    /// Throws SizeOverflow naming `what` if `count` exceeds `bound`.
    auto check_size(std::size_t count, std::size_t bound, const char * what) -> void;
}
