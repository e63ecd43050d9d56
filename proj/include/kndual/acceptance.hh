#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kndual
{
    struct CriterionResult
    {
        int id = 0;
        std::string name;
        bool passed = false;
        std::string detail;
        double seconds = 0;
    };

    /// `max_n` can push the n-ranges of the scalable checks beyond their
    /// required minimum; it never shrinks them. `seed` drives the random
    /// subalgebras and random posets.
    struct AcceptanceOptions
    {
        std::size_t max_n = 2;
        std::uint32_t seed = 20240611;
    };

    inline constexpr int criterion_count = 12;

    auto criterion_name(int id) -> std::string;

    /// Runs one criterion. Exceptions from the library are caught and
    /// reported as failures.
    auto run_criterion(int id, const AcceptanceOptions & options = {}) -> CriterionResult;

    auto run_acceptance(const AcceptanceOptions & options = {}) -> std::vector<CriterionResult>;

    /// One line per criterion: "PASS|FAIL  <id>. <name> (<seconds>s): <detail>".
    auto format_result(const CriterionResult & r) -> std::string;
}
