#include <kndual/error.hh>
#include <kndual/limits.hh>

#include <cstdlib>
#include <string>

namespace kndual
{
    auto default_limits() -> Limits
    {
        Limits result;
        if (const char * env = std::getenv("KNDUAL_MAX_ELEMENTS")) {
            char * end = nullptr;
            auto value = std::strtoull(env, &end, 10);
            if (end != env && *end == '\0' && value > 0)
                result.max_elements = value;
        }
        return result;
    }

    auto check_size(std::size_t count, std::size_t bound, const char * what) -> void
    {
        if (count > bound)
            throw SizeOverflow(std::string(what) + " has " + std::to_string(count) + " elements, limit is " + std::to_string(bound));
    }
}
