#include <kndual/acceptance.hh>

#include <cstdio>

int main()
{
    bool all = true;
    for (int id = 1; id <= kndual::criterion_count; ++id) {
        auto r = kndual::run_criterion(id);
        std::printf("%s\n", kndual::format_result(r).c_str());
        std::fflush(stdout);
        all = all && r.passed;
    }
    return all ? 0 : 1;
}
