// One line per acceptance criterion; failing checks are listed underneath.

#include <chrono>
#include <cstdio>
#include <string>

#include "qgeom/verify.hpp"

int main()
{
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    bool all = true;
    for (int k = 1; k <= 14; ++k) {
        const auto t0 = clock::now();
        const auto checks = qgeom::run_criterion(k);
        const double secs = std::chrono::duration<double>(clock::now() - t0).count();
        bool ok = !checks.empty();
        for (const auto& c : checks) ok = ok && c.pass;
        all = all && ok;
        std::printf("criterion %2d: %s  (%zu checks, %.1f s)\n", k, ok ? "PASS" : "FAIL", checks.size(), secs);
        for (const auto& c : checks)
            if (!c.pass) std::printf("    %s\n", qgeom::format_check(c).c_str());
    }
    std::printf("total %.1f s\n", std::chrono::duration<double>(clock::now() - start).count());
    return all ? 0 : 1;
}
