#pragma once

// Witt's dimension formula (1/n) sum_{d | n} mu(d) k^{n/d}, computed with
// plain integers and nothing from the library.

#include <cstdint>
#include <vector>

namespace oracle {

inline int mobius(int n)
{
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p)
            continue;
        n /= p;
        if (n % p == 0)
            return 0;
        result = -result;
    }
    if (n > 1)
        result = -result;
    return result;
}

inline std::int64_t ipow(std::int64_t b, int e)
{
    std::int64_t r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

inline std::int64_t witt_dimension(int k, int n)
{
    std::int64_t sum = 0;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0)
            sum += mobius(d) * ipow(k, n / d);
    return sum / n;
}

inline std::vector<std::int64_t> witt_dimensions(int k, int max_degree)
{
    std::vector<std::int64_t> out;
    for (int n = 1; n <= max_degree; ++n)
        out.push_back(witt_dimension(k, n));
    return out;
}

} // namespace oracle
