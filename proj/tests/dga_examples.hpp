#pragma once

#include "malcev/cochain.hpp"
#include "support.hpp"

namespace testing_support {

// exterior algebra on two degree-1 generators a, b with d = 0
inline malcev::FiniteDGA torus_algebra()
{
    malcev::FiniteDGA A = malcev::FiniteDGA::with_dims({1, 2, 1});
    A.set(0, 0, 0, 0, ivec({1}));
    A.set(0, 0, 1, 0, ivec({1, 0}));
    A.set(0, 0, 1, 1, ivec({0, 1}));
    A.set(0, 0, 2, 0, ivec({1}));
    A.set(1, 0, 1, 1, ivec({1}));
    return A;
}

// 1 in degree 0, t in degree 1, s = dt in degree 2, all products of t, s zero
inline malcev::FiniteDGA acyclic_cone()
{
    malcev::FiniteDGA C = malcev::FiniteDGA::with_dims({1, 1, 1});
    C.d[1](0, 0) = 1;
    C.set(0, 0, 0, 0, ivec({1}));
    C.set(0, 0, 1, 0, ivec({1}));
    C.set(0, 0, 2, 0, ivec({1}));
    return C;
}

// the point: Q in degree 0
inline malcev::FiniteDGA point_algebra()
{
    malcev::FiniteDGA P = malcev::FiniteDGA::with_dims({1});
    P.set(0, 0, 0, 0, ivec({1}));
    return P;
}

// A with zero-dimensional degrees appended up to `top`
inline malcev::FiniteDGA padded(const malcev::FiniteDGA &A, std::size_t top)
{
    std::vector<std::size_t> dims = A.dims;
    dims.resize(std::max(dims.size(), top + 1), 0);
    malcev::FiniteDGA P = malcev::FiniteDGA::with_dims(dims);
    for (std::size_t n = 0; n < A.d.size(); ++n)
        P.d[n] = A.d[n];
    for (std::size_t p = 0; p <= A.top_degree(); ++p)
        for (std::size_t q = 0; p + q <= A.top_degree(); ++q)
            P.table[p][q] = A.table[p][q];
    return P;
}

// Q[t]/(t^2) in degree 0 and dt in degree 1, t dt = 0, nothing in degree 2
inline malcev::FiniteDGA dual_numbers_dga()
{
    malcev::FiniteDGA A = malcev::FiniteDGA::with_dims({2, 1, 0});
    A.d[0](0, 1) = 1;
    A.set(0, 0, 0, 0, ivec({1, 0}));
    A.set(0, 0, 0, 1, ivec({0, 1}));
    A.set(0, 0, 1, 0, ivec({1}));
    return A;
}

} // namespace testing_support
