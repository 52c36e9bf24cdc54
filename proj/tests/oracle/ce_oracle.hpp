#pragma once

// Chevalley-Eilenberg differential by direct evaluation of alternating forms:
// (d w)(x_0..x_k) = sum_{i<j} (-1)^{i+j} w([x_i,x_j], x_0..^i..^j..x_k).
// A k-form is stored by its values on increasing basis tuples, which are its
// coefficients in the wedge basis. Only the bracket table is shared with the
// library.

#include <gmpxx.h>

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

namespace oracle {

using Table = std::function<std::vector<mpq_class>(std::size_t, std::size_t)>; // [e_i, e_j]

inline std::vector<std::vector<std::size_t>> increasing_tuples(std::size_t n, std::size_t k)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(std::min(k, n)), true);
    if (k > n)
        return out;
    do {
        std::vector<std::size_t> t;
        for (std::size_t i = 0; i < n; ++i)
            if (pick[i])
                t.push_back(i);
        out.push_back(t);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

/// Value of the basis form dual to `form_tuple` on basis vectors `args`
/// (any order, repeats allowed).
inline mpq_class basis_form_value(const std::vector<std::size_t> &form_tuple, std::vector<std::size_t> args)
{
    if (args.size() != form_tuple.size())
        return 0;
    int sign = 1;
    for (std::size_t i = 0; i < args.size(); ++i)
        for (std::size_t j = i + 1; j < args.size(); ++j) {
            if (args[i] == args[j])
                return 0;
            if (args[i] > args[j])
                sign = -sign;
        }
    std::sort(args.begin(), args.end());
    return args == form_tuple ? mpq_class(sign) : mpq_class(0);
}

/// Matrix of d: k-forms -> (k+1)-forms, rows and columns indexed by
/// increasing tuples in lexicographic order; entry (row, col).
inline std::vector<std::vector<mpq_class>> ce_differential(std::size_t n, std::size_t k, const Table &bracket)
{
    const auto src = increasing_tuples(n, k), dst = increasing_tuples(n, k + 1);
    std::vector<std::vector<mpq_class>> m(dst.size(), std::vector<mpq_class>(src.size()));
    for (std::size_t c = 0; c < src.size(); ++c)
        for (std::size_t r = 0; r < dst.size(); ++r) {
            const auto &x = dst[r];
            mpq_class total = 0;
            for (std::size_t i = 0; i < x.size(); ++i)
                for (std::size_t j = i + 1; j < x.size(); ++j) {
                    std::vector<std::size_t> rest;
                    for (std::size_t t = 0; t < x.size(); ++t)
                        if (t != i && t != j)
                            rest.push_back(x[t]);
                    const auto b = bracket(x[i], x[j]);
                    mpq_class v = 0;
                    for (std::size_t l = 0; l < b.size(); ++l)
                        if (b[l] != 0) {
                            std::vector<std::size_t> args{l};
                            args.insert(args.end(), rest.begin(), rest.end());
                            v += b[l] * basis_form_value(src[c], args);
                        }
                    total += ((i + j) % 2 ? -1 : 1) * v;
                }
            m[r][c] = total;
        }
    return m;
}

} // namespace oracle
