#pragma once

#include "malcev/free_lie.hpp"
#include "oracle/assoc_oracle.hpp"

#include <initializer_list>
#include <random>
#include <string>

namespace testing_support {

using malcev::Scalar;
using malcev::Vector;

inline Vector vec(std::initializer_list<const char *> xs)
{
    Vector v;
    for (const char *x : xs)
        v.push_back(malcev::parse_scalar(x));
    return v;
}

inline Vector ivec(std::initializer_list<long> xs)
{
    Vector v;
    for (long x : xs)
        v.emplace_back(x);
    return v;
}

inline malcev::Matrix imat(std::size_t rows, std::size_t cols, std::initializer_list<long> xs)
{
    std::vector<Scalar> e;
    for (long x : xs)
        e.emplace_back(x);
    return malcev::Matrix(rows, cols, std::move(e));
}

inline Scalar small_rational(std::mt19937 &rng, int range = 3)
{
    std::uniform_int_distribution<int> num(-range, range), den(1, 2);
    return malcev::ratio(num(rng), den(rng));
}

inline Vector random_vector(std::mt19937 &rng, std::size_t n, int range = 3)
{
    Vector v;
    for (std::size_t i = 0; i < n; ++i)
        v.push_back(small_rational(rng, range));
    return v;
}

inline malcev::Matrix random_matrix(std::mt19937 &rng, std::size_t r, std::size_t c, int range = 2)
{
    std::uniform_int_distribution<int> d(-range, range);
    malcev::Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = d(rng);
    return m;
}

/// Random invertible integer matrix: product of elementary operations.
inline malcev::Matrix random_unimodular(std::mt19937 &rng, std::size_t n, int steps = 12)
{
    malcev::Matrix m = malcev::Matrix::identity(n);
    if (n < 2)
        return m;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int s = 0; s < steps; ++s) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j)
            continue;
        const Scalar c = coef(rng);
        for (std::size_t k = 0; k < n; ++k)
            m(i, k) += c * m(j, k);
    }
    return m;
}

/// Oracle image of a Hall-coordinate element: uses only the word trees.
inline oracle::Assoc::Poly to_oracle(const oracle::Assoc &env, const malcev::HallBasis &hall,
                                     const malcev::FreeLieElement &x)
{
    std::vector<oracle::Assoc::Poly> memo(hall.size());
    std::vector<bool> done(hall.size(), false);
    auto image = [&](auto &&self, std::size_t i) -> const oracle::Assoc::Poly & {
        if (!done[i]) {
            const auto &w = hall.word(i);
            memo[i] = w.is_letter() ? env.letter(w.generator)
                                    : env.comm(self(self, w.left), self(self, w.right));
            done[i] = true;
        }
        return memo[i];
    };
    oracle::Assoc::Poly r;
    for (const auto &[i, c] : x.coords)
        r = env.plus(r, image(image, i), c);
    return r;
}

inline oracle::Assoc::Poly expr_to_oracle(const oracle::Assoc &env, const malcev::BracketExpr &e)
{
    if (e.is_letter())
        return env.letter(e.generator);
    return env.comm(expr_to_oracle(env, e.children[0]), expr_to_oracle(env, e.children[1]));
}

inline malcev::BracketExpr X(int g) { return malcev::BracketExpr::letter(g); }
inline malcev::BracketExpr B(malcev::BracketExpr a, malcev::BracketExpr b)
{
    return malcev::BracketExpr::bracket(std::move(a), std::move(b));
}

} // namespace testing_support
