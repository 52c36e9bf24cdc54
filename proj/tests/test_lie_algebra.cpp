#include "malcev/free_lie.hpp"
#include "malcev/lie_algebra.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace malcev;
using namespace testing_support;

namespace {

// Heisenberg automorphism for A in GL2: (v, w) -> (Av, det(A) w)
Matrix heisenberg_action(long a, long b, long c, long d)
{
    return imat(3, 3, {a, b, 0, c, d, 0, 0, 0, a * d - b * c});
}

LieAlgebra random_nilpotent(std::mt19937 &rng, std::size_t generators, std::size_t cls)
{
    // random basis change of a free nilpotent algebra modulo nothing
    LieAlgebra f = free_nilpotent(generators, cls);
    return change_basis(f, random_unimodular(rng, f.dim()));
}

} // namespace

TEST(Jacobi, Examples)
{
    EXPECT_TRUE(check_jacobi(abelian_algebra(4)).empty());
    EXPECT_TRUE(check_jacobi(heisenberg_algebra()).empty());

    BracketTable t(2);
    for (auto &e : t.entries)
        e = zero_vector(2);
    t.at(0, 1) = ivec({1, 0});
    t.at(1, 0) = ivec({1, 0}); // should be -x
    EXPECT_FALSE(check_jacobi(t).empty());
    EXPECT_FALSE(to_lie_algebra(t));

    t.at(1, 0) = ivec({-1, 0});
    EXPECT_TRUE(check_jacobi(t).empty());
    auto L = to_lie_algebra(t);
    ASSERT_TRUE(L);
    EXPECT_EQ(L->basis_bracket(0, 1), ivec({1, 0}));
}

TEST(Jacobi, DetectsBrokenStructureConstants)
{
    LieAlgebra L(3);
    L.set_bracket(0, 1, ivec({0, 0, 1}));
    L.set_bracket(0, 2, ivec({1, 0, 0}));
    // [e0,[e1,e2]] + ... with [e1,e2] = 0: [[e0,e1],e2] = 0, [[e2,e0],e1] = [-e0,e1] = -e2
    EXPECT_FALSE(check_jacobi(L).empty());
}

TEST(Bracket, HeisenbergAndBilinearity)
{
    LieAlgebra h = heisenberg_algebra();
    EXPECT_EQ(h.bracket(unit_vector(3, 0), unit_vector(3, 1)), unit_vector(3, 2));
    EXPECT_EQ(h.bracket(unit_vector(3, 1), unit_vector(3, 0)), negate(unit_vector(3, 2)));
    std::mt19937 rng(1);
    LieAlgebra f = free_nilpotent(2, 4);
    for (int t = 0; t < 50; ++t) {
        Vector x = random_vector(rng, f.dim()), y = random_vector(rng, f.dim()),
               z = random_vector(rng, f.dim());
        EXPECT_TRUE(is_zero(f.bracket(x, x)));
        // term-by-term expansion
        Vector expanded = zero_vector(f.dim());
        for (std::size_t i = 0; i < f.dim(); ++i)
            for (std::size_t j = 0; j < f.dim(); ++j)
                if (x[i] != 0 && y[j] != 0)
                    axpy(expanded, x[i] * y[j], f.basis_bracket(i, j));
        EXPECT_EQ(f.bracket(x, y), expanded);
        Vector jac = add(add(f.bracket(x, f.bracket(y, z)), f.bracket(y, f.bracket(z, x))),
                         f.bracket(z, f.bracket(x, y)));
        EXPECT_TRUE(is_zero(jac));
    }
    EXPECT_THROW(h.bracket(unit_vector(2, 0), unit_vector(3, 0)), Error);
}

TEST(LowerCentralSeries, Examples)
{
    EXPECT_EQ(lcs_dims(heisenberg_algebra()), (std::vector<std::size_t>{3, 1, 0}));
    EXPECT_EQ(lcs_dims(abelian_algebra(4)), (std::vector<std::size_t>{4, 0}));
    EXPECT_EQ(lcs_dims(free_nilpotent(2, 3)), (std::vector<std::size_t>{5, 3, 2, 0}));
    EXPECT_EQ(nilpotency_class(heisenberg_algebra()), 2u);
    EXPECT_EQ(nilpotency_class(abelian_algebra(3)), 1u);
    for (std::size_t c = 1; c <= 5; ++c)
        EXPECT_EQ(nilpotency_class(free_nilpotent(2, c)), c);

    LieAlgebra affine(2); // [x,y] = x, not nilpotent
    affine.set_bracket(0, 1, ivec({1, 0}));
    EXPECT_FALSE(is_nilpotent(affine));
    EXPECT_THROW(lower_central_series(affine), Error);
    EXPECT_THROW(associated_graded(affine), Error);
}

TEST(LowerCentralSeries, DescendingIdeals)
{
    std::mt19937 rng(2);
    for (int t = 0; t < 5; ++t) {
        LieAlgebra L = random_nilpotent(rng, 2 + t % 2, 3);
        auto lcs = lower_central_series(L);
        for (std::size_t n = 0; n + 1 < lcs.size(); ++n) {
            EXPECT_TRUE(is_ideal(L, lcs[n].span));
            EXPECT_TRUE(lcs[n].span.contains(lcs[n + 1].span));
            Subspace all(L.dim());
            for (std::size_t i = 0; i < L.dim(); ++i)
                all.insert(unit_vector(L.dim(), i));
            EXPECT_TRUE(lcs[n + 1].span.contains(bracket_span(L, all, lcs[n].span)));
        }
    }
}

TEST(AssociatedGraded, Heisenberg)
{
    auto gr = associated_graded(heisenberg_algebra());
    EXPECT_EQ(gr.graded.degree_dims, (std::vector<std::size_t>{2, 1}));
    const LieAlgebra &g = gr.graded.algebra;
    EXPECT_TRUE(grading_is_additive(g));
    Vector w = g.basis_bracket(0, 1);
    EXPECT_TRUE(is_zero(std::span<const Scalar>(w).first(2)));
    EXPECT_NE(w[2], 0);
    EXPECT_EQ(gr.lift * gr.lift_inverse, Matrix::identity(3));

    auto ab = associated_graded(abelian_algebra(3));
    EXPECT_EQ(ab.graded.degree_dims, (std::vector<std::size_t>{3}));
    EXPECT_TRUE(ab.graded.algebra.is_abelian());
}

TEST(AssociatedGraded, PreservesDimensionAndGradedCase)
{
    std::mt19937 rng(4);
    for (int t = 0; t < 6; ++t) {
        LieAlgebra L = random_nilpotent(rng, 2 + t % 2, 2 + t % 3);
        auto gr = associated_graded(L);
        std::size_t total = 0;
        for (auto d : gr.graded.degree_dims)
            total += d;
        EXPECT_EQ(total, L.dim());
        auto dims = lcs_dims(L);
        for (std::size_t n = 0; n < gr.graded.degree_dims.size(); ++n)
            EXPECT_EQ(gr.graded.degree_dims[n], dims[n] - dims[n + 1]);
        EXPECT_TRUE(check_jacobi(gr.graded.algebra).empty());
        EXPECT_TRUE(grading_is_additive(gr.graded.algebra));
    }
    // an already graded algebra: gr F is isomorphic to F through the lift
    LieAlgebra f = free_nilpotent(2, 4);
    auto gr = associated_graded(f);
    EXPECT_EQ(gr.graded.degree_dims, (std::vector<std::size_t>{2, 1, 2, 3}));
    EXPECT_TRUE(is_homomorphism(gr.graded.algebra, f, gr.lift));
}

TEST(DirectSum, Examples)
{
    EXPECT_TRUE(direct_sum(abelian_algebra(2), abelian_algebra(3)).is_abelian());
    LieAlgebra s = direct_sum(heisenberg_algebra(), abelian_algebra(1));
    EXPECT_EQ(lcs_dims(s), (std::vector<std::size_t>{4, 1, 0}));
    EXPECT_TRUE(is_zero(s.basis_bracket(0, 3)));

    std::mt19937 rng(6);
    for (int t = 0; t < 4; ++t) {
        LieAlgebra a = random_nilpotent(rng, 2, 2 + t % 2);
        LieAlgebra b = random_nilpotent(rng, 2 + t % 2, 2);
        auto grs = associated_graded(direct_sum(a, b)).graded;
        auto ga = associated_graded(a).graded, gb = associated_graded(b).graded;
        for (std::size_t n = 1; n <= grs.top_degree(); ++n)
            EXPECT_EQ(grs.dim_in(n),
                      (n <= ga.top_degree() ? ga.dim_in(n) : 0) +
                          (n <= gb.top_degree() ? gb.dim_in(n) : 0));
        auto da = lcs_dims(a), db = lcs_dims(b), ds = lcs_dims(direct_sum(a, b));
        for (std::size_t n = 0; n < ds.size(); ++n)
            EXPECT_EQ(ds[n], (n < da.size() ? da[n] : 0) + (n < db.size() ? db[n] : 0));
    }
}

TEST(Automorphism, Heisenberg)
{
    LieAlgebra h = heisenberg_algebra();
    EXPECT_TRUE(check_automorphism(h, Matrix::identity(3)));
    EXPECT_TRUE(check_automorphism(h, heisenberg_action(2, 3, 1, 2)));
    EXPECT_TRUE(check_automorphism(h, heisenberg_action(0, -1, 1, 0)));
    Matrix scaled = imat(3, 3, {2, 0, 0, 0, 1, 0, 0, 0, 1});
    EXPECT_FALSE(check_automorphism(h, scaled));
    EXPECT_FALSE(check_automorphism(h, Matrix(3, 3)));
    EXPECT_THROW(check_automorphism(h, Matrix::identity(2)), Error);
}

TEST(Automorphism, PreservesLowerCentralSeries)
{
    LieAlgebra h = heisenberg_algebra();
    std::vector<Matrix> auts = {heisenberg_action(2, 3, 1, 2), heisenberg_action(1, 1, 0, 1),
                                heisenberg_action(5, 2, 2, 1)};
    auto lcs = lower_central_series(h);
    for (const auto &m : auts) {
        ASSERT_TRUE(check_automorphism(h, m));
        for (const auto &g : lcs) {
            std::vector<Vector> image;
            for (const auto &v : g.span.basis())
                image.push_back(m * v);
            Subspace img(3, image);
            EXPECT_TRUE(g.span.contains(img));
            EXPECT_EQ(img.dim(), g.dim());
        }
    }
}

TEST(ChangeBasis, IsIsomorphism)
{
    std::mt19937 rng(8);
    LieAlgebra f = free_nilpotent(3, 3);
    Matrix p = random_unimodular(rng, f.dim());
    LieAlgebra g = change_basis(f, p);
    // p maps new coordinates to old ones
    EXPECT_TRUE(is_homomorphism(g, f, p));
    EXPECT_TRUE(check_jacobi(g).empty());
    EXPECT_EQ(lcs_dims(g), lcs_dims(f));
}

TEST(FreeNilpotent, IsHeisenbergAtClassTwo)
{
    LieAlgebra f = free_nilpotent(2, 2);
    EXPECT_EQ(f.dim(), 3u);
    EXPECT_TRUE(is_homomorphism(heisenberg_algebra(), f, Matrix::identity(3)));
}
