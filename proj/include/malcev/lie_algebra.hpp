#pragma once

// Finite-dimensional Lie algebras over Q given by structure constants.

#include "malcev/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace malcev {

struct Term {
    std::size_t index;
    Scalar coeff;
};
using SparseVector = std::vector<Term>;

SparseVector to_sparse(std::span<const Scalar> v);
Vector to_dense(const SparseVector &v, std::size_t n);

/// Structure constants are stored for basis pairs i < j only, so antisymmetry
/// holds by construction; Jacobi is checked by check_jacobi().
class LieAlgebra {
  public:
    LieAlgebra() = default;
    explicit LieAlgebra(std::size_t dim, std::vector<std::string> names = {});

    std::size_t dim() const { return dim_; }
    const std::vector<std::string> &names() const { return names_; }
    const std::optional<std::vector<int>> &grading() const { return grading_; }

    /// Sets [e_i, e_j]; i > j stores the negated value, i == j must be zero.
    void set_bracket(std::size_t i, std::size_t j, std::span<const Scalar> value);
    void set_grading(std::vector<int> weights);
    void clear_grading() { grading_.reset(); }

    Vector basis_bracket(std::size_t i, std::size_t j) const;
    const SparseVector &stored_bracket(std::size_t i, std::size_t j) const; // i < j
    Vector bracket(std::span<const Scalar> x, std::span<const Scalar> y) const;
    bool is_abelian() const;

    friend bool operator==(const LieAlgebra &a, const LieAlgebra &b);

  private:
    std::size_t pair_index(std::size_t i, std::size_t j) const;

    std::size_t dim_ = 0;
    std::vector<std::string> names_;
    std::vector<SparseVector> table_; // (i<j) pairs, row-major upper triangle
    std::optional<std::vector<int>> grading_;
};

/// Arbitrary bilinear table [e_i, e_j] for all ordered pairs, used to vet raw
/// input before it is trusted as a Lie algebra.
struct BracketTable {
    std::size_t dim = 0;
    std::vector<Vector> entries; // dim * dim, index i * dim + j

    explicit BracketTable(std::size_t n = 0);
    Vector &at(std::size_t i, std::size_t j) { return entries[i * dim + j]; }
    const Vector &at(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }
    Vector bracket(std::span<const Scalar> x, std::span<const Scalar> y) const;
};

struct JacobiViolation {
    std::size_t i, j, k;
    Vector defect; // [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]
};

std::vector<JacobiViolation> check_jacobi(const LieAlgebra &L);
std::vector<JacobiViolation> check_jacobi(const BracketTable &table);
/// Antisymmetric tables become a LieAlgebra; anything else is rejected.
std::optional<LieAlgebra> to_lie_algebra(const BracketTable &table,
                                         std::vector<std::string> names = {});

/// An ideal (or any subspace) in the parent's coordinates.
struct LieIdeal {
    Subspace span;
    std::size_t dim() const { return span.dim(); }
};

bool is_ideal(const LieAlgebra &L, const Subspace &s);
/// span{[x, y] : x in a, y in b}
Subspace bracket_span(const LieAlgebra &L, const Subspace &a, const Subspace &b);

/// Gamma_1 = L, Gamma_{n+1} = [L, Gamma_n], ending with the zero ideal.
/// Throws Error if the series stalls at a nonzero term (not nilpotent).
std::vector<LieIdeal> lower_central_series(const LieAlgebra &L);
std::vector<std::size_t> lcs_dims(const LieAlgebra &L);
bool is_nilpotent(const LieAlgebra &L);
std::size_t nilpotency_class(const LieAlgebra &L);

/// Graded Lie algebra: basis ordered by degree 1, 2, ..., with degree_dims[n-1]
/// vectors in degree n and brackets additive in degree.
struct GradedLieAlgebra {
    LieAlgebra algebra;
    std::vector<std::size_t> degree_dims;

    std::size_t top_degree() const { return degree_dims.size(); }
    std::size_t offset(std::size_t degree) const; // first basis index of a degree (1-based)
    std::size_t dim_in(std::size_t degree) const;

    static GradedLieAlgebra from_graded(LieAlgebra L); // requires a valid grading
};

/// gr L together with the adapted basis of L it was computed from: column k of
/// `lift` is a representative in L of the k-th basis vector of gr L, and the
/// columns for degree n span a complement of Gamma_{n+1} in Gamma_n.
struct AssociatedGraded {
    GradedLieAlgebra graded;
    Matrix lift;
    Matrix lift_inverse;
};

AssociatedGraded associated_graded(const LieAlgebra &L);

LieAlgebra direct_sum(const LieAlgebra &a, const LieAlgebra &b);

/// L re-expressed in the basis given by the columns of an invertible p.
LieAlgebra change_basis(const LieAlgebra &L, const Matrix &p);

/// m (dim b x dim a) satisfies m[x,y] = [mx,my].
bool is_homomorphism(const LieAlgebra &a, const LieAlgebra &b, const Matrix &m);
bool check_automorphism(const LieAlgebra &L, const Matrix &m);

/// True iff every bracket of homogeneous basis vectors is homogeneous of the
/// summed weight.
bool grading_is_additive(const LieAlgebra &L);

LieAlgebra abelian_algebra(std::size_t n);
/// Basis e1, e2, w with [e1, e2] = w.
LieAlgebra heisenberg_algebra();

} // namespace malcev
