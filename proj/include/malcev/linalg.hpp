#pragma once

// Exact rational linear algebra.
//
// Every value is an arbitrary-precision rational kept in lowest terms with a
// positive denominator (gmpxx canonicalizes after each operation), so equality
// is a plain comparison and nothing is ever rounded.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace malcev {

using Scalar = mpq_class;
using Integer = mpz_class;
using Vector = std::vector<Scalar>;

/// Raised for malformed input (dimension mismatches, bad parses, violated
/// preconditions). Negative mathematical verdicts are never reported this way.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// "p/q", or "n" when the denominator is 1.
std::string format_scalar(const Scalar &s);
Scalar parse_scalar(std::string_view text);
/// num/den in lowest terms (mpq_class(num, den) alone does not canonicalize).
Scalar ratio(long num, long den);

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);
bool is_zero(std::span<const Scalar> v);
Vector add(std::span<const Scalar> a, std::span<const Scalar> b);
Vector sub(std::span<const Scalar> a, std::span<const Scalar> b);
Vector scale(std::span<const Scalar> a, const Scalar &s);
void axpy(Vector &y, const Scalar &a, std::span<const Scalar> x); // y += a*x
Vector negate(std::span<const Scalar> a);

class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries);

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vector> &rows, std::size_t cols);
    static Matrix from_columns(const std::vector<Vector> &cols, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Scalar> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    Vector column(std::size_t j) const;
    const std::vector<Scalar> &entries() const { return data_; }

    Matrix transpose() const;
    bool is_zero() const;
    bool is_square() const { return rows_ == cols_; }
    bool is_integral() const;

    friend bool operator==(const Matrix &, const Matrix &) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

Matrix operator*(const Matrix &a, const Matrix &b);
Vector operator*(const Matrix &a, std::span<const Scalar> v);
Matrix operator+(const Matrix &a, const Matrix &b);
Matrix operator-(const Matrix &a, const Matrix &b);

/// Reduced row echelon form together with its pivot columns.
struct RowEchelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;
    std::size_t rank() const { return pivots.size(); }
};

RowEchelon row_echelon(Matrix m);
std::size_t rank(const Matrix &m);
std::optional<Matrix> inverse(const Matrix &m);
Scalar determinant(const Matrix &m);

/// Basis of the null space {v : m v = 0}; one vector per free column, with a 1
/// in that column.
std::vector<Vector> kernel_basis(const Matrix &m);

struct AffineSolution {
    Vector particular;
    std::vector<Vector> kernel;
};

/// Solution set of m x = b, or nullopt if inconsistent. Free variables of the
/// particular solution are set to zero, so b = 0 yields x = 0.
std::optional<AffineSolution> solve_affine(const Matrix &m, std::span<const Scalar> b);

/// A subspace of k^n held as reduced echelon rows.
class Subspace {
  public:
    explicit Subspace(std::size_t ambient = 0);
    Subspace(std::size_t ambient, const std::vector<Vector> &spanning);

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Vector> &basis() const { return basis_; }
    const std::vector<std::size_t> &pivots() const { return pivots_; }

    /// Reduce v against the echelon basis; zero iff v lies in the subspace.
    Vector reduce(std::span<const Scalar> v) const;
    bool contains(std::span<const Scalar> v) const;
    bool contains(const Subspace &other) const;
    /// Adds v; returns false if it was already in the span.
    bool insert(std::span<const Scalar> v);
    /// Standard basis indices that complete the subspace to the ambient space.
    std::vector<std::size_t> complement_indices() const;

  private:
    std::size_t ambient_;
    std::vector<Vector> basis_;
    std::vector<std::size_t> pivots_;
};

/// Greedily extend `base` by vectors of `candidates`, returning the chosen
/// candidates (a basis of span(base ∪ candidates) modulo span(base)).
std::vector<Vector> extend_basis(const Subspace &base, const std::vector<Vector> &candidates);

/// U * m * V = D with U, V unimodular and D diagonal, d_i | d_{i+1}, d_i >= 0.
struct SmithForm {
    Matrix left;
    Matrix diagonal;
    Matrix right;
    std::vector<Integer> invariants() const;
};

SmithForm smith_normal_form(const Matrix &m);

/// Membership of v in the Z-span of the columns of `generators` (rational
/// entries allowed; scaled to an integral problem and decided via Smith form).
bool in_lattice(const Matrix &generators, std::span<const Scalar> v);

} // namespace malcev
