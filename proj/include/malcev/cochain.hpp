#pragma once

// Finite graded-commutative DGAs over Q, their cohomology rings,
// Chevalley-Eilenberg complexes and triple Massey products.
//
// Degrees run 0..D. A homogeneous element of degree p is a coordinate vector
// of length dims[p]; nothing is stored above D, so products landing there
// are zero.

#include "malcev/lie_algebra.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace malcev {

struct CochainComplex {
    std::vector<std::size_t> dims;
    std::vector<Matrix> d; // d[n]: degree n -> n + 1, dims[n+1] x dims[n]

    std::size_t top_degree() const { return dims.empty() ? 0 : dims.size() - 1; }
    /// Degree p + 1 image; the zero vector of length 0 past the top.
    Vector differential(std::size_t p, std::span<const Scalar> u) const;
    void check_shapes() const;
};

/// Complex plus a bilinear product table; the shared body of DGAs and DGLAs.
struct GradedBilinear : CochainComplex {
    /// table[p][q][i * dims[q] + j] = e_i * e_j in degree p + q (p + q <= D)
    std::vector<std::vector<std::vector<Vector>>> table;

    void resize_table();
    Vector multiply(std::size_t p, std::span<const Scalar> u, std::size_t q, std::span<const Scalar> v) const;
    const Vector &basis_product(std::size_t p, std::size_t i, std::size_t q, std::size_t j) const;
    /// Sets e_i * e_j and, through the given sign, e_j * e_i.
    void set_product(std::size_t p, std::size_t i, std::size_t q, std::size_t j, const Vector &value, int swap_sign);
    void check_table() const;
};

struct FiniteDGA : GradedBilinear {
    std::vector<std::vector<std::string>> names; // optional, per degree

    static FiniteDGA with_dims(std::vector<std::size_t> dims);
    /// a * b with b * a = (-1)^{pq} a * b filled in.
    void set(std::size_t p, std::size_t i, std::size_t q, std::size_t j, const Vector &value);

    /// Human-readable list of axiom failures; empty for a valid DGA.
    std::vector<std::string> violations() const;
    void validate() const; // throws Error with the first violation
};

struct Cochain {
    std::size_t degree = 0;
    Vector coords;
};

class Cohomology {
  public:
    explicit Cohomology(const CochainComplex &c);

    const std::vector<std::size_t> &betti() const { return betti_; }
    /// Cocycles whose classes form the chosen basis of H^n.
    const std::vector<Vector> &representatives(std::size_t n) const { return reps_.at(n); }
    const std::vector<Vector> &cocycle_basis(std::size_t n) const { return cocycles_.at(n); }
    const Subspace &boundaries(std::size_t n) const { return boundaries_.at(n); }

    bool is_cocycle(std::size_t n, std::span<const Scalar> v) const;
    /// Coordinates of [v] in the representative basis; Error if v is not closed.
    Vector class_of(std::size_t n, std::span<const Scalar> v) const;
    /// Some u of degree n - 1 with du = v, if v is exact (n = 0: only v = 0).
    std::optional<Vector> primitive(std::size_t n, std::span<const Scalar> v) const;
    /// Cocycle sum_i c_i rep_i.
    Vector representative(std::size_t n, std::span<const Scalar> c) const;

  private:
    CochainComplex complex_;
    std::vector<std::size_t> betti_;
    std::vector<std::vector<Vector>> reps_, cocycles_;
    std::vector<Subspace> boundaries_;
    std::vector<Matrix> decompose_; // [reps | d(basis of degree n-1)]
};

/// H(A) with the induced product and zero differential, axioms re-verified.
FiniteDGA cohomology_ring(const FiniteDGA &A);

/// Exterior algebra on L* with (d xi)(x, y) = -xi([x, y]), truncated above
/// max_degree. Basis of degree k: k-subsets in lexicographic order. Throws if
/// d^2 != 0 (Jacobi fails).
FiniteDGA chevalley_eilenberg(const LieAlgebra &L, std::size_t max_degree = SIZE_MAX);
/// Index of the wedge of the sorted generator list in its degree of the CE basis.
std::size_t ce_index(std::size_t dim, const std::vector<std::size_t> &subset);

/// (a x b)(a' x b') = (-1)^{|b||a'|} aa' x bb'; basis of degree n ordered by
/// p = 0..n, then a-index, then b-index.
FiniteDGA tensor_dga(const FiniteDGA &A, const FiniteDGA &B);

/// Per-degree matrices A^n -> B^n.
struct DGAMorphism {
    std::vector<Matrix> maps;
    Vector apply(std::size_t n, std::span<const Scalar> v) const { return maps.at(n) * v; }
};

bool is_dga_morphism(const FiniteDGA &A, const FiniteDGA &B, const DGAMorphism &phi);
/// f: source -> target a Lie map (dim target x dim source); f^* on forms,
/// CE(target) -> CE(source), degree by degree via minors of f.
DGAMorphism ce_pullback(const LieAlgebra &source, const LieAlgebra &target, const Matrix &f,
                        std::size_t max_degree = SIZE_MAX);
/// Matrix of H^n(phi) in the representative bases.
Matrix induced_map(const Cohomology &ha, const Cohomology &hb, const DGAMorphism &phi, std::size_t n);

struct MasseyResult {
    std::size_t degree = 0;       // p + q + r - 1
    Vector x, y;                  // dx = ab, dy = bc
    Vector representative;        // a y - (-1)^p x c
    Vector class_coords;          // in H^degree
    std::vector<Vector> indeterminacy; // basis of aH + Hc inside H^degree
    bool vanishes = false;        // class lies in the indeterminacy
};

/// Undefined (Error) unless a, b, c are cocycles with ab and bc exact.
MasseyResult massey_triple(const FiniteDGA &A, const Cochain &a, const Cochain &b, const Cochain &c);
/// Same, with the defining cochains supplied (they must satisfy dx = ab, dy = bc).
MasseyResult massey_triple(const FiniteDGA &A, const Cochain &a, const Cochain &b, const Cochain &c,
                           const Vector &x, const Vector &y);

struct MasseyWitness {
    std::size_t i, j, k; // indices into the H^1 representatives
    MasseyResult result;
};

struct FormalityReport {
    std::size_t h1 = 0;
    std::size_t defined = 0;   // triples of H^1 basis classes with both products exact
    std::size_t undefined = 0;
    std::vector<MasseyWitness> witnesses; // non-vanishing triples
    bool clean() const { return witnesses.empty(); }
};

FormalityReport formality_consequence_report(const FiniteDGA &A);

} // namespace malcev
