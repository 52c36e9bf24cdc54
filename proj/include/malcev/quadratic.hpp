#pragma once

// Quadratic presentations L(V)/<W>, W in wedge^2 V: realization, the
// quadraticity decision, Malcev models from cup products, and lifting.
//
// wedge^2 V coordinates are indexed by pairs (i, j), i < j, in lexicographic
// order; pair (i, j) stands for [x_i, x_j].

#include "malcev/group.hpp"
#include "malcev/relation_lift.hpp"

#include <optional>
#include <string>
#include <vector>

namespace malcev {

std::size_t wedge_dim(std::size_t n);
std::size_t wedge_index(std::size_t n, std::size_t i, std::size_t j); // i < j
std::pair<std::size_t, std::size_t> wedge_pair(std::size_t n, std::size_t index);

struct QuadraticPresentation {
    std::size_t generators = 0;
    std::vector<Vector> relations; // vectors in wedge^2 V (need not be independent)

    Subspace relation_space() const;
};

/// wedge^2 V vector -> degree-2 element of the free Lie algebra.
FreeLieElement wedge_to_free(const HallBasis &hall, std::span<const Scalar> w);
/// Degree-2 part of a free Lie element in wedge^2 V coordinates.
Vector free_to_wedge(const HallBasis &hall, const FreeLieElement &x);
/// The presentation rewritten for new generators x'_j = sum_i p(i, j) x_i
/// (columns of p express new generators in old ones); relations are
/// transported by the inverse change on wedge^2.
QuadraticPresentation change_generators(const QuadraticPresentation &qp, const Matrix &p);

struct Realization {
    LieAlgebra algebra;             // graded by Hall degree
    Matrix projection;              // free_nilpotent(n, c) -> algebra
    GradedIdeal ideal;              // <W> inside free_nilpotent(n, c)
    std::vector<std::size_t> degree_dims;
    bool stabilized = false;        // degree-c component already zero
};

Realization realize(const QuadraticPresentation &qp, std::size_t class_bound);

struct QuadraticVerdict {
    bool quadratic = false;
    /// False only when the lift stage could neither find nor exclude a lift.
    bool conclusive = true;
    std::string failed_stage;          // "", "graded" or "lift"
    std::size_t failing_degree = 0;
    /// graded failure: basis (Hall coordinates of free_nilpotent(n, c+1)) of
    /// a complement of <W>_m inside the kernel of L(V)_m -> gr_m
    std::vector<Vector> defect;
    std::size_t kernel_dim = 0;        // at the failing degree
    std::size_t ideal_dim = 0;         // at the failing degree

    AssociatedGraded gr;
    QuadraticPresentation presentation; // W in gr_1 coordinates (independent)
    Matrix theta;                       // gr L -> L, dim L x dim L, when quadratic
};

QuadraticVerdict is_quadratically_presented(const LieAlgebra &L);

/// Independent check of a positive verdict: theta is a Lie map gr L -> L with
/// gr(theta) = id, gr L is generated by gr_1 with relations exactly <W>.
bool verify_quadratic_verdict(const LieAlgebra &L, const QuadraticVerdict &v);

/// theta: gr L -> L is a homomorphism and gr(theta) = id for the adapted basis.
bool theta_is_splitting(const LieAlgebra &L, const AssociatedGraded &gr, const Matrix &theta);

/// Verdict for L1 from a positive verdict for direct_sum(L1, L2), via
/// gr L1 -> gr(L1 + L2) -> L1 + L2 -> L1.
QuadraticVerdict direct_summand_quadratic(const LieAlgebra &l1, const LieAlgebra &l2,
                                          const QuadraticVerdict &sum_verdict);

/// Cup product H^1 x H^1 -> H^2: pairing[i][j] is the H^2 vector of e_i u e_j.
struct CupDatum {
    std::size_t h1 = 0;
    std::size_t h2 = 0;
    std::vector<std::vector<Vector>> pairing;

    void validate() const; // shape and antisymmetry
};

QuadraticPresentation malcev_model(const CupDatum &cd);

/// Weight -n on Hall degree n; checked to be additive and to put every
/// relation in weight -2.
std::vector<int> weight_decomposition(const QuadraticPresentation &qp, const Realization &r);

struct CriterionResult {
    bool lifts = false;
    Matrix lift;                      // dim u x n generator images when lifts
    bool agrees_mod_gamma3 = false;   // the lift also reproduces rho2 mod Gamma_3
    std::size_t obstruction_degree = 0;
    std::vector<Vector> obstruction;  // nonzero images of relations in u
    std::vector<Vector> failing_relations; // in Hall coordinates of the source presentation
};

/// Source g = L(V)/<W>; target u graded and generated in degree 1;
/// rho2 columns = images of the generators, read modulo Gamma_3(u).
CriterionResult lift_representation_criterion(const QuadraticPresentation &source,
                                              const LieAlgebra &target, const Matrix &rho2);

/// Same question for an arbitrary nilpotent source given by structure
/// constants; its generators are an adapted basis of gr_1 and the relations
/// are the full kernel of the free algebra onto it.
CriterionResult lift_representation_criterion(const LieAlgebra &source, const LieAlgebra &target,
                                              const Matrix &rho2);

struct OneClassLift {
    bool lifted = false;
    Assignment assignment;                // verified lift when lifted
    std::vector<RelatorDefect> defects;   // relator values before correction
    /// Per relator, the part of its defect left over after the best
    /// correction (coordinates in the ambient algebra); nonzero somewhere
    /// when obstructed.
    std::vector<Vector> unresolved;
};

/// Target T with Gamma_{k+1}(T) = 0; the assignment's relators must evaluate
/// into Gamma_k(T) with trivial automorphism part. Generator images may be
/// corrected by central elements of Gamma_k(T).
OneClassLift lift_one_class(const GroupPresentation &p, const LieAlgebra &target, const Assignment &assignment,
                            std::size_t level);

} // namespace malcev
