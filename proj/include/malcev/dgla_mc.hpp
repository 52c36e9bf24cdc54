#pragma once

// Finite DGLAs, Maurer-Cartan elements with nilpotent coefficients, the gauge
// action and obstruction classes.
//
// MC: dx + 1/2 [x, x] = 0 for x of degree 1.
// Gauge: alpha . x = exp(ad_alpha)(x + delta) - delta, where delta is an
// extra degree-1 vector with [delta, a] = da and [delta, delta] = 0.
//
// A (x) N for a DGA A and a nilpotent Lie algebra N: degree-n coordinates are
// indexed i * dim N + m (A-basis i, N-basis m), bracket (ab) (x) [m, n].

#include "malcev/cochain.hpp"
#include "malcev/free_lie.hpp"

#include <optional>
#include <string>
#include <vector>

namespace malcev {

struct FiniteDGLA : GradedBilinear {
    static FiniteDGLA with_dims(std::vector<std::size_t> dims);
    /// [a, b] with [b, a] = -(-1)^{pq} [a, b] filled in.
    void set(std::size_t p, std::size_t i, std::size_t q, std::size_t j, const Vector &value);
    Vector bracket(std::size_t p, std::span<const Scalar> u, std::size_t q, std::span<const Scalar> v) const
    {
        return multiply(p, u, q, v);
    }

    std::vector<std::string> violations() const;
    void validate() const;
};

/// A (x) N truncated above max_degree; invariants verified.
FiniteDGLA tensor_dgla(const FiniteDGA &A, const LieAlgebra &N, std::size_t max_degree = 4);

/// L with delta appended as the last degree-1 basis vector and zero
/// differential; graded Jacobi of the result is equivalent to d^2 = 0 plus
/// Leibniz for L.
FiniteDGLA augment(const FiniteDGLA &L);

/// The degree-0 part as an ordinary Lie algebra.
LieAlgebra degree_zero_algebra(const FiniteDGLA &L);

using MCElement = Vector;    // degree 1
using GaugeElement = Vector; // degree 0

Vector mc_residual(const FiniteDGLA &L, const MCElement &x);
/// 1/2 [x + delta, x + delta] computed inside augment(L).
Vector mc_residual_augmented(const FiniteDGLA &L, const MCElement &x);
bool is_mc(const FiniteDGLA &L, const MCElement &x);

/// exp(ad_alpha)(x + delta) - delta; Error if ad_alpha is not nilpotent.
MCElement gauge(const FiniteDGLA &L, const GaugeElement &alpha, const MCElement &x);
/// d/dt gauge(alpha + t u, x) at t = 0.
Vector gauge_derivative(const FiniteDGLA &L, const GaugeElement &alpha, const MCElement &x, const GaugeElement &u);

/// A (x) N together with the lower central series filtration of N, read in
/// an adapted basis of N.
class CoefficientDGLA {
  public:
    CoefficientDGLA(FiniteDGA A, LieAlgebra N, std::size_t max_degree = 4);

    const FiniteDGA &dga() const { return A_; }
    const LieAlgebra &coefficients() const { return N_; }
    const FiniteDGLA &dgla() const { return L_; }
    const Cohomology &cohomology() const { return H_; }

    std::size_t levels() const { return gr_dims_.size(); } // nilpotency class of N
    std::size_t gr_dim(std::size_t k) const { return gr_dims_.at(k - 1); }
    /// Representative in N of the b-th basis vector of gr_k N.
    Vector gr_lift(std::size_t k, std::size_t b) const;

    /// The A^p (x) gr_k coordinates of v in A^p (x) N, indexed i * gr_dim(k) + b.
    Vector gr_component(std::size_t p, std::span<const Scalar> v, std::size_t k) const;
    /// Inverse of gr_component on A^p (x) span(gr_k lifts).
    Vector embed_gr(std::size_t p, std::span<const Scalar> c, std::size_t k) const;
    /// Smallest k with a nonzero gr_k component (levels() + 1 for zero).
    std::size_t filtration(std::size_t p, std::span<const Scalar> v) const;
    /// a (x) n
    Vector pure(std::size_t p, std::span<const Scalar> a, std::span<const Scalar> n) const;

  private:
    FiniteDGA A_;
    LieAlgebra N_;
    FiniteDGLA L_;
    Cohomology H_;
    AssociatedGraded gr_;
    std::vector<std::size_t> gr_dims_, gr_offsets_;
};

struct MCStage {
    std::size_t level = 0;
    std::size_t gr_dim = 0;
    /// Obstruction in H^2(A) (x) gr_k: one H^2 class per gr_k basis vector.
    std::vector<Vector> obstruction;
    bool obstructed = false;
    Vector correction;          // chosen u in A^1 (x) gr_k, embedded in A^1 (x) N
    std::size_t family_dim = 0; // dim of the affine solution set at this stage
};

struct MCSolveResult {
    bool solved = false;
    MCElement element; // an MC element when solved; the partial one otherwise
    std::vector<MCStage> stages;
};

/// Stage k solves d u = -(gr_k part of the residual) for u in A^1 (x) gr_k.
/// The gr_k part of `seed` (default 0) is used as the homogeneous part of
/// each stage's solution, so a cocycle seed fixes the stage-1 choice.
MCSolveResult mc_solve(const CoefficientDGLA &C, const std::optional<MCElement> &seed = std::nullopt);

/// 0 -> I -> N -> M -> 0 with [N, I] = 0.
struct SmallExtension {
    LieAlgebra N, M;
    Matrix projection;          // dim M x dim N
    std::vector<Vector> kernel; // basis of I in N
    Matrix section;             // dim N x dim M, projection * section = id
};

SmallExtension make_small_extension(const LieAlgebra &N, const LieAlgebra &M, const Matrix &projection);
/// N / Gamma_{k+1} -> N / Gamma_k (k >= 1).
SmallExtension lcs_extension(const LieAlgebra &N, std::size_t k);

/// Apply id (x) f on A^p (x) N -> A^p (x) N'.
Vector tensor_map(std::size_t a_dim, const Matrix &f, std::span<const Scalar> v);

struct ObstructionClass {
    Vector lift;                   // the chosen x~ in A^1 (x) N
    Vector h;                      // d x~ + 1/2 [x~, x~], lies in A^2 (x) I
    std::vector<Vector> classes;   // H^2 class per kernel basis vector
    bool zero = true;
};

/// x is MC over M; lift defaults to (id (x) section)(x).
ObstructionClass obstruction_class(const FiniteDGA &A, const SmallExtension &e, const MCElement &x,
                                   const std::optional<Vector> &lift = std::nullopt, std::size_t max_degree = 4);
/// An MC lift of x to N, when the class vanishes.
std::optional<MCElement> lift_mc(const FiniteDGA &A, const SmallExtension &e, const MCElement &x,
                                 std::size_t max_degree = 4);

enum class Decision { yes, no, undecided };
std::string to_string(Decision d);

struct GaugeDecision {
    Decision decision = Decision::undecided;
    GaugeElement alpha;             // verified gauge(alpha, x) = y when yes
    std::size_t failing_level = 0;
    Vector residual;                // gr component left over at the failing level
    std::vector<GaugeElement> free_parameters; // directions still in play
    bool linear_throughout = true;
};

/// Staged solve for alpha with gauge(alpha, x) = y along the LCS of N. A
/// complete decision when H^0(A) = 0; otherwise "no" is only reported when no
/// nonlinear interaction between parameters could reach the failing level.
GaugeDecision gauge_equivalent(const CoefficientDGLA &C, const MCElement &x, const MCElement &y);

struct DefComparison {
    std::vector<std::size_t> betti_a, betti_b;
    std::vector<std::size_t> induced_rank; // H^0, H^1, H^2
    bool h0_surjective = false, h1_bijective = false, h2_injective = false;
    bool etale_predicted = false;       // H^1 bijective and H^2 injective
    bool equivalence_predicted = false; // additionally H^0 surjective

    std::size_t sample_a = 0, sample_b = 0;   // MC elements found from the seed grid
    std::size_t classes_a = 0, classes_b = 0; // gauge classes among them
    std::size_t classes_image = 0;            // among phi(sample_a)
    std::size_t injectivity_failures = 0;     // pairs with x ~ y differing from phi x ~ phi y
    std::size_t unreached_b = 0;              // sample_b elements equivalent to no phi x
    std::size_t undecided = 0;
    bool conclusion_holds = false;            // classes match, no failures, nothing undecided
};

/// phi: A -> B a DGA morphism (verified). Samples MC elements on both sides
/// from seeds sum c (H^1 representative (x) gr_1 lift) with c in `grid`.
DefComparison compare_def_along_map(const FiniteDGA &A, const FiniteDGA &B, const DGAMorphism &phi,
                                    const LieAlgebra &N, const std::vector<long> &grid = {0, 1},
                                    std::size_t max_degree = 4);

} // namespace malcev
