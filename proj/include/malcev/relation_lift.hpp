#pragma once

// Solving "the relations vanish on these generator images" in a nilpotent
// target, one filtration level at a time.
//
// Unknown images y_i = y0_i + z_i with z_i in Gamma_s(T). At level k the gr_k
// components of every relation r(y) must vanish; they depend affinely on the
// free parameters still in play up to terms involving two or more of them.
// Those terms only reach level >= f + f' + m - 2 (f, f' the filtration
// degrees of the parameters, m the smallest relation degree), so a level
// below that bound is decided exactly. Otherwise an unsolvable level is
// reported as undecided rather than obstructed. Solutions are always
// re-verified exactly.

#include "malcev/free_lie.hpp"

#include <vector>

namespace malcev {

/// Evaluate a free Lie element at generator images in L (any L; brackets of
/// images are taken in L).
Vector evaluate_free(const HallBasis &hall, const FreeLieElement &x, const std::vector<Vector> &images,
                     const LieAlgebra &L);

/// Linear map F -> L sending Hall word w to w(images); dim L x hall.size().
Matrix evaluation_matrix(const HallBasis &hall, const std::vector<Vector> &images, const LieAlgebra &L);

struct RelationLiftProblem {
    const LieAlgebra *target = nullptr;         // nilpotent
    const HallBasis *hall = nullptr;            // relations live here
    std::vector<FreeLieElement> relations;      // each with no degree-1 part
    std::vector<Vector> initial;                // y0, one image per generator
    std::size_t correction_level = 2;           // z_i in Gamma_s
};

enum class LiftStatus { solved, obstructed, undecided };

struct RelationLiftResult {
    LiftStatus status = LiftStatus::undecided;
    std::vector<Vector> images;                 // current images (a solution when solved)
    std::size_t failing_level = 0;              // 1-based filtration level
    /// gr_k components of r(y) at the failing level, one vector per relation
    /// (coordinates in the target's adapted basis, restricted to degree k).
    std::vector<Vector> residual;
    /// Remaining free directions of the solution family (per-generator vectors).
    std::vector<std::vector<Vector>> free_directions;
    bool linear_throughout = true;              // no nonlinear interaction was possible
};

RelationLiftResult solve_relation_lift(const RelationLiftProblem &problem);

} // namespace malcev
