#include "malcev/quadratic.hpp"

#include <algorithm>

namespace malcev {

std::size_t wedge_dim(std::size_t n) { return n * (n - (n > 0 ? 1 : 0)) / 2; }

std::size_t wedge_index(std::size_t n, std::size_t i, std::size_t j)
{
    if (!(i < j && j < n))
        throw Error("wedge_index needs i < j < n");
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

std::pair<std::size_t, std::size_t> wedge_pair(std::size_t n, std::size_t index)
{
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t row = n - i - 1;
        if (index < row)
            return {i, i + 1 + index};
        index -= row;
    }
    throw Error("wedge index out of range");
}

Subspace QuadraticPresentation::relation_space() const
{
    for (const auto &r : relations)
        if (r.size() != wedge_dim(generators))
            throw Error("relation has the wrong length for wedge^2 V");
    return Subspace(wedge_dim(generators), relations);
}

FreeLieElement wedge_to_free(const HallBasis &hall, std::span<const Scalar> w)
{
    const std::size_t n = hall.generators();
    if (w.size() != wedge_dim(n))
        throw Error("wedge vector has the wrong length");
    if (hall.class_bound() < 2)
        throw Error("wedge_to_free needs class >= 2");
    FreeLieElement x;
    for (std::size_t k = 0; k < w.size(); ++k)
        if (w[k] != 0) {
            auto [i, j] = wedge_pair(n, k);
            auto idx = hall.find(i, j);
            if (!idx)
                throw Error("internal: [x_i, x_j] is not a Hall word");
            x.add(*idx, w[k]);
        }
    return x;
}

Vector free_to_wedge(const HallBasis &hall, const FreeLieElement &x)
{
    const std::size_t n = hall.generators();
    Vector w = zero_vector(wedge_dim(n));
    for (const auto &[idx, c] : x.coords) {
        if (hall.degree(idx) != 2)
            continue;
        const HallWord &hw = hall.word(idx);
        w[wedge_index(n, hall.word(hw.left).generator, hall.word(hw.right).generator)] = c;
    }
    return w;
}

QuadraticPresentation change_generators(const QuadraticPresentation &qp, const Matrix &p)
{
    const std::size_t n = qp.generators;
    if (p.rows() != n || p.cols() != n)
        throw Error("change_generators: matrix must be n x n");
    auto q = inverse(p);
    if (!q)
        throw Error("change_generators: matrix is singular");
    QuadraticPresentation out{n, {}};
    for (const auto &r : qp.relations) {
        if (r.size() != wedge_dim(n))
            throw Error("relation has the wrong length for wedge^2 V");
        Vector w = zero_vector(wedge_dim(n));
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (r[k] == 0)
                continue;
            auto [a, b] = wedge_pair(n, k);
            // x_a = sum_j q(j, a) x'_j
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t l = 0; l < n; ++l) {
                    if (j == l)
                        continue;
                    const Scalar c = r[k] * (*q)(j, a) * (*q)(l, b);
                    if (c == 0)
                        continue;
                    if (j < l)
                        w[wedge_index(n, j, l)] += c;
                    else
                        w[wedge_index(n, l, j)] -= c;
                }
        }
        out.relations.push_back(std::move(w));
    }
    return out;
}

// ---------------------------------------------------------------------------

Realization realize(const QuadraticPresentation &qp, std::size_t class_bound)
{
    if (class_bound < 2)
        throw Error("realize needs class >= 2");
    if (qp.generators == 0)
        throw Error("realize needs at least one generator");
    HallBasis hall(qp.generators, class_bound);
    LieAlgebra F = free_nilpotent(qp.generators, class_bound);
    std::vector<Vector> gens;
    const Subspace relations = qp.relation_space();
    for (const auto &r : relations.basis())
        gens.push_back(hall.to_vector(wedge_to_free(hall, r)));
    Realization out;
    out.ideal = graded_ideal_closure(F, gens);
    Quotient q = quotient(F, out.ideal.total(F.dim()));
    out.algebra = std::move(q.algebra);
    out.projection = std::move(q.projection);
    const auto counts = hall.degree_counts();
    const auto idims = out.ideal.dims();
    for (std::size_t d = 0; d < counts.size(); ++d)
        out.degree_dims.push_back(counts[d] - (d < idims.size() ? idims[d] : 0));
    out.stabilized = out.degree_dims.back() == 0;
    return out;
}

// ---------------------------------------------------------------------------

namespace {

struct GradedCheck {
    bool ok = true;
    std::size_t failing_degree = 0;
    std::vector<Vector> defect;
    std::size_t kernel_dim = 0, ideal_dim = 0;
    std::vector<Vector> relations; // K_2 in Hall coordinates
};

// G graded with gr_1 = first n basis vectors and top degree c. Compares the
// kernel of L(V) -> G with the ideal generated by its degree-2 part, in every
// degree up to c + 1.
GradedCheck graded_quadratic_check(const GradedLieAlgebra &G, const HallBasis &hall, const LieAlgebra &F)
{
    const std::size_t n = G.dim_in(1);
    std::vector<Vector> images;
    for (std::size_t i = 0; i < n; ++i)
        images.push_back(unit_vector(G.algebra.dim(), i));
    const Matrix P = evaluation_matrix(hall, images, G.algebra);

    auto kernel_in_degree = [&](std::size_t m) {
        const auto idx = hall.indices_of_degree(m);
        Matrix sub(P.rows(), idx.size());
        for (std::size_t r = 0; r < P.rows(); ++r)
            for (std::size_t c = 0; c < idx.size(); ++c)
                sub(r, c) = P(r, idx[c]);
        std::vector<Vector> out;
        for (const auto &k : kernel_basis(sub)) {
            Vector v = zero_vector(hall.size());
            for (std::size_t c = 0; c < idx.size(); ++c)
                v[idx[c]] = k[c];
            out.push_back(std::move(v));
        }
        return out;
    };

    GradedCheck res;
    res.relations = kernel_in_degree(2);
    const GradedIdeal ideal = graded_ideal_closure(F, res.relations);
    for (std::size_t m = 2; m <= hall.class_bound(); ++m) {
        const auto K = kernel_in_degree(m);
        const Subspace piece = m - 1 < ideal.pieces.size() ? ideal.pieces[m - 1] : Subspace(hall.size());
        if (!Subspace(hall.size(), K).contains(piece))
            throw Error("internal: relation ideal escapes the kernel");
        if (piece.dim() != K.size()) {
            res.ok = false;
            res.failing_degree = m;
            res.defect = extend_basis(piece, K);
            res.kernel_dim = K.size();
            res.ideal_dim = piece.dim();
            return res;
        }
    }
    return res;
}

std::vector<std::size_t> degrees_of(const GradedLieAlgebra &g)
{
    std::vector<std::size_t> deg;
    for (std::size_t d = 1; d <= g.top_degree(); ++d)
        for (std::size_t j = 0; j < g.dim_in(d); ++j)
            deg.push_back(d);
    return deg;
}

} // namespace

bool theta_is_splitting(const LieAlgebra &L, const AssociatedGraded &gr, const Matrix &theta)
{
    const std::size_t n = L.dim();
    if (theta.rows() != n || theta.cols() != gr.graded.algebra.dim() || gr.graded.algebra.dim() != n)
        return false;
    if (!is_homomorphism(gr.graded.algebra, L, theta))
        return false;
    // the adapted basis must really be adapted to the lower central series
    const auto series = lower_central_series(L);
    const auto deg = degrees_of(gr.graded);
    for (std::size_t b = 0; b < n; ++b) {
        const std::size_t d = deg[b];
        const Vector col = theta.column(b);
        const Vector base = gr.lift.column(b);
        if (!series.at(d - 1).span.contains(base) || !series.at(d - 1).span.contains(col))
            return false;
        if (!series.at(d).span.contains(sub(col, base)))
            return false;
    }
    for (std::size_t d = 1; d <= gr.graded.top_degree(); ++d)
        if (gr.graded.dim_in(d) != series[d - 1].dim() - series[d].dim())
            return false;
    return rank(gr.lift) == n;
}

QuadraticVerdict is_quadratically_presented(const LieAlgebra &L)
{
    QuadraticVerdict v;
    v.gr = associated_graded(L); // throws for non-nilpotent input
    const std::size_t n = v.gr.graded.dim_in(1);
    v.presentation.generators = n;
    if (L.dim() == 0) {
        v.quadratic = true;
        v.theta = Matrix(0, 0);
        return v;
    }
    const std::size_t c = v.gr.graded.top_degree();
    HallBasis hall(n, c + 1);
    LieAlgebra F = free_nilpotent(n, c + 1);
    const GradedCheck check = graded_quadratic_check(v.gr.graded, hall, F);
    for (const auto &r : check.relations)
        v.presentation.relations.push_back(free_to_wedge(hall, hall.from_vector(r)));
    if (!check.ok) {
        v.failed_stage = "graded";
        v.failing_degree = check.failing_degree;
        v.defect = check.defect;
        v.kernel_dim = check.kernel_dim;
        v.ideal_dim = check.ideal_dim;
        return v;
    }

    // lift stage: generator images a_i + z_i, z_i in Gamma_2, killing W
    HallBasis hall2(n, 2);
    RelationLiftProblem problem;
    problem.target = &L;
    problem.hall = &hall2;
    for (const auto &w : v.presentation.relations)
        problem.relations.push_back(wedge_to_free(hall2, w));
    for (std::size_t i = 0; i < n; ++i)
        problem.initial.push_back(v.gr.lift.column(i));
    problem.correction_level = 2;
    const RelationLiftResult lift = solve_relation_lift(problem);
    if (lift.status != LiftStatus::solved) {
        v.failed_stage = "lift";
        v.failing_degree = lift.failing_level;
        v.conclusive = lift.status == LiftStatus::obstructed;
        return v;
    }

    // theta on each gr basis vector: any free preimage evaluated at the images
    std::vector<Vector> gr_images;
    for (std::size_t i = 0; i < n; ++i)
        gr_images.push_back(unit_vector(L.dim(), i));
    const Matrix P = evaluation_matrix(hall, gr_images, v.gr.graded.algebra);
    const Matrix E = evaluation_matrix(hall, lift.images, L);
    const auto deg = degrees_of(v.gr.graded);
    v.theta = Matrix(L.dim(), L.dim());
    for (std::size_t b = 0; b < L.dim(); ++b) {
        const auto idx = hall.indices_of_degree(deg[b]);
        Matrix sub(P.rows(), idx.size());
        for (std::size_t r = 0; r < P.rows(); ++r)
            for (std::size_t k = 0; k < idx.size(); ++k)
                sub(r, k) = P(r, idx[k]);
        auto pre = solve_affine(sub, unit_vector(L.dim(), b));
        if (!pre)
            throw Error("internal: gr L is not generated in degree 1");
        Vector col = zero_vector(L.dim());
        for (std::size_t k = 0; k < idx.size(); ++k)
            if (pre->particular[k] != 0)
                axpy(col, pre->particular[k], E.column(idx[k]));
        for (std::size_t r = 0; r < L.dim(); ++r)
            v.theta(r, b) = col[r];
    }
    if (!theta_is_splitting(L, v.gr, v.theta))
        throw Error("internal: constructed theta does not split the filtration");
    v.quadratic = true;
    return v;
}

bool verify_quadratic_verdict(const LieAlgebra &L, const QuadraticVerdict &v)
{
    if (!v.quadratic)
        return false;
    if (L.dim() == 0)
        return true;
    if (!theta_is_splitting(L, v.gr, v.theta))
        return false;
    if (!grading_is_additive(v.gr.graded.algebra))
        return false;
    const std::size_t n = v.gr.graded.dim_in(1);
    if (v.presentation.generators != n)
        return false;
    const std::size_t c = v.gr.graded.top_degree();
    HallBasis hall(n, c + 1);
    LieAlgebra F = free_nilpotent(n, c + 1);
    const GradedCheck check = graded_quadratic_check(v.gr.graded, hall, F);
    if (!check.ok)
        return false;
    std::vector<Vector> w;
    for (const auto &r : check.relations)
        w.push_back(free_to_wedge(hall, hall.from_vector(r)));
    const Subspace expected(wedge_dim(n), w);
    const Subspace given = v.presentation.relation_space();
    return expected.contains(given) && given.contains(expected);
}

QuadraticVerdict direct_summand_quadratic(const LieAlgebra &l1, const LieAlgebra &l2,
                                          const QuadraticVerdict &sum_verdict)
{
    const LieAlgebra L = direct_sum(l1, l2);
    if (!verify_quadratic_verdict(L, sum_verdict))
        throw Error("direct_summand_quadratic: the verdict for the sum does not verify");

    QuadraticVerdict v;
    v.gr = associated_graded(l1);
    const std::size_t n1 = l1.dim();
    if (n1 == 0) {
        v.quadratic = true;
        v.theta = Matrix(0, 0);
        return v;
    }
    // gr(iota_1): gr L1 -> gr L in adapted coordinates
    const auto deg1 = degrees_of(v.gr.graded);
    const auto deg = degrees_of(sum_verdict.gr.graded);
    Matrix G(L.dim(), n1);
    for (std::size_t b = 0; b < n1; ++b) {
        Vector e = zero_vector(L.dim());
        const Vector col = v.gr.lift.column(b);
        std::copy(col.begin(), col.end(), e.begin());
        const Vector coords = sum_verdict.gr.lift_inverse * e;
        for (std::size_t k = 0; k < coords.size(); ++k) {
            if (deg[k] < deg1[b] && coords[k] != 0)
                throw Error("internal: filtration not preserved by the inclusion");
            if (deg[k] == deg1[b])
                G(k, b) = coords[k];
        }
    }
    Matrix P1(n1, L.dim());
    for (std::size_t i = 0; i < n1; ++i)
        P1(i, i) = 1;
    v.theta = P1 * sum_verdict.theta * G;

    const std::size_t n = v.gr.graded.dim_in(1);
    const std::size_t c = v.gr.graded.top_degree();
    HallBasis hall(n, c + 1);
    LieAlgebra F = free_nilpotent(n, c + 1);
    const GradedCheck check = graded_quadratic_check(v.gr.graded, hall, F);
    if (!check.ok)
        throw Error("internal: summand of a quadratic graded algebra is not quadratic");
    v.presentation.generators = n;
    for (const auto &r : check.relations)
        v.presentation.relations.push_back(free_to_wedge(hall, hall.from_vector(r)));
    if (!theta_is_splitting(l1, v.gr, v.theta))
        throw Error("internal: composed theta does not split the filtration of the summand");
    v.quadratic = true;
    return v;
}

// ---------------------------------------------------------------------------

void CupDatum::validate() const
{
    if (pairing.size() != h1)
        throw Error("cup pairing must have h1 rows");
    for (std::size_t i = 0; i < h1; ++i) {
        if (pairing[i].size() != h1)
            throw Error("cup pairing must be h1 x h1");
        for (std::size_t j = 0; j < h1; ++j)
            if (pairing[i][j].size() != h2)
                throw Error("cup pairing entries must have length h2");
    }
    for (std::size_t i = 0; i < h1; ++i)
        for (std::size_t j = i; j < h1; ++j)
            for (std::size_t k = 0; k < h2; ++k)
                if (pairing[i][j][k] != -pairing[j][i][k])
                    throw Error("cup pairing on H^1 is not antisymmetric at (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
}

QuadraticPresentation malcev_model(const CupDatum &cd)
{
    cd.validate();
    QuadraticPresentation qp{cd.h1, {}};
    std::vector<Vector> rels;
    for (std::size_t k = 0; k < cd.h2; ++k) {
        Vector w = zero_vector(wedge_dim(cd.h1));
        for (std::size_t i = 0; i < cd.h1; ++i)
            for (std::size_t j = i + 1; j < cd.h1; ++j)
                w[wedge_index(cd.h1, i, j)] = cd.pairing[i][j][k];
        rels.push_back(std::move(w));
    }
    qp.relations = Subspace(wedge_dim(cd.h1), rels).basis();
    return qp;
}

std::vector<int> weight_decomposition(const QuadraticPresentation &qp, const Realization &r)
{
    const auto &grading = r.algebra.grading();
    if (!grading)
        throw Error("weight_decomposition: realization carries no grading");
    std::vector<int> weights;
    for (int d : *grading)
        weights.push_back(-d);
    for (std::size_t i = 0; i < r.algebra.dim(); ++i)
        for (std::size_t j = i + 1; j < r.algebra.dim(); ++j)
            for (const auto &t : r.algebra.stored_bracket(i, j))
                if (weights[t.index] != weights[i] + weights[j])
                    throw Error("internal: bracket does not add weights");
    for (std::size_t i = 0; i < qp.generators && i < weights.size(); ++i)
        if (weights[i] != -1)
            throw Error("internal: generator not in weight -1");
    return weights;
}

// ---------------------------------------------------------------------------

namespace {

void require_homogeneous(const LieAlgebra &u)
{
    if (!u.grading() || !grading_is_additive(u))
        throw Error("target must carry an additive grading");
    const auto &g = *u.grading();
    for (int w : g)
        if (w < 1)
            throw Error("target grading must be positive");
    const auto dims = lcs_dims(u);
    for (std::size_t k = 1; k <= dims.size(); ++k) {
        std::size_t tail = 0;
        for (int w : g)
            if (static_cast<std::size_t>(w) >= k)
                ++tail;
        if (dims[k - 1] != tail)
            throw Error("target is not generated in degree 1 (u is not isomorphic to gr u)");
    }
}

Vector truncate_weight(const LieAlgebra &u, std::span<const Scalar> v, int max_weight)
{
    Vector r(v.begin(), v.end());
    for (std::size_t i = 0; i < r.size(); ++i)
        if ((*u.grading())[i] > max_weight)
            r[i] = 0;
    return r;
}

bool in_weight_at_least(const LieAlgebra &u, std::span<const Scalar> v, int w)
{
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0 && (*u.grading())[i] < w)
            return false;
    return true;
}

CriterionResult run_criterion(const HallBasis &hall, const std::vector<FreeLieElement> &relations,
                              const LieAlgebra &u, const Matrix &rho2)
{
    const std::size_t n = hall.generators();
    if (rho2.rows() != u.dim() || rho2.cols() != n)
        throw Error("rho2 must be dim(u) x (number of generators)");
    std::vector<Vector> y2, y1;
    for (std::size_t i = 0; i < n; ++i) {
        y2.push_back(truncate_weight(u, rho2.column(i), 2));
        y1.push_back(truncate_weight(u, rho2.column(i), 1));
    }
    for (const auto &r : relations)
        if (!in_weight_at_least(u, evaluate_free(hall, r, y2, u), 3))
            throw Error("inconsistent rho2: a relation does not vanish modulo Gamma_3");

    CriterionResult out;
    auto attempt = [&](const std::vector<Vector> &initial, std::size_t level) {
        RelationLiftProblem problem;
        problem.target = &u;
        problem.hall = &hall;
        problem.relations = relations;
        problem.initial = initial;
        problem.correction_level = level;
        return solve_relation_lift(problem);
    };
    auto accept = [&](const RelationLiftResult &r, bool agrees) {
        out.lifts = true;
        out.agrees_mod_gamma3 = agrees;
        out.lift = Matrix::from_columns(r.images, u.dim());
    };
    auto first = attempt(y2, 3);
    if (first.status == LiftStatus::solved) {
        accept(first, true);
        return out;
    }
    auto second = attempt(y1, 2);
    if (second.status == LiftStatus::solved) {
        accept(second, false);
        return out;
    }
    out.obstruction_degree = second.failing_level;
    for (const auto &r : relations) {
        Vector img = evaluate_free(hall, r, y1, u);
        if (!is_zero(img)) {
            out.obstruction.push_back(std::move(img));
            out.failing_relations.push_back(hall.to_vector(r));
        }
    }
    if (second.status == LiftStatus::undecided && out.obstruction.empty())
        throw Error("lift_representation_criterion: staged solve undecided");
    return out;
}

} // namespace

CriterionResult lift_representation_criterion(const QuadraticPresentation &source, const LieAlgebra &target,
                                              const Matrix &rho2)
{
    require_homogeneous(target);
    if (source.generators == 0)
        throw Error("source presentation has no generators");
    HallBasis hall(source.generators, 2);
    std::vector<FreeLieElement> relations;
    const Subspace source_relations = source.relation_space();
    for (const auto &w : source_relations.basis())
        relations.push_back(wedge_to_free(hall, w));
    return run_criterion(hall, relations, target, rho2);
}

CriterionResult lift_representation_criterion(const LieAlgebra &source, const LieAlgebra &target,
                                              const Matrix &rho2)
{
    require_homogeneous(target);
    const QuadraticVerdict qv = is_quadratically_presented(source);
    if (qv.quadratic)
        return lift_representation_criterion(qv.presentation, target, rho2);
    const std::size_t n = qv.gr.graded.dim_in(1);
    const std::size_t c = std::max({qv.gr.graded.top_degree(), nilpotency_class(target), std::size_t{2}});
    HallBasis hall(n, c);
    std::vector<Vector> gens;
    for (std::size_t i = 0; i < n; ++i)
        gens.push_back(qv.gr.lift.column(i));
    const Matrix E = evaluation_matrix(hall, gens, source);
    std::vector<FreeLieElement> relations;
    for (const auto &k : kernel_basis(E))
        relations.push_back(hall.from_vector(k));
    return run_criterion(hall, relations, target, rho2);
}

// ---------------------------------------------------------------------------

OneClassLift lift_one_class(const GroupPresentation &p, const LieAlgebra &target, const Assignment &assignment,
                            std::size_t level)
{
    if (level < 1)
        throw Error("lift_one_class: level must be >= 1");
    const auto series = lower_central_series(target);
    if (level < series.size() && series[level].dim() != 0)
        throw Error("lift_one_class: Gamma_{k+1} of the target must vanish");
    const Subspace center = level - 1 < series.size() ? series[level - 1].span : Subspace(target.dim());
    const std::size_t dim = target.dim();
    const std::size_t zdim = center.dim();
    const std::size_t g = p.generators.size();

    SemidirectGroup group(target);
    for (const auto &name : p.generators) {
        auto it = assignment.find(name);
        if (it == assignment.end())
            throw Error("lift_one_class: no image for generator '" + name + "'");
        if (!check_automorphism(target, it->second.aut))
            throw Error("lift_one_class: automorphism part of '" + name + "' is not an automorphism");
    }

    OneClassLift out;
    const Matrix id = Matrix::identity(dim);
    std::vector<Vector> deltas;
    for (std::size_t r = 0; r < p.relators.size(); ++r) {
        auto value = evaluate_word(group, p, assignment, p.relators[r]);
        if (value.aut != id || !center.contains(value.log))
            throw Error("lift_one_class: assignment is not a representation modulo Gamma_k (relator " +
                        std::to_string(r) + ")");
        out.defects.push_back({r, value.log, value.aut - id});
        deltas.push_back(value.log);
    }

    const Matrix Zb = Matrix::from_columns(center.basis(), dim);
    std::vector<Matrix> inv_aut(g);
    for (std::size_t j = 0; j < g; ++j)
        inv_aut[j] = *inverse(assignment.at(p.generators[j]).aut);

    // relator value changes by sum over letters of +-(prefix automorphism) c_j
    Matrix system(p.relators.size() * dim, g * zdim);
    Vector rhs(p.relators.size() * dim);
    for (std::size_t r = 0; r < p.relators.size(); ++r) {
        Matrix prefix = id;
        std::vector<Matrix> blocks(g, Matrix(dim, dim));
        for (const auto &l : p.relators[r]) {
            const Matrix &A = assignment.at(p.generators[l.generator]).aut;
            if (l.exponent > 0) {
                blocks[l.generator] = blocks[l.generator] + prefix;
                prefix = prefix * A;
            } else {
                prefix = prefix * inv_aut[l.generator];
                blocks[l.generator] = blocks[l.generator] - prefix;
            }
        }
        for (std::size_t j = 0; j < g; ++j) {
            const Matrix contrib = blocks[j] * Zb;
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t k = 0; k < zdim; ++k)
                    system(r * dim + i, j * zdim + k) = contrib(i, k);
        }
        for (std::size_t i = 0; i < dim; ++i)
            rhs[r * dim + i] = -deltas[r][i];
    }

    auto sol = solve_affine(system, rhs);
    if (sol) {
        Assignment lifted = assignment;
        for (std::size_t j = 0; j < g; ++j) {
            Vector c = zero_vector(dim);
            for (std::size_t k = 0; k < zdim; ++k)
                axpy(c, sol->particular[j * zdim + k], center.basis()[k]);
            auto &e = lifted.at(p.generators[j]);
            e.log = add(e.log, c); // c is central, so (c, 1)(n, A) = (c + n, A)
        }
        if (!check_representation(group, p, lifted).ok())
            throw Error("internal: corrected assignment is not a representation");
        out.lifted = true;
        out.assignment = std::move(lifted);
        return out;
    }
    std::vector<Vector> image_cols;
    for (std::size_t c = 0; c < system.cols(); ++c)
        image_cols.push_back(system.column(c));
    const Subspace image(system.rows(), image_cols);
    const Vector left = image.reduce(negate(rhs));
    for (std::size_t r = 0; r < p.relators.size(); ++r)
        out.unresolved.emplace_back(left.begin() + r * dim, left.begin() + (r + 1) * dim);
    return out;
}

} // namespace malcev
