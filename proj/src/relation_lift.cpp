#include "malcev/relation_lift.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>

namespace malcev {

namespace {

/// Values (and optionally directional derivatives) of Hall words at images.
class WordEvaluator {
  public:
    WordEvaluator(const HallBasis &hall, const LieAlgebra &L, const std::vector<Vector> &images,
                  const std::vector<Vector> *direction = nullptr)
        : hall_(hall), L_(L), images_(images), direction_(direction), value_(hall.size()),
          deriv_(direction ? hall.size() : 0)
    {
    }

    const Vector &value(std::size_t w)
    {
        if (!value_[w]) {
            const HallWord &hw = hall_.word(w);
            if (hw.is_letter())
                value_[w] = images_.at(hw.generator);
            else
                value_[w] = L_.bracket(value(hw.left), value(hw.right));
        }
        return *value_[w];
    }

    const Vector &derivative(std::size_t w)
    {
        if (!deriv_[w]) {
            const HallWord &hw = hall_.word(w);
            if (hw.is_letter())
                deriv_[w] = (*direction_).at(hw.generator);
            else
                deriv_[w] = add(L_.bracket(derivative(hw.left), value(hw.right)),
                                L_.bracket(value(hw.left), derivative(hw.right)));
        }
        return *deriv_[w];
    }

    Vector value(const FreeLieElement &x)
    {
        Vector r = zero_vector(L_.dim());
        for (const auto &[w, c] : x.coords)
            axpy(r, c, value(w));
        return r;
    }

    Vector derivative(const FreeLieElement &x)
    {
        Vector r = zero_vector(L_.dim());
        for (const auto &[w, c] : x.coords)
            axpy(r, c, derivative(w));
        return r;
    }

  private:
    const HallBasis &hall_;
    const LieAlgebra &L_;
    const std::vector<Vector> &images_;
    const std::vector<Vector> *direction_;
    std::vector<std::optional<Vector>> value_;
    std::vector<std::optional<Vector>> deriv_;
};

struct Direction {
    std::vector<Vector> u;
    std::size_t filtration;
};

} // namespace

Vector evaluate_free(const HallBasis &hall, const FreeLieElement &x, const std::vector<Vector> &images,
                     const LieAlgebra &L)
{
    if (images.size() != hall.generators())
        throw Error("evaluate_free: need one image per generator");
    for (const auto &v : images)
        if (v.size() != L.dim())
            throw Error("evaluate_free: image has the wrong length");
    WordEvaluator ev(hall, L, images);
    return ev.value(x);
}

Matrix evaluation_matrix(const HallBasis &hall, const std::vector<Vector> &images, const LieAlgebra &L)
{
    if (images.size() != hall.generators())
        throw Error("evaluation_matrix: need one image per generator");
    WordEvaluator ev(hall, L, images);
    Matrix m(L.dim(), hall.size());
    for (std::size_t w = 0; w < hall.size(); ++w) {
        const Vector &v = ev.value(w);
        for (std::size_t i = 0; i < L.dim(); ++i)
            m(i, w) = v[i];
    }
    return m;
}

RelationLiftResult solve_relation_lift(const RelationLiftProblem &p)
{
    if (!p.target || !p.hall)
        throw Error("solve_relation_lift: missing target or Hall basis");
    const LieAlgebra &T = *p.target;
    const HallBasis &hall = *p.hall;
    const std::size_t n = p.initial.size();
    if (hall.generators() != n)
        throw Error("solve_relation_lift: generator count mismatch");
    for (const auto &v : p.initial)
        if (v.size() != T.dim())
            throw Error("solve_relation_lift: image has the wrong length");
    if (p.correction_level < 1)
        throw Error("solve_relation_lift: correction level must be >= 1");

    std::size_t m_min = std::numeric_limits<std::size_t>::max();
    for (const auto &r : p.relations)
        for (const auto &[w, c] : r.coords) {
            if (hall.degree(w) == 1)
                throw Error("solve_relation_lift: relations must lie in degree >= 2");
            m_min = std::min(m_min, hall.degree(w));
        }

    RelationLiftResult result;
    result.images = p.initial;

    const AssociatedGraded ag = associated_graded(T);
    const std::size_t top = ag.graded.top_degree();
    std::vector<std::size_t> deg;
    for (std::size_t d = 1; d <= top; ++d)
        for (std::size_t j = 0; j < ag.graded.dim_in(d); ++j)
            deg.push_back(d);

    auto adapted = [&](const Vector &v) { return ag.lift_inverse * v; };
    auto lowest = [&](const std::vector<Vector> &u) {
        std::size_t best = top + 1;
        for (const auto &v : u) {
            Vector c = adapted(v);
            for (std::size_t b = 0; b < c.size(); ++b)
                if (c[b] != 0) {
                    best = std::min(best, deg[b]);
                    break; // adapted coordinates are ordered by degree
                }
        }
        return best;
    };
    auto residuals = [&](const std::vector<Vector> &y) {
        WordEvaluator ev(hall, T, y);
        std::vector<Vector> out;
        for (const auto &r : p.relations)
            out.push_back(adapted(ev.value(r)));
        return out;
    };
    auto block = [&](const Vector &coords, std::size_t k) {
        Vector b;
        for (std::size_t j = 0; j < coords.size(); ++j)
            if (deg[j] == k)
                b.push_back(coords[j]);
        return b;
    };
    auto clean_below = [&](const std::vector<Vector> &res, std::size_t k) {
        for (const auto &c : res)
            for (std::size_t j = 0; j < c.size(); ++j)
                if (deg[j] < k && c[j] != 0)
                    return false;
        return true;
    };

    if (p.relations.empty() || m_min == std::numeric_limits<std::size_t>::max()) {
        result.status = LiftStatus::solved;
        return result;
    }

    std::vector<Direction> family;
    std::vector<Vector> &y = result.images;

    for (std::size_t k = 1; k <= top; ++k) {
        if (k + 1 >= m_min) {
            const std::size_t d = k + 1 - m_min;
            if (d >= p.correction_level && d >= 1 && d <= top)
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t b = 0; b < deg.size(); ++b)
                        if (deg[b] == d) {
                            Direction dir{std::vector<Vector>(n, zero_vector(T.dim())), d};
                            dir.u[i] = ag.lift.column(b);
                            family.push_back(std::move(dir));
                        }
        }
        std::size_t fmin = top + 1;
        for (const auto &dir : family)
            fmin = std::min(fmin, dir.filtration);
        const bool exact_here = family.empty() || 2 * fmin + m_min - 2 > k;
        if (!exact_here)
            result.linear_throughout = false;

        auto res = residuals(y);
        if (!clean_below(res, k)) {
            if (result.linear_throughout)
                throw Error("internal: lower levels reopened during a linear stage");
            result.status = LiftStatus::undecided;
            result.failing_level = k;
            return result;
        }
        Vector constant;
        for (const auto &c : res) {
            Vector b = block(c, k);
            constant.insert(constant.end(), b.begin(), b.end());
        }
        if (constant.empty())
            continue;

        Matrix A(constant.size(), family.size());
        for (std::size_t s = 0; s < family.size(); ++s) {
            WordEvaluator ev(hall, T, y, &family[s].u);
            std::size_t row = 0;
            for (const auto &r : p.relations) {
                Vector b = block(adapted(ev.derivative(r)), k);
                for (const auto &x : b)
                    A(row++, s) = x;
            }
        }
        auto sol = solve_affine(A, negate(constant));
        if (!sol) {
            result.status = result.linear_throughout ? LiftStatus::obstructed : LiftStatus::undecided;
            result.failing_level = k;
            for (const auto &c : res)
                result.residual.push_back(block(c, k));
            return result;
        }
        for (std::size_t s = 0; s < family.size(); ++s)
            if (sol->particular[s] != 0)
                for (std::size_t i = 0; i < n; ++i)
                    axpy(y[i], sol->particular[s], family[s].u[i]);
        std::vector<Direction> next;
        for (const auto &kv : sol->kernel) {
            std::vector<Vector> u(n, zero_vector(T.dim()));
            for (std::size_t s = 0; s < family.size(); ++s)
                if (kv[s] != 0)
                    for (std::size_t i = 0; i < n; ++i)
                        axpy(u[i], kv[s], family[s].u[i]);
            const std::size_t f = lowest(u);
            if (f <= top)
                next.push_back({std::move(u), f});
        }
        family = std::move(next);

        if (!clean_below(residuals(y), k + 1)) {
            if (result.linear_throughout)
                throw Error("internal: linear stage left a residual");
            result.status = LiftStatus::undecided;
            result.failing_level = k;
            return result;
        }
    }

    for (const auto &c : residuals(y))
        if (!is_zero(c)) {
            if (result.linear_throughout)
                throw Error("internal: staged solution does not verify");
            result.status = LiftStatus::undecided;
            return result;
        }
    result.status = LiftStatus::solved;
    for (auto &dir : family)
        result.free_directions.push_back(std::move(dir.u));
    return result;
}

} // namespace malcev
