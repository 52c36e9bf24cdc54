#include "malcev/dgla_mc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace malcev {

namespace {

int koszul(std::size_t p, std::size_t q) { return (p * q) % 2 ? -1 : 1; }

std::string where(std::size_t p, std::size_t i) { return "e" + std::to_string(i) + "(deg " + std::to_string(p) + ")"; }

Scalar inverse_factorial(std::size_t k)
{
    Integer f = 1;
    for (std::size_t i = 2; i <= k; ++i)
        f *= static_cast<unsigned long>(i);
    return Scalar(Integer(1), f);
}

} // namespace

FiniteDGLA FiniteDGLA::with_dims(std::vector<std::size_t> dims)
{
    FiniteDGLA L;
    L.dims = std::move(dims);
    if (L.dims.empty())
        throw Error("DGLA needs at least degree 0");
    for (std::size_t n = 0; n + 1 < L.dims.size(); ++n)
        L.d.emplace_back(L.dims[n + 1], L.dims[n]);
    L.resize_table();
    return L;
}

void FiniteDGLA::set(std::size_t p, std::size_t i, std::size_t q, std::size_t j, const Vector &value)
{
    if (p == q && i == j && p % 2 == 0 && !is_zero(value))
        throw Error("DGLA: [a, a] must vanish in even degree");
    set_product(p, i, q, j, value, -koszul(p, q));
}

std::vector<std::string> FiniteDGLA::violations() const
{
    std::vector<std::string> out;
    try {
        check_shapes();
        check_table();
    } catch (const Error &e) {
        return {e.what()};
    }
    const std::size_t D = top_degree();
    for (std::size_t n = 0; n + 2 <= D; ++n)
        if (!(d[n + 1] * d[n]).is_zero())
            out.push_back("d^2 != 0 on degree " + std::to_string(n));

    for (std::size_t p = 0; p <= D; ++p)
        for (std::size_t q = 0; p + q <= D; ++q)
            for (std::size_t i = 0; i < dims[p]; ++i)
                for (std::size_t j = 0; j < dims[q]; ++j) {
                    const Vector &ab = basis_product(p, i, q, j);
                    if (ab != scale(basis_product(q, j, p, i), -koszul(p, q)))
                        out.push_back("graded antisymmetry fails for " + where(p, i) + ", " + where(q, j));
                    if (p + q + 1 <= D) {
                        Vector lhs = d[p + q] * ab;
                        Vector rhs = multiply(p + 1, d[p].column(i), q, unit_vector(dims[q], j));
                        axpy(rhs, koszul(p, 1), multiply(p, unit_vector(dims[p], i), q + 1, d[q].column(j)));
                        if (lhs != rhs)
                            out.push_back("Leibniz fails for " + where(p, i) + ", " + where(q, j));
                    }
                }

    for (std::size_t p = 0; p <= D; ++p)
        for (std::size_t q = 0; p + q <= D; ++q)
            for (std::size_t r = 0; p + q + r <= D; ++r)
                for (std::size_t i = 0; i < dims[p]; ++i)
                    for (std::size_t j = 0; j < dims[q]; ++j)
                        for (std::size_t k = 0; k < dims[r]; ++k) {
                            const Vector a = unit_vector(dims[p], i), b = unit_vector(dims[q], j),
                                         c = unit_vector(dims[r], k);
                            Vector s = scale(multiply(p, a, q + r, basis_product(q, j, r, k)), koszul(p, r));
                            axpy(s, koszul(q, p), multiply(q, b, r + p, basis_product(r, k, p, i)));
                            axpy(s, koszul(r, q), multiply(r, c, p + q, basis_product(p, i, q, j)));
                            if (!is_zero(s))
                                out.push_back("graded Jacobi fails for " + where(p, i) + ", " + where(q, j) + ", " +
                                              where(r, k));
                        }
    return out;
}

void FiniteDGLA::validate() const
{
    auto v = violations();
    if (!v.empty())
        throw Error("invalid DGLA: " + v.front());
}

FiniteDGLA tensor_dgla(const FiniteDGA &A, const LieAlgebra &N, std::size_t max_degree)
{
    A.validate();
    if (!check_jacobi(N).empty())
        throw Error("tensor_dgla: coefficient algebra fails Jacobi");
    if (!is_nilpotent(N))
        throw Error("tensor_dgla: coefficient algebra is not nilpotent");
    const std::size_t n = N.dim();
    const std::size_t D = std::min(A.top_degree(), max_degree);
    std::vector<std::size_t> dims;
    for (std::size_t p = 0; p <= D; ++p)
        dims.push_back(A.dims[p] * n);
    FiniteDGLA L = FiniteDGLA::with_dims(dims);
    for (std::size_t p = 0; p < D; ++p)
        for (std::size_t r = 0; r < A.dims[p + 1]; ++r)
            for (std::size_t c = 0; c < A.dims[p]; ++c)
                if (A.d[p](r, c) != 0)
                    for (std::size_t m = 0; m < n; ++m)
                        L.d[p](r * n + m, c * n + m) = A.d[p](r, c);
    for (std::size_t p = 0; p <= D; ++p)
        for (std::size_t q = 0; p + q <= D; ++q)
            for (std::size_t i = 0; i < A.dims[p]; ++i)
                for (std::size_t j = 0; j < A.dims[q]; ++j) {
                    const Vector &ab = A.basis_product(p, i, q, j);
                    if (is_zero(ab))
                        continue;
                    for (std::size_t m = 0; m < n; ++m)
                        for (std::size_t m2 = 0; m2 < n; ++m2) {
                            const Vector mn = N.basis_bracket(m, m2);
                            Vector &out = L.table[p][q][(i * n + m) * dims[q] + (j * n + m2)];
                            for (std::size_t s = 0; s < ab.size(); ++s)
                                if (ab[s] != 0)
                                    for (std::size_t t = 0; t < n; ++t)
                                        if (mn[t] != 0)
                                            out[s * n + t] += ab[s] * mn[t];
                        }
                }
    // A graded commutative and N Lie make the bracket a DGLA; only the shapes need checking
    L.check_shapes();
    L.check_table();
    return L;
}

FiniteDGLA augment(const FiniteDGLA &L)
{
    L.check_shapes();
    const std::size_t D = L.top_degree();
    std::vector<std::size_t> dims = L.dims;
    if (D < 1)
        throw Error("augment: needs a degree-1 component");
    const std::size_t delta = dims[1]++;
    FiniteDGLA out = FiniteDGLA::with_dims(dims);
    auto pad = [&](std::size_t deg, const Vector &v) {
        Vector r = v;
        if (deg == 1)
            r.push_back(0);
        return r;
    };
    for (std::size_t p = 0; p <= D; ++p)
        for (std::size_t q = 0; p + q <= D; ++q)
            for (std::size_t i = 0; i < L.dims[p]; ++i)
                for (std::size_t j = 0; j < L.dims[q]; ++j)
                    out.table[p][q][i * dims[q] + j] = pad(p + q, L.basis_product(p, i, q, j));
    // [delta, a] = da, [a, delta] = -(-1)^{|a|} da
    for (std::size_t p = 0; p + 1 <= D; ++p)
        for (std::size_t i = 0; i < L.dims[p]; ++i)
            out.set_product(1, delta, p, i, pad(p + 1, L.d[p].column(i)), -koszul(1, p));
    return out;
}

LieAlgebra degree_zero_algebra(const FiniteDGLA &L)
{
    const std::size_t n = L.dims.at(0);
    LieAlgebra g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            g.set_bracket(i, j, L.basis_product(0, i, 0, j));
    return g;
}

Vector mc_residual(const FiniteDGLA &L, const MCElement &x)
{
    if (L.top_degree() < 1 || x.size() != L.dims[1])
        throw Error("mc_residual: element is not of degree 1");
    if (L.top_degree() < 2)
        return {};
    Vector r = L.differential(1, x);
    axpy(r, ratio(1, 2), L.bracket(1, x, 1, x));
    return r;
}

Vector mc_residual_augmented(const FiniteDGLA &L, const MCElement &x)
{
    if (L.top_degree() < 2 || x.size() != L.dims[1])
        throw Error("mc_residual_augmented: needs degree 2 and an element of degree 1");
    const FiniteDGLA aug = augment(L);
    Vector v = x;
    v.push_back(1);
    return scale(aug.bracket(1, v, 1, v), ratio(1, 2));
}

bool is_mc(const FiniteDGLA &L, const MCElement &x) { return is_zero(mc_residual(L, x)); }

namespace {

void check_gauge_input(const FiniteDGLA &L, const GaugeElement &alpha, const MCElement &x)
{
    if (L.top_degree() < 1 || alpha.size() != L.dims[0] || x.size() != L.dims[1])
        throw Error("gauge: element has the wrong degree or length");
}

// ad_alpha^k w for k = 0, 1, ... until zero
std::vector<Vector> ad_powers(const FiniteDGLA &L, const GaugeElement &alpha, Vector w)
{
    std::vector<Vector> out;
    while (!is_zero(w)) {
        if (out.size() > L.dims[1] + 1)
            throw Error("gauge: ad_alpha is not nilpotent on degree 1");
        out.push_back(w);
        w = L.bracket(0, alpha, 1, w);
    }
    return out;
}

// ad_alpha(x + delta) = [alpha, x] - d alpha
Vector first_step(const FiniteDGLA &L, const GaugeElement &alpha, const MCElement &x)
{
    Vector w = L.bracket(0, alpha, 1, x);
    axpy(w, -1, L.differential(0, alpha));
    return w;
}

} // namespace

MCElement gauge(const FiniteDGLA &L, const GaugeElement &alpha, const MCElement &x)
{
    check_gauge_input(L, alpha, x);
    Vector out = x;
    const auto powers = ad_powers(L, alpha, first_step(L, alpha, x));
    for (std::size_t k = 0; k < powers.size(); ++k)
        axpy(out, inverse_factorial(k + 1), powers[k]);
    return out;
}

Vector gauge_derivative(const FiniteDGLA &L, const GaugeElement &alpha, const MCElement &x, const GaugeElement &u)
{
    check_gauge_input(L, alpha, x);
    if (u.size() != L.dims[0])
        throw Error("gauge_derivative: direction has the wrong length");
    // sum_k 1/k! sum_{i+j=k-1} ad_alpha^i ad_u P_j with P_0 = x + delta,
    // P_j = ad_alpha^j (x + delta)
    const auto P = ad_powers(L, alpha, first_step(L, alpha, x)); // P[j] = P_{j+1}
    Vector out = zero_vector(L.dims[1]);
    for (std::size_t j = 0; j <= P.size(); ++j) {
        Vector w = j == 0 ? first_step(L, u, x) : L.bracket(0, u, 1, P[j - 1]);
        const auto chain = ad_powers(L, alpha, std::move(w));
        for (std::size_t i = 0; i < chain.size(); ++i)
            axpy(out, inverse_factorial(i + j + 1), chain[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------

CoefficientDGLA::CoefficientDGLA(FiniteDGA A, LieAlgebra N, std::size_t max_degree)
    : A_(std::move(A)), N_(std::move(N)), L_(tensor_dgla(A_, N_, max_degree)), H_(A_), gr_(associated_graded(N_))
{
    if (max_degree < 2)
        throw Error("CoefficientDGLA: need degrees up to 2");
    gr_dims_ = gr_.graded.degree_dims;
    std::size_t off = 0;
    for (auto g : gr_dims_) {
        gr_offsets_.push_back(off);
        off += g;
    }
}

Vector CoefficientDGLA::gr_lift(std::size_t k, std::size_t b) const
{
    if (k < 1 || k > levels() || b >= gr_dim(k))
        throw Error("gr_lift: index out of range");
    return gr_.lift.column(gr_offsets_[k - 1] + b);
}

Vector CoefficientDGLA::gr_component(std::size_t p, std::span<const Scalar> v, std::size_t k) const
{
    const std::size_t n = N_.dim(), a = A_.dims.at(p), g = gr_dim(k), off = gr_offsets_[k - 1];
    if (v.size() != a * n)
        throw Error("gr_component: element has the wrong length");
    Vector out = zero_vector(a * g);
    for (std::size_t i = 0; i < a; ++i) {
        Vector c = gr_.lift_inverse * v.subspan(i * n, n);
        for (std::size_t b = 0; b < g; ++b)
            out[i * g + b] = c[off + b];
    }
    return out;
}

Vector CoefficientDGLA::embed_gr(std::size_t p, std::span<const Scalar> c, std::size_t k) const
{
    const std::size_t n = N_.dim(), a = A_.dims.at(p), g = gr_dim(k), off = gr_offsets_[k - 1];
    if (c.size() != a * g)
        throw Error("embed_gr: coordinates have the wrong length");
    Vector out = zero_vector(a * n);
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t b = 0; b < g; ++b)
            if (c[i * g + b] != 0)
                for (std::size_t m = 0; m < n; ++m)
                    out[i * n + m] += c[i * g + b] * gr_.lift(m, off + b);
    return out;
}

std::size_t CoefficientDGLA::filtration(std::size_t p, std::span<const Scalar> v) const
{
    const std::size_t n = N_.dim(), a = A_.dims.at(p);
    if (v.size() != a * n)
        throw Error("filtration: element has the wrong length");
    std::size_t best = levels() + 1;
    for (std::size_t i = 0; i < a; ++i) {
        Vector c = gr_.lift_inverse * v.subspan(i * n, n);
        for (std::size_t k = 1; k <= levels(); ++k)
            for (std::size_t b = 0; b < gr_dim(k); ++b)
                if (c[gr_offsets_[k - 1] + b] != 0)
                    best = std::min(best, k);
    }
    return best;
}

Vector CoefficientDGLA::pure(std::size_t p, std::span<const Scalar> a, std::span<const Scalar> m) const
{
    const std::size_t n = N_.dim();
    if (a.size() != A_.dims.at(p) || m.size() != n)
        throw Error("pure: factor has the wrong length");
    Vector out = zero_vector(a.size() * n);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t t = 0; t < n; ++t)
            out[i * n + t] = a[i] * m[t];
    return out;
}

// ---------------------------------------------------------------------------

MCSolveResult mc_solve(const CoefficientDGLA &C, const std::optional<MCElement> &seed)
{
    const FiniteDGLA &L = C.dgla();
    const FiniteDGA &A = C.dga();
    if (seed && seed->size() != L.dims[1])
        throw Error("mc_solve: seed has the wrong length");
    MCSolveResult out;
    out.element = zero_vector(L.dims[1]);
    Vector &x = out.element;
    const std::size_t z1 = C.cohomology().cocycle_basis(1).size();
    const std::size_t a1 = A.dims[1];

    for (std::size_t k = 1; k <= C.levels(); ++k) {
        const std::size_t g = C.gr_dim(k);
        MCStage stage;
        stage.level = k;
        stage.gr_dim = g;
        stage.family_dim = z1 * g;
        const Vector s = seed ? C.gr_component(1, *seed, k) : zero_vector(a1 * g);

        const Vector R = mc_residual(L, x);
        if (C.filtration(2, R) < k)
            throw Error("internal: MC residual reopened a solved level");
        const Vector Rk = C.gr_component(2, R, k);
        const Vector dS = [&] {
            Vector v = zero_vector(A.dims[2] * g);
            for (std::size_t b = 0; b < g; ++b) {
                Vector sb(a1);
                for (std::size_t i = 0; i < a1; ++i)
                    sb[i] = s[i * g + b];
                Vector db = A.d[1] * sb;
                for (std::size_t i = 0; i < db.size(); ++i)
                    v[i * g + b] = db[i];
            }
            return v;
        }();

        Vector u = s;
        for (std::size_t b = 0; b < g; ++b) {
            Vector hb(A.dims[2]), target(A.dims[2]);
            for (std::size_t i = 0; i < A.dims[2]; ++i) {
                hb[i] = Rk[i * g + b];
                target[i] = -Rk[i * g + b] - dS[i * g + b];
            }
            Vector cls = C.cohomology().class_of(2, hb);
            stage.obstructed |= !is_zero(cls);
            stage.obstruction.push_back(std::move(cls));
            if (stage.obstructed)
                continue;
            auto prim = C.cohomology().primitive(2, target);
            if (!prim)
                throw Error("internal: exact residual without a primitive");
            for (std::size_t i = 0; i < a1; ++i)
                u[i * g + b] += (*prim)[i];
        }
        if (stage.obstructed) {
            out.stages.push_back(std::move(stage));
            return out;
        }
        stage.correction = C.embed_gr(1, u, k);
        x = add(x, stage.correction);
        out.stages.push_back(std::move(stage));
    }
    if (!is_mc(L, x))
        throw Error("internal: staged MC solution does not verify");
    out.solved = true;
    return out;
}

// ---------------------------------------------------------------------------

SmallExtension make_small_extension(const LieAlgebra &N, const LieAlgebra &M, const Matrix &projection)
{
    if (projection.rows() != M.dim() || projection.cols() != N.dim())
        throw Error("small extension: projection has the wrong shape");
    if (!is_homomorphism(N, M, projection))
        throw Error("small extension: projection is not a Lie map");
    if (rank(projection) != M.dim())
        throw Error("small extension: projection is not onto");
    SmallExtension e{N, M, projection, kernel_basis(projection), Matrix(N.dim(), M.dim())};
    for (const auto &v : e.kernel)
        for (std::size_t i = 0; i < N.dim(); ++i)
            if (!is_zero(N.bracket(unit_vector(N.dim(), i), v)))
                throw Error("small extension: kernel is not central");
    for (std::size_t j = 0; j < M.dim(); ++j) {
        auto sol = solve_affine(projection, unit_vector(M.dim(), j));
        for (std::size_t i = 0; i < N.dim(); ++i)
            e.section(i, j) = sol->particular[i];
    }
    return e;
}

SmallExtension lcs_extension(const LieAlgebra &N, std::size_t k)
{
    if (k < 1)
        throw Error("lcs_extension: k must be >= 1");
    const auto series = lower_central_series(N);
    auto term = [&](std::size_t m) { return m - 1 < series.size() ? series[m - 1].span : Subspace(N.dim()); };
    Quotient big = quotient(N, term(k + 1));
    Quotient small = quotient(N, term(k));
    Matrix p(small.algebra.dim(), big.algebra.dim());
    for (std::size_t j = 0; j < big.kept.size(); ++j) {
        Vector img = small.projection.column(big.kept[j]);
        for (std::size_t i = 0; i < img.size(); ++i)
            p(i, j) = img[i];
    }
    return make_small_extension(big.algebra, small.algebra, p);
}

Vector tensor_map(std::size_t a_dim, const Matrix &f, std::span<const Scalar> v)
{
    const std::size_t n = f.cols(), m = f.rows();
    if (v.size() != a_dim * n)
        throw Error("tensor_map: element has the wrong length");
    Vector out = zero_vector(a_dim * m);
    for (std::size_t i = 0; i < a_dim; ++i) {
        Vector block = f * v.subspan(i * n, n);
        std::copy(block.begin(), block.end(), out.begin() + static_cast<std::ptrdiff_t>(i * m));
    }
    return out;
}

ObstructionClass obstruction_class(const FiniteDGA &A, const SmallExtension &e, const MCElement &x,
                                   const std::optional<Vector> &lift, std::size_t max_degree)
{
    if (std::min(A.top_degree(), max_degree) < 2)
        throw Error("obstruction_class: needs degree 2");
    const FiniteDGLA LM = tensor_dgla(A, e.M, max_degree);
    const FiniteDGLA LN = tensor_dgla(A, e.N, max_degree);
    if (x.size() != LM.dims[1] || !is_mc(LM, x))
        throw Error("obstruction_class: x is not an MC element over the quotient");
    const std::size_t a1 = A.dims[1], a2 = A.dims[2];
    ObstructionClass out;
    if (lift) {
        if (lift->size() != LN.dims[1] || tensor_map(a1, e.projection, *lift) != x)
            throw Error("obstruction_class: the given lift does not map to x");
        out.lift = *lift;
    } else {
        out.lift = tensor_map(a1, e.section, x);
    }
    out.h = mc_residual(LN, out.lift);
    if (!is_zero(tensor_map(a2, e.projection, out.h)))
        throw Error("internal: obstruction escapes the kernel");

    const Cohomology H(A);
    const std::size_t n = e.N.dim(), r = e.kernel.size();
    const Matrix K = Matrix::from_columns(e.kernel, n);
    std::vector<Vector> per(r, zero_vector(a2));
    for (std::size_t i = 0; i < a2; ++i) {
        auto sol = solve_affine(K, std::span<const Scalar>(out.h).subspan(i * n, n));
        if (!sol)
            throw Error("internal: obstruction block outside the kernel");
        for (std::size_t t = 0; t < r; ++t)
            per[t][i] = sol->particular[t];
    }
    for (const auto &v : per) {
        out.classes.push_back(H.class_of(2, v));
        out.zero = out.zero && is_zero(out.classes.back());
    }
    return out;
}

std::optional<MCElement> lift_mc(const FiniteDGA &A, const SmallExtension &e, const MCElement &x,
                                 std::size_t max_degree)
{
    const ObstructionClass oc = obstruction_class(A, e, x, std::nullopt, max_degree);
    if (!oc.zero)
        return std::nullopt;
    const Cohomology H(A);
    const std::size_t n = e.N.dim(), a1 = A.dims[1], a2 = A.dims[2];
    Vector z = zero_vector(a1 * n);
    const Matrix K = Matrix::from_columns(e.kernel, n);
    for (std::size_t t = 0; t < e.kernel.size(); ++t) {
        Vector ht(a2);
        for (std::size_t i = 0; i < a2; ++i) {
            auto sol = solve_affine(K, std::span<const Scalar>(oc.h).subspan(i * n, n));
            ht[i] = -sol->particular[t];
        }
        auto prim = H.primitive(2, ht);
        if (!prim)
            throw Error("internal: zero class without a primitive");
        for (std::size_t i = 0; i < a1; ++i)
            for (std::size_t m = 0; m < n; ++m)
                z[i * n + m] += (*prim)[i] * e.kernel[t][m];
    }
    Vector lifted = add(oc.lift, z);
    if (!is_mc(tensor_dgla(A, e.N, max_degree), lifted))
        throw Error("internal: lift does not satisfy MC");
    return lifted;
}

// ---------------------------------------------------------------------------

std::string to_string(Decision d)
{
    switch (d) {
    case Decision::yes:
        return "yes";
    case Decision::no:
        return "no";
    default:
        return "undecided";
    }
}

GaugeDecision gauge_equivalent(const CoefficientDGLA &C, const MCElement &x, const MCElement &y)
{
    const FiniteDGLA &L = C.dgla();
    if (x.size() != L.dims[1] || y.size() != L.dims[1] || !is_mc(L, x) || !is_mc(L, y))
        throw Error("gauge_equivalent: both inputs must be MC elements");
    struct Direction {
        Vector u;
        std::size_t f;
        bool closed;
    };
    auto closed = [&](const Vector &u) { return is_zero(L.differential(0, u)); };
    const std::size_t a0 = C.dga().dims[0];

    GaugeDecision out;
    out.alpha = zero_vector(L.dims[0]);
    std::vector<Direction> family;

    auto give_up = [&](std::size_t level, Vector residual) {
        if (out.linear_throughout)
            throw Error("internal: linear gauge stage left a residual");
        out.decision = Decision::undecided;
        out.failing_level = level;
        out.residual = std::move(residual);
        for (const auto &d : family)
            out.free_parameters.push_back(d.u);
        return out;
    };

    for (std::size_t j = 1; j <= C.levels(); ++j) {
        const std::size_t g = C.gr_dim(j);
        for (std::size_t c = 0; c < a0 * g; ++c) {
            Vector u = C.embed_gr(0, unit_vector(a0 * g, c), j);
            const bool cl = closed(u);
            family.push_back({std::move(u), j, cl});
        }
        // two parameters of filtration f, f' interact no lower than f + f',
        // or f + f' + 1 when both are closed
        std::size_t bound = std::numeric_limits<std::size_t>::max();
        for (std::size_t s = 0; s < family.size(); ++s)
            for (std::size_t t = s; t < family.size(); ++t)
                bound = std::min(bound, family[s].f + family[t].f + (family[s].closed && family[t].closed ? 1 : 0));
        if (!family.empty() && bound <= j)
            out.linear_throughout = false;

        const Vector diff = sub(gauge(L, out.alpha, x), y);
        if (C.filtration(1, diff) < j)
            return give_up(j, diff);
        const Vector constant = C.gr_component(1, diff, j);

        Matrix J(constant.size(), family.size());
        for (std::size_t s = 0; s < family.size(); ++s) {
            const Vector col = C.gr_component(1, gauge_derivative(L, out.alpha, x, family[s].u), j);
            for (std::size_t r = 0; r < col.size(); ++r)
                J(r, s) = col[r];
        }
        auto sol = solve_affine(J, negate(constant));
        if (!sol) {
            out.decision = out.linear_throughout ? Decision::no : Decision::undecided;
            out.failing_level = j;
            out.residual = constant;
            for (const auto &d : family)
                out.free_parameters.push_back(d.u);
            return out;
        }
        for (std::size_t s = 0; s < family.size(); ++s)
            if (sol->particular[s] != 0)
                axpy(out.alpha, sol->particular[s], family[s].u);
        std::vector<Direction> next;
        for (const auto &kv : sol->kernel) {
            Vector u = zero_vector(L.dims[0]);
            for (std::size_t s = 0; s < family.size(); ++s)
                if (kv[s] != 0)
                    axpy(u, kv[s], family[s].u);
            const std::size_t f = C.filtration(0, u);
            if (f <= C.levels()) {
                const bool cl = closed(u);
                next.push_back({std::move(u), f, cl});
            }
        }
        family = std::move(next);

        const Vector after = sub(gauge(L, out.alpha, x), y);
        if (C.filtration(1, after) <= j)
            return give_up(j, C.gr_component(1, after, std::min(j, C.filtration(1, after))));
    }
    if (gauge(L, out.alpha, x) != y)
        return give_up(C.levels(), sub(gauge(L, out.alpha, x), y));
    out.decision = Decision::yes;
    for (const auto &d : family)
        out.free_parameters.push_back(d.u);
    return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<MCElement> sample_mc(const CoefficientDGLA &C, const std::vector<long> &grid)
{
    const auto &reps = C.cohomology().representatives(1);
    const std::size_t g1 = C.levels() ? C.gr_dim(1) : 0;
    const std::size_t slots = reps.size() * g1;
    double count = std::pow(static_cast<double>(grid.size()), static_cast<double>(slots));
    if (grid.empty() || count > 4096)
        throw Error("compare_def_along_map: seed grid too large");
    std::vector<MCElement> out;
    std::vector<std::size_t> digit(slots, 0);
    while (true) {
        Vector seed = zero_vector(C.dgla().dims[1]);
        for (std::size_t s = 0; s < slots; ++s)
            if (grid[digit[s]] != 0)
                axpy(seed, grid[digit[s]], C.pure(1, reps[s / g1], C.gr_lift(1, s % g1)));
        auto r = mc_solve(C, seed);
        if (r.solved)
            out.push_back(std::move(r.element));
        std::size_t s = 0;
        while (s < slots && ++digit[s] == grid.size())
            digit[s++] = 0;
        if (s == slots)
            break;
    }
    return out;
}

struct ClassCount {
    std::size_t classes = 0;
    std::size_t undecided = 0;
    std::vector<std::vector<Decision>> relation;
};

ClassCount count_classes(const CoefficientDGLA &C, const std::vector<MCElement> &xs)
{
    ClassCount out;
    const std::size_t n = xs.size();
    out.relation.assign(n, std::vector<Decision>(n, Decision::yes));
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
        return parent[i] == i ? i : parent[i] = find(parent[i]);
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Decision d = gauge_equivalent(C, xs[i], xs[j]).decision;
            out.relation[i][j] = out.relation[j][i] = d;
            if (d == Decision::yes)
                parent[find(i)] = find(j);
            else if (d == Decision::undecided)
                ++out.undecided;
        }
    for (std::size_t i = 0; i < n; ++i)
        out.classes += find(i) == i;
    return out;
}

} // namespace

DefComparison compare_def_along_map(const FiniteDGA &A, const FiniteDGA &B, const DGAMorphism &phi,
                                    const LieAlgebra &N, const std::vector<long> &grid, std::size_t max_degree)
{
    if (!is_dga_morphism(A, B, phi))
        throw Error("compare_def_along_map: phi is not a DGA morphism");
    DefComparison rep;
    const Cohomology HA(A), HB(B);
    rep.betti_a = HA.betti();
    rep.betti_b = HB.betti();
    for (std::size_t n = 0; n <= 2 && n <= A.top_degree(); ++n) {
        const Matrix m = induced_map(HA, HB, phi, n);
        const std::size_t r = rank(m);
        rep.induced_rank.push_back(r);
        if (n == 0)
            rep.h0_surjective = r == HB.betti()[0];
        if (n == 1)
            rep.h1_bijective = r == HA.betti()[1] && r == HB.betti()[1];
        if (n == 2)
            rep.h2_injective = r == HA.betti()[2];
    }
    rep.etale_predicted = rep.h1_bijective && rep.h2_injective;
    rep.equivalence_predicted = rep.etale_predicted && rep.h0_surjective;

    const CoefficientDGLA CA(A, N, max_degree), CB(B, N, max_degree);
    const auto xa = sample_mc(CA, grid);
    const auto xb = sample_mc(CB, grid);
    rep.sample_a = xa.size();
    rep.sample_b = xb.size();
    std::vector<MCElement> images;
    for (const auto &x : xa) {
        Vector img = zero_vector(CB.dgla().dims[1]);
        const std::size_t n = N.dim();
        for (std::size_t s = 0; s < B.dims[1]; ++s)
            for (std::size_t i = 0; i < A.dims[1]; ++i)
                if (phi.maps[1](s, i) != 0)
                    for (std::size_t m = 0; m < n; ++m)
                        img[s * n + m] += phi.maps[1](s, i) * x[i * n + m];
        if (!is_mc(CB.dgla(), img))
            throw Error("internal: image of an MC element is not MC");
        images.push_back(std::move(img));
    }

    const ClassCount ca = count_classes(CA, xa), cb = count_classes(CB, xb), ci = count_classes(CB, images);
    rep.classes_a = ca.classes;
    rep.classes_b = cb.classes;
    rep.classes_image = ci.classes;
    rep.undecided = ca.undecided + cb.undecided + ci.undecided;
    for (std::size_t i = 0; i < xa.size(); ++i)
        for (std::size_t j = i + 1; j < xa.size(); ++j)
            if (ca.relation[i][j] != Decision::undecided && ci.relation[i][j] != Decision::undecided &&
                ca.relation[i][j] != ci.relation[i][j])
                ++rep.injectivity_failures;
    for (const auto &y : xb) {
        bool reached = false;
        for (const auto &img : images) {
            const Decision d = gauge_equivalent(CB, img, y).decision;
            if (d == Decision::undecided)
                ++rep.undecided;
            if (d == Decision::yes) {
                reached = true;
                break;
            }
        }
        rep.unreached_b += !reached;
    }
    rep.conclusion_holds = rep.classes_a == rep.classes_b && rep.classes_image == rep.classes_a &&
                           rep.injectivity_failures == 0 && rep.unreached_b == 0 && rep.undecided == 0;
    return rep;
}

} // namespace malcev
