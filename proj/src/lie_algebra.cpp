#include "malcev/lie_algebra.hpp"

#include <algorithm>

namespace malcev {

SparseVector to_sparse(std::span<const Scalar> v)
{
    SparseVector s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0)
            s.push_back({i, v[i]});
    return s;
}

Vector to_dense(const SparseVector &v, std::size_t n)
{
    Vector d = zero_vector(n);
    for (const auto &t : v)
        d.at(t.index) = t.coeff;
    return d;
}

// ---------------------------------------------------------------------------

LieAlgebra::LieAlgebra(std::size_t dim, std::vector<std::string> names)
    : dim_(dim), names_(std::move(names)), table_(dim * (dim > 0 ? dim - 1 : 0) / 2)
{
    if (names_.empty())
        for (std::size_t i = 0; i < dim; ++i)
            names_.push_back("e" + std::to_string(i + 1));
    if (names_.size() != dim)
        throw Error("basis name count does not match dimension");
}

std::size_t LieAlgebra::pair_index(std::size_t i, std::size_t j) const
{
    // position of (i, j), i < j, in the packed upper triangle
    return i * dim_ - i * (i + 1) / 2 + (j - i - 1);
}

void LieAlgebra::set_bracket(std::size_t i, std::size_t j, std::span<const Scalar> value)
{
    if (i >= dim_ || j >= dim_ || value.size() != dim_)
        throw Error("bracket index or value out of range");
    if (i == j) {
        if (!is_zero(value))
            throw Error("[e_i, e_i] must vanish");
        return;
    }
    if (i < j)
        table_[pair_index(i, j)] = to_sparse(value);
    else
        table_[pair_index(j, i)] = to_sparse(negate(value));
}

void LieAlgebra::set_grading(std::vector<int> weights)
{
    if (weights.size() != dim_)
        throw Error("grading length does not match dimension");
    grading_ = std::move(weights);
}

const SparseVector &LieAlgebra::stored_bracket(std::size_t i, std::size_t j) const
{
    return table_[pair_index(i, j)];
}

Vector LieAlgebra::basis_bracket(std::size_t i, std::size_t j) const
{
    if (i >= dim_ || j >= dim_)
        throw Error("basis index out of range");
    if (i == j)
        return zero_vector(dim_);
    if (i < j)
        return to_dense(table_[pair_index(i, j)], dim_);
    return negate(to_dense(table_[pair_index(j, i)], dim_));
}

Vector LieAlgebra::bracket(std::span<const Scalar> x, std::span<const Scalar> y) const
{
    if (x.size() != dim_ || y.size() != dim_)
        throw Error("bracket: vector length does not match algebra dimension");
    Vector r = zero_vector(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        const bool xi = sgn(x[i]) != 0, yi = sgn(y[i]) != 0;
        if (!xi && !yi)
            continue;
        for (std::size_t j = i + 1; j < dim_; ++j) {
            // coefficient of [e_i, e_j] in [x, y]
            Scalar c = 0;
            if (xi && sgn(y[j]) != 0)
                c += x[i] * y[j];
            if (yi && sgn(x[j]) != 0)
                c -= x[j] * y[i];
            if (sgn(c) == 0)
                continue;
            for (const auto &t : table_[pair_index(i, j)])
                r[t.index] += c * t.coeff;
        }
    }
    return r;
}

bool LieAlgebra::is_abelian() const
{
    return std::all_of(table_.begin(), table_.end(), [](const SparseVector &s) { return s.empty(); });
}

bool operator==(const LieAlgebra &a, const LieAlgebra &b)
{
    if (a.dim_ != b.dim_ || a.grading_ != b.grading_)
        return false;
    for (std::size_t k = 0; k < a.table_.size(); ++k) {
        const auto &s = a.table_[k], &t = b.table_[k];
        if (s.size() != t.size())
            return false;
        for (std::size_t m = 0; m < s.size(); ++m)
            if (s[m].index != t[m].index || s[m].coeff != t[m].coeff)
                return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

BracketTable::BracketTable(std::size_t n) : dim(n), entries(n * n, zero_vector(n)) {}

Vector BracketTable::bracket(std::span<const Scalar> x, std::span<const Scalar> y) const
{
    Vector r = zero_vector(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        if (sgn(x[i]) == 0)
            continue;
        for (std::size_t j = 0; j < dim; ++j)
            if (sgn(y[j]) != 0)
                axpy(r, x[i] * y[j], at(i, j));
    }
    return r;
}

std::vector<JacobiViolation> check_jacobi(const LieAlgebra &L)
{
    std::vector<JacobiViolation> out;
    const std::size_t n = L.dim();
    std::vector<Vector> e;
    for (std::size_t i = 0; i < n; ++i)
        e.push_back(unit_vector(n, i));
    // repeated indices are automatic under antisymmetry
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vector ij = L.basis_bracket(i, j);
            for (std::size_t k = j + 1; k < n; ++k) {
                Vector s = L.bracket(ij, e[k]);
                axpy(s, 1, L.bracket(L.basis_bracket(j, k), e[i]));
                axpy(s, 1, L.bracket(L.basis_bracket(k, i), e[j]));
                if (!is_zero(s))
                    out.push_back({i, j, k, std::move(s)});
            }
        }
    return out;
}

std::vector<JacobiViolation> check_jacobi(const BracketTable &table)
{
    std::vector<JacobiViolation> out;
    const std::size_t n = table.dim;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Vector s = table.bracket(table.at(i, j), unit_vector(n, k));
                axpy(s, 1, table.bracket(table.at(j, k), unit_vector(n, i)));
                axpy(s, 1, table.bracket(table.at(k, i), unit_vector(n, j)));
                if (!is_zero(s))
                    out.push_back({i, j, k, std::move(s)});
            }
    return out;
}

std::optional<LieAlgebra> to_lie_algebra(const BracketTable &table, std::vector<std::string> names)
{
    LieAlgebra L(table.dim, std::move(names));
    for (std::size_t i = 0; i < table.dim; ++i) {
        if (!is_zero(table.at(i, i)))
            return std::nullopt;
        for (std::size_t j = i + 1; j < table.dim; ++j) {
            if (add(table.at(i, j), table.at(j, i)) != zero_vector(table.dim))
                return std::nullopt;
            L.set_bracket(i, j, table.at(i, j));
        }
    }
    return L;
}

// ---------------------------------------------------------------------------

Subspace bracket_span(const LieAlgebra &L, const Subspace &a, const Subspace &b)
{
    Subspace out(L.dim());
    for (const auto &x : a.basis())
        for (const auto &y : b.basis())
            out.insert(L.bracket(x, y));
    return out;
}

static Subspace full_space(std::size_t n)
{
    Subspace s(n);
    for (std::size_t i = 0; i < n; ++i)
        s.insert(unit_vector(n, i));
    return s;
}

bool is_ideal(const LieAlgebra &L, const Subspace &s)
{
    for (std::size_t i = 0; i < L.dim(); ++i) {
        const Vector e = unit_vector(L.dim(), i);
        for (const auto &b : s.basis())
            if (!s.contains(L.bracket(e, b)))
                return false;
    }
    return true;
}

std::vector<LieIdeal> lower_central_series(const LieAlgebra &L)
{
    const Subspace whole = full_space(L.dim());
    std::vector<LieIdeal> series{{whole}};
    while (series.back().dim() > 0) {
        Subspace next = bracket_span(L, whole, series.back().span);
        if (next.dim() == series.back().dim())
            throw Error("lower central series stalls at dimension " +
                        std::to_string(next.dim()) + ": algebra is not nilpotent");
        series.push_back({std::move(next)});
    }
    return series;
}

std::vector<std::size_t> lcs_dims(const LieAlgebra &L)
{
    std::vector<std::size_t> dims;
    for (const auto &g : lower_central_series(L))
        dims.push_back(g.dim());
    return dims;
}

bool is_nilpotent(const LieAlgebra &L)
{
    try {
        lower_central_series(L);
        return true;
    } catch (const Error &) {
        return false;
    }
}

std::size_t nilpotency_class(const LieAlgebra &L)
{
    // series is Gamma_1 .. Gamma_{c+1} = 0; an abelian nonzero algebra has class 1
    const auto series = lower_central_series(L);
    return series.size() == 1 ? 0 : series.size() - 1;
}

// ---------------------------------------------------------------------------

std::size_t GradedLieAlgebra::offset(std::size_t degree) const
{
    std::size_t off = 0;
    for (std::size_t d = 1; d < degree; ++d)
        off += degree_dims.at(d - 1);
    return off;
}

std::size_t GradedLieAlgebra::dim_in(std::size_t degree) const
{
    if (degree == 0 || degree > degree_dims.size())
        return 0;
    return degree_dims[degree - 1];
}

GradedLieAlgebra GradedLieAlgebra::from_graded(LieAlgebra L)
{
    if (!L.grading())
        throw Error("algebra carries no grading");
    const auto &w = *L.grading();
    GradedLieAlgebra g;
    int prev = 1;
    for (int d : w) {
        if (d < prev)
            throw Error("graded basis must be ordered by positive degree");
        prev = d;
        if (g.degree_dims.size() < static_cast<std::size_t>(d))
            g.degree_dims.resize(d, 0);
        ++g.degree_dims[d - 1];
    }
    if (!grading_is_additive(L))
        throw Error("bracket is not additive in degree");
    g.algebra = std::move(L);
    return g;
}

bool grading_is_additive(const LieAlgebra &L)
{
    if (!L.grading())
        return false;
    const auto &w = *L.grading();
    for (std::size_t i = 0; i < L.dim(); ++i)
        for (std::size_t j = i + 1; j < L.dim(); ++j)
            for (const auto &t : L.stored_bracket(i, j))
                if (w[t.index] != w[i] + w[j])
                    return false;
    return true;
}

AssociatedGraded associated_graded(const LieAlgebra &L)
{
    const auto series = lower_central_series(L);
    const std::size_t n = L.dim();
    std::vector<Vector> columns;
    std::vector<int> degrees;
    std::vector<std::size_t> dims;
    for (std::size_t k = 0; k + 1 < series.size(); ++k) {
        auto chosen = extend_basis(series[k + 1].span, series[k].span.basis());
        dims.push_back(chosen.size());
        for (auto &c : chosen) {
            columns.push_back(std::move(c));
            degrees.push_back(static_cast<int>(k + 1));
        }
    }
    Matrix lift = Matrix::from_columns(columns, n);
    auto inv = inverse(lift);
    if (!inv)
        throw Error("internal: adapted basis is singular");

    std::vector<std::string> names;
    for (std::size_t k = 0; k < n; ++k)
        names.push_back("gr" + std::to_string(degrees[k]) + "_" + std::to_string(k + 1));
    LieAlgebra gr(n, names);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            const int target = degrees[a] + degrees[b];
            Vector coords = *inv * L.bracket(columns[a], columns[b]);
            for (std::size_t k = 0; k < n; ++k)
                if (degrees[k] != target)
                    coords[k] = 0;
            gr.set_bracket(a, b, coords);
        }
    gr.set_grading(degrees);
    GradedLieAlgebra g;
    g.algebra = std::move(gr);
    g.degree_dims = std::move(dims);
    return {std::move(g), std::move(lift), std::move(*inv)};
}

LieAlgebra direct_sum(const LieAlgebra &a, const LieAlgebra &b)
{
    const std::size_t n = a.dim() + b.dim();
    std::vector<std::string> names = a.names();
    names.insert(names.end(), b.names().begin(), b.names().end());
    LieAlgebra s(n, names);
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i + 1; j < a.dim(); ++j) {
            Vector v = zero_vector(n);
            for (const auto &t : a.stored_bracket(i, j))
                v[t.index] = t.coeff;
            s.set_bracket(i, j, v);
        }
    for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = i + 1; j < b.dim(); ++j) {
            Vector v = zero_vector(n);
            for (const auto &t : b.stored_bracket(i, j))
                v[a.dim() + t.index] = t.coeff;
            s.set_bracket(a.dim() + i, a.dim() + j, v);
        }
    if (a.grading() && b.grading()) {
        std::vector<int> w = *a.grading();
        w.insert(w.end(), b.grading()->begin(), b.grading()->end());
        s.set_grading(std::move(w));
    }
    return s;
}

LieAlgebra change_basis(const LieAlgebra &L, const Matrix &p)
{
    auto inv = inverse(p);
    if (!inv)
        throw Error("change_basis: matrix is singular");
    LieAlgebra out(L.dim());
    std::vector<Vector> cols;
    for (std::size_t k = 0; k < L.dim(); ++k)
        cols.push_back(p.column(k));
    for (std::size_t i = 0; i < L.dim(); ++i)
        for (std::size_t j = i + 1; j < L.dim(); ++j)
            out.set_bracket(i, j, *inv * L.bracket(cols[i], cols[j]));
    return out;
}

bool is_homomorphism(const LieAlgebra &a, const LieAlgebra &b, const Matrix &m)
{
    if (m.rows() != b.dim() || m.cols() != a.dim())
        throw Error("homomorphism matrix has wrong shape");
    std::vector<Vector> images;
    for (std::size_t i = 0; i < a.dim(); ++i)
        images.push_back(m.column(i));
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i + 1; j < a.dim(); ++j)
            if (m * a.basis_bracket(i, j) != b.bracket(images[i], images[j]))
                return false;
    return true;
}

bool check_automorphism(const LieAlgebra &L, const Matrix &m)
{
    if (m.rows() != L.dim() || m.cols() != L.dim())
        throw Error("automorphism matrix must be square of the algebra's dimension");
    return inverse(m).has_value() && is_homomorphism(L, L, m);
}

LieAlgebra abelian_algebra(std::size_t n) { return LieAlgebra(n); }

LieAlgebra heisenberg_algebra()
{
    LieAlgebra h(3, {"e1", "e2", "w"});
    h.set_bracket(0, 1, unit_vector(3, 2));
    return h;
}

} // namespace malcev
