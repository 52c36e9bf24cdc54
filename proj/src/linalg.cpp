#include "malcev/linalg.hpp"

#include <algorithm>
#include <utility>

namespace malcev {

std::string format_scalar(const Scalar &s) { return s.get_str(); }

Scalar parse_scalar(std::string_view text)
{
    std::string t(text);
    while (!t.empty() && t.front() == ' ')
        t.erase(t.begin());
    while (!t.empty() && t.back() == ' ')
        t.pop_back();
    if (t.empty())
        throw Error("empty scalar");
    if (t.front() == '+')
        t.erase(t.begin());
    Scalar s;
    if (s.set_str(t, 10) != 0)
        throw Error("malformed scalar '" + std::string(text) + "'");
    if (s.get_den() == 0)
        throw Error("zero denominator in '" + std::string(text) + "'");
    s.canonicalize();
    return s;
}

Scalar ratio(long num, long den)
{
    if (den == 0)
        throw Error("zero denominator");
    Scalar s(num, den);
    s.canonicalize();
    return s;
}

Vector zero_vector(std::size_t n) { return Vector(n, Scalar(0)); }

Vector unit_vector(std::size_t n, std::size_t i)
{
    Vector v(n, Scalar(0));
    v.at(i) = 1;
    return v;
}

bool is_zero(std::span<const Scalar> v)
{
    return std::all_of(v.begin(), v.end(), [](const Scalar &s) { return sgn(s) == 0; });
}

static void check_same_size(std::span<const Scalar> a, std::span<const Scalar> b)
{
    if (a.size() != b.size())
        throw Error("vector length mismatch: " + std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()));
}

Vector add(std::span<const Scalar> a, std::span<const Scalar> b)
{
    check_same_size(a, b);
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

Vector sub(std::span<const Scalar> a, std::span<const Scalar> b)
{
    check_same_size(a, b);
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

Vector scale(std::span<const Scalar> a, const Scalar &s)
{
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] * s;
    return r;
}

void axpy(Vector &y, const Scalar &a, std::span<const Scalar> x)
{
    check_same_size(y, x);
    if (sgn(a) == 0)
        return;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (sgn(x[i]) != 0)
            y[i] += a * x[i];
}

Vector negate(std::span<const Scalar> a)
{
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = -a[i];
    return r;
}

// ---------------------------------------------------------------------------

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0))
{
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries))
{
    if (data_.size() != rows * cols)
        throw Error("matrix entry count does not match dimensions");
}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector> &rows, std::size_t cols)
{
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw Error("ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = rows[i][j];
    }
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vector> &cols, std::size_t rows)
{
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows)
            throw Error("ragged matrix columns");
        for (std::size_t i = 0; i < rows; ++i)
            m(i, j) = cols[j][i];
    }
    return m;
}

Vector Matrix::column(std::size_t j) const
{
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        v[i] = (*this)(i, j);
    return v;
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

bool Matrix::is_zero() const { return malcev::is_zero(data_); }

bool Matrix::is_integral() const
{
    return std::all_of(data_.begin(), data_.end(),
                       [](const Scalar &s) { return s.get_den() == 1; });
}

Matrix operator*(const Matrix &a, const Matrix &b)
{
    if (a.cols() != b.rows())
        throw Error("matrix product dimension mismatch");
    Matrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Scalar &aik = a(i, k);
            if (sgn(aik) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (sgn(b(k, j)) != 0)
                    r(i, j) += aik * b(k, j);
        }
    return r;
}

Vector operator*(const Matrix &a, std::span<const Scalar> v)
{
    if (a.cols() != v.size())
        throw Error("matrix-vector dimension mismatch");
    Vector r(a.rows(), Scalar(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (sgn(v[k]) != 0 && sgn(a(i, k)) != 0)
                r[i] += a(i, k) * v[k];
    return r;
}

Matrix operator+(const Matrix &a, const Matrix &b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error("matrix sum dimension mismatch");
    return Matrix(a.rows(), a.cols(), add(a.entries(), b.entries()));
}

Matrix operator-(const Matrix &a, const Matrix &b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error("matrix difference dimension mismatch");
    return Matrix(a.rows(), a.cols(), sub(a.entries(), b.entries()));
}

// ---------------------------------------------------------------------------

RowEchelon row_echelon(Matrix m)
{
    RowEchelon out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows() && sgn(m(pivot, col)) == 0)
            ++pivot;
        if (pivot == m.rows())
            continue;
        if (pivot != row)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(pivot, j), m(row, j));
        const Scalar inv = 1 / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j)
            m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || sgn(m(i, col)) == 0)
                continue;
            const Scalar f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                if (sgn(m(row, j)) != 0)
                    m(i, j) -= f * m(row, j);
        }
        out.pivots.push_back(col);
        ++row;
    }
    out.reduced = std::move(m);
    return out;
}

std::size_t rank(const Matrix &m) { return row_echelon(m).rank(); }

std::optional<Matrix> inverse(const Matrix &m)
{
    if (!m.is_square())
        throw Error("inverse of non-square matrix");
    const std::size_t n = m.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto e = row_echelon(std::move(aug));
    if (e.rank() < n || e.pivots[n - 1] != n - 1)
        return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = e.reduced(i, n + j);
    return inv;
}

Scalar determinant(const Matrix &m)
{
    if (!m.is_square())
        throw Error("determinant of non-square matrix");
    Matrix a = m;
    const std::size_t n = a.rows();
    Scalar det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && sgn(a(pivot, col)) == 0)
            ++pivot;
        if (pivot == n)
            return 0;
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(pivot, j), a(col, j));
            det = -det;
        }
        det *= a(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (sgn(a(i, col)) == 0)
                continue;
            const Scalar f = a(i, col) / a(col, col);
            for (std::size_t j = col; j < n; ++j)
                a(i, j) -= f * a(col, j);
        }
    }
    return det;
}

std::vector<Vector> kernel_basis(const Matrix &m)
{
    auto e = row_echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots)
        is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        Vector v = zero_vector(m.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            v[e.pivots[r]] = -e.reduced(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<AffineSolution> solve_affine(const Matrix &m, std::span<const Scalar> b)
{
    if (b.size() != m.rows())
        throw Error("right-hand side length does not match matrix rows");
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j)
            aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    auto e = row_echelon(std::move(aug));
    if (!e.pivots.empty() && e.pivots.back() == m.cols())
        return std::nullopt;
    AffineSolution sol;
    sol.particular = zero_vector(m.cols());
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
        sol.particular[e.pivots[r]] = e.reduced(r, m.cols());
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots)
        is_pivot[p] = true;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        Vector v = zero_vector(m.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            v[e.pivots[r]] = -e.reduced(r, free);
        sol.kernel.push_back(std::move(v));
    }
    return sol;
}

// ---------------------------------------------------------------------------

Subspace::Subspace(std::size_t ambient) : ambient_(ambient) {}

Subspace::Subspace(std::size_t ambient, const std::vector<Vector> &spanning) : ambient_(ambient)
{
    for (const auto &v : spanning)
        insert(v);
}

Vector Subspace::reduce(std::span<const Scalar> v) const
{
    if (v.size() != ambient_)
        throw Error("subspace ambient dimension mismatch");
    Vector r(v.begin(), v.end());
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        const Scalar c = r[pivots_[k]];
        if (sgn(c) != 0)
            axpy(r, -c, basis_[k]);
    }
    return r;
}

bool Subspace::contains(std::span<const Scalar> v) const { return is_zero(reduce(v)); }

bool Subspace::contains(const Subspace &other) const
{
    return std::all_of(other.basis_.begin(), other.basis_.end(),
                       [this](const Vector &v) { return contains(v); });
}

bool Subspace::insert(std::span<const Scalar> v)
{
    Vector r = reduce(v);
    std::size_t p = 0;
    while (p < r.size() && sgn(r[p]) == 0)
        ++p;
    if (p == r.size())
        return false;
    const Scalar inv = 1 / r[p];
    for (auto &x : r)
        x *= inv;
    // keep the basis fully reduced so reduce() is a single pass
    for (auto &b : basis_) {
        const Scalar c = b[p];
        if (sgn(c) != 0)
            axpy(b, -c, r);
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, p);
    basis_.insert(basis_.begin() + pos, std::move(r));
    return true;
}

std::vector<std::size_t> Subspace::complement_indices() const
{
    std::vector<std::size_t> out;
    std::size_t k = 0;
    for (std::size_t i = 0; i < ambient_; ++i) {
        if (k < pivots_.size() && pivots_[k] == i) {
            ++k;
            continue;
        }
        out.push_back(i);
    }
    return out;
}

std::vector<Vector> extend_basis(const Subspace &base, const std::vector<Vector> &candidates)
{
    Subspace acc = base;
    std::vector<Vector> chosen;
    for (const auto &c : candidates)
        if (acc.insert(c))
            chosen.push_back(c);
    return chosen;
}

// ---------------------------------------------------------------------------

namespace {

using IntMatrix = std::vector<std::vector<Integer>>;

IntMatrix to_integer(const Matrix &m)
{
    if (!m.is_integral())
        throw Error("Smith normal form requires an integral matrix");
    IntMatrix a(m.rows(), std::vector<Integer>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            a[i][j] = m(i, j).get_num();
    return a;
}

Matrix to_rational(const IntMatrix &a, std::size_t rows, std::size_t cols)
{
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = Scalar(a[i][j]);
    return m;
}

IntMatrix int_identity(std::size_t n)
{
    IntMatrix a(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        a[i][i] = 1;
    return a;
}

struct SmithWork {
    IntMatrix a, u, v;
    std::size_t rows, cols;

    void swap_rows(std::size_t i, std::size_t j)
    {
        std::swap(a[i], a[j]);
        std::swap(u[i], u[j]);
    }
    void swap_cols(std::size_t i, std::size_t j)
    {
        for (auto &r : a)
            std::swap(r[i], r[j]);
        for (auto &r : v)
            std::swap(r[i], r[j]);
    }
    // row_i += f * row_j
    void add_row(std::size_t i, std::size_t j, const Integer &f)
    {
        for (std::size_t k = 0; k < cols; ++k)
            a[i][k] += f * a[j][k];
        for (std::size_t k = 0; k < rows; ++k)
            u[i][k] += f * u[j][k];
    }
    // col_i += f * col_j
    void add_col(std::size_t i, std::size_t j, const Integer &f)
    {
        for (std::size_t k = 0; k < rows; ++k)
            a[k][i] += f * a[k][j];
        for (std::size_t k = 0; k < cols; ++k)
            v[k][i] += f * v[k][j];
    }
    void negate_row(std::size_t i)
    {
        for (auto &x : a[i])
            x = -x;
        for (auto &x : u[i])
            x = -x;
    }
};

} // namespace

std::vector<Integer> SmithForm::invariants() const
{
    std::vector<Integer> out;
    for (std::size_t i = 0; i < std::min(diagonal.rows(), diagonal.cols()); ++i)
        out.push_back(diagonal(i, i).get_num());
    return out;
}

SmithForm smith_normal_form(const Matrix &m)
{
    SmithWork w{to_integer(m), int_identity(m.rows()), int_identity(m.cols()), m.rows(), m.cols()};
    const std::size_t n = std::min(w.rows, w.cols);
    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block becomes the pivot
            std::size_t pi = w.rows, pj = w.cols;
            for (std::size_t i = t; i < w.rows; ++i)
                for (std::size_t j = t; j < w.cols; ++j)
                    if (sgn(w.a[i][j]) != 0 &&
                        (pi == w.rows || abs(w.a[i][j]) < abs(w.a[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == w.rows)
                break;
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            bool clean = true;
            for (std::size_t i = t + 1; i < w.rows; ++i) {
                if (sgn(w.a[i][t]) == 0)
                    continue;
                Integer q = w.a[i][t] / w.a[t][t];
                w.add_row(i, t, -q);
                if (sgn(w.a[i][t]) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < w.cols; ++j) {
                if (sgn(w.a[t][j]) == 0)
                    continue;
                Integer q = w.a[t][j] / w.a[t][t];
                w.add_col(j, t, -q);
                if (sgn(w.a[t][j]) != 0)
                    clean = false;
            }
            if (!clean)
                continue;
            // divisibility: pull a non-multiple into the pivot row and retry
            bool divides = true;
            for (std::size_t i = t + 1; i < w.rows && divides; ++i)
                for (std::size_t j = t + 1; j < w.cols; ++j)
                    if (w.a[i][j] % w.a[t][t] != 0) {
                        w.add_row(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        if (t < w.rows && sgn(w.a[t][t]) < 0)
            w.negate_row(t);
    }
    return SmithForm{to_rational(w.u, w.rows, w.rows), to_rational(w.a, w.rows, w.cols),
                     to_rational(w.v, w.cols, w.cols)};
}

bool in_lattice(const Matrix &generators, std::span<const Scalar> v)
{
    if (v.size() != generators.rows())
        throw Error("lattice membership: vector length mismatch");
    Integer denom = 1;
    for (const auto &e : generators.entries())
        denom = lcm(denom, Integer(e.get_den()));
    for (const auto &e : v)
        denom = lcm(denom, Integer(e.get_den()));
    const Scalar s(denom);
    Matrix g(generators.rows(), generators.cols());
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j)
            g(i, j) = generators(i, j) * s;
    Vector target = scale(v, s);
    auto snf = smith_normal_form(g);
    Vector y = snf.left * target;
    const auto d = snf.invariants();
    for (std::size_t i = 0; i < y.size(); ++i) {
        const Integer di = i < d.size() ? d[i] : Integer(0);
        if (di == 0) {
            if (sgn(y[i]) != 0)
                return false;
        } else if (y[i].get_den() != 1 || y[i].get_num() % di != 0) {
            return false;
        }
    }
    return true;
}

} // namespace malcev
