#include "malcev/cochain.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <tuple>

namespace malcev {

namespace {

int koszul(std::size_t p, std::size_t q) { return (p * q) % 2 ? -1 : 1; }

std::string where(std::size_t p, std::size_t i) { return "e" + std::to_string(i) + "(deg " + std::to_string(p) + ")"; }

} // namespace

Vector CochainComplex::differential(std::size_t p, std::span<const Scalar> u) const
{
    if (p >= dims.size() || u.size() != dims[p])
        throw Error("differential: element has the wrong degree or length");
    if (p == top_degree())
        return {};
    return d[p] * u;
}

void CochainComplex::check_shapes() const
{
    if (dims.empty())
        throw Error("complex needs at least degree 0");
    if (d.size() != dims.size() - 1)
        throw Error("complex needs one differential per degree below the top");
    for (std::size_t n = 0; n < d.size(); ++n)
        if (d[n].rows() != dims[n + 1] || d[n].cols() != dims[n])
            throw Error("differential d_" + std::to_string(n) + " has the wrong shape");
}

void GradedBilinear::resize_table()
{
    const std::size_t D = top_degree();
    table.assign(dims.size(), {});
    for (std::size_t p = 0; p <= D; ++p) {
        table[p].assign(dims.size(), {});
        for (std::size_t q = 0; p + q <= D; ++q)
            table[p][q].assign(dims[p] * dims[q], zero_vector(dims[p + q]));
    }
}

void GradedBilinear::check_table() const
{
    const std::size_t D = top_degree();
    if (table.size() != dims.size())
        throw Error("product table has the wrong number of degrees");
    for (std::size_t p = 0; p <= D; ++p)
        for (std::size_t q = 0; p + q <= D; ++q) {
            if (table[p].size() <= q || table[p][q].size() != dims[p] * dims[q])
                throw Error("product table block has the wrong size");
            for (const auto &v : table[p][q])
                if (v.size() != dims[p + q])
                    throw Error("product table entry has the wrong length");
        }
}

const Vector &GradedBilinear::basis_product(std::size_t p, std::size_t i, std::size_t q, std::size_t j) const
{
    return table.at(p).at(q).at(i * dims[q] + j);
}

Vector GradedBilinear::multiply(std::size_t p, std::span<const Scalar> u, std::size_t q,
                                std::span<const Scalar> v) const
{
    if (p >= dims.size() || q >= dims.size() || u.size() != dims[p] || v.size() != dims[q])
        throw Error("multiply: factor has the wrong degree or length");
    if (p + q > top_degree())
        return {};
    Vector r = zero_vector(dims[p + q]);
    const auto &block = table[p][q];
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0)
            continue;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0)
                axpy(r, u[i] * v[j], block[i * dims[q] + j]);
    }
    return r;
}

void GradedBilinear::set_product(std::size_t p, std::size_t i, std::size_t q, std::size_t j, const Vector &value,
                                 int swap_sign)
{
    if (p + q > top_degree() || i >= dims[p] || j >= dims[q] || value.size() != dims[p + q])
        throw Error("set_product: index or value out of range");
    table[p][q][i * dims[q] + j] = value;
    table[q][p][j * dims[p] + i] = scale(value, swap_sign);
}

FiniteDGA FiniteDGA::with_dims(std::vector<std::size_t> dims)
{
    FiniteDGA A;
    A.dims = std::move(dims);
    if (A.dims.empty())
        throw Error("DGA needs at least degree 0");
    for (std::size_t n = 0; n + 1 < A.dims.size(); ++n)
        A.d.emplace_back(A.dims[n + 1], A.dims[n]);
    A.resize_table();
    return A;
}

void FiniteDGA::set(std::size_t p, std::size_t i, std::size_t q, std::size_t j, const Vector &value)
{
    set_product(p, i, q, j, value, koszul(p, q));
}

std::vector<std::string> FiniteDGA::violations() const
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
                    if (ab != scale(basis_product(q, j, p, i), koszul(p, q)))
                        out.push_back("graded commutativity fails for " + where(p, i) + ", " + where(q, j));
                    // Leibniz: d(ab) = da b + (-1)^p a db
                    if (p + q + 1 <= D) {
                        Vector lhs = d[p + q] * ab;
                        Vector rhs = zero_vector(dims[p + q + 1]);
                        if (p + 1 <= D) {
                            Vector da = d[p].column(i);
                            rhs = add(rhs, multiply(p + 1, da, q, unit_vector(dims[q], j)));
                        }
                        if (q + 1 <= D) {
                            Vector db = d[q].column(j);
                            axpy(rhs, koszul(p, 1), multiply(p, unit_vector(dims[p], i), q + 1, db));
                        }
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
                            const Vector c = unit_vector(dims[r], k);
                            const Vector a = unit_vector(dims[p], i);
                            Vector left = multiply(p + q, basis_product(p, i, q, j), r, c);
                            Vector right = multiply(p, a, q + r, basis_product(q, j, r, k));
                            if (left != right)
                                out.push_back("associativity fails for " + where(p, i) + ", " + where(q, j) +
                                              ", " + where(r, k));
                        }
    return out;
}

void FiniteDGA::validate() const
{
    auto v = violations();
    if (!v.empty())
        throw Error("invalid DGA: " + v.front());
}

// ---------------------------------------------------------------------------

Cohomology::Cohomology(const CochainComplex &c) : complex_(c)
{
    c.check_shapes();
    const std::size_t D = c.top_degree();
    for (std::size_t n = 0; n + 2 <= D; ++n)
        if (!(c.d[n + 1] * c.d[n]).is_zero())
            throw Error("cohomology: d^2 != 0 on degree " + std::to_string(n));
    for (std::size_t n = 0; n <= D; ++n) {
        std::vector<Vector> z;
        if (n < D)
            z = kernel_basis(c.d[n]);
        else
            for (std::size_t i = 0; i < c.dims[n]; ++i)
                z.push_back(unit_vector(c.dims[n], i));
        Subspace b(c.dims[n]);
        if (n > 0)
            for (std::size_t j = 0; j < c.dims[n - 1]; ++j)
                b.insert(c.d[n - 1].column(j));
        auto reps = extend_basis(b, z);
        std::vector<Vector> cols = reps;
        cols.insert(cols.end(), b.basis().begin(), b.basis().end());
        decompose_.push_back(Matrix::from_columns(cols, c.dims[n]));
        betti_.push_back(reps.size());
        reps_.push_back(std::move(reps));
        cocycles_.push_back(std::move(z));
        boundaries_.push_back(std::move(b));
    }
}

bool Cohomology::is_cocycle(std::size_t n, std::span<const Scalar> v) const
{
    return is_zero(complex_.differential(n, v));
}

Vector Cohomology::class_of(std::size_t n, std::span<const Scalar> v) const
{
    if (!is_cocycle(n, v))
        throw Error("class_of: cochain is not closed");
    auto sol = solve_affine(decompose_.at(n), v);
    if (!sol)
        throw Error("internal: cocycle outside cocycles");
    return Vector(sol->particular.begin(), sol->particular.begin() + static_cast<std::ptrdiff_t>(betti_[n]));
}

std::optional<Vector> Cohomology::primitive(std::size_t n, std::span<const Scalar> v) const
{
    if (n >= complex_.dims.size() || v.size() != complex_.dims[n])
        throw Error("primitive: cochain has the wrong degree or length");
    if (n == 0) {
        if (is_zero(v))
            return Vector{};
        return std::nullopt;
    }
    auto sol = solve_affine(complex_.d[n - 1], v);
    if (!sol)
        return std::nullopt;
    return sol->particular;
}

Vector Cohomology::representative(std::size_t n, std::span<const Scalar> c) const
{
    if (c.size() != betti_.at(n))
        throw Error("representative: class has the wrong length");
    Vector r = zero_vector(complex_.dims[n]);
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0)
            axpy(r, c[i], reps_[n][i]);
    return r;
}

FiniteDGA cohomology_ring(const FiniteDGA &A)
{
    A.validate();
    Cohomology H(A);
    FiniteDGA R = FiniteDGA::with_dims(H.betti());
    const std::size_t D = A.top_degree();
    for (std::size_t p = 0; p <= D; ++p)
        for (std::size_t q = 0; p + q <= D; ++q)
            for (std::size_t i = 0; i < H.betti()[p]; ++i)
                for (std::size_t j = 0; j < H.betti()[q]; ++j)
                    R.table[p][q][i * H.betti()[q] + j] =
                        H.class_of(p + q, A.multiply(p, H.representatives(p)[i], q, H.representatives(q)[j]));
    R.validate();
    return R;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<std::uint64_t>> subsets_by_size(std::size_t n, std::size_t top)
{
    std::vector<std::vector<std::uint64_t>> out(top + 1);
    // lexicographic order on sorted index lists
    std::vector<std::size_t> idx;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        std::uint64_t mask = 0;
        for (auto i : idx)
            mask |= std::uint64_t{1} << i;
        out[idx.size()].push_back(mask);
        if (idx.size() == top)
            return;
        for (std::size_t i = start; i < n; ++i) {
            idx.push_back(i);
            rec(i + 1);
            idx.pop_back();
        }
    };
    rec(0);
    for (auto &level : out)
        std::sort(level.begin(), level.end(), [](std::uint64_t a, std::uint64_t b) {
            // compare sorted index lists lexicographically
            while (a && b) {
                const int ia = std::countr_zero(a), ib = std::countr_zero(b);
                if (ia != ib)
                    return ia < ib;
                a &= a - 1;
                b &= b - 1;
            }
            return !a && b;
        });
    return out;
}

} // namespace

std::size_t ce_index(std::size_t dim, const std::vector<std::size_t> &subset)
{
    // rank of a k-subset among k-subsets of {0..dim-1} in lexicographic order
    auto binom = [](std::size_t n, std::size_t k) {
        if (k > n)
            return std::size_t{0};
        std::size_t r = 1;
        for (std::size_t i = 1; i <= k; ++i)
            r = r * (n - k + i) / i;
        return r;
    };
    std::size_t rank = 0, prev = 0;
    const std::size_t k = subset.size();
    for (std::size_t t = 0; t < k; ++t) {
        if (subset[t] >= dim || (t > 0 && subset[t] <= subset[t - 1]))
            throw Error("ce_index: subset must be strictly increasing and in range");
        for (std::size_t v = prev; v < subset[t]; ++v)
            rank += binom(dim - v - 1, k - t - 1);
        prev = subset[t] + 1;
    }
    return rank;
}

FiniteDGA chevalley_eilenberg(const LieAlgebra &L, std::size_t max_degree)
{
    const std::size_t n = L.dim();
    if (n > 20)
        throw Error("chevalley_eilenberg: dimension too large for an exterior basis");
    if (!check_jacobi(L).empty())
        throw Error("chevalley_eilenberg: Jacobi identity fails");
    const std::size_t D = std::min(n, max_degree);
    const auto subsets = subsets_by_size(n, D);
    std::vector<std::size_t> dims;
    for (const auto &level : subsets)
        dims.push_back(level.size());
    FiniteDGA A = FiniteDGA::with_dims(dims);

    std::map<std::uint64_t, std::size_t> position;
    for (const auto &level : subsets)
        for (std::size_t i = 0; i < level.size(); ++i)
            position[level[i]] = i;

    for (std::size_t p = 0; p <= D; ++p)
        for (std::size_t q = 0; p + q <= D; ++q)
            for (std::size_t i = 0; i < dims[p]; ++i)
                for (std::size_t j = 0; j < dims[q]; ++j) {
                    const std::uint64_t s = subsets[p][i], t = subsets[q][j];
                    if (s & t)
                        continue;
                    // sign of the shuffle putting s before t into sorted order
                    int inversions = 0;
                    for (std::uint64_t tt = t; tt; tt &= tt - 1) {
                        const int b = std::countr_zero(tt);
                        inversions += std::popcount(s >> (b + 1));
                    }
                    A.table[p][q][i * dims[q] + j] =
                        scale(unit_vector(dims[p + q], position[s | t]), inversions % 2 ? -1 : 1);
                }

    // degree 1: d xi^k = -sum_{i<j} c_ij^k xi^i ^ xi^j
    if (D >= 2)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const std::size_t col = position[(std::uint64_t{1} << i) | (std::uint64_t{1} << j)];
                for (const auto &[k, c] : L.stored_bracket(i, j))
                    A.d[1](col, k) -= c;
            }
    // higher degrees as a derivation: d(xi^s ^ R) = d xi^s ^ R - xi^s ^ dR
    for (std::size_t p = 2; p < D; ++p)
        for (std::size_t i = 0; i < dims[p]; ++i) {
            const std::uint64_t s = subsets[p][i];
            const std::uint64_t first = s & (~s + 1), rest = s & ~first;
            const std::size_t fi = position[first], ri = position[rest];
            Vector dfirst = A.d[1].column(fi);
            Vector drest = A.d[p - 1].column(ri);
            Vector v = A.multiply(2, dfirst, p - 1, unit_vector(dims[p - 1], ri));
            axpy(v, -1, A.multiply(1, unit_vector(dims[1], fi), p, drest));
            for (std::size_t r = 0; r < v.size(); ++r)
                A.d[p](r, i) = v[r];
        }

    for (std::size_t m = 0; m + 2 <= D; ++m)
        if (!(A.d[m + 1] * A.d[m]).is_zero())
            throw Error("chevalley_eilenberg: d^2 != 0");

    auto name = [&](std::size_t i) {
        return (i < L.names().size() && !L.names()[i].empty() ? L.names()[i] : "e" + std::to_string(i + 1)) + "*";
    };
    A.names.resize(dims.size());
    for (std::size_t p = 0; p <= D; ++p)
        for (auto s : subsets[p]) {
            std::string label;
            for (std::uint64_t t = s; t; t &= t - 1)
                label += (label.empty() ? "" : "^") + name(std::countr_zero(t));
            A.names[p].push_back(label.empty() ? "1" : label);
        }
    return A;
}

// ---------------------------------------------------------------------------

FiniteDGA tensor_dga(const FiniteDGA &A, const FiniteDGA &B)
{
    A.validate();
    B.validate();
    const std::size_t DA = A.top_degree(), DB = B.top_degree(), D = DA + DB;

    struct Slot {
        std::size_t p, i, q, j;
    };
    std::vector<std::vector<Slot>> basis(D + 1);
    std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>, std::size_t> index;
    for (std::size_t n = 0; n <= D; ++n)
        for (std::size_t p = 0; p <= std::min(n, DA); ++p) {
            const std::size_t q = n - p;
            if (q > DB)
                continue;
            for (std::size_t i = 0; i < A.dims[p]; ++i)
                for (std::size_t j = 0; j < B.dims[q]; ++j) {
                    index[{p, i, q, j}] = basis[n].size();
                    basis[n].push_back({p, i, q, j});
                }
        }
    std::vector<std::size_t> dims;
    for (const auto &b : basis)
        dims.push_back(b.size());
    FiniteDGA T = FiniteDGA::with_dims(dims);

    auto embed = [&](std::size_t n, std::size_t p, const Vector &a, std::size_t q, const Vector &b, const Scalar &s,
                     Vector &out) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != 0)
                for (std::size_t j = 0; j < b.size(); ++j)
                    if (b[j] != 0)
                        out[index.at({p, i, q, j})] += s * a[i] * b[j];
        (void)n;
    };

    for (std::size_t n = 0; n < D; ++n)
        for (std::size_t k = 0; k < dims[n]; ++k) {
            const auto [p, i, q, j] = basis[n][k];
            Vector v = zero_vector(dims[n + 1]);
            if (p < DA)
                embed(n + 1, p + 1, A.d[p].column(i), q, unit_vector(B.dims[q], j), 1, v);
            if (q < DB)
                embed(n + 1, p, unit_vector(A.dims[p], i), q + 1, B.d[q].column(j), koszul(p, 1), v);
            for (std::size_t r = 0; r < v.size(); ++r)
                T.d[n](r, k) = v[r];
        }

    for (std::size_t n1 = 0; n1 <= D; ++n1)
        for (std::size_t n2 = 0; n1 + n2 <= D; ++n2)
            for (std::size_t k1 = 0; k1 < dims[n1]; ++k1)
                for (std::size_t k2 = 0; k2 < dims[n2]; ++k2) {
                    const auto [p1, i1, q1, j1] = basis[n1][k1];
                    const auto [p2, i2, q2, j2] = basis[n2][k2];
                    Vector v = zero_vector(dims[n1 + n2]);
                    if (p1 + p2 <= DA && q1 + q2 <= DB)
                        embed(n1 + n2, p1 + p2, A.basis_product(p1, i1, p2, i2), q1 + q2,
                              B.basis_product(q1, j1, q2, j2), koszul(q1, p2), v);
                    T.table[n1][n2][k1 * dims[n2] + k2] = std::move(v);
                }
    T.validate();
    return T;
}

bool is_dga_morphism(const FiniteDGA &A, const FiniteDGA &B, const DGAMorphism &phi)
{
    if (A.dims.size() != B.dims.size() || phi.maps.size() != A.dims.size())
        return false;
    const std::size_t D = A.top_degree();
    for (std::size_t n = 0; n <= D; ++n)
        if (phi.maps[n].rows() != B.dims[n] || phi.maps[n].cols() != A.dims[n])
            return false;
    for (std::size_t n = 0; n < D; ++n)
        if (phi.maps[n + 1] * A.d[n] != B.d[n] * phi.maps[n])
            return false;
    for (std::size_t p = 0; p <= D; ++p)
        for (std::size_t q = 0; p + q <= D; ++q)
            for (std::size_t i = 0; i < A.dims[p]; ++i)
                for (std::size_t j = 0; j < A.dims[q]; ++j)
                    if (phi.apply(p + q, A.basis_product(p, i, q, j)) !=
                        B.multiply(p, phi.maps[p].column(i), q, phi.maps[q].column(j)))
                        return false;
    return true;
}

DGAMorphism ce_pullback(const LieAlgebra &source, const LieAlgebra &target, const Matrix &f,
                        std::size_t max_degree)
{
    if (f.rows() != target.dim() || f.cols() != source.dim())
        throw Error("ce_pullback: map has the wrong shape");
    if (!is_homomorphism(source, target, f))
        throw Error("ce_pullback: not a Lie algebra map");
    const std::size_t D = std::min({source.dim(), target.dim(), max_degree});
    const auto ts = subsets_by_size(target.dim(), D), ss = subsets_by_size(source.dim(), D);
    auto members = [](std::uint64_t m) {
        std::vector<std::size_t> out;
        for (; m; m &= m - 1)
            out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
        return out;
    };
    DGAMorphism phi;
    for (std::size_t k = 0; k <= D; ++k) {
        Matrix m(ss[k].size(), ts[k].size());
        for (std::size_t a = 0; a < ts[k].size(); ++a) {
            const auto rows = members(ts[k][a]);
            for (std::size_t b = 0; b < ss[k].size(); ++b) {
                const auto cols = members(ss[k][b]);
                Matrix minor(k, k);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j)
                        minor(i, j) = f(rows[i], cols[j]);
                m(b, a) = k == 0 ? Scalar(1) : determinant(minor);
            }
        }
        phi.maps.push_back(std::move(m));
    }
    return phi;
}

Matrix induced_map(const Cohomology &ha, const Cohomology &hb, const DGAMorphism &phi, std::size_t n)
{
    std::vector<Vector> cols;
    for (const auto &r : ha.representatives(n))
        cols.push_back(hb.class_of(n, phi.apply(n, r)));
    return Matrix::from_columns(cols, hb.betti().at(n));
}

// ---------------------------------------------------------------------------

namespace {

void check_cochain(const FiniteDGA &A, const Cochain &c, const char *what)
{
    if (c.degree > A.top_degree() || c.coords.size() != A.dims[c.degree])
        throw Error(std::string("massey_triple: ") + what + " has the wrong degree or length");
    if (!is_zero(A.differential(c.degree, c.coords)))
        throw Error(std::string("massey_triple: ") + what + " is not a cocycle");
}

Vector product_or_zero(const FiniteDGA &A, const Cochain &u, const Cochain &v)
{
    return A.multiply(u.degree, u.coords, v.degree, v.coords);
}

} // namespace

MasseyResult massey_triple(const FiniteDGA &A, const Cochain &a, const Cochain &b, const Cochain &c)
{
    check_cochain(A, a, "a");
    check_cochain(A, b, "b");
    check_cochain(A, c, "c");
    const std::size_t total = a.degree + b.degree + c.degree;
    if (total == 0 || total - 1 > A.top_degree())
        throw Error("massey_triple: the product lands above the top degree");
    Cohomology H(A);
    if (a.degree + b.degree == 0 || b.degree + c.degree == 0)
        throw Error("massey_triple: degree-0 pairs have no defining cochain");
    auto defining = [&](const Cochain &u, const Cochain &v, const char *what) {
        const std::size_t n = u.degree + v.degree;
        if (n > A.top_degree())
            return zero_vector(A.dims[n - 1]);
        auto x = H.primitive(n, product_or_zero(A, u, v));
        if (!x)
            throw Error(std::string("massey_triple undefined: ") + what + " is not exact");
        return *x;
    };
    Vector x = defining(a, b, "ab");
    Vector y = defining(b, c, "bc");
    return massey_triple(A, a, b, c, x, y);
}

MasseyResult massey_triple(const FiniteDGA &A, const Cochain &a, const Cochain &b, const Cochain &c,
                           const Vector &x, const Vector &y)
{
    check_cochain(A, a, "a");
    check_cochain(A, b, "b");
    check_cochain(A, c, "c");
    const std::size_t p = a.degree, q = b.degree, r = c.degree;
    if (p + q == 0 || q + r == 0 || p + q + r - 1 > A.top_degree())
        throw Error("massey_triple: degrees out of range");
    const Cochain X{p + q - 1, x}, Y{q + r - 1, y};
    if (x.size() != A.dims[X.degree] || y.size() != A.dims[Y.degree])
        throw Error("massey_triple: defining cochain has the wrong length");
    auto matches = [&](const Cochain &prim, const Cochain &u, const Cochain &v) {
        Vector uv = u.degree + v.degree <= A.top_degree() ? product_or_zero(A, u, v) : Vector{};
        Vector dp = A.differential(prim.degree, prim.coords);
        return dp == uv;
    };
    if (!matches(X, a, b) || !matches(Y, b, c))
        throw Error("massey_triple: defining cochains do not bound the products");

    Cohomology H(A);
    MasseyResult out;
    out.degree = p + q + r - 1;
    out.x = x;
    out.y = y;
    out.representative = product_or_zero(A, a, Y);
    axpy(out.representative, -koszul(p, 1), product_or_zero(A, X, c));
    out.class_coords = H.class_of(out.degree, out.representative);

    Subspace indet(H.betti()[out.degree]);
    for (const auto &z : H.representatives(Y.degree))
        indet.insert(H.class_of(out.degree, product_or_zero(A, a, {Y.degree, z})));
    for (const auto &z : H.representatives(X.degree))
        indet.insert(H.class_of(out.degree, product_or_zero(A, {X.degree, z}, c)));
    out.indeterminacy = indet.basis();
    out.vanishes = indet.contains(out.class_coords);
    return out;
}

FormalityReport formality_consequence_report(const FiniteDGA &A)
{
    A.validate();
    FormalityReport rep;
    if (A.top_degree() < 2)
        return rep;
    Cohomology H(A);
    const auto &h1 = H.representatives(1);
    rep.h1 = h1.size();
    auto exact = [&](const Vector &u, const Vector &v) { return H.primitive(2, A.multiply(1, u, 1, v)).has_value(); };
    for (std::size_t i = 0; i < h1.size(); ++i)
        for (std::size_t j = 0; j < h1.size(); ++j)
            for (std::size_t k = 0; k < h1.size(); ++k) {
                if (!exact(h1[i], h1[j]) || !exact(h1[j], h1[k])) {
                    ++rep.undefined;
                    continue;
                }
                ++rep.defined;
                auto m = massey_triple(A, {1, h1[i]}, {1, h1[j]}, {1, h1[k]});
                if (!m.vanishes)
                    rep.witnesses.push_back({i, j, k, std::move(m)});
            }
    return rep;
}

} // namespace malcev
