#include "malcev/free_lie.hpp"

#include <algorithm>

namespace malcev {

void FreeLieElement::add(std::size_t word, const Scalar &c)
{
    if (sgn(c) == 0)
        return;
    auto [it, inserted] = coords.emplace(word, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0)
            coords.erase(it);
    }
}

void FreeLieElement::add(const FreeLieElement &other, const Scalar &c)
{
    for (const auto &[w, v] : other.coords)
        add(w, v * c);
}

BracketExpr BracketExpr::letter(int g)
{
    BracketExpr e;
    e.generator = g;
    return e;
}

BracketExpr BracketExpr::bracket(BracketExpr a, BracketExpr b)
{
    BracketExpr e;
    e.children.push_back(std::move(a));
    e.children.push_back(std::move(b));
    return e;
}

std::size_t BracketExpr::degree() const
{
    return is_letter() ? 1 : children[0].degree() + children[1].degree();
}

// ---------------------------------------------------------------------------

HallBasis::HallBasis(std::size_t generators, std::size_t class_bound)
    : generators_(generators), class_bound_(class_bound)
{
    if (generators == 0 || class_bound == 0)
        throw Error("Hall basis needs at least one generator and class bound >= 1");
    std::vector<std::vector<std::size_t>> by_degree(class_bound + 1);
    for (std::size_t g = 0; g < generators; ++g) {
        words_.push_back({static_cast<int>(g), 0, 0, 1});
        by_degree[1].push_back(g);
    }
    for (std::size_t n = 2; n <= class_bound; ++n) {
        std::vector<std::pair<std::size_t, std::size_t>> found;
        for (std::size_t du = 1; du < n; ++du)
            for (std::size_t u : by_degree[du])
                for (std::size_t v : by_degree[n - du]) {
                    if (!(u < v))
                        continue;
                    const auto &wv = words_[v];
                    if (!wv.is_letter() && !(wv.left <= u))
                        continue;
                    found.emplace_back(u, v);
                }
        std::sort(found.begin(), found.end());
        for (auto [u, v] : found) {
            lookup_[{u, v}] = words_.size();
            by_degree[n].push_back(words_.size());
            words_.push_back({-1, u, v, n});
        }
    }
}

HallBasis::HallBasis(const HallBasis &other)
    : generators_(other.generators_), class_bound_(other.class_bound_), words_(other.words_),
      lookup_(other.lookup_)
{
}

HallBasis &HallBasis::operator=(const HallBasis &other)
{
    if (this != &other) {
        generators_ = other.generators_;
        class_bound_ = other.class_bound_;
        words_ = other.words_;
        lookup_ = other.lookup_;
        std::lock_guard lock(cache_mutex_);
        cache_.clear();
    }
    return *this;
}

std::vector<std::size_t> HallBasis::degree_counts() const
{
    std::vector<std::size_t> counts(class_bound_, 0);
    for (const auto &w : words_)
        ++counts[w.degree - 1];
    return counts;
}

std::vector<std::size_t> HallBasis::indices_of_degree(std::size_t n) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i].degree == n)
            out.push_back(i);
    return out;
}

std::optional<std::size_t> HallBasis::find(std::size_t left, std::size_t right) const
{
    auto it = lookup_.find({left, right});
    if (it == lookup_.end())
        return std::nullopt;
    return it->second;
}

FreeLieElement HallBasis::bracket_words(std::size_t a, std::size_t b) const
{
    if (a == b || words_.at(a).degree + words_.at(b).degree > class_bound_)
        return {};
    if (a > b) {
        FreeLieElement r;
        r.add(bracket_words(b, a), -1);
        return r;
    }
    {
        std::lock_guard lock(cache_mutex_);
        auto it = cache_.find({a, b});
        if (it != cache_.end())
            return it->second;
    }
    // computed outside the lock; concurrent callers may duplicate work but
    // always store the same value
    FreeLieElement r = bracket_uncached(a, b);
    std::lock_guard lock(cache_mutex_);
    cache_.emplace(std::make_pair(a, b), r);
    return r;
}

FreeLieElement HallBasis::bracket_uncached(std::size_t a, std::size_t b) const
{
    // a < b and the degree fits
    const HallWord &wb = words_[b];
    if (wb.is_letter() || wb.left <= a) {
        auto idx = find(a, b);
        if (!idx)
            throw Error("internal: expected Hall word missing");
        FreeLieElement r;
        r.add(*idx, 1);
        return r;
    }
    // [a, [s, t]] = [[a, s], t] + [s, [a, t]] with s > a
    const std::size_t s = wb.left, t = wb.right;
    FreeLieElement as = bracket_words(a, s);
    FreeLieElement at = bracket_words(a, t);
    FreeLieElement r;
    for (const auto &[w, c] : as.coords)
        r.add(bracket_words(w, t), c);
    for (const auto &[w, c] : at.coords)
        r.add(bracket_words(s, w), c);
    return r;
}

FreeLieElement HallBasis::bracket(const FreeLieElement &x, const FreeLieElement &y) const
{
    FreeLieElement r;
    for (const auto &[a, ca] : x.coords)
        for (const auto &[b, cb] : y.coords)
            if (words_[a].degree + words_[b].degree <= class_bound_)
                r.add(bracket_words(a, b), ca * cb);
    return r;
}

FreeLieElement HallBasis::generator(std::size_t g) const
{
    if (g >= generators_)
        throw Error("generator index out of range");
    FreeLieElement r;
    r.add(g, 1);
    return r;
}

FreeLieElement HallBasis::rewrite(const BracketExpr &expr) const
{
    if (expr.is_letter()) {
        if (expr.generator < 0)
            throw Error("bracket expression has an invalid letter");
        return generator(static_cast<std::size_t>(expr.generator));
    }
    if (expr.children.size() != 2)
        throw Error("bracket expression node must have two children");
    return bracket(rewrite(expr.children[0]), rewrite(expr.children[1]));
}

BracketExpr HallBasis::expression(std::size_t word) const
{
    const HallWord &w = words_.at(word);
    if (w.is_letter())
        return BracketExpr::letter(w.generator);
    return BracketExpr::bracket(expression(w.left), expression(w.right));
}

std::string HallBasis::generator_name(std::size_t g) const
{
    if (generators_ <= 3)
        return std::string(1, "xyz"[g]);
    return "x" + std::to_string(g + 1);
}

std::string HallBasis::to_string(std::size_t word) const
{
    const HallWord &w = words_.at(word);
    if (w.is_letter())
        return generator_name(static_cast<std::size_t>(w.generator));
    return "[" + to_string(w.left) + "," + to_string(w.right) + "]";
}

Vector HallBasis::to_vector(const FreeLieElement &x) const
{
    Vector v = zero_vector(size());
    for (const auto &[w, c] : x.coords)
        v.at(w) = c;
    return v;
}

FreeLieElement HallBasis::from_vector(std::span<const Scalar> v) const
{
    if (v.size() != size())
        throw Error("vector length does not match Hall basis size");
    FreeLieElement r;
    for (std::size_t i = 0; i < v.size(); ++i)
        r.add(i, v[i]);
    return r;
}

// ---------------------------------------------------------------------------

LieAlgebra free_nilpotent(std::size_t generators, std::size_t class_bound)
{
    HallBasis hall(generators, class_bound);
    const std::size_t n = hall.size();
    std::vector<std::string> names;
    std::vector<int> grading;
    for (std::size_t i = 0; i < n; ++i) {
        names.push_back(hall.to_string(i));
        grading.push_back(static_cast<int>(hall.degree(i)));
    }
    LieAlgebra L(n, names);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (hall.degree(i) + hall.degree(j) > class_bound)
                continue;
            L.set_bracket(i, j, hall.to_vector(hall.bracket_words(i, j)));
        }
    L.set_grading(std::move(grading));
    return L;
}

// ---------------------------------------------------------------------------

Subspace GradedIdeal::total(std::size_t ambient) const
{
    Subspace s(ambient);
    for (const auto &p : pieces)
        for (const auto &v : p.basis())
            s.insert(v);
    return s;
}

std::vector<std::size_t> GradedIdeal::dims() const
{
    std::vector<std::size_t> d;
    for (const auto &p : pieces)
        d.push_back(p.dim());
    return d;
}

static std::optional<int> homogeneous_degree(const LieAlgebra &L, std::span<const Scalar> v)
{
    std::optional<int> deg;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (sgn(v[i]) == 0)
            continue;
        const int d = (*L.grading())[i];
        if (deg && *deg != d)
            return std::nullopt;
        deg = d;
    }
    return deg;
}

GradedIdeal graded_ideal_closure(const LieAlgebra &L, const std::vector<Vector> &generators)
{
    if (!L.grading())
        throw Error("graded_ideal_closure needs a graded algebra");
    const auto &w = *L.grading();
    const int top = w.empty() ? 0 : *std::max_element(w.begin(), w.end());
    for (int d : w)
        if (d < 1)
            throw Error("graded_ideal_closure expects positive degrees");
    GradedIdeal out;
    out.pieces.assign(static_cast<std::size_t>(top), Subspace(L.dim()));
    for (const auto &g : generators) {
        if (g.size() != L.dim())
            throw Error("ideal generator has wrong length");
        if (is_zero(g))
            continue;
        auto d = homogeneous_degree(L, g);
        if (!d)
            throw Error("ideal generator is not homogeneous");
        out.pieces[*d - 1].insert(g);
    }
    std::vector<std::vector<Vector>> basis_by_degree(static_cast<std::size_t>(top) + 1);
    for (std::size_t i = 0; i < L.dim(); ++i)
        basis_by_degree[w[i]].push_back(unit_vector(L.dim(), i));
    // I_n = S_n + sum_j [L_j, I_{n-j}]
    for (int n = 2; n <= top; ++n)
        for (int j = 1; j < n; ++j)
            for (const auto &x : basis_by_degree[j])
                for (const auto &y : out.pieces[n - j - 1].basis())
                    out.pieces[n - 1].insert(L.bracket(x, y));
    return out;
}

Quotient quotient(const LieAlgebra &L, const Subspace &ideal)
{
    if (ideal.ambient() != L.dim())
        throw Error("quotient: ideal lives in a different ambient space");
    if (!is_ideal(L, ideal))
        throw Error("quotient: subspace is not an ideal");
    Quotient q;
    q.kept = ideal.complement_indices();
    const std::size_t m = q.kept.size();
    std::vector<std::size_t> position(L.dim(), m);
    for (std::size_t k = 0; k < m; ++k)
        position[q.kept[k]] = k;

    auto project = [&](const Vector &v) {
        Vector r = ideal.reduce(v);
        Vector out(m);
        for (std::size_t k = 0; k < m; ++k)
            out[k] = r[q.kept[k]];
        return out;
    };

    q.projection = Matrix(m, L.dim());
    for (std::size_t i = 0; i < L.dim(); ++i) {
        Vector col = project(unit_vector(L.dim(), i));
        for (std::size_t k = 0; k < m; ++k)
            q.projection(k, i) = col[k];
    }

    std::vector<std::string> names;
    for (auto i : q.kept)
        names.push_back(L.names()[i]);
    LieAlgebra a(m, names);
    for (std::size_t s = 0; s < m; ++s)
        for (std::size_t t = s + 1; t < m; ++t)
            a.set_bracket(s, t, project(L.basis_bracket(q.kept[s], q.kept[t])));

    bool homogeneous = L.grading().has_value();
    if (homogeneous)
        for (const auto &b : ideal.basis())
            if (!homogeneous_degree(L, b)) {
                homogeneous = false;
                break;
            }
    if (homogeneous) {
        std::vector<int> w;
        for (auto i : q.kept)
            w.push_back((*L.grading())[i]);
        a.set_grading(std::move(w));
    }
    q.algebra = std::move(a);
    if (!is_homomorphism(L, q.algebra, q.projection))
        throw Error("internal: quotient projection is not a homomorphism");
    return q;
}

} // namespace malcev
