#include "malcev/group.hpp"

#include "malcev/envelope.hpp"

#include <memory>
#include <mutex>

namespace malcev {

namespace {

struct SeriesCache {
    std::mutex mutex;
    std::map<std::size_t, std::unique_ptr<HallBasis>> bases;
    std::map<std::size_t, FreeLieElement> series;
};

SeriesCache &series_cache()
{
    static SeriesCache cache;
    return cache;
}

} // namespace

const HallBasis &bch_hall_basis(std::size_t class_bound)
{
    bch_series(class_bound);
    auto &cache = series_cache();
    std::lock_guard lock(cache.mutex);
    return *cache.bases.at(class_bound);
}

const FreeLieElement &bch_series(std::size_t class_bound)
{
    if (class_bound == 0)
        throw Error("BCH series needs class >= 1");
    auto &cache = series_cache();
    std::lock_guard lock(cache.mutex);
    auto it = cache.series.find(class_bound);
    if (it != cache.series.end())
        return it->second;
    auto hall = std::make_unique<HallBasis>(2, class_bound);
    TruncatedAssociative env(class_bound);
    auto z = env.log(env.mul(env.exp(env.letter(0)), env.exp(env.letter(1))));
    FreeLieElement s = lie_coordinates(*hall, z);
    cache.bases.emplace(class_bound, std::move(hall));
    return cache.series.emplace(class_bound, std::move(s)).first->second;
}

// ---------------------------------------------------------------------------

UnipotentGroup::UnipotentGroup(LieAlgebra algebra)
    : algebra_(std::move(algebra)), class_(malcev::nilpotency_class(algebra_))
{
}

Vector UnipotentGroup::multiply(std::span<const Scalar> x, std::span<const Scalar> y) const
{
    const std::size_t n = algebra_.dim();
    if (x.size() != n || y.size() != n)
        throw Error("group element has wrong length");
    if (class_ <= 1)
        return add(x, y);
    const HallBasis &hall = bch_hall_basis(class_);
    const FreeLieElement &series = bch_series(class_);
    // substitute x, y for the two letters, one Hall word at a time
    std::vector<std::optional<Vector>> value(hall.size());
    auto eval = [&](auto &&self, std::size_t i) -> const Vector & {
        if (!value[i]) {
            const HallWord &w = hall.word(i);
            if (w.is_letter())
                value[i] = Vector(w.generator == 0 ? x.begin() : y.begin(),
                                  w.generator == 0 ? x.end() : y.end());
            else
                value[i] = algebra_.bracket(self(self, w.left), self(self, w.right));
        }
        return *value[i];
    };
    Vector r = zero_vector(n);
    for (const auto &[i, c] : series.coords)
        axpy(r, c, eval(eval, i));
    return r;
}

Vector UnipotentGroup::commutator(std::span<const Scalar> x, std::span<const Scalar> y) const
{
    return multiply(multiply(x, y), multiply(inverse(x), inverse(y)));
}

Vector bch(std::span<const Scalar> x, std::span<const Scalar> y, const LieAlgebra &L)
{
    return UnipotentGroup(L).multiply(x, y);
}

// ---------------------------------------------------------------------------

SemidirectGroup::SemidirectGroup(LieAlgebra algebra) : group_(std::move(algebra)) {}

SemidirectElement SemidirectGroup::identity() const
{
    return {group_.identity(), Matrix::identity(algebra().dim())};
}

SemidirectElement SemidirectGroup::element(Vector log) const
{
    if (log.size() != algebra().dim())
        throw Error("group element has wrong length");
    return {std::move(log), Matrix::identity(algebra().dim())};
}

SemidirectElement SemidirectGroup::element(Vector log, Matrix aut) const
{
    SemidirectElement e{std::move(log), std::move(aut)};
    validate(e);
    return e;
}

void SemidirectGroup::validate(const SemidirectElement &a) const
{
    if (a.log.size() != algebra().dim())
        throw Error("group element has wrong length");
    if (!check_automorphism(algebra(), a.aut))
        throw Error("automorphism part is not a Lie algebra automorphism");
}

SemidirectElement SemidirectGroup::multiply(const SemidirectElement &a,
                                            const SemidirectElement &b) const
{
    return {group_.multiply(a.log, a.aut * b.log), a.aut * b.aut};
}

SemidirectElement SemidirectGroup::inverse(const SemidirectElement &a) const
{
    auto inv = malcev::inverse(a.aut);
    if (!inv)
        throw Error("automorphism part is singular");
    return {negate(*inv * a.log), *inv};
}

bool SemidirectGroup::is_identity(const SemidirectElement &a) const
{
    return is_zero(a.log) && a.aut == Matrix::identity(algebra().dim());
}

// ---------------------------------------------------------------------------

std::size_t GroupPresentation::index_of(const std::string &name) const
{
    for (std::size_t i = 0; i < generators.size(); ++i)
        if (generators[i] == name)
            return i;
    throw Error("unknown generator '" + name + "'");
}

Letter GroupPresentation::parse_letter(const std::string &token) const
{
    const auto caret = token.find('^');
    if (caret == std::string::npos)
        return {index_of(token), 1};
    const std::string exp = token.substr(caret + 1);
    if (exp != "-1" && exp != "1")
        throw Error("only exponents 1 and -1 are supported: '" + token + "'");
    return {index_of(token.substr(0, caret)), exp == "-1" ? -1 : 1};
}

GroupWord GroupPresentation::parse_word(const std::vector<std::string> &tokens) const
{
    GroupWord w;
    for (const auto &t : tokens)
        w.push_back(parse_letter(t));
    return w;
}

std::string GroupPresentation::format_word(const GroupWord &w) const
{
    std::string s;
    for (const auto &l : w) {
        if (!s.empty())
            s += ' ';
        s += generators.at(l.generator);
        if (l.exponent < 0)
            s += "^-1";
    }
    return s.empty() ? "1" : s;
}

GroupWord inverse_word(const GroupWord &u)
{
    GroupWord r;
    for (auto it = u.rbegin(); it != u.rend(); ++it)
        r.push_back({it->generator, -it->exponent});
    return r;
}

GroupWord commutator_word(const GroupWord &u, const GroupWord &v)
{
    GroupWord r = u;
    r.insert(r.end(), v.begin(), v.end());
    const auto ui = inverse_word(u), vi = inverse_word(v);
    r.insert(r.end(), ui.begin(), ui.end());
    r.insert(r.end(), vi.begin(), vi.end());
    return r;
}

SemidirectElement evaluate_word(const SemidirectGroup &group, const GroupPresentation &p,
                                const Assignment &assignment, const GroupWord &word)
{
    SemidirectElement acc = group.identity();
    for (const auto &l : word) {
        if (l.generator >= p.generators.size())
            throw Error("word uses a generator outside the presentation");
        auto it = assignment.find(p.generators[l.generator]);
        if (it == assignment.end())
            throw Error("no image assigned to generator '" + p.generators[l.generator] + "'");
        acc = group.multiply(acc, l.exponent > 0 ? it->second : group.inverse(it->second));
    }
    return acc;
}

RepresentationVerdict check_representation(const SemidirectGroup &group, const GroupPresentation &p,
                                           const Assignment &assignment)
{
    RepresentationVerdict v;
    const Matrix id = Matrix::identity(group.algebra().dim());
    for (std::size_t r = 0; r < p.relators.size(); ++r) {
        auto value = evaluate_word(group, p, assignment, p.relators[r]);
        if (!group.is_identity(value))
            v.failures.push_back({r, value.log, value.aut - id});
    }
    return v;
}

// ---------------------------------------------------------------------------

namespace {

void bounded_compositions(std::size_t length, std::size_t budget, std::vector<int> &current,
                          std::vector<std::vector<int>> &out)
{
    if (current.size() == length) {
        out.push_back(current);
        return;
    }
    for (std::size_t k = 0; k <= budget; ++k) {
        current.push_back(static_cast<int>(k));
        bounded_compositions(length, budget - k, current, out);
        current.pop_back();
    }
}

} // namespace

LatticeVerdict lattice_closed_under_bch(const LieAlgebra &L, const Matrix &generators)
{
    if (generators.rows() != L.dim())
        throw Error("lattice generators must have the algebra's dimension");
    UnipotentGroup group(L);
    const std::size_t m = generators.cols();
    const std::size_t c = std::max<std::size_t>(group.nilpotency_class(), 1);
    std::vector<std::vector<int>> points;
    std::vector<int> scratch;
    bounded_compositions(2 * m, c, scratch, points);
    std::stable_sort(points.begin(), points.end(), [](const auto &p, const auto &q) {
        int sp = 0, sq = 0;
        for (int v : p)
            sp += v;
        for (int v : q)
            sq += v;
        return sp < sq;
    });
    LatticeVerdict verdict;
    for (const auto &pt : points) {
        Vector a = zero_vector(L.dim()), b = zero_vector(L.dim());
        for (std::size_t i = 0; i < m; ++i) {
            axpy(a, Scalar(pt[i]), generators.column(i));
            axpy(b, Scalar(pt[m + i]), generators.column(i));
        }
        Vector prod = group.multiply(a, b);
        ++verdict.checked_pairs;
        if (!in_lattice(generators, prod)) {
            verdict.closed = false;
            verdict.a = std::move(a);
            verdict.b = std::move(b);
            verdict.product = std::move(prod);
            return verdict;
        }
    }
    return verdict;
}

std::optional<Integer> commutator_index(const Matrix &m)
{
    if (!m.is_square() || !m.is_integral())
        throw Error("commutator_index needs a square integral matrix");
    auto snf = smith_normal_form(m - Matrix::identity(m.rows()));
    Integer index = 1;
    for (const auto &d : snf.invariants()) {
        if (d == 0)
            return std::nullopt;
        index *= abs(d);
    }
    return index;
}

} // namespace malcev
