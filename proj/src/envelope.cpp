#include "malcev/envelope.hpp"

namespace malcev {

using Poly = TruncatedAssociative::Poly;

static void accumulate(Poly &p, const TruncatedAssociative::Word &w, const Scalar &c)
{
    if (sgn(c) == 0)
        return;
    auto [it, inserted] = p.emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0)
            p.erase(it);
    }
}

Poly TruncatedAssociative::letter(int g) const
{
    Poly p;
    if (max_degree_ >= 1)
        p[{g}] = 1;
    return p;
}

Poly TruncatedAssociative::one() const { return Poly{{Word{}, Scalar(1)}}; }

Poly TruncatedAssociative::add(const Poly &a, const Poly &b, const Scalar &cb) const
{
    Poly r = a;
    for (const auto &[w, c] : b)
        accumulate(r, w, c * cb);
    return r;
}

Poly TruncatedAssociative::mul(const Poly &a, const Poly &b) const
{
    Poly r;
    for (const auto &[u, cu] : a)
        for (const auto &[v, cv] : b) {
            if (u.size() + v.size() > max_degree_)
                continue;
            Word w = u;
            w.insert(w.end(), v.begin(), v.end());
            accumulate(r, w, cu * cv);
        }
    return r;
}

Poly TruncatedAssociative::commutator(const Poly &a, const Poly &b) const
{
    return add(mul(a, b), mul(b, a), -1);
}

Poly TruncatedAssociative::exp(const Poly &a) const
{
    if (a.count(Word{}))
        throw Error("exp needs an element without constant term");
    Poly result = one();
    Poly term = one();
    for (std::size_t k = 1; k <= max_degree_; ++k) {
        term = mul(term, a);
        if (term.empty())
            break;
        Scalar inv_fact = 1;
        for (std::size_t j = 2; j <= k; ++j)
            inv_fact /= Scalar(static_cast<long>(j));
        result = add(result, term, inv_fact);
    }
    return result;
}

Poly TruncatedAssociative::log(const Poly &a) const
{
    auto it = a.find(Word{});
    if (it == a.end() || it->second != 1)
        throw Error("log needs an element with constant term 1");
    Poly w = a;
    w.erase(Word{});
    Poly result;
    Poly power = one();
    for (std::size_t k = 1; k <= max_degree_; ++k) {
        power = mul(power, w);
        if (power.empty())
            break;
        const Scalar c = Scalar((k % 2 == 1) ? 1 : -1, static_cast<long>(k));
        result = add(result, power, c);
    }
    return result;
}

Poly TruncatedAssociative::embed(const HallBasis &hall, const FreeLieElement &x) const
{
    std::vector<Poly> memo(hall.size());
    std::vector<bool> done(hall.size(), false);
    auto image = [&](auto &&self, std::size_t i) -> const Poly & {
        if (!done[i]) {
            const HallWord &w = hall.word(i);
            memo[i] = w.is_letter() ? letter(w.generator)
                                    : commutator(self(self, w.left), self(self, w.right));
            done[i] = true;
        }
        return memo[i];
    };
    Poly r;
    for (const auto &[i, c] : x.coords)
        r = add(r, image(image, i), c);
    return r;
}

FreeLieElement lie_coordinates(const HallBasis &hall, const Poly &p)
{
    FreeLieElement r;
    for (const auto &[w, c] : p) {
        if (w.empty())
            throw Error("Lie polynomial has a constant term");
        if (w.size() > hall.class_bound())
            continue;
        BracketExpr e = BracketExpr::letter(w[0]);
        for (std::size_t k = 1; k < w.size(); ++k)
            e = BracketExpr::bracket(std::move(e), BracketExpr::letter(w[k]));
        r.add(hall.rewrite(e), c / Scalar(static_cast<long>(w.size())));
    }
    return r;
}

} // namespace malcev
