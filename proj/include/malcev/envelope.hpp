#pragma once

// Truncated free associative algebra k<x_0..x_{k-1}>/(words of length > c).
// Used to compute log(exp X exp Y) for the BCH series.

#include "malcev/free_lie.hpp"

#include <map>
#include <vector>

namespace malcev {

class TruncatedAssociative {
  public:
    using Word = std::vector<int>;
    using Poly = std::map<Word, Scalar>;

    explicit TruncatedAssociative(std::size_t max_degree) : max_degree_(max_degree) {}

    std::size_t max_degree() const { return max_degree_; }

    Poly letter(int g) const;
    Poly one() const;
    Poly add(const Poly &a, const Poly &b, const Scalar &cb = 1) const;
    Poly mul(const Poly &a, const Poly &b) const;
    Poly commutator(const Poly &a, const Poly &b) const;
    /// exp(a) for a with zero constant term.
    Poly exp(const Poly &a) const;
    /// log(a) for a with constant term 1.
    Poly log(const Poly &a) const;
    /// Image of a Hall-basis element under [u, v] -> uv - vu.
    Poly embed(const HallBasis &hall, const FreeLieElement &x) const;

  private:
    std::size_t max_degree_;
};

/// Hall coordinates of a Lie polynomial given in the associative envelope,
/// via the Dynkin-Specht-Wever projection P_n = (1/n) sum_w c_w [w]
/// (left-normed brackets). Only valid if p really is a Lie polynomial.
FreeLieElement lie_coordinates(const HallBasis &hall, const TruncatedAssociative::Poly &p);

} // namespace malcev
