#pragma once

// Unipotent groups exp(u) with the BCH product, semidirect products with
// explicit automorphisms, and words in finitely presented groups.

#include "malcev/free_lie.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace malcev {

/// Hall coordinates (in HallBasis(2, c)) of log(exp x exp y) truncated at
/// class c. Cached per class; safe to call concurrently.
const FreeLieElement &bch_series(std::size_t class_bound);
const HallBasis &bch_hall_basis(std::size_t class_bound);

/// exp(L) for a nilpotent L: underlying set L, product given by BCH (a finite
/// sum because L is nilpotent).
class UnipotentGroup {
  public:
    explicit UnipotentGroup(LieAlgebra algebra);

    const LieAlgebra &algebra() const { return algebra_; }
    std::size_t nilpotency_class() const { return class_; }

    Vector multiply(std::span<const Scalar> x, std::span<const Scalar> y) const;
    Vector inverse(std::span<const Scalar> x) const { return negate(x); }
    Vector identity() const { return zero_vector(algebra_.dim()); }
    /// g h g^-1 h^-1
    Vector commutator(std::span<const Scalar> x, std::span<const Scalar> y) const;

  private:
    LieAlgebra algebra_;
    std::size_t class_;
};

/// One-shot BCH product; prefer UnipotentGroup for repeated products.
Vector bch(std::span<const Scalar> x, std::span<const Scalar> y, const LieAlgebra &L);

/// (n, g) in exp(u) x| G with the left action: (n1,g1)(n2,g2) = (n1 * g1.n2, g1 g2).
struct SemidirectElement {
    Vector log;
    Matrix aut;
    friend bool operator==(const SemidirectElement &, const SemidirectElement &) = default;
};

class SemidirectGroup {
  public:
    explicit SemidirectGroup(LieAlgebra algebra);

    const UnipotentGroup &unipotent() const { return group_; }
    const LieAlgebra &algebra() const { return group_.algebra(); }

    SemidirectElement identity() const;
    SemidirectElement element(Vector log) const; // automorphism part = id
    SemidirectElement element(Vector log, Matrix aut) const; // validated
    SemidirectElement multiply(const SemidirectElement &a, const SemidirectElement &b) const;
    SemidirectElement inverse(const SemidirectElement &a) const;
    bool is_identity(const SemidirectElement &a) const;

  private:
    void validate(const SemidirectElement &a) const;
    UnipotentGroup group_;
};

struct Letter {
    std::size_t generator;
    int exponent; // +1 or -1
};
using GroupWord = std::vector<Letter>;

struct GroupPresentation {
    std::vector<std::string> generators;
    std::vector<GroupWord> relators;

    std::size_t index_of(const std::string &name) const;
    /// Parses "a", "a^-1", "A" is not special.
    Letter parse_letter(const std::string &token) const;
    GroupWord parse_word(const std::vector<std::string> &tokens) const;
    std::string format_word(const GroupWord &w) const;
};

/// [u, v] = u v u^-1 v^-1 on words.
GroupWord commutator_word(const GroupWord &u, const GroupWord &v);
GroupWord inverse_word(const GroupWord &u);

using Assignment = std::map<std::string, SemidirectElement>;

SemidirectElement evaluate_word(const SemidirectGroup &group, const GroupPresentation &p,
                                const Assignment &assignment, const GroupWord &word);

struct RelatorDefect {
    std::size_t relator;
    Vector log;              // log part of the relator's value
    Matrix aut_deviation;    // aut part minus identity
};

struct RepresentationVerdict {
    std::vector<RelatorDefect> failures; // empty iff every relator is trivial
    bool ok() const { return failures.empty(); }
};

RepresentationVerdict check_representation(const SemidirectGroup &group, const GroupPresentation &p,
                                           const Assignment &assignment);

/// Lattice spanned over Z by the columns of `generators` (rational entries).
struct LatticeVerdict {
    bool closed = true;
    // witness when not closed: product a*b outside the lattice
    std::optional<Vector> a, b, product;
    std::size_t checked_pairs = 0;
};

/// Decides whether the Z-span of the given generators is closed under BCH.
/// BCH in lattice coordinates is a polynomial of total degree <= class c, so
/// it maps Z^m x Z^m into the lattice iff it does so on the finitely many
/// integer points with nonnegative coordinates summing to at most c.
LatticeVerdict lattice_closed_under_bch(const LieAlgebra &L, const Matrix &generators);

/// Index of the image lattice (M - I) Z^n in Z^n, or nullopt when infinite.
std::optional<Integer> commutator_index(const Matrix &m);

} // namespace malcev
