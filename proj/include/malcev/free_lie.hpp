#pragma once

// Class-truncated free Lie algebras in a Hall basis.
//
// Hall set convention (fixed so serialized coordinates stay stable):
//   * letters x_0 < x_1 < ... < x_{k-1} are the degree-1 words;
//   * [u, v] is a Hall word iff u, v are Hall words with u < v, and either v
//     is a letter or v = [s, t] with s <= u;
//   * words are ordered by degree, and within a degree lexicographically by
//     the indices of (left, right).
// Indices therefore increase with degree, and index order is the Hall order.
// With this convention [x, y], [x, [x, y]], [y, [x, y]], ... are basic.

#include "malcev/lie_algebra.hpp"

#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace malcev {

struct HallWord {
    int generator = -1;       // >= 0 for letters
    std::size_t left = 0;     // for brackets: index of the left factor
    std::size_t right = 0;    // index of the right factor
    std::size_t degree = 1;

    bool is_letter() const { return generator >= 0; }
};

/// Element of L(V)/Gamma_{c+1}: sparse Hall coordinates (index -> coefficient).
struct FreeLieElement {
    std::map<std::size_t, Scalar> coords;

    bool is_zero() const { return coords.empty(); }
    void add(std::size_t word, const Scalar &c);
    void add(const FreeLieElement &other, const Scalar &c = 1);
    friend bool operator==(const FreeLieElement &, const FreeLieElement &) = default;
};

/// Formal bracket expression over generator indices, e.g. [[x, y], x].
struct BracketExpr {
    int generator = -1;
    std::vector<BracketExpr> children; // empty for letters, two entries otherwise

    static BracketExpr letter(int g);
    static BracketExpr bracket(BracketExpr a, BracketExpr b);
    bool is_letter() const { return children.empty(); }
    std::size_t degree() const;
};

class HallBasis {
  public:
    HallBasis(std::size_t generators, std::size_t class_bound);

    // Copies share nothing; the rewrite cache is rebuilt lazily.
    HallBasis(const HallBasis &other);
    HallBasis &operator=(const HallBasis &other);

    std::size_t generators() const { return generators_; }
    std::size_t class_bound() const { return class_bound_; }
    std::size_t size() const { return words_.size(); }
    const HallWord &word(std::size_t i) const { return words_.at(i); }
    std::size_t degree(std::size_t i) const { return words_.at(i).degree; }
    /// counts[n-1] = number of Hall words of degree n
    std::vector<std::size_t> degree_counts() const;
    std::vector<std::size_t> indices_of_degree(std::size_t n) const;
    std::optional<std::size_t> find(std::size_t left, std::size_t right) const;

    /// Hall expansion of [w_a, w_b], truncated above the class bound.
    FreeLieElement bracket_words(std::size_t a, std::size_t b) const;
    FreeLieElement bracket(const FreeLieElement &x, const FreeLieElement &y) const;
    FreeLieElement generator(std::size_t g) const;
    FreeLieElement rewrite(const BracketExpr &expr) const;
    BracketExpr expression(std::size_t word) const;

    std::string generator_name(std::size_t g) const;
    std::string to_string(std::size_t word) const;
    Vector to_vector(const FreeLieElement &x) const;
    FreeLieElement from_vector(std::span<const Scalar> v) const;

  private:
    FreeLieElement bracket_uncached(std::size_t a, std::size_t b) const;

    std::size_t generators_;
    std::size_t class_bound_;
    std::vector<HallWord> words_;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> lookup_;

    mutable std::mutex cache_mutex_;
    mutable std::map<std::pair<std::size_t, std::size_t>, FreeLieElement> cache_;
};

/// Free nilpotent Lie algebra of class c on k generators, basis = Hall words,
/// graded by word length.
LieAlgebra free_nilpotent(std::size_t generators, std::size_t class_bound);

/// Ideal generated by homogeneous elements S of a graded algebra, returned
/// degree by degree: pieces[n-1] spans the degree-n part (ambient coordinates).
struct GradedIdeal {
    std::vector<Subspace> pieces;
    Subspace total(std::size_t ambient) const;
    std::vector<std::size_t> dims() const;
};

GradedIdeal graded_ideal_closure(const LieAlgebra &L, const std::vector<Vector> &generators);

/// L / I on the complement spanned by the non-pivot standard basis vectors of
/// I's echelon form. projection is (dim L - dim I) x dim L.
struct Quotient {
    LieAlgebra algebra;
    Matrix projection;
    std::vector<std::size_t> kept; // basis indices of L forming the complement
};

Quotient quotient(const LieAlgebra &L, const Subspace &ideal);

} // namespace malcev
