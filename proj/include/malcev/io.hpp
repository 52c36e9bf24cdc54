#pragma once

// JSON interchange. Scalars are exact strings "p/q" (or "n"); matrices are
// arrays of rows. Every reader validates what it builds.

#include "malcev/dgla_mc.hpp"
#include "malcev/quadratic.hpp"

#include <json.hpp>

#include <string>

namespace malcev::io {

using Json = nlohmann::ordered_json;

Json to_json(const Scalar &s);
Json to_json(std::span<const Scalar> v);
Json to_json(const Matrix &m);
Json to_json(const std::vector<Vector> &vs);

Scalar scalar_from_json(const Json &j);
Vector vector_from_json(const Json &j);
Matrix matrix_from_json(const Json &j);

/// { "dim", "basis", "brackets": [{"i", "j", "value"}], "grading"? }
Json to_json(const LieAlgebra &L);
LieAlgebra lie_algebra_from_json(const Json &j); // rejects Jacobi failures

/// Hall words as nested arrays: 0 for x_0, [0, 1] for [x_0, x_1].
Json word_to_json(const HallBasis &hall, std::size_t word);
BracketExpr expr_from_json(const Json &j);
/// { "<word json>": scalar, ... }
Json to_json(const HallBasis &hall, const FreeLieElement &x);
FreeLieElement free_element_from_json(const HallBasis &hall, const Json &j);

/// { "dims", "d": [matrices], "product": [{"p", "i", "q", "j", "value"}] };
/// only the entries listed are set, with graded commutativity filling the rest.
Json to_json(const FiniteDGA &A);
FiniteDGA dga_from_json(const Json &j);

/// { "h1", "h2", "pairing": [[[scalars]]] }
CupDatum cup_datum_from_json(const Json &j);
Json to_json(const QuadraticPresentation &qp);
QuadraticPresentation presentation_from_json(const Json &j);

/// { "generators": [names], "relators": [["a", "b", "a^-1", "b^-1"], ...] }
GroupPresentation group_presentation_from_json(const Json &j);
/// { name: { "log": [...], "aut": [[...]]? } }
Assignment assignment_from_json(const SemidirectGroup &G, const GroupPresentation &p, const Json &j);
Json to_json(const GroupPresentation &p, const Assignment &a);

Json read_file(const std::string &path);
/// Stable 64-bit FNV-1a digest of the compact dump, as 16 hex digits.
std::string digest(const Json &j);

} // namespace malcev::io
