#pragma once

#include <json.hpp>

#include <string>

#include "dop/orthogonalize.hpp"
#include "dop/recurrence.hpp"
#include "dop/staircase.hpp"

namespace dop {

// Insertion-ordered JSON keeps every emitted document byte-deterministic.
using Json = nlohmann::ordered_json;

// Integers that fit a signed 64-bit value become JSON numbers; everything
// else (big integers, true fractions) becomes a "p/q" string.
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json matrix_to_json(const RatMatrix& m);
RatMatrix matrix_from_json(const Json& j);

Json points_to_json(const PointSet& v);
PointSet points_from_json(const Json& j);

Json staircase_to_json(const Staircase& lam);
Staircase staircase_from_json(const Json& j);

Json weights_to_json(const WeightFn& w);
// {"uniform": true} needs the point count to materialize the weights.
WeightFn weights_from_json(const Json& j, std::size_t n_points);

Json poly_to_json(const Poly& p);
Poly poly_from_json(const Json& j, unsigned dim);

Json basis_to_json(const OrthoBasis& basis);
// Leading-coefficient matrices are recomputed from the blocks; the
// positive-weights flag is not stored, callers set it when they know better.
OrthoBasis basis_from_json(const Json& j);

Json recurrence_to_json(const Recurrence& rec);
Recurrence recurrence_from_json(const Json& j);

Json measure_to_json(const RecoveredMeasure& m);

Json float_basis_to_json(const std::vector<std::vector<FloatPoly>>& blocks);

Json load_json(const std::string& path);
// Writes through a temp file and renames, so readers never see a torn file.
void save_json(const std::string& path, const Json& j);

}  // namespace dop
