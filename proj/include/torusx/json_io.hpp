// JSON forms of fans, verdicts and reports. Rationals and cyclotomic numbers
// are written as strings in the text grammar ("2/3", "1 - zeta6"); integer
// vectors as JSON integers.
#pragma once

#include "torusx/amoeba.hpp"
#include "torusx/fan.hpp"
#include "torusx/intersect.hpp"
#include "torusx/torus.hpp"

#include <json.hpp>

namespace torusx {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& q);
Json to_json(const CycloNumber& c);
Json to_json(const Cone& c);
Json to_json(const Fan& fan);
Json to_json(const TorsionPoint& p);
Json to_json(const Subtorus& h);
Json to_json(const Coset& c);
Json to_json(const IntersectionVerdict& v);
Json to_json(const SurjectivityVerdict& v);
Json to_json(const DensityReport& r);
Json to_json(const BadSubtorus& b);
Json to_json(const TorsionCosetHit& h);
Json to_json(const PointCloud& cloud);

/// Integer rows; throws std::invalid_argument on anything else.
IntMatrix int_matrix_from_json(const Json& j, std::size_t cols);
/// Rows of rationals given as integers or "p/q" strings.
std::vector<RatVector> rat_rows_from_json(const Json& j, std::size_t cols);

/// {"order": m, "angles": [a_1, ..., a_n]}
TorsionPoint torsion_point_from_json(const Json& j);

/// {"base": [cyclo strings], and one of "directions": [[v]] (columns of the
/// parametrization) or "equations": [[a]] (characters trivial on H)}.
Coset coset_from_json(const Json& j, std::size_t n);

}  // namespace torusx
