#pragma once

#include "json.hpp"

#include "hypsys/salem.hpp"

namespace hypsys {

using Json = nlohmann::json;

// Conventions: rationals are "p/q" strings ("p" when q = 1); polynomials are
// coefficient arrays with the constant term last; field elements are either a
// rational string or {"coeffs": [c0, c1, ...]} in the power basis of the field
// generator; fields are {"min_poly": [...], "identity_embedding": index} with
// the index counting real roots in increasing order, or null for Q.

Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& j);

Json qpoly_to_json(const QPoly& p);
QPoly qpoly_from_json(const Json& j);

Json field_to_json(const FieldPtr& k);
FieldPtr field_from_json(const Json& j);

Json element_to_json(const FieldElement& x);
FieldElement element_from_json(const Json& j, const FieldPtr& k);

Json kmat_to_json(const KMat& m);
KMat kmat_from_json(const Json& j, const FieldPtr& k);

Json form_to_json(const QuadraticForm& q);
QuadraticForm form_from_json(const Json& j);

Json halfspace_to_json(const HalfSpace& h);
HalfSpace halfspace_from_json(const Json& j, const QuadraticForm& q);

Json isometry_to_json(const IsometryK& g);
IsometryK isometry_from_json(const Json& j);

Json schottky_to_json(const std::vector<GeneratorDatum>& data);
std::vector<GeneratorDatum> schottky_from_json(const Json& j);

Json salem_instance_to_json(const SalemInstance& inst, int digits);
SalemInstance salem_instance_from_json(const Json& j);

/// Certified decimal enclosure [lo, hi] at the requested number of digits.
Json interval_to_json(const CertifiedReal& x, int digits);

/// Parse a decimal or rational literal ("3.14", "-7/2") into a rational.
Rat rat_from_decimal(const std::string& s);

}  // namespace hypsys
