#pragma once

#include "hypsys/schottky.hpp"

namespace hypsys {

enum class SalemKind { Salem, SalemQuadraticVacuous, NotSalem };

/// Monic integer reciprocal polynomial with a certified root above 1.
struct SalemCandidate {
    QPoly poly;
    QInterval lambda_interval;  // isolating interval of the root in (1, inf)
};

struct SalemCheck {
    SalemKind kind = SalemKind::NotSalem;
    std::optional<SalemCandidate> candidate;  // set unless NotSalem
    int unit_circle_pairs = 0;
    std::string reason;  // set when NotSalem
};

/// Salem iff reciprocal, exactly one certified root above 1 (with its inverse in
/// (0,1)) and all remaining roots on the unit circle. Degree-2 cases that pass
/// are flagged SalemQuadraticVacuous.
SalemCheck is_salem(const QPoly& poly);

/// Angles theta_i = 2 q_i pi / p_i, pairwise distinct mod 2pi, none zero.
struct AngleTuple {
    std::vector<std::pair<long, long>> entries;  // (q_i, p_i), gcd = 1
};

/// Block rotation-plus-boost model and its exact characteristic polynomial.
struct BlockModel {
    FieldPtr field;                     // compositum of the cosine fields and Q(lambda+1/lambda)
    KPoly p;                            // reciprocal char poly over field
    RMat M;                             // certified real block matrix
    FieldElement two_cosh_eta;          // lambda + 1/lambda in field
    std::vector<FieldElement> two_cos;  // 2cos(theta_i) in field
};
BlockModel build_block_model(const AngleTuple& angles, const SalemCandidate& salem, int d);

/// Toeplitz trace form G_{ij} = sum of mu^{j-i} over roots mu of p, and the
/// companion matrix C of p: C^t G C = G exactly.
struct TraceForm {
    KMat G;
    KMat C;
};
TraceForm trace_form(const KPoly& p);

/// Searches symmetric twists r (r(x) = r(1/x) mod p) of bounded height for one
/// making the twisted trace form admissible. C stays an exact isometry.
struct AdmissibilizeResult {
    QuadraticForm form;
    std::vector<Rat> twist;  // r as coefficients [a_0; a_j for x^j + x^-j]
    std::string certificate;
};
AdmissibilizeResult admissibilize(const KMat& G, const KMat& C, const FieldPtr& k, int d);

/// Exact arithmetic loxodromic with complex translation length (log lambda, angles).
struct SalemInstance {
    int d = 0;
    FieldPtr field;
    QuadraticForm form;
    IsometryK g;
    KPoly char_poly;
    ComplexLength target;
    std::vector<Rat> twist;
};
SalemInstance construct_arithmetic_loxodromic(const SalemCandidate& salem, const AngleTuple& angles,
                                              int d);

/// Extend the form by a leading +1 variable and g by a fixed coordinate.
SalemInstance lift_even_dimension(const SalemInstance& inst);

/// Finite set of rational-angle tuples forming a delta-net of the padded angle
/// simplex under holonomy_distance.
std::vector<AngleTuple> angle_grid(int d, const Rat& delta);

}  // namespace hypsys
