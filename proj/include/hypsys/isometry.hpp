#pragma once

#include "hypsys/hypgeom.hpp"

namespace hypsys {

/// Element of SO'(q, k): exact matrix, validated at construction.
struct IsometryK {
    QuadraticForm form;
    KMat matrix;
    KPoly char_poly;  // monic, degree dim

    static IsometryK make(QuadraticForm form, KMat matrix);
    IsometryK inverse() const;
    IsometryK operator*(const IsometryK& o) const;
};

enum class IsometryClass { Identity, Elliptic, Parabolic, Loxodromic };

/// One rotation angle with its exact algebraic certificate.
struct HolonomyAngle {
    CertifiedReal theta;       // in (0, pi]
    int multiplicity = 1;
    QPoly two_cos_min_poly;    // minimal polynomial over Q of 2cos(theta)
    CertifiedReal two_cos;
};

/// O(d-1)-conjugacy class of the rotational part: the multiset of rotation angles.
/// For even d-1 this merges the two chiral SO-classes sharing an angle multiset.
struct HolonomyClass {
    int d = 0;                          // ambient hyperbolic dimension
    std::vector<HolonomyAngle> angles;  // sorted by angle, each with multiplicity
    int trivial_count = 0;              // +1 eigenvalues among the d-1 rotational ones
};

struct ComplexLength {
    CertifiedReal length;
    HolonomyClass holonomy;
};

IsometryClass classify(const IsometryK& g);

/// log of the certified real eigenvalue exceeding 1. Requires Loxodromic.
CertifiedReal translation_length(const IsometryK& g);

HolonomyClass holonomy(const IsometryK& g);

ComplexLength complex_length(const IsometryK& g);

/// Pseudometric on holonomy classes: min over matchings of padded angle vectors
/// of the max angle difference.
CertifiedReal holonomy_distance(const HolonomyClass& h1, const HolonomyClass& h2);

/// Order of the rotational part; nullopt means infinite (some eigenvalue is not
/// a root of unity).
std::optional<long> holonomy_order(const HolonomyClass& h);

/// Basis over k of {X : X^t Q + Q X = 0}, dimension dim(dim-1)/2.
std::vector<KMat> skew_basis(const QuadraticForm& Q);

/// g = (I+X)(I-X)^{-1} for q-skew X; lands in SO'(q,k).
IsometryK cayley(const QuadraticForm& Q, const KMat& X);

/// Inverse Cayley chart X = (g-I)(g+I)^{-1}, certified; throws CayleyChartMiss
/// when g+I is not invertible.
RMat inverse_cayley(const RMat& g);

/// k-rational approximation of a real orthochronous isometry, max-entry distance < eps.
IsometryK approximate(const QuadraticForm& Q, const RMat& g_target, const Rat& eps);

/// Loxodromic g over Q(sqrt2) in dimension d with rotation angle arccos(3/5)
/// (infinite-order holonomy) and translation length below eps.
IsometryK build_infinite_holonomy_example(int d, const Rat& eps);

}  // namespace hypsys
