#pragma once

#include "hypsys/quadform.hpp"

namespace hypsys {

/// Dense matrix of certified reals.
struct RMat {
    int rows = 0, cols = 0;
    std::vector<CertifiedReal> a;

    RMat() = default;
    RMat(int r, int c) : rows(r), cols(c), a((size_t)r * c) {}
    static RMat identity(int n);
    static RMat from_k(const KMat& m, int embedding);
    static RMat from_k_id(const KMat& m);

    CertifiedReal& at(int i, int j) { return a[(size_t)i * cols + j]; }
    const CertifiedReal& at(int i, int j) const { return a[(size_t)i * cols + j]; }

    RMat operator*(const RMat& o) const;
    RMat operator-(const RMat& o) const;
    RMat transposed() const;
    std::vector<CertifiedReal> apply(const std::vector<CertifiedReal>& v) const;
    /// Largest entry magnitude, as a certified real.
    CertifiedReal max_abs() const;
};

/// Point on the upper sheet of q = -1 (coordinates at the identity embedding).
struct HPoint {
    std::vector<CertifiedReal> coords;
};

/// Hyperplane v-perp for a spacelike k-rational normal v.
struct HPlane {
    QuadraticForm form;
    std::vector<FieldElement> normal;
    /// Checks q(normal) > 0 at the identity embedding.
    static HPlane make(QuadraticForm form, std::vector<FieldElement> normal);
};

/// {x : side * <x, normal> >= 0}.
struct HalfSpace {
    HPlane plane;
    int side = 1;
};

enum class PlaneRelationKind { Intersecting, Asymptotic, Ultraparallel };

struct PlaneRelation {
    PlaneRelationKind kind;
    std::optional<CertifiedReal> distance;  // present iff Ultraparallel
};

/// Real matrix M with M^t Q M = J (Lorentz form), certified and refinable.
/// Requires identity-embedding signature (dim-1, 1).
RMat standardize(const QuadraticForm& Q);

/// Exact: g^t Q g = Q and det g = 1 over k.
bool is_isometry(const KMat& g, const QuadraticForm& Q);

/// Sheet preservation. Exact (reduces to a sign in k via the diagonalization).
bool is_orthochronous(const KMat& g, const QuadraticForm& Q);

/// Classification of a pair of hyperplanes; boundary case decided exactly in k.
/// Coincident planes report Asymptotic (the closures meet).
PlaneRelation plane_relation(const HPlane& p1, const HPlane& p2);

std::pair<bool, std::optional<CertifiedReal>> strongly_disjoint(const HalfSpace& h1,
                                                                const HalfSpace& h2);

struct ProximityEntry {
    CertifiedReal distance;  // 0 unless ultraparallel
    bool below = false;      // distance <= D
};
std::vector<std::vector<ProximityEntry>> proximity_matrix(const std::vector<HPlane>& planes,
                                                          const Rat& D);

/// Round a certified spacelike normal into k^dim, entrywise within eps after unit
/// normalization, keeping the spacelike property (verified exactly in k).
HalfSpace rationalize_halfspace(const QuadraticForm& Q, const std::vector<CertifiedReal>& normal,
                                const Rat& eps);

/// <u, v> with the Gram matrix embedded at the identity embedding.
CertifiedReal pair_real(const QuadraticForm& Q, const std::vector<CertifiedReal>& u,
                        const std::vector<CertifiedReal>& v);

/// Hyperbolic distance from a point on the upper sheet to a plane.
CertifiedReal point_plane_distance(const HPoint& x, const HPlane& p);

/// The point M * (y, sqrt(1+|y|^2)) on the upper sheet of Q, M = standardize(Q).
HPoint hpoint_from_chart(const QuadraticForm& Q, const RMat& M, const std::vector<Rat>& y);

}  // namespace hypsys
