#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "hypsys/certified.hpp"
#include "hypsys/errors.hpp"
#include "hypsys/poly.hpp"

namespace hypsys {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/// Algebraic number field Q[x]/(min_poly) with isolated real embeddings.
/// Public construction (`make`) enforces totally real fields; internal code may
/// adjoin roots with complex conjugates (only real embeddings are indexed).
class NumberField {
public:
    const QPoly min_poly;  // monic irreducible over Q
    const int degree;
    const int identity_embedding;  // index into real roots
    const bool totally_real;

    static FieldPtr rationals();
    /// Spec operation make_field: monic irreducible totally real polynomial.
    /// Identity embedding defaults to the largest real root.
    static FieldPtr make(const QPoly& min_poly, std::optional<int> identity = std::nullopt);
    /// Internal: permits complex conjugate roots; identity embedding is the real
    /// root equal to `identity_root` (which must be certified to be a root).
    static FieldPtr make_internal(const QPoly& min_poly, const CertifiedReal& identity_root);

    int num_real_embeddings() const { return (int)isolating_.size(); }
    /// Isolating interval of embedding e, refined below `width`.
    QInterval root_interval(int e, const Rat& width) const;
    CertifiedReal root_value(int e) const;
    CertifiedReal identity_root_value() const { return root_value(identity_embedding); }

    bool same_as(const NumberField& o) const;

private:
    NumberField(QPoly f, std::vector<QInterval> roots, int identity, bool tr);
    mutable std::vector<QInterval> isolating_;
    mutable std::mutex mu_;
};

/// Element of a number field in the power basis of the field generator.
/// A null field means a plain rational constant, promoted on contact.
class FieldElement {
public:
    FieldElement() : coeffs_{Rat(0)} {}
    FieldElement(long v) : coeffs_{Rat(v)} {}
    FieldElement(int v) : coeffs_{Rat(v)} {}
    explicit FieldElement(Rat v) : coeffs_{std::move(v)} {}
    FieldElement(FieldPtr field, std::vector<Rat> coeffs);

    static FieldElement generator(const FieldPtr& field);
    static FieldElement from_rational(const FieldPtr& field, const Rat& v);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_rational() const;
    Rat as_rational() const;  // throws unless rational

    FieldElement operator-() const;
    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    bool operator==(const FieldElement& o) const { return (*this - o).is_zero(); }

    FieldElement inverse() const;

    /// Certified sign at real embedding e; 0 only for the exact zero element.
    int sign_at(int e) const;
    int sign_id() const;
    CertifiedReal embed(int e) const;
    CertifiedReal embed_id() const;

    /// Monic minimal polynomial over Q.
    QPoly min_poly_over_q() const;
    bool is_algebraic_integer() const;

private:
    FieldPtr field_;  // nullptr: rational constant
    std::vector<Rat> coeffs_;
    friend FieldElement promote(const FieldElement& x, const FieldPtr& f);
};

FieldElement promote(const FieldElement& x, const FieldPtr& f);

inline bool kz_is_zero(const FieldElement& a) { return a.is_zero(); }
inline FieldElement kz_inv(const FieldElement& a) { return a.inverse(); }

using KPoly = Poly<FieldElement>;

enum class ArithOp { Add, Sub, Mul, Div };
FieldElement arith(const FieldElement& a, const FieldElement& b, ArithOp op);

/// Field Q(cos(2pi/p)) with generator 2cos(2pi/p); returns (field, cos(2pi/p)).
std::pair<FieldPtr, FieldElement> cos_field(int p);

/// Given t = 2cos(theta), return 2cos(q*theta) (Chebyshev recurrence).
FieldElement chebyshev_two_cos(const FieldElement& t, int q);

/// Ring embedding of one field into another, determined by the generator image.
struct Embedding {
    FieldPtr from, to;
    FieldElement gen_image;  // element of `to`
    FieldElement apply(const FieldElement& x) const;
    KPoly apply(const KPoly& p) const;
};

struct CompositumResult {
    FieldPtr field;
    Embedding map1, map2;
};
CompositumResult compositum(const FieldPtr& k1, const FieldPtr& k2);

/// Adjoin to k the root of p (a k-coefficient polynomial) certified by `root`
/// (its value at the identity embedding). Returns the absolute field, the
/// embedding of k, and the root as an element of the new field.
struct ExtensionResult {
    FieldPtr field;
    Embedding base_map;
    FieldElement root;
};
ExtensionResult extend_with_root(const FieldPtr& k, const KPoly& p, const CertifiedReal& root);

// ---- Sturm machinery over k at the identity embedding ----

struct KSturm {
    std::vector<KPoly> chain;
    explicit KSturm(const KPoly& squarefree);
    int sign_variations(const Rat& x) const;
    int count(const Rat& a, const Rat& b) const;  // roots in (a, b]
};

Rat kpoly_root_bound_id(const KPoly& p);
/// Isolating intervals for real roots of p at the identity embedding (p squarefree over k).
std::vector<QInterval> kpoly_isolate_real_roots_id(const KPoly& squarefree);
QInterval kpoly_refine_root_id(const KPoly& squarefree, QInterval iv, const Rat& width);
CertifiedReal kpoly_root_value_id(const KPoly& squarefree, const QInterval& isolating);
int kpoly_sign_at_rational_id(const KPoly& p, const Rat& x);

/// Monic minimal polynomial over Q of a root of the squarefree k-polynomial p,
/// selected by its certified value at the identity embedding.
QPoly absolute_min_poly(const KPoly& squarefree, const CertifiedReal& root);

}  // namespace hypsys
