#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "hypsys/poly.hpp"
#include "hypsys/rational.hpp"

namespace hypsys {

/// A real number known through arbitrarily refinable rational enclosures.
/// Refinements are nested; values are immutable and cheap to copy (shared node).
class CertifiedReal {
public:
    using Evaluator = std::function<QInterval(long prec_bits)>;

    CertifiedReal() : CertifiedReal(Rat(0)) {}
    explicit CertifiedReal(Rat v);
    explicit CertifiedReal(long v) : CertifiedReal(Rat(v)) {}

    static CertifiedReal from_eval(Evaluator f);
    /// Real algebraic number: the unique root of `squarefree` inside `isolating`.
    static CertifiedReal algebraic(QPoly squarefree, QInterval isolating);

    /// Enclosure with width roughly 2^-prec_bits (never wider than a previous call).
    QInterval interval(long prec_bits = 64) const;
    /// Refine until the enclosure is narrower than `width`.
    QInterval refine_below(const Rat& width) const;

    /// Exact rational payload, if this value was constructed as one.
    std::optional<Rat> exact() const;

    /// Certified sign. Returns 0 only for an exact rational zero; loops on
    /// a non-exact value that happens to be zero, so callers must rule that out.
    int sign() const;

    double approx() const;

    CertifiedReal operator-() const;
    CertifiedReal operator+(const CertifiedReal& o) const;
    CertifiedReal operator-(const CertifiedReal& o) const;
    CertifiedReal operator*(const CertifiedReal& o) const;
    CertifiedReal operator/(const CertifiedReal& o) const;

private:
    struct Node;
    std::shared_ptr<Node> node_;
    explicit CertifiedReal(std::shared_ptr<Node> n) : node_(std::move(n)) {}
};

CertifiedReal cr_pi();
CertifiedReal cr_sqrt(const CertifiedReal& x);
CertifiedReal cr_exp(const CertifiedReal& x);
CertifiedReal cr_log(const CertifiedReal& x);
CertifiedReal cr_cos(const CertifiedReal& x);
CertifiedReal cr_sin(const CertifiedReal& x);
CertifiedReal cr_cosh(const CertifiedReal& x);
CertifiedReal cr_sinh(const CertifiedReal& x);
CertifiedReal cr_acos(const CertifiedReal& x);
CertifiedReal cr_acosh(const CertifiedReal& x);
CertifiedReal cr_abs(const CertifiedReal& x);
CertifiedReal cr_max(const CertifiedReal& a, const CertifiedReal& b);
CertifiedReal cr_min(const CertifiedReal& a, const CertifiedReal& b);

/// a < b certified by refinement; loops if a == b exactly.
bool cr_less(const CertifiedReal& a, const CertifiedReal& b);

/// Decimal string of the midpoint, trusted to `digits` significant decimals.
std::string cr_to_decimal(const CertifiedReal& x, int digits);

}  // namespace hypsys
