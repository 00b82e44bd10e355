#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace hypsys {

using Rat = mpq_class;
using Int = mpz_class;

inline int sgn(const Rat& a) { return sgn(a.get_num()); }

inline Rat rat_abs(const Rat& a) { return a < 0 ? Rat(-a) : a; }

inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int rat_floor(const Rat& a) { return floor_div(a.get_num(), a.get_den()); }

inline Int rat_ceil(const Rat& a) { return -rat_floor(Rat(-a)); }

Rat parse_rat(const std::string& s);
std::string rat_to_string(const Rat& a);

/// Best rational approximation of x with |x - p/q| <= tol, via continued fractions.
Rat cf_round(const Rat& x, const Rat& tol);

/// Closed interval with rational endpoints.
struct QInterval {
    Rat lo, hi;

    QInterval() : lo(0), hi(0) {}
    QInterval(Rat v) : lo(v), hi(std::move(v)) {}
    QInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::invalid_argument("QInterval: lo > hi");
    }

    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
    bool overlaps(const QInterval& o) const { return lo <= o.hi && o.lo <= hi; }
    bool subset_of(const QInterval& o) const { return o.lo <= lo && hi <= o.hi; }

    // Sign if certified, 0 only when the interval is exactly {0}; throws if undecided.
    bool sign_known() const { return lo > 0 || hi < 0 || (lo == 0 && hi == 0); }
    int sign() const {
        if (lo > 0) return 1;
        if (hi < 0) return -1;
        if (lo == 0 && hi == 0) return 0;
        throw std::logic_error("QInterval::sign: interval straddles zero");
    }

    QInterval operator-() const { return QInterval(-hi, -lo); }
    QInterval operator+(const QInterval& o) const { return QInterval(lo + o.lo, hi + o.hi); }
    QInterval operator-(const QInterval& o) const { return QInterval(lo - o.hi, hi - o.lo); }
    QInterval operator*(const QInterval& o) const {
        Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        Rat mn = a, mx = a;
        for (const Rat* v : {&b, &c, &d}) {
            if (*v < mn) mn = *v;
            if (*v > mx) mx = *v;
        }
        return QInterval(mn, mx);
    }
    QInterval operator/(const QInterval& o) const {
        if (o.contains_zero()) throw std::domain_error("QInterval: division by interval containing zero");
        return *this * QInterval(Rat(1) / o.hi, Rat(1) / o.lo);
    }

    QInterval abs() const {
        if (lo >= 0) return *this;
        if (hi <= 0) return -*this;
        return QInterval(Rat(0), std::max(Rat(-lo), hi));
    }

    QInterval intersect(const QInterval& o) const {
        return QInterval(std::max(lo, o.lo), std::min(hi, o.hi));
    }

    QInterval hull(const QInterval& o) const {
        return QInterval(std::min(lo, o.lo), std::max(hi, o.hi));
    }
};

inline QInterval operator*(const Rat& a, const QInterval& x) { return QInterval(a) * x; }
inline QInterval operator+(const Rat& a, const QInterval& x) { return QInterval(a) + x; }

}  // namespace hypsys
