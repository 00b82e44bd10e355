#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hypsys/rational.hpp"

namespace hypsys {

inline bool kz_is_zero(const Rat& a) { return a == 0; }
inline Rat kz_inv(const Rat& a) { return Rat(1) / a; }

/// Dense univariate polynomial over a field K, coefficients ascending, no trailing zeros.
template <class K>
struct Poly {
    std::vector<K> c;

    Poly() = default;
    explicit Poly(std::vector<K> coeffs) : c(std::move(coeffs)) { trim(); }
    static Poly constant(K v) { return Poly(std::vector<K>{std::move(v)}); }
    static Poly x() { return Poly(std::vector<K>{K(0), K(1)}); }

    void trim() {
        while (!c.empty() && kz_is_zero(c.back())) c.pop_back();
    }
    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const K& lc() const { return c.back(); }
    K coeff(int i) const { return (i >= 0 && i < (int)c.size()) ? c[i] : K(0); }

    Poly operator-() const {
        Poly r = *this;
        for (auto& a : r.c) a = -a;
        return r;
    }
    Poly operator+(const Poly& o) const {
        std::vector<K> r(std::max(c.size(), o.c.size()), K(0));
        for (size_t i = 0; i < c.size(); ++i) r[i] = c[i];
        for (size_t i = 0; i < o.c.size(); ++i) r[i] = r[i] + o.c[i];
        return Poly(std::move(r));
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }
    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly();
        std::vector<K> r(c.size() + o.c.size() - 1, K(0));
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = 0; j < o.c.size(); ++j) r[i + j] = r[i + j] + c[i] * o.c[j];
        return Poly(std::move(r));
    }
    Poly operator*(const K& s) const {
        Poly r = *this;
        for (auto& a : r.c) a = a * s;
        r.trim();
        return r;
    }

    bool operator==(const Poly& o) const {
        if (c.size() != o.c.size()) return false;
        for (size_t i = 0; i < c.size(); ++i)
            if (!kz_is_zero(c[i] - o.c[i])) return false;
        return true;
    }

    /// Horner evaluation at a point of any compatible ring.
    template <class T>
    T eval(const T& x) const {
        if (is_zero()) return T(0);
        T r(0);
        for (int i = deg(); i >= 0; --i) r = r * x + T(c[i]);
        return r;
    }

    Poly derivative() const {
        if (deg() < 1) return Poly();
        std::vector<K> r(c.size() - 1, K(0));
        for (size_t i = 1; i < c.size(); ++i) r[i - 1] = c[i] * K((long)i);
        return Poly(std::move(r));
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return *this * kz_inv(lc());
    }

    /// Coefficients reversed: x^deg * p(1/x).
    Poly reversed() const {
        std::vector<K> r(c.rbegin(), c.rend());
        return Poly(std::move(r));
    }
};

template <class K>
std::pair<Poly<K>, Poly<K>> poly_divmod(const Poly<K>& a, const Poly<K>& b) {
    if (b.is_zero()) throw std::domain_error("poly_divmod: division by zero polynomial");
    Poly<K> q, r = a;
    q.c.assign(std::max(0, a.deg() - b.deg() + 1), K(0));
    K binv = kz_inv(b.lc());
    while (!r.is_zero() && r.deg() >= b.deg()) {
        K f = r.lc() * binv;
        int s = r.deg() - b.deg();
        q.c[s] = q.c[s] + f;
        for (int i = 0; i <= b.deg(); ++i) r.c[i + s] = r.c[i + s] - f * b.c[i];
        r.trim();
    }
    q.trim();
    return {q, r};
}

template <class K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
    while (!b.is_zero()) {
        auto [q, r] = poly_divmod(a, b);
        a = b;
        b = r;
    }
    return a.is_zero() ? a : a.monic();
}

/// Extended gcd: returns (g, u, v) with u*a + v*b = g, g monic (or zero).
template <class K>
std::tuple<Poly<K>, Poly<K>, Poly<K>> poly_xgcd(const Poly<K>& a, const Poly<K>& b) {
    Poly<K> r0 = a, r1 = b;
    Poly<K> s0 = Poly<K>::constant(K(1)), s1;
    Poly<K> t0, t1 = Poly<K>::constant(K(1));
    while (!r1.is_zero()) {
        auto [q, r] = poly_divmod(r0, r1);
        r0 = r1;
        r1 = r;
        Poly<K> s = s0 - q * s1, t = t0 - q * t1;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    if (r0.is_zero()) return {r0, s0, t0};
    K inv = kz_inv(r0.lc());
    return {r0 * inv, s0 * inv, t0 * inv};
}

template <class K>
Poly<K> poly_squarefree_part(const Poly<K>& a) {
    if (a.deg() < 1) return a.monic();
    Poly<K> g = poly_gcd(a, a.derivative());
    return poly_divmod(a, g).first.monic();
}

/// Squarefree decomposition (Yun): returns [(factor, multiplicity)], factors monic.
template <class K>
std::vector<std::pair<Poly<K>, int>> poly_squarefree_decomposition(const Poly<K>& f) {
    std::vector<std::pair<Poly<K>, int>> out;
    Poly<K> a = f.monic();
    if (a.deg() < 1) return out;
    Poly<K> g = poly_gcd(a, a.derivative());
    Poly<K> w = poly_divmod(a, g).first;
    Poly<K> y = poly_divmod(a.derivative() * kz_inv(a.lc()), g).first;
    int i = 1;
    while (w.deg() > 0) {
        Poly<K> z = y - w.derivative();
        Poly<K> s = poly_gcd(w, z);
        if (s.deg() > 0) out.push_back({s, i});
        w = poly_divmod(w, s).first;
        y = poly_divmod(z, s).first;
        ++i;
    }
    return out;
}

/// Resultant over a field via the polynomial remainder sequence.
template <class K>
K poly_resultant(Poly<K> a, Poly<K> b) {
    if (a.is_zero() || b.is_zero()) return K(0);
    K res(1);
    while (b.deg() >= 0) {
        if (b.deg() == 0) {
            K r(1);
            for (int i = 0; i < a.deg(); ++i) r = r * b.c[0];
            return res * r;
        }
        auto [q, r] = poly_divmod(a, b);
        if (r.is_zero()) return K(0);
        // res(a,b) = (-1)^(da*db) lc(b)^(da-dr) res(b,r)
        K f(1);
        for (int i = 0; i < a.deg() - r.deg(); ++i) f = f * b.lc();
        if ((a.deg() * b.deg()) % 2 == 1) f = -f;
        res = res * f;
        a = b;
        b = r;
    }
    return K(0);
}

using QPoly = Poly<Rat>;
using ZPoly = std::vector<Int>;

QPoly qpoly_from_z(const ZPoly& z);
/// Primitive integer multiple of a rational polynomial (content cleared, positive lc).
ZPoly zpoly_primitive(const QPoly& p);

/// Interval Horner evaluation.
QInterval qpoly_eval_interval(const QPoly& p, const QInterval& x);

// ---- Sturm machinery ----

struct SturmChain {
    std::vector<QPoly> chain;
    explicit SturmChain(const QPoly& squarefree);
    int sign_variations(const Rat& x) const;
    /// Number of real roots in (a, b].
    int count(const Rat& a, const Rat& b) const;
};

/// Cauchy bound: all real roots lie in (-B, B).
Rat qpoly_root_bound(const QPoly& p);

/// Isolating intervals for all real roots, ascending. Roots hit exactly during
/// bisection come back as degenerate intervals; otherwise open intervals with a
/// sign change, one root each.
std::vector<QInterval> qpoly_isolate_real_roots(const QPoly& p);

/// Shrink an isolating interval of `squarefree` below `width` by bisection.
QInterval qpoly_refine_root(const QPoly& squarefree, QInterval iv, const Rat& width);

/// Number of real roots of p in (a,b].
int qpoly_count_roots(const QPoly& p, const Rat& a, const Rat& b);

// ---- Integer polynomial factorization (Zassenhaus) ----

/// Monic irreducible rational factors with multiplicities, lc reported separately.
struct QFactorization {
    Rat unit;
    std::vector<std::pair<QPoly, int>> factors;
};
QFactorization qpoly_factor(const QPoly& p);
bool qpoly_is_irreducible(const QPoly& p);

/// n-th cyclotomic polynomial.
QPoly cyclotomic(int n);

/// For even reciprocal p of degree 2s with p(x) = x^s * q(x + 1/x), return q (degree s).
/// Throws if p is not reciprocal of even degree.
QPoly reciprocal_transform(const QPoly& p);

/// Minimal polynomial of 2cos(2*pi/n) over Q (the degree-phi(n)/2 transform factor; n>=3).
QPoly cos2pi_minpoly(int n);

bool qpoly_is_reciprocal(const QPoly& p);

template <class K>
bool poly_is_reciprocal(const Poly<K>& p) {
    if (p.is_zero()) return false;
    int n = p.deg();
    for (int i = 0; i <= n; ++i)
        if (!kz_is_zero(p.coeff(i) - p.coeff(n - i))) return false;
    return true;
}

/// Generic version of reciprocal_transform over any field.
template <class K>
Poly<K> poly_reciprocal_transform(const Poly<K>& p) {
    int n = p.deg();
    if (n < 0 || n % 2 != 0 || !poly_is_reciprocal(p))
        throw std::invalid_argument("reciprocal_transform: not an even-degree reciprocal polynomial");
    int s = n / 2;
    // x^j + x^-j = V_j(y), V_0 = 2, V_1 = y, V_{j+1} = y V_j - V_{j-1}
    Poly<K> y = Poly<K>::x();
    Poly<K> v0 = Poly<K>::constant(K(2)), v1 = y;
    Poly<K> q = Poly<K>::constant(p.coeff(s));
    for (int j = 1; j <= s; ++j) {
        Poly<K> vj = (j == 1) ? v1 : y * v1 - v0;
        if (j > 1) {
            v0 = v1;
            v1 = vj;
        }
        q = q + vj * p.coeff(s + j);
    }
    return q;
}

}  // namespace hypsys
