#include "hypsys/certified.hpp"

#include <mpfr.h>

#include <cmath>
#include <mutex>
#include <sstream>

namespace hypsys {

struct CertifiedReal::Node {
    Evaluator eval;
    std::optional<Rat> exact;
    mutable QInterval best{Rat(-1), Rat(1)};
    mutable long best_prec = -1;
    mutable std::mutex mu;
};

CertifiedReal::CertifiedReal(Rat v) {
    node_ = std::make_shared<Node>();
    node_->exact = v;
    node_->best = QInterval(v);
    node_->best_prec = 1 << 30;
}

CertifiedReal CertifiedReal::from_eval(Evaluator f) {
    auto n = std::make_shared<Node>();
    n->eval = std::move(f);
    return CertifiedReal(std::move(n));
}

CertifiedReal CertifiedReal::algebraic(QPoly squarefree, QInterval isolating) {
    if (isolating.lo != isolating.hi) {
        // tighten once so the endpoints are guaranteed off-root
        isolating = qpoly_refine_root(squarefree, isolating, isolating.width() / 2);
    }
    if (isolating.lo == isolating.hi) return CertifiedReal(isolating.lo);
    auto sf = std::make_shared<QPoly>(std::move(squarefree));
    auto iv = std::make_shared<QInterval>(std::move(isolating));
    auto mu = std::make_shared<std::mutex>();
    return from_eval([sf, iv, mu](long prec) {
        std::lock_guard<std::mutex> lock(*mu);
        Int den(1);
        mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), prec);
        *iv = qpoly_refine_root(*sf, *iv, Rat(Int(1), den));
        return *iv;
    });
}

QInterval CertifiedReal::interval(long prec_bits) const {
    std::unique_lock<std::mutex> lock(node_->mu);
    if (node_->exact) return QInterval(*node_->exact);
    if (node_->best_prec >= prec_bits) return node_->best;
    lock.unlock();
    QInterval iv = node_->eval(prec_bits);
    lock.lock();
    if (node_->best_prec >= 0) iv = iv.intersect(node_->best);
    node_->best = iv;
    node_->best_prec = prec_bits;
    return iv;
}

QInterval CertifiedReal::refine_below(const Rat& width) const {
    long prec = std::max(64L, node_->best_prec);
    QInterval iv = interval(prec);
    while (iv.width() >= width) {
        prec *= 2;
        iv = interval(prec);
        if (prec > (1L << 24)) throw std::runtime_error("CertifiedReal: refinement did not converge");
    }
    return iv;
}

std::optional<Rat> CertifiedReal::exact() const { return node_->exact; }

int CertifiedReal::sign() const {
    if (node_->exact) return sgn(*node_->exact);
    long prec = 64;
    while (true) {
        QInterval iv = interval(prec);
        if (iv.lo > 0) return 1;
        if (iv.hi < 0) return -1;
        if (iv.lo == 0 && iv.hi == 0) return 0;
        prec *= 2;
        if (prec > (1L << 24)) throw std::runtime_error("CertifiedReal::sign: cannot separate from zero");
    }
}

double CertifiedReal::approx() const { return interval(64).mid().get_d(); }

CertifiedReal CertifiedReal::operator-() const {
    if (node_->exact) return CertifiedReal(Rat(-*node_->exact));
    auto a = *this;
    return from_eval([a](long p) { return -a.interval(p); });
}

CertifiedReal CertifiedReal::operator+(const CertifiedReal& o) const {
    if (node_->exact && o.node_->exact) return CertifiedReal(Rat(*node_->exact + *o.node_->exact));
    auto a = *this, b = o;
    return from_eval([a, b](long p) { return a.interval(p + 2) + b.interval(p + 2); });
}

CertifiedReal CertifiedReal::operator-(const CertifiedReal& o) const { return *this + (-o); }

CertifiedReal CertifiedReal::operator*(const CertifiedReal& o) const {
    if (node_->exact && o.node_->exact) return CertifiedReal(Rat(*node_->exact * *o.node_->exact));
    if (node_->exact && *node_->exact == 0) return CertifiedReal(Rat(0));
    if (o.node_->exact && *o.node_->exact == 0) return CertifiedReal(Rat(0));
    auto a = *this, b = o;
    return from_eval([a, b](long p) { return a.interval(p + 4) * b.interval(p + 4); });
}

CertifiedReal CertifiedReal::operator/(const CertifiedReal& o) const {
    if (node_->exact && o.node_->exact) {
        if (*o.node_->exact == 0) throw std::domain_error("CertifiedReal: division by zero");
        return CertifiedReal(Rat(*node_->exact / *o.node_->exact));
    }
    auto a = *this, b = o;
    return from_eval([a, b](long p) {
        long q = p + 4;
        QInterval d = b.interval(q);
        while (d.contains_zero()) {
            q *= 2;
            if (q > (1L << 24)) throw std::domain_error("CertifiedReal: division by (near-)zero");
            d = b.interval(q);
        }
        return a.interval(q) / d;
    });
}

// ---- MPFR helpers ----

namespace {

Rat rat_of_mpfr(mpfr_srcptr x) {
    if (mpfr_zero_p(x)) return Rat(0);
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
    Rat r(m);
    if (e >= 0) {
        mpz_class two(1);
        mpz_mul_2exp(two.get_mpz_t(), two.get_mpz_t(), e);
        r *= Rat(two);
    } else {
        mpz_class two(1);
        mpz_mul_2exp(two.get_mpz_t(), two.get_mpz_t(), -e);
        r /= Rat(two);
    }
    return r;
}

struct MpfrVal {
    mpfr_t v;
    explicit MpfrVal(long prec) { mpfr_init2(v, prec); }
    ~MpfrVal() { mpfr_clear(v); }
    MpfrVal(const MpfrVal&) = delete;
};

using UnaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

// Enclosure of f over [lo,hi] for monotone f. increasing=false means decreasing.
QInterval mono_enclose(UnaryFn f, const QInterval& x, long prec, bool increasing) {
    MpfrVal a(prec), b(prec), ra(prec), rb(prec);
    mpfr_set_q(a.v, x.lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(b.v, x.hi.get_mpq_t(), MPFR_RNDU);
    if (increasing) {
        f(ra.v, a.v, MPFR_RNDD);
        f(rb.v, b.v, MPFR_RNDU);
    } else {
        f(ra.v, b.v, MPFR_RNDD);
        f(rb.v, a.v, MPFR_RNDU);
    }
    return QInterval(rat_of_mpfr(ra.v), rat_of_mpfr(rb.v));
}

// Pointwise enclosure of 1-Lipschitz f at rational r.
QInterval lipschitz_pt(UnaryFn f, const Rat& r, long prec) {
    MpfrVal a(prec), lo(prec), hi(prec);
    mpfr_set_q(a.v, r.get_mpq_t(), MPFR_RNDD);
    Rat adn = rat_of_mpfr(a.v);
    Rat slack = rat_abs(r - adn);
    f(lo.v, a.v, MPFR_RNDD);
    f(hi.v, a.v, MPFR_RNDU);
    return QInterval(rat_of_mpfr(lo.v) - slack, rat_of_mpfr(hi.v) + slack);
}

QInterval pi_interval(long prec) {
    MpfrVal lo(prec), hi(prec);
    mpfr_const_pi(lo.v, MPFR_RNDD);
    mpfr_const_pi(hi.v, MPFR_RNDU);
    return QInterval(rat_of_mpfr(lo.v), rat_of_mpfr(hi.v));
}

QInterval trig_enclose(UnaryFn f, const QInterval& x, long prec, bool is_cos) {
    if (x.width() >= 7) return QInterval(Rat(-1), Rat(1));
    QInterval r = lipschitz_pt(f, x.lo, prec).hull(lipschitz_pt(f, x.hi, prec));
    QInterval pi = pi_interval(prec);
    // extrema of cos at k*pi, of sin at (k+1/2)*pi
    long k0 = (long)std::floor(x.lo.get_d() / 3.14159) - 2;
    long k1 = (long)std::ceil(x.hi.get_d() / 3.14159) + 2;
    for (long k = k0; k <= k1; ++k) {
        QInterval crit = is_cos ? Rat(k) * pi : (Rat(k) + Rat(1, 2)) * pi;
        if (crit.overlaps(x)) {
            bool is_max = is_cos ? (k % 2 == 0) : ((k % 4 + 4) % 4 == 0);
            if (is_max)
                r.hi = Rat(1);
            else
                r.lo = Rat(-1);
        }
    }
    return QInterval(std::max(r.lo, Rat(-1)), std::min(r.hi, Rat(1)));
}

CertifiedReal unary_mono(const CertifiedReal& x, UnaryFn f, bool increasing,
                         std::optional<Rat> dom_lo = std::nullopt,
                         bool lo_open = false) {
    return CertifiedReal::from_eval([x, f, increasing, dom_lo, lo_open](long p) {
        long q = std::max(p + 4, 64L);
        QInterval iv = x.interval(q);
        if (dom_lo) {
            if (lo_open) {
                // strict boundary (e.g. log): refine until provably inside
                while (iv.lo <= *dom_lo) {
                    if (iv.hi <= *dom_lo)
                        throw std::domain_error("CertifiedReal: argument outside function domain");
                    q *= 2;
                    if (q > (1L << 24))
                        throw std::domain_error("CertifiedReal: cannot certify function domain");
                    iv = x.interval(q);
                }
            } else {
                // closed boundary (sqrt, acosh): clamp rounding dips below it
                if (iv.hi < *dom_lo)
                    throw std::domain_error("CertifiedReal: argument outside function domain");
                if (iv.lo < *dom_lo) iv = QInterval(*dom_lo, iv.hi);
            }
        }
        return mono_enclose(f, iv, q, increasing);
    });
}

}  // namespace

CertifiedReal cr_pi() {
    return CertifiedReal::from_eval([](long p) { return pi_interval(std::max(p + 4, 64L)); });
}

CertifiedReal cr_sqrt(const CertifiedReal& x) { return unary_mono(x, mpfr_sqrt, true, Rat(0)); }
CertifiedReal cr_exp(const CertifiedReal& x) { return unary_mono(x, mpfr_exp, true); }
CertifiedReal cr_log(const CertifiedReal& x) { return unary_mono(x, mpfr_log, true, Rat(0), true); }
CertifiedReal cr_cosh(const CertifiedReal& x) {
    auto a = cr_abs(x);
    return unary_mono(a, mpfr_cosh, true);
}
CertifiedReal cr_sinh(const CertifiedReal& x) { return unary_mono(x, mpfr_sinh, true); }
CertifiedReal cr_acosh(const CertifiedReal& x) { return unary_mono(x, mpfr_acosh, true, Rat(1)); }

CertifiedReal cr_acos(const CertifiedReal& x) {
    return CertifiedReal::from_eval([x](long p) {
        long q = std::max(p + 4, 64L);
        QInterval iv = x.interval(q).intersect(QInterval(Rat(-1), Rat(1)));
        return mono_enclose(mpfr_acos, iv, q, false);
    });
}

CertifiedReal cr_cos(const CertifiedReal& x) {
    return CertifiedReal::from_eval([x](long p) {
        long q = std::max(p + 4, 64L);
        return trig_enclose(mpfr_cos, x.interval(q), q, true);
    });
}

CertifiedReal cr_sin(const CertifiedReal& x) {
    return CertifiedReal::from_eval([x](long p) {
        long q = std::max(p + 4, 64L);
        return trig_enclose(mpfr_sin, x.interval(q), q, false);
    });
}

CertifiedReal cr_abs(const CertifiedReal& x) {
    if (auto e = x.exact()) return CertifiedReal(rat_abs(*e));
    return CertifiedReal::from_eval([x](long p) { return x.interval(p).abs(); });
}

CertifiedReal cr_max(const CertifiedReal& a, const CertifiedReal& b) {
    return CertifiedReal::from_eval([a, b](long p) {
        QInterval x = a.interval(p), y = b.interval(p);
        return QInterval(std::max(x.lo, y.lo), std::max(x.hi, y.hi));
    });
}

CertifiedReal cr_min(const CertifiedReal& a, const CertifiedReal& b) {
    return CertifiedReal::from_eval([a, b](long p) {
        QInterval x = a.interval(p), y = b.interval(p);
        return QInterval(std::min(x.lo, y.lo), std::min(x.hi, y.hi));
    });
}

bool cr_less(const CertifiedReal& a, const CertifiedReal& b) {
    if (a.exact() && b.exact()) return *a.exact() < *b.exact();
    long prec = 64;
    while (true) {
        QInterval x = a.interval(prec), y = b.interval(prec);
        if (x.hi < y.lo) return true;
        if (y.hi < x.lo) return false;
        if (a.exact() && b.exact()) return *a.exact() < *b.exact();
        prec *= 2;
        if (prec > (1L << 24)) throw std::runtime_error("cr_less: values indistinguishable");
    }
}

std::string cr_to_decimal(const CertifiedReal& x, int digits) {
    Rat w(1);
    for (int i = 0; i < digits + 2; ++i) w /= 10;
    QInterval iv = x.refine_below(w);
    MpfrVal v((long)(digits * 3.33) + 32);
    Rat mid = iv.mid();
    mpfr_set_q(v.v, mid.get_mpq_t(), MPFR_RNDN);
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, v.v);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

}  // namespace hypsys
