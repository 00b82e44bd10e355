#include "hypsys/poly.hpp"

#include <cassert>
#include <map>
#include <numeric>

namespace hypsys {

Rat parse_rat(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    r.canonicalize();
    if (r.get_den() <= 0) throw std::invalid_argument("bad rational: " + s);
    return r;
}

std::string rat_to_string(const Rat& a) { return a.get_str(); }

Rat cf_round(const Rat& x, const Rat& tol) {
    if (tol <= 0) throw std::invalid_argument("cf_round: tol must be positive");
    // Convergents of the continued fraction of x.
    Int p0(1), q0(0);
    Int p1 = rat_floor(x), q1(1);
    Rat rem = x - Rat(p1);
    while (rat_abs(x - Rat(p1, q1)) > tol) {
        if (rem == 0) break;
        rem = 1 / rem;
        Int a = rat_floor(rem);
        rem -= Rat(a);
        Int p2 = a * p1 + p0, q2 = a * q1 + q0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    Rat r(p1, q1);
    r.canonicalize();
    return r;
}

QPoly qpoly_from_z(const ZPoly& z) {
    std::vector<Rat> c;
    c.reserve(z.size());
    for (const auto& a : z) c.emplace_back(a);
    return QPoly(std::move(c));
}

ZPoly zpoly_primitive(const QPoly& p) {
    if (p.is_zero()) return {};
    Int den(1);
    for (const auto& a : p.c) den = lcm(den, a.get_den());
    std::vector<Int> z;
    z.reserve(p.c.size());
    for (const auto& a : p.c) z.push_back(a.get_num() * (den / a.get_den()));
    Int g(0);
    for (const auto& a : z) g = gcd(g, a);
    if (sgn(z.back()) < 0) g = -g;
    for (auto& a : z) a /= g;
    return z;
}

QInterval qpoly_eval_interval(const QPoly& p, const QInterval& x) {
    QInterval r{Rat(0)};
    for (int i = p.deg(); i >= 0; --i) r = r * x + QInterval(p.c[i]);
    return r;
}

// ---- Sturm ----

static QPoly normalize_content(const QPoly& p) {
    if (p.is_zero()) return p;
    ZPoly z = zpoly_primitive(p);
    QPoly q = qpoly_from_z(z);
    return sgn(p.lc()) < 0 ? -q : q;
}

SturmChain::SturmChain(const QPoly& squarefree) {
    QPoly a = normalize_content(squarefree);
    if (a.deg() < 1) {
        chain = {a};
        return;
    }
    QPoly b = normalize_content(a.derivative());
    chain = {a, b};
    while (!b.is_zero() && b.deg() > 0) {
        QPoly r = -poly_divmod(a, b).second;
        r = r.is_zero() ? r : normalize_content(r);
        a = b;
        b = r;
        if (!b.is_zero()) chain.push_back(b);
    }
}

int SturmChain::sign_variations(const Rat& x) const {
    int v = 0, last = 0;
    for (const auto& p : chain) {
        int s = p.is_zero() ? 0 : sgn(p.eval(x));
        if (s != 0) {
            if (last != 0 && s != last) ++v;
            last = s;
        }
    }
    return v;
}

int SturmChain::count(const Rat& a, const Rat& b) const {
    if (a >= b) return 0;
    return sign_variations(a) - sign_variations(b);
}

Rat qpoly_root_bound(const QPoly& p) {
    if (p.deg() < 1) return Rat(1);
    Rat m(0);
    for (int i = 0; i < p.deg(); ++i) m = std::max(m, rat_abs(p.c[i] / p.lc()));
    return m + 1;
}

std::vector<QInterval> qpoly_isolate_real_roots(const QPoly& p) {
    std::vector<QInterval> out;
    if (p.deg() < 1) return out;
    QPoly sf = poly_squarefree_part(p);
    SturmChain st(sf);
    Rat bound = qpoly_root_bound(sf);
    std::function<void(Rat, Rat)> go = [&](Rat a, Rat b) {
        int n = st.count(a, b);
        if (n == 0) return;
        if (n == 1 && sgn(sf.eval(a)) * sgn(sf.eval(b)) < 0) {
            out.emplace_back(a, b);
            return;
        }
        Rat m = (a + b) / 2;
        if (sf.eval(m) == 0) {
            out.emplace_back(m, m);
            Rat d = (b - a) / 4;
            while (st.count(m - d, m + d) != 1) d /= 2;
            go(a, m - d);
            go(m + d, b);
        } else {
            go(a, m);
            go(m, b);
        }
    };
    go(-bound, bound);
    std::sort(out.begin(), out.end(), [](const QInterval& x, const QInterval& y) { return x.lo < y.lo; });
    return out;
}

QInterval qpoly_refine_root(const QPoly& squarefree, QInterval iv, const Rat& width) {
    if (iv.lo == iv.hi) return iv;
    int sa = sgn(squarefree.eval(iv.lo));
    while (iv.width() > width) {
        Rat m = iv.mid();
        int sm = sgn(squarefree.eval(m));
        if (sm == 0) return QInterval(m, m);
        if (sm == sa)
            iv.lo = m;
        else
            iv.hi = m;
    }
    return iv;
}

int qpoly_count_roots(const QPoly& p, const Rat& a, const Rat& b) {
    QPoly sf = poly_squarefree_part(p);
    return SturmChain(sf).count(a, b);
}

// ---- Factorization over Z (Zassenhaus) ----

namespace {

using FpPoly = std::vector<long>;  // coefficients in [0,p), ascending, trimmed

void fp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

long fp_inv(long a, long p) {
    long t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        long q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    return ((t % p) + p) % p;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, long p) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    fp_trim(r);
    return r;
}

// divmod, b monic not required; requires lc(b) invertible
std::pair<FpPoly, FpPoly> fp_divmod(const FpPoly& a, const FpPoly& b, long p) {
    FpPoly q, r = a;
    if (b.empty()) throw std::domain_error("fp_divmod by zero");
    long binv = fp_inv(b.back(), p);
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, 0);
    while (r.size() >= b.size()) {
        long f = r.back() * binv % p;
        size_t s = r.size() - b.size();
        q[s] = f;
        for (size_t i = 0; i < b.size(); ++i) r[i + s] = ((r[i + s] - f * b[i]) % p + p) % p;
        fp_trim(r);
        if (r.size() < b.size()) break;
    }
    fp_trim(q);
    return {q, r};
}

FpPoly fp_gcd(FpPoly a, FpPoly b, long p) {
    while (!b.empty()) {
        auto r = fp_divmod(a, b, p).second;
        a = b;
        b = r;
    }
    if (!a.empty()) {
        long inv = fp_inv(a.back(), p);
        for (auto& c : a) c = c * inv % p;
    }
    return a;
}

FpPoly fp_monic(FpPoly a, long p) {
    if (a.empty()) return a;
    long inv = fp_inv(a.back(), p);
    for (auto& c : a) c = c * inv % p;
    return a;
}

FpPoly fp_deriv(const FpPoly& a, long p) {
    FpPoly r;
    for (size_t i = 1; i < a.size(); ++i) r.push_back((long)(i % p) * a[i] % p);
    fp_trim(r);
    return r;
}

FpPoly fp_powmod_x(long e_is_p, const FpPoly& f, long p) {
    // x^p mod f by square-and-multiply on exponent p
    FpPoly base = {0, 1};
    base = fp_divmod(base, f, p).second;
    FpPoly result = {1};
    long e = e_is_p;
    while (e > 0) {
        if (e & 1) result = fp_divmod(fp_mul(result, base, p), f, p).second;
        base = fp_divmod(fp_mul(base, base, p), f, p).second;
        e >>= 1;
    }
    return result;
}

// Berlekamp factorization of monic squarefree f mod small prime p.
std::vector<FpPoly> berlekamp(const FpPoly& f, long p) {
    int n = (int)f.size() - 1;
    if (n <= 1) return {f};
    // Q matrix: columns are x^{jp} mod f in the basis 1..x^{n-1}
    FpPoly xp = fp_powmod_x(p, f, p);
    std::vector<std::vector<long>> Q(n, std::vector<long>(n, 0));
    FpPoly cur = {1};
    for (int j = 0; j < n; ++j) {
        for (size_t i = 0; i < cur.size(); ++i) Q[i][j] = cur[i];
        cur = fp_divmod(fp_mul(cur, xp, p), f, p).second;
    }
    // nullspace of (Q - I)
    for (int i = 0; i < n; ++i) Q[i][i] = ((Q[i][i] - 1) % p + p) % p;
    // Gaussian elimination, track free columns
    std::vector<int> pivot_col_of_row(n, -1);
    int row = 0;
    for (int col = 0; col < n && row < n; ++col) {
        int pr = -1;
        for (int r2 = row; r2 < n; ++r2)
            if (Q[r2][col] != 0) {
                pr = r2;
                break;
            }
        if (pr < 0) continue;
        std::swap(Q[row], Q[pr]);
        long inv = fp_inv(Q[row][col], p);
        for (int c2 = 0; c2 < n; ++c2) Q[row][c2] = Q[row][c2] * inv % p;
        for (int r2 = 0; r2 < n; ++r2)
            if (r2 != row && Q[r2][col] != 0) {
                long f2 = Q[r2][col];
                for (int c2 = 0; c2 < n; ++c2) Q[r2][c2] = ((Q[r2][c2] - f2 * Q[row][c2]) % p + p) % p;
            }
        pivot_col_of_row[row] = col;
        ++row;
    }
    std::vector<bool> is_pivot(n, false);
    for (int r2 = 0; r2 < row; ++r2) is_pivot[pivot_col_of_row[r2]] = true;
    std::vector<FpPoly> basis;
    for (int col = 0; col < n; ++col) {
        if (is_pivot[col]) continue;
        std::vector<long> v(n, 0);
        v[col] = 1;
        for (int r2 = 0; r2 < row; ++r2) {
            long val = Q[r2][col];
            if (val != 0) v[pivot_col_of_row[r2]] = (p - val) % p;
        }
        FpPoly vp(v.begin(), v.end());
        fp_trim(vp);
        basis.push_back(vp);
    }
    size_t r = basis.size();  // number of irreducible factors
    std::vector<FpPoly> factors = {f};
    if (r <= 1) return factors;
    for (const auto& v : basis) {
        if (factors.size() >= r) break;
        if (v.size() <= 1) continue;  // constants do not split
        std::vector<FpPoly> next;
        for (const auto& g : factors) {
            if ((int)g.size() - 1 <= 1) {
                next.push_back(g);
                continue;
            }
            FpPoly rest = g;
            for (long s = 0; s < p && (int)rest.size() - 1 > 0; ++s) {
                FpPoly vs = v;
                if (vs.empty()) vs = {0};
                vs[0] = ((vs[0] - s) % p + p) % p;
                fp_trim(vs);
                FpPoly d = fp_gcd(rest, vs, p);
                if (!d.empty() && (int)d.size() - 1 > 0 && d.size() < rest.size()) {
                    next.push_back(d);
                    rest = fp_divmod(rest, d, p).first;
                }
            }
            if ((int)rest.size() - 1 > 0) next.push_back(rest);
        }
        factors = next;
    }
    for (auto& g : factors) g = fp_monic(g, p);
    return factors;
}

// symmetric remainder mod m
Int symm_mod(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

using MZPoly = std::vector<Int>;  // mod p^k, ascending

void mz_trim(MZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

MZPoly mz_mul(const MZPoly& a, const MZPoly& b, const Int& m) {
    if (a.empty() || b.empty()) return {};
    MZPoly r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % m;
    mz_trim(r);
    return r;
}

MZPoly mz_add(const MZPoly& a, const MZPoly& b, const Int& m) {
    MZPoly r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % m;
    mz_trim(r);
    return r;
}

MZPoly mz_sub(const MZPoly& a, const MZPoly& b, const Int& m) {
    MZPoly r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = ((r[i] - b[i]) % m + m) % m;
    mz_trim(r);
    return r;
}

// divmod with monic divisor
std::pair<MZPoly, MZPoly> mz_divmod_monic(const MZPoly& a, const MZPoly& b, const Int& m) {
    MZPoly q, r = a;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Int(0));
    while (r.size() >= b.size()) {
        Int f = r.back();
        size_t s = r.size() - b.size();
        q[s] = f;
        for (size_t i = 0; i < b.size(); ++i) r[i + s] = ((r[i + s] - f * b[i]) % m + m) % m;
        mz_trim(r);
        if (r.size() < b.size()) break;
    }
    mz_trim(q);
    return {q, r};
}

struct HenselPair {
    MZPoly g, h, s, t;  // s*g + t*h = 1 mod modulus
};

// One quadratic Hensel step: from modulus m to m^2 (f, g, h monic; f = g*h mod m).
HenselPair hensel_step(const MZPoly& f, HenselPair gh, const Int& m) {
    Int m2 = m * m;
    auto mod2 = [&](MZPoly a) {
        for (auto& c : a) c = ((c % m2) + m2) % m2;
        mz_trim(a);
        return a;
    };
    MZPoly g = mod2(gh.g), h = mod2(gh.h), s = mod2(gh.s), t = mod2(gh.t);
    MZPoly e = mz_sub(f, mz_mul(g, h, m2), m2);
    auto [q, r] = mz_divmod_monic(mz_mul(s, e, m2), h, m2);
    MZPoly g1 = mz_add(g, mz_add(mz_mul(t, e, m2), mz_mul(q, g, m2), m2), m2);
    MZPoly h1 = mz_add(h, r, m2);
    MZPoly b = mz_sub(mz_add(mz_mul(s, g1, m2), mz_mul(t, h1, m2), m2), MZPoly{Int(1)}, m2);
    auto [c, d] = mz_divmod_monic(mz_mul(s, b, m2), h1, m2);
    MZPoly s1 = mz_sub(s, d, m2);
    MZPoly t1 = mz_sub(t, mz_add(mz_mul(t, b, m2), mz_mul(c, g1, m2), m2), m2);
    return {g1, h1, s1, t1};
}

MZPoly fp_to_mz(const FpPoly& a) {
    MZPoly r;
    for (long c : a) r.emplace_back(c);
    mz_trim(r);
    return r;
}

// Lift monic factorization f = prod(factors) mod p to mod p^(2^k) >= target.
// Returns factors mod final modulus `mod_out`.
std::vector<MZPoly> hensel_lift_tree(const MZPoly& f, const std::vector<FpPoly>& factors, long p,
                                     const Int& target, Int& mod_out) {
    if (factors.size() == 1) {
        Int m(p);
        while (m < target) m = m * m;
        mod_out = m;
        MZPoly g = f;
        for (auto& c : g) c = ((c % m) + m) % m;
        return {g};
    }
    size_t half = factors.size() / 2;
    std::vector<FpPoly> left(factors.begin(), factors.begin() + half);
    std::vector<FpPoly> right(factors.begin() + half, factors.end());
    // g = prod(left), h = prod(right) mod p
    FpPoly gp = {1}, hp = {1};
    for (const auto& a : left) gp = fp_mul(gp, a, p);
    for (const auto& a : right) hp = fp_mul(hp, a, p);
    // s*g + t*h = 1 mod p via extended Euclid
    FpPoly r0 = gp, r1 = hp, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
    while (!r1.empty()) {
        auto [q, r] = fp_divmod(r0, r1, p);
        FpPoly s2 = s0, t2 = t0;
        // s2 = s0 - q*s1, t2 = t0 - q*t1
        {
            FpPoly qs = fp_mul(q, s1, p), qt = fp_mul(q, t1, p);
            s2.resize(std::max(s2.size(), qs.size()), 0);
            for (size_t i = 0; i < qs.size(); ++i) s2[i] = ((s2[i] - qs[i]) % p + p) % p;
            fp_trim(s2);
            t2.resize(std::max(t2.size(), qt.size()), 0);
            for (size_t i = 0; i < qt.size(); ++i) t2[i] = ((t2[i] - qt[i]) % p + p) % p;
            fp_trim(t2);
        }
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    long inv = fp_inv(r0.empty() ? 1 : r0[0], p);
    for (auto& c : s0) c = c * inv % p;
    for (auto& c : t0) c = c * inv % p;

    HenselPair pair{fp_to_mz(gp), fp_to_mz(hp), fp_to_mz(s0), fp_to_mz(t0)};
    Int m(p);
    MZPoly fcur = f;
    while (m < target) {
        Int m2 = m * m;
        MZPoly fm = f;
        for (auto& c : fm) c = ((c % m2) + m2) % m2;
        pair = hensel_step(fm, pair, m);
        m = m2;
    }
    mod_out = m;
    Int sub_mod;
    auto lg = hensel_lift_tree(pair.g, left, p, target, sub_mod);
    auto lh = hensel_lift_tree(pair.h, right, p, target, sub_mod);
    std::vector<MZPoly> out;
    out.insert(out.end(), lg.begin(), lg.end());
    out.insert(out.end(), lh.begin(), lh.end());
    return out;
}

// exact division test over Z: does b divide a? (b monic not required)
bool z_divides(const ZPoly& a, const ZPoly& b, ZPoly* quot = nullptr) {
    if (b.empty()) return false;
    ZPoly r = a, q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Int(0));
    while (r.size() >= b.size()) {
        if (!mpz_divisible_p(r.back().get_mpz_t(), b.back().get_mpz_t())) return false;
        Int f = r.back() / b.back();
        size_t s = r.size() - b.size();
        q[s] = f;
        for (size_t i = 0; i < b.size(); ++i) r[i + s] -= f * b[i];
        while (!r.empty() && r.back() == 0) r.pop_back();
        if (r.size() < b.size()) break;
    }
    if (!r.empty()) return false;
    if (quot) *quot = q;
    return true;
}

// Factor a monic squarefree integer polynomial into monic integer irreducibles.
std::vector<ZPoly> zassenhaus_monic_squarefree(const ZPoly& f) {
    int n = (int)f.size() - 1;
    if (n <= 1) return {f};
    // find a prime where f stays squarefree
    static const long primes[] = {3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
                                  47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103,
                                  107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173};
    long p = 0;
    FpPoly fp;
    for (long cand : primes) {
        FpPoly g;
        for (const auto& c : f) {
            Int r = c % cand;
            if (r < 0) r += cand;
            g.push_back(r.get_si());
        }
        fp_trim(g);
        if ((int)g.size() - 1 != n) continue;  // lc vanished (cannot happen: monic)
        if (fp_gcd(g, fp_deriv(g, cand), cand).size() == 1) {
            p = cand;
            fp = fp_monic(g, cand);
            break;
        }
    }
    if (p == 0) throw std::runtime_error("zassenhaus: no suitable prime found");

    std::vector<FpPoly> modular = berlekamp(fp, p);
    if (modular.size() == 1) return {f};

    // Mignotte-style bound on factor coefficients, doubled for products of half the factors.
    Rat norm2sq(0);
    for (const auto& c : f) norm2sq += Rat(c) * Rat(c);
    Int norm2 = rat_ceil(norm2sq);  // >= ||f||_2 since ||f||_2 <= ||f||_2^2 for integer poly >= 1
    Int bound = (Int(1) << (n + 2)) * norm2;
    Int target = 2 * bound + 1;

    MZPoly fz;
    for (const auto& c : f) fz.push_back(c);
    Int modulus;
    std::vector<MZPoly> lifted = hensel_lift_tree(fz, modular, p, target, modulus);

    // recombination
    std::vector<ZPoly> result;
    std::vector<int> alive(lifted.size());
    std::iota(alive.begin(), alive.end(), 0);
    ZPoly rem = f;
    size_t subset_size = 1;
    while (2 * subset_size <= alive.size()) {
        bool found_any = false;
        std::vector<int> idx(subset_size);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            MZPoly prod = {Int(1)};
            for (int i : idx) prod = mz_mul(prod, lifted[alive[i]], modulus);
            ZPoly cand;
            for (const auto& c : prod) cand.push_back(symm_mod(c, modulus));
            while (!cand.empty() && cand.back() == 0) cand.pop_back();
            ZPoly quot;
            if (!cand.empty() && z_divides(rem, cand, &quot)) {
                result.push_back(cand);
                rem = quot;
                std::vector<int> keep;
                for (size_t i2 = 0, j = 0; i2 < alive.size(); ++i2) {
                    if (j < idx.size() && (int)i2 == idx[j]) {
                        ++j;
                        continue;
                    }
                    keep.push_back(alive[i2]);
                }
                alive = keep;
                found_any = true;
                break;  // restart subsets at this size
            }
            // next combination
            int k = (int)subset_size - 1;
            while (k >= 0 && idx[k] == (int)(alive.size() - subset_size + k)) --k;
            if (k < 0) break;
            ++idx[k];
            for (int j = k + 1; j < (int)subset_size; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found_any) ++subset_size;
    }
    if ((int)rem.size() - 1 > 0) result.push_back(rem);
    return result;
}

}  // namespace

QFactorization qpoly_factor(const QPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("qpoly_factor: zero polynomial");
    QFactorization out;
    out.unit = p.lc();
    auto sqf = poly_squarefree_decomposition(p);
    if (p.deg() == 0) return out;
    for (const auto& [part, mult] : sqf) {
        // scale to monic integer: F(x) = L^{n-1} * part(x/L) with L clearing denominators
        ZPoly prim = zpoly_primitive(part);
        int n = (int)prim.size() - 1;
        Int L = prim.back();
        // F_i = a_i * L^{n-1-i}, F_n = 1
        ZPoly monic(prim.size());
        monic[n] = 1;
        Int pw(1);
        for (int i = n - 1; i >= 0; --i) {
            monic[i] = prim[i] * pw;
            pw *= L;
        }
        auto irr = zassenhaus_monic_squarefree(monic);
        for (const auto& g : irr) {
            // map back: factor of prim is primitive part of g(L*x)
            int m = (int)g.size() - 1;
            ZPoly h(g.size());
            Int pw3(1);
            for (int i = 0; i <= m; ++i) {
                h[i] = g[i] * pw3;
                pw3 *= L;
            }
            Int cont(0);
            for (const auto& c : h) cont = gcd(cont, c);
            if (sgn(h.back()) < 0) cont = -cont;
            for (auto& c : h) c /= cont;
            out.factors.push_back({qpoly_from_z(h).monic(), mult});
        }
    }
    return out;
}

bool qpoly_is_irreducible(const QPoly& p) {
    if (p.deg() < 1) return false;
    if (p.deg() == 1) return true;
    auto f = qpoly_factor(p);
    return f.factors.size() == 1 && f.factors[0].second == 1;
}

QPoly cyclotomic(int n) {
    static std::map<int, QPoly> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<Rat> xn(n + 1, Rat(0));
    xn[0] = -1;
    xn[n] = 1;
    QPoly result(std::move(xn));
    for (int d = 1; d < n; ++d)
        if (n % d == 0) result = poly_divmod(result, cyclotomic(d)).first;
    cache[n] = result;
    return result;
}

bool qpoly_is_reciprocal(const QPoly& p) { return poly_is_reciprocal(p); }

QPoly reciprocal_transform(const QPoly& p) { return poly_reciprocal_transform(p); }

QPoly cos2pi_minpoly(int n) {
    if (n < 3) throw std::invalid_argument("cos2pi_minpoly: n >= 3 required");
    return reciprocal_transform(cyclotomic(n));
}

}  // namespace hypsys
