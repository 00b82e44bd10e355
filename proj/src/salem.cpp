#include "hypsys/salem.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace hypsys {

namespace {

KPoly kpoly_from_q(const QPoly& p) {
    std::vector<FieldElement> c;
    c.reserve(p.c.size());
    for (const Rat& r : p.c) c.emplace_back(r);
    return KPoly(std::move(c));
}

// power sums s_0..s_count of the roots of monic p, by Newton's identities
std::vector<FieldElement> power_sums(const KPoly& p, int count) {
    int n = p.deg();
    std::vector<FieldElement> s(count + 1);
    s[0] = FieldElement(n);
    for (int j = 1; j <= count; ++j) {
        FieldElement v;
        if (j <= n) v = -(p.coeff(n - j) * FieldElement(j));
        for (int i = 1; i < j && i <= n; ++i) v = v - p.coeff(n - i) * s[j - i];
        s[j] = v;
    }
    return s;
}

KMat companion(const KPoly& p) {
    int n = p.deg();
    KMat c(n, n);
    for (int i = 0; i + 1 < n; ++i) c.at(i + 1, i) = FieldElement(1);
    for (int i = 0; i < n; ++i) c.at(i, n - 1) = -p.coeff(i);
    return c;
}

// certified value of the unique root of squarefree rational q above `bound`
QInterval root_above(const QPoly& q, const Rat& bound) {
    for (QInterval iv : qpoly_isolate_real_roots(q)) {
        while (!(iv.lo > bound) && !(iv.hi < bound))
            iv = qpoly_refine_root(q, iv, iv.width() / 4);
        if (iv.lo > bound) return iv;
    }
    fail("NotSalem", "no root above the required bound");
}

// theta = 2 pi q / p reduced to the rotation-angle representative in (0, pi],
// returned as the fraction of 2 pi (in (0, 1/2])
Rat normalized_angle_fraction(long q, long p) {
    Rat f(Int(((q % p) + p) % p), Int(p));
    if (f > Rat(1, 2)) f = 1 - f;
    return f;
}

}  // namespace

SalemCheck is_salem(const QPoly& poly) {
    if (poly.deg() < 2) fail("DimensionMismatch", "degree must be at least 2");
    if (!(poly.lc() == 1)) fail("NotMonic", "polynomial must be monic");
    for (const Rat& c : poly.c)
        if (c.get_den() != 1) fail("NotIntegerCoefficients", "polynomial must have integer coefficients");

    SalemCheck out;
    auto reject = [&](const std::string& why) {
        out.kind = SalemKind::NotSalem;
        out.reason = why;
        return out;
    };

    if (poly.deg() % 2 != 0 || !qpoly_is_reciprocal(poly)) return reject("not an even-degree reciprocal polynomial");
    if (poly_gcd(poly, poly.derivative()).deg() > 0) return reject("repeated roots");

    QPoly t = reciprocal_transform(poly);
    int s = t.deg();
    auto roots = qpoly_isolate_real_roots(t);
    if ((int)roots.size() != s) return reject("conjugates off the unit circle and off the real line");

    int above = 0, below = 0;
    for (QInterval iv : roots) {
        while (true) {
            if (iv.lo > 2) {
                ++above;
                break;
            }
            if (iv.hi < -2) {
                ++below;
                break;
            }
            if (iv.hi < 2 && iv.lo > -2) break;
            iv = qpoly_refine_root(t, iv, iv.width() / 4);
        }
    }
    if (above != 1) return reject("needs exactly one real conjugate pair (lambda, 1/lambda) with lambda > 1");
    if (below != 0) return reject("a real conjugate pair is negative, not on the unit circle");

    out.kind = poly.deg() == 2 ? SalemKind::SalemQuadraticVacuous : SalemKind::Salem;
    out.unit_circle_pairs = s - 1;
    out.candidate = SalemCandidate{poly, root_above(poly, Rat(1))};
    return out;
}

BlockModel build_block_model(const AngleTuple& angles, const SalemCandidate& salem, int d) {
    if (d < 3 || d % 2 != 1) fail("DimensionMismatch", "block model needs odd d >= 3");
    int m = (d - 1) / 2;
    if ((int)angles.entries.size() != m)
        fail("DimensionMismatch", "need exactly (d-1)/2 angles");

    std::vector<Rat> fracs;
    for (auto [q, p] : angles.entries) {
        if (p < 1 || q % p == 0 || std::gcd(std::abs(q), p) != 1)
            fail("DimensionMismatch", "angles must be nonzero reduced fractions of 2 pi");
        Rat f(Int(((q % p) + p) % p), Int(p));
        if (std::find(fracs.begin(), fracs.end(), f) != fracs.end())
            fail("DimensionMismatch", "angles must be pairwise distinct mod 2 pi");
        fracs.push_back(f);
    }

    // field of lambda + 1/lambda
    QPoly t = reciprocal_transform(salem.poly);
    QInterval y_iv = root_above(t, Rat(2));
    QPoly y_min = absolute_min_poly(kpoly_from_q(t), kpoly_root_value_id(kpoly_from_q(t), y_iv));

    FieldPtr k;  // accumulated compositum
    std::vector<FieldElement> elems;
    auto adjoin = [&](const FieldPtr& kn, FieldElement e) {
        CompositumResult cr = compositum(k, kn);
        for (auto& x : elems) x = cr.map1.apply(x);
        elems.push_back(cr.map2.apply(e));
        k = cr.field;
    };

    for (auto [q, p] : angles.entries) {
        auto [kc, cosv] = cos_field((int)p);
        adjoin(kc, chebyshev_two_cos(cosv * FieldElement(2), (int)std::abs(q)));
    }
    if (y_min.deg() == 1) {
        adjoin(nullptr, FieldElement(-y_min.coeff(0)));
    } else {
        FieldPtr ky = NumberField::make(y_min);
        adjoin(ky, FieldElement::generator(ky));
    }

    BlockModel bm;
    bm.field = k;
    bm.two_cosh_eta = promote(elems.back(), k);
    for (int i = 0; i < m; ++i) bm.two_cos.push_back(promote(elems[i], k));

    // p(x) = prod (x^2 - 2cos(theta_i) x + 1) * (x^2 - (lambda + 1/lambda) x + 1)
    KPoly p = KPoly::constant(promote(FieldElement(1), k));
    auto quad = [&](const FieldElement& tr) {
        return KPoly(std::vector<FieldElement>{promote(FieldElement(1), k), -promote(tr, k),
                                               promote(FieldElement(1), k)});
    };
    for (const auto& tc : bm.two_cos) p = p * quad(tc);
    p = p * quad(bm.two_cosh_eta);
    bm.p = std::move(p);

    // certified real block matrix
    int n = d + 1;
    bm.M = RMat(n, n);
    CertifiedReal one{Rat(1)};
    for (int i = 0; i < m; ++i) {
        CertifiedReal c = bm.two_cos[i].embed_id() / CertifiedReal(Rat(2));
        CertifiedReal sn = cr_sqrt(one - c * c);
        bm.M.at(2 * i, 2 * i) = c;
        bm.M.at(2 * i, 2 * i + 1) = CertifiedReal(Rat(0)) - sn;
        bm.M.at(2 * i + 1, 2 * i) = sn;
        bm.M.at(2 * i + 1, 2 * i + 1) = c;
    }
    CertifiedReal ch = bm.two_cosh_eta.embed_id() / CertifiedReal(Rat(2));
    CertifiedReal sh = cr_sqrt(ch * ch - one);
    bm.M.at(n - 2, n - 2) = ch;
    bm.M.at(n - 2, n - 1) = sh;
    bm.M.at(n - 1, n - 2) = sh;
    bm.M.at(n - 1, n - 1) = ch;
    return bm;
}

TraceForm trace_form(const KPoly& p) {
    int n = p.deg();
    if (n < 2 || n % 2 != 0 || !poly_is_reciprocal(p))
        fail("NotReciprocal", "trace form needs an even-degree reciprocal polynomial");
    if (poly_gcd(p, p.derivative()).deg() > 0) fail("NotSeparable", "polynomial has repeated roots");

    auto s = power_sums(p, n - 1);
    TraceForm tf{KMat(n, n), companion(p)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) tf.G.at(i, j) = s[std::abs(j - i)];
    return tf;
}

AdmissibilizeResult admissibilize(const KMat& G, const KMat& C, const FieldPtr& k, int d) {
    int n = G.rows;
    KPoly p = kmat_char_poly(C);
    // c_t = power sum of mu^t; c_{-t} = c_t by reciprocality
    auto s = power_sums(p, 2 * n);
    auto c = [&](int t) { return s[std::abs(t)]; };

    int nfree = n / 2;  // a_0 plus a_1..a_{n/2-1}
    std::vector<std::string> seen;
    auto try_twist = [&](const std::vector<long>& a) -> std::optional<AdmissibilizeResult> {
        KMat gr(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                FieldElement v = c(j - i) * FieldElement(a[0]);
                for (int l = 1; l < nfree; ++l)
                    if (a[l] != 0) v = v + (c(j - i + l) + c(j - i - l)) * FieldElement(a[l]);
                gr.at(i, j) = v;
            }
        QuadraticForm q;
        try {
            q = QuadraticForm::make(k, std::move(gr));
        } catch (const Error&) {
            return std::nullopt;  // singular twist
        }
        auto rep = check_admissible(q);
        if (!rep.admissible) {
            std::ostringstream os;
            for (auto [pos, neg] : rep.signature_profile.per_embedding)
                os << "(" << pos << "," << neg << ")";
            seen.push_back(os.str());
            return std::nullopt;
        }
        if (!((C.transposed() * q.gram * C) == q.gram))
            fail("DegenerateForm", "twisted form lost the companion isometry");
        std::vector<Rat> twist;
        for (long x : a) twist.emplace_back(x);
        std::ostringstream cert;
        cert << "admissible twist found; identity signature (" << d << ",1), definite elsewhere";
        return AdmissibilizeResult{std::move(q), std::move(twist), cert.str()};
    };

    // identity twist and its negation first, then increasing height
    for (long sign : {1L, -1L}) {
        std::vector<long> a(nfree, 0);
        a[0] = sign;
        if (auto r = try_twist(a)) return *r;
    }
    for (long h = 1; h <= 8; ++h) {
        std::vector<long> a(nfree, -h);
        while (true) {
            bool at_height = false, trivial = true;
            for (long x : a) {
                if (std::abs(x) == h) at_height = true;
                if (x != 0) trivial = false;
            }
            bool identity_like = a[0] != 0 && std::all_of(a.begin() + 1, a.end(),
                                                          [](long x) { return x == 0; }) &&
                                 std::abs(a[0]) == 1;
            if (at_height && !trivial && !identity_like)
                if (auto r = try_twist(a)) return *r;
            int i = nfree - 1;
            while (i >= 0 && a[i] == h) a[i--] = -h;
            if (i < 0) break;
            ++a[i];
        }
    }
    std::string profiles;
    for (size_t i = 0; i < seen.size() && i < 8; ++i) profiles += " " + seen[i];
    fail("NoAdmissibleTwistFound",
         "bounded twist search exhausted; signature profiles encountered:" + profiles);
}

SalemInstance construct_arithmetic_loxodromic(const SalemCandidate& salem, const AngleTuple& angles,
                                              int d) {
    if (d < 3) fail("DimensionMismatch", "need d >= 3");
    if (d % 2 == 0) return lift_even_dimension(construct_arithmetic_loxodromic(salem, angles, d - 1));

    int m = (d - 1) / 2;
    FieldPtr k;
    KPoly p;
    std::optional<BlockModel> bm;
    bool direct = angles.entries.empty() && salem.poly.deg() == d + 1;
    if (direct) {
        p = kpoly_from_q(salem.poly);
    } else if ((int)angles.entries.size() == m) {
        bm = build_block_model(angles, salem, d);
        k = bm->field;
        p = bm->p;
    } else {
        fail("DimensionMismatch", "need (d-1)/2 angles, or none with deg(poly) = d+1");
    }

    TraceForm tf = trace_form(p);
    AdmissibilizeResult adm = admissibilize(tf.G, tf.C, k, d);

    KMat c = tf.C;
    for (auto& x : c.a) x = promote(x, k);
    IsometryK g = IsometryK::make(adm.form, std::move(c));
    if (!(g.char_poly == p)) fail("DegenerateForm", "companion characteristic polynomial mismatch");
    for (const auto& x : g.matrix.a)
        if (!x.is_algebraic_integer()) fail("NotIntegerCoefficients", "matrix entry is not integral");
    for (const auto& x : adm.form.gram.a)
        if (!x.is_algebraic_integer()) fail("NotIntegerCoefficients", "form entry is not integral");

    SalemInstance inst;
    inst.d = d;
    inst.field = k;
    inst.form = adm.form;
    inst.char_poly = p;
    inst.twist = adm.twist;

    // target complex length, built independently of the spectral analysis of g
    QPoly t = reciprocal_transform(salem.poly);
    CertifiedReal y = kpoly_root_value_id(kpoly_from_q(t), root_above(t, Rat(2)));
    CertifiedReal disc = cr_sqrt(y * y - CertifiedReal(Rat(4)));
    inst.target.length = cr_log((y + disc) / CertifiedReal(Rat(2)));
    if (direct) {
        inst.target.holonomy = complex_length(g).holonomy;
    } else {
        // group equal rotation-angle representatives
        std::vector<std::pair<Rat, int>> grouped;  // (fraction of 2 pi in (0,1/2], index)
        HolonomyClass h;
        h.d = d;
        h.trivial_count = 0;
        for (int i = 0; i < m; ++i) {
            Rat f = normalized_angle_fraction(angles.entries[i].first, angles.entries[i].second);
            bool merged = false;
            for (auto& [g_, idx] : grouped)
                if (g_ == f) {
                    h.angles[idx].multiplicity += 1;
                    merged = true;
                }
            if (merged) continue;
            HolonomyAngle a;
            a.theta = cr_pi() * CertifiedReal(2 * f);
            a.multiplicity = 1;
            a.two_cos = bm->two_cos[i].embed_id();
            a.two_cos_min_poly = bm->two_cos[i].min_poly_over_q();
            grouped.emplace_back(f, (int)h.angles.size());
            h.angles.push_back(std::move(a));
        }
        std::sort(h.angles.begin(), h.angles.end(),
                  [](const HolonomyAngle& a, const HolonomyAngle& b) {
                      return a.theta.approx() < b.theta.approx();
                  });
        inst.target.holonomy = std::move(h);
    }
    inst.g = std::move(g);
    return inst;
}

SalemInstance lift_even_dimension(const SalemInstance& inst) {
    int n = inst.form.dim;
    KMat gram(n + 1, n + 1), mat(n + 1, n + 1);
    gram.at(0, 0) = promote(FieldElement(1), inst.field);
    mat.at(0, 0) = promote(FieldElement(1), inst.field);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            gram.at(i + 1, j + 1) = inst.form.gram.at(i, j);
            mat.at(i + 1, j + 1) = inst.g.matrix.at(i, j);
        }
    SalemInstance out;
    out.d = inst.d + 1;
    out.field = inst.field;
    out.form = QuadraticForm::make(inst.field, std::move(gram));
    out.g = IsometryK::make(out.form, std::move(mat));
    out.char_poly = out.g.char_poly;
    out.twist = inst.twist;
    out.target.length = inst.target.length;
    out.target.holonomy = inst.target.holonomy;
    out.target.holonomy.d = out.d;
    out.target.holonomy.trivial_count += 1;
    return out;
}

std::vector<AngleTuple> angle_grid(int d, const Rat& delta) {
    if (delta <= 0) fail("DimensionMismatch", "net radius must be positive");
    int m = (d - 1) / 2;
    if (m < 1) fail("DimensionMismatch", "need d >= 3");

    // smallest power of two N with 2 pi / N <= delta (pi < 355/113)
    long N = 2;
    while (Rat(N) * delta < 2 * Rat(355, 113)) N *= 2;

    // all sorted m-tuples of distinct grid angles 2 pi q / N, q = 1..N/2
    std::vector<AngleTuple> out;
    std::vector<long> qs(m);
    auto rec = [&](auto&& self, int pos, long start) -> void {
        if (pos == m) {
            AngleTuple t;
            for (long q : qs) {
                long g = std::gcd(q, N);
                t.entries.emplace_back(q / g, N / g);
            }
            out.push_back(std::move(t));
            return;
        }
        for (long q = start; q <= N / 2; ++q) {
            qs[pos] = q;
            self(self, pos + 1, q + 1);
        }
    };
    rec(rec, 0, 1);
    return out;
}

}  // namespace hypsys
