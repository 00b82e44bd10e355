#include "hypsys/numfield.hpp"

#include <functional>
#include <map>

namespace hypsys {

// ---- NumberField ----

NumberField::NumberField(QPoly f, std::vector<QInterval> roots, int identity, bool tr)
    : min_poly(std::move(f)),
      degree(min_poly.deg()),
      identity_embedding(identity),
      totally_real(tr),
      isolating_(std::move(roots)) {}

FieldPtr NumberField::rationals() { return nullptr; }

static std::vector<QInterval> checked_roots(const QPoly& f) {
    if (f.is_zero() || f.deg() < 1) fail("NotIrreducible", "minimal polynomial must be nonconstant");
    if (f.lc() != 1) fail("NotMonic", "minimal polynomial must be monic");
    if (!qpoly_is_irreducible(f)) fail("NotIrreducible", "minimal polynomial must be irreducible over Q");
    return qpoly_isolate_real_roots(f);
}

FieldPtr NumberField::make(const QPoly& f, std::optional<int> identity) {
    auto roots = checked_roots(f);
    bool tr = (int)roots.size() == f.deg();
    if (!tr) fail("NotTotallyReal", "minimal polynomial has complex roots");
    int id = identity.value_or((int)roots.size() - 1);
    if (id < 0 || id >= (int)roots.size())
        fail("NotTotallyReal", "identity embedding index out of range");
    return FieldPtr(new NumberField(f, std::move(roots), id, tr));
}

FieldPtr NumberField::make_internal(const QPoly& f, const CertifiedReal& identity_root) {
    auto roots = checked_roots(f);
    bool tr = (int)roots.size() == f.deg();
    // Shrink the certified enclosure until it meets exactly one isolating interval.
    long prec = 64;
    int id = -1;
    while (id < 0) {
        QInterval e = identity_root.interval(prec);
        int hits = 0, last = -1;
        for (int i = 0; i < (int)roots.size(); ++i)
            if (roots[i].overlaps(e)) {
                ++hits;
                last = i;
            }
        if (hits == 1)
            id = last;
        else if (hits == 0)
            fail("NotIrreducible", "certified value is not a root of the given polynomial");
        else
            prec *= 2;
    }
    return FieldPtr(new NumberField(f, std::move(roots), id, tr));
}

QInterval NumberField::root_interval(int e, const Rat& width) const {
    std::lock_guard<std::mutex> lk(mu_);
    if (e < 0 || e >= (int)isolating_.size())
        fail("FieldMismatch", "embedding index out of range");
    if (isolating_[e].width() > width)
        isolating_[e] = qpoly_refine_root(min_poly, isolating_[e], width);
    return isolating_[e];
}

CertifiedReal NumberField::root_value(int e) const {
    std::lock_guard<std::mutex> lk(mu_);
    if (e < 0 || e >= (int)isolating_.size())
        fail("FieldMismatch", "embedding index out of range");
    return CertifiedReal::algebraic(min_poly, isolating_[e]);
}

bool NumberField::same_as(const NumberField& o) const {
    return min_poly == o.min_poly && identity_embedding == o.identity_embedding;
}

// ---- FieldElement ----

static std::vector<Rat> reduce_coeffs(const FieldPtr& field, std::vector<Rat> c) {
    if ((int)c.size() > field->degree) {
        QPoly r = poly_divmod(QPoly(std::move(c)), field->min_poly).second;
        c = std::move(r.c);
    }
    while (c.size() > 1 && c.back() == 0) c.pop_back();
    if (c.empty()) c.emplace_back(0);
    return c;
}

FieldElement::FieldElement(FieldPtr field, std::vector<Rat> coeffs) {
    if (!field) {
        if (coeffs.size() > 1) fail("FieldMismatch", "rational element with multiple coefficients");
        coeffs_ = coeffs.empty() ? std::vector<Rat>{Rat(0)} : std::move(coeffs);
        return;
    }
    field_ = std::move(field);
    coeffs_ = reduce_coeffs(field_, std::move(coeffs));
}

FieldElement FieldElement::generator(const FieldPtr& field) {
    if (!field) return FieldElement(Rat(0));
    return FieldElement(field, {Rat(0), Rat(1)});
}

FieldElement FieldElement::from_rational(const FieldPtr& field, const Rat& v) {
    return field ? FieldElement(field, {v}) : FieldElement(v);
}

bool FieldElement::is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0; }

bool FieldElement::is_rational() const { return coeffs_.size() == 1; }

Rat FieldElement::as_rational() const {
    if (!is_rational()) fail("FieldMismatch", "element is not rational");
    return coeffs_[0];
}

FieldElement promote(const FieldElement& x, const FieldPtr& f) {
    if (!f) {
        if (x.field_) fail("FieldMismatch", "cannot demote a field element to a rational");
        return x;
    }
    if (!x.field_) return FieldElement(f, x.coeffs_);
    if (x.field_ == f || x.field_->same_as(*f)) {
        FieldElement r = x;
        r.field_ = f;
        return r;
    }
    fail("FieldMismatch", "elements live in different fields");
}

static FieldPtr common_field(const FieldElement& a, const FieldElement& b) {
    if (!a.field()) return b.field();
    if (!b.field()) return a.field();
    if (a.field() == b.field() || a.field()->same_as(*b.field())) return a.field();
    fail("FieldMismatch", "elements live in different fields");
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    FieldPtr f = common_field(*this, o);
    FieldElement a = promote(*this, f), b = promote(o, f);
    std::vector<Rat> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rat(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) c[i] = a.coeffs_[i];
    for (size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return FieldElement(f, std::move(c));
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
    FieldPtr f = common_field(*this, o);
    FieldElement a = promote(*this, f), b = promote(o, f);
    std::vector<Rat> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rat(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i)
        for (size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return FieldElement(f, std::move(c));
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) fail("DivisionByZero", "inverse of zero");
    if (!field_) return FieldElement(Rat(1) / coeffs_[0]);
    auto [g, u, v] = poly_xgcd(QPoly(coeffs_), field_->min_poly);
    (void)v;
    if (g.deg() != 0) fail("DivisionByZero", "element shares a factor with the minimal polynomial");
    return FieldElement(field_, (u * kz_inv(g.c[0])).c);
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inverse(); }

int FieldElement::sign_at(int e) const {
    if (is_zero()) return 0;
    if (!field_ || is_rational()) return sgn(coeffs_[0]);
    QPoly p(coeffs_);
    Rat w = field_->root_interval(e, Rat(1)).width();
    while (true) {
        QInterval v = qpoly_eval_interval(p, field_->root_interval(e, w));
        if (v.sign_known()) return v.sign();
        w /= 16;
    }
}

int FieldElement::sign_id() const {
    return field_ ? sign_at(field_->identity_embedding) : sgn(coeffs_[0]);
}

CertifiedReal FieldElement::embed(int e) const {
    if (!field_ || is_rational()) return CertifiedReal(coeffs_[0]);
    FieldPtr f = field_;
    QPoly p(coeffs_);
    return CertifiedReal::from_eval([f, p, e](long prec) {
        Rat w(Int(1), Int(1) << std::min<long>(prec, 62));
        for (long k = 62; k < prec; k += 62) w /= Rat(Int(1) << 62);
        return qpoly_eval_interval(p, f->root_interval(e, w));
    });
}

CertifiedReal FieldElement::embed_id() const {
    return field_ ? embed(field_->identity_embedding) : CertifiedReal(coeffs_[0]);
}

QPoly FieldElement::min_poly_over_q() const {
    if (is_rational()) return QPoly(std::vector<Rat>{-coeffs_[0], Rat(1)});
    int n = field_->degree;
    // Powers of the element as rows; first linear dependency gives the minimal polynomial.
    std::vector<std::vector<Rat>> pows;
    FieldElement pw(field_, {Rat(1)});
    for (int m = 0; m <= n; ++m) {
        std::vector<Rat> row(pw.coeffs_);
        row.resize(n, Rat(0));
        pows.push_back(std::move(row));
        if (m < n) pw = pw * *this;
        // Gaussian elimination on the rows so far, keeping track of the combination.
        std::vector<std::vector<Rat>> a = pows;
        std::vector<std::vector<Rat>> comb(a.size());
        for (size_t i = 0; i < a.size(); ++i) {
            comb[i].assign(a.size(), Rat(0));
            comb[i][i] = 1;
        }
        size_t rank = 0;
        for (int col = 0; col < n && rank < a.size(); ++col) {
            size_t piv = rank;
            while (piv < a.size() && a[piv][col] == 0) ++piv;
            if (piv == a.size()) continue;
            std::swap(a[piv], a[rank]);
            std::swap(comb[piv], comb[rank]);
            for (size_t i = rank + 1; i < a.size(); ++i) {
                if (a[i][col] == 0) continue;
                Rat fct = a[i][col] / a[rank][col];
                for (int j = col; j < n; ++j) a[i][j] -= fct * a[rank][j];
                for (size_t j = 0; j < comb.size(); ++j) comb[i][j] -= fct * comb[rank][j];
            }
            ++rank;
        }
        if (rank < a.size()) {
            // the last row reduced to zero: comb.back() combines powers 0..m to zero
            QPoly mp(comb.back());
            return mp.monic();
        }
    }
    fail("FieldMismatch", "no linear dependency among element powers");
}

bool FieldElement::is_algebraic_integer() const {
    QPoly mp = min_poly_over_q();
    for (const Rat& c : mp.c)
        if (c.get_den() != 1) return false;
    return true;
}

FieldElement arith(const FieldElement& a, const FieldElement& b, ArithOp op) {
    switch (op) {
        case ArithOp::Add: return a + b;
        case ArithOp::Sub: return a - b;
        case ArithOp::Mul: return a * b;
        case ArithOp::Div: return a / b;
    }
    fail("FieldMismatch", "unknown operation");
}

// ---- cos fields ----

std::pair<FieldPtr, FieldElement> cos_field(int p) {
    if (p < 1) fail("NotIrreducible", "cos field requires a positive integer");
    if (p == 1) return {nullptr, FieldElement(Rat(1))};
    if (p == 2) return {nullptr, FieldElement(Rat(-1))};
    QPoly mp = cos2pi_minpoly(p);
    if (mp.deg() == 1) return {nullptr, FieldElement(-mp.c[0] / 2)};
    // The roots are 2cos(2*pi*q/p) over q coprime to p, q < p/2; q = 1 is the largest.
    FieldPtr f = NumberField::make(mp);
    FieldElement half_gen = FieldElement::generator(f) * FieldElement(Rat(1, 2));
    return {f, half_gen};
}

FieldElement chebyshev_two_cos(const FieldElement& t, int q) {
    q = std::abs(q);
    FieldElement c0(2), c1 = t;
    if (q == 0) return c0;
    for (int j = 1; j < q; ++j) {
        FieldElement c2 = t * c1 - c0;
        c0 = c1;
        c1 = c2;
    }
    return c1;
}

// ---- embeddings, compositum, extension ----

FieldElement Embedding::apply(const FieldElement& x) const {
    if (!x.field()) return promote(x, to);
    if (!from || !(x.field() == from || x.field()->same_as(*from)))
        fail("FieldMismatch", "element not in the embedding's source field");
    QPoly p(x.coeffs());
    FieldElement r(0);
    for (int i = p.deg(); i >= 0; --i) r = r * gen_image + FieldElement(p.coeff(i));
    return promote(r, to);
}

KPoly Embedding::apply(const KPoly& p) const {
    std::vector<FieldElement> c;
    c.reserve(p.c.size());
    for (const auto& a : p.c) c.push_back(apply(a));
    return KPoly(std::move(c));
}

static Embedding identity_embedding_map(const FieldPtr& f) {
    return Embedding{f, f, FieldElement::generator(f)};
}

static Embedding rational_embedding_map(const FieldPtr& to) {
    return Embedding{nullptr, to, FieldElement::from_rational(to, Rat(0))};
}

static QPoly qpoly_interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
    QPoly r;
    for (size_t i = 0; i < xs.size(); ++i) {
        QPoly li = QPoly::constant(Rat(1));
        Rat den(1);
        for (size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            li = li * QPoly(std::vector<Rat>{-xs[j], Rat(1)});
            den *= xs[i] - xs[j];
        }
        r = r + li * (ys[i] / den);
    }
    return r;
}

// Select the irreducible factor of h whose root set contains the certified value.
static QPoly select_factor(const QFactorization& fac, const CertifiedReal& value) {
    struct Cand {
        const QPoly* g;
        QInterval iv;
    };
    if (auto r = value.exact()) {
        for (const auto& [g, m] : fac.factors)
            if (g.eval(*r) == 0) return g;
        fail("NotIrreducible", "certified root matches no factor");
    }
    std::vector<Cand> cands;
    for (const auto& [g, m] : fac.factors) {
        (void)m;
        for (const auto& iv : qpoly_isolate_real_roots(g)) cands.push_back({&g, iv});
    }
    long prec = 64;
    while (true) {
        QInterval e = value.interval(prec);
        const QPoly* hit = nullptr;
        int hits = 0;
        for (auto& c : cands) {
            if (c.iv.width() > e.width() && c.iv.lo != c.iv.hi)
                c.iv = qpoly_refine_root(*c.g, c.iv, e.width());
            if (c.iv.overlaps(e)) {
                ++hits;
                hit = c.g;
            }
        }
        if (hits == 1) return *hit;
        if (hits == 0) fail("NotIrreducible", "certified root matches no factor");
        prec *= 2;
    }
}

ExtensionResult extend_with_root(const FieldPtr& k, const KPoly& p_in, const CertifiedReal& root) {
    if (p_in.deg() < 1) fail("NotIrreducible", "cannot adjoin a root of a constant");
    KPoly p = poly_squarefree_part(p_in);

    bool rational_coeffs = true;
    for (const auto& c : p.c)
        if (!c.is_rational()) rational_coeffs = false;

    if (rational_coeffs) {
        QPoly q;
        q.c.reserve(p.c.size());
        for (const auto& c : p.c) q.c.push_back(c.as_rational());
        q.trim();
        QPoly g = select_factor(qpoly_factor(q), root);
        if (g.deg() == 1) {
            Rat r = -g.c[0];
            if (!k) return {nullptr, Embedding{nullptr, nullptr, FieldElement(0)}, FieldElement(r)};
            return {k, identity_embedding_map(k), FieldElement::from_rational(k, r)};
        }
        if (!k) {
            FieldPtr nf = NumberField::make_internal(g, root);
            return {nf, rational_embedding_map(nf), FieldElement::generator(nf)};
        }
        // irrational root over a proper base field: fall through to the general search
    }
    if (!k) fail("FieldMismatch", "coefficients carry a field but no base field was given");

    const QPoly& f = k->min_poly;  // min poly of theta, the generator of k
    int n = k->degree, m = p.deg();
    CertifiedReal theta = k->identity_root_value();

    for (int t = 1; t <= 32; ++t) {
        // gamma = root + t*theta; h(x) = prod over roots theta_i of f of P(x - t*theta_i)
        // where P is p with theta replaced by theta_i. Computed by interpolation.
        int D = n * m;
        std::vector<Rat> xs, ys;
        for (int j = 0; j <= D; ++j) {
            Rat xj(j);
            // B(y) = sum_i c_i(y) * (xj - t*y)^i, a rational polynomial in y
            QPoly B, pw = QPoly::constant(Rat(1));
            QPoly lin(std::vector<Rat>{xj, Rat(-t)});
            for (int i = 0; i <= m; ++i) {
                QPoly ci(p.coeff(i).field() ? QPoly(p.coeff(i).coeffs())
                                            : QPoly::constant(p.coeff(i).as_rational()));
                B = B + ci * pw;
                if (i < m) pw = pw * lin;
            }
            ys.push_back(poly_resultant(f, B));
            xs.push_back(xj);
        }
        QPoly h = qpoly_interpolate(xs, ys);
        if (h.deg() < 1) continue;
        if (poly_gcd(h, h.derivative()).deg() > 0) continue;  // gamma not separating yet

        CertifiedReal gamma = root + CertifiedReal(Rat(t)) * theta;
        QPoly g = select_factor(qpoly_factor(h), gamma);
        FieldPtr nf = NumberField::make_internal(g, gamma);
        FieldElement gam = FieldElement::generator(nf);

        // Recover theta inside nf: gcd_y(f(y), P(gamma - t*y, y)) should be y - theta.
        KPoly fy, Py;
        {
            std::vector<FieldElement> fc;
            for (const Rat& c : f.c) fc.push_back(FieldElement(c));
            fy = KPoly(std::move(fc));
            KPoly liny(std::vector<FieldElement>{gam, FieldElement(Rat(-t))});
            KPoly pw = KPoly::constant(FieldElement(1));
            for (int i = 0; i <= m; ++i) {
                const auto& ci = p.coeff(i);
                QPoly cq(ci.field() ? QPoly(ci.coeffs()) : QPoly::constant(ci.as_rational()));
                std::vector<FieldElement> yc;
                for (const Rat& c : cq.c) yc.push_back(FieldElement(c));
                KPoly ciy(std::move(yc));
                for (auto& cc : ciy.c) cc = promote(cc, nf);
                Py = Py + ciy * pw;
                if (i < m) pw = pw * liny;
            }
        }
        for (auto& cc : fy.c) cc = promote(cc, nf);
        KPoly gy = poly_gcd(fy, Py);
        if (gy.deg() != 1) continue;
        FieldElement theta_k = -(gy.coeff(0) / gy.coeff(1));
        FieldElement lambda_k = gam - FieldElement(Rat(t)) * theta_k;

        // Sanity: theta_k is a root of f and lambda_k is a root of p mapped into nf.
        Embedding base{k, nf, theta_k};
        FieldElement check(0);
        for (int i = p.deg(); i >= 0; --i) check = check * lambda_k + base.apply(p.coeff(i));
        if (!check.is_zero()) continue;

        return ExtensionResult{nf, base, lambda_k};
    }
    fail("PrimitiveElementSearchExceeded", "no separating shift found after 32 attempts");
}

CompositumResult compositum(const FieldPtr& k1, const FieldPtr& k2) {
    if (!k1 && !k2) return {nullptr, Embedding{nullptr, nullptr, FieldElement(0)},
                            Embedding{nullptr, nullptr, FieldElement(0)}};
    if (!k1) return {k2, rational_embedding_map(k2), identity_embedding_map(k2)};
    if (!k2) return {k1, identity_embedding_map(k1), rational_embedding_map(k1)};
    if (k1 == k2 || k1->same_as(*k2))
        return {k1, identity_embedding_map(k1), Embedding{k2, k1, FieldElement::generator(k1)}};

    std::vector<FieldElement> pc;
    for (const Rat& c : k2->min_poly.c) pc.push_back(FieldElement(c));
    auto ext = extend_with_root(k1, KPoly(std::move(pc)), k2->identity_root_value());
    return {ext.field, ext.base_map, Embedding{k2, ext.field, ext.root}};
}

// ---- Sturm over k at the identity embedding ----

KSturm::KSturm(const KPoly& squarefree) {
    KPoly a = squarefree;
    if (a.deg() < 1) {
        chain = {a};
        return;
    }
    KPoly b = a.derivative();
    chain = {a, b};
    while (!b.is_zero() && b.deg() > 0) {
        KPoly r = -poly_divmod(a, b).second;
        a = b;
        b = r;
        if (!b.is_zero()) chain.push_back(b);
    }
}

int KSturm::sign_variations(const Rat& x) const {
    int v = 0, last = 0;
    FieldElement xe{x};
    for (const auto& p : chain) {
        int s = p.is_zero() ? 0 : p.eval(xe).sign_id();
        if (s != 0) {
            if (last != 0 && s != last) ++v;
            last = s;
        }
    }
    return v;
}

int KSturm::count(const Rat& a, const Rat& b) const {
    return sign_variations(a) - sign_variations(b);
}

int kpoly_sign_at_rational_id(const KPoly& p, const Rat& x) {
    return p.is_zero() ? 0 : p.eval(FieldElement{x}).sign_id();
}

Rat kpoly_root_bound_id(const KPoly& p) {
    if (p.deg() < 1) return Rat(1);
    Rat m(0);
    FieldElement lead = p.lc();
    for (int i = 0; i < p.deg(); ++i) {
        QInterval v = (p.coeff(i) / lead).embed_id().interval(32);
        m = std::max(m, std::max(rat_abs(v.lo), rat_abs(v.hi)));
    }
    return m + 1;
}

std::vector<QInterval> kpoly_isolate_real_roots_id(const KPoly& squarefree) {
    std::vector<QInterval> out;
    if (squarefree.deg() < 1) return out;
    const KPoly& sf = squarefree;
    KSturm st(sf);
    Rat bound = kpoly_root_bound_id(sf);
    std::function<void(Rat, Rat)> go = [&](Rat a, Rat b) {
        int n = st.count(a, b);
        if (n == 0) return;
        if (n == 1 && kpoly_sign_at_rational_id(sf, a) * kpoly_sign_at_rational_id(sf, b) < 0) {
            out.emplace_back(a, b);
            return;
        }
        Rat m = (a + b) / 2;
        if (kpoly_sign_at_rational_id(sf, m) == 0) {
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

QInterval kpoly_refine_root_id(const KPoly& squarefree, QInterval iv, const Rat& width) {
    if (iv.lo == iv.hi) return iv;
    int sa = kpoly_sign_at_rational_id(squarefree, iv.lo);
    while (iv.width() > width) {
        Rat m = iv.mid();
        int sm = kpoly_sign_at_rational_id(squarefree, m);
        if (sm == 0) return QInterval(m, m);
        if (sm == sa)
            iv.lo = m;
        else
            iv.hi = m;
    }
    return iv;
}

CertifiedReal kpoly_root_value_id(const KPoly& squarefree, const QInterval& isolating) {
    if (isolating.lo == isolating.hi) return CertifiedReal(isolating.lo);
    struct State {
        KPoly p;
        QInterval iv;
        std::mutex mu;
    };
    auto st = std::make_shared<State>();
    st->p = squarefree;
    st->iv = isolating;
    return CertifiedReal::from_eval([st](long prec) {
        Rat w(Int(1), Int(1) << std::min<long>(prec, 62));
        for (long k = 62; k < prec; k += 62) w /= Rat(Int(1) << 62);
        std::lock_guard<std::mutex> lk(st->mu);
        if (st->iv.width() > w) st->iv = kpoly_refine_root_id(st->p, st->iv, w);
        return st->iv;
    });
}

QPoly absolute_min_poly(const KPoly& squarefree, const CertifiedReal& root) {
    bool rational_coeffs = true;
    FieldPtr k;
    for (const auto& c : squarefree.c) {
        if (!c.is_rational()) rational_coeffs = false;
        if (c.field()) k = c.field();
    }
    if (rational_coeffs || !k) {
        QPoly q;
        for (const auto& c : squarefree.c) q.c.push_back(c.as_rational());
        q.trim();
        return select_factor(qpoly_factor(q), root);
    }
    return extend_with_root(k, squarefree, root).root.min_poly_over_q();
}

}  // namespace hypsys
