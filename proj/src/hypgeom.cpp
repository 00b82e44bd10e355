#include "hypsys/hypgeom.hpp"

namespace hypsys {

// ---- RMat ----

RMat RMat::identity(int n) {
    RMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = CertifiedReal(Rat(1));
    return m;
}

RMat RMat::from_k(const KMat& m, int embedding) {
    RMat r(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = m.a[i].embed(embedding);
    return r;
}

RMat RMat::from_k_id(const KMat& m) {
    RMat r(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = m.a[i].embed_id();
    return r;
}

RMat RMat::operator*(const RMat& o) const {
    RMat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < o.cols; ++j) {
            CertifiedReal s;
            for (int k = 0; k < cols; ++k) s = s + at(i, k) * o.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

RMat RMat::operator-(const RMat& o) const {
    RMat r(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] - o.a[i];
    return r;
}

RMat RMat::transposed() const {
    RMat r(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
    return r;
}

std::vector<CertifiedReal> RMat::apply(const std::vector<CertifiedReal>& v) const {
    std::vector<CertifiedReal> r(rows);
    for (int i = 0; i < rows; ++i) {
        CertifiedReal s;
        for (int j = 0; j < cols; ++j) s = s + at(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

CertifiedReal RMat::max_abs() const {
    CertifiedReal m;
    for (const auto& x : a) m = cr_max(m, cr_abs(x));
    return m;
}

// ---- standardization ----

RMat standardize(const QuadraticForm& Q) {
    auto [S, D] = congruence_diagonalize(Q);
    int n = Q.dim;
    std::vector<int> order;
    int neg = -1;
    for (int i = 0; i < n; ++i) {
        if (D[i].sign_id() > 0)
            order.push_back(i);
        else if (neg < 0)
            neg = i;
        else
            fail("WrongSignature", "form has more than one negative direction at the identity embedding");
    }
    if (neg < 0 || (int)order.size() != n - 1)
        fail("WrongSignature", "form does not have signature (dim-1, 1) at the identity embedding");
    order.push_back(neg);

    RMat M(n, n);
    for (int c = 0; c < n; ++c) {
        int src = order[c];
        CertifiedReal scale = CertifiedReal(Rat(1)) / cr_sqrt(cr_abs(D[src].embed_id()));
        for (int r = 0; r < n; ++r) M.at(r, c) = S.at(r, src).embed_id() * scale;
    }
    return M;
}

bool is_isometry(const KMat& g, const QuadraticForm& Q) {
    if (g.rows != Q.dim || g.cols != Q.dim) return false;
    if (!(g.transposed() * Q.gram * g == Q.gram)) return false;
    FieldElement det = kmat_det(g);
    return det.is_rational() && det.as_rational() == 1;
}

bool is_orthochronous(const KMat& g, const QuadraticForm& Q) {
    // With M = S P delta (delta diagonal), the (last,last) entry of M^-1 g M equals
    // the (j,j) entry of S^-1 g S where j is the column carrying the negative direction,
    // so the sheet test is exact in k.
    auto [S, D] = congruence_diagonalize(Q);
    int neg = -1;
    for (int i = 0; i < Q.dim; ++i)
        if (D[i].sign_id() < 0) {
            if (neg >= 0) fail("WrongSignature", "form is not Lorentzian at the identity embedding");
            neg = i;
        }
    if (neg < 0) fail("WrongSignature", "form is not Lorentzian at the identity embedding");
    KMat B = kmat_inverse(S) * g * S;
    return B.at(neg, neg).sign_id() > 0;
}

// ---- planes and half-spaces ----

HPlane HPlane::make(QuadraticForm form, std::vector<FieldElement> normal) {
    if ((int)normal.size() != form.dim) fail("DimensionMismatch", "normal length does not match form");
    for (auto& x : normal) x = promote(x, form.field);
    HPlane p{std::move(form), std::move(normal)};
    if (p.form.apply(p.normal).sign_id() <= 0)
        fail("SpacelikeLost", "plane normal is not spacelike at the identity embedding");
    return p;
}

PlaneRelation plane_relation(const HPlane& p1, const HPlane& p2) {
    FieldElement n12 = p1.form.pair(p1.normal, p2.normal);
    FieldElement n11 = p1.form.apply(p1.normal);
    FieldElement n22 = p2.form.apply(p2.normal);
    // compare <v1,v2>^2 against <v1,v1><v2,v2> exactly in k
    int cmp = (n12 * n12 - n11 * n22).sign_id();
    if (cmp < 0) return {PlaneRelationKind::Intersecting, std::nullopt};
    if (cmp == 0) return {PlaneRelationKind::Asymptotic, std::nullopt};
    CertifiedReal c = cr_abs(n12.embed_id()) / cr_sqrt(n11.embed_id() * n22.embed_id());
    return {PlaneRelationKind::Ultraparallel, cr_acosh(c)};
}

std::pair<bool, std::optional<CertifiedReal>> strongly_disjoint(const HalfSpace& h1,
                                                                const HalfSpace& h2) {
    PlaneRelation rel = plane_relation(h1.plane, h2.plane);
    if (rel.kind != PlaneRelationKind::Ultraparallel) return {false, std::nullopt};
    int s = h1.plane.form.pair(h1.plane.normal, h2.plane.normal).sign_id();
    if (h1.side * h2.side * s != -1) return {false, std::nullopt};
    return {true, rel.distance};
}

std::vector<std::vector<ProximityEntry>> proximity_matrix(const std::vector<HPlane>& planes,
                                                          const Rat& D) {
    size_t n = planes.size();
    if (n < 2) fail("DimensionMismatch", "need at least two planes");
    std::vector<std::vector<ProximityEntry>> out(n, std::vector<ProximityEntry>(n));
    for (size_t i = 0; i < n; ++i) {
        out[i][i] = {CertifiedReal(Rat(0)), true};
        for (size_t j = i + 1; j < n; ++j) {
            ProximityEntry e;
            PlaneRelation rel = plane_relation(planes[i], planes[j]);
            if (rel.kind != PlaneRelationKind::Ultraparallel) {
                e.distance = CertifiedReal(Rat(0));
                e.below = true;
            } else {
                e.distance = *rel.distance;
                // refine until the comparison with D resolves; treat a tie at depth as below
                long prec = 64;
                while (true) {
                    QInterval iv = e.distance.interval(prec);
                    if (iv.lo > D) {
                        e.below = false;
                        break;
                    }
                    if (iv.hi <= D) {
                        e.below = true;
                        break;
                    }
                    if (prec > 4096) {
                        e.below = true;  // boundary case within 2^-4096
                        break;
                    }
                    prec *= 2;
                }
            }
            out[i][j] = e;
            out[j][i] = e;
        }
    }
    return out;
}

CertifiedReal pair_real(const QuadraticForm& Q, const std::vector<CertifiedReal>& u,
                        const std::vector<CertifiedReal>& v) {
    if ((int)u.size() != Q.dim || (int)v.size() != Q.dim)
        fail("DimensionMismatch", "vector length does not match the form");
    CertifiedReal s;
    for (int i = 0; i < Q.dim; ++i)
        for (int j = 0; j < Q.dim; ++j) {
            if (Q.gram.at(i, j).is_zero()) continue;
            s = s + u[i] * Q.gram.at(i, j).embed_id() * v[j];
        }
    return s;
}

CertifiedReal point_plane_distance(const HPoint& x, const HPlane& p) {
    std::vector<CertifiedReal> v;
    for (const auto& c : p.normal) v.push_back(c.embed_id());
    CertifiedReal num = cr_abs(pair_real(p.form, x.coords, v));
    CertifiedReal den = cr_sqrt(p.form.apply(p.normal).embed_id());
    CertifiedReal r = num / den;
    // arcsinh(r) = log(r + sqrt(r^2+1))
    return cr_log(r + cr_sqrt(r * r + CertifiedReal(Rat(1))));
}

HPoint hpoint_from_chart(const QuadraticForm& Q, const RMat& M, const std::vector<Rat>& y) {
    if ((int)y.size() != Q.dim - 1) fail("DimensionMismatch", "chart coordinate length");
    std::vector<CertifiedReal> v;
    Rat s(1);
    for (const Rat& c : y) {
        v.emplace_back(c);
        s += c * c;
    }
    v.push_back(cr_sqrt(CertifiedReal(s)));
    return HPoint{M.apply(v)};
}

// ---- rationalization ----

HalfSpace rationalize_halfspace(const QuadraticForm& Q, const std::vector<CertifiedReal>& normal,
                                const Rat& eps) {
    if ((int)normal.size() != Q.dim) fail("DimensionMismatch", "normal length does not match form");
    if (eps <= 0) fail("SpacelikeLost", "tolerance must be positive");

    CertifiedReal qv = pair_real(Q, normal, normal);
    {
        Int margin(1);
        mpz_mul_2exp(margin.get_mpz_t(), margin.get_mpz_t(), 128);
        if (!(qv.refine_below(Rat(Int(1), margin)).lo > 0))
            fail("SpacelikeLost", "input normal is not spacelike");
    }
    CertifiedReal inv_norm = CertifiedReal(Rat(1)) / cr_sqrt(qv);

    Rat tol = eps / 2;
    for (int attempt = 0; attempt < 12; ++attempt, tol /= 16) {
        std::vector<FieldElement> w;
        bool ok = true;
        for (const auto& c : normal) {
            CertifiedReal u = c * inv_norm;
            QInterval iv = u.refine_below(tol / 2);
            w.emplace_back(cf_round(iv.mid(), tol / 2));
        }
        // exact spacelike check in k
        std::vector<FieldElement> wk;
        for (auto& x : w) wk.push_back(promote(x, Q.field));
        if (Q.apply(wk).sign_id() <= 0) ok = false;
        if (ok) return HalfSpace{HPlane::make(Q, std::move(wk)), 1};
    }
    fail("SpacelikeLost", "could not round the normal into k while staying spacelike");
}

}  // namespace hypsys
