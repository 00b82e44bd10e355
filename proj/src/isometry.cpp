#include "hypsys/isometry.hpp"

#include <algorithm>
#include <numeric>

namespace hypsys {

namespace {

// x - c for matrix polynomial division
KPoly linear(long c) { return KPoly(std::vector<FieldElement>{FieldElement(-c), FieldElement(1)}); }

struct TransRoot {
    KPoly factor;    // squarefree factor of the transform carrying this root
    int mult = 1;
    QInterval iv;    // isolating at the identity embedding
    bool expanding;  // root > 2 (else inside (-2,2))
};

struct Spectral {
    int mult_plus1 = 0, mult_minus1 = 0;
    KPoly trans;  // reciprocal transform of the stripped characteristic polynomial
    std::vector<TransRoot> roots;
    const TransRoot* expanding() const {
        for (const auto& r : roots)
            if (r.expanding) return &r;
        return nullptr;
    }
};

Spectral analyze(const IsometryK& g) {
    Spectral sp;
    KPoly p = g.char_poly;
    for (bool more = true; more;) {
        auto [q, r] = poly_divmod(p, linear(1));
        if (r.is_zero() && p.deg() > 0) {
            p = q;
            ++sp.mult_plus1;
        } else
            more = false;
    }
    for (bool more = true; more;) {
        auto [q, r] = poly_divmod(p, linear(-1));
        if (r.is_zero() && p.deg() > 0) {
            p = q;
            ++sp.mult_minus1;
        } else
            more = false;
    }
    if (p.deg() == 0) return sp;
    if (p.deg() % 2 != 0 || !poly_is_reciprocal(p))
        fail("WrongSignature", "characteristic polynomial lacks the reciprocal structure of an isometry");
    sp.trans = poly_reciprocal_transform(p);

    int counted = 0;
    for (auto& [factor, mult] : poly_squarefree_decomposition(sp.trans)) {
        for (auto iv : kpoly_isolate_real_roots_id(factor)) {
            // locate the root relative to [-2, 2]; +-2 cannot occur (eigenvalues +-1 stripped)
            bool expanding;
            while (true) {
                if (iv.lo > 2) {
                    expanding = true;
                    break;
                }
                if (iv.hi < 2 && iv.lo > -2) {
                    expanding = false;
                    break;
                }
                if (iv.hi < -2)
                    fail("WrongSignature", "negative expanding eigenvalue on an orthochronous isometry");
                iv = kpoly_refine_root_id(factor, iv, iv.width() / 4);
            }
            sp.roots.push_back({factor, mult, iv, expanding});
            counted += mult;
        }
    }
    if (counted != sp.trans.deg())
        fail("WrongSignature", "unexpected complex root in the trace transform");
    return sp;
}

KMat kpoly_eval_matrix(const KPoly& p, const KMat& m) {
    int n = m.rows;
    KMat r(n, n);
    for (int i = p.deg(); i >= 0; --i) {
        r = r * m;
        for (int j = 0; j < n; ++j) r.at(j, j) = r.at(j, j) + p.coeff(i);
    }
    return r;
}

bool kmat_is_zero(const KMat& m) {
    for (const auto& x : m.a)
        if (!x.is_zero()) return false;
    return true;
}

long euler_phi(long n) {
    long r = n;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            r -= r / p;
            while (n % p == 0) n /= p;
        }
    if (n > 1) r -= r / n;
    return r;
}

}  // namespace

IsometryK IsometryK::make(QuadraticForm form, KMat matrix) {
    for (auto& x : matrix.a) x = promote(x, form.field);
    if (!is_isometry(matrix, form))
        fail("NotIsometry", "matrix does not preserve the form with determinant 1");
    if (!is_orthochronous(matrix, form))
        fail("NotIsometry", "matrix swaps the sheets of the hyperboloid");
    KPoly cp = kmat_char_poly(matrix);
    return IsometryK{std::move(form), std::move(matrix), std::move(cp)};
}

IsometryK IsometryK::inverse() const { return make(form, kmat_inverse(matrix)); }

IsometryK IsometryK::operator*(const IsometryK& o) const {
    return make(form, matrix * o.matrix);
}

IsometryClass classify(const IsometryK& g) {
    if (g.matrix.is_identity()) return IsometryClass::Identity;
    Spectral sp = analyze(g);
    if (sp.expanding()) return IsometryClass::Loxodromic;
    KPoly sf = poly_squarefree_part(g.char_poly);
    return kmat_is_zero(kpoly_eval_matrix(sf, g.matrix)) ? IsometryClass::Elliptic
                                                         : IsometryClass::Parabolic;
}

static CertifiedReal length_from_root(const TransRoot& r) {
    // y = lambda + 1/lambda, lambda = (y + sqrt(y^2-4))/2
    CertifiedReal y = kpoly_root_value_id(r.factor, r.iv);
    CertifiedReal lam = (y + cr_sqrt(y * y - CertifiedReal(Rat(4)))) / CertifiedReal(Rat(2));
    return cr_log(lam);
}

CertifiedReal translation_length(const IsometryK& g) {
    Spectral sp = analyze(g);
    const TransRoot* r = sp.expanding();
    if (!r) fail("NotLoxodromic", "no eigenvalue exceeds 1");
    return length_from_root(*r);
}

HolonomyClass holonomy(const IsometryK& g) {
    Spectral sp = analyze(g);
    if (!sp.expanding()) fail("NotLoxodromic", "no eigenvalue exceeds 1");
    HolonomyClass h;
    h.d = g.form.dim - 1;
    h.trivial_count = sp.mult_plus1;

    struct Item {
        double key;
        HolonomyAngle a;
    };
    std::vector<Item> items;
    for (const auto& r : sp.roots) {
        if (r.expanding) {
            if (r.mult != 1) fail("WrongSignature", "repeated expanding eigenvalue");
            continue;
        }
        HolonomyAngle a;
        a.multiplicity = r.mult;
        a.two_cos = kpoly_root_value_id(r.factor, r.iv);
        a.theta = cr_acos(a.two_cos / CertifiedReal(Rat(2)));
        a.two_cos_min_poly = absolute_min_poly(r.factor, a.two_cos);
        items.push_back({a.theta.approx(), std::move(a)});
    }
    std::sort(items.begin(), items.end(), [](const Item& x, const Item& y) { return x.key < y.key; });
    for (auto& it : items) h.angles.push_back(std::move(it.a));

    if (sp.mult_minus1 % 2 != 0) fail("WrongSignature", "odd multiplicity of eigenvalue -1");
    if (sp.mult_minus1 > 0) {
        HolonomyAngle a;
        a.multiplicity = sp.mult_minus1 / 2;
        a.two_cos = CertifiedReal(Rat(-2));
        a.theta = cr_pi();
        a.two_cos_min_poly = QPoly(std::vector<Rat>{Rat(2), Rat(1)});
        h.angles.push_back(std::move(a));
    }
    return h;
}

ComplexLength complex_length(const IsometryK& g) {
    return ComplexLength{translation_length(g), holonomy(g)};
}

static std::vector<CertifiedReal> padded_angles(const HolonomyClass& h) {
    std::vector<CertifiedReal> v;
    for (const auto& a : h.angles)
        for (int i = 0; i < a.multiplicity; ++i) v.push_back(a.theta);
    size_t m = (size_t)((h.d - 1) / 2);
    if (v.size() > m) fail("DimensionMismatch", "holonomy has more angles than fit in d-1 dimensions");
    while (v.size() < m) v.emplace_back(Rat(0));
    return v;
}

CertifiedReal holonomy_distance(const HolonomyClass& h1, const HolonomyClass& h2) {
    if (h1.d != h2.d) fail("DimensionMismatch", "holonomy classes of different dimensions");
    auto a = padded_angles(h1), b = padded_angles(h2);
    size_t m = a.size();
    if (m == 0) return CertifiedReal(Rat(0));
    std::vector<size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::optional<CertifiedReal> best;
    do {
        CertifiedReal worst(Rat(0));
        for (size_t i = 0; i < m; ++i) worst = cr_max(worst, cr_abs(a[i] - b[perm[i]]));
        best = best ? cr_min(*best, worst) : worst;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return *best;
}

std::optional<long> holonomy_order(const HolonomyClass& h) {
    long order = 1;
    for (const auto& a : h.angles) {
        const QPoly& mp = a.two_cos_min_poly;
        bool integral = true;
        for (const Rat& c : mp.c)
            if (c.get_den() != 1) integral = false;
        if (!integral) return std::nullopt;  // not an algebraic integer
        long deg = mp.deg();
        long n_found = 0;
        if (deg == 1) {
            Rat r = -mp.c[0];  // 2cos(theta)
            if (r == -2) n_found = 2;
            else if (r == -1) n_found = 3;
            else if (r == 0) n_found = 4;
            else if (r == 1) n_found = 6;
            else if (r == 2) n_found = 1;
            else return std::nullopt;
        } else {
            // phi(n) = 2*deg and phi(n) >= sqrt(n/2) bound the search
            long bound = 8 * deg * deg + 4;
            for (long n = 3; n <= bound; ++n) {
                if (euler_phi(n) != 2 * deg) continue;
                if (cos2pi_minpoly((int)n) == mp) {
                    n_found = n;
                    break;
                }
            }
            if (n_found == 0) return std::nullopt;
        }
        order = std::lcm(order, n_found);
    }
    return order;
}

std::vector<KMat> skew_basis(const QuadraticForm& Q) {
    int n = Q.dim;
    // unknowns X_{ab} flattened; equations (X^t Q + Q X)_{ij} = 0
    KMat sys(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int row = i * n + j;
            for (int r = 0; r < n; ++r) {
                // (X^t Q)_{ij} involves X_{ri} Q_{rj}; (Q X)_{ij} involves Q_{ir} X_{rj}
                sys.at(row, r * n + i) = sys.at(row, r * n + i) + Q.gram.at(r, j);
                sys.at(row, r * n + j) = sys.at(row, r * n + j) + Q.gram.at(i, r);
            }
        }
    std::vector<KMat> basis;
    for (auto& v : kmat_nullspace(sys)) {
        KMat x(n, n);
        for (int i = 0; i < n * n; ++i) x.a[i] = promote(v[i], Q.field);
        basis.push_back(std::move(x));
    }
    return basis;
}

IsometryK cayley(const QuadraticForm& Q, const KMat& X) {
    int n = Q.dim;
    if (X.rows != n || X.cols != n) fail("DimensionMismatch", "skew matrix size does not match form");
    KMat ipx = KMat::identity(n) + X;
    KMat imx = KMat::identity(n) - X;
    if (kmat_det(imx).is_zero()) fail("Singular", "I - X is not invertible");
    return IsometryK::make(Q, ipx * kmat_inverse(imx));
}

// certified Gauss-Jordan; pivots must certify nonzero or the chart misses
static RMat rmat_inverse_certified(const RMat& m) {
    int n = m.rows;
    RMat a = m;
    RMat inv = RMat::identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        long prec = 64;
        while (piv < 0) {
            double bestmag = 0;
            for (int r = col; r < n; ++r) {
                QInterval iv = a.at(r, col).interval(prec);
                if (iv.sign_known()) {
                    double mag = std::abs(iv.mid().get_d());
                    if (piv < 0 || mag > bestmag) {
                        piv = r;
                        bestmag = mag;
                    }
                }
            }
            if (piv < 0) {
                if (prec > (1 << 12))
                    fail("CayleyChartMiss", "pivot not certified nonzero (eigenvalue -1 suspected)");
                prec *= 4;
            }
        }
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(a.at(piv, j), a.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        CertifiedReal d = a.at(col, col);
        for (int j = 0; j < n; ++j) {
            a.at(col, j) = a.at(col, j) / d;
            inv.at(col, j) = inv.at(col, j) / d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            CertifiedReal f = a.at(r, col);
            for (int j = 0; j < n; ++j) {
                a.at(r, j) = a.at(r, j) - f * a.at(col, j);
                inv.at(r, j) = inv.at(r, j) - f * inv.at(col, j);
            }
        }
    }
    return inv;
}

RMat inverse_cayley(const RMat& g) {
    int n = g.rows;
    RMat gpi = g, gmi = g;
    for (int i = 0; i < n; ++i) {
        gpi.at(i, i) = gpi.at(i, i) + CertifiedReal(Rat(1));
        gmi.at(i, i) = gmi.at(i, i) - CertifiedReal(Rat(1));
    }
    return gmi * rmat_inverse_certified(gpi);
}

namespace {

// exact coordinates extractor: pivot rows of the flattened basis matrix
struct SkewChart {
    std::vector<KMat> basis;
    std::vector<int> pivot_rows;  // rows of the n^2 x m column matrix forming an invertible block
    KMat block_inv;               // inverse of that m x m block, exact over k

    explicit SkewChart(const QuadraticForm& Q) {
        basis = skew_basis(Q);
        int n2 = Q.dim * Q.dim, m = (int)basis.size();
        KMat cols(n2, m);
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < n2; ++i) cols.at(i, j) = basis[j].a[i];
        // row-echelon to find m independent rows
        KMat work = cols;
        std::vector<int> rows_left(n2);
        std::iota(rows_left.begin(), rows_left.end(), 0);
        int rank = 0;
        for (int col = 0; col < m; ++col) {
            int piv = -1;
            for (int r = rank; r < n2; ++r)
                if (!work.at(r, col).is_zero()) {
                    piv = r;
                    break;
                }
            if (piv < 0) fail("Singular", "skew basis is degenerate");
            if (piv != rank) {
                for (int j = 0; j < m; ++j) std::swap(work.at(piv, j), work.at(rank, j));
                std::swap(rows_left[piv], rows_left[rank]);
            }
            FieldElement invp = work.at(rank, col).inverse();
            for (int r = rank + 1; r < n2; ++r) {
                if (work.at(r, col).is_zero()) continue;
                FieldElement f = work.at(r, col) * invp;
                for (int j = col; j < m; ++j) work.at(r, j) = work.at(r, j) - f * work.at(rank, j);
            }
            pivot_rows.push_back(rows_left[rank]);
            ++rank;
        }
        KMat block(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) block.at(i, j) = cols.at(pivot_rows[i], j);
        block_inv = kmat_inverse(block);
    }

    /// coordinates of a (certified) q-skew matrix in the basis
    std::vector<CertifiedReal> coords(const RMat& X) const {
        int m = (int)basis.size();
        std::vector<CertifiedReal> c(m);
        RMat bi = RMat::from_k_id(block_inv);
        for (int i = 0; i < m; ++i) {
            CertifiedReal s;
            for (int j = 0; j < m; ++j) s = s + bi.at(i, j) * X.a[pivot_rows[j]];
            c[i] = s;
        }
        return c;
    }
};

IsometryK approximate_direct(const QuadraticForm& Q, const RMat& g_target, const Rat& eps,
                             const SkewChart& chart) {
    RMat X = inverse_cayley(g_target);
    std::vector<CertifiedReal> c = chart.coords(X);
    Rat tol = eps / 8;
    for (int attempt = 0; attempt < 14; ++attempt, tol /= 16) {
        KMat Xk(Q.dim, Q.dim);
        for (size_t j = 0; j < chart.basis.size(); ++j) {
            QInterval iv = c[j].refine_below(tol / 2);
            Rat r = cf_round(iv.mid(), tol / 2);
            if (r == 0) continue;
            Xk = Xk + chart.basis[j] * FieldElement(r);
        }
        IsometryK g;
        try {
            g = cayley(Q, Xk);
        } catch (const Error&) {
            continue;  // I - Xk singular at this rounding; retry finer
        }
        CertifiedReal resid = (RMat::from_k_id(g.matrix) - g_target).max_abs();
        QInterval iv = resid.refine_below(eps / 16);
        if (iv.hi < eps) return g;
    }
    fail("CayleyChartMiss", "rounding schedule exhausted without meeting the tolerance");
}

}  // namespace

IsometryK approximate(const QuadraticForm& Q, const RMat& g_target, const Rat& eps) {
    if (eps <= 0) fail("CayleyChartMiss", "tolerance must be positive");
    SkewChart chart(Q);
    try {
        return approximate_direct(Q, g_target, eps, chart);
    } catch (const Error& e) {
        if (e.code() != "CayleyChartMiss") throw;
    }
    // g_target likely has eigenvalue -1: compose with a fixed k-rational isometry
    for (int denom : {3, 5, 7, 11}) {
        KMat X0 = chart.basis[0] * FieldElement(Rat(1, denom));
        IsometryK h;
        try {
            h = cayley(Q, X0);
        } catch (const Error&) {
            continue;
        }
        RMat g2 = g_target * RMat::from_k_id(h.matrix);
        Rat inner = eps / 4;
        for (int attempt = 0; attempt < 6; ++attempt, inner /= 16) {
            IsometryK a2;
            try {
                a2 = approximate_direct(Q, g2, inner, chart);
            } catch (const Error&) {
                break;
            }
            IsometryK g = a2 * h.inverse();
            CertifiedReal resid = (RMat::from_k_id(g.matrix) - g_target).max_abs();
            if (resid.refine_below(eps / 16).hi < eps) return g;
        }
    }
    fail("CayleyChartMiss", "could not approximate after composing with a chart shift");
}

IsometryK build_infinite_holonomy_example(int d, const Rat& eps) {
    if (d < 3) fail("DimensionMismatch", "need dimension at least 3");
    if (eps <= 0) fail("DimensionMismatch", "tolerance must be positive");
    auto k = NumberField::make(QPoly(std::vector<Rat>{Rat(-2), Rat(0), Rat(1)}));
    FieldElement s = FieldElement::generator(k);
    std::vector<FieldElement> diag(d + 1, FieldElement(1));
    diag[d] = -s;
    QuadraticForm q = QuadraticForm::diagonal(k, std::move(diag));

    Rat t = eps < 1 ? eps / 8 : Rat(1, 8);
    for (int attempt = 0; attempt < 64; ++attempt, t /= 2) {
        KMat m = KMat::identity(d + 1);
        m.at(0, 0) = FieldElement(Rat(3, 5));
        m.at(0, 1) = FieldElement(Rat(-4, 5));
        m.at(1, 0) = FieldElement(Rat(4, 5));
        m.at(1, 1) = FieldElement(Rat(3, 5));
        // boost block: Cayley image of [[0, s*t],[t, 0]] in the last two coordinates
        FieldElement den = (FieldElement(1) - s * FieldElement(t) * FieldElement(t)).inverse();
        m.at(d - 1, d - 1) = (FieldElement(1) + s * FieldElement(t) * FieldElement(t)) * den;
        m.at(d - 1, d) = FieldElement(2) * s * FieldElement(t) * den;
        m.at(d, d - 1) = FieldElement(2) * FieldElement(t) * den;
        m.at(d, d) = m.at(d - 1, d - 1);
        IsometryK g = IsometryK::make(q, std::move(m));
        CertifiedReal len = translation_length(g);
        if (len.refine_below(eps / 16).hi < eps) return g;
    }
    fail("DimensionMismatch", "could not tune the boost parameter");
}

}  // namespace hypsys
