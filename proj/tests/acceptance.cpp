// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line with
// its wall-clock time; the process exits nonzero if any criterion fails or
// exceeds its time budget.
#include "hypsys/json_io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace hypsys;
using Clock = std::chrono::steady_clock;

namespace {

Rat tiny(int k) {
    Int d(1);
    mpz_ui_pow_ui(d.get_mpz_t(), 10, k);
    return Rat(Int(1), d);
}

QPoly P(std::initializer_list<long> asc) {
    std::vector<Rat> c;
    for (long a : asc) c.emplace_back(a);
    return QPoly(std::move(c));
}

KPoly promote_poly(const QPoly& p, const FieldPtr& k) {
    std::vector<FieldElement> c;
    for (const Rat& r : p.c) c.push_back(promote(FieldElement(r), k));
    return KPoly(std::move(c));
}

// |x| < 10^-k, certified (both enclosure ends inside)
bool cr_small(const CertifiedReal& x, int k) {
    QInterval iv = x.refine_below(tiny(k + 1));
    return iv.lo > -tiny(k) && iv.hi < tiny(k);
}

struct Check {
    bool ok = true;
    std::string why;
    void require(bool cond, const std::string& msg) {
        if (!cond && ok) {
            ok = false;
            why = msg;
        }
    }
};

// ---------- criterion 1: admissibility ground truth ----------

bool crit1(Check& c) {
    FieldPtr k2 = NumberField::make(P({-2, 0, 1}));
    for (int d : {3, 4, 5}) {
        auto t0 = Clock::now();
        std::vector<FieldElement> diag((size_t)d + 1, FieldElement(1));
        diag.back() = -FieldElement::generator(k2);
        QuadraticForm q = QuadraticForm::diagonal(k2, std::move(diag));
        auto rep = check_admissible(q);
        c.require(rep.admissible, "sqrt2 form d=" + std::to_string(d) + " not admissible");
        c.require(isotropy_class(q) == IsotropyClass::Anisotropic,
                  "sqrt2 form d=" + std::to_string(d) + " not anisotropic");
        double dt = std::chrono::duration<double>(Clock::now() - t0).count();
        c.require(dt < 1.0, "sqrt2 form d=" + std::to_string(d) + " exceeded 1s");
    }
    auto t0 = Clock::now();
    QuadraticForm q5 = QuadraticForm::lorentz(5);
    c.require(check_admissible(q5).admissible, "rational 5-variable form not admissible");
    c.require(isotropy_class(q5) == IsotropyClass::Isotropic,
              "rational 5-variable form not isotropic");
    c.require(std::chrono::duration<double>(Clock::now() - t0).count() < 1.0,
              "rational form exceeded 1s");
    return c.ok;
}

// ---------- criterion 2: short loxodromics with infinite-order holonomy ----------

bool crit2(Check& c) {
    for (int d : {3, 4}) {
        IsometryK g = build_infinite_holonomy_example(d, tiny(3));
        c.require(is_isometry(g.matrix, g.form), "form preservation fails (exact)");
        CertifiedReal len = translation_length(g);
        c.require(len.refine_below(tiny(8)).hi < tiny(3), "length not certified below 1e-3");

        HolonomyClass h = holonomy(g);
        c.require((int)h.angles.size() == 1 && h.angles[0].multiplicity == 1,
                  "expected a single rotation angle");
        if (!h.angles.empty()) {
            CertifiedReal want = cr_acos(CertifiedReal(Rat(3, 5)));
            c.require(cr_small(h.angles[0].theta - want, 20),
                      "angle differs from arccos(3/5) beyond 1e-20");
        }
        c.require(h.trivial_count == d - 3, "wrong trivial eigenvalue count");
        c.require(!holonomy_order(h).has_value(), "holonomy order should be infinite");
    }
    return c.ok;
}

// ---------- criterion 3: arithmetic loxodromic from x^2 - 3x + 1 ----------

bool crit3(Check& c) {
    SalemCheck chk = is_salem(P({1, -3, 1}));
    c.require(chk.candidate.has_value(), "no candidate for x^2 - 3x + 1");
    if (!chk.candidate) return false;
    SalemInstance inst = construct_arithmetic_loxodromic(*chk.candidate, AngleTuple{{{1, 3}}}, 3);
    c.require(!inst.field, "expected the instance over Q");
    c.require(is_isometry(inst.g.matrix, inst.form), "g^t Q g = Q fails (exact)");
    c.require(inst.char_poly == promote_poly(P({1, -2, -1, -2, 1}), inst.field),
              "characteristic polynomial mismatch (exact)");

    ComplexLength cl = complex_length(inst.g);
    CertifiedReal want =
        cr_log((CertifiedReal(3L) + cr_sqrt(CertifiedReal(5L))) / CertifiedReal(2L));
    c.require(cr_small(cl.length - want, 10), "length differs from log((3+sqrt5)/2) beyond 1e-10");

    c.require(cl.holonomy.angles.size() == 1 && cl.holonomy.trivial_count == 0,
              "holonomy is not a single angle");
    if (!cl.holonomy.angles.empty()) {
        c.require(cl.holonomy.angles[0].two_cos_min_poly == P({1, 1}),
                  "2cos(theta) != -1: angle is not exactly 2pi/3");
        c.require(cl.holonomy.angles[0].multiplicity == 1, "angle multiplicity != 1");
    }
    c.require(holonomy_order(cl.holonomy) == std::optional<long>(3), "holonomy order != 3");

    SalemInstance l4 = lift_even_dimension(inst);
    c.require(l4.d == 4 && l4.form.dim == 5, "lift dimension wrong");
    c.require(is_isometry(l4.g.matrix, l4.form), "lifted isometry fails (exact)");
    c.require(check_admissible(l4.form).admissible, "lifted form not admissible");
    c.require(cr_small(complex_length(l4.g).length - want, 10), "lifted length changed");
    return c.ok;
}

// ---------- criterion 4: salem recognition ----------

bool crit4(Check& c) {
    SalemCheck le = is_salem(P({1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1}));
    c.require(le.kind == SalemKind::Salem, "Lehmer polynomial not recognized");
    if (le.candidate) {
        QInterval iv = qpoly_refine_root(le.candidate->poly, le.candidate->lambda_interval, tiny(8));
        c.require(iv.lo > Rat(117628, 100000) && iv.hi < Rat(117629, 100000),
                  "Lehmer number not in (1.17628, 1.17629)");
    }
    c.require(is_salem(P({-1, -1, 1})).kind == SalemKind::NotSalem, "x^2 - x - 1 not rejected");
    c.require(is_salem(P({1, -3, 1})).kind == SalemKind::SalemQuadraticVacuous,
              "x^2 - 3x + 1 not flagged as the vacuous quadratic case");
    return c.ok;
}

// ---------- criterion 5: trace form invariants on random reciprocal polynomials ----------

bool crit5(Check& c) {
    std::mt19937 rng(2026);
    FieldPtr k2 = NumberField::make(P({-2, 0, 1}));
    auto coeff = [&](const FieldPtr& k) {
        FieldElement v(Rat((long)(rng() % 11) - 5));
        if (k) v = v + FieldElement::generator(k) * FieldElement(Rat((long)(rng() % 11) - 5));
        return promote(v, k);
    };
    int done = 0;
    for (int trial = 0; done < 50 && trial < 500; ++trial) {
        FieldPtr k = (trial % 2) ? k2 : nullptr;
        int n = (trial % 4 < 2) ? 4 : 6;
        std::vector<FieldElement> co((size_t)n + 1);
        co[0] = co[(size_t)n] = promote(FieldElement(1), k);
        for (int i = 1; i <= n / 2; ++i) co[(size_t)i] = co[(size_t)(n - i)] = coeff(k);
        KPoly p(std::move(co));
        if (p.deg() != n) continue;
        if (poly_gcd(p, p.derivative()).deg() > 0) continue;  // separable draws only
        TraceForm tf = trace_form(p);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                c.require(tf.G.at(i, j) == tf.G.at(j, i), "G not symmetric (exact)");
                if (i + 1 < n && j + 1 < n)
                    c.require(tf.G.at(i, j) == tf.G.at(i + 1, j + 1), "G not Toeplitz (exact)");
            }
        c.require((tf.C.transposed() * tf.G * tf.C) == tf.G, "C^t G C != G (exact)");
        c.require(kmat_det(tf.C) == promote(FieldElement(1), k), "det C != 1 (exact)");
        ++done;
    }
    c.require(done == 50, "fewer than 50 separable reciprocal polynomials generated");
    return c.ok;
}

// ---------- criterion 6: ping-pong certificates and length spectra ----------

IsometryK boost12() {
    KMat g = KMat::identity(3);
    g.at(1, 1) = FieldElement(Rat(5, 3));
    g.at(1, 2) = FieldElement(Rat(4, 3));
    g.at(2, 1) = FieldElement(Rat(4, 3));
    g.at(2, 2) = FieldElement(Rat(5, 3));
    return IsometryK::make(QuadraticForm::lorentz(3), std::move(g));
}

SchottkyCertificate rank2_cert() {
    IsometryK g1 = boost12();
    KMat h = KMat::identity(3);
    h.at(0, 0) = FieldElement(Rat(5, 3));
    h.at(0, 2) = FieldElement(Rat(4, 3));
    h.at(2, 0) = FieldElement(Rat(4, 3));
    h.at(2, 2) = FieldElement(Rat(5, 3));
    h = h * h * h * h;
    IsometryK g2 = IsometryK::make(g1.form, h * g1.matrix * kmat_inverse(h));
    return certify_schottky({build_cyclic_example(g1), build_cyclic_example(g2)});
}

// independent enumeration oracle over conjugacy-and-inversion classes
std::vector<int> oracle_key(std::vector<int> w) {
    std::vector<int> inv(w.rbegin(), w.rend());
    for (int& x : inv) x = -x;
    std::vector<std::vector<int>> all;
    for (auto base : {w, inv})
        for (size_t k = 0; k < base.size(); ++k) {
            std::vector<int> r(base.begin() + (long)k, base.end());
            r.insert(r.end(), base.begin(), base.begin() + (long)k);
            all.push_back(std::move(r));
        }
    return *std::min_element(all.begin(), all.end());
}

void naive_words(int rank, int L, std::vector<int>& w, std::set<std::vector<int>>& out) {
    if (!w.empty()) {
        bool cyc = w.size() == 1 || w.front() != -w.back();
        for (size_t i = 0; cyc && i + 1 < w.size(); ++i)
            if (w[i] == -w[i + 1]) cyc = false;
        if (cyc) out.insert(oracle_key(w));
    }
    if ((int)w.size() == L) return;
    for (int i = 1; i <= rank; ++i)
        for (int l : {i, -i}) {
            if (!w.empty() && w.back() == -l) continue;
            w.push_back(l);
            naive_words(rank, L, w, out);
            w.pop_back();
        }
}

bool crit6(Check& c) {
    // cyclic datum built from the criterion-2 output certifies
    IsometryK g = build_infinite_holonomy_example(3, tiny(3));
    SchottkyCertificate cyc = certify_schottky({build_cyclic_example(g)});
    c.require(cyc.min_gap.refine_below(tiny(8)).lo > 0, "cyclic certificate gap not positive");

    // rank-2 instance in H^2 certifies
    SchottkyCertificate r2 = rank2_cert();
    c.require(r2.min_gap.refine_below(tiny(8)).lo > 0, "rank-2 certificate gap not positive");

    // enumeration at L = 6 matches the naive oracle
    std::set<std::vector<int>> naive;
    std::vector<int> w;
    naive_words(2, 6, w, naive);
    auto lib = canonical_reduced_words(2, 6);
    c.require(lib.size() == naive.size(), "word class counts differ at L = 6");
    for (const auto& cw : lib)
        c.require(naive.count(oracle_key(cw)) == 1, "library word class missing from oracle");

    // spectrum with a certified systole when the cutoff margin is positive
    SchottkyCertificate c1 = certify_schottky({build_cyclic_example(boost12())});
    SpectrumResult spec = spectrum_with_cutoff(c1, 3);
    c.require(spec.bound_validated, "cutoff bound not validated on the records");
    c.require(spec.certified_systole.has_value(), "systole not certified at L = 3");
    if (spec.certified_systole)
        c.require(std::abs(spec.certified_systole->approx() - std::log(3.0)) < 1e-12,
                  "wrong systole value");

    // freeness spot-check: no reduced word of length <= 8 is the identity
    std::vector<KMat> letters = {r2.data[0].g.matrix, r2.data[0].g.inverse().matrix,
                                 r2.data[1].g.matrix, r2.data[1].g.inverse().matrix};
    long checked = 0;
    std::function<void(const KMat&, int, int)> rec = [&](const KMat& prod, int last, int depth) {
        if (depth == 8 || !c.ok) return;
        for (int l = 0; l < 4; ++l) {
            if (last >= 0 && (l ^ 1) == last) continue;
            KMat next = prod * letters[l];
            c.require(!next.is_identity(), "reduced word of length <= 8 equals the identity");
            ++checked;
            rec(next, l, depth + 1);
        }
    };
    rec(KMat::identity(3), -1, 0);
    c.require(!c.ok || checked == 4 * (long)((std::pow(3, 8) - 1) / 2), "wrong word count in DFS");
    return c.ok;
}

// ---------- criterion 7: rational approximation and the angle net ----------

KMat random_skew(const QuadraticForm& q, std::mt19937& rng, long denom) {
    auto basis = skew_basis(q);
    KMat x(q.dim, q.dim);
    for (const auto& b : basis) {
        FieldElement s(Rat((long)(rng() % 5) - 2, denom));
        for (int i = 0; i < q.dim; ++i)
            for (int j = 0; j < q.dim; ++j) x.at(i, j) = x.at(i, j) + s * b.at(i, j);
    }
    return x;
}

bool crit7(Check& c) {
    std::mt19937 rng(40);
    QuadraticForm q0 = QuadraticForm::lorentz(4);  // d = 3
    int done = 0;
    while (done < 20) {
        IsometryK t;
        try {
            t = cayley(q0, random_skew(q0, rng, 7));
        } catch (const Error&) {
            continue;  // rare singular draw
        }
        RMat target = RMat::from_k_id(t.matrix);
        IsometryK a = approximate(q0, target, tiny(6));
        c.require(is_isometry(a.matrix, q0), "approximation is not an exact isometry");
        CertifiedReal resid = (RMat::from_k_id(a.matrix) - target).max_abs();
        c.require(resid.refine_below(tiny(8)).hi < tiny(6), "residual not certified below 1e-6");
        ++done;
    }

    // angle_grid(3, 0.1) is a 0.1-net of the angle segment [0, pi]
    auto grid = angle_grid(3, Rat(1, 10));
    auto cls = [](const Rat& frac) {
        HolonomyClass h;
        h.d = 3;
        h.trivial_count = 2;
        if (frac != 0) {
            HolonomyAngle a;
            Rat gg = frac > Rat(1, 2) ? 1 - frac : frac;
            a.theta = cr_pi() * CertifiedReal(2 * gg);
            h.angles.push_back(std::move(a));
            h.trivial_count = 0;
        }
        return h;
    };
    std::vector<HolonomyClass> net;
    for (const auto& t : grid) net.push_back(cls(Rat(t.entries[0].first, t.entries[0].second)));
    for (int i = 0; i <= 100; ++i) {
        HolonomyClass target = cls(Rat(i, 200));  // theta = 2 pi i / 200 sweeps [0, pi]
        double best = 1e9;
        for (const auto& n : net)
            best = std::min(best, holonomy_distance(target, n).refine_below(tiny(10)).mid().get_d());
        c.require(best <= 0.1 + 1e-9, "grid point further than 0.1 from a sweep target");
    }
    return c.ok;
}

// ---------- criterion 8: power scaling and conjugation invariance ----------

bool crit8(Check& c) {
    std::mt19937 rng(8);
    QuadraticForm q0 = QuadraticForm::lorentz(4);
    int done = 0;
    while (done < 50) {
        IsometryK g, h;
        try {
            g = cayley(q0, random_skew(q0, rng, 3));
            h = cayley(q0, random_skew(q0, rng, 5));
        } catch (const Error&) {
            continue;
        }
        if (classify(g) != IsometryClass::Loxodromic) continue;

        CertifiedReal l1 = translation_length(g);
        IsometryK gp = g;
        for (int n = 2; n <= 5; ++n) {
            gp = gp * g;
            c.require(cr_small(translation_length(gp) - CertifiedReal((long)n) * l1, 20),
                      "l(g^n) != n l(g) at 1e-20");
        }

        IsometryK conj = h * g * h.inverse();
        ComplexLength a = complex_length(g), b = complex_length(conj);
        c.require(cr_small(a.length - b.length, 20), "conjugation changed the length at 1e-20");
        c.require(holonomy_distance(a.holonomy, b.holonomy).refine_below(tiny(21)).hi < tiny(20),
                  "conjugation changed the holonomy at 1e-20");
        ++done;
    }
    return c.ok;
}

struct Criterion {
    const char* label;
    double budget_s;
    bool (*fn)(Check&);
};

}  // namespace

int main() {
    const Criterion all[] = {
        {"admissibility ground truth", 4.0, crit1},
        {"infinite-order holonomy examples", 5.0, crit2},
        {"arithmetic loxodromic from x^2-3x+1", 10.0, crit3},
        {"salem recognition", 2.0, crit4},
        {"trace form invariants (50 random reciprocals)", 60.0, crit5},
        {"ping-pong certificates and spectra", 120.0, crit6},
        {"rational approximation and angle net", 60.0, crit7},
        {"power scaling and conjugation invariance", 60.0, crit8},
    };
    int failures = 0, idx = 0;
    for (const auto& cr : all) {
        ++idx;
        Check c;
        auto t0 = Clock::now();
        bool ok = false;
        std::string err;
        try {
            ok = cr.fn(c);
        } catch (const std::exception& e) {
            err = e.what();
        }
        double dt = std::chrono::duration<double>(Clock::now() - t0).count();
        bool in_budget = dt < cr.budget_s;
        if (ok && in_budget) {
            std::printf("criterion %d (%s): PASS [%.2fs]\n", idx, cr.label, dt);
        } else {
            ++failures;
            std::string reason = !err.empty()        ? err
                                 : !c.why.empty()    ? c.why
                                 : !in_budget        ? "over time budget"
                                                     : "failed";
            std::printf("criterion %d (%s): FAIL [%.2fs] %s\n", idx, cr.label, dt, reason.c_str());
        }
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
