#include "doctest.h"
#include "hypsys/salem.hpp"

#include <cmath>
#include <random>

using namespace hypsys;

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

QPoly lehmer() { return P({1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1}); }

KPoly promote_poly(const QPoly& p, const FieldPtr& k) {
    std::vector<FieldElement> c;
    for (const Rat& r : p.c) c.push_back(promote(FieldElement(r), k));
    return KPoly(std::move(c));
}

}  // namespace

TEST_CASE("salem classification") {
    SalemCheck lc = is_salem(lehmer());
    CHECK(lc.kind == SalemKind::Salem);
    CHECK(lc.unit_circle_pairs == 4);
    REQUIRE(lc.candidate.has_value());
    QInterval iv = qpoly_refine_root(lc.candidate->poly, lc.candidate->lambda_interval, tiny(8));
    CHECK(iv.lo > Rat(117628, 100000));
    CHECK(iv.hi < Rat(117629, 100000));

    SalemCheck qv = is_salem(P({1, -3, 1}));
    CHECK(qv.kind == SalemKind::SalemQuadraticVacuous);
    QInterval iv2 = qpoly_refine_root(qv.candidate->poly, qv.candidate->lambda_interval, tiny(10));
    CHECK(std::abs(iv2.mid().get_d() - (3 + std::sqrt(5.0)) / 2) < 1e-9);

    CHECK(is_salem(P({-1, -1, 1})).kind == SalemKind::NotSalem);  // x^2 - x - 1
    // two real pairs off the circle
    CHECK(is_salem(P({1, -8, 17, -8, 1})).kind == SalemKind::NotSalem);
    // cyclotomic: no root above 1
    CHECK(is_salem(cyclotomic(5)).kind == SalemKind::NotSalem);
    // repeated roots
    CHECK(is_salem(P({1, -3, 1}) * P({1, -3, 1})).kind == SalemKind::NotSalem);
    // odd degree
    CHECK(is_salem(P({1, 0, 0, 1})).kind == SalemKind::NotSalem);

    CHECK_THROWS_AS(is_salem(P({1, -3, 2})), Error);                     // not monic
    QPoly half(std::vector<Rat>{Rat(1), Rat(-5, 2), Rat(1)});
    CHECK_THROWS_AS(is_salem(half), Error);  // not integral
}

TEST_CASE("block model") {
    SalemCandidate qv = *is_salem(P({1, -3, 1})).candidate;
    BlockModel bm = build_block_model(AngleTuple{{{1, 3}}}, qv, 3);
    CHECK(!bm.field);  // everything rational
    // p = (x^2+x+1)(x^2-3x+1) = x^4 - 2x^3 - x^2 - 2x + 1
    KPoly expect = promote_poly(P({1, -2, -1, -2, 1}), nullptr);
    CHECK(bm.p == expect);
    CHECK(bm.two_cosh_eta == FieldElement(3));
    REQUIRE(bm.two_cos.size() == 1);
    CHECK(bm.two_cos[0] == FieldElement(-1));

    // M preserves diag(1,1,1,-1) up to certified tolerance
    RMat j = RMat::identity(4);
    j.at(3, 3) = CertifiedReal(Rat(-1));
    CertifiedReal resid = (bm.M.transposed() * j * bm.M - j).max_abs();
    CHECK(resid.refine_below(tiny(26)).hi < tiny(25));

    // Lehmer with theta = 2 pi / 5: compositum of degree 2 and degree 5 fields
    SalemCandidate le = *is_salem(lehmer()).candidate;
    BlockModel bm2 = build_block_model(AngleTuple{{{1, 5}}}, le, 3);
    REQUIRE(bm2.field);
    CHECK(bm2.field->degree == 10);
    CHECK(bm2.p.deg() == 4);
    // 2cos(2pi/5) = (sqrt5 - 1)/2
    CHECK(std::abs(bm2.two_cos[0].embed_id().approx() - (std::sqrt(5.0) - 1) / 2) < 1e-12);
    CHECK(std::abs(bm2.two_cosh_eta.embed_id().approx() -
                   (1.17628081825992 + 1 / 1.17628081825992)) < 1e-10);

    CHECK_THROWS_AS(build_block_model(AngleTuple{{{1, 3}, {1, 5}}}, qv, 3), Error);
    CHECK_THROWS_AS(build_block_model(AngleTuple{{{1, 3}}}, qv, 4), Error);
    CHECK_THROWS_AS(build_block_model(AngleTuple{{{0, 3}}}, qv, 3), Error);
    CHECK_THROWS_AS(build_block_model(AngleTuple{{{2, 4}}}, qv, 3), Error);  // not reduced
}

TEST_CASE("trace form examples") {
    TraceForm a = trace_form(promote_poly(P({1, -3, 1}), nullptr));
    CHECK(a.G.at(0, 0) == FieldElement(2));
    CHECK(a.G.at(0, 1) == FieldElement(3));
    CHECK(a.G.at(1, 0) == FieldElement(3));
    CHECK(a.G.at(1, 1) == FieldElement(2));
    CHECK(a.C.at(0, 0) == FieldElement(0));
    CHECK(a.C.at(0, 1) == FieldElement(-1));
    CHECK(a.C.at(1, 0) == FieldElement(1));
    CHECK(a.C.at(1, 1) == FieldElement(3));
    CHECK((a.C.transposed() * a.G * a.C) == a.G);

    TraceForm b = trace_form(promote_poly(P({1, 1, 1}), nullptr));
    CHECK(b.G.at(0, 0) == FieldElement(2));
    CHECK(b.G.at(0, 1) == FieldElement(-1));
    // positive definite at the only embedding
    auto q = QuadraticForm::make(nullptr, b.G);
    CHECK(signature_at(q, 0) == std::pair<int, int>{2, 0});

    CHECK_THROWS_AS(trace_form(promote_poly(P({1, -2, 1}), nullptr)), Error);  // (x-1)^2
    CHECK_THROWS_AS(trace_form(promote_poly(P({-1, -1, 1}), nullptr)), Error);  // not reciprocal
}

TEST_CASE("trace form invariance on random reciprocal polynomials") {
    std::mt19937 rng(71);
    auto k2 = NumberField::make(P({-2, 0, 1}));
    auto coeff = [&](const FieldPtr& k) {
        FieldElement v(Rat((long)(rng() % 11) - 5));
        if (k) v = v + FieldElement::generator(k) * FieldElement(Rat((long)(rng() % 11) - 5));
        return promote(v, k);
    };
    int done = 0;
    for (int trial = 0; done < 50 && trial < 500; ++trial) {
        FieldPtr k = (trial % 2) ? k2 : nullptr;
        int n = (trial % 4 < 2) ? 4 : 6;
        std::vector<FieldElement> c(n + 1);
        c[0] = c[n] = promote(FieldElement(1), k);
        for (int i = 1; i <= n / 2; ++i) c[i] = c[n - i] = coeff(k);
        KPoly p(std::move(c));
        if (p.deg() != n) continue;
        if (poly_gcd(p, p.derivative()).deg() > 0) continue;  // skip non-separable draws
        TraceForm tf = trace_form(p);
        // exactly symmetric Toeplitz
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                CHECK(tf.G.at(i, j) == tf.G.at(j, i));
                if (i + 1 < n && j + 1 < n) CHECK(tf.G.at(i, j) == tf.G.at(i + 1, j + 1));
            }
        CHECK((tf.C.transposed() * tf.G * tf.C) == tf.G);
        CHECK(kmat_det(tf.C) == promote(FieldElement(1), k));
        ++done;
    }
    CHECK(done == 50);
}

TEST_CASE("newton power sums match companion traces") {
    // independent oracle: sum of mu^j over roots equals trace(C^j)
    for (const QPoly& qp : {P({1, -3, 1}), P({1, -2, -1, -2, 1}), lehmer()}) {
        KPoly p = promote_poly(qp, nullptr);
        TraceForm tf = trace_form(p);
        int n = p.deg();
        KMat pow = KMat::identity(n);
        for (int j = 0; j <= n; ++j) {
            FieldElement tr;
            for (int i = 0; i < n; ++i) tr = tr + pow.at(i, i);
            // G stores the power sums along its first row
            if (j < n) CHECK(tf.G.at(0, j) == tr);
            pow = pow * tf.C;
        }
    }
}

TEST_CASE("admissibilization") {
    // already admissible: signature (1,1) over Q, identity twist
    TraceForm a = trace_form(promote_poly(P({1, -3, 1}), nullptr));
    auto adm = admissibilize(a.G, a.C, nullptr, 1);
    REQUIRE(adm.twist.size() == 1);
    CHECK(adm.twist[0] == Rat(1));
    CHECK(adm.form.gram == a.G);

    // quartic desk polynomial: some twist reaches signature (3,1)
    TraceForm b = trace_form(promote_poly(P({1, -2, -1, -2, 1}), nullptr));
    auto adm2 = admissibilize(b.G, b.C, nullptr, 3);
    CHECK(signature_at(adm2.form, 0) == std::pair<int, int>{3, 1});
    CHECK((b.C.transposed() * adm2.form.gram * b.C) == adm2.form.gram);
    CHECK(check_admissible(adm2.form).admissible);

    // vacuous Salem over Q(sqrt2): every embedding fixes the coefficients, so the
    // conjugate signature stays (1,1) and no twist is admissible
    auto k2 = NumberField::make(P({-2, 0, 1}));
    TraceForm c = trace_form(promote_poly(P({1, -3, 1}), k2));
    CHECK_THROWS_AS(admissibilize(c.G, c.C, k2, 1), Error);
}

TEST_CASE("arithmetic loxodromic desk instance") {
    SalemCandidate qv = *is_salem(P({1, -3, 1})).candidate;
    SalemInstance inst = construct_arithmetic_loxodromic(qv, AngleTuple{{{1, 3}}}, 3);
    CHECK(!inst.field);
    CHECK(inst.char_poly == promote_poly(P({1, -2, -1, -2, 1}), nullptr));
    CHECK(is_isometry(inst.g.matrix, inst.form));
    CHECK(check_admissible(inst.form).admissible);

    // l = log((3+sqrt5)/2) to 1e-10, against the independent target and numerics
    ComplexLength cl = complex_length(inst.g);
    double l_expect = std::log((3 + std::sqrt(5.0)) / 2);
    CHECK(std::abs(cl.length.refine_below(tiny(14)).mid().get_d() - l_expect) < 1e-12);
    auto dl = (cl.length - inst.target.length).refine_below(tiny(31));
    CHECK(rat_abs(dl.mid()) < tiny(30));

    // holonomy is exactly {2pi/3}
    REQUIRE(cl.holonomy.angles.size() == 1);
    CHECK(cl.holonomy.angles[0].two_cos_min_poly == P({1, 1}));  // 2cos = -1
    CHECK(holonomy_order(cl.holonomy) == 3);
    CHECK(holonomy_distance(cl.holonomy, inst.target.holonomy).refine_below(tiny(20)).hi <
          tiny(19));

    // even-dimension lift
    SalemInstance l4 = lift_even_dimension(inst);
    CHECK(l4.d == 4);
    CHECK(is_isometry(l4.g.matrix, l4.form));
    CHECK(check_admissible(l4.form).admissible);
    ComplexLength cl4 = complex_length(l4.g);
    CHECK(std::abs(cl4.length.approx() - l_expect) < 1e-10);
    CHECK(cl4.holonomy.trivial_count == 1);
    CHECK(l4.target.holonomy.trivial_count == 1);

    SalemInstance l5 = lift_even_dimension(l4);
    CHECK(l5.d == 5);
    CHECK(complex_length(l5.g).holonomy.trivial_count == 2);

    // even d request goes through the lift
    SalemInstance e4 = construct_arithmetic_loxodromic(qv, AngleTuple{{{1, 3}}}, 4);
    CHECK(e4.d == 4);
    CHECK(e4.form.dim == 5);

    CHECK_THROWS_AS(construct_arithmetic_loxodromic(qv, AngleTuple{}, 5), Error);
}

TEST_CASE("lehmer polynomial as its own characteristic polynomial") {
    SalemCandidate le = *is_salem(lehmer()).candidate;
    SalemInstance inst = construct_arithmetic_loxodromic(le, AngleTuple{}, 9);
    CHECK(!inst.field);
    CHECK(inst.form.dim == 10);
    CHECK(inst.char_poly == promote_poly(lehmer(), nullptr));
    CHECK(is_isometry(inst.g.matrix, inst.form));
    CHECK(check_admissible(inst.form).admissible);

    ComplexLength cl = complex_length(inst.g);
    CHECK(std::abs(cl.length.refine_below(tiny(14)).mid().get_d() - std::log(1.176280818259917)) <
          1e-12);
    CHECK(cl.holonomy.angles.size() == 4);
    CHECK(!holonomy_order(cl.holonomy).has_value());  // Lehmer angles: infinite order
    auto dl = (cl.length - inst.target.length).refine_below(tiny(31));
    CHECK(rat_abs(dl.mid()) < tiny(30));
}

TEST_CASE("angle grid") {
    auto grid = angle_grid(3, Rat(1, 10));
    CHECK(grid.size() == 32);  // {2 pi q / 64 : q = 1..32}
    CHECK(grid.front().entries == std::vector<std::pair<long, long>>{{1, 64}});
    CHECK(grid.back().entries == std::vector<std::pair<long, long>>{{1, 2}});

    // delta-net property of the padded angle line for d = 3
    auto cls = [](std::vector<Rat> fracs, int d) {
        HolonomyClass h;
        h.d = d;
        int used = 0;
        for (const Rat& f : fracs) {
            if (f == 0) continue;
            HolonomyAngle a;
            Rat g = f > Rat(1, 2) ? 1 - f : f;
            a.theta = cr_pi() * CertifiedReal(2 * g);
            h.angles.push_back(std::move(a));
            used += 2;
        }
        h.trivial_count = d - 1 - used;
        return h;
    };
    std::vector<HolonomyClass> net;
    for (const auto& t : grid) net.push_back(cls({Rat(t.entries[0].first, t.entries[0].second)}, 3));
    for (int i = 0; i <= 100; ++i) {
        HolonomyClass target = cls({Rat(i, 200)}, 3);  // theta = 2 pi i / 200 in [0, pi]
        double best = 1e9;
        for (const auto& g : net)
            best = std::min(best, holonomy_distance(target, g).refine_below(tiny(10)).mid().get_d());
        CHECK(best <= 0.1 + 1e-9);
    }

    // huge delta: singleton
    auto coarse = angle_grid(3, Rat(10));
    CHECK(coarse.size() == 1);

    // d = 5: pairs of distinct angles
    auto g5 = angle_grid(5, Rat(157, 100));
    for (const auto& t : g5) {
        REQUIRE(t.entries.size() == 2);
        CHECK(Rat(t.entries[0].first, t.entries[0].second) !=
              Rat(t.entries[1].first, t.entries[1].second));
    }

    CHECK_THROWS_AS(angle_grid(3, Rat(0)), Error);
}
