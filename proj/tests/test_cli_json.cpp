#include "doctest.h"
#include "hypsys/json_io.hpp"

#include <cmath>

using namespace hypsys;

namespace {

QPoly P(std::vector<Rat> ascending) { return QPoly(std::move(ascending)); }

Rat tiny(int k) {
    Int d(1);
    mpz_ui_pow_ui(d.get_mpz_t(), 10, k);
    return Rat(Int(1), d);
}

// |a - b| < 10^-k, certified
bool close(const CertifiedReal& a, const CertifiedReal& b, int k) {
    QInterval iv = (a - b).refine_below(tiny(k + 1));
    return iv.lo > -tiny(k) && iv.hi < tiny(k);
}

IsometryK boost_iso() {
    KMat g = KMat::identity(3);
    g.at(1, 1) = FieldElement(Rat(5, 3));
    g.at(1, 2) = FieldElement(Rat(4, 3));
    g.at(2, 1) = FieldElement(Rat(4, 3));
    g.at(2, 2) = FieldElement(Rat(5, 3));
    return IsometryK::make(QuadraticForm::lorentz(3), std::move(g));
}

}  // namespace

TEST_CASE("rationals: strings, canonicalization, decimals") {
    CHECK(rat_to_json(Rat(3)).get<std::string>() == "3");
    CHECK(rat_to_json(Rat(-7, 2)).get<std::string>() == "-7/2");
    CHECK(rat_from_json(Json(5)) == Rat(5));
    CHECK(rat_from_json(Json("4/6")) == Rat(2, 3));
    CHECK(rat_from_json(Json("-1/3")) == Rat(-1, 3));
    CHECK_THROWS_AS(rat_from_json(Json("2x")), Error);
    CHECK_THROWS_AS(rat_from_json(Json::array()), Error);

    CHECK(rat_from_decimal("3.14") == Rat(157, 50));
    CHECK(rat_from_decimal("-0.5") == Rat(-1, 2));
    CHECK(rat_from_decimal("7") == Rat(7));
    CHECK(rat_from_decimal("-7/2") == Rat(-7, 2));
    CHECK_THROWS_AS(rat_from_decimal("."), Error);
}

TEST_CASE("polynomials: constant term last, round trip") {
    QPoly f = P({Rat(-2), Rat(0), Rat(1)});  // x^2 - 2
    Json j = qpoly_to_json(f);
    REQUIRE(j.is_array());
    CHECK(j.size() == 3);
    CHECK(j[0].get<std::string>() == "1");   // leading coefficient first
    CHECK(j[2].get<std::string>() == "-2");  // constant term last
    CHECK(qpoly_from_json(j) == f);
    CHECK_THROWS_AS(qpoly_from_json(Json::array()), Error);
    CHECK_THROWS_AS(qpoly_from_json(Json("1,0,-2")), Error);
}

TEST_CASE("fields: Q is null; identity embedding survives the round trip") {
    CHECK(field_to_json(nullptr).is_null());
    CHECK(field_from_json(Json(nullptr)) == nullptr);

    FieldPtr k = NumberField::make(P({Rat(-2), Rat(0), Rat(1)}));
    Json j = field_to_json(k);
    CHECK(j.at("identity_embedding").get<int>() == 1);  // sqrt(2), the larger root
    FieldPtr k2 = field_from_json(j);
    REQUIRE(k2 != nullptr);
    CHECK(k2->same_as(*k));
    CHECK(close(k2->identity_root_value(), k->identity_root_value(), 30));

    // a non-default embedding: pick -sqrt(2)
    FieldPtr kneg = NumberField::make(P({Rat(-2), Rat(0), Rat(1)}), 0);
    FieldPtr kneg2 = field_from_json(field_to_json(kneg));
    CHECK(kneg2->identity_embedding == 0);
    CHECK(close(kneg2->identity_root_value(), kneg->identity_root_value(), 30));
    CHECK_FALSE(kneg2->same_as(*k));

    // cubic field Q(2cos(2pi/7)): three real embeddings
    auto [k7, cos7] = cos_field(7);
    FieldPtr k7b = field_from_json(field_to_json(k7));
    CHECK(k7b->same_as(*k7));
    CHECK(k7b->degree == 3);
    CHECK(close(k7b->identity_root_value(), k7->identity_root_value(), 30));

    CHECK_THROWS_AS(field_from_json(Json{{"min_poly", qpoly_to_json(P({Rat(-2), Rat(0), Rat(1)}))},
                                         {"identity_embedding", 5}}),
                    Error);
}

TEST_CASE("elements: rational string vs generator coordinates") {
    FieldPtr k = NumberField::make(P({Rat(-2), Rat(0), Rat(1)}));
    FieldElement x(k, {Rat(1, 2), Rat(3)});  // 1/2 + 3*sqrt(2)
    Json j = element_to_json(x);
    REQUIRE(j.is_object());
    CHECK(j.at("coeffs").size() == 2);
    CHECK(j.at("coeffs")[0].get<std::string>() == "1/2");
    CHECK(element_from_json(j, k) == x);

    // rationals stay plain strings even inside a field
    CHECK(element_to_json(FieldElement(Rat(-3, 4))).get<std::string>() == "-3/4");
    CHECK(element_from_json(Json("-3/4"), k) == promote(FieldElement(Rat(-3, 4)), k));

    // coordinates make no sense over Q
    CHECK_THROWS_AS(element_from_json(j, nullptr), Error);
}

TEST_CASE("forms, matrices, half-spaces round trip") {
    QuadraticForm q3 = QuadraticForm::lorentz(3);
    QuadraticForm q3b = form_from_json(form_to_json(q3));
    CHECK(q3b.dim == 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(q3b.gram.at(i, j) == q3.gram.at(i, j));

    FieldPtr k = NumberField::make(P({Rat(-2), Rat(0), Rat(1)}));
    QuadraticForm qk = QuadraticForm::diagonal(
        k, {FieldElement(1), FieldElement(1), -FieldElement::generator(k)});
    QuadraticForm qk2 = form_from_json(form_to_json(qk));
    CHECK(qk2.field->same_as(*k));
    CHECK(qk2.gram.at(2, 2).coeffs() == (-FieldElement::generator(k)).coeffs());

    HalfSpace h{HPlane::make(q3, {FieldElement(1), FieldElement(0), FieldElement(0)}), -1};
    HalfSpace h2 = halfspace_from_json(halfspace_to_json(h), q3);
    CHECK(h2.side == -1);
    CHECK(h2.plane.normal[0] == FieldElement(1));
    Json bad = halfspace_to_json(h);
    bad["side"] = 2;
    CHECK_THROWS_AS(halfspace_from_json(bad, q3), Error);
}

TEST_CASE("isometries: matrix and form survive; invalid matrices rejected") {
    IsometryK g = boost_iso();
    IsometryK g2 = isometry_from_json(isometry_to_json(g));
    CHECK(g2.char_poly == g.char_poly);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(g2.matrix.at(i, j) == g.matrix.at(i, j));
    CHECK(close(translation_length(g2), translation_length(g), 20));

    Json j = isometry_to_json(g);
    j["matrix"][0][0] = "2";  // no longer preserves the form
    CHECK_THROWS_AS(isometry_from_json(j), Error);
    CHECK_THROWS(isometry_from_json(Json{{"matrix", j["matrix"]}}));  // missing form
}

TEST_CASE("generating data round trip and re-certify") {
    std::vector<GeneratorDatum> data{build_cyclic_example(boost_iso())};
    Json j = schottky_to_json(data);
    std::vector<GeneratorDatum> back = schottky_from_json(j);
    REQUIRE(back.size() == 1);
    CHECK(back[0].A_minus.side == data[0].A_minus.side);
    CHECK(back[0].A_plus.side == data[0].A_plus.side);
    SchottkyCertificate c1 = certify_schottky(data);
    SchottkyCertificate c2 = certify_schottky(back);
    CHECK(close(c1.min_gap, c2.min_gap, 20));

    Json empty = j;
    empty["data"] = Json::array();
    CHECK_THROWS_AS(schottky_from_json(empty), Error);
}

TEST_CASE("arithmetic loxodromic instances: target re-derived on load") {
    SalemCheck chk = is_salem(P({Rat(1), Rat(-3), Rat(1)}));
    REQUIRE(chk.candidate.has_value());
    AngleTuple angles;
    angles.entries.emplace_back(1, 3);  // 2pi/3
    SalemInstance inst = construct_arithmetic_loxodromic(*chk.candidate, angles, 3);

    Json j = salem_instance_to_json(inst, 30);
    SalemInstance back = salem_instance_from_json(j);
    CHECK(back.d == 3);
    CHECK(back.char_poly == inst.char_poly);
    CHECK(back.twist == inst.twist);
    CHECK(close(back.target.length, inst.target.length, 20));
    REQUIRE(back.target.holonomy.angles.size() == 1);
    CHECK(close(back.target.holonomy.angles[0].theta, inst.target.holonomy.angles[0].theta, 20));

    Json corrupt = j;
    corrupt["char_poly"][1] = "17";  // stored char poly must match the matrix
    CHECK_THROWS_AS(salem_instance_from_json(corrupt), Error);
}

TEST_CASE("interval serialization: certified decimal enclosures") {
    FieldPtr k = NumberField::make(P({Rat(-2), Rat(0), Rat(1)}));
    Json j = interval_to_json(k->identity_root_value(), 20);
    std::string dec = j.at("decimal").get<std::string>();
    CHECK(dec.substr(0, 12) == "1.4142135623");
    Rat lo = rat_from_json(j.at("lo")), hi = rat_from_json(j.at("hi"));
    CHECK(lo < hi);
    CHECK(hi - lo < tiny(20));
    CHECK(lo * lo < Rat(2));
    CHECK(hi * hi > Rat(2));
}
