// Python bindings: thin JSON-string interface over the exact-arithmetic core.
// Structured values cross the boundary as JSON text; the Python package wraps
// them into dicts.
#include <pybind11/pybind11.h>

#include "hypsys/json_io.hpp"

#include <sstream>

namespace py = pybind11;
using namespace hypsys;

namespace {

Json parse(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        fail("MalformedInput", std::string("JSON parse error: ") + e.what());
    }
}

QPoly poly_from_desc(const std::string& csv) {
    Json arr = Json::array();
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) arr.push_back(Json(tok));
    return qpoly_from_json(arr);
}

std::string field_make(const std::string& poly_csv, int digits) {
    FieldPtr k = NumberField::make(poly_from_desc(poly_csv));
    Json emb = Json::array();
    for (int e = 0; e < k->num_real_embeddings(); ++e)
        emb.push_back(interval_to_json(k->root_value(e), digits));
    return Json{{"field", field_to_json(k)}, {"degree", k->degree}, {"embeddings", emb}}.dump();
}

std::string compositum_of(const std::string& poly1, const std::string& poly2) {
    CompositumResult cr =
        compositum(NumberField::make(poly_from_desc(poly1)), NumberField::make(poly_from_desc(poly2)));
    return Json{{"field", field_to_json(cr.field)},
                {"degree", cr.field ? cr.field->degree : 1},
                {"gen1_image", element_to_json(cr.map1.gen_image)},
                {"gen2_image", element_to_json(cr.map2.gen_image)}}
        .dump();
}

std::string form_check(const std::string& form_json) {
    QuadraticForm q = form_from_json(parse(form_json));
    auto rep = check_admissible(q);
    Json sig = Json::array();
    for (auto [p, n] : rep.signature_profile.per_embedding) sig.push_back(Json::array({p, n}));
    Json j{{"admissible", rep.admissible},
           {"signature_profile", sig},
           {"isotropy", isotropy_class(q) == IsotropyClass::Anisotropic ? "anisotropic"
                        : isotropy_class(q) == IsotropyClass::Isotropic ? "isotropic"
                                                                        : "unknown"}};
    if (rep.failure_reason) j["failure_reason"] = *rep.failure_reason;
    return j.dump();
}

std::string form_diagonalize(const std::string& form_json) {
    QuadraticForm q = form_from_json(parse(form_json));
    auto [s, d] = congruence_diagonalize(q);
    Json diag = Json::array();
    for (const auto& x : d) diag.push_back(element_to_json(x));
    return Json{{"S", kmat_to_json(s)}, {"D", diag}}.dump();
}

std::string relation(const std::string& in_json, int digits) {
    Json j = parse(in_json);
    QuadraticForm q = form_from_json(j.at("form"));
    auto plane = [&](const char* key) {
        std::vector<FieldElement> n;
        for (const auto& e : j.at(key)) n.push_back(element_from_json(e, q.field));
        return HPlane::make(q, std::move(n));
    };
    PlaneRelation rel = plane_relation(plane("normal1"), plane("normal2"));
    Json out{{"kind", rel.kind == PlaneRelationKind::Intersecting   ? "intersecting"
                      : rel.kind == PlaneRelationKind::Asymptotic ? "asymptotic"
                                                                  : "ultraparallel"}};
    if (rel.distance) out["distance"] = interval_to_json(*rel.distance, digits);
    return out.dump();
}

std::string iso_classify(const std::string& iso_json) {
    switch (classify(isometry_from_json(parse(iso_json)))) {
        case IsometryClass::Identity: return "identity";
        case IsometryClass::Elliptic: return "elliptic";
        case IsometryClass::Parabolic: return "parabolic";
        default: return "loxodromic";
    }
}

std::string iso_length(const std::string& iso_json, int digits) {
    return interval_to_json(translation_length(isometry_from_json(parse(iso_json))), digits).dump();
}

std::string iso_holonomy(const std::string& iso_json, int digits) {
    HolonomyClass h = holonomy(isometry_from_json(parse(iso_json)));
    Json angles = Json::array();
    for (const auto& a : h.angles)
        angles.push_back(Json{{"theta", interval_to_json(a.theta, digits)},
                              {"multiplicity", a.multiplicity},
                              {"two_cos_min_poly", qpoly_to_json(a.two_cos_min_poly)}});
    auto order = holonomy_order(h);
    return Json{{"d", h.d},
                {"angles", angles},
                {"trivial_count", h.trivial_count},
                {"order", order ? Json(*order) : Json("infinite")}}
        .dump();
}

std::string iso_approximate(const std::string& in_json, const std::string& eps) {
    Json j = parse(in_json);
    QuadraticForm q = form_from_json(j.at("form"));
    const Json& rows = j.at("target");
    RMat target((int)rows.size(), (int)rows.at(0).size());
    for (int r = 0; r < target.rows; ++r)
        for (int c = 0; c < target.cols; ++c) {
            const Json& e = rows.at(r).at(c);
            Rat v = e.is_string() ? rat_from_decimal(e.get<std::string>()) : rat_from_json(e);
            target.at(r, c) = CertifiedReal(v);
        }
    return isometry_to_json(approximate(q, target, rat_from_decimal(eps))).dump();
}

std::string infinite_holonomy_example(int d, const std::string& eps, int digits) {
    IsometryK g = build_infinite_holonomy_example(d, rat_from_decimal(eps));
    Json j = isometry_to_json(g);
    j["length"] = interval_to_json(translation_length(g), digits);
    return j.dump();
}

std::string schottky_certify(const std::string& in_json, int digits) {
    SchottkyCertificate cert = certify_schottky(schottky_from_json(parse(in_json)));
    return Json{{"certified", true},
                {"generators", cert.data.size()},
                {"min_gap", interval_to_json(cert.min_gap, digits)}}
        .dump();
}

std::string schottky_spectrum(const std::string& in_json, int cutoff, int digits) {
    SchottkyCertificate cert = certify_schottky(schottky_from_json(parse(in_json)));
    SpectrumResult spec = spectrum_with_cutoff(cert, cutoff);
    Json recs = Json::array();
    for (const auto& r : spec.records) {
        Json w = Json::array();
        for (int l : r.word) w.push_back(l);
        recs.push_back(Json{{"word", w},
                            {"length_word", r.length_word},
                            {"length", interval_to_json(r.complex_length.length, digits)},
                            {"primitive", r.primitive}});
    }
    Json j{{"records", recs}, {"bound_validated", spec.bound_validated}};
    j["certified_systole"] =
        spec.certified_systole ? interval_to_json(*spec.certified_systole, digits) : Json(nullptr);
    return j.dump();
}

std::string cyclic_datum(const std::string& iso_json) {
    IsometryK g = isometry_from_json(parse(iso_json));
    return schottky_to_json({build_cyclic_example(g)}).dump();
}

std::string salem_check(const std::string& poly_csv, int digits) {
    SalemCheck chk = is_salem(poly_from_desc(poly_csv));
    Json j{{"kind", chk.kind == SalemKind::Salem                    ? "salem"
                    : chk.kind == SalemKind::SalemQuadraticVacuous ? "salem-quadratic-vacuous"
                                                                   : "not-salem"},
           {"unit_circle_pairs", chk.unit_circle_pairs}};
    if (chk.candidate) {
        std::vector<FieldElement> pc;
        for (const Rat& r : chk.candidate->poly.c) pc.emplace_back(r);
        j["lambda"] = interval_to_json(
            kpoly_root_value_id(KPoly(std::move(pc)), chk.candidate->lambda_interval), digits);
    } else {
        j["reason"] = chk.reason;
    }
    return j.dump();
}

std::string salem_build(const std::string& poly_csv, const std::string& angles_csv, int d,
                        int digits) {
    SalemCheck chk = is_salem(poly_from_desc(poly_csv));
    if (chk.kind == SalemKind::NotSalem) fail("NotSalem", chk.reason);
    AngleTuple angles;
    if (!angles_csv.empty()) {
        std::stringstream ss(angles_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            Rat f = rat_from_json(Json(tok));
            angles.entries.emplace_back(f.get_num().get_si(), f.get_den().get_si());
        }
    }
    return salem_instance_to_json(construct_arithmetic_loxodromic(*chk.candidate, angles, d),
                                  digits)
        .dump();
}

std::string grid(int d, const std::string& delta) {
    Json arr = Json::array();
    for (const auto& t : angle_grid(d, rat_from_decimal(delta))) {
        Json e = Json::array();
        for (auto [q, p] : t.entries) e.push_back(rat_to_json(Rat(Int(q), Int(p))));
        arr.push_back(std::move(e));
    }
    return Json{{"tuples", arr}}.dump();
}

// Missing keys / wrong shapes surface as structured input errors, not raw
// JSON-library exceptions.
template <class Ret, class... Args>
auto guarded(Ret (*f)(Args...)) {
    return [f](Args... args) -> Ret {
        try {
            return f(std::move(args)...);
        } catch (const Json::exception& e) {
            fail("MalformedInput", e.what());
        }
    };
}

}  // namespace

PYBIND11_MODULE(_hypsys, m) {
    m.doc() = "exact-arithmetic toolkit for hyperbolic isometries over totally real fields";

    py::register_exception<Error>(m, "HypsysError");

    m.def("field_make", guarded(&field_make), py::arg("poly"), py::arg("digits") = 30,
          "build a totally real number field from min poly coefficients (constant last)");
    m.def("compositum", guarded(&compositum_of), py::arg("poly1"), py::arg("poly2"));
    m.def("form_check", guarded(&form_check), py::arg("form_json"),
          "admissibility and isotropy of a quadratic form");
    m.def("form_diagonalize", guarded(&form_diagonalize), py::arg("form_json"));
    m.def("plane_relation", guarded(&relation), py::arg("in_json"), py::arg("digits") = 30);
    m.def("iso_classify", guarded(&iso_classify), py::arg("iso_json"));
    m.def("iso_length", guarded(&iso_length), py::arg("iso_json"), py::arg("digits") = 30);
    m.def("iso_holonomy", guarded(&iso_holonomy), py::arg("iso_json"), py::arg("digits") = 30);
    m.def("iso_approximate", guarded(&iso_approximate), py::arg("in_json"), py::arg("eps") = "1/1000000");
    m.def("infinite_holonomy_example", guarded(&infinite_holonomy_example), py::arg("d"),
          py::arg("eps") = "0.001", py::arg("digits") = 30);
    m.def("schottky_certify", guarded(&schottky_certify), py::arg("in_json"), py::arg("digits") = 30);
    m.def("schottky_spectrum", guarded(&schottky_spectrum), py::arg("in_json"), py::arg("cutoff") = 6,
          py::arg("digits") = 30);
    m.def("cyclic_datum", guarded(&cyclic_datum), py::arg("iso_json"),
          "rank-1 generating datum for a loxodromic isometry");
    m.def("salem_check", guarded(&salem_check), py::arg("poly"), py::arg("digits") = 30);
    m.def("salem_build", guarded(&salem_build), py::arg("poly"), py::arg("angles") = "", py::arg("d") = 3,
          py::arg("digits") = 30);
    m.def("angle_grid", guarded(&grid), py::arg("d"), py::arg("delta"));
}
