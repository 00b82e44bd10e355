// hypsys: exact-arithmetic toolkit for isometries of hyperbolic space over
// totally real number fields. All I/O is UTF-8 JSON; exit codes: 0 success,
// 1 input error, 2 certification failure.
#include "CLI11.hpp"
#include "hypsys/json_io.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

using namespace hypsys;

namespace {

int g_prec = 30;  // decimal digits for printed intervals

// error codes that represent a failed certification rather than bad input
const std::set<std::string> kCertFailures = {
    "NotDisjoint",       "PairingFailed",  "NoAdmissibleTwistFound",
    "NotLoxodromic",     "SpacelikeLost",  "WrongSignature",
    "DegenerateForm",    "CayleyChartMiss", "NotSalem",
    "BoundValidationFailed"};

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("MalformedInput", "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        fail("MalformedInput", std::string("JSON parse error in ") + path + ": " + e.what());
    }
}

void emit(const Json& j, const std::string& out_path) {
    std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) fail("MalformedInput", "cannot write " + out_path);
        out << text;
    }
}

QPoly parse_poly(const std::string& s) {
    // comma-separated coefficients, constant term last
    Json arr = Json::array();
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) arr.push_back(Json(tok));
    return qpoly_from_json(arr);
}

AngleTuple parse_angles(const std::string& s) {
    AngleTuple t;
    if (s.empty()) return t;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        Rat f = rat_from_json(Json(tok));
        t.entries.emplace_back(f.get_num().get_si(), f.get_den().get_si());
    }
    return t;
}

const char* class_name(IsometryClass c) {
    switch (c) {
        case IsometryClass::Identity: return "identity";
        case IsometryClass::Elliptic: return "elliptic";
        case IsometryClass::Parabolic: return "parabolic";
        default: return "loxodromic";
    }
}

Json admissibility_to_json(const AdmissibilityReport& rep) {
    Json sig = Json::array();
    for (auto [p, n] : rep.signature_profile.per_embedding) sig.push_back(Json::array({p, n}));
    Json j{{"admissible", rep.admissible},
           {"signature_profile", sig},
           {"isotropy", rep.isotropy == IsotropyClass::Anisotropic ? "anisotropic"
                        : rep.isotropy == IsotropyClass::Isotropic ? "isotropic"
                                                                   : "unknown"}};
    if (rep.failure_reason) j["failure_reason"] = *rep.failure_reason;
    return j;
}

Json holonomy_to_json(const HolonomyClass& h) {
    Json angles = Json::array();
    for (const auto& a : h.angles)
        angles.push_back(Json{{"theta", interval_to_json(a.theta, g_prec)},
                              {"multiplicity", a.multiplicity},
                              {"two_cos_min_poly", qpoly_to_json(a.two_cos_min_poly)}});
    auto order = holonomy_order(h);
    return Json{{"d", h.d},
                {"angles", angles},
                {"trivial_count", h.trivial_count},
                {"order", order ? Json(*order) : Json("infinite")}};
}

int run(int argc, char** argv) {
    CLI::App app{"exact isometries of hyperbolic space over totally real fields"};
    app.require_subcommand(1);
    app.add_option("--prec", g_prec, "decimal digits for printed intervals")->capture_default_str();

    std::string in_path, out_path, poly_str, poly2_str, angles_str, eps_str = "1/1000000",
                                                                    delta_str, normal_str;
    int dim = 3;
    long cutoff = 6;

    // ---- field ----
    auto* field = app.add_subcommand("field", "number field construction");
    field->require_subcommand(1);
    auto* field_make = field->add_subcommand("make", "build a totally real field");
    field_make->add_option("--poly", poly_str, "min poly coefficients, constant last")->required();
    auto* field_comp = field->add_subcommand("compositum", "compositum of two fields");
    field_comp->add_option("--poly1", poly_str)->required();
    field_comp->add_option("--poly2", poly2_str)->required();

    // ---- form ----
    auto* form = app.add_subcommand("form", "quadratic form certification");
    form->require_subcommand(1);
    auto* form_check = form->add_subcommand("check", "admissibility and isotropy");
    form_check->add_option("--in", in_path)->required();
    auto* form_diag = form->add_subcommand("diag", "exact congruence diagonalization");
    form_diag->add_option("--in", in_path)->required();

    // ---- geom ----
    auto* geom = app.add_subcommand("geom", "hyperplane geometry");
    geom->require_subcommand(1);
    auto* geom_rel = geom->add_subcommand("relation", "relation of two hyperplanes");
    geom_rel->add_option("--in", in_path)->required();
    auto* geom_rat = geom->add_subcommand("rationalize", "round a real normal into the field");
    geom_rat->add_option("--in", in_path)->required();
    geom_rat->add_option("--eps", eps_str, "rounding tolerance")->capture_default_str();

    // ---- iso ----
    auto* iso = app.add_subcommand("iso", "single isometries");
    iso->require_subcommand(1);
    auto* iso_classify = iso->add_subcommand("classify", "isometry type");
    iso_classify->add_option("--in", in_path)->required();
    auto* iso_length = iso->add_subcommand("length", "translation length");
    iso_length->add_option("--in", in_path)->required();
    auto* iso_hol = iso->add_subcommand("holonomy", "rotation angles and their order");
    iso_hol->add_option("--in", in_path)->required();
    auto* iso_approx = iso->add_subcommand("approximate", "k-rational approximation");
    iso_approx->add_option("--in", in_path)->required();
    iso_approx->add_option("--eps", eps_str)->capture_default_str();
    auto* iso_example =
        iso->add_subcommand("example", "short loxodromic with infinite-order holonomy");
    iso_example->alias("example-cor42");
    iso_example->add_option("-d", dim, "hyperbolic dimension")->capture_default_str();
    iso_example->add_option("--eps", eps_str, "translation length bound")->capture_default_str();

    // ---- schottky ----
    auto* sch = app.add_subcommand("schottky", "ping-pong certification and spectra");
    sch->require_subcommand(1);
    auto* sch_cert = sch->add_subcommand("certify", "certify a generating set");
    sch_cert->add_option("--in", in_path)->required();
    auto* sch_spec = sch->add_subcommand("spectrum", "word-length spectrum with cutoff");
    sch_spec->add_option("--in", in_path)->required();
    sch_spec->add_option("-L", cutoff, "word length cutoff")->capture_default_str();

    // ---- salem ----
    auto* sal = app.add_subcommand("salem", "Salem numbers and arithmetic loxodromics");
    sal->require_subcommand(1);
    auto* sal_check = sal->add_subcommand("check", "Salem classification");
    sal_check->add_option("--poly", poly_str)->required();
    auto* sal_build = sal->add_subcommand("build", "arithmetic loxodromic instance");
    sal_build->add_option("--poly", poly_str)->required();
    sal_build->add_option("--angles", angles_str, "fractions of 2*pi, comma separated");
    sal_build->add_option("-d", dim)->required();
    sal_build->add_option("--out", out_path);
    auto* sal_grid = sal->add_subcommand("grid", "angle tuples forming a delta-net");
    sal_grid->add_option("-d", dim)->required();
    sal_grid->add_option("--delta", delta_str)->required();

    CLI11_PARSE(app, argc, argv);

    if (*field_make) {
        FieldPtr k = NumberField::make(parse_poly(poly_str));
        Json emb = Json::array();
        for (int e = 0; e < k->num_real_embeddings(); ++e)
            emb.push_back(interval_to_json(k->root_value(e), g_prec));
        emit(Json{{"field", field_to_json(k)}, {"degree", k->degree}, {"embeddings", emb}},
             out_path);
    } else if (*field_comp) {
        FieldPtr k1 = NumberField::make(parse_poly(poly_str));
        FieldPtr k2 = NumberField::make(parse_poly(poly2_str));
        CompositumResult cr = compositum(k1, k2);
        emit(Json{{"field", field_to_json(cr.field)},
                  {"degree", cr.field ? cr.field->degree : 1},
                  {"gen1_image", element_to_json(cr.map1.gen_image)},
                  {"gen2_image", element_to_json(cr.map2.gen_image)}},
             out_path);
    } else if (*form_check) {
        QuadraticForm q = form_from_json(load_json(in_path));
        auto rep = check_admissible(q);
        rep.isotropy = isotropy_class(q);
        emit(admissibility_to_json(rep), out_path);
        if (!rep.admissible) return 2;
    } else if (*form_diag) {
        QuadraticForm q = form_from_json(load_json(in_path));
        auto [s, d] = congruence_diagonalize(q);
        Json diag = Json::array();
        for (const auto& x : d) diag.push_back(element_to_json(x));
        emit(Json{{"S", kmat_to_json(s)}, {"D", diag}}, out_path);
    } else if (*geom_rel) {
        Json j = load_json(in_path);
        QuadraticForm q = form_from_json(j.at("form"));
        auto plane = [&](const char* key) {
            std::vector<FieldElement> n;
            for (const auto& e : j.at(key)) n.push_back(element_from_json(e, q.field));
            return HPlane::make(q, std::move(n));
        };
        PlaneRelation rel = plane_relation(plane("normal1"), plane("normal2"));
        Json outj{{"kind", rel.kind == PlaneRelationKind::Intersecting   ? "intersecting"
                           : rel.kind == PlaneRelationKind::Asymptotic ? "asymptotic"
                                                                       : "ultraparallel"}};
        if (rel.distance) outj["distance"] = interval_to_json(*rel.distance, g_prec);
        emit(outj, out_path);
    } else if (*geom_rat) {
        Json j = load_json(in_path);
        QuadraticForm q = form_from_json(j.at("form"));
        std::vector<CertifiedReal> normal;
        for (const auto& e : j.at("normal"))
            normal.emplace_back(rat_from_decimal(e.get<std::string>()));
        HalfSpace h = rationalize_halfspace(q, normal, rat_from_decimal(eps_str));
        emit(halfspace_to_json(h), out_path);
    } else if (*iso_classify) {
        IsometryK g = isometry_from_json(load_json(in_path));
        emit(Json{{"class", class_name(classify(g))}}, out_path);
    } else if (*iso_length) {
        IsometryK g = isometry_from_json(load_json(in_path));
        emit(Json{{"length", interval_to_json(translation_length(g), g_prec)}}, out_path);
    } else if (*iso_hol) {
        IsometryK g = isometry_from_json(load_json(in_path));
        emit(holonomy_to_json(holonomy(g)), out_path);
    } else if (*iso_approx) {
        Json j = load_json(in_path);
        QuadraticForm q = form_from_json(j.at("form"));
        const Json& rows = j.at("target");
        RMat target((int)rows.size(), (int)rows.at(0).size());
        for (int r = 0; r < target.rows; ++r)
            for (int c = 0; c < target.cols; ++c)
                target.at(r, c) = CertifiedReal(rat_from_decimal(rows.at(r).at(c).get<std::string>()));
        IsometryK g = approximate(q, target, rat_from_decimal(eps_str));
        emit(isometry_to_json(g), out_path);
    } else if (*iso_example) {
        IsometryK g = build_infinite_holonomy_example(dim, rat_from_decimal(eps_str));
        Json j = isometry_to_json(g);
        j["length"] = interval_to_json(translation_length(g), g_prec);
        j["holonomy"] = holonomy_to_json(holonomy(g));
        emit(j, out_path);
    } else if (*sch_cert) {
        auto data = schottky_from_json(load_json(in_path));
        SchottkyCertificate cert = certify_schottky(std::move(data));
        Json pw = Json::array();
        for (const auto& row : cert.pairwise) {
            Json r = Json::array();
            for (const auto& rel : row)
                r.push_back(rel.distance ? interval_to_json(*rel.distance, g_prec)
                                         : Json(nullptr));
            pw.push_back(std::move(r));
        }
        emit(Json{{"certified", true},
                  {"generators", cert.data.size()},
                  {"min_gap", interval_to_json(cert.min_gap, g_prec)},
                  {"pairwise_distances", pw}},
             out_path);
    } else if (*sch_spec) {
        auto data = schottky_from_json(load_json(in_path));
        SchottkyCertificate cert = certify_schottky(std::move(data));
        SpectrumResult spec = spectrum_with_cutoff(cert, (int)cutoff);
        // records as JSON lines, then a summary object
        for (const auto& r : spec.records) {
            Json w = Json::array();
            for (int l : r.word) w.push_back(l);
            std::cout << Json{{"word", w},
                              {"length_word", r.length_word},
                              {"length", interval_to_json(r.complex_length.length, g_prec)},
                              {"primitive", r.primitive}}
                             .dump()
                      << "\n";
        }
        Json summary{{"records", spec.records.size()}, {"bound_validated", spec.bound_validated}};
        summary["certified_systole"] = spec.certified_systole
                                           ? interval_to_json(*spec.certified_systole, g_prec)
                                           : Json(nullptr);
        std::cout << summary.dump() << "\n";
        if (!spec.bound_validated) return 2;
    } else if (*sal_check) {
        SalemCheck chk = is_salem(parse_poly(poly_str));
        Json j{{"kind", chk.kind == SalemKind::Salem                    ? "salem"
                        : chk.kind == SalemKind::SalemQuadraticVacuous ? "salem-quadratic-vacuous"
                                                                       : "not-salem"},
               {"unit_circle_pairs", chk.unit_circle_pairs}};
        if (chk.candidate) {
            std::vector<FieldElement> pc;
            for (const Rat& r : chk.candidate->poly.c) pc.emplace_back(r);
            j["lambda"] = interval_to_json(
                kpoly_root_value_id(KPoly(std::move(pc)), chk.candidate->lambda_interval), g_prec);
        } else {
            j["reason"] = chk.reason;
        }
        emit(j, out_path);
        if (chk.kind == SalemKind::NotSalem) return 2;
    } else if (*sal_build) {
        SalemCheck chk = is_salem(parse_poly(poly_str));
        if (chk.kind == SalemKind::NotSalem) fail("NotSalem", chk.reason);
        SalemInstance inst =
            construct_arithmetic_loxodromic(*chk.candidate, parse_angles(angles_str), dim);
        emit(salem_instance_to_json(inst, g_prec), out_path);
    } else if (*sal_grid) {
        auto grid = angle_grid(dim, rat_from_decimal(delta_str));
        Json arr = Json::array();
        for (const auto& t : grid) {
            Json e = Json::array();
            for (auto [q, p] : t.entries)
                e.push_back(rat_to_json(Rat(Int(q), Int(p))));
            arr.push_back(std::move(e));
        }
        emit(Json{{"tuples", arr}}, out_path);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        Json j{{"error", e.code()}, {"message", e.what()}};
        std::cerr << j.dump(2) << "\n";
        return kCertFailures.count(e.code()) ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << Json{{"error", "InputError"}, {"message", e.what()}}.dump(2) << "\n";
        return 1;
    }
}
