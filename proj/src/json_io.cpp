#include "hypsys/json_io.hpp"

namespace hypsys {

namespace {

KPoly kpoly_from_q(const QPoly& p) {
    std::vector<FieldElement> c;
    c.reserve(p.c.size());
    for (const Rat& r : p.c) c.emplace_back(r);
    return KPoly(std::move(c));
}

[[noreturn]] void bad(const std::string& what) { fail("MalformedInput", what); }

}  // namespace

Json rat_to_json(const Rat& r) {
    std::string s = r.get_num().get_str();
    if (r.get_den() != 1) s += "/" + r.get_den().get_str();
    return Json(s);
}

Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat((long)j.get<long long>());
    if (!j.is_string()) bad("expected a rational as a \"p/q\" string");
    try {
        Rat r(j.get<std::string>());
        r.canonicalize();
        return r;
    } catch (const std::exception&) {
        bad("cannot parse rational \"" + j.get<std::string>() + "\"");
    }
}

Rat rat_from_decimal(const std::string& s) {
    auto dot = s.find('.');
    if (dot == std::string::npos) return rat_from_json(Json(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+") bad("cannot parse decimal \"" + s + "\"");
    Int num(digits, 10), den(1);
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Json qpoly_to_json(const QPoly& p) {
    Json a = Json::array();
    for (int i = p.deg(); i >= 0; --i) a.push_back(rat_to_json(p.coeff(i)));
    return a;
}

QPoly qpoly_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) bad("expected a nonempty coefficient array (constant term last)");
    std::vector<Rat> c;
    for (auto it = j.rbegin(); it != j.rend(); ++it) c.push_back(rat_from_json(*it));
    return QPoly(std::move(c));
}

Json field_to_json(const FieldPtr& k) {
    if (!k) return Json(nullptr);
    // index of the identity embedding among real roots in increasing order
    return Json{{"min_poly", qpoly_to_json(k->min_poly)},
                {"identity_embedding", k->identity_embedding}};
}

FieldPtr field_from_json(const Json& j) {
    if (j.is_null()) return nullptr;
    if (!j.is_object()) bad("field must be null or {min_poly, identity_embedding}");
    QPoly f = qpoly_from_json(j.at("min_poly"));
    int id = j.at("identity_embedding").get<int>();
    auto roots = qpoly_isolate_real_roots(f);
    if (id < 0 || id >= (int)roots.size()) bad("identity embedding index out of range");
    return NumberField::make_internal(f, kpoly_root_value_id(kpoly_from_q(f), roots[id]));
}

Json element_to_json(const FieldElement& x) {
    if (x.is_rational()) return rat_to_json(x.as_rational());
    Json coeffs = Json::array();
    for (const Rat& c : x.coeffs()) coeffs.push_back(rat_to_json(c));
    return Json{{"coeffs", coeffs}};
}

FieldElement element_from_json(const Json& j, const FieldPtr& k) {
    if (!j.is_object()) return promote(FieldElement(rat_from_json(j)), k);
    if (!k) bad("element has generator coordinates but the field is Q");
    const Json& coeffs = j.at("coeffs");
    FieldElement gen = FieldElement::generator(k), x(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        x = x * gen + promote(FieldElement(rat_from_json(*it)), k);
    // coeffs are stored in increasing powers; Horner above consumed them reversed
    return x;
}

Json kmat_to_json(const KMat& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows; ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(element_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

KMat kmat_from_json(const Json& j, const FieldPtr& k) {
    if (!j.is_array() || j.empty()) bad("matrix must be a nonempty array of rows");
    int rows = (int)j.size(), cols = (int)j.at(0).size();
    KMat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if ((int)j.at(i).size() != cols) bad("ragged matrix rows");
        for (int c = 0; c < cols; ++c) m.at(i, c) = element_from_json(j.at(i).at(c), k);
    }
    return m;
}

Json form_to_json(const QuadraticForm& q) {
    return Json{{"field", field_to_json(q.field)}, {"gram", kmat_to_json(q.gram)}};
}

QuadraticForm form_from_json(const Json& j) {
    if (!j.is_object()) bad("form must be {field, gram}");
    FieldPtr k = field_from_json(j.at("field"));
    return QuadraticForm::make(k, kmat_from_json(j.at("gram"), k));
}

Json halfspace_to_json(const HalfSpace& h) {
    Json normal = Json::array();
    for (const auto& x : h.plane.normal) normal.push_back(element_to_json(x));
    return Json{{"normal", normal}, {"side", h.side}};
}

HalfSpace halfspace_from_json(const Json& j, const QuadraticForm& q) {
    std::vector<FieldElement> normal;
    for (const auto& e : j.at("normal")) normal.push_back(element_from_json(e, q.field));
    int side = j.at("side").get<int>();
    if (side != 1 && side != -1) bad("half-space side must be +1 or -1");
    return HalfSpace{HPlane::make(q, std::move(normal)), side};
}

Json isometry_to_json(const IsometryK& g) {
    return Json{{"form", form_to_json(g.form)}, {"matrix", kmat_to_json(g.matrix)}};
}

IsometryK isometry_from_json(const Json& j) {
    QuadraticForm q = form_from_json(j.at("form"));
    return IsometryK::make(q, kmat_from_json(j.at("matrix"), q.field));
}

Json schottky_to_json(const std::vector<GeneratorDatum>& data) {
    if (data.empty()) bad("empty generating set");
    Json arr = Json::array();
    for (const auto& d : data)
        arr.push_back(Json{{"g", kmat_to_json(d.g.matrix)},
                           {"A_minus", halfspace_to_json(d.A_minus)},
                           {"A_plus", halfspace_to_json(d.A_plus)}});
    return Json{{"form", form_to_json(data[0].g.form)}, {"data", arr}};
}

std::vector<GeneratorDatum> schottky_from_json(const Json& j) {
    QuadraticForm q = form_from_json(j.at("form"));
    std::vector<GeneratorDatum> data;
    for (const auto& d : j.at("data"))
        data.push_back(GeneratorDatum{
            IsometryK::make(q, kmat_from_json(d.at("g"), q.field)),
            halfspace_from_json(d.at("A_minus"), q), halfspace_from_json(d.at("A_plus"), q)});
    if (data.empty()) bad("empty generating set");
    return data;
}

Json interval_to_json(const CertifiedReal& x, int digits) {
    Int scale(1);
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits + 2);
    QInterval iv = x.refine_below(Rat(Int(1), scale));
    return Json{{"decimal", cr_to_decimal(x, digits)},
                {"lo", rat_to_json(iv.lo)},
                {"hi", rat_to_json(iv.hi)}};
}

Json salem_instance_to_json(const SalemInstance& inst, int digits) {
    Json twist = Json::array();
    for (const Rat& r : inst.twist) twist.push_back(rat_to_json(r));
    Json angles = Json::array();
    for (const auto& a : inst.target.holonomy.angles)
        angles.push_back(Json{{"theta", interval_to_json(a.theta, digits)},
                              {"multiplicity", a.multiplicity}});
    Json poly = Json::array();
    for (int i = inst.char_poly.deg(); i >= 0; --i)
        poly.push_back(element_to_json(inst.char_poly.coeff(i)));
    return Json{{"d", inst.d},
                {"field", field_to_json(inst.field)},
                {"form", form_to_json(inst.form)},
                {"matrix", kmat_to_json(inst.g.matrix)},
                {"char_poly", poly},
                {"twist", twist},
                {"target", Json{{"length", interval_to_json(inst.target.length, digits)},
                                {"angles", angles},
                                {"trivial_count", inst.target.holonomy.trivial_count}}}};
}

SalemInstance salem_instance_from_json(const Json& j) {
    SalemInstance inst;
    inst.d = j.at("d").get<int>();
    inst.field = field_from_json(j.at("field"));
    inst.form = form_from_json(j.at("form"));
    inst.g = IsometryK::make(inst.form, kmat_from_json(j.at("matrix"), inst.field));
    std::vector<FieldElement> c;
    const Json& poly = j.at("char_poly");
    for (auto it = poly.rbegin(); it != poly.rend(); ++it)
        c.push_back(element_from_json(*it, inst.field));
    inst.char_poly = KPoly(std::move(c));
    if (!(inst.g.char_poly == inst.char_poly))
        fail("DegenerateForm", "stored characteristic polynomial does not match the matrix");
    for (const auto& t : j.at("twist")) inst.twist.push_back(rat_from_json(t));
    inst.target = complex_length(inst.g);  // re-derived and re-certified on load
    return inst;
}

}  // namespace hypsys
