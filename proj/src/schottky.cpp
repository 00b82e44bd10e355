#include "hypsys/schottky.hpp"

#include <algorithm>
#include <map>

namespace hypsys {

namespace {

std::vector<FieldElement> apply_matrix(const KMat& m, const std::vector<FieldElement>& v) {
    std::vector<FieldElement> r(m.rows);
    for (int i = 0; i < m.rows; ++i) {
        FieldElement s;
        for (int j = 0; j < m.cols; ++j) s = s + m.at(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

bool fields_match(const FieldPtr& a, const FieldPtr& b) {
    if (!a || !b) return !a && !b;
    return a->same_as(*b);
}

std::vector<int> invert_word(const std::vector<int>& w) {
    std::vector<int> r(w.rbegin(), w.rend());
    for (int& x : r) x = -x;
    return r;
}

std::vector<int> rotate(const std::vector<int>& w, size_t k) {
    std::vector<int> r(w.begin() + (long)k, w.end());
    r.insert(r.end(), w.begin(), w.begin() + (long)k);
    return r;
}

bool is_cyclically_reduced(const std::vector<int>& w) {
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] == -w[i + 1]) return false;
    return w.size() <= 1 || w.front() != -w.back();
}

}  // namespace

std::vector<int> canonical_word(const std::vector<int>& w) {
    std::vector<int> best = w;
    for (const auto& base : {w, invert_word(w)})
        for (size_t k = 0; k < base.size(); ++k) {
            auto r = rotate(base, k);
            if (r < best) best = std::move(r);
        }
    return best;
}

std::vector<std::vector<int>> canonical_reduced_words(int rank, int L) {
    std::vector<int> letters;
    for (int i = 1; i <= rank; ++i) {
        letters.push_back(i);
        letters.push_back(-i);
    }
    std::vector<std::vector<int>> out;
    std::map<std::vector<int>, bool> seen;
    std::vector<int> w;
    auto rec = [&](auto&& self) -> void {
        if (!w.empty() && is_cyclically_reduced(w)) {
            auto c = canonical_word(w);
            if (!seen.count(c)) {
                seen.emplace(c, true);
                out.push_back(std::move(c));
            }
        }
        if ((int)w.size() == L) return;
        for (int l : letters) {
            if (!w.empty() && w.back() == -l) continue;
            w.push_back(l);
            self(self);
            w.pop_back();
        }
    };
    rec(rec);
    return out;
}

bool verify_pairing(const GeneratorDatum& datum) {
    const auto& qm = datum.A_minus.plane.form;
    const auto& qp = datum.A_plus.plane.form;
    if (qm.dim != datum.g.form.dim || qp.dim != datum.g.form.dim) return false;
    if (!(qm.gram == datum.g.form.gram) || !(qp.gram == datum.g.form.gram)) return false;

    // g * (s_minus n_minus) must equal c * (-(s_plus n_plus)) with c in k, c > 0
    // at the identity embedding.
    std::vector<FieldElement> w = apply_matrix(datum.g.matrix, datum.A_minus.plane.normal);
    const auto& np = datum.A_plus.plane.normal;
    int j = -1;
    for (int i = 0; i < (int)np.size(); ++i)
        if (!np[i].is_zero()) {
            j = i;
            break;
        }
    if (j < 0 || w[j].is_zero()) return false;
    FieldElement c = w[j] / np[j];
    for (int i = 0; i < (int)np.size(); ++i)
        if (!(w[i] == c * np[i])) return false;
    // orientation: s_minus * c = -s_plus * |c|
    return datum.A_minus.side * datum.A_plus.side * c.sign_id() == -1;
}

SchottkyCertificate certify_schottky(std::vector<GeneratorDatum> data) {
    if (data.empty()) fail("PairingFailed", "need at least one generator datum");
    const auto& q0 = data[0].g.form;
    for (size_t i = 0; i < data.size(); ++i) {
        const auto& q = data[i].g.form;
        if (q.dim != q0.dim || !fields_match(q.field, q0.field) || !(q.gram == q0.gram))
            fail("DimensionMismatch", "generator " + std::to_string(i) +
                                          " does not share the common quadratic form");
        if (!verify_pairing(data[i]))
            fail("PairingFailed", "pairing fails for generator " + std::to_string(i));
    }

    std::vector<const HalfSpace*> hs;
    for (const auto& d : data) {
        hs.push_back(&d.A_minus);
        hs.push_back(&d.A_plus);
    }
    size_t n = hs.size();
    std::vector<std::vector<PlaneRelation>> pw(
        n, std::vector<PlaneRelation>(n, PlaneRelation{PlaneRelationKind::Intersecting, {}}));
    std::optional<CertifiedReal> gap;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            auto [ok, dist] = strongly_disjoint(*hs[i], *hs[j]);
            if (!ok)
                fail("NotDisjoint", "half-spaces " + std::to_string(i) + " and " +
                                        std::to_string(j) + " are not strongly disjoint");
            pw[i][j] = pw[j][i] = PlaneRelation{PlaneRelationKind::Ultraparallel, dist};
            gap = gap ? cr_min(*gap, *dist) : *dist;
        }
    if (!gap) {
        // single half-space pair within one datum was handled above; n >= 2 always
        fail("NotDisjoint", "no pairwise distances");
    }
    return SchottkyCertificate{std::move(data), *gap, std::move(pw)};
}

GeneratorDatum build_cyclic_example(const IsometryK& g) {
    if (classify(g) != IsometryClass::Loxodromic)
        fail("NotLoxodromic", "cyclic example needs a loxodromic isometry");

    // locate the eigenvalue lambda > 1 among the roots of the characteristic polynomial
    KPoly sf = poly_squarefree_part(g.char_poly);
    bool one_is_root = [&] {
        FieldElement v;
        for (long i = 0; i <= sf.deg(); ++i) v = v + sf.coeff(i);
        return v.is_zero();
    }();
    std::optional<QInterval> lam_iv;
    for (QInterval iv : kpoly_isolate_real_roots_id(sf)) {
        if (one_is_root && iv.contains(Rat(1))) continue;  // isolating => this root is 1
        while (!(iv.lo > 1) && !(iv.hi < 1)) iv = kpoly_refine_root_id(sf, iv, iv.width() / 4);
        if (iv.lo > 1) {
            lam_iv = iv;
            break;
        }
    }
    if (!lam_iv) fail("NotLoxodromic", "no real eigenvalue above 1");

    ExtensionResult ext =
        extend_with_root(g.form.field, sf, kpoly_root_value_id(sf, *lam_iv));
    const FieldElement& lam = ext.root;
    int n = g.form.dim;

    KMat gram_k(n, n), g_k(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            gram_k.at(i, j) = ext.base_map.apply(g.form.gram.at(i, j));
            g_k.at(i, j) = ext.base_map.apply(g.matrix.at(i, j));
        }
    QuadraticForm qk = QuadraticForm::make(ext.field, gram_k);

    auto eigenspace = [&](const FieldElement& mu) {
        KMat m = g_k;
        for (int i = 0; i < n; ++i) m.at(i, i) = m.at(i, i) - mu;
        auto basis = kmat_nullspace(m);
        if (basis.empty()) fail("NotLoxodromic", "eigenvector not found over k(lambda)");
        return basis;
    };
    auto eplus_all = eigenspace(lam);
    auto eminus_all = eigenspace(lam.inverse());

    // pick eigenvectors with <E+, E-> != 0, then flip so the pairing is negative
    std::vector<FieldElement> ep, em;
    FieldElement pairing;
    for (const auto& a : eplus_all) {
        for (const auto& b : eminus_all) {
            FieldElement p = qk.pair(a, b);
            if (!p.is_zero()) {
                ep = a;
                em = b;
                pairing = p;
                break;
            }
        }
        if (!ep.empty()) break;
    }
    if (ep.empty()) fail("NotLoxodromic", "axis eigenvectors pair to zero");
    if (pairing.sign_id() > 0)
        for (auto& x : em) x = -x;

    // planes orthogonal to the axis at parameters -l/2 and +l/2:
    // n_minus = E+ - lambda E-, n_plus = g n_minus = lambda E+ - E-
    std::vector<FieldElement> nm(n), np(n);
    for (int i = 0; i < n; ++i) {
        nm[i] = ep[i] - lam * em[i];
        np[i] = lam * ep[i] - em[i];
    }

    GeneratorDatum datum{IsometryK::make(qk, g_k),
                         HalfSpace{HPlane::make(qk, std::move(nm)), -1},
                         HalfSpace{HPlane::make(qk, std::move(np)), +1}};
    if (!verify_pairing(datum)) fail("PairingFailed", "constructed datum fails its own pairing");
    return datum;
}

std::vector<WordLengthRecord> enumerate_complex_lengths(const SchottkyCertificate& cert, int L) {
    if (L < 1) fail("DimensionMismatch", "word length cutoff must be at least 1");
    int m = (int)cert.data.size();

    std::vector<KMat> gen, inv;
    for (const auto& d : cert.data) {
        gen.push_back(d.g.matrix);
        inv.push_back(d.g.inverse().matrix);
    }
    auto letter_matrix = [&](int l) -> const KMat& { return l > 0 ? gen[l - 1] : inv[-l - 1]; };

    std::vector<WordLengthRecord> out;
    for (auto& w : canonical_reduced_words(m, L)) {
        WordLengthRecord rec;
        rec.length_word = (int)w.size();
        KMat prod = letter_matrix(w[0]);
        for (size_t i = 1; i < w.size(); ++i) prod = prod * letter_matrix(w[i]);
        rec.complex_length = complex_length(IsometryK::make(cert.data[0].g.form, std::move(prod)));
        // proper power <=> the word is periodic with a proper period
        rec.primitive = true;
        for (size_t p = 1; p < w.size(); ++p) {
            if (w.size() % p != 0) continue;
            if (rotate(w, p) == w) {
                rec.primitive = false;
                break;
            }
        }
        rec.word = std::move(w);
        out.push_back(std::move(rec));
    }
    std::sort(out.begin(), out.end(), [](const WordLengthRecord& a, const WordLengthRecord& b) {
        double la = a.complex_length.length.approx(), lb = b.complex_length.length.approx();
        if (la != lb) return la < lb;
        return a.word < b.word;
    });
    return out;
}

SpectrumResult spectrum_with_cutoff(const SchottkyCertificate& cert, int L) {
    if (L < 2) fail("DimensionMismatch", "cutoff certification needs L >= 2");
    SpectrumResult res;
    res.records = enumerate_complex_lengths(cert, L);

    Rat tight(Int(1), Int(1) << 62);
    res.bound_validated = true;
    for (const auto& r : res.records) {
        // l(w) >= (|w|-1) * min_gap, checked with certified arithmetic
        CertifiedReal slack =
            r.complex_length.length - cert.min_gap * CertifiedReal(Rat(r.length_word - 1));
        if (slack.refine_below(tight).hi < 0) {
            res.bound_validated = false;
            break;
        }
    }
    if (!res.bound_validated) return res;

    // systole candidate: the minimum over enumerated words
    CertifiedReal best = res.records.front().complex_length.length;
    for (const auto& r : res.records) best = cr_min(best, r.complex_length.length);

    // words longer than L are excluded once (L-1) * min_gap certifiably exceeds best
    CertifiedReal margin = cert.min_gap * CertifiedReal(Rat(L - 1)) - best;
    long prec = 64;
    while (prec <= 4096) {
        QInterval iv = margin.interval(prec);
        if (iv.lo > 0) {
            res.certified_systole = best;
            break;
        }
        if (iv.hi < 0) break;
        prec *= 2;
    }
    return res;
}

}  // namespace hypsys
