#include "hypsys/quadform.hpp"

#include <sstream>

namespace hypsys {

QuadraticForm QuadraticForm::make(FieldPtr field, KMat gram) {
    if (gram.rows != gram.cols || gram.rows < 1)
        fail("DegenerateForm", "Gram matrix must be square and nonempty");
    for (auto& x : gram.a) x = promote(x, field);
    for (int i = 0; i < gram.rows; ++i)
        for (int j = i + 1; j < gram.cols; ++j)
            if (!(gram.at(i, j) == gram.at(j, i)))
                fail("DegenerateForm", "Gram matrix is not symmetric");
    if (kmat_det(gram).is_zero()) fail("DegenerateForm", "Gram matrix is singular");
    QuadraticForm q;
    q.field = std::move(field);
    q.dim = gram.rows;
    q.gram = std::move(gram);
    return q;
}

QuadraticForm QuadraticForm::diagonal(FieldPtr field, std::vector<FieldElement> entries) {
    int n = (int)entries.size();
    KMat g(n, n);
    for (int i = 0; i < n; ++i) g.at(i, i) = std::move(entries[i]);
    return make(std::move(field), std::move(g));
}

QuadraticForm QuadraticForm::lorentz(int dim) {
    std::vector<FieldElement> d(dim, FieldElement(1));
    d[dim - 1] = FieldElement(-1);
    return diagonal(nullptr, std::move(d));
}

int QuadraticForm::num_embeddings() const { return field ? field->num_real_embeddings() : 1; }

FieldElement QuadraticForm::pair(const std::vector<FieldElement>& u,
                                 const std::vector<FieldElement>& v) const {
    if ((int)u.size() != dim || (int)v.size() != dim)
        fail("DimensionMismatch", "vector length does not match the form");
    FieldElement s(0);
    for (int i = 0; i < dim; ++i) {
        if (u[i].is_zero()) continue;
        for (int j = 0; j < dim; ++j) {
            if (gram.at(i, j).is_zero() || v[j].is_zero()) continue;
            s = s + u[i] * gram.at(i, j) * v[j];
        }
    }
    return s;
}

std::pair<KMat, std::vector<FieldElement>> congruence_diagonalize(const QuadraticForm& Q) {
    int n = Q.dim;
    KMat A = Q.gram;
    KMat S = KMat::identity(n);

    // column operation col_i += f * col_j on A (with the matching row op) and on S
    auto colop = [&](int i, int j, const FieldElement& f) {
        for (int r = 0; r < n; ++r) A.at(r, i) = A.at(r, i) + f * A.at(r, j);
        for (int c = 0; c < n; ++c) A.at(i, c) = A.at(i, c) + f * A.at(j, c);
        for (int r = 0; r < n; ++r) S.at(r, i) = S.at(r, i) + f * S.at(r, j);
    };

    for (int i = 0; i < n; ++i) {
        if (A.at(i, i).is_zero()) {
            int j = -1;
            for (int c = i + 1; c < n; ++c)
                if (!A.at(i, c).is_zero()) {
                    j = c;
                    break;
                }
            if (j < 0) fail("DegenerateForm", "zero row encountered during diagonalization");
            colop(i, j, FieldElement(1));  // x_i := x_i + x_j makes the pivot nonzero
        }
        FieldElement inv = A.at(i, i).inverse();
        for (int j = i + 1; j < n; ++j) {
            if (A.at(i, j).is_zero()) continue;
            colop(j, i, -(A.at(i, j) * inv));
        }
    }
    std::vector<FieldElement> D(n);
    for (int i = 0; i < n; ++i) D[i] = A.at(i, i);
    return {S, D};
}

std::pair<int, int> signature_at(const QuadraticForm& Q, int e) {
    auto [S, D] = congruence_diagonalize(Q);
    (void)S;
    int pos = 0, neg = 0;
    for (const auto& d : D) {
        int s = d.sign_at(e);
        if (s > 0)
            ++pos;
        else if (s < 0)
            ++neg;
        else
            fail("DegenerateForm", "zero diagonal entry");
    }
    return {pos, neg};
}

AdmissibilityReport check_admissible(const QuadraticForm& Q) {
    AdmissibilityReport rep;
    int id = Q.field ? Q.field->identity_embedding : 0;
    for (int e = 0; e < Q.num_embeddings(); ++e)
        rep.signature_profile.per_embedding.push_back(signature_at(Q, e));
    rep.admissible = true;
    for (int e = 0; e < Q.num_embeddings(); ++e) {
        auto [pos, neg] = rep.signature_profile.per_embedding[e];
        if (e == id) {
            if (!(pos == Q.dim - 1 && neg == 1)) {
                rep.admissible = false;
                std::ostringstream os;
                os << "identity embedding has signature (" << pos << "," << neg << "), expected ("
                   << Q.dim - 1 << ",1)";
                rep.failure_reason = os.str();
            }
        } else if (neg != 0) {
            rep.admissible = false;
            std::ostringstream os;
            os << "embedding " << e << " is not positive definite";
            rep.failure_reason = os.str();
        }
    }
    rep.isotropy = isotropy_class(Q);
    return rep;
}

IsotropyClass isotropy_class(const QuadraticForm& Q) {
    int id = Q.field ? Q.field->identity_embedding : 0;
    for (int e = 0; e < Q.num_embeddings(); ++e) {
        auto [pos, neg] = signature_at(Q, e);
        bool ok = (e == id) ? (pos == Q.dim - 1 && neg == 1) : (neg == 0);
        if (!ok) return IsotropyClass::Unknown;
    }
    bool over_q = !Q.field || Q.field->degree == 1;
    if (!over_q) return IsotropyClass::Anisotropic;
    if (Q.dim >= 5) return IsotropyClass::Isotropic;
    return IsotropyClass::Unknown;
}

}  // namespace hypsys
