#pragma once

#include <vector>

#include "hypsys/numfield.hpp"

namespace hypsys {

/// Dense matrix of field elements.
struct KMat {
    int rows = 0, cols = 0;
    std::vector<FieldElement> a;

    KMat() = default;
    KMat(int r, int c) : rows(r), cols(c), a((size_t)r * c) {}
    static KMat identity(int n) {
        KMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = FieldElement(1);
        return m;
    }

    FieldElement& at(int i, int j) { return a[(size_t)i * cols + j]; }
    const FieldElement& at(int i, int j) const { return a[(size_t)i * cols + j]; }

    KMat operator*(const KMat& o) const {
        KMat r(rows, o.cols);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                if (at(i, k).is_zero()) continue;
                for (int j = 0; j < o.cols; ++j) r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
            }
        return r;
    }
    KMat operator+(const KMat& o) const {
        KMat r(rows, cols);
        for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] + o.a[i];
        return r;
    }
    KMat operator-(const KMat& o) const {
        KMat r(rows, cols);
        for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] - o.a[i];
        return r;
    }
    KMat operator*(const FieldElement& s) const {
        KMat r = *this;
        for (auto& x : r.a) x = x * s;
        return r;
    }
    KMat transposed() const {
        KMat r(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
        return r;
    }
    bool operator==(const KMat& o) const {
        if (rows != o.rows || cols != o.cols) return false;
        for (size_t i = 0; i < a.size(); ++i)
            if (!(a[i] == o.a[i])) return false;
        return true;
    }
    bool is_identity() const {
        if (rows != cols) return false;
        return *this == identity(rows);
    }
};

FieldElement kmat_det(const KMat& m);
/// Inverse over the field; throws Singular if not invertible.
KMat kmat_inverse(const KMat& m);
/// Solve m x = b for a single column b; throws Singular.
std::vector<FieldElement> kmat_solve(const KMat& m, const std::vector<FieldElement>& b);
/// Characteristic polynomial det(xI - m), monic, by the Faddeev-LeVerrier recurrence.
KPoly kmat_char_poly(const KMat& m);
/// Basis of the nullspace of m (columns), over the field.
std::vector<std::vector<FieldElement>> kmat_nullspace(const KMat& m);

}  // namespace hypsys
