#include "hypsys/matrix.hpp"

namespace hypsys {

FieldElement kmat_det(const KMat& m) {
    if (m.rows != m.cols) fail("DimensionMismatch", "determinant of a non-square matrix");
    KMat a = m;
    int n = a.rows;
    FieldElement det(1);
    for (int i = 0; i < n; ++i) {
        int piv = i;
        while (piv < n && a.at(piv, i).is_zero()) ++piv;
        if (piv == n) return FieldElement(0);
        if (piv != i) {
            for (int j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(i, j));
            det = -det;
        }
        det = det * a.at(i, i);
        FieldElement inv = a.at(i, i).inverse();
        for (int r = i + 1; r < n; ++r) {
            if (a.at(r, i).is_zero()) continue;
            FieldElement f = a.at(r, i) * inv;
            for (int j = i; j < n; ++j) a.at(r, j) = a.at(r, j) - f * a.at(i, j);
        }
    }
    return det;
}

// Gauss-Jordan on [m | rhs]; returns the transformed rhs block.
static KMat solve_block(const KMat& m, KMat rhs) {
    if (m.rows != m.cols || m.rows != rhs.rows)
        fail("DimensionMismatch", "solve expects a square system");
    KMat a = m;
    int n = a.rows;
    for (int i = 0; i < n; ++i) {
        int piv = i;
        while (piv < n && a.at(piv, i).is_zero()) ++piv;
        if (piv == n) fail("Singular", "matrix is not invertible");
        if (piv != i)
            for (int j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(i, j));
        if (piv != i)
            for (int j = 0; j < rhs.cols; ++j) std::swap(rhs.at(piv, j), rhs.at(i, j));
        FieldElement inv = a.at(i, i).inverse();
        for (int j = i; j < n; ++j) a.at(i, j) = a.at(i, j) * inv;
        for (int j = 0; j < rhs.cols; ++j) rhs.at(i, j) = rhs.at(i, j) * inv;
        for (int r = 0; r < n; ++r) {
            if (r == i || a.at(r, i).is_zero()) continue;
            FieldElement f = a.at(r, i);
            for (int j = i; j < n; ++j) a.at(r, j) = a.at(r, j) - f * a.at(i, j);
            for (int j = 0; j < rhs.cols; ++j) rhs.at(r, j) = rhs.at(r, j) - f * rhs.at(i, j);
        }
    }
    return rhs;
}

KMat kmat_inverse(const KMat& m) { return solve_block(m, KMat::identity(m.rows)); }

std::vector<FieldElement> kmat_solve(const KMat& m, const std::vector<FieldElement>& b) {
    KMat rhs(m.rows, 1);
    for (int i = 0; i < m.rows; ++i) rhs.at(i, 0) = b[i];
    KMat x = solve_block(m, std::move(rhs));
    std::vector<FieldElement> out(m.rows);
    for (int i = 0; i < m.rows; ++i) out[i] = x.at(i, 0);
    return out;
}

KPoly kmat_char_poly(const KMat& m) {
    if (m.rows != m.cols) fail("DimensionMismatch", "characteristic polynomial of a non-square matrix");
    int n = m.rows;
    // Faddeev-LeVerrier: M_1 = A, c_{n-1} = -tr(M_1); M_{k} = A(M_{k-1} + c_{n-k+1} I)
    std::vector<FieldElement> c(n + 1);
    c[n] = FieldElement(1);
    KMat M = m;
    for (int k = 1; k <= n; ++k) {
        FieldElement tr(0);
        for (int i = 0; i < n; ++i) tr = tr + M.at(i, i);
        c[n - k] = -(tr / FieldElement((long)k));
        if (k < n) {
            for (int i = 0; i < n; ++i) M.at(i, i) = M.at(i, i) + c[n - k];
            M = m * M;
        }
    }
    return KPoly(std::move(c));
}

std::vector<std::vector<FieldElement>> kmat_nullspace(const KMat& m) {
    KMat a = m;
    int n = a.rows, cols = a.cols;
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < cols && rank < n; ++col) {
        int piv = rank;
        while (piv < n && a.at(piv, col).is_zero()) ++piv;
        if (piv == n) continue;
        if (piv != rank)
            for (int j = 0; j < cols; ++j) std::swap(a.at(piv, j), a.at(rank, j));
        FieldElement inv = a.at(rank, col).inverse();
        for (int j = 0; j < cols; ++j) a.at(rank, j) = a.at(rank, j) * inv;
        for (int r = 0; r < n; ++r) {
            if (r == rank || a.at(r, col).is_zero()) continue;
            FieldElement f = a.at(r, col);
            for (int j = 0; j < cols; ++j) a.at(r, j) = a.at(r, j) - f * a.at(rank, j);
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<FieldElement>> basis;
    for (int fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<FieldElement> v(cols, FieldElement(0));
        v[fc] = FieldElement(1);
        for (int r = 0; r < rank; ++r) v[pivot_col[r]] = -a.at(r, fc);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace hypsys
