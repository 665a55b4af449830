#include "stokes/matrix.hpp"

#include "stokes/errors.hpp"

namespace stokes {

GMatrix gmat_identity(std::size_t m) {
    GMatrix r(m, std::vector<GaussianRational>(m));
    for (std::size_t i = 0; i < m; ++i) r[i][i] = GaussianRational(1);
    return r;
}

GMatrix gmat_mul(const GMatrix& a, const GMatrix& b) {
    std::size_t m = a.size();
    GMatrix r(m, std::vector<GaussianRational>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

GMatrix gmat_add(const GMatrix& a, const GMatrix& b) {
    std::size_t m = a.size();
    GMatrix r(m, std::vector<GaussianRational>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) r[i][j] = a[i][j] + b[i][j];
    return r;
}

GMatrix gmat_scale(const GMatrix& a, const GaussianRational& c) {
    GMatrix r = a;
    for (auto& row : r)
        for (auto& e : row) e *= c;
    return r;
}

GPoly gmat_charpoly(const GMatrix& a) {
    std::size_t m = a.size();
    GPoly c(m + 1);
    c[m] = GaussianRational(1);
    GMatrix Mk = gmat_identity(m);
    for (std::size_t k = 1; k <= m; ++k) {
        GMatrix AM = gmat_mul(a, Mk);
        GaussianRational tr;
        for (std::size_t i = 0; i < m; ++i) tr += AM[i][i];
        GaussianRational ck = -(tr / GaussianRational(Rational(static_cast<long>(k))));
        c[m - k] = ck;
        Mk = AM;
        for (std::size_t i = 0; i < m; ++i) Mk[i][i] += ck;
    }
    return c;
}

std::vector<GaussianRational> gmat_kernel_vector(GMatrix a) {
    std::size_t m = a.size();
    std::vector<std::size_t> pivot_col_of_row;
    std::size_t row = 0;
    std::vector<bool> is_pivot(m, false);
    for (std::size_t col = 0; col < m && row < m; ++col) {
        std::size_t sel = row;
        while (sel < m && a[sel][col].is_zero()) ++sel;
        if (sel == m) continue;
        std::swap(a[sel], a[row]);
        GaussianRational inv = GaussianRational(1) / a[row][col];
        for (std::size_t j = col; j < m; ++j) a[row][j] *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || a[i][col].is_zero()) continue;
            GaussianRational f = a[i][col];
            for (std::size_t j = col; j < m; ++j) a[i][j] -= f * a[row][j];
        }
        pivot_col_of_row.push_back(col);
        is_pivot[col] = true;
        ++row;
    }
    // Free column -> kernel vector.
    std::size_t free_col = m;
    for (std::size_t col = 0; col < m; ++col)
        if (!is_pivot[col]) {
            free_col = col;
            break;
        }
    if (free_col == m) throw DomainError("matrix is nonsingular; kernel is trivial");
    std::vector<GaussianRational> v(m);
    v[free_col] = GaussianRational(1);
    for (std::size_t r = 0; r < pivot_col_of_row.size(); ++r)
        v[pivot_col_of_row[r]] = -a[r][free_col];
    return v;
}

GMatrix gmat_inverse(GMatrix a) {
    std::size_t m = a.size();
    GMatrix inv = gmat_identity(m);
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t sel = col;
        while (sel < m && a[sel][col].is_zero()) ++sel;
        if (sel == m) throw DomainError("matrix is singular");
        std::swap(a[sel], a[col]);
        std::swap(inv[sel], inv[col]);
        GaussianRational f = GaussianRational(1) / a[col][col];
        for (std::size_t j = 0; j < m; ++j) {
            a[col][j] *= f;
            inv[col][j] *= f;
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (i == col || a[i][col].is_zero()) continue;
            GaussianRational g = a[i][col];
            for (std::size_t j = 0; j < m; ++j) {
                a[i][j] -= g * a[col][j];
                inv[i][j] -= g * inv[col][j];
            }
        }
    }
    return inv;
}

}  // namespace stokes
