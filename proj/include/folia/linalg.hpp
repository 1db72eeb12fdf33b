// Small dense helpers bridging exact rational tables to Eigen.

#pragma once

#include "folia/rational.hpp"

#include <Eigen/Dense>

#include <vector>

namespace folia {

using QMatrix = std::vector<std::vector<Q>>;

inline QMatrix qmatrix(int r, int c) { return QMatrix(r, std::vector<Q>(c, Q(0))); }

inline Eigen::MatrixXd to_eigen(const QMatrix& a) {
    Eigen::MatrixXd m(a.size(), a.empty() ? 0 : a[0].size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) m(i, j) = a[i][j].to_double();
    return m;
}

inline QMatrix sym_part(const QMatrix& a) {
    size_t n = a.size();
    QMatrix s = qmatrix(n, n);
    const Q half(1, 2);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) s[i][j] = (a[i][j] + a[j][i]) * half;
    return s;
}

inline bool is_symmetric(const QMatrix& a) {
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (a[i][j] != a[j][i]) return false;
    return true;
}

inline double min_eig_sym(const QMatrix& a) {
    if (a.empty()) return 0.0;
    Eigen::MatrixXd m = to_eigen(sym_part(a));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    return es.eigenvalues().minCoeff();
}

inline double max_eig_sym(const QMatrix& a) {
    if (a.empty()) return 0.0;
    Eigen::MatrixXd m = to_eigen(sym_part(a));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    return es.eigenvalues().maxCoeff();
}

inline double operator_norm(const Eigen::MatrixXd& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    return svd.singularValues().maxCoeff();
}

// Exact rational kernel basis (columns) of an r x c matrix.
inline std::vector<std::vector<Q>> rational_kernel(QMatrix a, int cols) {
    int rows = static_cast<int>(a.size());
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (!a[r][col].is_zero()) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(a[rank], a[piv]);
        Q inv = Q(1) / a[rank][col];
        for (int cc = 0; cc < cols; ++cc) a[rank][cc] *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || a[r][col].is_zero()) continue;
            Q f = a[r][col];
            for (int cc = 0; cc < cols; ++cc) a[r][cc] -= f * a[rank][cc];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Q>> kernel;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Q> v(cols, Q(0));
        v[free] = Q(1);
        for (int r = 0; r < rank; ++r) v[pivot_col[r]] = -a[r][free];
        kernel.push_back(std::move(v));
    }
    return kernel;
}

} // namespace folia
