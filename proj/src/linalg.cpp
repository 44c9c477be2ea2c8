#include "tva/linalg.hpp"

namespace tva::linalg {

int rank(Mat m) {
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c] / m[r][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return static_cast<int>(r);
}

Rat det(Mat a) {
    size_t n = a.size();
    Rat d(1);
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) return Rat(0);
        if (piv != c) {
            std::swap(a[c], a[piv]);
            d = -d;
        }
        d *= a[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (a[i][c] == 0) continue;
            Rat f = a[i][c] / a[c][c];
            for (size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return d;
}

std::optional<Vec> solve_square(Mat a, Vec b) {
    size_t n = a.size();
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[c], a[piv]);
        std::swap(b[c], b[piv]);
        for (size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rat f = a[i][c] / a[c][c];
            for (size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
            b[i] -= f * b[c];
        }
    }
    Vec x(n);
    for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

std::optional<Mat> express_in_basis(const Mat& b, const Mat& c) {
    if (b.empty()) return c.empty() || c[0].empty() ? std::optional<Mat>(Mat{}) : std::nullopt;
    size_t k = b.size();
    size_t d = b[0].size();
    size_t nc = c.empty() ? 0 : c[0].size();
    // Row-reduce [b | c] and read the coefficients off the pivot rows.
    Mat m(k, Vec(d + nc));
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < d; ++j) m[i][j] = b[i][j];
        for (size_t j = 0; j < nc; ++j) m[i][d + j] = c[i][j];
    }
    size_t r = 0;
    std::vector<size_t> pivot_col;
    for (size_t col = 0; col < d && r < k; ++col) {
        size_t piv = r;
        while (piv < k && m[piv][col] == 0) ++piv;
        if (piv == k) continue;
        std::swap(m[r], m[piv]);
        Rat lead = m[r][col];
        for (size_t j = 0; j < d + nc; ++j) m[r][j] /= lead;
        for (size_t i = 0; i < k; ++i) {
            if (i == r || m[i][col] == 0) continue;
            Rat f = m[i][col];
            for (size_t j = 0; j < d + nc; ++j) m[i][j] -= f * m[r][j];
        }
        pivot_col.push_back(col);
        ++r;
    }
    if (r != d) return std::nullopt; // basis not full column rank
    // any nonzero residual row means c escapes the span
    for (size_t i = r; i < k; ++i)
        for (size_t j = 0; j < d + nc; ++j)
            if (m[i][j] != 0) return std::nullopt;
    Mat out(d, Vec(nc));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < nc; ++j) out[i][j] = m[i][d + j];
    return out;
}

} // namespace tva::linalg
