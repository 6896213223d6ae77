#include "csd/linalg.hpp"

namespace csd {

namespace {

// Row-reduce in place; returns pivot columns. Prefers rows with few nonzeros
// so monomial-shaped inputs reduce without fill-in.
std::vector<size_t> reduce(CMat& m, size_t cols) {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < m.size(); ++col) {
        size_t sel = m.size();
        size_t best = SIZE_MAX;
        for (size_t r = row; r < m.size(); ++r) {
            if (m[r].size() <= col || m[r][col].is_zero()) continue;
            size_t nz = 0;
            for (const auto& v : m[r])
                if (!v.is_zero()) ++nz;
            if (nz < best) { best = nz; sel = r; }
        }
        if (sel == m.size()) continue;
        std::swap(m[sel], m[row]);
        Cyclo piv = m[row][col].inv();
        for (auto& v : m[row]) if (!v.is_zero()) v = v * piv;
        for (size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r].size() <= col || m[r][col].is_zero()) continue;
            Cyclo f = m[r][col];
            for (size_t c2 = 0; c2 < m[r].size(); ++c2) {
                if (m[row][c2].is_zero()) continue;
                m[r][c2] = m[r][c2] - f * m[row][c2];
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

unsigned cyclo_rank(CMat m) {
    size_t cols = 0;
    for (const auto& r : m) cols = std::max(cols, r.size());
    for (auto& r : m) r.resize(cols, Cyclo::zero());
    return static_cast<unsigned>(reduce(m, cols).size());
}

std::vector<std::vector<Cyclo>> cyclo_nullspace(CMat m, size_t cols) {
    for (auto& r : m) r.resize(cols, Cyclo::zero());
    std::vector<size_t> pivots = reduce(m, cols);
    std::vector<char> is_pivot(cols, 0);
    for (size_t c : pivots) is_pivot[c] = 1;
    std::vector<std::vector<Cyclo>> basis;
    for (size_t fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<Cyclo> v(cols, Cyclo::zero());
        v[fc] = Cyclo::one();
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][fc];
        basis.push_back(std::move(v));
    }
    return basis;
}

Cyclo cyclo_det(CMat m) {
    size_t n = m.size();
    Cyclo det = Cyclo::one();
    for (size_t col = 0; col < n; ++col) {
        size_t sel = n;
        for (size_t r = col; r < n; ++r)
            if (!m[r][col].is_zero()) { sel = r; break; }
        if (sel == n) return Cyclo::zero();
        if (sel != col) {
            std::swap(m[sel], m[col]);
            det = -det;
        }
        det = det * m[col][col];
        Cyclo piv = m[col][col].inv();
        for (size_t r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero()) continue;
            Cyclo f = m[r][col] * piv;
            for (size_t c2 = col; c2 < n; ++c2) {
                if (m[col][c2].is_zero()) continue;
                m[r][c2] = m[r][c2] - f * m[col][c2];
            }
        }
    }
    return det;
}

}  // namespace csd
