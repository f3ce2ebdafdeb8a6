#include "bellcomm/linalg.hpp"

#include <algorithm>

namespace bellcomm {

std::vector<int> rref(RatMat& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pr = r;
        while (pr < rows && m[pr][c] == 0) ++pr;
        if (pr == rows) continue;
        std::swap(m[r], m[pr]);
        Rat inv = m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] /= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

int rank(RatMat m) { return static_cast<int>(rref(m).size()); }

RatMat nullspace(const RatMat& m) {
    if (m.empty()) return {};
    RatMat red = m;
    std::vector<int> pivots = rref(red);
    const std::size_t cols = m[0].size();
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    RatMat basis;
    for (std::size_t free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        RatVec v(cols, Rat(0));
        v[free_c] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[static_cast<std::size_t>(pivots[i])] = -red[i][free_c];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RatVec> solve_square(RatMat a, RatVec b) {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
    std::vector<int> pivots = rref(a);
    if (pivots.size() != n) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i)
        if (pivots[i] != static_cast<int>(i)) return std::nullopt;  // pivot in rhs column
    RatVec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
    return x;
}

std::optional<RatVec> solve_any(const RatMat& a, const RatVec& b) {
    if (a.empty()) return RatVec{};
    const std::size_t rows = a.size(), cols = a[0].size();
    RatMat aug = a;
    for (std::size_t i = 0; i < rows; ++i) aug[i].push_back(b[i]);
    std::vector<int> pivots = rref(aug);
    for (std::size_t i = 0; i < pivots.size(); ++i)
        if (pivots[i] == static_cast<int>(cols)) return std::nullopt;  // 0 = 1 row
    RatVec x(cols, Rat(0));
    for (std::size_t i = 0; i < pivots.size(); ++i)
        x[static_cast<std::size_t>(pivots[i])] = aug[i][cols];
    return x;
}

Rat dot(const RatVec& a, const RatVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
}

void normalize_ray(RatVec& v) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    using boost::multiprecision::gcd;
    using boost::multiprecision::lcm;
    BigInt den_lcm = 1;
    for (const Rat& r : v)
        if (r != 0) den_lcm = lcm(den_lcm, denominator(r));
    BigInt num_gcd = 0;
    for (Rat& r : v) {
        if (r == 0) continue;
        r *= Rat(den_lcm);
        num_gcd = gcd(num_gcd, numerator(r));
    }
    if (num_gcd > 1)
        for (Rat& r : v) r /= Rat(num_gcd);
}

}  // namespace bellcomm
