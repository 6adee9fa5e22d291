#ifndef AEQ_TESTS_ORACLES_BERLEKAMP_PATTERN_HPP_
#define AEQ_TESTS_ORACLES_BERLEKAMP_PATTERN_HPP_

// Factorization pattern of a squarefree monic polynomial over F_q (q small)
// from Frobenius fixed-space dimensions: F_q[x]/(f) = prod F_{q^{e_i}}, so
//   dim ker(Frob^d - 1) = sum_i gcd(d, e_i).
// The degree multiset {e_i} is recovered by matching these dimensions against
// every partition of deg f. Uses only machine-integer linear algebra.

#include "oracles/small_field_poly.hpp"

#include <numeric>
#include <optional>

namespace oracle {

using IntMatrix = std::vector<std::vector<int>>;

inline int rank_mod(IntMatrix a, int q) {
    int rank = 0;
    std::size_t const rows = a.size();
    std::size_t const cols = rows ? a[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows); ++c) {
        std::size_t pivot = static_cast<std::size_t>(rank);
        while (pivot < rows && a[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[static_cast<std::size_t>(rank)]);
        auto& prow = a[static_cast<std::size_t>(rank)];
        int const inv = inverse(prow[c], q);
        for (auto& v : prow) v = mod(static_cast<long>(v) * inv, q);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == static_cast<std::size_t>(rank) || a[r][c] == 0) continue;
            int const t = a[r][c];
            for (std::size_t k = 0; k < cols; ++k) a[r][k] = mod(a[r][k] - static_cast<long>(t) * prow[k], q);
        }
        ++rank;
    }
    return rank;
}

// Column j = coordinates of x^(j q) mod f.
inline IntMatrix frobenius_matrix(SmallPoly const& f, int q) {
    std::size_t const n = f.size() - 1;
    IntMatrix m(n, std::vector<int>(n, 0));
    SmallPoly xq = powmod_naive({0, 1}, q, f, q);
    SmallPoly cur{1};
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < cur.size(); ++i) m[i][j] = cur[i];
        cur = divide(mul(cur, xq, q), f, q).second;
    }
    return m;
}

inline IntMatrix mat_mul(IntMatrix const& a, IntMatrix const& b, int q) {
    std::size_t const n = a.size();
    IntMatrix c(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) c[i][j] = mod(c[i][j] + static_cast<long>(a[i][k]) * b[k][j], q);
    return c;
}

inline void partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions(n - p, p, cur, out);
        cur.pop_back();
    }
}

// Sorted ascending degree list, or nullopt if the dimension data is ambiguous.
inline std::optional<std::vector<int>> berlekamp_pattern(SmallPoly const& f, int q) {
    int const n = static_cast<int>(f.size()) - 1;
    IntMatrix const frob = frobenius_matrix(f, q);
    std::vector<int> dims;
    IntMatrix power = frob;
    for (int d = 1; d <= n; ++d) {
        IntMatrix shifted = power;
        for (int i = 0; i < n; ++i) shifted[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
            mod(shifted[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] - 1, q);
        dims.push_back(n - rank_mod(shifted, q));
        power = mat_mul(power, frob, q);
    }
    std::vector<std::vector<int>> all;
    std::vector<int> cur;
    partitions(n, n, cur, all);
    std::optional<std::vector<int>> match;
    for (auto const& part : all) {
        bool ok = true;
        for (int d = 1; d <= n && ok; ++d) {
            int s = 0;
            for (int e : part) s += std::gcd(d, e);
            ok = s == dims[static_cast<std::size_t>(d - 1)];
        }
        if (!ok) continue;
        if (match) return std::nullopt;
        match = std::vector<int>(part.rbegin(), part.rend());
    }
    return match;
}

}  // namespace oracle

#endif  // AEQ_TESTS_ORACLES_BERLEKAMP_PATTERN_HPP_
