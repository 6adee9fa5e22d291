#include "aeq/errors.hpp"
#include "aeq/ffpoly.hpp"

namespace aeq {

BigInt bareiss_determinant(std::vector<std::vector<BigInt>> a) {
    std::size_t const n = a.size();
    if (n == 0) return 1;
    for (auto const& row : a)
        if (row.size() != n) throw PreconditionError("bareiss_determinant: matrix is not square");
    int sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && a[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(a[k], a[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                // a_ij <- (a_kk a_ij - a_ik a_kj) / a_{k-1,k-1}; division is exact.
                BigInt t = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

std::vector<std::vector<BigInt>> sylvester_matrix(IntPoly const& f, IntPoly const& g) {
    if (f.is_zero() || g.is_zero()) throw InputError("sylvester_matrix: zero polynomial");
    std::size_t const m = static_cast<std::size_t>(f.degree());
    std::size_t const n = static_cast<std::size_t>(g.degree());
    std::size_t const size = m + n;
    std::vector<std::vector<BigInt>> s(size, std::vector<BigInt>(size, BigInt(0)));
    // n shifted rows of f, then m shifted rows of g; coefficients from the top.
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t i = 0; i <= m; ++i) s[r][r + i] = f.coeff(m - i);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t i = 0; i <= n; ++i) s[n + r][r + i] = g.coeff(n - i);
    return s;
}

BigInt resultant(IntPoly const& f, IntPoly const& g) {
    if (f.degree() == 0 && g.degree() == 0) return 1;
    return bareiss_determinant(sylvester_matrix(f, g));
}

BigInt discriminant(IntPoly const& f) {
    if (f.degree() < 2) throw InputError("discriminant: degree must be at least 2");
    unsigned long const n = static_cast<unsigned long>(f.degree());
    BigInt res = resultant(f, f.derivative());
    BigInt disc;
    mpz_divexact(disc.get_mpz_t(), res.get_mpz_t(), f.leading().get_mpz_t());
    if ((n * (n - 1) / 2) % 2 == 1) disc = -disc;
    return disc;
}

}  // namespace aeq
