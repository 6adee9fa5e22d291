#ifndef AEQ_TESTS_ORACLES_SMALL_FIELD_POLY_HPP_
#define AEQ_TESTS_ORACLES_SMALL_FIELD_POLY_HPP_

// Brute-force polynomial arithmetic over small prime fields, written with
// plain machine integers so it shares no code with the library.

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace oracle {

using SmallPoly = std::vector<int>;  // coefficient i multiplies x^i, trimmed

inline void trim(SmallPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int mod(long v, int q) {
    long r = v % q;
    return static_cast<int>(r < 0 ? r + q : r);
}

inline int inverse(int a, int q) {
    for (int x = 1; x < q; ++x)
        if ((a * x) % q == 1) return x;
    return 0;
}

inline SmallPoly mul(SmallPoly const& a, SmallPoly const& b, int q) {
    if (a.empty() || b.empty()) return {};
    SmallPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = mod(r[i + j] + a[i] * b[j], q);
    trim(r);
    return r;
}

// Long division; b nonzero.
inline std::pair<SmallPoly, SmallPoly> divide(SmallPoly a, SmallPoly const& b, int q) {
    SmallPoly quot;
    if (a.size() < b.size()) return {quot, a};
    quot.assign(a.size() - b.size() + 1, 0);
    int const inv = inverse(b.back(), q);
    std::size_t const shift_max = a.size() - b.size();
    for (std::size_t s = shift_max + 1; s-- > 0;) {
        int const t = mod(static_cast<long>(a[s + b.size() - 1]) * inv, q);
        quot[s] = t;
        for (std::size_t j = 0; j < b.size(); ++j) a[s + j] = mod(a[s + j] - t * b[j], q);
    }
    trim(a);
    trim(quot);
    return {quot, a};
}

inline int eval(SmallPoly const& f, int x, int q) {
    long acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = mod(acc * x + f[i], q);
    return static_cast<int>(acc);
}

// All monic polynomials of exactly the given degree.
inline std::vector<SmallPoly> monic_of_degree(int degree, int q) {
    std::vector<SmallPoly> out;
    long total = 1;
    for (int i = 0; i < degree; ++i) total *= q;
    for (long code = 0; code < total; ++code) {
        SmallPoly f(static_cast<std::size_t>(degree) + 1, 0);
        long c = code;
        for (int i = 0; i < degree; ++i) {
            f[static_cast<std::size_t>(i)] = static_cast<int>(c % q);
            c /= q;
        }
        f.back() = 1;
        out.push_back(f);
    }
    return out;
}

// Monic irreducibles of degree 1..3, found by root search (a polynomial of
// degree 2 or 3 is irreducible iff it has no root).
inline std::vector<SmallPoly> irreducibles_up_to_3(int q) {
    std::vector<SmallPoly> out;
    for (int d = 1; d <= 3; ++d) {
        for (auto const& f : monic_of_degree(d, q)) {
            bool has_root = false;
            for (int x = 0; x < q && d > 1; ++x) has_root = has_root || eval(f, x, q) == 0;
            if (!has_root) out.push_back(f);
        }
    }
    return out;
}

// Factorization of a monic polynomial of degree <= 7 by trial division:
// any reducible polynomial of degree <= 7 has a factor of degree <= 3, so
// whatever survives division by all small irreducibles is irreducible.
inline std::map<SmallPoly, unsigned> trial_division_factor(SmallPoly f, int q) {
    std::map<SmallPoly, unsigned> out;
    for (auto const& p : irreducibles_up_to_3(q)) {
        while (f.size() >= p.size()) {
            auto [quot, rem] = divide(f, p, q);
            if (!rem.empty()) break;
            ++out[p];
            f = quot;
        }
    }
    if (f.size() > 1) ++out[f];
    return out;
}

inline SmallPoly powmod_naive(SmallPoly base, long e, SmallPoly const& m, int q) {
    SmallPoly acc{1};
    base = divide(base, m, q).second;
    for (long i = 0; i < e; ++i) acc = divide(mul(acc, base, q), m, q).second;
    return acc;
}

}  // namespace oracle

#endif  // AEQ_TESTS_ORACLES_SMALL_FIELD_POLY_HPP_
