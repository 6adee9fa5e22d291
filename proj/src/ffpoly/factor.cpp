#include "aeq/errors.hpp"
#include "aeq/ffpoly.hpp"
#include "aeq/rng.hpp"

#include <algorithm>

namespace aeq {

namespace {

constexpr unsigned kSplitRetryBound = 64;

// c(x) = sum a_{ip} x^{ip}  ->  sum a_{ip} x^i, valid over F_p since a^p = a.
FpPoly pth_root(FpPoly const& c) {
    unsigned long const p = c.l().get_ui();
    auto const& coeffs = c.coefficients();
    std::vector<BigInt> root;
    for (std::size_t i = 0; i < coeffs.size(); i += p) root.push_back(coeffs[i]);
    return FpPoly(c.modulus(), std::move(root));
}

BigInt random_residue(Rng& rng, BigInt const& l) {
    std::size_t const words = mpz_sizeinbase(l.get_mpz_t(), 2) / 64 + 2;
    BigInt r = 0;
    for (std::size_t i = 0; i < words; ++i) {
        std::uint64_t const word = rng.next();
        BigInt w;
        mpz_import(w.get_mpz_t(), 1, 1, sizeof(word), 0, 0, &word);
        r <<= 64;
        r += w;
    }
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), l.get_mpz_t());
    return r;
}

FpPoly random_poly_below(Rng& rng, PrimeModulus const& modulus, long degree_bound) {
    std::vector<BigInt> coeffs(static_cast<std::size_t>(degree_bound));
    for (auto& c : coeffs) c = random_residue(rng, modulus.value());
    return FpPoly(modulus, std::move(coeffs));
}

}  // namespace

std::vector<FpFactor> squarefree_decomposition(FpPoly const& monic_f) {
    std::vector<FpFactor> result;
    if (monic_f.degree() < 1) return result;
    FpPoly const fprime = monic_f.derivative();
    FpPoly c = monic_f;
    if (!fprime.is_zero()) {
        c = gcd_fp(monic_f, fprime);
        FpPoly w = monic_f / c;
        unsigned i = 1;
        while (w.degree() > 0) {
            FpPoly y = gcd_fp(w, c);
            FpPoly z = w / y;
            if (z.degree() > 0) result.push_back({z.monic(), i});
            ++i;
            c = c / y;
            w = std::move(y);
        }
    }
    if (c.degree() > 0) {
        unsigned const p = static_cast<unsigned>(monic_f.l().get_ui());
        for (auto& part : squarefree_decomposition(pth_root(c).monic()))
            result.push_back({std::move(part.poly), part.multiplicity * p});
    }
    return result;
}

std::vector<std::pair<FpPoly, unsigned>> distinct_degree_factorization(FpPoly const& squarefree) {
    std::vector<std::pair<FpPoly, unsigned>> result;
    FpPoly g = squarefree.monic();
    if (g.degree() < 1) return result;
    FpPoly const x = FpPoly::x(g.modulus());
    FpPoly h = x % g;
    unsigned d = 0;
    while (g.degree() >= 2 * static_cast<long>(d + 1)) {
        ++d;
        h = powmod_fp(h, g.l(), g);
        FpPoly fac = gcd_fp(g, h - x);
        if (fac.degree() > 0) {
            g = g / fac;
            h = h % g;
            result.emplace_back(std::move(fac), d);
        }
    }
    if (g.degree() > 0) {
        unsigned const rest = static_cast<unsigned>(g.degree());
        result.emplace_back(g.monic(), rest);
    }
    return result;
}

std::vector<FpPoly> equal_degree_factorization(FpPoly const& f, unsigned d, std::uint64_t seed) {
    if (d == 0 || f.degree() < 1 || f.degree() % d != 0)
        throw PreconditionError("equal_degree_factorization: degree not a multiple of d");
    Rng rng(seed);
    BigInt const& l = f.l();
    bool const char2 = l == 2;
    BigInt exponent;
    if (!char2) {
        mpz_pow_ui(exponent.get_mpz_t(), l.get_mpz_t(), d);
        exponent = (exponent - 1) / 2;
    }
    FpPoly const one = FpPoly::constant(f.modulus(), BigInt(1));

    std::vector<FpPoly> out;
    std::vector<FpPoly> pending{f.monic()};
    while (!pending.empty()) {
        FpPoly g = std::move(pending.back());
        pending.pop_back();
        if (g.degree() == static_cast<long>(d)) {
            out.push_back(std::move(g));
            continue;
        }
        bool split = false;
        for (unsigned attempt = 0; attempt < kSplitRetryBound && !split; ++attempt) {
            FpPoly const a = random_poly_below(rng, g.modulus(), g.degree());
            if (a.degree() < 1) continue;
            FpPoly b(g.modulus());
            if (char2) {
                // Trace to F_2: a + a^2 + ... + a^(2^(d-1)) mod g.
                FpPoly t = a;
                b = a;
                for (unsigned i = 1; i < d; ++i) {
                    t = (t * t) % g;
                    b = b + t;
                }
            } else {
                b = powmod_fp(a, exponent, g) - one;
            }
            FpPoly u = gcd_fp(g, b);
            if (u.degree() > 0 && u.degree() < g.degree()) {
                pending.push_back(g / u);
                pending.push_back(std::move(u));
                split = true;
            }
        }
        if (!split)
            throw RetryExhausted("equal-degree splitting of " + g.to_string() + " over F_" + l.get_str() +
                                 " failed after 64 attempts");
    }
    std::sort(out.begin(), out.end());
    return out;
}

FpPoly FactorMultiset::product() const {
    if (factors.empty()) throw PreconditionError("empty factorization");
    FpPoly acc = FpPoly::constant(factors.front().poly.modulus(), unit);
    for (auto const& f : factors)
        for (unsigned i = 0; i < f.multiplicity; ++i) acc = acc * f.poly;
    return acc;
}

FactorMultiset factor_fp(FpPoly const& f, std::uint64_t seed) {
    if (f.degree() < 1) throw InputError("factor_fp: input must have degree >= 1");
    FactorMultiset result{f.leading(), {}};
    FpPoly const m = f.monic();
    std::uint64_t task = 0;
    for (auto const& part : squarefree_decomposition(m)) {
        for (auto const& [block, d] : distinct_degree_factorization(part.poly)) {
            for (auto& irreducible : equal_degree_factorization(block, d, derive_seed(seed, task++)))
                result.factors.push_back({std::move(irreducible), part.multiplicity});
        }
    }
    std::sort(result.factors.begin(), result.factors.end(), [](FpFactor const& a, FpFactor const& b) {
        if (a.poly != b.poly) return a.poly < b.poly;
        return a.multiplicity < b.multiplicity;
    });

    long degree_sum = 0;
    for (auto const& fac : result.factors) degree_sum += fac.poly.degree() * fac.multiplicity;
    if (degree_sum != f.degree() || !(result.product() == f))
        throw std::logic_error("factor_fp: re-multiplication check failed for " + f.to_string());
    return result;
}

std::string to_string(std::vector<DegreeMult> const& pattern) {
    std::string out;
    for (auto const& dm : pattern) {
        if (!out.empty()) out += ';';
        out += std::to_string(dm.degree);
        if (dm.multiplicity != 1) out += '^' + std::to_string(dm.multiplicity);
    }
    return out;
}

SplittingType splitting_type(IntPoly const& f, PrimeModulus const& l, std::uint64_t seed) {
    if (f.degree() < 1) throw InputError("splitting_type: polynomial must be nonconstant");
    auto reduced = reduce_mod(f, l);
    if (reduced.degree_dropped)
        throw DegreeDropError("degree of " + f.to_string() + " drops modulo " + l.value().get_str());
    auto const factors = factor_fp(reduced.poly, seed);
    SplittingType type{{}, static_cast<unsigned>(factors.factors.size())};
    for (auto const& fac : factors.factors)
        type.pattern.push_back({static_cast<unsigned>(fac.poly.degree()), fac.multiplicity});
    std::sort(type.pattern.begin(), type.pattern.end());
    return type;
}

}  // namespace aeq
