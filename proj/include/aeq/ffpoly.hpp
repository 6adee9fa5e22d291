#ifndef AEQ_FFPOLY_HPP_
#define AEQ_FFPOLY_HPP_

// Univariate polynomials over Z and over prime fields F_l: arithmetic,
// complete factorization over F_l, Sylvester-matrix resultants and
// discriminants over Z.

#include <gmpxx.h>

#include <compare>
#include <initializer_list>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace aeq {

using BigInt = mpz_class;

std::string to_string(BigInt const& n);

/* Dense integer polynomial, coefficient i multiplies x^i. The zero
 * polynomial has no coefficients and degree -1. */
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> coefficients);
    IntPoly(std::initializer_list<long> coefficients);

    bool is_zero() const noexcept { return coeffs_.empty(); }
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    BigInt const& leading() const;
    bool is_monic() const;
    BigInt coeff(std::size_t i) const;
    std::vector<BigInt> const& coefficients() const noexcept { return coeffs_; }

    IntPoly derivative() const;
    // f(x + c)
    IntPoly shifted(BigInt const& c) const;
    BigInt evaluate(BigInt const& x) const;

    friend IntPoly operator+(IntPoly const& a, IntPoly const& b);
    friend IntPoly operator-(IntPoly const& a, IntPoly const& b);
    friend IntPoly operator*(IntPoly const& a, IntPoly const& b);
    friend bool operator==(IntPoly const& a, IntPoly const& b) { return a.coeffs_ == b.coeffs_; }

    // Renders in the grammar accepted by parse_int_poly, e.g. "x^7 - 7*x + 3".
    std::string to_string() const;

private:
    void trim();
    std::vector<BigInt> coeffs_;
};

/* Parses `[+-] c`, `[+-] c*x^e`, `[+-] c*x`, `[+-] x^e`, `[+-] x` terms.
 * Whitespace is ignored; repeated exponents are summed. Throws ParseError
 * with the offending column. */
IntPoly parse_int_poly(std::string_view text);

bool is_probable_prime(BigInt const& n);

/* A prime l. Deterministic Miller-Rabin below 3.3e24 (first 13 prime bases),
 * 64 probabilistic rounds above. */
class PrimeModulus {
public:
    explicit PrimeModulus(BigInt l);
    explicit PrimeModulus(unsigned long l) : PrimeModulus(BigInt(l)) {}

    BigInt const& value() const noexcept { return l_; }
    friend bool operator==(PrimeModulus const& a, PrimeModulus const& b) { return a.l_ == b.l_; }

private:
    BigInt l_;
};

class FpPoly {
public:
    explicit FpPoly(PrimeModulus modulus) : mod_(std::move(modulus)) {}
    // Coefficients are reduced into [0, l).
    FpPoly(PrimeModulus modulus, std::vector<BigInt> coefficients);

    static FpPoly constant(PrimeModulus const& modulus, BigInt const& c);
    static FpPoly x(PrimeModulus const& modulus);

    PrimeModulus const& modulus() const noexcept { return mod_; }
    BigInt const& l() const noexcept { return mod_.value(); }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_one() const;
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    BigInt const& leading() const;
    BigInt coeff(std::size_t i) const;
    std::vector<BigInt> const& coefficients() const noexcept { return coeffs_; }

    FpPoly monic() const;
    FpPoly derivative() const;
    FpPoly scaled(BigInt const& c) const;

    friend FpPoly operator+(FpPoly const& a, FpPoly const& b);
    friend FpPoly operator-(FpPoly const& a, FpPoly const& b);
    friend FpPoly operator*(FpPoly const& a, FpPoly const& b);
    friend FpPoly operator/(FpPoly const& a, FpPoly const& b);
    friend FpPoly operator%(FpPoly const& a, FpPoly const& b);
    friend bool operator==(FpPoly const& a, FpPoly const& b) {
        return a.mod_ == b.mod_ && a.coeffs_ == b.coeffs_;
    }
    // Degree first, then coefficients from the top; used for canonical factor order.
    friend std::strong_ordering operator<=>(FpPoly const& a, FpPoly const& b);

    std::string to_string() const;

private:
    friend std::pair<FpPoly, FpPoly> divmod(FpPoly const& a, FpPoly const& b);
    void trim();

    PrimeModulus mod_;
    std::vector<BigInt> coeffs_;
};

// Quotient and remainder; throws on division by zero.
std::pair<FpPoly, FpPoly> divmod(FpPoly const& a, FpPoly const& b);

struct ModReduction {
    FpPoly poly;
    bool degree_dropped;
};

// Coefficient-wise reduction; `degree_dropped` is set when l divides lc(f).
ModReduction reduce_mod(IntPoly const& f, PrimeModulus const& l);

// Monic gcd; gcd(a, 0) = monic(a), gcd(0, 0) = 0.
FpPoly gcd_fp(FpPoly const& a, FpPoly const& b);

// base^e mod m by left-to-right square-and-multiply; m nonconstant.
FpPoly powmod_fp(FpPoly const& base, BigInt const& e, FpPoly const& m);

struct FpFactor {
    FpPoly poly;  // monic irreducible
    unsigned multiplicity;
};

struct FactorMultiset {
    BigInt unit;  // leading coefficient of the input
    std::vector<FpFactor> factors;  // canonical order: degree, then coefficients

    FpPoly product() const;
};

std::vector<FpFactor> squarefree_decomposition(FpPoly const& monic_f);
// Pairs (product of all irreducible factors of degree d, d) of a monic squarefree input.
std::vector<std::pair<FpPoly, unsigned>> distinct_degree_factorization(FpPoly const& squarefree);
// Splits a monic squarefree product of degree-d irreducibles; randomized,
// retry bound 64 per split.
std::vector<FpPoly> equal_degree_factorization(FpPoly const& f, unsigned d, std::uint64_t seed);

// Full factorization; the result is re-multiplied and checked before return.
FactorMultiset factor_fp(FpPoly const& f, std::uint64_t seed = 0);

struct DegreeMult {
    unsigned degree;
    unsigned multiplicity;
    friend auto operator<=>(DegreeMult const&, DegreeMult const&) = default;
};

struct SplittingType {
    std::vector<DegreeMult> pattern;  // sorted
    unsigned g;  // number of distinct irreducible factors

    friend bool operator==(SplittingType const&, SplittingType const&) = default;
};

std::string to_string(std::vector<DegreeMult> const& pattern);

// Factorization pattern of f mod l. Throws DegreeDropError if f does not
// stay monic of the same degree.
SplittingType splitting_type(IntPoly const& f, PrimeModulus const& l, std::uint64_t seed = 0);

// Fraction-free (Bareiss) determinant.
BigInt bareiss_determinant(std::vector<std::vector<BigInt>> matrix);
std::vector<std::vector<BigInt>> sylvester_matrix(IntPoly const& f, IntPoly const& g);
// det of the Sylvester matrix; both inputs nonzero.
BigInt resultant(IntPoly const& f, IntPoly const& g);
// (-1)^(n(n-1)/2) * Res(f, f') / lc(f); degree >= 2.
BigInt discriminant(IntPoly const& f);

}  // namespace aeq

#endif  // AEQ_FFPOLY_HPP_
