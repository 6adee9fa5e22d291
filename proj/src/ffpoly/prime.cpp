#include "aeq/errors.hpp"
#include "aeq/ffpoly.hpp"

namespace aeq {

namespace {

// Strong probable-prime test to base a; n odd, n > a.
bool strong_probable_prime(BigInt const& n, BigInt const& a) {
    BigInt const n_minus_1 = n - 1;
    BigInt d = n_minus_1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    BigInt x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n_minus_1) return true;
    for (unsigned long r = 1; r < s; ++r) {
        x = (x * x) % n;
        if (x == n_minus_1) return true;
    }
    return false;
}

// ψ_13: every composite below this fails one of the first 13 prime bases.
BigInt const& deterministic_bound() {
    static BigInt const bound("3317044064679887385961981");
    return bound;
}

}  // namespace

bool is_probable_prime(BigInt const& n) {
    static constexpr unsigned long kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    if (n < 2) return false;
    for (unsigned long b : kBases) {
        if (n == b) return true;
        if (n % b == 0) return false;
    }
    if (n < 41 * 41) return true;
    for (unsigned long b : kBases)
        if (!strong_probable_prime(n, BigInt(b))) return false;
    if (n < deterministic_bound()) return true;
    return mpz_probab_prime_p(n.get_mpz_t(), 64) != 0;
}

PrimeModulus::PrimeModulus(BigInt l) : l_(std::move(l)) {
    if (!is_probable_prime(l_)) throw InputError("modulus " + l_.get_str() + " is not prime");
}

}  // namespace aeq
