#include "aeq/errors.hpp"
#include "aeq/ffpoly.hpp"

#include <algorithm>

namespace aeq {

namespace {

void reduce_in_place(BigInt& c, BigInt const& l) { mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), l.get_mpz_t()); }

BigInt inverse_mod(BigInt const& a, BigInt const& l) {
    BigInt inv;
    if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), l.get_mpz_t()) == 0)
        throw PreconditionError("non-invertible residue " + a.get_str() + " mod " + l.get_str());
    return inv;
}

void require_same_modulus(FpPoly const& a, FpPoly const& b) {
    if (!(a.modulus() == b.modulus()))
        throw ModulusMismatch("polynomials over F_" + a.l().get_str() + " and F_" + b.l().get_str());
}

}  // namespace

FpPoly::FpPoly(PrimeModulus modulus, std::vector<BigInt> coefficients)
    : mod_(std::move(modulus)), coeffs_(std::move(coefficients)) {
    for (auto& c : coeffs_) reduce_in_place(c, mod_.value());
    trim();
}

FpPoly FpPoly::constant(PrimeModulus const& modulus, BigInt const& c) { return FpPoly(modulus, {c}); }

FpPoly FpPoly::x(PrimeModulus const& modulus) { return FpPoly(modulus, {BigInt(0), BigInt(1)}); }

void FpPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

bool FpPoly::is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }

BigInt const& FpPoly::leading() const {
    if (is_zero()) throw InputError("leading coefficient of the zero polynomial");
    return coeffs_.back();
}

BigInt FpPoly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }

FpPoly FpPoly::scaled(BigInt const& c) const {
    FpPoly r(mod_);
    r.coeffs_.resize(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        mpz_mul(r.coeffs_[i].get_mpz_t(), coeffs_[i].get_mpz_t(), c.get_mpz_t());
        reduce_in_place(r.coeffs_[i], l());
    }
    r.trim();
    return r;
}

FpPoly FpPoly::monic() const {
    if (is_zero() || coeffs_.back() == 1) return *this;
    return scaled(inverse_mod(coeffs_.back(), l()));
}

FpPoly FpPoly::derivative() const {
    FpPoly r(mod_);
    if (coeffs_.size() <= 1) return r;
    r.coeffs_.resize(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
        r.coeffs_[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
        reduce_in_place(r.coeffs_[i - 1], l());
    }
    r.trim();
    return r;
}

FpPoly operator+(FpPoly const& a, FpPoly const& b) {
    require_same_modulus(a, b);
    FpPoly r(a.mod_);
    r.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i) {
        r.coeffs_[i] = a.coeff(i) + b.coeff(i);
        if (r.coeffs_[i] >= a.l()) r.coeffs_[i] -= a.l();
    }
    r.trim();
    return r;
}

FpPoly operator-(FpPoly const& a, FpPoly const& b) {
    require_same_modulus(a, b);
    FpPoly r(a.mod_);
    r.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i) {
        r.coeffs_[i] = a.coeff(i) - b.coeff(i);
        if (r.coeffs_[i] < 0) r.coeffs_[i] += a.l();
    }
    r.trim();
    return r;
}

FpPoly operator*(FpPoly const& a, FpPoly const& b) {
    require_same_modulus(a, b);
    FpPoly r(a.mod_);
    if (a.is_zero() || b.is_zero()) return r;
    r.coeffs_.resize(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            mpz_addmul(r.coeffs_[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
    for (auto& c : r.coeffs_) reduce_in_place(c, a.l());
    r.trim();
    return r;
}

std::pair<FpPoly, FpPoly> divmod(FpPoly const& a, FpPoly const& b) {
    require_same_modulus(a, b);
    if (b.is_zero()) throw PreconditionError("polynomial division by zero");
    FpPoly q(a.mod_);
    FpPoly r = a;
    if (r.degree() < b.degree()) return {q, r};
    BigInt const& l = a.l();
    BigInt const lead_inv = inverse_mod(b.leading(), l);
    std::size_t const db = static_cast<std::size_t>(b.degree());
    q.coeffs_.assign(static_cast<std::size_t>(r.degree() - b.degree()) + 1, BigInt(0));
    BigInt t;
    for (long i = r.degree(); i >= b.degree(); --i) {
        std::size_t const iu = static_cast<std::size_t>(i);
        BigInt& top = r.coeffs_[iu];
        reduce_in_place(top, l);
        if (top == 0) continue;
        mpz_mul(t.get_mpz_t(), top.get_mpz_t(), lead_inv.get_mpz_t());
        reduce_in_place(t, l);
        std::size_t const shift = iu - db;
        q.coeffs_[shift] = t;
        for (std::size_t j = 0; j <= db; ++j)
            mpz_submul(r.coeffs_[shift + j].get_mpz_t(), t.get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
    r.coeffs_.resize(db);
    for (auto& c : r.coeffs_) reduce_in_place(c, l);
    r.trim();
    q.trim();
    return {q, r};
}

FpPoly operator/(FpPoly const& a, FpPoly const& b) { return divmod(a, b).first; }
FpPoly operator%(FpPoly const& a, FpPoly const& b) { return divmod(a, b).second; }

std::strong_ordering operator<=>(FpPoly const& a, FpPoly const& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    for (std::size_t i = a.coeffs_.size(); i-- > 0;) {
        int const c = cmp(a.coeffs_[i], b.coeffs_[i]);
        if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

std::string FpPoly::to_string() const {
    std::vector<BigInt> c = coeffs_;
    return IntPoly(std::move(c)).to_string();
}

ModReduction reduce_mod(IntPoly const& f, PrimeModulus const& l) {
    if (f.is_zero()) throw InputError("reduce_mod: zero polynomial");
    FpPoly r(l, f.coefficients());
    bool const dropped = r.degree() != f.degree();
    return {std::move(r), dropped};
}

FpPoly gcd_fp(FpPoly const& a, FpPoly const& b) {
    require_same_modulus(a, b);
    FpPoly x = a;
    FpPoly y = b;
    while (!y.is_zero()) {
        FpPoly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

FpPoly powmod_fp(FpPoly const& base, BigInt const& e, FpPoly const& m) {
    require_same_modulus(base, m);
    if (m.degree() < 1) throw PreconditionError("powmod_fp: constant modulus");
    if (e < 0) throw PreconditionError("powmod_fp: negative exponent");
    FpPoly const b = base % m;
    FpPoly acc = FpPoly::constant(m.modulus(), BigInt(1));
    for (std::size_t bit = mpz_sizeinbase(e.get_mpz_t(), 2); bit-- > 0;) {
        acc = (acc * acc) % m;
        if (mpz_tstbit(e.get_mpz_t(), bit)) acc = (acc * b) % m;
    }
    return acc;
}

}  // namespace aeq
