#include "aeq/ffpoly.hpp"

#include "aeq/errors.hpp"

#include <algorithm>

namespace aeq {

std::string to_string(BigInt const& n) { return n.get_str(); }

IntPoly::IntPoly(std::vector<BigInt> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coefficients) {
    coeffs_.reserve(coefficients.size());
    for (long c : coefficients) coeffs_.emplace_back(c);
    trim();
}

void IntPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt const& IntPoly::leading() const {
    if (is_zero()) throw InputError("leading coefficient of the zero polynomial");
    return coeffs_.back();
}

bool IntPoly::is_monic() const { return !is_zero() && coeffs_.back() == 1; }

BigInt IntPoly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }

IntPoly IntPoly::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<BigInt> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
    return IntPoly(std::move(d));
}

IntPoly IntPoly::shifted(BigInt const& c) const {
    // Horner in the ring Z[x]: ((a_n)(x+c) + a_{n-1})(x+c) + ...
    IntPoly const step(std::vector<BigInt>{c, BigInt(1)});
    IntPoly acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * step + IntPoly(std::vector<BigInt>{*it});
    return acc;
}

BigInt IntPoly::evaluate(BigInt const& x) const {
    BigInt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

IntPoly operator+(IntPoly const& a, IntPoly const& b) {
    std::vector<BigInt> r(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
    return IntPoly(std::move(r));
}

IntPoly operator-(IntPoly const& a, IntPoly const& b) {
    std::vector<BigInt> r(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
    return IntPoly(std::move(r));
}

IntPoly operator*(IntPoly const& a, IntPoly const& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> r(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return IntPoly(std::move(r));
}

std::string IntPoly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (long e = degree(); e >= 0; --e) {
        BigInt const& c = coeffs_[static_cast<std::size_t>(e)];
        if (c == 0) continue;
        BigInt const mag = abs(c);
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        if (e == 0) {
            out += mag.get_str();
            continue;
        }
        if (mag != 1) out += mag.get_str() + "*";
        out += "x";
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

}  // namespace aeq
