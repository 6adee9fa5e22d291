#include "aeq/errors.hpp"
#include "aeq/ffpoly.hpp"

#include <cctype>
#include <map>

namespace aeq {

namespace {

class TermParser {
public:
    explicit TermParser(std::string_view text) : text_(text) {}

    IntPoly parse() {
        std::map<unsigned long, BigInt> terms;
        skip_ws();
        if (at_end()) throw ParseError("empty polynomial", pos_);
        bool first = true;
        while (!at_end()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                throw ParseError("expected '+' or '-' between terms", pos_);
            }
            first = false;
            auto [coeff, exponent] = term();
            terms[exponent] += sign * coeff;
            skip_ws();
        }
        if (terms.empty()) return {};
        std::vector<BigInt> coeffs(terms.rbegin()->first + 1);
        for (auto const& [e, c] : terms) coeffs[e] = c;
        return IntPoly(std::move(coeffs));
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool is_var(char c) const { return c == 'x' || c == 'X'; }

    std::pair<BigInt, unsigned long> term() {
        if (at_end()) throw ParseError("expected a term", pos_);
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            BigInt c = number();
            skip_ws();
            if (at_end() || peek() != '*') {
                if (!at_end() && is_var(peek())) throw ParseError("expected '*' between coefficient and x", pos_);
                return {c, 0};
            }
            ++pos_;
            skip_ws();
            if (at_end() || !is_var(peek())) throw ParseError("expected 'x' after '*'", pos_);
            return {c, monomial()};
        }
        if (is_var(peek())) return {BigInt(1), monomial()};
        throw ParseError(std::string("unexpected character '") + peek() + "'", pos_);
    }

    unsigned long monomial() {
        ++pos_;  // the variable
        skip_ws();
        if (at_end() || peek() != '^') return 1;
        ++pos_;
        skip_ws();
        std::size_t const start = pos_;
        BigInt e = number();
        if (!e.fits_ulong_p() || e > 1000000) throw ParseError("exponent too large", start);
        return e.get_ui();
    }

    BigInt number() {
        std::size_t const start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (pos_ == start) throw ParseError("expected a decimal number", pos_);
        return BigInt(std::string(text_.substr(start, pos_ - start)));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

IntPoly parse_int_poly(std::string_view text) { return TermParser(text).parse(); }

}  // namespace aeq
