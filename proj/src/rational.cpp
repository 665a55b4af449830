#include "stokes/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace stokes {

Rational rational_from_string(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw SyntaxError("empty rational literal", 0);
    // GMP accepts "p" and "p/q" directly.
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find('E') == std::string::npos) {
        // Strip leading zeros so GMP does not read the digits as octal.
        std::string t;
        bool at_number_start = true;
        for (std::size_t j = 0; j < s.size(); ++j) {
            char c = s[j];
            if (at_number_start && c == '0' && j + 1 < s.size() &&
                std::isdigit(static_cast<unsigned char>(s[j + 1])))
                continue;
            t += c;
            at_number_start = !std::isdigit(static_cast<unsigned char>(c));
        }
        try {
            Rational q(t);
            return q;
        } catch (const std::exception&) {
            throw SyntaxError("malformed rational literal '" + s + "'", 0);
        }
    }
    // Decimal form: mantissa [. fraction] [e exp]
    bool neg = false;
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') neg = (s[i++] == '-');
    std::string digits;
    long frac_len = 0;
    bool seen_dot = false, seen_digit = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits += c;
            seen_digit = true;
            if (seen_dot) ++frac_len;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if ((c == 'e' || c == 'E') && seen_digit) {
            break;
        } else {
            throw SyntaxError("malformed decimal literal '" + s + "'", i);
        }
    }
    long expo = 0;
    if (i < s.size()) {
        expo = std::strtol(s.c_str() + i + 1, nullptr, 10);
    }
    if (!seen_digit) throw SyntaxError("malformed decimal literal '" + s + "'", 0);
    while (digits.size() > 1 && digits.front() == '0') digits.erase(digits.begin());
    BigInt mant(digits.empty() ? "0" : digits);
    if (neg) mant = -mant;
    long ten_pow = expo - frac_len;
    Rational q(mant);
    BigInt p10 = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::abs(ten_pow)));
    if (ten_pow >= 0) q *= Rational(p10);
    else q /= Rational(p10);
    return q;
}

Rational pow_rational(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (base == 0 && e < 0) throw DomainError("0 raised to a negative power");
    Rational b = e > 0 ? base : Rational(1) / base;
    unsigned long n = static_cast<unsigned long>(e > 0 ? e : -e);
    Rational acc(1);
    while (n) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

bool rational_sqrt_exact(const Rational& q, Rational& out) {
    if (q < 0) return false;
    if (q == 0) {
        out = 0;
        return true;
    }
    BigInt n = numerator(q), d = denominator(q);
    BigInt sn = boost::multiprecision::sqrt(n);
    BigInt sd = boost::multiprecision::sqrt(d);
    if (sn * sn != n || sd * sd != d) return false;
    out = Rational(sn) / Rational(sd);
    return true;
}

}  // namespace stokes
