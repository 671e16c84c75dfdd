#include "dbe/rational.hpp"

#include "dbe/errors.hpp"

#include <cctype>

namespace dbe {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

Rational parse_rational(const std::string& text) {
    std::string s = text;
    // strip surrounding whitespace
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    if (s.empty()) throw ParseError("empty rational literal");

    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.erase(s.begin());
    }

    const auto slash = s.find('/');
    const auto dot = s.find('.');
    try {
        Rational value;
        if (slash != std::string::npos) {
            const std::string num = s.substr(0, slash);
            const std::string den = s.substr(slash + 1);
            if (!all_digits(num) || !all_digits(den))
                throw ParseError("malformed rational literal: '" + text + "'");
            BigInt d(den);
            if (d == 0) throw ParseError("zero denominator in '" + text + "'");
            value = Rational(BigInt(num), d);
        } else if (dot != std::string::npos) {
            const std::string intPart = s.substr(0, dot);
            const std::string fracPart = s.substr(dot + 1);
            if ((intPart.empty() && fracPart.empty()) ||
                (!intPart.empty() && !all_digits(intPart)) ||
                (!fracPart.empty() && !all_digits(fracPart)))
                throw ParseError("malformed decimal literal: '" + text + "'");
            BigInt scale = 1;
            for (size_t i = 0; i < fracPart.size(); ++i) scale *= 10;
            BigInt whole = intPart.empty() ? BigInt(0) : BigInt(intPart);
            BigInt frac = fracPart.empty() ? BigInt(0) : BigInt(fracPart);
            value = Rational(whole * scale + frac, scale);
        } else {
            if (!all_digits(s)) throw ParseError("malformed integer literal: '" + text + "'");
            value = Rational(BigInt(s));
        }
        return negative ? Rational(-value) : value;
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError("cannot parse rational '" + text + "': " + e.what());
    }
}

std::string format_rational(const Rational& r) {
    const BigInt num = numerator(r);
    const BigInt den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

} // namespace dbe
