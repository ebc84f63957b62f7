#include "hypermatch/numeric.hpp"

namespace hypermatch {

Rational parse_rational(const std::string& text) {
    if (text.empty())
        fail(errc::domain_error, "empty rational literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Rational q;
        if (q.set_str(text, 10) != 0)
            fail(errc::domain_error, "bad rational literal '" + text + "'");
        if (q.get_den() == 0)
            fail(errc::domain_error, "zero denominator in '" + text + "'");
        q.canonicalize();
        return q;
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        std::size_t frac = text.size() - dot - 1;
        try {
            BigInt num(digits);
            BigInt den = int_pow(BigInt(10), static_cast<unsigned long>(frac));
            Rational q(num, den);
            q.canonicalize();
            return q;
        } catch (const std::invalid_argument&) {
            fail(errc::domain_error, "bad decimal literal '" + text + "'");
        }
    }
    try {
        return Rational(BigInt(text));
    } catch (const std::invalid_argument&) {
        fail(errc::domain_error, "bad integer literal '" + text + "'");
    }
}

std::string rat_decimal(const Rational& q, int digits) {
    bool neg = q < 0;
    Rational a = neg ? Rational(-q) : q;
    BigInt scale = int_pow(BigInt(10), static_cast<unsigned long>(digits));
    BigInt scaled = (a.get_num() * scale) / a.get_den();
    BigInt ip = scaled / scale;
    BigInt fp = scaled % scale;
    std::string frac = fp.get_str();
    frac.insert(frac.begin(), digits - frac.size(), '0');
    std::string out = ip.get_str();
    if (digits > 0)
        out += "." + frac;
    return neg ? "-" + out : out;
}

} // namespace hypermatch
