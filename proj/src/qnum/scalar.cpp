#include "qrsk/scalar.hpp"

#include <cctype>
#include <cstdio>

namespace qrsk {

std::string ScalarTraits<double>::to_string(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

bool all_digits(const std::string& s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

} // namespace

Rational parse_rational(const std::string& text)
{
    std::string s = text;
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s = s.substr(1);
    }
    Rational r;
    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw std::invalid_argument("not a rational: " + text);
        mpz_class d(den, 10);
        if (d == 0)
            throw std::invalid_argument("zero denominator: " + text);
        r = Rational(mpz_class(num, 10), d);
        r.canonicalize();
    } else if (dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if (ip.empty())
            ip = "0";
        if (!all_digits(ip) || (!fp.empty() && !all_digits(fp)))
            throw std::invalid_argument("not a decimal: " + text);
        mpz_class den = 1;
        for (std::size_t i = 0; i < fp.size(); ++i)
            den *= 10;
        r = Rational(mpz_class(ip + fp, 10), den);
        r.canonicalize();
    } else {
        if (!all_digits(s))
            throw std::invalid_argument("not a number: " + text);
        r = Rational(mpz_class(s, 10));
    }
    return neg ? Rational(-r) : r;
}

} // namespace qrsk
