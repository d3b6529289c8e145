#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qrsk {

using Rational = mpq_class;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static double from_ratio(long p, long q) { return double(p) / double(q); }
    static double from_double(double x) { return x; }
    static double to_double(double x) { return x; }
    static bool is_zero(double x) { return x == 0.0; }
    static std::string to_string(double x);
};

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static Rational from_ratio(long p, long q)
    {
        Rational r(p, q);
        r.canonicalize();
        return r;
    }
    static Rational from_double(double x) { return Rational(x); }
    static double to_double(const Rational& x) { return x.get_d(); }
    static bool is_zero(const Rational& x) { return sgn(x) == 0; }
    static std::string to_string(const Rational& x) { return x.get_str(); }
};

template <class S>
inline S scalar(long p, long q = 1)
{
    return ScalarTraits<S>::from_ratio(p, q);
}

template <class S>
inline bool is_zero(const S& x)
{
    return ScalarTraits<S>::is_zero(x);
}

template <class S>
inline double to_double(const S& x)
{
    return ScalarTraits<S>::to_double(x);
}

template <class S>
inline std::string to_string(const S& x)
{
    return ScalarTraits<S>::to_string(x);
}

// x^n for integer n, with 0^0 = 1. Negative n on x = 0 throws.
template <class S>
S pow_int(const S& x, long n)
{
    if (n < 0) {
        if (is_zero(x))
            throw std::domain_error("pow_int: zero to a negative power");
        return S(1) / pow_int(x, -n);
    }
    S result(1);
    S base(x);
    while (n > 0) {
        if (n & 1)
            result *= base;
        n >>= 1;
        if (n)
            base *= base;
    }
    return result;
}

// Nonnegative integer or +infinity.
class Extent {
public:
    Extent() = default;
    static Extent finite(long n)
    {
        if (n < 0)
            throw std::invalid_argument("Extent: negative value");
        Extent e;
        e.n_ = n;
        return e;
    }
    static Extent infinite()
    {
        Extent e;
        e.inf_ = true;
        return e;
    }

    bool is_infinite() const { return inf_; }
    bool is_finite() const { return !inf_; }
    long value() const
    {
        if (inf_)
            throw std::logic_error("Extent: value of infinity");
        return n_;
    }

    bool operator==(const Extent& o) const { return inf_ == o.inf_ && (inf_ || n_ == o.n_); }

private:
    bool inf_ = false;
    long n_ = 0;
};

// q^e where e may be infinite (q^inf = 0 for 0 <= q < 1).
template <class S>
S pow_ext(const S& q, const Extent& e)
{
    return e.is_infinite() ? S(0) : pow_int(q, e.value());
}

// Accepts "p/q", integers and plain decimals ("0.25").
Rational parse_rational(const std::string& text);

} // namespace qrsk
