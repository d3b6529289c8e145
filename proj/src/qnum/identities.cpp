#include "qrsk/qnum.hpp"

#include <stdexcept>

namespace qrsk {

namespace {

// (x; 1/q)_m
template <class S>
S down(const S& x, const S& q, long m)
{
    return q_pochhammer(x, S(S(1) / q), m);
}

template <class S>
S binom_inv(long n, long k, const S& q)
{
    return q_binomial(n, k, S(S(1) / q));
}

template <class S>
S multinom_inv(long n, long m, long k, const S& q)
{
    const S Q = S(1) / q;
    return q_pochhammer(Q, Q, n) / (q_pochhammer(Q, Q, k) * q_pochhammer(Q, Q, m) * q_pochhammer(Q, Q, n - m - k));
}

} // namespace

template <class S>
std::pair<S, S> kr1_sides(long s, long l, long R, long b, long h, const S& q)
{
    if (s < 0 || l < 0 || R < 0 || b < 0 || h < s)
        throw std::invalid_argument("kr1_sides: need s, l, R, b >= 0 and h >= s");
    S lhs(0), rhs(0);
    for (long y = 0; y <= s; ++y) {
        const S common = binom_inv(s, y, q) * down(pow_int(q, l), q, y) * down(pow_int(q, R), q, s - y);
        lhs += common * pow_int(q, l * (s - y)) * down(pow_int(q, b - l - h + s), q, s - y);
        rhs += common * pow_int(q, R * y) * q_pochhammer(pow_int(q, b - h + 1), q, s - y);
    }
    return {lhs, rhs};
}

template <class S>
std::pair<S, S> kr1_general_sides(long n, const S& c, const S& d, const S& e, const S& q)
{
    if (n < 0)
        throw std::invalid_argument("kr1_general_sides: n must be nonnegative");
    const S dn = d * pow_int(q, n - 1);
    S lhs(0), rhs(0);
    for (long y = 0; y <= n; ++y) {
        const S common = binom_inv(n, y, q) * down(S(S(1) / c), q, y) * down(dn, q, n - y);
        lhs += common * pow_int(c, y - n) * down(S(e * pow_int(q, n - 1)), q, n - y);
        rhs += common * q_pochhammer(S(e / c), q, n - y) * pow_int(dn, y);
    }
    return {lhs, rhs};
}

template <class S>
S kr2_sum(long A, long B, long C, long l, long r, const S& q)
{
    if (A < 0 || B < 0 || C < 0 || l < 0 || r < 0 || A + B < r || B + C < l)
        throw std::invalid_argument("kr2_sum: need nonnegative exponents, A + B >= r, B + C >= l");
    const S one(1);
    S total(0);
    for (long t = 0; t <= B; ++t)
        for (long x = 0; x <= l; ++x)
            for (long y = 0; y <= l - x; ++y) {
                S term = multinom_inv(l, x, y, q) * binom_inv(B, t, q) * down(pow_int(q, t), q, y);
                term *= down(pow_int(q, r + l - x), q, t) * down(pow_int(q, r + l - t - x), q, l - x - y);
                term *= q_pochhammer(q, q, r) / q_pochhammer(q, q, r + l - x);
                term *= q_pochhammer(q, q, A) / q_pochhammer(q, q, A + B);
                term *= down(pow_int(q, A + B - r), q, B - t + l - x);
                // (q^{C+t}; 1/q)_l / (q^{C+t}; 1/q)_{l-x}, without the common factors
                term *= down(pow_int(q, C + t - l + x), q, x);
                term *= down(pow_int(q, C), q, l - x - y) / down(pow_int(q, B + C), q, l);
                term *= pow_int(q, t * (l - x - y) + (r + l - x) * (B - t) + (A + B - r) * x);
                total += term;
            }
    return total;
}

template <class S>
S kr2_general_sum(long B, long l, const S& alpha, const S& beta, const S& gamma, const S& q)
{
    if (B < 0 || l < 0)
        throw std::invalid_argument("kr2_general_sum: need B, l >= 0");
    S total(0);
    for (long t = 0; t <= B; ++t)
        for (long x = 0; x <= l; ++x)
            for (long y = 0; y <= l - x; ++y) {
                const S bl = beta * pow_int(q, l - x);
                S term = multinom_inv(l, x, y, q) * binom_inv(B, t, q) * down(pow_int(q, t), q, y);
                term *= down(bl, q, t + l - x - y) / down(bl, q, l - x);
                term *= down(S(alpha * pow_int(q, B) / beta), q, B - t + l - x);
                term *= down(S(gamma * pow_int(q, t)), q, l) * down(gamma, q, l - x - y);
                term /= down(S(alpha * pow_int(q, B)), q, B) * down(S(gamma * pow_int(q, B)), q, l) *
                        down(S(gamma * pow_int(q, t)), q, l - x);
                term *= pow_int(alpha, x) * pow_int(beta, B - t - x) * pow_int(q, -t * y + B * l);
                total += term;
            }
    return total;
}

template std::pair<Rational, Rational> kr1_sides<Rational>(long, long, long, long, long, const Rational&);
template std::pair<double, double> kr1_sides<double>(long, long, long, long, long, const double&);
template std::pair<Rational, Rational> kr1_general_sides<Rational>(long, const Rational&, const Rational&,
                                                                   const Rational&, const Rational&);
template Rational kr2_sum<Rational>(long, long, long, long, long, const Rational&);
template double kr2_sum<double>(long, long, long, long, long, const double&);
template Rational kr2_general_sum<Rational>(long, long, const Rational&, const Rational&, const Rational&,
                                            const Rational&);

} // namespace qrsk
