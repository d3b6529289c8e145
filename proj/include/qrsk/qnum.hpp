#pragma once

#include "qrsk/rng.hpp"
#include "qrsk/scalar.hpp"

#include <utility>
#include <vector>

namespace qrsk {

// (a;q)_m for any integer m. m < 0 is the reciprocal product
// 1 / prod_{i=1}^{-m} (1 - a q^{-i}).
template <class S>
S q_pochhammer(const S& a, const S& q, long m);

// (a;q)_inf, floating only. Stops once |a q^i| < 2^-60.
double q_pochhammer_inf(double a, double q);
template <class S>
S q_pochhammer_inf(const S& a, const S& q);

// prod_{i=0}^{m-1} (1 - q^{e-i}), with e = inf giving 1. This is
// (q^e; q^{-1})_m written with integer exponents.
template <class S>
S q_pochhammer_down(const S& q, const Extent& e, long m);

template <class S>
S q_binomial(long n, long k, const S& q);

// n may be infinite in floating mode, where the value is 1/(q;q)_k.
template <class S>
S q_binomial(const Extent& n, long k, const S& q);

// Parameters of the q-deformed Beta-binomial law phi_{q,xi,eta}(. | y).
// The inverse regime uses base 1/q with xi = q^a, eta = q^b and stores
// only the integer exponents.
template <class S>
struct PhiParams {
    enum class Regime { Direct, Inverse };

    Regime regime = Regime::Direct;
    S q;
    S xi;
    S eta;
    long a = 0;
    Extent b;
    Extent y;

    static PhiParams direct(const S& q, const S& xi, const S& eta, Extent y);
    static PhiParams inverse(const S& q, long a, Extent b, long c);

    // Throws std::domain_error outside the two accepted regimes.
    void validate() const;
};

// Weight of s; 0 for s outside [0, y].
template <class S>
S phi_weight(const PhiParams<S>& p, long s);

long phi_sample(const PhiParams<double>& p, Rng& rng);

// q-geometric law (xi;q)_inf xi^n / (q;q)_n.
double qgeom_pmf(double xi, double q, long n);

// Sum over i >= 0 of independent Geom(xi q^i), P(m) = (1-p) p^m. The
// sum stops once xi q^i < 2^-60.
long sample_qgeom(double xi, double q, Rng& rng);

// Inverse-CDF draw from nonnegative, not necessarily normalized, weights.
long sample_discrete(const std::vector<double>& weights, Rng& rng);

// The two sides of the q-binomial identity behind swapping the fund push
// and the lower-left push in the column alpha dynamics: parameters s, l,
// R, b, h are the jump, the lower move, the fund, the gap and the distance.
template <class S>
std::pair<S, S> kr1_sides(long s, long l, long R, long b, long h, const S& q);
// The same identity with free c, d, e in place of q^{-l}, q^{1+R-s},
// q^{1+b-h-l}.
template <class S>
std::pair<S, S> kr1_general_sides(long n, const S& c, const S& d, const S& e, const S& q);

// Triple sum that equals 1 for A + B >= r and B + C >= l.
template <class S>
S kr2_sum(long A, long B, long C, long l, long r, const S& q);
// Version with alpha = q^A, beta = q^r, gamma = q^C free.
template <class S>
S kr2_general_sum(long B, long l, const S& alpha, const S& beta, const S& gamma, const S& q);

} // namespace qrsk
