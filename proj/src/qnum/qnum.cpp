#include "qrsk/qnum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qrsk {

template <class S>
S q_pochhammer(const S& a, const S& q, long m)
{
    S result(1);
    if (m >= 0) {
        S t(a);
        for (long i = 0; i < m; ++i) {
            result *= S(1) - t;
            t *= q;
        }
        return result;
    }
    S qinv = S(1) / q;
    S t = a * qinv;
    for (long i = 1; i <= -m; ++i) {
        result *= S(1) - t;
        t *= qinv;
    }
    if (is_zero(result))
        throw std::domain_error("q_pochhammer: zero factor for negative m");
    return S(1) / result;
}

double q_pochhammer_inf(double a, double q)
{
    if (!(std::fabs(q) < 1.0))
        throw std::domain_error("q_pochhammer_inf: |q| must be < 1");
    const double cut = 0x1.0p-60;
    double result = 1.0;
    double t = a;
    while (std::fabs(t) >= cut) {
        result *= 1.0 - t;
        t *= q;
        if (q == 0.0)
            break;
    }
    return result;
}

template <>
double q_pochhammer_inf<double>(const double& a, const double& q)
{
    return q_pochhammer_inf(a, q);
}

template <>
Rational q_pochhammer_inf<Rational>(const Rational&, const Rational&)
{
    throw std::domain_error("q_pochhammer_inf: not available for exact scalars");
}

template <class S>
S q_pochhammer_down(const S& q, const Extent& e, long m)
{
    if (e.is_infinite() || m <= 0)
        return S(1);
    S result(1);
    for (long i = 0; i < m; ++i)
        result *= S(1) - pow_int(q, e.value() - i);
    return result;
}

template <class S>
S q_binomial(long n, long k, const S& q)
{
    if (k < 0 || k > n)
        throw std::out_of_range("q_binomial: k out of range");
    k = std::min(k, n - k);
    S num(1), den(1);
    for (long i = 0; i < k; ++i) {
        num *= S(1) - pow_int(q, n - i);
        den *= S(1) - pow_int(q, i + 1);
    }
    return num / den;
}

template <class S>
S q_binomial(const Extent& n, long k, const S& q)
{
    if (n.is_finite())
        return q_binomial<S>(n.value(), k, q);
    if constexpr (ScalarTraits<S>::exact)
        throw std::domain_error("q_binomial: infinite n needs floating scalars");
    if (k < 0)
        throw std::out_of_range("q_binomial: k out of range");
    return S(1) / q_pochhammer<S>(q, q, k);
}

template <class S>
PhiParams<S> PhiParams<S>::direct(const S& q, const S& xi, const S& eta, Extent y)
{
    PhiParams p;
    p.regime = Regime::Direct;
    p.q = q;
    p.xi = xi;
    p.eta = eta;
    p.y = y;
    p.b = Extent::infinite();
    p.validate();
    return p;
}

template <class S>
PhiParams<S> PhiParams<S>::inverse(const S& q, long a, Extent b, long c)
{
    PhiParams p;
    p.regime = Regime::Inverse;
    p.q = q;
    p.a = a;
    p.b = b;
    p.y = Extent::finite(c);
    p.xi = pow_int(q, a);
    p.eta = pow_ext(q, b);
    p.validate();
    return p;
}

template <class S>
void PhiParams<S>::validate() const
{
    if (q < 0 || q >= 1)
        throw std::domain_error("phi: q outside [0,1)");
    if (regime == Regime::Direct) {
        if (eta < 0 || eta > xi || xi >= 1)
            throw std::domain_error("phi: need 0 <= eta <= xi < 1");
        return;
    }
    if (a < 0)
        throw std::domain_error("phi: inverse regime needs a >= 0");
    if (b.is_finite() && (a > b.value() || y.value() > b.value()))
        throw std::domain_error("phi: inverse regime needs a <= b and y <= b");
}

namespace {

template <class S>
S phi_direct(const PhiParams<S>& p, long s)
{
    // xi^s (eta/xi;q)_s written as prod (xi - eta q^i), valid at xi = 0.
    S head(1), qi(1);
    for (long i = 0; i < s; ++i) {
        head *= p.xi - p.eta * qi;
        qi *= p.q;
    }
    if (p.y.is_finite()) {
        long y = p.y.value();
        return head * q_pochhammer(p.xi, p.q, y - s) / q_pochhammer(p.eta, p.q, y) *
               q_binomial<S>(y, s, p.q);
    }
    if constexpr (ScalarTraits<S>::exact) {
        if (p.xi != p.eta)
            throw std::domain_error("phi: y = inf needs floating scalars");
        return s == 0 ? S(1) : S(0);
    } else {
        return head / q_pochhammer(p.q, p.q, s) * q_pochhammer_inf(p.xi, p.q) /
               q_pochhammer_inf(p.eta, p.q);
    }
}

template <class S>
S phi_inverse(const PhiParams<S>& p, long s)
{
    const long a = p.a, c = p.y.value();
    if (c - s > a)
        return S(0);
    if (p.b.is_finite() && s > p.b.value() - a)
        return S(0);
    if (is_zero(p.q))
        return s == std::max(c - a, 0L) ? S(1) : S(0);
    Extent bma = p.b.is_finite() ? Extent::finite(p.b.value() - a) : Extent::infinite();
    S w = pow_int(p.q, s * (a - c + s)) * q_pochhammer_down(p.q, Extent::finite(a), c - s) *
          q_pochhammer_down(p.q, bma, s) * q_binomial<S>(c, s, p.q);
    return w / q_pochhammer_down(p.q, p.b, c);
}

} // namespace

template <class S>
S phi_weight(const PhiParams<S>& p, long s)
{
    if (s < 0 || (p.y.is_finite() && s > p.y.value()))
        return S(0);
    return p.regime == PhiParams<S>::Regime::Direct ? phi_direct(p, s) : phi_inverse(p, s);
}

long sample_discrete(const std::vector<double>& weights, Rng& rng)
{
    double total = 0;
    for (double w : weights)
        total += w;
    if (!(total > 0))
        throw std::domain_error("sample_discrete: no mass");
    double u = rng.uniform() * total;
    double acc = 0;
    long last = -1;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0)
            continue;
        acc += weights[i];
        last = long(i);
        if (u < acc)
            return last;
    }
    return last;
}

namespace {

double log1m(double x) { return std::log1p(-x); }

// Log-weights from a ratio recurrence starting at s0; -inf once a ratio
// vanishes. Returned weights are exp(l - max l).
template <class Ratio>
long sample_by_ratios(long s0, long s1, Ratio&& log_ratio, Rng& rng)
{
    std::vector<double> logw;
    logw.reserve(std::size_t(s1 - s0 + 1));
    double l = 0, mx = 0;
    logw.push_back(0);
    for (long s = s0; s < s1; ++s) {
        l += log_ratio(s);
        if (l == -std::numeric_limits<double>::infinity())
            break;
        logw.push_back(l);
        mx = std::max(mx, l);
    }
    std::vector<double> w(logw.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] = std::exp(logw[i] - mx);
    return s0 + sample_discrete(w, rng);
}

double log_one_minus_qpow(double q, long e)
{
    if (e < 0)
        return std::log(std::fabs(1.0 - std::pow(q, double(e))));
    return log1m(std::pow(q, double(e)));
}

} // namespace

long phi_sample(const PhiParams<double>& p, Rng& rng)
{
    p.validate();
    if (p.y.is_finite() && p.y.value() == 0)
        return 0;
    const double q = p.q;
    if (p.regime == PhiParams<double>::Regime::Inverse) {
        const long a = p.a, c = p.y.value();
        const long s0 = std::max(0L, c - a);
        long s1 = c;
        if (p.b.is_finite())
            s1 = std::min(s1, p.b.value() - a);
        if (q == 0.0 || s1 <= s0)
            return s0;
        const double lq = std::log(q);
        auto ratio = [&](long s) {
            double r = double(a - c + 2 * s + 1) * lq;
            if (p.b.is_finite())
                r += log_one_minus_qpow(q, p.b.value() - a - s);
            r += log_one_minus_qpow(q, c - s) - log_one_minus_qpow(q, a - c + s + 1) -
                 log_one_minus_qpow(q, s + 1);
            return r;
        };
        return sample_by_ratios(s0, s1, ratio, rng);
    }
    if (p.xi == 0.0)
        return 0;
    if (p.y.is_infinite() && p.eta == 0.0)
        return sample_qgeom(p.xi, q, rng);
    if (p.y.is_finite()) {
        const long y = p.y.value();
        auto ratio = [&](long s) {
            double num = (p.xi - p.eta * std::pow(q, double(s))) * (1 - std::pow(q, double(y - s)));
            double den = (1 - p.xi * std::pow(q, double(y - s - 1))) * (1 - std::pow(q, double(s + 1)));
            return num > 0 ? std::log(num / den) : -std::numeric_limits<double>::infinity();
        };
        return sample_by_ratios(0, y, ratio, rng);
    }
    // y = inf with eta > 0: truncate once the geometric tail bound is tiny.
    std::vector<double> w{1.0};
    double cur = 1.0, total = 1.0;
    for (long s = 0;; ++s) {
        double qs1 = std::pow(q, double(s + 1));
        cur *= (p.xi - p.eta * std::pow(q, double(s))) / (1 - qs1);
        w.push_back(cur);
        total += cur;
        double rho = p.xi / (1 - qs1 * q);
        if (rho < 1 && cur * rho / (1 - rho) < 0x1.0p-60 * total)
            break;
    }
    return sample_discrete(w, rng);
}

double qgeom_pmf(double xi, double q, long n)
{
    return q_pochhammer_inf(xi, q) * std::pow(xi, double(n)) / q_pochhammer(q, q, n);
}

long sample_qgeom(double xi, double q, Rng& rng)
{
    if (xi < 0 || xi >= 1 || q < 0 || q >= 1)
        throw std::domain_error("sample_qgeom: need 0 <= xi < 1, 0 <= q < 1");
    long total = 0;
    double p = xi;
    while (p >= 0x1.0p-60) {
        double u = rng.uniform();
        if (u < p)
            total += 1 + long(std::floor(std::log(u / p) / std::log(p)));
        p *= q;
    }
    return total;
}

template Rational q_pochhammer<Rational>(const Rational&, const Rational&, long);
template double q_pochhammer<double>(const double&, const double&, long);
template Rational q_pochhammer_down<Rational>(const Rational&, const Extent&, long);
template double q_pochhammer_down<double>(const double&, const Extent&, long);
template Rational q_binomial<Rational>(long, long, const Rational&);
template double q_binomial<double>(long, long, const double&);
template Rational q_binomial<Rational>(const Extent&, long, const Rational&);
template double q_binomial<double>(const Extent&, long, const double&);
template struct PhiParams<Rational>;
template struct PhiParams<double>;
template Rational phi_weight<Rational>(const PhiParams<Rational>&, long);
template double phi_weight<double>(const PhiParams<double>&, long);

} // namespace qrsk
