#include "qrsk/whittaker.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace qrsk {

template <class S>
S psi(const Signature& lam, const Signature& mu, const S& q)
{
    if (!interlaces_h(mu, lam))
        return S(0);
    S r(1);
    for (long i = 1; i <= length(mu); ++i)
        r *= q_binomial<S>(part(lam, i) - part(lam, i + 1), part(lam, i) - part(mu, i), q);
    return r;
}

template <class S>
S phi_coef(const Signature& lam, const Signature& mu, const S& q)
{
    if (!interlaces_h(mu, lam))
        return S(0);
    S r = S(1) / q_pochhammer(q, q, part(lam, 1) - part(mu, 1));
    for (long i = 1; i <= length(lam); ++i)
        r *= q_binomial<S>(part(mu, i) - part(mu, i + 1), part(mu, i) - part(lam, i + 1), q);
    return r;
}

template <class S>
S psi_prime(const Signature& lam, const Signature& mu, const S& q)
{
    if (!interlaces_v(mu, lam))
        return S(0);
    S r(1);
    long n = long(std::max(lam.size(), mu.size()));
    for (long i = 1; i <= n; ++i)
        if (part(lam, i) == part(mu, i) && part(lam, i + 1) == part(mu, i + 1) + 1)
            r *= S(1) - pow_int(q, part(mu, i) - part(mu, i + 1));
    return r;
}

template <class S>
S p_skew_single(const Signature& lam, const Signature& mu, const S& a, const S& q)
{
    S w = psi(lam, mu, q);
    if (is_zero(w))
        return w;
    return w * pow_int(a, size(lam) - size(mu));
}

namespace {

template <class S>
S p_poly_rec(const Signature& lam, const std::vector<S>& a, std::size_t n, const S& q,
             std::map<Signature, S>& memo)
{
    if (n == 0)
        return S(1);
    auto it = memo.find(lam);
    if (it != memo.end())
        return it->second;
    S total(0);
    if (n == 1) {
        total = pow_int(a[0], lam[0]);
    } else {
        for_each_interlacing_below(lam, [&](const Signature& mu) {
            S w = p_skew_single(lam, mu, a[n - 1], q);
            if (!is_zero(w))
                total += w * p_poly_rec(mu, a, n - 1, q, memo);
        });
    }
    memo.emplace(lam, total);
    return total;
}

} // namespace

template <class S>
S p_poly(const Signature& lam, const std::vector<S>& a, const S& q)
{
    const std::size_t n = a.size();
    if (length(lam) > long(n))
        return S(0);
    std::map<Signature, S> memo;
    return p_poly_rec(padded(lam, n), a, n, q, memo);
}

template <class S>
S q_skew(const Signature& lam, const Signature& mu, const SpecParams<S>& spec, const S& q)
{
    const std::size_t n = std::max(lam.size(), mu.size());
    Signature top = padded(lam, n);
    Signature bottom = padded(mu, n);
    for (std::size_t i = 0; i < n; ++i)
        if (bottom[i] > top[i])
            return S(0);

    std::map<Signature, S> cur{{bottom, S(1)}};
    auto step = [&](bool dual, const S& par) {
        std::map<Signature, S> nxt;
        for (const auto& [sig, w] : cur) {
            std::vector<long> lo(sig), hi(n);
            for (std::size_t i = 0; i < n; ++i) {
                hi[i] = dual ? std::min(sig[i] + 1, top[i]) : top[i];
                if (!dual && i > 0)
                    hi[i] = std::min(hi[i], sig[i - 1]);
            }
            Signature k = lo;
            bool more = true;
            while (more) {
                if (is_signature(k)) {
                    S c = dual ? psi_prime(k, sig, q) : phi_coef(k, sig, q);
                    if (!is_zero(c)) {
                        c *= pow_int(par, size(k) - size(sig));
                        auto [pos, fresh] = nxt.emplace(k, c * w);
                        if (!fresh)
                            pos->second += c * w;
                    }
                }
                long i = long(n) - 1;
                while (i >= 0 && k[std::size_t(i)] >= hi[std::size_t(i)]) {
                    k[std::size_t(i)] = lo[std::size_t(i)];
                    --i;
                }
                if (i < 0)
                    more = false;
                else
                    ++k[std::size_t(i)];
            }
        }
        cur.swap(nxt);
    };
    for (const S& al : spec.usual)
        step(false, al);
    for (const S& be : spec.dual)
        step(true, be);
    auto it = cur.find(top);
    return it == cur.end() ? S(0) : it->second;
}

template <class S>
S q_poly_alpha(const Signature& lam, const std::vector<S>& alphas, const S& q)
{
    SpecParams<S> spec;
    spec.usual = alphas;
    return q_skew(lam, Signature{}, spec, q);
}

template <class S>
S pi_norm(const std::vector<S>& a, const SpecParams<S>& spec, const S& q)
{
    S r(1);
    for (const S& aj : a) {
        for (const S& be : spec.dual)
            r *= S(1) + be * aj;
        for (const S& al : spec.usual)
            r /= q_pochhammer_inf<S>(al * aj, q);
    }
    return r;
}

template <class S>
S process_weight(const InterlacingArray& arr, const std::vector<S>& a, const SpecParams<S>& spec, const S& q)
{
    if (!arr.valid())
        throw std::invalid_argument("process_weight: not an interlacing array");
    if (std::size_t(arr.depth()) != a.size())
        throw std::invalid_argument("process_weight: one level parameter per level");
    S w(1);
    Signature prev;
    for (long j = 1; j <= arr.depth(); ++j) {
        w *= p_skew_single(arr.level(j), prev, a[std::size_t(j - 1)], q);
        prev = arr.level(j);
    }
    Signature top = arr.depth() ? arr.levels.back() : Signature{};
    return w * q_skew(top, Signature{}, spec, q) / pi_norm(a, spec, q);
}

namespace {

bool equal_scalars(const Rational& x, const Rational& y) { return x == y; }
bool equal_scalars(double x, double y) { return std::fabs(x - y) <= 1e-12 * std::max(std::fabs(x), std::fabs(y)); }

} // namespace

template <class S>
bool check_gibbs(const std::map<InterlacingArray, S>& weights, const std::vector<S>& a, const S& q)
{
    std::map<Signature, S> ratio;
    for (const auto& [arr, w] : weights) {
        S chain(1);
        Signature prev;
        for (long j = 1; j <= arr.depth(); ++j) {
            chain *= p_skew_single(arr.level(j), prev, a[std::size_t(j - 1)], q);
            prev = arr.level(j);
        }
        if (is_zero(chain))
            return false;
        S r = w / chain;
        Signature top = arr.depth() ? arr.levels.back() : Signature{};
        auto [it, fresh] = ratio.emplace(top, r);
        if (!fresh && !equal_scalars(it->second, r))
            return false;
    }
    return true;
}

template <class S>
S univariate_step_prob(UnivariateKind kind, const Signature& lam, const Signature& nu, const std::vector<S>& a,
                       const S& par, const S& q)
{
    S coef = kind == UnivariateKind::Beta ? psi_prime(nu, lam, q) : phi_coef(nu, lam, q);
    if (is_zero(coef))
        return coef;
    S pl = p_poly(lam, a, q);
    if (is_zero(pl))
        throw std::domain_error("univariate_step_prob: P_lambda vanishes");
    S norm(1);
    for (const S& aj : a) {
        if (kind == UnivariateKind::Beta)
            norm /= S(1) + par * aj;
        else
            norm *= q_pochhammer_inf<S>(par * aj, q);
    }
    return norm * p_poly(nu, a, q) / pl * coef * pow_int(par, size(nu) - size(lam));
}

template <class S>
S link(const Signature& lam, const Signature& lam_bar, const std::vector<S>& a, const S& q)
{
    std::vector<S> lower(a.begin(), a.end() - 1);
    S w = p_skew_single(lam, lam_bar, a.back(), q);
    if (is_zero(w))
        return w;
    return p_poly(lam_bar, lower, q) / p_poly(lam, a, q) * w;
}

template <class S>
std::pair<S, S> skew_cauchy_sides(const Signature& lam, const Signature& nu_bar, const S& a, const SpecParams<S>& spec,
                                  const S& q, long cap)
{
    if (spec.usual.size() + spec.dual.size() != 1)
        throw std::invalid_argument("skew_cauchy_sides: one specialization parameter");
    if (nu_bar.size() + 1 != lam.size())
        throw std::invalid_argument("skew_cauchy_sides: nu_bar must have length lam.size() - 1");
    S lhs(0), rhs(0);
    for_each_interlacing_below(lam, [&](const Signature& lb) {
        lhs += p_skew_single(lam, lb, a, q) * q_skew(nu_bar, lb, spec, q);
    });
    auto add = [&](const Signature& nu) { rhs += p_skew_single(nu, nu_bar, a, q) * q_skew(nu, lam, spec, q); };
    if (!spec.dual.empty()) {
        for_each_vstrip_above(lam, add);
    } else {
        // Horizontal strips nu over lam with |nu| - |lam| <= cap.
        Signature nu = lam;
        std::function<void(std::size_t, long)> rec = [&](std::size_t i, long used) {
            if (i == lam.size()) {
                add(nu);
                return;
            }
            const long hi = i == 0 ? lam[0] + cap - used : lam[i - 1];
            for (long v = lam[i]; v <= hi && used + v - lam[i] <= cap; ++v) {
                nu[i] = v;
                rec(i + 1, used + v - lam[i]);
            }
            nu[i] = lam[i];
        };
        rec(0, 0);
    }
    return {lhs, rhs / pi_norm(std::vector<S>{a}, spec, q)};
}

template <class S>
std::pair<S, S> intertwining_sides(const Signature& lam, const Signature& mu_bar, const std::vector<S>& a,
                                   const S& beta, const S& q)
{
    if (a.size() != lam.size() || mu_bar.size() + 1 != lam.size() || lam.size() < 2)
        throw std::invalid_argument("intertwining_sides: need j >= 2 levels");
    const std::vector<S> lower(a.begin(), a.end() - 1);
    S lhs(0), rhs(0);
    for_each_vstrip_above(lam, [&](const Signature& nu) {
        lhs += univariate_step_prob(UnivariateKind::Beta, lam, nu, a, beta, q) * link(nu, mu_bar, a, q);
    });
    for_each_interlacing_below(lam, [&](const Signature& lb) {
        rhs += link(lam, lb, a, q) * univariate_step_prob(UnivariateKind::Beta, lb, mu_bar, lower, beta, q);
    });
    return {lhs, rhs};
}

#define QRSK_INSTANTIATE(S)                                                                                     \
    template S psi<S>(const Signature&, const Signature&, const S&);                                           \
    template S phi_coef<S>(const Signature&, const Signature&, const S&);                                      \
    template S psi_prime<S>(const Signature&, const Signature&, const S&);                                     \
    template S p_skew_single<S>(const Signature&, const Signature&, const S&, const S&);                       \
    template S p_poly<S>(const Signature&, const std::vector<S>&, const S&);                                   \
    template S q_skew<S>(const Signature&, const Signature&, const SpecParams<S>&, const S&);                  \
    template S q_poly_alpha<S>(const Signature&, const std::vector<S>&, const S&);                             \
    template S pi_norm<S>(const std::vector<S>&, const SpecParams<S>&, const S&);                              \
    template S process_weight<S>(const InterlacingArray&, const std::vector<S>&, const SpecParams<S>&, const S&); \
    template bool check_gibbs<S>(const std::map<InterlacingArray, S>&, const std::vector<S>&, const S&);       \
    template S univariate_step_prob<S>(UnivariateKind, const Signature&, const Signature&, const std::vector<S>&, \
                                       const S&, const S&);                                                    \
    template S link<S>(const Signature&, const Signature&, const std::vector<S>&, const S&);                   \
    template std::pair<S, S> skew_cauchy_sides<S>(const Signature&, const Signature&, const S&,                 \
                                                  const SpecParams<S>&, const S&, long);                       \
    template std::pair<S, S> intertwining_sides<S>(const Signature&, const Signature&, const std::vector<S>&,   \
                                                   const S&, const S&);

QRSK_INSTANTIATE(Rational)
QRSK_INSTANTIATE(double)

} // namespace qrsk
