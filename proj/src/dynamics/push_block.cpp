#include "detail.hpp"
#include "qrsk/whittaker.hpp"

#include <algorithm>
#include <cmath>

namespace qrsk {

namespace {

// kappa at level j with lam <_v kappa (beta) or lam <_h kappa (alpha),
// and nu_bar <_h kappa. The first part is capped by kappa1_cap for alpha.
void for_each_kappa(bool alpha, const Signature& lam, const Signature& nu_bar, long kappa1_cap,
                    const std::function<void(const Signature&)>& fn)
{
    const long n = long(lam.size());
    std::vector<long> lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n));
    for (long i = 1; i <= n; ++i) {
        long l = part(lam, i);
        lo[std::size_t(i - 1)] = std::max(l, part(nu_bar, i));
        long h = alpha ? (i == 1 ? kappa1_cap : part(lam, i - 1)) : l + 1;
        if (i >= 2)
            h = std::min(h, part(nu_bar, i - 1));
        hi[std::size_t(i - 1)] = h;
        if (lo[std::size_t(i - 1)] > h)
            return;
    }
    Signature k = lo;
    while (true) {
        if (is_signature(k))
            fn(k);
        long i = n - 1;
        while (i >= 0 && k[std::size_t(i)] == hi[std::size_t(i)]) {
            k[std::size_t(i)] = lo[std::size_t(i)];
            --i;
        }
        if (i < 0)
            return;
        ++k[std::size_t(i)];
    }
}

template <class S>
S beta_term(const Signature& lam, const Signature& nu_bar, const Signature& kappa, const S& x, const S& q)
{
    S w = psi(kappa, nu_bar, q);
    if (is_zero(w))
        return w;
    w *= psi_prime(kappa, lam, q);
    if (is_zero(w))
        return w;
    return w * pow_int(x, size(kappa) - size(lam));
}

} // namespace

template <class S>
S push_block_beta_prob(const Signature& lam, const Signature& nu_bar, const Signature& nu, const S& beta,
                       const S& a_j, const S& q)
{
    if (nu.size() != lam.size() || nu_bar.size() + 1 != lam.size())
        return S(0);
    const S x = beta * a_j;
    S num = beta_term(lam, nu_bar, nu, x, q);
    if (is_zero(num))
        return num;
    S den(0);
    for_each_kappa(false, lam, nu_bar, 0, [&](const Signature& k) { den += beta_term(lam, nu_bar, k, x, q); });
    return num / den;
}

namespace {

double alpha_term(const Signature& lam, const Signature& nu_bar, const Signature& kappa, double x, double q)
{
    double w = psi(kappa, nu_bar, q);
    if (w == 0)
        return 0;
    w *= phi_coef(kappa, lam, q);
    if (w == 0)
        return 0;
    return w * std::pow(x, double(size(kappa) - size(lam)));
}

// Terms along kappa_1 = base1, base1 + 1, ... with the other parts fixed.
// Only the first psi factor, 1/(q;q)_{kappa_1 - lam_1} and x^{kappa_1}
// depend on kappa_1, so each term is the previous one times
// x (1 - q^{k+1-kappa_2}) / ((1 - q^{k+1-nu_bar_1}) (1 - q^{k+1-lam_1})).
// Stops once the geometric bound puts the rest below 2^-60 of the sum.
template <class Fn>
double kappa1_tail(const Signature& lam, const Signature& nu_bar, Signature k, long base1, double x, double q,
                   Fn&& fn)
{
    k[0] = base1;
    double t = alpha_term(lam, nu_bar, k, x, q);
    if (t == 0)
        return 0;
    const long k2 = part(k, 2), nb1 = part(nu_bar, 1), l1 = part(lam, 1);
    // q^{k1+1-kappa_2}, q^{k1+1-nu_bar_1}, q^{k1+1-lam_1}
    double qk = std::pow(q, double(base1 + 1 - k2)), qn = std::pow(q, double(base1 + 1 - nb1)),
           ql = std::pow(q, double(base1 + 1 - l1));
    double partial = 0;
    for (long k1 = base1;; ++k1) {
        fn(k1, t);
        partial += t;
        const double rho = x / ((1 - qn) * (1 - ql));
        if (rho < 1 && t * rho / (1 - rho) <= 0x1.0p-60 * partial)
            return partial;
        if (k1 - base1 > 100000)
            throw std::runtime_error("push_block_alpha_prob: tail did not converge");
        t *= x * (1 - qk) / ((1 - qn) * (1 - ql));
        qk *= q;
        qn *= q;
        ql *= q;
    }
}

} // namespace

double push_block_alpha_prob(const Signature& lam, const Signature& nu_bar, const Signature& nu, double alpha,
                             double a_j, double q)
{
    if (nu.size() != lam.size() || nu_bar.size() + 1 != lam.size())
        return 0;
    const double x = alpha * a_j;
    const double num = alpha_term(lam, nu_bar, nu, x, q);
    if (num == 0)
        return 0;
    // The lower parts range over a finite box; for each of them sum kappa_1
    // until the ratio bound rho = x / ((1-q^{k+1})(1-q^{m+1})) certifies the tail.
    const long base1 = std::max(part(lam, 1), part(nu_bar, 1));
    double den = 0;
    for_each_kappa(true, lam, nu_bar, base1, [&](const Signature& k0) {
        den += kappa1_tail(lam, nu_bar, k0, base1, x, q, [](long, double) {});
    });
    return num / den;
}

namespace detail {

Signature sample_push_block(DynKind kind, const LevelUpdateContext& ctx, double par, double a_j, double q, Rng& rng)
{
    std::vector<Signature> cands;
    std::vector<double> w;
    const double x = par * a_j;
    if (kind == DynKind::PushBlockBeta) {
        for_each_kappa(false, ctx.lam, ctx.nu_bar, 0, [&](const Signature& k) {
            cands.push_back(k);
            w.push_back(beta_term(ctx.lam, ctx.nu_bar, k, x, q));
        });
        return cands[std::size_t(sample_discrete(w, rng))];
    }
    const long base1 = std::max(part(ctx.lam, 1), part(ctx.nu_bar, 1));
    for_each_kappa(true, ctx.lam, ctx.nu_bar, base1, [&](const Signature& k0) {
        Signature k = k0;
        kappa1_tail(ctx.lam, ctx.nu_bar, k0, base1, x, q, [&](long k1, double t) {
            k[0] = k1;
            cands.push_back(k);
            w.push_back(t);
        });
    });
    return cands[std::size_t(sample_discrete(w, rng))];
}

} // namespace detail

template Rational push_block_beta_prob(const Signature&, const Signature&, const Signature&, const Rational&,
                                       const Rational&, const Rational&);
template double push_block_beta_prob(const Signature&, const Signature&, const Signature&, const double&,
                                     const double&, const double&);

} // namespace qrsk
