#include "detail.hpp"

#include <algorithm>
#include <cmath>

namespace qrsk {
namespace detail {

template <class S>
PhiParams<S> row_alpha_split(const LevelUpdateContext& ctx, long i, const S& q)
{
    const long c = at(ctx.nu_bar, i) - at(ctx.lam_bar, i);
    const long a = at(ctx.lam, i) - at(ctx.lam_bar, i);
    Extent b = i == 1 ? Extent::infinite() : Extent::finite(at(ctx.lam_bar, i - 1) - at(ctx.lam_bar, i));
    return PhiParams<S>::inverse(q, a, b, c);
}

template PhiParams<Rational> row_alpha_split(const LevelUpdateContext&, long, const Rational&);
template PhiParams<double> row_alpha_split(const LevelUpdateContext&, long, const double&);

Signature sample_row_alpha(const LevelUpdateContext& ctx, double alpha, double a_j, double q, Rng& rng, long* v)
{
    const long j = ctx.j;
    Signature nu = ctx.lam;
    for (long i = 1; i <= j - 1; ++i) {
        const long c = at(ctx.nu_bar, i) - at(ctx.lam_bar, i);
        long w = phi_sample(row_alpha_split(ctx, i, q), rng);
        nu[std::size_t(i - 1)] += w;
        nu[std::size_t(i)] += c - w;
    }
    long vj = sample_qgeom(alpha * a_j, q, rng);
    nu[0] += vj;
    if (v)
        *v = vj;
    return nu;
}

} // namespace detail

namespace {

long size_diff(const LevelUpdateContext& ctx, const Signature& nu)
{
    return size(nu) - size(ctx.lam) - (size(ctx.nu_bar) - size(ctx.lam_bar));
}

} // namespace

template <class S>
S row_alpha_weight(const LevelUpdateContext& ctx, const Signature& nu, const S& /*alpha*/, const S& /*a_j*/,
                   const S& q)
{
    using detail::at;
    if (!ctx.admissible(true) || nu.size() != ctx.lam.size() || !interlaces_h(ctx.lam, nu))
        return S(0);
    const long j = ctx.j;
    // Decode the splits from the top particle downwards.
    std::vector<long> w(std::size_t(j), 0);
    long carry = 0;
    for (long i = j - 1; i >= 1; --i) {
        const long c = at(ctx.nu_bar, i) - at(ctx.lam_bar, i);
        w[std::size_t(i)] = c + carry - (at(nu, i + 1) - at(ctx.lam, i + 1));
        if (w[std::size_t(i)] < 0 || w[std::size_t(i)] > c)
            return S(0);
        carry = w[std::size_t(i)];
    }
    const long v = at(nu, 1) - at(ctx.lam, 1) - carry;
    if (v < 0)
        return S(0);
    S weight = S(1) / q_pochhammer(q, q, v);
    for (long i = 1; i <= j - 1; ++i) {
        weight *= phi_weight(detail::row_alpha_split(ctx, i, q), w[std::size_t(i)]);
        if (is_zero(weight))
            return weight;
    }
    return weight;
}

template <class S>
S row_alpha_prob(const LevelUpdateContext& ctx, const Signature& nu, const S& alpha, const S& a_j, const S& q)
{
    S w = row_alpha_weight(ctx, nu, alpha, a_j, q);
    if (is_zero(w))
        return w;
    const S xi = alpha * a_j;
    return w * q_pochhammer_inf<S>(xi, q) * pow_int(xi, size_diff(ctx, nu));
}

namespace {

// Enumerates every (X, Y, Z) decomposition consistent with nu. With
// normalized = true the X factor of the unbounded particle drops
// (alpha a; q)_inf and the result carries (alpha a)^{-sum X}.
template <class S>
struct ColAlphaSum {
    const LevelUpdateContext& ctx;
    const Signature& nu;
    S xi;
    S q;
    ColAlphaOrder order;
    bool normalized;
    S total{0};

    long lb(long i) const { return detail::at(ctx.lam_bar, i); }
    long nb(long i) const { return detail::at(ctx.nu_bar, i); }
    long l(long i) const { return detail::at(ctx.lam, i); }

    void run(long i, long E, long R, const S& acc)
    {
        const long j = ctx.j;
        if (i > j) {
            total += acc;
            return;
        }
        const long p = j - i + 1;
        const long d = detail::at(nu, p) - l(p);
        if (d < 0)
            return;
        if (p == 1) {
            // Unbounded particle: Y = c_1, Z = R.
            const long c1 = j >= 2 ? nb(1) - lb(1) : 0;
            const long x = d - c1 - R;
            if (x < 0)
                return;
            S fx;
            if (normalized) {
                fx = pow_int(q, E * x) / (q_pochhammer(q, q, x) * q_pochhammer(xi, q, E));
            } else {
                S th = xi * pow_int(q, E);
                fx = pow_int(th, x) / q_pochhammer(q, q, x) * q_pochhammer_inf<S>(th, q);
            }
            total += acc * fx;
            return;
        }
        const long gap = lb(p - 1) - l(p);
        const long c = i >= 2 ? nb(p) - lb(p) : 0;
        const long b = i >= 2 ? lb(p - 1) - lb(p) : 0;
        for (long x = 0; x <= std::min(d, gap); ++x) {
            S fx = phi_weight(PhiParams<S>::direct(q, xi * pow_int(q, E), S(0), Extent::finite(gap)), x);
            if (is_zero(fx))
                continue;
            if (normalized)
                fx /= pow_int(xi, x);
            const long h = gap - x;
            const long E2 = E + h;
            const long rest = d - x;
            if (i == 1) {
                if (rest == 0)
                    run(i + 1, E2, 0, acc * fx);
                continue;
            }
            auto ypar = [&](long hh) { return PhiParams<S>::inverse(q, c, Extent::finite(b), hh); };
            auto zpar = [&](long hh) { return PhiParams<S>::inverse(q, R, Extent::infinite(), hh); };
            if (i == 2) {
                const long y = rest;
                if (y > h)
                    continue;
                S fy = phi_weight(ypar(h), h - y);
                if (!is_zero(fy))
                    run(i + 1, E2, R + c - y, acc * fx * fy);
                continue;
            }
            for (long y = 0; y <= std::min(c, rest); ++y) {
                const long z = rest - y;
                if (y + z > h)
                    continue;
                S fyz;
                if (order == ColAlphaOrder::YZ)
                    fyz = phi_weight(ypar(h), h - y) * phi_weight(zpar(h - y), h - y - z);
                else
                    fyz = phi_weight(zpar(h), h - z) * phi_weight(ypar(h - z), h - z - y);
                if (!is_zero(fyz))
                    run(i + 1, E2, R + c - y - z, acc * fx * fyz);
            }
        }
    }
};

} // namespace

template <class S>
S col_alpha_weight(const LevelUpdateContext& ctx, const Signature& nu, const S& alpha, const S& a_j, const S& q,
                   ColAlphaOrder order)
{
    if (!ctx.admissible(true) || nu.size() != ctx.lam.size() || !interlaces_h(ctx.lam, nu))
        return S(0);
    ColAlphaSum<S> sum{ctx, nu, alpha * a_j, q, order, true};
    sum.run(1, 0, 0, S(1));
    return sum.total;
}

template <class S>
S col_alpha_prob(const LevelUpdateContext& ctx, const Signature& nu, const S& alpha, const S& a_j, const S& q,
                 ColAlphaOrder order)
{
    if (!ctx.admissible(true) || nu.size() != ctx.lam.size() || !interlaces_h(ctx.lam, nu))
        return S(0);
    ColAlphaSum<S> sum{ctx, nu, alpha * a_j, q, order, false};
    sum.run(1, 0, 0, S(1));
    return sum.total;
}

namespace detail {

Signature sample_col_alpha(const LevelUpdateContext& ctx, double alpha, double a_j, double q, Rng& rng, long* v)
{
    const long j = ctx.j;
    const double xi = alpha * a_j;
    Signature nu = ctx.lam;
    long E = 0, R = 0, sum_x = 0;
    for (long i = 1; i <= j; ++i) {
        const long p = j - i + 1;
        long x, y = 0, z = 0;
        const double th = xi * std::pow(q, double(E));
        if (p == 1) {
            x = sample_qgeom(th, q, rng);
            y = j >= 2 ? at(ctx.nu_bar, 1) - at(ctx.lam_bar, 1) : 0;
            z = R;
        } else {
            const long gap = at(ctx.lam_bar, p - 1) - at(ctx.lam, p);
            x = phi_sample(PhiParams<double>::direct(q, th, 0.0, Extent::finite(gap)), rng);
            const long h = gap - x;
            E += h;
            if (i >= 2) {
                const long c = at(ctx.nu_bar, p) - at(ctx.lam_bar, p);
                const long b = at(ctx.lam_bar, p - 1) - at(ctx.lam_bar, p);
                y = h - phi_sample(PhiParams<double>::inverse(q, c, Extent::finite(b), h), rng);
                if (i >= 3)
                    z = (h - y) - phi_sample(PhiParams<double>::inverse(q, R, Extent::infinite(), h - y), rng);
                R += c - y - z;
            }
        }
        sum_x += x;
        nu[std::size_t(p - 1)] += x + y + z;
    }
    if (v)
        *v = sum_x;
    return nu;
}

} // namespace detail

template Rational row_alpha_weight(const LevelUpdateContext&, const Signature&, const Rational&, const Rational&,
                                   const Rational&);
template double row_alpha_weight(const LevelUpdateContext&, const Signature&, const double&, const double&,
                                 const double&);
template Rational row_alpha_prob(const LevelUpdateContext&, const Signature&, const Rational&, const Rational&,
                                 const Rational&);
template double row_alpha_prob(const LevelUpdateContext&, const Signature&, const double&, const double&,
                               const double&);
template Rational col_alpha_weight(const LevelUpdateContext&, const Signature&, const Rational&, const Rational&,
                                   const Rational&, ColAlphaOrder);
template double col_alpha_weight(const LevelUpdateContext&, const Signature&, const double&, const double&,
                                 const double&, ColAlphaOrder);
template Rational col_alpha_prob(const LevelUpdateContext&, const Signature&, const Rational&, const Rational&,
                                 const Rational&, ColAlphaOrder);
template double col_alpha_prob(const LevelUpdateContext&, const Signature&, const double&, const double&,
                               const double&, ColAlphaOrder);

} // namespace qrsk
