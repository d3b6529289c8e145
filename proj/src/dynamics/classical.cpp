#include "detail.hpp"

#include <stdexcept>

namespace qrsk {

Signature pull(const Signature& lam, const Signature& lam_bar, long i)
{
    Signature nu = lam;
    if (lam_bar[std::size_t(i - 1)] == lam[std::size_t(i - 1)])
        ++nu[std::size_t(i - 1)];
    else
        ++nu[std::size_t(i)];
    return nu;
}

Signature push(const Signature& lam, const Signature& lam_bar_updated, long i)
{
    Signature nu = lam;
    for (long p = i; p >= 1; --p) {
        if (p == 1 || lam[std::size_t(p - 1)] < lam_bar_updated[std::size_t(p - 2)]) {
            ++nu[std::size_t(p - 1)];
            return nu;
        }
    }
    return nu;
}

namespace {

// One unit of voluntary movement entering at particle j and passed to the
// right while blocked by the level below.
void impulse(Signature& nu, const Signature& bar)
{
    long p = long(nu.size());
    while (p > 1 && nu[std::size_t(p - 1)] == bar[std::size_t(p - 2)])
        --p;
    ++nu[std::size_t(p - 1)];
}

Signature classical_level(DynKind kind, const Signature& lam_bar, const Signature& nu_bar, const Signature& lam,
                          long v)
{
    const long j = long(lam.size());
    Signature nu = lam;
    Signature cur = lam_bar;
    auto c = [&](long i) { return nu_bar[std::size_t(i - 1)] - lam_bar[std::size_t(i - 1)]; };
    switch (kind) {
    case DynKind::RowAlpha:
        for (long i = j - 1; i >= 1; --i)
            for (long t = 0; t < c(i); ++t) {
                nu = pull(nu, cur, i);
                ++cur[std::size_t(i - 1)];
            }
        nu[0] += v;
        break;
    case DynKind::RowBeta:
        nu[0] += v;
        for (long i = 1; i <= j - 1; ++i)
            if (c(i)) {
                nu = pull(nu, cur, i);
                ++cur[std::size_t(i - 1)];
            }
        break;
    case DynKind::ColAlpha:
        for (long t = 0; t < v; ++t)
            impulse(nu, cur);
        for (long i = j - 1; i >= 1; --i)
            for (long t = 0; t < c(i); ++t) {
                ++cur[std::size_t(i - 1)];
                nu = push(nu, cur, i);
            }
        break;
    case DynKind::ColBeta:
        for (long i = 1; i <= j - 1; ++i)
            if (c(i)) {
                ++cur[std::size_t(i - 1)];
                nu = push(nu, cur, i);
            }
        if (v)
            impulse(nu, cur);
        break;
    default:
        throw std::invalid_argument("classical_rsk_step: RSK kinds only");
    }
    return nu;
}

} // namespace

InterlacingArray classical_rsk_step(DynKind kind, const InterlacingArray& arr, const std::vector<long>& input)
{
    if (input.size() != std::size_t(arr.depth()))
        throw std::invalid_argument("classical_rsk_step: one input per level");
    for (long v : input)
        if (v < 0 || (!is_alpha(kind) && v > 1))
            throw std::invalid_argument("classical_rsk_step: input out of range");
    InterlacingArray out = arr;
    for (long j = 1; j <= arr.depth(); ++j) {
        if (j == 1)
            out.level(1)[0] += input[0];
        else
            out.level(j) = classical_level(kind, arr.level(j - 1), out.level(j - 1), arr.level(j),
                                           input[std::size_t(j - 1)]);
    }
    return out;
}

Signature sample_level(DynKind kind, const LevelUpdateContext& ctx, double par, double a_j, double q, Rng& rng,
                       long* input)
{
    long v = 0;
    Signature nu;
    switch (kind) {
    case DynKind::RowBeta:
    case DynKind::ColBeta: {
        v = rng.bernoulli(par * a_j / (1 + par * a_j)) ? 1 : 0;
        auto t = kind == DynKind::RowBeta ? detail::row_beta_table(ctx, int(v), q)
                                          : detail::col_beta_table(ctx, int(v), q);
        nu = detail::sample_table(t, ctx.lam, rng);
        break;
    }
    case DynKind::RowAlpha: nu = detail::sample_row_alpha(ctx, par, a_j, q, rng, &v); break;
    case DynKind::ColAlpha: nu = detail::sample_col_alpha(ctx, par, a_j, q, rng, &v); break;
    default:
        nu = detail::sample_push_block(kind, ctx, par, a_j, q, rng);
        v = size(nu) - size(ctx.lam) - (size(ctx.nu_bar) - size(ctx.lam_bar));
        break;
    }
    if (input)
        *input = v;
    return nu;
}

StepResult sample_step(DynKind kind, const InterlacingArray& arr, double par, const std::vector<double>& a,
                       double q, Rng& rng)
{
    if (a.size() != std::size_t(arr.depth()))
        throw std::invalid_argument("sample_step: one level parameter per level");
    StepResult res{arr, std::vector<long>(a.size(), 0)};
    for (long j = 1; j <= arr.depth(); ++j) {
        LevelUpdateContext ctx{j > 1 ? arr.level(j - 1) : Signature{}, j > 1 ? res.array.level(j - 1) : Signature{},
                               arr.level(j), j};
        res.array.level(j) = sample_level(kind, ctx, par, a[std::size_t(j - 1)], q, rng, &res.inputs[std::size_t(j - 1)]);
        if (j > 1 && !interlaces_h(res.array.level(j - 1), res.array.level(j)))
            throw std::logic_error("sample_step: interlacing violated at level " + std::to_string(j));
    }
    return res;
}

} // namespace qrsk
