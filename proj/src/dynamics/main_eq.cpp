#include "detail.hpp"
#include "qrsk/whittaker.hpp"

namespace qrsk {

template <class S>
S transition_prob(DynKind kind, const LevelUpdateContext& ctx, const Signature& nu, const S& par, const S& a_j,
                  const S& q)
{
    switch (kind) {
    case DynKind::RowBeta: return row_beta_prob(ctx, nu, par, a_j, q);
    case DynKind::ColBeta: return col_beta_prob(ctx, nu, par, a_j, q);
    case DynKind::RowAlpha: return row_alpha_prob(ctx, nu, par, a_j, q);
    case DynKind::ColAlpha: return col_alpha_prob(ctx, nu, par, a_j, q);
    case DynKind::PushBlockBeta: return push_block_beta_prob(ctx.lam, ctx.nu_bar, nu, par, a_j, q);
    case DynKind::PushBlockAlpha:
        if constexpr (ScalarTraits<S>::exact)
            throw std::domain_error("push-block alpha needs floating scalars");
        else
            return push_block_alpha_prob(ctx.lam, ctx.nu_bar, nu, par, a_j, q);
    }
    return S(0);
}

template <class S>
S main_equation_residual(DynKind kind, const Signature& lam, const Signature& nu, const Signature& nu_bar,
                         const S& par, const S& a_j, const S& q)
{
    const long j = long(lam.size());
    const bool alpha = is_alpha(kind);
    const S x = par * a_j;
    S lhs(0);
    auto term = [&](const Signature& lam_bar) {
        if (alpha ? !interlaces_h(lam_bar, nu_bar) : !interlaces_v(lam_bar, nu_bar))
            return;
        S coef = psi(lam, lam_bar, q);
        if (is_zero(coef))
            return;
        coef *= alpha ? phi_coef(nu_bar, lam_bar, q) : psi_prime(nu_bar, lam_bar, q);
        if (is_zero(coef))
            return;
        LevelUpdateContext ctx{lam_bar, nu_bar, lam, j};
        const long e = size(lam) - size(nu) - size(lam_bar) + size(nu_bar);
        S u;
        if (kind == DynKind::RowAlpha)
            u = row_alpha_weight(ctx, nu, par, a_j, q);
        else if (kind == DynKind::ColAlpha)
            u = col_alpha_weight(ctx, nu, par, a_j, q);
        else
            u = transition_prob(kind, ctx, nu, par, a_j, q);
        if (is_zero(u))
            return;
        if (kind != DynKind::RowAlpha && kind != DynKind::ColAlpha)
            u *= pow_int(x, e);
        lhs += u * coef;
    };
    if (j == 1)
        term(Signature{});
    else
        for_each_interlacing_below(lam, term);

    S rhs = psi(nu, nu_bar, q);
    if (!is_zero(rhs)) {
        if (alpha) {
            rhs *= phi_coef(nu, lam, q);
            if (kind == DynKind::PushBlockAlpha)
                rhs *= q_pochhammer_inf<S>(x, q);
        } else {
            rhs *= psi_prime(nu, lam, q) / (S(1) + x);
        }
    }
    return lhs - rhs;
}

template <class S>
S complemented_row_beta_prob(const LevelUpdateContext& ctx, const Signature& nu, const S& beta, const S& a_j,
                             const S& q, long S_box)
{
    const long j = ctx.j;
    LevelUpdateContext comp{complement(ctx.lam_bar, S_box, j - 1), complement(ctx.nu_bar, S_box + 1, j - 1),
                            complement(ctx.lam, S_box, j), j};
    const long e = size(ctx.lam) - size(nu) - size(ctx.lam_bar) + size(ctx.nu_bar);
    S p = row_beta_prob(comp, complement(nu, S_box + 1, j), beta, a_j, q);
    if (is_zero(p))
        return p;
    return pow_int(S(a_j * beta), -2 * e - 1) * p;
}

#define QRSK_INSTANTIATE(S)                                                                                     \
    template S transition_prob<S>(DynKind, const LevelUpdateContext&, const Signature&, const S&, const S&,      \
                                  const S&);                                                                   \
    template S main_equation_residual<S>(DynKind, const Signature&, const Signature&, const Signature&,          \
                                         const S&, const S&, const S&);                                        \
    template S complemented_row_beta_prob<S>(const LevelUpdateContext&, const Signature&, const S&, const S&,    \
                                             const S&, long);

QRSK_INSTANTIATE(Rational)
QRSK_INSTANTIATE(double)

} // namespace qrsk
