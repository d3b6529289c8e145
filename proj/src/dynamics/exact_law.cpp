#include "qrsk/dynamics.hpp"

#include <functional>
#include <stdexcept>

namespace qrsk {

template <class S>
std::map<InterlacingArray, S> exact_step_law(DynKind kind, const InterlacingArray& arr, const S& beta,
                                             const std::vector<S>& a, const S& q)
{
    if (is_alpha(kind))
        throw std::invalid_argument("exact_step_law: beta dynamics only");
    if (a.size() != std::size_t(arr.depth()))
        throw std::invalid_argument("exact_step_law: one level parameter per level");
    std::map<InterlacingArray, S> law;
    InterlacingArray next = arr;
    std::function<void(long, const S&)> rec = [&](long j, const S& w) {
        if (j > arr.depth()) {
            law[next] += w;
            return;
        }
        LevelUpdateContext ctx{j > 1 ? arr.level(j - 1) : Signature{}, j > 1 ? next.level(j - 1) : Signature{},
                               arr.level(j), j};
        for (const Signature& nu : candidate_nus(kind, arr.level(j), 0)) {
            if (j > 1 && !interlaces_h(next.level(j - 1), nu))
                continue;
            const S p = transition_prob(kind, ctx, nu, beta, a[std::size_t(j - 1)], q);
            if (is_zero(p))
                continue;
            next.level(j) = nu;
            rec(j + 1, S(w * p));
        }
        next.level(j) = arr.level(j);
    };
    rec(1, S(1));
    return law;
}

template <class S>
std::map<InterlacingArray, S> exact_array_law(DynKind kind, long n, const std::vector<S>& betas,
                                              const std::vector<S>& a, const S& q)
{
    std::map<InterlacingArray, S> cur;
    cur[InterlacingArray::zero(n)] = S(1);
    for (const S& beta : betas) {
        std::map<InterlacingArray, S> nxt;
        for (const auto& [arr, w] : cur)
            for (const auto& [to, p] : exact_step_law(kind, arr, beta, a, q))
                nxt[to] += w * p;
        cur = std::move(nxt);
    }
    return cur;
}

template std::map<InterlacingArray, Rational> exact_step_law<Rational>(DynKind, const InterlacingArray&,
                                                                       const Rational&, const std::vector<Rational>&,
                                                                       const Rational&);
template std::map<InterlacingArray, double> exact_step_law<double>(DynKind, const InterlacingArray&, const double&,
                                                                   const std::vector<double>&, const double&);
template std::map<InterlacingArray, Rational> exact_array_law<Rational>(DynKind, long, const std::vector<Rational>&,
                                                                        const std::vector<Rational>&,
                                                                        const Rational&);
template std::map<InterlacingArray, double> exact_array_law<double>(DynKind, long, const std::vector<double>&,
                                                                    const std::vector<double>&, const double&);

} // namespace qrsk
