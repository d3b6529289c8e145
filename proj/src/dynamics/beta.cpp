#include "detail.hpp"

namespace qrsk {
namespace detail {

template <class S>
BlockTable<S> row_beta_table(const LevelUpdateContext& ctx, int v, const S& q)
{
    const long j = ctx.j;
    const Signature& lam = ctx.lam;
    const Signature& nb = ctx.nu_bar;
    BlockTable<S> t;
    t.base.assign(std::size_t(j), 0);

    auto g = [&](long i) -> S { return S(1) - pow_int(q, at(lam, i) - at(nb, i) + 1); };
    auto f = [&](long k) -> S {
        long e = at(lam, k) - at(nb, k) + 1;
        if (current_fault() == Fault::RowBetaF)
            ++e;
        S num = S(1) - pow_int(q, e);
        if (k == 1)
            return num;
        return num / (S(1) - pow_int(q, at(nb, k - 1) - at(nb, k) + 1));
    };

    bool island_at_one = false;
    long i = 1;
    while (i <= j - 1) {
        if (at(nb, i) - at(ctx.lam_bar, i) != 1) {
            ++i;
            continue;
        }
        long k = i, m = i;
        while (m + 1 <= j - 1 && at(nb, m + 1) - at(ctx.lam_bar, m + 1) == 1)
            ++m;
        i = m + 1;

        Block<S> b;
        b.first = k;
        b.last = m + 1;
        const std::size_t len = std::size_t(m + 2 - k);
        if (k == 1)
            island_at_one = true;
        if (k == 1 && v == 1) {
            b.choices.emplace_back(Signature(len, 1), S(1));
        } else {
            // Exactly one particle of the island stays put.
            S fk = f(k);
            S rest = S(1) - fk;
            Signature d(len, 1);
            d[0] = 0;
            b.choices.emplace_back(d, fk);
            for (long s = k + 1; s <= m; ++s) {
                S gs = g(s);
                Signature ds(len, 1);
                ds[std::size_t(s - k)] = 0;
                b.choices.emplace_back(ds, rest * gs);
                rest *= S(1) - gs;
            }
            Signature dl(len, 1);
            dl[len - 1] = 0;
            b.choices.emplace_back(dl, rest);
        }
        t.blocks.push_back(std::move(b));
    }
    if (!island_at_one)
        t.base[0] += v;
    return t;
}

template <class S>
BlockTable<S> col_beta_table(const LevelUpdateContext& ctx, int v, const S& q)
{
    const long j = ctx.j;
    const Signature& lam = ctx.lam;
    const Signature& nb = ctx.nu_bar;
    BlockTable<S> t;
    t.base.assign(std::size_t(j), 0);

    // g'_s for s >= 2; s = 1 never needs it.
    auto gp = [&](long s) -> S { return S(1) - pow_int(q, at(nb, s - 1) - at(lam, s)); };
    auto unit = [](std::size_t len, std::size_t pos) {
        Signature d(len, 0);
        d[pos] = 1;
        return d;
    };

    long r = 0;
    for (long k = 1; k <= j - 1; ++k) {
        if (at(nb, k) - at(ctx.lam_bar, k) != 1)
            continue;
        Block<S> b;
        b.first = r + 1;
        b.last = k;
        const std::size_t len = std::size_t(k - r);
        if (r + 1 == k) {
            b.choices.emplace_back(unit(len, 0), S(1));
        } else {
            S fk = (S(1) - pow_int(q, at(nb, k - 1) - at(lam, k))) /
                   (S(1) - pow_int(q, at(nb, k - 1) - at(nb, k) + 1));
            b.choices.emplace_back(unit(len, len - 1), fk);
            S rest = S(1) - fk;
            for (long s = k - 1; s >= r + 2; --s) {
                S gs = gp(s);
                b.choices.emplace_back(unit(len, std::size_t(s - b.first)), rest * gs);
                rest *= S(1) - gs;
            }
            b.choices.emplace_back(unit(len, 0), rest);
        }
        t.blocks.push_back(std::move(b));
        r = k;
    }
    if (v == 1) {
        Block<S> b;
        b.first = r + 1;
        b.last = j;
        const std::size_t len = std::size_t(j - r);
        if (r == j - 1) {
            b.choices.emplace_back(unit(len, 0), S(1));
        } else {
            S rest(1);
            for (long s = j; s >= r + 2; --s) {
                S gs = gp(s);
                b.choices.emplace_back(unit(len, std::size_t(s - b.first)), rest * gs);
                rest *= S(1) - gs;
            }
            b.choices.emplace_back(unit(len, 0), rest);
        }
        t.blocks.push_back(std::move(b));
    }
    return t;
}

template <class S>
S evaluate_table(const BlockTable<S>& t, const Signature& lam, const Signature& nu)
{
    const std::size_t n = lam.size();
    if (nu.size() != n)
        return S(0);
    std::vector<char> covered(n, 0);
    S prob(1);
    for (const auto& b : t.blocks) {
        S sum(0);
        for (const auto& [d, p] : b.choices) {
            bool match = true;
            for (long i = b.first; i <= b.last && match; ++i)
                match = at(nu, i) - at(lam, i) == d[std::size_t(i - b.first)];
            if (match)
                sum += p;
        }
        if (is_zero(sum))
            return S(0);
        prob *= sum;
        for (long i = b.first; i <= b.last; ++i)
            covered[std::size_t(i - 1)] = 1;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!covered[i] && nu[i] - lam[i] != t.base[i])
            return S(0);
    return prob;
}

Signature sample_table(const BlockTable<double>& t, const Signature& lam, Rng& rng)
{
    Signature nu = lam;
    for (std::size_t i = 0; i < nu.size(); ++i)
        nu[i] += t.base[i];
    for (const auto& b : t.blocks) {
        std::vector<double> w;
        for (const auto& c : b.choices)
            w.push_back(c.second);
        const Signature& d = b.choices[std::size_t(sample_discrete(w, rng))].first;
        for (long i = b.first; i <= b.last; ++i)
            nu[std::size_t(i - 1)] = lam[std::size_t(i - 1)] + d[std::size_t(i - b.first)];
    }
    return nu;
}

template BlockTable<Rational> row_beta_table(const LevelUpdateContext&, int, const Rational&);
template BlockTable<double> row_beta_table(const LevelUpdateContext&, int, const double&);
template BlockTable<Rational> col_beta_table(const LevelUpdateContext&, int, const Rational&);
template BlockTable<double> col_beta_table(const LevelUpdateContext&, int, const double&);
template Rational evaluate_table(const BlockTable<Rational>&, const Signature&, const Signature&);
template double evaluate_table(const BlockTable<double>&, const Signature&, const Signature&);

} // namespace detail

namespace {

template <class S, class Table>
S beta_prob(const LevelUpdateContext& ctx, const Signature& nu, const S& beta, const S& a_j, const S& q,
            Table&& table)
{
    if (!ctx.admissible(false) || !interlaces_v(ctx.lam, nu) || nu.size() != ctx.lam.size())
        return S(0);
    const S p1 = beta * a_j / (S(1) + beta * a_j);
    S total(0);
    for (int v = 0; v <= 1; ++v) {
        S pv = v ? p1 : S(1) - p1;
        if (is_zero(pv))
            continue;
        S w = detail::evaluate_table(table(ctx, v, q), ctx.lam, nu);
        if (!is_zero(w))
            total += pv * w;
    }
    return total;
}

} // namespace

template <class S>
S row_beta_prob(const LevelUpdateContext& ctx, const Signature& nu, const S& beta, const S& a_j, const S& q)
{
    return beta_prob(ctx, nu, beta, a_j, q,
                     [](const LevelUpdateContext& c, int v, const S& qq) { return detail::row_beta_table(c, v, qq); });
}

template <class S>
S col_beta_prob(const LevelUpdateContext& ctx, const Signature& nu, const S& beta, const S& a_j, const S& q)
{
    return beta_prob(ctx, nu, beta, a_j, q,
                     [](const LevelUpdateContext& c, int v, const S& qq) { return detail::col_beta_table(c, v, qq); });
}

template Rational row_beta_prob(const LevelUpdateContext&, const Signature&, const Rational&, const Rational&,
                                const Rational&);
template double row_beta_prob(const LevelUpdateContext&, const Signature&, const double&, const double&,
                              const double&);
template Rational col_beta_prob(const LevelUpdateContext&, const Signature&, const Rational&, const Rational&,
                                const Rational&);
template double col_beta_prob(const LevelUpdateContext&, const Signature&, const double&, const double&,
                              const double&);

} // namespace qrsk
