#include "qrsk/moments.hpp"
#include "qrsk/particles.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace qrsk {

namespace {

template <class S, class Law>
S moment_of(const Law& law, const std::vector<long>& n, const S& q)
{
    S total(0);
    for (const auto& [x, w] : law) {
        S term = w;
        for (long ni : n) {
            if (ni == 0) {
                term = S(0);
                break;
            }
            term *= pow_int(q, x[std::size_t(ni - 1)] + ni);
        }
        total += term;
    }
    return total;
}

} // namespace

Rational exact_qmoment(const MomentQuery& qr)
{
    qr.validate();
    const long N = long(qr.a.size());
    TrajectoryParams<Rational> par{qr.par, qr.a, qr.q, qr.tasep_steps, qr.push_steps, qr.push_first};
    switch (qr.system) {
    case MomentSystem::BernoulliPush:
        return moment_of(exact_trajectory_distribution(ParticleSystem::BernoulliPush, N, qr.t, par), qr.n, qr.q);
    case MomentSystem::TwoPart:
        return moment_of(exact_trajectory_distribution(ParticleSystem::TwoPart, N, 0, par), qr.n, qr.q);
    case MomentSystem::GeometricPush: break;
    }
    throw std::invalid_argument("exact_qmoment: the geometric system has no finite law");
}

namespace {

std::map<std::vector<long>, double> geometric_law(long N, long t, double alpha, const std::vector<double>& a,
                                                  double q, long cap)
{
    // One-step law with cached q-geometric and splitting weights.
    std::vector<std::vector<double>> qg(static_cast<std::size_t>(N));
    for (long i = 0; i < N; ++i)
        for (long d = 0; d <= cap; ++d)
            qg[std::size_t(i)].push_back(qgeom_pmf(alpha * a[std::size_t(i)], q, d));
    std::map<std::pair<long, long>, std::vector<double>> split;
    auto split_of = [&](long g, long c) -> const std::vector<double>& {
        auto it = split.find({g, c});
        if (it != split.end())
            return it->second;
        std::vector<double> w;
        const auto par = PhiParams<double>::inverse(q, g, Extent::infinite(), c);
        for (long s = 0; s <= c; ++s)
            w.push_back(phi_weight(par, s));
        return split.emplace(std::make_pair(g, c), std::move(w)).first->second;
    };

    std::map<std::vector<long>, double> cur;
    cur[ParticleConfig::step(N).x] = 1.0;
    for (long s = 0; s < t; ++s) {
        std::map<std::vector<long>, double> next;
        for (const auto& [x, w0] : cur) {
            std::vector<long> y = x;
            std::function<void(long, long, double)> rec = [&](long i, long c, double w) {
                if (i == N) {
                    next[y] += w;
                    return;
                }
                for (long d = 0; d <= cap; ++d) {
                    double p = 0;
                    if (i == 0 || c == 0) {
                        p = qg[std::size_t(i)][std::size_t(d)];
                    } else {
                        const auto& sp = split_of(x[std::size_t(i - 1)] - x[std::size_t(i)] - 1, c);
                        for (long u = 0; u <= std::min(c, d); ++u)
                            p += sp[std::size_t(u)] * qg[std::size_t(i)][std::size_t(d - u)];
                    }
                    if (p <= 0)
                        continue;
                    y[std::size_t(i)] = x[std::size_t(i)] - d;
                    rec(i + 1, d, w * p);
                }
                y[std::size_t(i)] = x[std::size_t(i)];
            };
            rec(0, 0, w0);
        }
        cur = std::move(next);
    }
    return cur;
}

} // namespace

double geometric_qmoment_bruteforce(const MomentQuery& qr, long cap, bool* converged)
{
    qr.validate();
    if (qr.system != MomentSystem::GeometricPush)
        throw std::invalid_argument("geometric_qmoment_bruteforce: geometric system only");
    const long N = long(qr.a.size());
    if (N > 2 || qr.t > 2)
        throw std::invalid_argument("geometric_qmoment_bruteforce: N <= 2 and t <= 2");
    std::vector<double> a;
    for (const auto& ai : qr.a)
        a.push_back(ai.get_d());
    const double q = qr.q.get_d();
    const double alpha = qr.par.get_d();
    const double lo = moment_of(geometric_law(N, qr.t, alpha, a, q, cap), qr.n, q);
    const double hi = moment_of(geometric_law(N, qr.t, alpha, a, q, 2 * cap), qr.n, q);
    if (converged)
        *converged = std::isfinite(hi) && std::abs(hi - lo) <= 1e-9 * std::abs(hi);
    return hi;
}

} // namespace qrsk
