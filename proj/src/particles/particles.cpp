#include "qrsk/particles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace qrsk {

ParticleConfig ParticleConfig::step(long n)
{
    ParticleConfig c;
    for (long i = 1; i <= n; ++i)
        c.x.push_back(-i);
    return c;
}

bool ParticleConfig::ordered() const
{
    for (std::size_t i = 1; i < x.size(); ++i)
        if (x[i - 1] <= x[i])
            return false;
    return true;
}

std::vector<long> rightmost_particles(const InterlacingArray& arr)
{
    std::vector<long> x;
    for (long i = 1; i <= arr.depth(); ++i)
        x.push_back(-arr.level(i)[0] - i);
    return x;
}

std::vector<long> leftmost_particles(const InterlacingArray& arr)
{
    std::vector<long> x;
    for (long i = 1; i <= arr.depth(); ++i)
        x.push_back(arr.level(i)[std::size_t(i - 1)] - i);
    return x;
}

namespace {

void check_sizes(const ParticleConfig& cfg, const std::vector<double>& a)
{
    if (cfg.x.size() != a.size())
        throw std::invalid_argument("particle step: one parameter per particle");
}

// Empty gaps between x_{j-1} and x_j at the start of the step.
long gap(const std::vector<long>& x, std::size_t j) { return x[j - 1] - x[j] - 1; }

} // namespace

ParticleConfig bernoulli_qpush_step(const ParticleConfig& cfg, double beta, const std::vector<double>& a, double q,
                                    Rng& rng)
{
    check_sizes(cfg, a);
    ParticleConfig out = cfg;
    ++out.t;
    bool prev = false;
    for (std::size_t j = 0; j < cfg.x.size(); ++j) {
        const double ba = beta * a[j];
        double p = ba / (1 + ba);
        if (j > 0 && prev)
            p = (ba + std::pow(q, double(gap(cfg.x, j)))) / (1 + ba);
        prev = rng.bernoulli(p);
        if (prev)
            --out.x[j];
    }
    return out;
}

ParticleConfig bernoulli_qtasep_step(const ParticleConfig& cfg, double beta, const std::vector<double>& a, double q,
                                     Rng& rng)
{
    check_sizes(cfg, a);
    ParticleConfig out = cfg;
    ++out.t;
    bool prev = true;
    for (std::size_t j = 0; j < cfg.x.size(); ++j) {
        const double ba = beta * a[j];
        double p = ba / (1 + ba);
        if (j > 0 && !prev)
            p *= 1 - std::pow(q, double(gap(cfg.x, j)));
        prev = rng.bernoulli(p);
        if (prev)
            ++out.x[j];
    }
    return out;
}

ParticleConfig geometric_qpush_step(const ParticleConfig& cfg, double alpha, const std::vector<double>& a, double q,
                                    Rng& rng)
{
    check_sizes(cfg, a);
    ParticleConfig out = cfg;
    ++out.t;
    long c = 0;
    for (std::size_t j = 0; j < cfg.x.size(); ++j) {
        long w = 0;
        if (j > 0 && c > 0)
            w = phi_sample(PhiParams<double>::inverse(q, gap(cfg.x, j), Extent::infinite(), c), rng);
        c = sample_qgeom(alpha * a[j], q, rng) + w;
        out.x[j] -= c;
    }
    return out;
}

ParticleConfig geometric_qtasep_step(const ParticleConfig& cfg, double alpha, const std::vector<double>& a,
                                     double q, Rng& rng)
{
    check_sizes(cfg, a);
    ParticleConfig out = cfg;
    ++out.t;
    for (std::size_t j = 0; j < cfg.x.size(); ++j) {
        const Extent g = j == 0 ? Extent::infinite() : Extent::finite(gap(cfg.x, j));
        out.x[j] += phi_sample(PhiParams<double>::direct(q, alpha * a[j], 0.0, g), rng);
    }
    return out;
}

double geometric_qpush_prob(const std::vector<long>& x, const std::vector<long>& y, double alpha,
                            const std::vector<double>& a, double q)
{
    if (x.size() != y.size() || x.size() != a.size())
        throw std::invalid_argument("geometric_qpush_prob: size mismatch");
    double p = 1;
    long c = 0;
    for (std::size_t j = 0; j < x.size() && p > 0; ++j) {
        const long d = x[j] - y[j];
        if (d < 0)
            return 0;
        double s = 0;
        if (j == 0 || c == 0) {
            s = qgeom_pmf(alpha * a[j], q, d);
        } else {
            const auto split = PhiParams<double>::inverse(q, gap(x, j), Extent::infinite(), c);
            for (long w = 0; w <= std::min(c, d); ++w)
                s += phi_weight(split, w) * qgeom_pmf(alpha * a[j], q, d - w);
        }
        p *= s;
        c = d;
    }
    return p;
}

double geometric_qtasep_prob(const std::vector<long>& x, const std::vector<long>& y, double alpha,
                             const std::vector<double>& a, double q)
{
    if (x.size() != y.size() || x.size() != a.size())
        throw std::invalid_argument("geometric_qtasep_prob: size mismatch");
    double p = 1;
    for (std::size_t j = 0; j < x.size() && p > 0; ++j) {
        const long d = y[j] - x[j];
        if (d < 0)
            return 0;
        if (j == 0) {
            p *= qgeom_pmf(alpha * a[j], q, d);
        } else {
            const long g = gap(x, j);
            if (d > g)
                return 0;
            p *= phi_weight(PhiParams<double>::direct(q, alpha * a[j], 0.0, Extent::finite(g)), d);
        }
    }
    return p;
}

template <class S>
ConfigLaw<S> bernoulli_step_law(ParticleSystem system, const std::vector<long>& x, const S& beta,
                                const std::vector<S>& a, const S& q)
{
    if (system == ParticleSystem::TwoPart)
        throw std::invalid_argument("bernoulli_step_law: TwoPart is a composition");
    if (x.size() != a.size())
        throw std::invalid_argument("bernoulli_step_law: one parameter per particle");
    const bool push = system == ParticleSystem::BernoulliPush;
    ConfigLaw<S> law;
    std::vector<long> y = x;
    std::function<void(std::size_t, bool, const S&)> rec = [&](std::size_t j, bool prev, const S& w) {
        if (j == x.size()) {
            law[y] += w;
            return;
        }
        const S ba = beta * a[j];
        S p = ba / (S(1) + ba);
        if (j > 0 && push && prev)
            p = (ba + pow_int(q, gap(x, j))) / (S(1) + ba);
        if (j > 0 && !push && !prev)
            p *= S(1) - pow_int(q, gap(x, j));
        const S stay = S(1) - p;
        if (!is_zero(stay))
            rec(j + 1, false, S(w * stay));
        if (!is_zero(p)) {
            y[j] += push ? -1 : 1;
            rec(j + 1, true, S(w * p));
            y[j] = x[j];
        }
    };
    rec(0, !push, S(1));
    return law;
}

namespace {

template <class S>
ConfigLaw<S> evolve(const ConfigLaw<S>& start, ParticleSystem system, long steps, const S& beta,
                    const std::vector<S>& a, const S& q)
{
    ConfigLaw<S> cur = start;
    for (long s = 0; s < steps; ++s) {
        ConfigLaw<S> next;
        for (const auto& [x, w] : cur)
            for (const auto& [y, p] : bernoulli_step_law(system, x, beta, a, q))
                next[y] += w * p;
        cur = std::move(next);
    }
    return cur;
}

} // namespace

template <class S>
ConfigLaw<S> exact_trajectory_distribution(ParticleSystem system, long n, long T, const TrajectoryParams<S>& par)
{
    ConfigLaw<S> law;
    law[ParticleConfig::step(n).x] = S(1);
    if (system != ParticleSystem::TwoPart) {
        if (par.a.size() != std::size_t(n))
            throw std::invalid_argument("exact_trajectory_distribution: one parameter per particle");
        return evolve(law, system, T, par.beta, par.a, par.q);
    }
    const std::vector<S> ones(std::size_t(n), S(1));
    if (par.push_first) {
        law = evolve(law, ParticleSystem::BernoulliPush, par.push_steps, par.beta, ones, par.q);
        return evolve(law, ParticleSystem::BernoulliTasep, par.tasep_steps, par.beta, ones, par.q);
    }
    law = evolve(law, ParticleSystem::BernoulliTasep, par.tasep_steps, par.beta, ones, par.q);
    return evolve(law, ParticleSystem::BernoulliPush, par.push_steps, par.beta, ones, par.q);
}

template <class S>
bool coupling_check(long n, long T, const S& beta, const std::vector<S>& a, const S& q)
{
    if (is_zero(beta))
        throw std::invalid_argument("coupling_check: beta must be positive");
    TrajectoryParams<S> push{beta, a, q};
    TrajectoryParams<S> tasep{S(1) / beta, {}, q};
    for (const S& ai : a)
        tasep.a.push_back(S(1) / ai);
    ConfigLaw<S> shifted;
    for (const auto& [x, w] : exact_trajectory_distribution(ParticleSystem::BernoulliPush, n, T, push)) {
        std::vector<long> y = x;
        for (long& yi : y)
            yi += T;
        shifted[y] += w;
    }
    const ConfigLaw<S> other = exact_trajectory_distribution(ParticleSystem::BernoulliTasep, n, T, tasep);
    if (shifted.size() != other.size())
        return false;
    for (const auto& [x, w] : shifted) {
        auto it = other.find(x);
        if (it == other.end())
            return false;
        if constexpr (ScalarTraits<S>::exact) {
            if (w != it->second)
                return false;
        } else if (std::abs(w - it->second) > 1e-12) {
            return false;
        }
    }
    return true;
}

void write_trajectory_csv(std::ostream& os, const std::vector<ParticleConfig>& path)
{
    os << "t,i,x\n";
    for (const auto& c : path)
        for (std::size_t i = 0; i < c.x.size(); ++i)
            os << c.t << ',' << i + 1 << ',' << c.x[i] << '\n';
}

#define QRSK_INSTANTIATE(S)                                                                                     \
    template ConfigLaw<S> bernoulli_step_law<S>(ParticleSystem, const std::vector<long>&, const S&,             \
                                                const std::vector<S>&, const S&);                              \
    template ConfigLaw<S> exact_trajectory_distribution<S>(ParticleSystem, long, long,                          \
                                                           const TrajectoryParams<S>&);                        \
    template bool coupling_check<S>(long, long, const S&, const std::vector<S>&, const S&);

QRSK_INSTANTIATE(Rational)
QRSK_INSTANTIATE(double)

} // namespace qrsk
