#include "qrsk/polymers.hpp"

#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/inverse_gamma.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace qrsk {

double sample_gamma(double theta, Rng& rng)
{
    if (!(theta > 0))
        throw std::invalid_argument("sample_gamma: theta must be positive");
    std::gamma_distribution<double> g(theta, 1.0);
    return g(rng);
}

double sample_inverse_gamma(double theta, Rng& rng) { return 1.0 / sample_gamma(theta, rng); }

PolymerEnv sample_polymer_env(PolymerMode mode, const std::vector<double>& thetas,
                              const std::vector<double>& theta_hats, Rng& rng)
{
    PolymerEnv env;
    env.mode = mode;
    for (double th : theta_hats) {
        std::vector<double> col;
        for (double t : thetas) {
            if (!(t + th > 0))
                throw std::invalid_argument("sample_polymer_env: need theta_j + theta_hat_s > 0");
            col.push_back(mode == PolymerMode::LogGamma ? sample_inverse_gamma(t + th, rng)
                                                        : sample_gamma(t + th, rng));
        }
        env.weights.push_back(std::move(col));
    }
    return env;
}

RealArray polymer_row_array(const PolymerEnv& env)
{
    RealArray z(env.height());
    for (const auto& col : env.weights)
        z = grsk_row_insert(z, col);
    return z;
}

RealArray polymer_col_array(const PolymerEnv& env)
{
    RealArray y(env.height());
    for (const auto& col : env.weights)
        y = grsk_col_insert(y, col);
    return y;
}

double ks_statistic(std::vector<double> x, std::vector<double> y)
{
    if (x.empty() || y.empty())
        throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double nx = double(x.size()), ny = double(y.size());
    std::size_t i = 0, j = 0;
    double d = 0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] == v)
            ++i;
        while (j < y.size() && y[j] == v)
            ++j;
        d = std::max(d, std::abs(double(i) / nx - double(j) / ny));
    }
    return d;
}

namespace {

template <class Cdf>
double ks_one_sample(std::vector<double> x, Cdf cdf)
{
    if (x.empty())
        throw std::invalid_argument("ks: empty sample");
    std::sort(x.begin(), x.end());
    const double n = double(x.size());
    double d = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = cdf(x[i]);
        d = std::max({d, double(i + 1) / n - f, f - double(i) / n});
    }
    return d;
}

} // namespace

double ks_inverse_gamma(std::vector<double> x, double theta)
{
    const boost::math::inverse_gamma_distribution<double> dist(theta, 1.0);
    return ks_one_sample(std::move(x), [&](double v) { return v > 0 ? boost::math::cdf(dist, v) : 0.0; });
}

double ks_gamma(std::vector<double> x, double theta)
{
    const boost::math::gamma_distribution<double> dist(theta, 1.0);
    return ks_one_sample(std::move(x), [&](double v) { return v > 0 ? boost::math::cdf(dist, v) : 0.0; });
}

void ScalingConfig::validate() const
{
    if (kind != DynKind::RowAlpha && kind != DynKind::ColAlpha)
        throw std::invalid_argument("scaling experiment: kind must be row-alpha or col-alpha");
    if (n < 1 || t < 1)
        throw std::invalid_argument("scaling experiment: need n, t >= 1");
    if (long(thetas.size()) != n || long(theta_hats.size()) != t)
        throw std::invalid_argument("scaling experiment: need n thetas and t theta_hats");
    for (double a : thetas)
        for (double b : theta_hats)
            if (!(a + b > 0))
                throw std::invalid_argument("scaling experiment: need theta_j + theta_hat_s > 0");
    if (eps_list.empty())
        throw std::invalid_argument("scaling experiment: empty eps list");
    for (double e : eps_list)
        if (!(e > 0) || !std::isfinite(e))
            throw std::invalid_argument("scaling experiment: eps must be positive");
    if (replicas < 2 || bootstrap < 0)
        throw std::invalid_argument("scaling experiment: need at least 2 replicas");
}

std::vector<std::pair<long, long>> scaled_entries(DynKind kind, long n, long t)
{
    std::vector<std::pair<long, long>> out;
    for (long j = 1; j <= n; ++j)
        for (long k = 1; k <= j; ++k) {
            const bool ok = kind == DynKind::RowAlpha ? k <= t : j - k + 1 <= t;
            if (ok)
                out.push_back({j, k});
        }
    return out;
}

double scaled_log_ratio(DynKind kind, const InterlacingArray& arr, long j, long k, long t, double eps)
{
    const Signature& lam = arr.level(j);
    const double log_eps = std::log(eps);
    if (kind == DynKind::RowAlpha)
        return double(t + j - 2 * k + 1) * log_eps + eps * double(lam[std::size_t(k - 1)]);
    if (kind == DynKind::ColAlpha)
        return -double(t - j + 2 * k - 1) * log_eps - eps * double(lam[std::size_t(j - k)]);
    throw std::invalid_argument("scaled_log_ratio: kind must be row-alpha or col-alpha");
}

namespace {

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream)
{
    std::uint64_t s = seed ^ (stream * 0xd1b54a32d192ed03ULL);
    return splitmix64(s);
}

template <class Fn>
void parallel_for(long count, long threads, Fn fn)
{
    long nt = threads > 0 ? threads : long(std::thread::hardware_concurrency());
    nt = std::max(1L, std::min(nt, count));
    if (nt == 1) {
        for (long r = 0; r < count; ++r)
            fn(r);
        return;
    }
    std::vector<std::thread> pool;
    for (long w = 0; w < nt; ++w)
        pool.emplace_back([&, w] {
            for (long r = w; r < count; r += nt)
                fn(r);
        });
    for (auto& th : pool)
        th.join();
}

std::vector<double> quantiles(std::vector<double> x)
{
    std::sort(x.begin(), x.end());
    std::vector<double> out;
    for (double p : {0.1, 0.5, 0.9}) {
        std::size_t i = std::size_t(std::ceil(p * double(x.size())));
        out.push_back(x[std::min(x.size() - 1, i == 0 ? 0 : i - 1)]);
    }
    return out;
}

double mean(const std::vector<double>& x)
{
    double s = 0;
    for (double v : x)
        s += v;
    return s / double(x.size());
}

double covariance(const std::vector<double>& x, const std::vector<double>& y)
{
    const double mx = mean(x), my = mean(y);
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += (x[i] - mx) * (y[i] - my);
    return s / double(x.size() - 1);
}

double bootstrap_ks_sd(const std::vector<double>& x, const std::vector<double>& y, long rounds, Rng& rng)
{
    if (rounds < 2)
        return 0;
    std::vector<double> stats;
    std::vector<double> bx(x.size()), by(y.size());
    std::uniform_int_distribution<std::size_t> ix(0, x.size() - 1), iy(0, y.size() - 1);
    for (long b = 0; b < rounds; ++b) {
        for (auto& v : bx)
            v = x[ix(rng)];
        for (auto& v : by)
            v = y[iy(rng)];
        stats.push_back(ks_statistic(bx, by));
    }
    const double m = mean(stats);
    double s = 0;
    for (double v : stats)
        s += (v - m) * (v - m);
    return std::sqrt(s / double(rounds - 1));
}

// Per replica: values for every entry at the final time, then the (1,1)
// entry at times 1 and 2.
struct Samples {
    std::vector<std::vector<double>> entry;
    std::vector<double> first, second;
};

Samples polymer_side(const ScalingConfig& cfg, const std::vector<std::pair<long, long>>& entries)
{
    const bool row = cfg.kind == DynKind::RowAlpha;
    const std::uint64_t base = stream_seed(cfg.seed, 0);
    Samples out;
    out.entry.assign(entries.size(), std::vector<double>(std::size_t(cfg.replicas)));
    out.first.resize(std::size_t(cfg.replicas));
    out.second.resize(std::size_t(cfg.replicas));
    parallel_for(cfg.replicas, cfg.threads, [&](long r) {
        Rng rng(base + std::uint64_t(r));
        const PolymerEnv env = sample_polymer_env(row ? PolymerMode::LogGamma : PolymerMode::StrictWeak,
                                                  cfg.thetas, cfg.theta_hats, rng);
        RealArray arr(cfg.n);
        for (long s = 1; s <= cfg.t; ++s) {
            const auto& col = env.weights[std::size_t(s - 1)];
            arr = row ? grsk_row_insert(arr, col) : grsk_col_insert(arr, col);
            if (s == 1)
                out.first[std::size_t(r)] = std::log(arr.at(1, 1));
            if (s == 2)
                out.second[std::size_t(r)] = std::log(arr.at(1, 1));
        }
        for (std::size_t e = 0; e < entries.size(); ++e)
            out.entry[e][std::size_t(r)] = std::log(arr.at(entries[e].first, entries[e].second));
    });
    return out;
}

Samples prelimit_side(const ScalingConfig& cfg, const std::vector<std::pair<long, long>>& entries, double eps,
                      std::uint64_t stream)
{
    const std::uint64_t base = stream_seed(cfg.seed, stream);
    const double q = std::exp(-eps);
    std::vector<double> a;
    for (double th : cfg.thetas)
        a.push_back(std::exp(-th * eps));
    Samples out;
    out.entry.assign(entries.size(), std::vector<double>(std::size_t(cfg.replicas)));
    out.first.resize(std::size_t(cfg.replicas));
    out.second.resize(std::size_t(cfg.replicas));
    parallel_for(cfg.replicas, cfg.threads, [&](long r) {
        Rng rng(base + std::uint64_t(r));
        InterlacingArray arr = InterlacingArray::zero(cfg.n);
        for (long s = 1; s <= cfg.t; ++s) {
            const double alpha = std::exp(-cfg.theta_hats[std::size_t(s - 1)] * eps);
            arr = sample_step(cfg.kind, arr, alpha, a, q, rng).array;
            if (s == 1)
                out.first[std::size_t(r)] = scaled_log_ratio(cfg.kind, arr, 1, 1, 1, eps);
            if (s == 2)
                out.second[std::size_t(r)] = scaled_log_ratio(cfg.kind, arr, 1, 1, 2, eps);
        }
        for (std::size_t e = 0; e < entries.size(); ++e)
            out.entry[e][std::size_t(r)] =
                scaled_log_ratio(cfg.kind, arr, entries[e].first, entries[e].second, cfg.t, eps);
    });
    return out;
}

} // namespace

ScalingReport scaling_limit_experiment(const ScalingConfig& cfg)
{
    cfg.validate();
    ScalingReport rep;
    rep.config = cfg;
    const auto entries = scaled_entries(cfg.kind, cfg.n, cfg.t);
    const Samples poly = polymer_side(cfg, entries);
    for (std::size_t e = 0; e < cfg.eps_list.size(); ++e) {
        const double eps = cfg.eps_list[e];
        if (eps > 0.2) {
            std::ostringstream msg;
            msg << "eps = " << eps << " is outside the asymptotic regime (eps > 0.2)";
            rep.warnings.push_back(msg.str());
            std::cerr << "warning: " << msg.str() << '\n';
        }
        const Samples pre = prelimit_side(cfg, entries, eps, 1 + e);
        Rng boot(stream_seed(cfg.seed, 1000 + e));
        ScalingRun run;
        run.eps = eps;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            ScalingEntry en;
            en.j = entries[i].first;
            en.k = entries[i].second;
            en.t = cfg.t;
            en.mean_prelimit = mean(pre.entry[i]);
            en.mean_polymer = mean(poly.entry[i]);
            en.quantiles_prelimit = quantiles(pre.entry[i]);
            en.quantiles_polymer = quantiles(poly.entry[i]);
            en.ks = ks_statistic(pre.entry[i], poly.entry[i]);
            en.ks_noise = bootstrap_ks_sd(pre.entry[i], poly.entry[i], cfg.bootstrap, boot);
            if (cfg.keep_samples) {
                en.samples_prelimit = pre.entry[i];
                en.samples_polymer = poly.entry[i];
            }
            run.entries.push_back(std::move(en));
        }
        if (cfg.t >= 2) {
            run.two_time_cov_prelimit = covariance(pre.first, pre.second);
            run.two_time_cov_polymer = covariance(poly.first, poly.second);
        }
        rep.runs.push_back(std::move(run));
    }
    return rep;
}

std::vector<ComplementEntry> polymer_complement_ks(long n, long t, const std::vector<double>& thetas,
                                                   const std::vector<double>& theta_hats, long replicas,
                                                   std::uint64_t seed)
{
    if (long(thetas.size()) != n || long(theta_hats.size()) != t || replicas < 1)
        throw std::invalid_argument("polymer_complement_ks: bad sizes");
    std::vector<ComplementEntry> out;
    std::vector<std::pair<long, long>> cells;
    for (long j = 1; j <= n; ++j)
        for (long k = 1; k <= std::min(t, j); ++k)
            cells.push_back({j, k});
    std::vector<std::vector<double>> r(cells.size()), l(cells.size());
    Rng rr(stream_seed(seed, 2000)), rl(stream_seed(seed, 2001));
    for (long rep = 0; rep < replicas; ++rep) {
        const RealArray z = polymer_row_array(sample_polymer_env(PolymerMode::LogGamma, thetas, theta_hats, rr));
        const RealArray y = polymer_col_array(sample_polymer_env(PolymerMode::StrictWeak, thetas, theta_hats, rl));
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const auto [j, k] = cells[c];
            r[c].push_back(z.at(j, k));
            l[c].push_back(1.0 / y.at(j, j - k + 1));
        }
    }
    for (std::size_t c = 0; c < cells.size(); ++c)
        out.push_back({cells[c].first, cells[c].second, ks_statistic(r[c], l[c])});
    return out;
}

} // namespace qrsk
