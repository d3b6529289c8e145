#include "qrsk/dynamics.hpp"
#include "qrsk/particles.hpp"
#include "support.hpp"

#include <doctest.h>

#include <sstream>

using namespace qrsk;
using qtest::rat;

namespace {

using R = Rational;

// One-step law of an alpha dynamics on whole arrays, truncated to parts <= top + extra.
std::map<InterlacingArray, double> alpha_step_law(DynKind kind, const InterlacingArray& arr, double alpha,
                                                  const std::vector<double>& a, double q, long extra)
{
    std::map<InterlacingArray, double> out;
    InterlacingArray cur = arr;
    std::function<void(long, double)> rec = [&](long j, double w) {
        if (j > arr.depth()) {
            out[cur] += w;
            return;
        }
        LevelUpdateContext ctx{j > 1 ? arr.level(j - 1) : Signature{}, j > 1 ? cur.level(j - 1) : Signature{},
                               arr.level(j), j};
        for (const auto& nu : candidate_nus(kind, ctx.lam, part(ctx.lam, 1) + extra)) {
            const double p = transition_prob<double>(kind, ctx, nu, alpha, a[std::size_t(j - 1)], q);
            if (w * p < 1e-18)
                continue;
            cur.level(j) = nu;
            rec(j + 1, w * p);
        }
        cur.level(j) = arr.level(j);
    };
    rec(1, 1.0);
    return out;
}

template <class F>
void check_sampler(const std::vector<long>& x, F step, const std::function<double(const std::vector<long>&)>& prob,
                   long draws, std::uint64_t seed)
{
    Rng rng(seed);
    std::map<std::vector<long>, long> hits;
    ParticleConfig c{x, 0};
    for (long i = 0; i < draws; ++i)
        ++hits[step(c, rng).x];
    double covered = 0;
    std::vector<std::pair<long, double>> cells;
    for (const auto& [y, n] : hits) {
        const double p = prob(y);
        covered += p;
        CHECK(p > 0);
        cells.emplace_back(n, p);
    }
    CHECK_MESSAGE(qtest::failing_cells(cells, draws).empty(), "seed " << seed);
    CHECK(covered > 0.99);
}

} // namespace

TEST_CASE("Bernoulli q-PushTASEP step rules")
{
    const R q = rat(1, 2), b = rat(1, 3);
    const std::vector<R> a = {1, rat(1, 2)};
    // adjacent particles: a jump of x_1 always pushes x_2
    const auto law = bernoulli_step_law(ParticleSystem::BernoulliPush, {-1, -2}, b, a, q);
    CHECK(law.count({-2, -2}) == 0);
    CHECK(law.at({-2, -3}) == b / (1 + b));
    R total(0);
    for (const auto& [y, w] : law)
        total += w;
    CHECK(total == 1);
    // with a gap the push succeeds with probability (beta a + q^gap) / (1 + beta a)
    const auto spaced = bernoulli_step_law(ParticleSystem::BernoulliPush, {0, -3}, b, a, q);
    const R ba = b * a[1];
    CHECK(spaced.at({-1, -4}) == b / (1 + b) * (ba + q * q) / (1 + ba));

    Rng rng(1);
    ParticleConfig c = ParticleConfig::step(3);
    for (int i = 0; i < 20; ++i)
        CHECK(bernoulli_qpush_step(c, 0.0, {1, 1, 1}, 0.5, rng).x == c.x);
}

TEST_CASE("Bernoulli q-TASEP step rules")
{
    const R q = rat(1, 2), b = rat(2, 3);
    const std::vector<R> a = {rat(3, 4), 1};
    const auto law = bernoulli_step_law(ParticleSystem::BernoulliTasep, {0, -1}, b, a, q);
    R first(0);
    for (const auto& [y, w] : law) {
        if (y[0] == 1)
            first += w;
        // a blocked particle stays unless its predecessor moved
        if (y[0] == 0)
            CHECK(y[1] == -1);
    }
    CHECK(first == b * a[0] / (1 + b * a[0]));
    // q = 0: ordinary blocking
    const auto law0 = bernoulli_step_law(ParticleSystem::BernoulliTasep, {0, -3}, b, a, R(0));
    CHECK(law0.at({0, -2}) == 1 / (1 + b * a[0]) * b / (1 + b));
}

TEST_CASE("exact trajectory laws")
{
    const R q = rat(1, 2), b = rat(1, 3), a1 = rat(3, 5);
    const auto one = exact_trajectory_distribution(ParticleSystem::BernoulliPush, 1, 1, TrajectoryParams<R>{b, {a1}, q});
    CHECK(one.size() == 2);
    CHECK(one.at({-2}) == b * a1 / (1 + b * a1));
    CHECK(one.at({-1}) == 1 / (1 + b * a1));
    for (auto sys : {ParticleSystem::BernoulliPush, ParticleSystem::BernoulliTasep}) {
        const auto law = exact_trajectory_distribution(sys, 2, 2, TrajectoryParams<R>{b, {1, rat(1, 2)}, q});
        R total(0);
        for (const auto& [x, w] : law) {
            total += w;
            CHECK(x[0] > x[1]);
        }
        CHECK(total == 1);
    }
}

TEST_CASE("rightmost particles of row beta follow the Bernoulli q-PushTASEP")
{
    const R q = rat(2, 5), b = rat(1, 2);
    const std::vector<R> a_all = {1, rat(2, 3), rat(3, 4)};
    for (long n = 1; n <= 3; ++n)
        for (long t = 1; t <= 3; ++t) {
            const std::vector<R> a(a_all.begin(), a_all.begin() + n);
            ConfigLaw<R> marginal;
            for (const auto& [arr, w] : exact_array_law<R>(DynKind::RowBeta, n, std::vector<R>(std::size_t(t), b), a, q))
                marginal[rightmost_particles(arr)] += w;
            CHECK(marginal == exact_trajectory_distribution(ParticleSystem::BernoulliPush, n, t, TrajectoryParams<R>{b, a, q}));
        }
}

TEST_CASE("one-step marginals of the alpha dynamics")
{
    Rng rng(3);
    const double alpha = 0.4, q = 0.5;
    for (int it = 0; it < 6; ++it) {
        const long n = 2 + it % 2;
        const auto arr = random_array(n, 3, rng);
        std::vector<double> a;
        for (long j = 0; j < n; ++j)
            a.push_back(0.5 + 0.1 * double(j + it));
        // column alpha: leftmost particles make a geometric q-TASEP step
        std::map<std::vector<long>, double> left, right;
        for (const auto& [next, w] : alpha_step_law(DynKind::ColAlpha, arr, alpha, a, q, 30))
            left[leftmost_particles(next)] += w;
        for (const auto& [y, w] : left)
            CHECK(std::abs(w - geometric_qtasep_prob(leftmost_particles(arr), y, alpha, a, q)) < 1e-9);
        // row alpha: rightmost particles make a geometric q-PushTASEP step
        for (const auto& [next, w] : alpha_step_law(DynKind::RowAlpha, arr, alpha, a, q, 30))
            right[rightmost_particles(next)] += w;
        for (const auto& [y, w] : right)
            CHECK(std::abs(w - geometric_qpush_prob(rightmost_particles(arr), y, alpha, a, q)) < 1e-9);
    }
}

TEST_CASE("geometric q-PushTASEP pushing law")
{
    const double q = 0.5, alpha = 0.3;
    const std::vector<double> a = {1.0, 0.8};
    // gap 7, predecessor moved by 4: the push is phi_{1/q, q^7, 0}(. | 4) convolved with the own jump
    const std::vector<long> x = {0, -8};
    const auto split = PhiParams<double>::inverse(q, 7, Extent::infinite(), 4);
    const double first = qgeom_pmf(alpha, q, 4);
    for (long d = 0; d <= 8; ++d) {
        double conv = 0;
        for (long w = 0; w <= std::min(4L, d); ++w)
            conv += phi_weight(split, w) * qgeom_pmf(alpha * 0.8, q, d - w);
        CHECK(qtest::rel_err(geometric_qpush_prob(x, {-4, -8 - d}, alpha, a, q), first * conv) < 1e-13);
    }
    // predecessor stayed: no push
    for (long d = 0; d <= 4; ++d)
        CHECK(qtest::rel_err(geometric_qpush_prob(x, {0, -8 - d}, alpha, a, q),
                             qgeom_pmf(alpha, q, 0) * qgeom_pmf(alpha * 0.8, q, d)) < 1e-13);
    // gap 2 and a move of 4 force a push of at least 2
    const std::vector<long> tight = {0, -3};
    CHECK(geometric_qpush_prob(tight, {-4, -3}, alpha, a, q) == 0.0);
    CHECK(geometric_qpush_prob(tight, {-4, -4}, alpha, a, q) == 0.0);
    CHECK(geometric_qpush_prob(tight, {-4, -5}, alpha, a, q) > 0.0);
}

TEST_CASE("geometric q-TASEP jump law")
{
    const double q = 0.5, alpha = 0.6;
    const std::vector<double> a = {1.0, 0.5};
    // blocked particle cannot move
    CHECK(geometric_qtasep_prob({0, -1}, {0, 0}, alpha, a, q) == 0.0);
    CHECK(geometric_qtasep_prob({0, -1}, {2, -1}, alpha, a, q) == qgeom_pmf(alpha, q, 2));
    for (long d = 0; d <= 5; ++d)
        CHECK(geometric_qtasep_prob({0, -10}, {d, -10}, alpha, a, q) ==
              qgeom_pmf(alpha, q, d) * phi_weight(PhiParams<double>::direct(q, 0.3, 0.0, Extent::finite(9)), 0));
}

TEST_CASE("samplers agree with the one-step laws")
{
    const double q = 0.45;
    const std::vector<double> a = {1.0, 0.7, 0.9};
    const std::vector<long> x = {2, 0, -1};
    const long draws = 100000;
    const std::vector<R> ar = {1, rat(7, 10), rat(9, 10)};
    const R qr = rat(9, 20), br = rat(3, 5);
    for (auto sys : {ParticleSystem::BernoulliPush, ParticleSystem::BernoulliTasep}) {
        const auto law = bernoulli_step_law(sys, x, br, ar, qr);
        auto step = [&](const ParticleConfig& c, Rng& rng) {
            return sys == ParticleSystem::BernoulliPush ? bernoulli_qpush_step(c, 0.6, a, q, rng)
                                                        : bernoulli_qtasep_step(c, 0.6, a, q, rng);
        };
        check_sampler(x, step, [&](const std::vector<long>& y) { return law.count(y) ? law.at(y).get_d() : 0.0; },
                      draws, 17 + int(sys));
    }
    check_sampler(
        x, [&](const ParticleConfig& c, Rng& rng) { return geometric_qpush_step(c, 0.5, a, q, rng); },
        [&](const std::vector<long>& y) { return geometric_qpush_prob(x, y, 0.5, a, q); }, draws, 5);
    check_sampler(
        x, [&](const ParticleConfig& c, Rng& rng) { return geometric_qtasep_step(c, 0.5, a, q, rng); },
        [&](const std::vector<long>& y) { return geometric_qtasep_prob(x, y, 0.5, a, q); }, draws, 6);
}

TEST_CASE("property: ordering and the a priori bound")
{
    Rng rng(21);
    const std::vector<double> a = {1.0, 0.5, 0.8, 0.9};
    for (int run = 0; run < 20; ++run) {
        ParticleConfig p = ParticleConfig::step(4), t = p, gp = p, gt = p;
        const double q = rng.uniform() * 0.9;
        for (long s = 1; s <= 30; ++s) {
            p = bernoulli_qpush_step(p, 0.8, a, q, rng);
            t = bernoulli_qtasep_step(t, 0.8, a, q, rng);
            gp = geometric_qpush_step(gp, 0.5, a, q, rng);
            gt = geometric_qtasep_step(gt, 0.5, a, q, rng);
            CHECK(p.ordered());
            CHECK(t.ordered());
            CHECK(gp.ordered());
            CHECK(gt.ordered());
            for (std::size_t i = 0; i < 4; ++i) {
                CHECK(p.x[i] + long(i) + 1 >= -s);
                CHECK(t.x[i] + long(i) + 1 <= s);
            }
        }
    }
}

TEST_CASE("PushTASEP and TASEP coupling")
{
    CHECK(coupling_check<R>(1, 3, rat(2, 7), {rat(3, 4)}, rat(1, 2)));
    CHECK(coupling_check<R>(2, 2, rat(1, 3), {1, 1}, rat(1, 2)));
    CHECK(coupling_check<R>(3, 3, rat(1, 3), {1, rat(2, 3), rat(5, 4)}, rat(1, 2)));
    CHECK(coupling_check<R>(3, 2, rat(3, 2), {1, rat(1, 2), 1}, R(0)));
    CHECK(coupling_check<double>(2, 2, 0.4, {1.0, 0.7}, 0.3));
    CHECK_THROWS_AS(coupling_check<R>(1, 1, R(0), {1}, rat(1, 2)), std::invalid_argument);
}

TEST_CASE("two-part process does not depend on the order")
{
    for (long n = 1; n <= 2; ++n)
        for (long l = 0; l <= 2; ++l)
            for (long r = 0; r <= 2; ++r) {
                TrajectoryParams<R> par{rat(2, 5), {}, rat(1, 3), r, l, false};
                const auto tasep_first = exact_trajectory_distribution(ParticleSystem::TwoPart, n, 0, par);
                par.push_first = true;
                CHECK(tasep_first == exact_trajectory_distribution(ParticleSystem::TwoPart, n, 0, par));
            }
}

TEST_CASE("trajectory CSV")
{
    Rng rng(2);
    std::vector<ParticleConfig> path;
    ParticleConfig c = ParticleConfig::step(2);
    for (int s = 0; s < 3; ++s) {
        c = bernoulli_qpush_step(c, 1.0, {1, 1}, 0.5, rng);
        path.push_back(c);
    }
    std::ostringstream os;
    write_trajectory_csv(os, path);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,i,x");
    long rows = 0;
    while (std::getline(in, line))
        ++rows;
    CHECK(rows == 6);
}
