#include "qrsk/moments.hpp"
#include "qrsk/particles.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace qrsk;
using qtest::rat;

namespace {

using R = Rational;

MomentQuery push_query(std::vector<long> n, long t, R beta, std::vector<R> a, R q)
{
    MomentQuery m;
    m.system = MomentSystem::BernoulliPush;
    m.n = std::move(n);
    m.t = t;
    m.par = beta;
    m.a = std::move(a);
    m.q = q;
    return m;
}

// E prod q^{x_{n_i} + n_i} straight from the trajectory law.
R direct_expectation(const std::vector<long>& n, long t, const R& beta, const std::vector<R>& a, const R& q)
{
    R total(0);
    const auto law = exact_trajectory_distribution(ParticleSystem::BernoulliPush, long(a.size()), t,
                                                   TrajectoryParams<R>{beta, a, q});
    for (const auto& [x, w] : law) {
        R term = w;
        for (long ni : n)
            term *= pow_int(q, x[std::size_t(ni - 1)] + ni);
        total += term;
    }
    return total;
}

} // namespace

TEST_CASE("single particle, single step")
{
    const R q = rat(1, 2), b = rat(1, 3), a1 = rat(3, 4);
    const R expect = 1 / (1 + b * a1) + b * a1 / (1 + b * a1) / q;
    const auto m = push_query({1}, 1, b, {a1}, q);
    CHECK(nested_moment_residues(m) == expect);
    CHECK(exact_qmoment(m) == expect);
    CHECK(nested_moment_residues(push_query({1}, 0, b, {a1}, q)) == 1);
    CHECK(exact_qmoment(push_query({1}, 0, b, {a1}, q)) == 1);
}

TEST_CASE("two particles, two steps")
{
    const R q = rat(1, 2), b = rat(1, 3);
    const std::vector<R> a = {1, rat(2, 3)};
    const auto m = push_query({2, 1}, 2, b, a, q);
    const R oracle = direct_expectation({2, 1}, 2, b, a, q);
    CHECK(exact_qmoment(m) == oracle);
    CHECK(nested_moment_residues(m) == oracle);
}

TEST_CASE("residues match the particle system on a grid")
{
    const std::vector<std::tuple<R, R, std::vector<R>>> tuples = {
        {rat(1, 2), rat(1, 3), {1, rat(2, 3), rat(1, 2)}},
        {rat(2, 3), rat(1, 5), {rat(1, 2), rat(3, 4), rat(4, 3)}},
        {rat(1, 7), rat(1, 2), {1, 1, 1}},
    };
    for (const auto& [q, b, a_all] : tuples)
        for (long n = 1; n <= 3; ++n)
            for (long t = 0; t <= 3; ++t) {
                const std::vector<R> a(a_all.begin(), a_all.begin() + n);
                for (long n1 = 1; n1 <= n; ++n1) {
                    CHECK(nested_moment_residues(push_query({n1}, t, b, a, q)) == direct_expectation({n1}, t, b, a, q));
                    for (long n2 = 1; n2 <= n1; ++n2)
                        CHECK(nested_moment_residues(push_query({n1, n2}, t, b, a, q)) ==
                              direct_expectation({n1, n2}, t, b, a, q));
                }
            }
}

TEST_CASE("two-part process")
{
    for (long L = 0; L <= 2; ++L)
        for (long Rs = 0; Rs <= 2; ++Rs) {
            MomentQuery m;
            m.system = MomentSystem::TwoPart;
            m.n = {2, 1};
            m.par = rat(2, 5);
            m.a = {1, 1};
            m.q = rat(1, 3);
            m.tasep_steps = Rs;
            m.push_steps = L;
            const R v = nested_moment_residues(m);
            CHECK(v == exact_qmoment(m));
            m.push_first = true;
            CHECK(nested_moment_residues(m) == v);
            CHECK(exact_qmoment(m) == v);
        }
}

TEST_CASE("geometric system, finite moments")
{
    MomentQuery m;
    m.system = MomentSystem::GeometricPush;
    m.n = {1};
    m.t = 1;
    m.par = rat(1, 4);
    m.a = {1};
    m.q = rat(1, 2);
    // single particle: E q^{-V} for V q-geometric(alpha)
    double direct = 0;
    for (long v = 0; v < 200; ++v)
        direct += qgeom_pmf(0.25, 0.5, v) * std::pow(2.0, double(v));
    bool conv = false;
    const double brute = geometric_qmoment_bruteforce(m, 30, &conv);
    CHECK(conv);
    CHECK(qtest::rel_err(brute, direct) < 1e-9);
    CHECK(qtest::rel_err(nested_moment_residues(m).get_d(), direct) < 1e-12);

    m.n = {2, 1};
    m.t = 2;
    m.a = {1, rat(1, 2)};
    m.par = rat(1, 8);
    const double b2 = geometric_qmoment_bruteforce(m, 45, &conv);
    CHECK(conv);
    CHECK(qtest::rel_err(b2, nested_moment_residues(m).get_d()) < 1e-8);

    // large alpha: E q^{-kV} diverges once alpha q^{-k} >= 1
    m.n = {1, 1};
    m.t = 1;
    m.a = {1};
    m.par = rat(1, 3);
    geometric_qmoment_bruteforce(m, 30, &conv);
    CHECK_FALSE(conv);
    CHECK_THROWS_AS(exact_qmoment(m), std::invalid_argument);
}

TEST_CASE("query validation")
{
    auto m = push_query({1}, 1, rat(1, 3), {1, 1}, rat(1, 2));
    CHECK_NOTHROW(m.validate());
    m.n = {3};
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    m.n = {1, 2};
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    m.n = {1};
    m.q = rat(3, 2);
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
}
