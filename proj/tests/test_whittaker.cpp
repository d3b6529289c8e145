#include "qrsk/whittaker.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace qrsk;
using qtest::rat;

namespace {

using R = Rational;

// Schur polynomial as a ratio of alternants.
R schur_bialternant(const Signature& lam, const std::vector<R>& a)
{
    const std::size_t n = a.size();
    auto det = [&](auto entry) {
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        R total(0);
        do {
            R term(1);
            int inv = 0;
            for (std::size_t i = 0; i < n; ++i) {
                term *= entry(i, perm[i]);
                for (std::size_t k = i + 1; k < n; ++k)
                    inv += perm[i] > perm[k];
            }
            total += inv % 2 ? R(-term) : term;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return total;
    };
    const Signature l = padded(lam, n);
    const R num = det([&](std::size_t i, std::size_t k) { return pow_int(a[k], l[i] + long(n - 1 - i)); });
    const R den = det([&](std::size_t i, std::size_t k) { return pow_int(a[k], long(n - 1 - i)); });
    return num / den;
}

std::map<InterlacingArray, R> all_process_weights(long n, long max_part, const std::vector<R>& a,
                                                  const SpecParams<R>& spec, const R& q)
{
    std::map<InterlacingArray, R> out;
    for (const auto& top : enumerate_signatures(max_part, n))
        for (const auto& arr : enumerate_arrays_with_top(top))
            out[arr] = process_weight(arr, a, spec, q);
    return out;
}

} // namespace

TEST_CASE("branching coefficients")
{
    const R q = rat(1, 2);
    CHECK(psi<R>({2, 0}, {1}, q) == rat(3, 2));
    CHECK(psi<R>({3, 1}, {3, 1}, q) == 1);
    CHECK(psi<R>({2, 0}, {3}, q) == 0);
    CHECK(psi_prime<R>({2, 1}, {2, 0}, q) == rat(3, 4));
    CHECK(psi_prime<R>({3, 1}, {2, 1}, q) == 1);
    CHECK(psi_prime<R>({3, 1}, {1, 1}, q) == 0);
    CHECK(phi_coef<R>({}, {}, q) == 1);
    for (long n = 0; n <= 5; ++n)
        CHECK(phi_coef<R>({n}, {}, q) == 1 / q_pochhammer(q, q, n));

    Rng rng(4);
    for (int it = 0; it < 100; ++it) {
        const long len = qtest::uniform_int(rng, 2, 4);
        const Signature lam = qtest::random_signature(rng, len, 5);
        const Signature mu = qtest::random_below(rng, lam);
        CHECK(psi<R>(lam, mu, R(0)) == 1);
        CHECK(phi_coef<R>(lam, mu, R(0)) == 1);
        const Signature nu = qtest::random_vstrip_above(rng, lam);
        CHECK(psi_prime<R>(nu, lam, R(0)) == 1);
    }
}

TEST_CASE("property: complementation of branching coefficients")
{
    Rng rng(12);
    for (int it = 0; it < 200; ++it) {
        const R q = qtest::unit_rational(rng);
        const long j = qtest::uniform_int(rng, 2, 5);
        const long box = 6;
        const Signature mu = qtest::random_signature(rng, j, box);
        const Signature mu_bar = qtest::random_below(rng, mu);
        CHECK(psi<R>(complement(mu, box, j), complement(mu_bar, box, j - 1), q) == psi<R>(mu, mu_bar, q));
        const Signature kappa = qtest::random_vstrip_above(rng, mu);
        CHECK(psi_prime<R>(complement(kappa, box + 1, j), complement(mu, box, j), q) == psi_prime<R>(kappa, mu, q));
    }
}

TEST_CASE("q-Whittaker polynomials")
{
    const R q = rat(1, 3);
    const std::vector<R> a2 = {rat(1, 2), rat(2, 5)};
    CHECK(p_poly<R>({1, 0}, a2, q) == a2[0] + a2[1]);
    CHECK(p_poly<R>({4}, {rat(2, 3)}, q) == pow_int(rat(2, 3), 4));
    CHECK(p_poly<R>({1, 1, 1}, a2, q) == 0);
    CHECK(p_poly<R>({2, 1}, a2, R(0)) == a2[0] * a2[0] * a2[1] + a2[0] * a2[1] * a2[1]);

    // q = 0 is the Schur polynomial
    const std::vector<R> a3 = {rat(1, 2), rat(2, 5), rat(3, 7)};
    for (const auto& lam : enumerate_signatures(3, 3))
        CHECK(p_poly<R>(lam, a3, R(0)) == schur_bialternant(lam, a3));

    // symmetry of P in a and Q in alpha
    std::vector<R> perm = {a3[2], a3[0], a3[1]};
    for (const auto& lam : enumerate_signatures(2, 3))
        CHECK(p_poly<R>(lam, a3, q) == p_poly<R>(lam, perm, q));
    const std::vector<R> al = {rat(1, 4), rat(1, 3), rat(2, 9)};
    CHECK(q_poly_alpha<R>({}, al, q) == 1);
    CHECK(q_poly_alpha<R>({3}, {rat(1, 4)}, q) == pow_int(rat(1, 4), 3) / q_pochhammer(q, q, 3));
    for (long len = 1; len <= 3; ++len)
        for (const auto& lam : enumerate_signatures(3, len)) {
            if (size(lam) > 3)
                continue;
            std::vector<R> p = al;
            const R base = q_poly_alpha<R>(lam, p, q);
            while (std::next_permutation(p.begin(), p.end()))
                CHECK(q_poly_alpha<R>(lam, p, q) == base);
        }
}

TEST_CASE("first Pieri rule with dual coefficients")
{
    const R q = rat(2, 5), beta = rat(1, 3);
    for (long n = 1; n <= 3; ++n) {
        std::vector<R> a;
        for (long i = 0; i < n; ++i)
            a.push_back(rat(i + 1, i + 3));
        R prod(1);
        for (const R& x : a)
            prod *= 1 + beta * x;
        for (const auto& lam : enumerate_signatures(3, n)) {
            if (size(lam) > 3)
                continue;
            R rhs(0);
            for_each_vstrip_above(lam, [&](const Signature& nu) {
                rhs += pow_int(beta, size(nu) - size(lam)) * psi_prime<R>(nu, lam, q) * p_poly<R>(nu, a, q);
            });
            CHECK(p_poly<R>(lam, a, q) * prod == rhs);
        }
    }
}

TEST_CASE("specialization normalization is multiplicative")
{
    const R q = rat(1, 2);
    const std::vector<R> a = {1, rat(2, 3), rat(1, 5)};
    SpecParams<R> A{{}, {rat(1, 3), rat(1, 2)}}, B{{}, {rat(3, 4)}}, AB{{}, {rat(1, 3), rat(1, 2), rat(3, 4)}};
    CHECK(pi_norm(a, AB, q) == pi_norm(a, A, q) * pi_norm(a, B, q));
    CHECK(pi_norm(a, SpecParams<R>{}, q) == 1);
    SpecParams<double> da{{0.3}, {}}, db{{}, {0.5}}, dab{{0.3}, {0.5}};
    const std::vector<double> ad = {1.0, 0.5};
    CHECK(qtest::rel_err(pi_norm(ad, dab, 0.5), pi_norm(ad, da, 0.5) * pi_norm(ad, db, 0.5)) < 1e-14);
    CHECK(qtest::rel_err(pi_norm(ad, da, 0.5), 1 / (q_pochhammer_inf(0.3, 0.5) * q_pochhammer_inf(0.15, 0.5))) <
          1e-14);
}

TEST_CASE("process weights")
{
    const R q = rat(1, 2), beta = rat(1, 3), a1 = rat(3, 4);
    SpecParams<R> one{{}, {beta}};
    InterlacingArray z = InterlacingArray::zero(1);
    CHECK(process_weight(z, {a1}, one, q) == 1 / (1 + beta * a1));
    z.level(1) = {1};
    CHECK(process_weight(z, {a1}, one, q) == beta * a1 / (1 + beta * a1));

    for (long n = 1; n <= 3; ++n)
        for (long t = 1; t <= 3; ++t) {
            std::vector<R> a, betas;
            for (long i = 0; i < n; ++i)
                a.push_back(rat(2 + i, 3 + 2 * i));
            for (long s = 0; s < t; ++s)
                betas.push_back(rat(1, 2 + s));
            const auto w = all_process_weights(n, t, a, SpecParams<R>{{}, betas}, q);
            R total(0);
            for (const auto& [arr, x] : w) {
                CHECK(sgn(x) >= 0);
                total += x;
            }
            CHECK(total == 1);
            CHECK(check_gibbs(w, a, q));
            // doubling one entry under a top row with several arrays breaks the Gibbs property
            auto bad = w;
            for (auto& [arr, x] : bad)
                if (n >= 2 && part(arr.levels.back(), 1) > part(arr.levels.back(), 2)) {
                    x *= 2;
                    break;
                }
            if (n >= 2)
                CHECK_FALSE(check_gibbs(bad, a, q));
        }

    // uniform weights at q = 0, a = 1
    std::map<InterlacingArray, R> uni;
    for (const auto& top : enumerate_signatures(3, 3))
        for (const auto& arr : enumerate_arrays_with_top(top))
            uni[arr] = 1;
    CHECK(check_gibbs(uni, {1, 1, 1}, R(0)));

    // floating mode with a usual parameter: mass over a truncated box is close to 1
    const std::vector<double> ad = {1.0, 0.5};
    SpecParams<double> sd{{0.2}, {}};
    double mass = 0;
    for (const auto& top : enumerate_signatures(25, 2))
        for (const auto& arr : enumerate_arrays_with_top(top))
            mass += process_weight(arr, ad, sd, 0.5);
    CHECK(std::abs(mass - 1) < 1e-12);
}

TEST_CASE("univariate operators")
{
    const R q = rat(1, 2), beta = rat(1, 3), a1 = rat(3, 5);
    CHECK(univariate_step_prob(UnivariateKind::Beta, {0}, {1}, std::vector<R>{a1}, beta, q) ==
          beta * a1 / (1 + beta * a1));
    CHECK(univariate_step_prob(UnivariateKind::Beta, {0}, {0}, std::vector<R>{a1}, beta, q) == 1 / (1 + beta * a1));
    CHECK(univariate_step_prob(UnivariateKind::Beta, {0}, {2}, std::vector<R>{a1}, beta, q) == 0);

    const std::vector<R> a = {1, rat(2, 3)};
    for (const auto& lam : enumerate_signatures(2, 2)) {
        R total(0);
        for_each_vstrip_above(lam, [&](const Signature& nu) {
            total += univariate_step_prob(UnivariateKind::Beta, lam, nu, a, beta, q);
        });
        CHECK(total == 1);
    }

    // alpha kind in floating mode, truncated row sum
    const std::vector<double> ad = {1.0, 0.5};
    for (const auto& lam : enumerate_signatures(2, 2)) {
        double total = 0;
        for (const auto& nu : enumerate_signatures(lam[0] + 40, 2))
            total += univariate_step_prob(UnivariateKind::Alpha, lam, nu, ad, 0.3, 0.5);
        CHECK(std::abs(total - 1) < 1e-12);
    }
}

TEST_CASE("property: skew Cauchy identity and intertwining")
{
    Rng rng(31);
    for (int it = 0; it < 60; ++it) {
        const R q = qtest::unit_rational(rng), beta = qtest::unit_rational(rng), a = qtest::unit_rational(rng);
        const long n = qtest::uniform_int(rng, 1, 3);
        const Signature lam = qtest::random_signature(rng, n, 3);
        const Signature nu_bar = n == 1 ? Signature{} : qtest::random_signature(rng, n - 1, 3);
        const auto [l, r] = skew_cauchy_sides(lam, nu_bar, a, SpecParams<R>{{}, {beta}}, q);
        CHECK(l == r);
    }
    for (int it = 0; it < 30; ++it) {
        const double q = 0.1 + 0.8 * Rng(it).uniform(), a = 0.3 + 0.7 * Rng(100 + it).uniform();
        const long n = qtest::uniform_int(rng, 1, 3);
        const Signature lam = qtest::random_signature(rng, n, 3);
        const Signature nu_bar = n == 1 ? Signature{} : qtest::random_signature(rng, n - 1, 3);
        const auto [l, r] = skew_cauchy_sides(lam, nu_bar, a, SpecParams<double>{{0.4}, {}}, q, 60);
        CHECK(qtest::rel_err(l, r) < 1e-10);
    }
    for (int it = 0; it < 40; ++it) {
        const R q = qtest::unit_rational(rng), beta = qtest::unit_rational(rng);
        const long j = qtest::uniform_int(rng, 2, 3);
        std::vector<R> a;
        for (long i = 0; i < j; ++i)
            a.push_back(qtest::unit_rational(rng) + i);
        const Signature lam = qtest::random_signature(rng, j, 2);
        const Signature mu_bar = qtest::random_signature(rng, j - 1, 3);
        const auto [l, r] = intertwining_sides(lam, mu_bar, a, beta, q);
        CHECK(l == r);
    }
}
