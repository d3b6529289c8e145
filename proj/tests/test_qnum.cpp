#include "qrsk/qnum.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace qrsk;
using qtest::rat;

TEST_CASE("parse_rational accepts fractions, integers and decimals")
{
    CHECK(parse_rational("3/6") == rat(1, 2));
    CHECK(parse_rational("-2/4") == rat(-1, 2));
    CHECK(parse_rational("7") == rat(7));
    CHECK(parse_rational("0.25") == rat(1, 4));
    CHECK(parse_rational(".5") == rat(1, 2));
    CHECK(parse_rational("010") == rat(10));
    CHECK(parse_rational("08/012") == rat(2, 3));
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/2/3"), std::invalid_argument);
}

TEST_CASE("q_pochhammer finite branches")
{
    const Rational q = rat(1, 2);
    CHECK(q_pochhammer(rat(5, 7), q, 0) == 1);
    CHECK(q_pochhammer(q, q, 2) == rat(3, 8));
    // m < 0: 1 / (1 - a q^{-1}) = 1 / (1 - 3/2)
    CHECK(q_pochhammer(rat(1, 2), rat(1, 3), -1) == -2);
    CHECK_THROWS_AS(q_pochhammer(rat(1, 2), rat(1, 2), -1), std::domain_error);
}

TEST_CASE("q_pochhammer_inf against the Euler series")
{
    // (a;q)_inf = sum_n (-1)^n q^{n(n-1)/2} a^n / (q;q)_n
    auto euler = [](double a, double q) {
        double total = 0, qq = 1;
        for (int n = 0; n < 80; ++n) {
            if (n > 0)
                qq *= 1 - std::pow(q, n);
            total += (n % 2 ? -1 : 1) * std::pow(q, n * (n - 1) / 2.0) * std::pow(a, n) / qq;
        }
        return total;
    };
    CHECK(q_pochhammer_inf(0.0, 0.5) == 1.0);
    const double v = q_pochhammer_inf(0.5, 0.5);
    CHECK(std::abs(v - 0.2887880951) < 1e-9);
    CHECK(qtest::rel_err(v, euler(0.5, 0.5)) < 1e-13);
    for (double a : {0.1, 0.3, 0.77})
        for (double q : {0.2, 0.5, 0.7})
            CHECK(qtest::rel_err(q_pochhammer_inf(a, q), euler(a, q)) < 1e-12);
    // (a;q)_inf = (1-a)(aq;q)_inf
    for (double a : {0.5, 0.25, 0.9})
        CHECK(qtest::rel_err(q_pochhammer_inf(a, 0.5), (1 - a) * q_pochhammer_inf(a * 0.5, 0.5)) < 1e-12);
    CHECK_THROWS_AS(q_pochhammer_inf<Rational>(rat(1, 2), rat(1, 2)), std::domain_error);
}

TEST_CASE("q_binomial values")
{
    const Rational q = rat(1, 3);
    // 1 + q + 2q^2 + q^3 + q^4
    CHECK(q_binomial(4, 2, q) == 1 + q + 2 * q * q + q * q * q + q * q * q * q);
    CHECK(q_binomial(4, 2, q) == rat(130, 81));
    CHECK(q_binomial(9, 0, q) == 1);
    // base inversion
    const Rational h = rat(1, 2);
    CHECK(q_binomial(5, 2, Rational(1 / h)) == pow_int(h, -6) * q_binomial(5, 2, h));
    CHECK(std::abs(q_binomial(Extent::infinite(), 3, 0.5) - 1 / q_pochhammer(0.5, 0.5, 3)) < 1e-14);
    CHECK_THROWS(q_binomial(Extent::infinite(), 3, rat(1, 2)));
    CHECK_THROWS(q_binomial(3, 4, rat(1, 2)));
}

TEST_CASE("property: Pascal recurrence and Pochhammer concatenation")
{
    Rng rng(11);
    for (int it = 0; it < 200; ++it) {
        const Rational q = qtest::unit_rational(rng);
        const long n = qtest::uniform_int(rng, 2, 9);
        const long k = qtest::uniform_int(rng, 1, n - 1);
        CHECK(q_binomial(n, k, q) == q_binomial(n - 1, k - 1, q) + pow_int(q, k) * q_binomial(n - 1, k, q));
        const Rational a = qtest::unit_rational(rng);
        const long m = qtest::uniform_int(rng, 0, 6), m2 = qtest::uniform_int(rng, 0, 6);
        CHECK(q_pochhammer(a, q, m) * q_pochhammer(Rational(a * pow_int(q, m)), q, m2) ==
              q_pochhammer(a, q, m + m2));
    }
}

TEST_CASE("phi_weight examples")
{
    const Rational q = rat(1, 2);
    auto p = PhiParams<Rational>::direct(q, rat(1, 3), rat(1, 4), Extent::finite(5));
    Rational total(0);
    for (long s = 0; s <= 5; ++s)
        total += phi_weight(p, s);
    CHECK(total == 1);
    CHECK(phi_weight(p, 6) == 0);
    CHECK(phi_weight(p, -1) == 0);

    // q -> 0 in the inverse regime: mass on max(c - a, 0)
    auto small = PhiParams<double>::inverse(1e-6, 2, Extent::finite(5), 4);
    CHECK(phi_weight(small, 2) >= 1 - 1e-4);

    // infinite y gives the q-geometric law
    auto geo = PhiParams<double>::direct(0.5, 0.25, 0.0, Extent::infinite());
    const double direct = (1.0 / 16) / (0.5 * 0.75) * q_pochhammer_inf(0.25, 0.5);
    CHECK(qtest::rel_err(phi_weight(geo, 2), direct) < 1e-12);
    CHECK(qtest::rel_err(qgeom_pmf(0.25, 0.5, 2), direct) < 1e-12);

    // the inverse regime vanishes for s > b - a or c - s > a
    auto inv = PhiParams<Rational>::inverse(q, 2, Extent::finite(4), 4);
    CHECK(phi_weight(inv, 3) == 0);
    CHECK(phi_weight(inv, 1) == 0);
    CHECK(phi_weight(inv, 2) > 0);

    CHECK_THROWS_AS(PhiParams<Rational>::direct(q, rat(1, 4), rat(1, 3), Extent::finite(2)).validate(),
                    std::domain_error);
    CHECK_THROWS_AS(phi_weight(PhiParams<Rational>::direct(q, rat(1, 4), rat(0), Extent::infinite()), 1),
                    std::domain_error);
}

TEST_CASE("property: phi sums to one exactly and is nonnegative")
{
    Rng rng(5);
    for (int it = 0; it < 300; ++it) {
        const Rational q = qtest::unit_rational(rng);
        PhiParams<Rational> p;
        long y = 0;
        if (it % 2 == 0) {
            Rational xi = qtest::unit_rational(rng), eta = qtest::unit_rational(rng);
            if (eta > xi)
                std::swap(eta, xi);
            y = qtest::uniform_int(rng, 0, 6);
            p = PhiParams<Rational>::direct(q, xi, eta, Extent::finite(y));
        } else {
            const long a = qtest::uniform_int(rng, 0, 5);
            const long b = qtest::uniform_int(rng, a, 8);
            y = qtest::uniform_int(rng, 0, b);
            p = PhiParams<Rational>::inverse(q, a, Extent::finite(b), y);
        }
        Rational total(0);
        for (long s = 0; s <= y; ++s) {
            const Rational w = phi_weight(p, s);
            CHECK(sgn(w) >= 0);
            total += w;
        }
        CHECK(total == 1);
    }
}

TEST_CASE("phi_sample")
{
    Rng rng(2024);
    auto zero = PhiParams<double>::direct(0.5, 1.0 / 3, 0.25, Extent::finite(0));
    for (int i = 0; i < 100; ++i)
        CHECK(phi_sample(zero, rng) == 0);

    // xi = 1 in the inverse regime moves everything
    auto all = PhiParams<double>::inverse(0.5, 0, Extent::finite(6), 4);
    for (int i = 0; i < 100; ++i)
        CHECK(phi_sample(all, rng) == 4);

    auto p = PhiParams<double>::direct(0.5, 1.0 / 3, 0.25, Extent::finite(5));
    const long n = 100000;
    std::vector<long> hits(6, 0);
    for (long i = 0; i < n; ++i)
        ++hits[std::size_t(phi_sample(p, rng))];
    std::vector<std::pair<long, double>> cells;
    for (long s = 0; s <= 5; ++s)
        cells.emplace_back(hits[std::size_t(s)], phi_weight(p, s));
    CHECK(qtest::failing_cells(cells, n).empty());
}

TEST_CASE("sample_qgeom matches the q-geometric pmf")
{
    Rng rng(99);
    const double xi = 0.4, q = 0.6;
    const long n = 100000;
    std::vector<long> hits(8, 0);
    for (long i = 0; i < n; ++i) {
        const long v = sample_qgeom(xi, q, rng);
        if (v < 8)
            ++hits[std::size_t(v)];
    }
    std::vector<std::pair<long, double>> cells;
    for (long k = 0; k < 8; ++k)
        cells.emplace_back(hits[std::size_t(k)], qgeom_pmf(xi, q, k));
    CHECK(qtest::failing_cells(cells, n).empty());
    // q = 0 is the ordinary geometric law
    long zeros = 0;
    for (long i = 0; i < n; ++i)
        zeros += sample_qgeom(0.3, 0.0, rng) == 0;
    CHECK(qtest::within_sigma(zeros, n, 0.7));
}

TEST_CASE("q-binomial identities at fixed points")
{
    for (Rational q : {rat(3, 5), rat(1, 9)}) {
        for (long s = 0; s <= 3; ++s)
            for (long h = s; h <= 3; ++h) {
                const auto [l, r] = kr1_sides(s, 2, 1, 3, h, q);
                CHECK(l == r);
            }
        CHECK(kr2_sum(2, 1, 3, 2, 3, q) == 1);
        const auto [l, r] = kr1_general_sides(3, rat(2, 7), rat(3, 11), rat(5, 13), q);
        CHECK(l == r);
        CHECK(kr2_general_sum(2, 3, rat(2, 7), rat(3, 11), rat(5, 13), q) == 1);
    }
    // double instantiation agrees
    const auto [ld, rd] = kr1_sides(2, 3, 1, 2, 4, 0.3);
    CHECK(qtest::rel_err(ld, rd) < 1e-12);
    CHECK_THROWS_AS(kr2_sum(0, 0, 0, 1, 1, rat(1, 2)), std::invalid_argument);
}
