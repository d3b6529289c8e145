#pragma once

// Hand-rolled generators and Monte Carlo helpers shared by the tests.

#include "qrsk/gt.hpp"
#include "qrsk/rng.hpp"
#include "qrsk/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace qtest {

using qrsk::Rational;
using qrsk::Rng;
using qrsk::Signature;

inline Rational rat(long p, long q = 1) { return qrsk::scalar<Rational>(p, q); }

inline long uniform_int(Rng& rng, long lo, long hi)
{
    std::uniform_int_distribution<long> d(lo, hi);
    return d(rng);
}

// p/d with 2 <= d <= max_den, strictly inside (0,1).
inline Rational unit_rational(Rng& rng, long max_den = 13)
{
    const long d = uniform_int(rng, 2, max_den);
    return rat(uniform_int(rng, 1, d - 1), d);
}

inline Signature random_signature(Rng& rng, long len, long max_part)
{
    Signature s(static_cast<std::size_t>(len));
    for (auto& x : s)
        x = uniform_int(rng, 0, max_part);
    std::sort(s.begin(), s.end(), std::greater<long>());
    return s;
}

// Uniform choice among the signatures of length len - 1 interlacing below lam.
inline Signature random_below(Rng& rng, const Signature& lam)
{
    std::vector<Signature> all;
    qrsk::for_each_interlacing_below(lam, [&](const Signature& mu) { all.push_back(mu); });
    return all[std::size_t(uniform_int(rng, 0, long(all.size()) - 1))];
}

inline Signature random_vstrip_above(Rng& rng, const Signature& lam)
{
    std::vector<Signature> all;
    qrsk::for_each_vstrip_above(lam, [&](const Signature& nu) { all.push_back(nu); });
    return all[std::size_t(uniform_int(rng, 0, long(all.size()) - 1))];
}

// |hits/n - p| within k binomial standard deviations; the floor covers p near 0 or 1.
inline bool within_sigma(long hits, long n, double p, double k = 4.0)
{
    const double sd = std::sqrt(std::max(p * (1 - p), 1.0 / double(n)) / double(n));
    return std::abs(double(hits) / double(n) - p) <= k * sd;
}

// Cells are (hits, probability) over n draws. Cells with expected count below
// min_expected are pooled into one extra cell so that rare outcomes are judged
// together. Returns the indices that fail the 4 sigma check; cells.size()
// stands for the pooled cell.
inline std::vector<std::size_t> failing_cells(const std::vector<std::pair<long, double>>& cells, long n,
                                              double min_expected = 20)
{
    std::vector<std::size_t> bad;
    long pooled_hits = 0;
    double pooled_p = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto [h, p] = cells[i];
        if (p * double(n) < min_expected) {
            pooled_hits += h;
            pooled_p += p;
        } else if (!within_sigma(h, n, p)) {
            bad.push_back(i);
        }
    }
    if (!within_sigma(pooled_hits, n, std::min(pooled_p, 1.0)))
        bad.push_back(cells.size());
    return bad;
}

inline double rel_err(double x, double y)
{
    const double s = std::max(std::abs(x), std::abs(y));
    return s == 0 ? 0.0 : std::abs(x - y) / s;
}

} // namespace qtest
