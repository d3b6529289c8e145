#include "qrsk/polymers.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace qrsk {

namespace {

void check_query(const PolymerEnv& env, long j, long k, long t)
{
    if (j < 1 || k < 0 || k > j || t < 1)
        throw std::invalid_argument("lgv_partition: need 1 <= j, 0 <= k <= j, t >= 1");
    if (j > env.height() || t > env.time())
        throw std::invalid_argument("lgv_partition: (j, t) outside the environment");
    for (const auto& col : env.weights)
        if (long(col.size()) != env.height())
            throw std::invalid_argument("lgv_partition: ragged weights");
}

// Weight lookup, 1-based: vertex (s, i) or edge (s-1, i) -> (s, i).
double w(const PolymerEnv& env, long s, long i) { return env.weights[std::size_t(s - 1)][std::size_t(i - 1)]; }

double enumerate_log_gamma(const PolymerEnv& env, long j, long k, long t)
{
    const long n = env.height();
    std::vector<char> used(std::size_t((t + 1) * (n + 1)), 0);
    auto cell = [&](long s, long i) -> char& { return used[std::size_t(s * (n + 1) + i)]; };
    double total = 0;
    // Path p runs from (1, p) to (t, j - k + p); paths are laid in order.
    std::function<void(long, long, long, double)> walk = [&](long p, long s, long i, double acc) {
        if (cell(s, i))
            return;
        cell(s, i) = 1;
        acc *= w(env, s, i);
        const long ti = j - k + p;
        if (s == t && i == ti) {
            if (p == k)
                total += acc;
            else
                walk(p + 1, 1, p + 1, acc);
        } else {
            if (s < t)
                walk(p, s + 1, i, acc);
            if (i < ti)
                walk(p, s, i + 1, acc);
        }
        cell(s, i) = 0;
    };
    walk(1, 1, 1, 1.0);
    return total;
}

double enumerate_strict_weak(const PolymerEnv& env, long j, long k, long t)
{
    const long n = env.height();
    std::vector<char> used(std::size_t((t + 1) * (n + 2)), 0);
    auto cell = [&](long s, long i) -> char& { return used[std::size_t(s * (n + 2) + i)]; };
    double total = 0;
    // Path p runs from (0, p) to (t, j - k + p) by horizontal and diagonal steps.
    std::function<void(long, long, long, double)> walk = [&](long p, long s, long i, double acc) {
        if (cell(s, i))
            return;
        const long ti = j - k + p;
        if (i > ti || ti - i > t - s)
            return;
        cell(s, i) = 1;
        if (s == t) {
            if (p == k)
                total += acc;
            else
                walk(p + 1, 0, p + 1, acc);
        } else {
            walk(p, s + 1, i, acc * w(env, s + 1, i));
            walk(p, s + 1, i + 1, acc);
        }
        cell(s, i) = 0;
    };
    walk(1, 0, 1, 1.0);
    return total;
}

double determinant(Matrix m)
{
    const std::size_t n = m.size();
    double det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(m[r][c]) > std::abs(m[piv][c]))
                piv = r;
        if (m[piv][c] == 0)
            return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = m[r][c] / m[c][c];
            for (std::size_t x = c; x < n; ++x)
                m[r][x] -= f * m[c][x];
        }
    }
    return det;
}

} // namespace

double lgv_partition(const PolymerEnv& env, long j, long k, long t)
{
    check_query(env, j, k, t);
    if (j > 6 || t > 6 || k > 4)
        throw std::invalid_argument("lgv_partition: enumeration limited to j, t <= 6 and k <= 4");
    if (k == 0)
        return 1.0;
    return env.mode == PolymerMode::LogGamma ? enumerate_log_gamma(env, j, k, t)
                                             : enumerate_strict_weak(env, j, k, t);
}

double lgv_determinant(const PolymerEnv& env, long j, long k, long t)
{
    check_query(env, j, k, t);
    if (k == 0)
        return 1.0;
    const long n = env.height();
    Matrix m(std::size_t(k), std::vector<double>(std::size_t(k), 0.0));
    if (env.mode == PolymerMode::StrictWeak) {
        Matrix h = h_matrix(n, 1, env.weights[0]);
        for (long s = 2; s <= t; ++s)
            h = matmul(h, h_matrix(n, 1, env.weights[std::size_t(s - 1)]));
        for (long p = 0; p < k; ++p)
            for (long r = 0; r < k; ++r)
                m[std::size_t(p)][std::size_t(r)] = h[std::size_t(p)][std::size_t(j - k + r)];
        return determinant(m);
    }
    // Single-path sums from (1, p) by dynamic programming over the strip.
    for (long p = 1; p <= k; ++p) {
        Matrix z(std::size_t(t + 1), std::vector<double>(std::size_t(n + 1), 0.0));
        for (long s = 1; s <= t; ++s)
            for (long i = p; i <= n; ++i) {
                const double from = (s == 1 && i == p) ? 1.0 : z[std::size_t(s - 1)][std::size_t(i)] +
                                                                   z[std::size_t(s)][std::size_t(i - 1)];
                z[std::size_t(s)][std::size_t(i)] = from * w(env, s, i);
            }
        for (long r = 1; r <= k; ++r)
            m[std::size_t(p - 1)][std::size_t(r - 1)] = z[std::size_t(t)][std::size_t(j - k + r)];
    }
    return determinant(m);
}

} // namespace qrsk
