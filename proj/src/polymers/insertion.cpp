#include "qrsk/polymers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qrsk {

RealWord RealWord::empty_word(std::size_t len)
{
    RealWord w;
    w.v.assign(len, 0.0);
    if (len > 0)
        w.v[0] = 1.0;
    w.empty = true;
    return w;
}

long RealWord::last_positive() const
{
    for (long i = long(v.size()) - 1; i >= 0; --i)
        if (v[std::size_t(i)] > 0)
            return i;
    return -1;
}

RealArray::RealArray(long n) : n_(n)
{
    for (long k = 1; k <= n; ++k)
        words_.push_back(RealWord::empty_word(std::size_t(n - k + 1)));
}

namespace {

void check_word(const RealWord& lambda, const std::vector<double>& a)
{
    if (lambda.v.size() != a.size() || a.empty())
        throw std::invalid_argument("grsk insertion: word lengths differ");
    for (double x : a)
        if (!(x > 0))
            throw std::invalid_argument("grsk insertion: input entries must be positive");
}

} // namespace

RealWord grsk_row_word(const RealWord& lambda, const std::vector<double>& a, std::vector<double>& b, bool* has_b)
{
    check_word(lambda, a);
    const std::size_t m = a.size();
    const std::vector<double>& lam = lambda.v;
    RealWord nu;
    nu.v.resize(m);
    nu.v[0] = lam[0] * a[0];
    for (std::size_t i = 1; i < m; ++i)
        nu.v[i] = (lam[i] + nu.v[i - 1]) * a[i];
    b.clear();
    const bool produce = !lambda.empty && m > 1;
    if (produce)
        for (std::size_t i = 1; i < m; ++i)
            b.push_back(a[i] * lam[i] * nu.v[i - 1] / (lam[i - 1] * nu.v[i]));
    if (has_b)
        *has_b = produce;
    return nu;
}

RealWord grsk_col_word(const RealWord& lambda, const std::vector<double>& a, std::vector<double>& b)
{
    check_word(lambda, a);
    const std::size_t m = a.size();
    const std::vector<double>& lam = lambda.v;
    RealWord nu;
    nu.v.resize(m);
    nu.v[0] = a[0] * lam[0];
    for (std::size_t i = 1; i < m; ++i)
        nu.v[i] = lam[i] * a[i] + lam[i - 1];
    b.clear();
    for (std::size_t i = 1; i < m; ++i) {
        if (lam[i] > 0)
            b.push_back(a[i] * lam[i] * nu.v[i - 1] / (lam[i - 1] * nu.v[i]));
        else if (lam[i - 1] > 0)
            b.push_back(a[i] * nu.v[i - 1]);
        else
            b.push_back(a[i]);
    }
    return nu;
}

RealArray grsk_row_insert(const RealArray& arr, const std::vector<double>& a)
{
    if (long(a.size()) != arr.size())
        throw std::invalid_argument("grsk_row_insert: word length must equal n");
    RealArray out = arr;
    std::vector<double> cur = a, b;
    for (long k = 1; k <= arr.size(); ++k) {
        bool has_b = false;
        out.word(k) = grsk_row_word(arr.word(k), cur, b, &has_b);
        if (!has_b)
            break;
        cur = b;
    }
    return out;
}

RealArray grsk_col_insert(const RealArray& arr, const std::vector<double>& a)
{
    if (long(a.size()) != arr.size())
        throw std::invalid_argument("grsk_col_insert: word length must equal n");
    RealArray out = arr;
    std::vector<double> cur = a, b;
    for (long k = 1; k <= arr.size(); ++k) {
        out.word(k) = grsk_col_word(arr.word(k), cur, b);
        cur = b;
    }
    return out;
}

Matrix matmul(const Matrix& x, const Matrix& y)
{
    const std::size_t n = x.size(), m = y.empty() ? 0 : y[0].size();
    Matrix z(n, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < y.size(); ++l)
            if (x[i][l] != 0)
                for (std::size_t c = 0; c < m; ++c)
                    z[i][c] += x[i][l] * y[l][c];
    return z;
}

Matrix h_matrix(long n, long k, const std::vector<double>& a)
{
    if (long(a.size()) != n - k + 1)
        throw std::invalid_argument("h_matrix: a must cover positions k..n");
    Matrix h(std::size_t(n), std::vector<double>(std::size_t(n), 0.0));
    for (long i = 1; i < k; ++i)
        h[std::size_t(i - 1)][std::size_t(i - 1)] = 1;
    for (long i = k; i <= n; ++i) {
        h[std::size_t(i - 1)][std::size_t(i - 1)] = a[std::size_t(i - k)];
        if (i < n)
            h[std::size_t(i - 1)][std::size_t(i)] = 1;
    }
    return h;
}

Matrix g_matrix(long n, long k, const std::vector<double>& lambda)
{
    if (long(lambda.size()) != n - k + 1)
        throw std::invalid_argument("g_matrix: lambda must cover positions k..n");
    Matrix g(std::size_t(n), std::vector<double>(std::size_t(n), 0.0));
    for (long i = 0; i < n; ++i)
        g[std::size_t(i)][std::size_t(i)] = 1;
    RealWord w;
    w.v = lambda;
    const long m = w.last_positive() + 1;
    for (long i = m; i < long(lambda.size()); ++i)
        if (lambda[std::size_t(i)] != 0)
            throw std::invalid_argument("g_matrix: lambda must be a positive prefix then zeros");
    for (long p = 1; p <= m; ++p)
        for (long r = p; r <= m; ++r) {
            const double below = p == 1 ? 1.0 : lambda[std::size_t(p - 2)];
            g[std::size_t(p + k - 2)][std::size_t(r + k - 2)] = lambda[std::size_t(r - 1)] / below;
        }
    return g;
}

double max_rel_diff(const Matrix& x, const Matrix& y)
{
    if (x.size() != y.size())
        throw std::invalid_argument("max_rel_diff: shape mismatch");
    double worst = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].size() != y[i].size())
            throw std::invalid_argument("max_rel_diff: shape mismatch");
        for (std::size_t j = 0; j < x[i].size(); ++j) {
            const double s = std::max(std::abs(x[i][j]), std::abs(y[i][j]));
            if (s > 0)
                worst = std::max(worst, std::abs(x[i][j] - y[i][j]) / s);
        }
    }
    return worst;
}

double transfer_matrix_residual(long n, long k, const RealWord& lambda, const std::vector<double>& a)
{
    if (k < 1 || k > n || long(lambda.v.size()) != n - k + 1)
        throw std::invalid_argument("transfer_matrix_residual: bad sizes");
    std::vector<double> b;
    const RealWord nu = grsk_col_word(lambda, a, b);
    const Matrix lhs = matmul(g_matrix(n, k, lambda.v), h_matrix(n, k, a));
    const Matrix rhs = matmul(h_matrix(n, k + 1, b), g_matrix(n, k, nu.v));
    return max_rel_diff(lhs, rhs);
}

bool transfer_matrix_check(long n, long k, const RealWord& lambda, const std::vector<double>& a, double tol)
{
    return transfer_matrix_residual(n, k, lambda, a) <= tol;
}

double transfer_product_residual(const std::vector<std::vector<double>>& words)
{
    if (words.empty())
        throw std::invalid_argument("transfer_product_residual: no words");
    const long n = long(words[0].size());
    RealArray y(n);
    Matrix rhs = h_matrix(n, 1, words[0]);
    y = grsk_col_insert(y, words[0]);
    for (std::size_t s = 1; s < words.size(); ++s) {
        rhs = matmul(rhs, h_matrix(n, 1, words[s]));
        y = grsk_col_insert(y, words[s]);
    }
    Matrix lhs = g_matrix(n, n, y.word(n).v);
    for (long k = n - 1; k >= 1; --k)
        lhs = matmul(lhs, g_matrix(n, k, y.word(k).v));
    return max_rel_diff(lhs, rhs);
}

} // namespace qrsk
