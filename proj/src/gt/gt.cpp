#include "qrsk/gt.hpp"

#include <json.hpp>

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qrsk {

bool is_signature(const Signature& lam)
{
    for (std::size_t i = 0; i < lam.size(); ++i) {
        if (lam[i] < 0)
            return false;
        if (i + 1 < lam.size() && lam[i] < lam[i + 1])
            return false;
    }
    return true;
}

long size(const Signature& lam)
{
    long s = 0;
    for (long x : lam)
        s += x;
    return s;
}

long length(const Signature& lam)
{
    long n = 0;
    for (long x : lam)
        if (x > 0)
            ++n;
    return n;
}

long part(const Signature& lam, long i)
{
    return (i >= 1 && std::size_t(i) <= lam.size()) ? lam[std::size_t(i - 1)] : 0;
}

bool same_signature(const Signature& a, const Signature& b)
{
    std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 1; i <= n; ++i)
        if (part(a, long(i)) != part(b, long(i)))
            return false;
    return true;
}

Signature padded(const Signature& lam, std::size_t n)
{
    Signature out(n, 0);
    for (std::size_t i = 0; i < n && i < lam.size(); ++i)
        out[i] = lam[i];
    return out;
}

bool interlaces_h(const Signature& mu, const Signature& lam)
{
    if (!is_signature(mu) || !is_signature(lam))
        return false;
    long n = long(std::max(mu.size(), lam.size()));
    for (long i = 1; i <= n; ++i) {
        if (part(lam, i) < part(mu, i))
            return false;
        if (part(mu, i) < part(lam, i + 1))
            return false;
    }
    return true;
}

bool interlaces_v(const Signature& mu, const Signature& lam)
{
    if (!is_signature(mu) || !is_signature(lam))
        return false;
    long n = long(std::max(mu.size(), lam.size()));
    for (long i = 1; i <= n; ++i) {
        long d = part(lam, i) - part(mu, i);
        if (d < 0 || d > 1)
            return false;
    }
    return true;
}

Signature transpose(const Signature& lam)
{
    Signature out;
    long first = part(lam, 1);
    for (long c = 1; c <= first; ++c) {
        long h = 0;
        for (long x : lam)
            if (x >= c)
                ++h;
        out.push_back(h);
    }
    return out;
}

Signature complement(const Signature& lam, long S, long j)
{
    if (length(lam) > j || part(lam, 1) > S)
        throw std::invalid_argument("complement: signature does not fit the rectangle");
    Signature out(std::size_t(j), 0);
    for (long i = 1; i <= j; ++i)
        out[std::size_t(i - 1)] = S - part(lam, j - i + 1);
    return out;
}

std::string to_string(const Signature& lam)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < lam.size(); ++i)
        os << (i ? "," : "") << lam[i];
    os << ')';
    return os.str();
}

SignatureStream::SignatureStream(long max_part, long length)
    : max_part_(max_part), cur_(std::size_t(std::max(length, 0L)), 0)
{
    if (max_part < 0 || length < 0)
        done_ = true;
}

bool SignatureStream::next(Signature& out)
{
    if (done_)
        return false;
    if (!started_) {
        started_ = true;
        out = cur_;
        return true;
    }
    // Increment the rightmost part that may grow; parts to its right are
    // reset to 0.
    for (long i = long(cur_.size()) - 1; i >= 0; --i) {
        long cap = i == 0 ? max_part_ : cur_[std::size_t(i - 1)];
        if (cur_[std::size_t(i)] < cap) {
            ++cur_[std::size_t(i)];
            for (std::size_t k = std::size_t(i) + 1; k < cur_.size(); ++k)
                cur_[k] = 0;
            out = cur_;
            return true;
        }
    }
    done_ = true;
    return false;
}

std::vector<Signature> enumerate_signatures(long max_part, long length)
{
    std::vector<Signature> all;
    SignatureStream st(max_part, length);
    Signature s;
    while (st.next(s))
        all.push_back(s);
    return all;
}

namespace {

// Visits every vector x with lo <= x <= hi componentwise.
void for_each_box(const std::vector<long>& lo, const std::vector<long>& hi,
                  const std::function<void(const Signature&)>& fn)
{
    Signature x = lo;
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (lo[i] > hi[i])
            return;
    while (true) {
        fn(x);
        long i = long(x.size()) - 1;
        while (i >= 0 && x[std::size_t(i)] == hi[std::size_t(i)]) {
            x[std::size_t(i)] = lo[std::size_t(i)];
            --i;
        }
        if (i < 0)
            return;
        ++x[std::size_t(i)];
    }
}

} // namespace

void for_each_interlacing_below(const Signature& lam, const std::function<void(const Signature&)>& fn)
{
    if (lam.empty())
        return;
    std::size_t n = lam.size() - 1;
    std::vector<long> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = lam[i + 1];
        hi[i] = lam[i];
    }
    for_each_box(lo, hi, fn);
}

void for_each_hstrip_below(const Signature& lam, const std::function<void(const Signature&)>& fn)
{
    std::size_t n = lam.size();
    std::vector<long> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = i + 1 < n ? lam[i + 1] : 0;
        hi[i] = lam[i];
    }
    for_each_box(lo, hi, fn);
}

void for_each_vstrip_above(const Signature& lam, const std::function<void(const Signature&)>& fn)
{
    std::vector<long> lo(lam), hi(lam);
    for (auto& h : hi)
        ++h;
    for_each_box(lo, hi, [&](const Signature& nu) {
        if (is_signature(nu))
            fn(nu);
    });
}

void for_each_vstrip_below(const Signature& lam, const std::function<void(const Signature&)>& fn)
{
    std::vector<long> lo(lam), hi(lam);
    for (auto& l : lo)
        l = std::max(0L, l - 1);
    for_each_box(lo, hi, [&](const Signature& mu) {
        if (is_signature(mu))
            fn(mu);
    });
}

InterlacingArray InterlacingArray::zero(long n)
{
    InterlacingArray arr;
    for (long j = 1; j <= n; ++j)
        arr.levels.emplace_back(std::size_t(j), 0);
    return arr;
}

bool InterlacingArray::valid() const
{
    for (std::size_t j = 0; j < levels.size(); ++j) {
        if (levels[j].size() != j + 1 || !is_signature(levels[j]))
            return false;
        if (j > 0 && !interlaces_h(levels[j - 1], levels[j]))
            return false;
    }
    return true;
}

ArrayStream::ArrayStream(const Signature& top)
{
    if (!is_signature(top)) {
        done_ = true;
        return;
    }
    cur_.levels.resize(top.size());
    for (std::size_t j = 0; j < top.size(); ++j)
        cur_.levels[j].assign(j + 1, 0);
    if (!top.empty())
        cur_.levels.back() = top;
}

void ArrayStream::reset_below(long j)
{
    for (long l = j - 1; l >= 1; --l) {
        const Signature& up = cur_.level(l + 1);
        Signature& me = cur_.level(l);
        for (long i = 1; i <= l; ++i)
            me[std::size_t(i - 1)] = up[std::size_t(i)];
    }
}

bool ArrayStream::advance(long j)
{
    const Signature& up = cur_.level(j + 1);
    Signature& me = cur_.level(j);
    for (long i = j; i >= 1; --i) {
        if (me[std::size_t(i - 1)] < up[std::size_t(i - 1)]) {
            ++me[std::size_t(i - 1)];
            for (long k = i + 1; k <= j; ++k)
                me[std::size_t(k - 1)] = up[std::size_t(k)];
            return true;
        }
    }
    return false;
}

bool ArrayStream::next(InterlacingArray& out)
{
    if (done_)
        return false;
    const long n = cur_.depth();
    if (!started_) {
        started_ = true;
        reset_below(n);
        out = cur_;
        return true;
    }
    for (long j = 1; j < n; ++j) {
        if (advance(j)) {
            reset_below(j);
            out = cur_;
            return true;
        }
    }
    done_ = true;
    return false;
}

std::vector<InterlacingArray> enumerate_arrays_with_top(const Signature& top)
{
    std::vector<InterlacingArray> all;
    ArrayStream st(top);
    InterlacingArray a;
    while (st.next(a))
        all.push_back(a);
    return all;
}

std::string to_json(const InterlacingArray& arr)
{
    nlohmann::json j;
    j["levels"] = arr.levels;
    return j.dump();
}

InterlacingArray array_from_json(const std::string& text)
{
    auto j = nlohmann::json::parse(text);
    InterlacingArray arr;
    arr.levels = j.at("levels").get<std::vector<Signature>>();
    if (!arr.valid())
        throw std::invalid_argument("array_from_json: not an interlacing array");
    return arr;
}

InterlacingArray random_array(long n, long max_part, Rng& rng)
{
    if (n < 0 || max_part < 0)
        throw std::invalid_argument("random_array: negative size");
    InterlacingArray arr = InterlacingArray::zero(n);
    if (n == 0)
        return arr;
    std::uniform_int_distribution<long> top(0, max_part);
    Signature& lam = arr.level(n);
    for (auto& x : lam)
        x = top(rng);
    std::sort(lam.begin(), lam.end(), std::greater<long>());
    for (long j = n - 1; j >= 1; --j) {
        const Signature& up = arr.level(j + 1);
        for (long i = 0; i < j; ++i) {
            std::uniform_int_distribution<long> d(up[std::size_t(i + 1)], up[std::size_t(i)]);
            arr.level(j)[std::size_t(i)] = d(rng);
        }
    }
    return arr;
}

} // namespace qrsk
