#pragma once

#include "qrsk/rng.hpp"

#include <functional>
#include <string>
#include <vector>

namespace qrsk {

// Weakly decreasing nonnegative parts. Trailing zeros are kept; the
// predicates below zero-pad on the fly.
using Signature = std::vector<long>;

bool is_signature(const Signature& lam);
long size(const Signature& lam);
// Number of nonzero parts.
long length(const Signature& lam);
// 1-based part with zero padding; part(lam, 0) is not defined here.
long part(const Signature& lam, long i);
// Equality up to trailing zeros.
bool same_signature(const Signature& a, const Signature& b);
Signature padded(const Signature& lam, std::size_t n);

bool interlaces_h(const Signature& mu, const Signature& lam);
bool interlaces_v(const Signature& mu, const Signature& lam);
Signature transpose(const Signature& lam);
Signature complement(const Signature& lam, long S, long j);

std::string to_string(const Signature& lam);

// Signatures of a fixed length with parts <= max_part, in lexicographic
// order starting from (0,...,0).
class SignatureStream {
public:
    SignatureStream(long max_part, long length);
    bool next(Signature& out);

private:
    long max_part_;
    Signature cur_;
    bool started_ = false;
    bool done_ = false;
};

std::vector<Signature> enumerate_signatures(long max_part, long length);

// All mu of length lam.size()-1 with mu interlacing below lam.
void for_each_interlacing_below(const Signature& lam, const std::function<void(const Signature&)>& fn);
// All mu of the same length with mu <_h lam.
void for_each_hstrip_below(const Signature& lam, const std::function<void(const Signature&)>& fn);
// All nu of the same length with lam <_v nu.
void for_each_vstrip_above(const Signature& lam, const std::function<void(const Signature&)>& fn);
// All mu of the same length with mu <_v lam.
void for_each_vstrip_below(const Signature& lam, const std::function<void(const Signature&)>& fn);

struct InterlacingArray {
    // levels[j-1] is lambda^(j), of length j.
    std::vector<Signature> levels;

    static InterlacingArray zero(long n);
    long depth() const { return long(levels.size()); }
    const Signature& level(long j) const { return levels.at(std::size_t(j - 1)); }
    Signature& level(long j) { return levels.at(std::size_t(j - 1)); }
    bool valid() const;

    bool operator==(const InterlacingArray& o) const { return levels == o.levels; }
    bool operator<(const InterlacingArray& o) const { return levels < o.levels; }
};

// Lazy depth-first enumeration of all GT patterns with the given top row.
class ArrayStream {
public:
    explicit ArrayStream(const Signature& top);
    bool next(InterlacingArray& out);

private:
    bool advance(long j);
    void reset_below(long j);

    InterlacingArray cur_;
    bool started_ = false;
    bool done_ = false;
};

std::vector<InterlacingArray> enumerate_arrays_with_top(const Signature& top);

std::string to_json(const InterlacingArray& arr);
InterlacingArray array_from_json(const std::string& text);

// Random array: top row with parts <= max_part, lower levels drawn
// uniformly from the interlacing ranges one coordinate at a time.
InterlacingArray random_array(long n, long max_part, Rng& rng);

} // namespace qrsk
