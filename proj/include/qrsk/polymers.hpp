#pragma once

#include "qrsk/dynamics.hpp"
#include "qrsk/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qrsk {

// Word at row k of a triangular array: entries for positions k..n. An
// empty word is (1, 0, ..., 0); for row arrays the flag keeps it apart from
// a genuine word of ones.
struct RealWord {
    std::vector<double> v;
    bool empty = false;

    static RealWord empty_word(std::size_t len);
    // Index of the last positive entry (0-based), -1 if none.
    long last_positive() const;
};

// z^j_k (row) or y^j_k (column) for 1 <= k <= j <= n.
class RealArray {
public:
    explicit RealArray(long n = 0);

    long size() const { return n_; }
    // Word z_k, entries j = k..n.
    const RealWord& word(long k) const { return words_[std::size_t(k - 1)]; }
    RealWord& word(long k) { return words_[std::size_t(k - 1)]; }
    double at(long j, long k) const { return word(k).v[std::size_t(j - k)]; }

private:
    long n_;
    std::vector<RealWord> words_;
};

// Single-word insertions of a = (a^k..a^n) into lambda. b has entries
// k+1..n; *has_b is false when no output word is produced.
RealWord grsk_row_word(const RealWord& lambda, const std::vector<double>& a, std::vector<double>& b, bool* has_b);
RealWord grsk_col_word(const RealWord& lambda, const std::vector<double>& a, std::vector<double>& b);

// Cascading insertion of a = (a^1..a^n), all positive.
RealArray grsk_row_insert(const RealArray& arr, const std::vector<double>& a);
RealArray grsk_col_insert(const RealArray& arr, const std::vector<double>& a);

enum class PolymerMode { LogGamma, StrictWeak };

// weights[s-1][i-1]: vertex weight d_{s,i} (LogGamma) or the weight of the
// edge (s-1,i) -> (s,i) (StrictWeak).
struct PolymerEnv {
    PolymerMode mode = PolymerMode::LogGamma;
    std::vector<std::vector<double>> weights;

    long time() const { return long(weights.size()); }
    long height() const { return weights.empty() ? 0 : long(weights[0].size()); }
};

// R^j_k(t) or L^j_k(t) by enumerating nonintersecting k-tuples. k = 0
// gives 1. Limits: j, t <= 6, k <= 4.
double lgv_partition(const PolymerEnv& env, long j, long k, long t);
// The same quantity as a k x k determinant of single-path sums.
double lgv_determinant(const PolymerEnv& env, long j, long k, long t);

using Matrix = std::vector<std::vector<double>>;

Matrix matmul(const Matrix& x, const Matrix& y);
// n x n matrices; H_k places H(a) in the lower right block, a = (a^k..a^n).
Matrix h_matrix(long n, long k, const std::vector<double>& a);
// lambda = (lambda^k..lambda^n) with a positive prefix and zero tail.
Matrix g_matrix(long n, long k, const std::vector<double>& lambda);

// Largest entrywise |x - y| / max(|x|, |y|), zero where both vanish.
double max_rel_diff(const Matrix& x, const Matrix& y);

// G(lambda) H_k(a) against H_{k+1}(b) G(nu) for the column insertion of a
// into lambda. Returns the largest relative entry difference. lambda must have
// the column-array shape: positive entries, or a positive prefix ending in 1
// followed by zeros.
double transfer_matrix_residual(long n, long k, const RealWord& lambda, const std::vector<double>& a);
bool transfer_matrix_check(long n, long k, const RealWord& lambda, const std::vector<double>& a,
                           double tol = 1e-12);
// G(y_n) ... G(y_1) against H(a_1) ... H(a_t) after t column insertions.
double transfer_product_residual(const std::vector<std::vector<double>>& words);

double sample_gamma(double theta, Rng& rng);
double sample_inverse_gamma(double theta, Rng& rng);

// Random environment: inverse-Gamma(theta_i + theta_hat_s) vertex weights
// or Gamma(theta_i + theta_hat_s) edge weights.
PolymerEnv sample_polymer_env(PolymerMode mode, const std::vector<double>& thetas,
                              const std::vector<double>& theta_hats, Rng& rng);

// Ratio arrays after t insertions of the environment columns.
RealArray polymer_row_array(const PolymerEnv& env);
RealArray polymer_col_array(const PolymerEnv& env);

double ks_statistic(std::vector<double> x, std::vector<double> y);
double ks_inverse_gamma(std::vector<double> x, double theta);
double ks_gamma(std::vector<double> x, double theta);

struct ScalingConfig {
    DynKind kind = DynKind::RowAlpha;
    long n = 1;
    long t = 1;
    std::vector<double> thetas;
    std::vector<double> theta_hats;
    std::vector<double> eps_list;
    long replicas = 1000;
    std::uint64_t seed = 0;
    long bootstrap = 50;
    long threads = 0;
    bool keep_samples = false;

    void validate() const;
};

struct ScalingEntry {
    long j = 0, k = 0, t = 0;
    // Means and 10/50/90% quantiles of log R^ (row) or log L^ (column).
    double mean_prelimit = 0, mean_polymer = 0;
    std::vector<double> quantiles_prelimit, quantiles_polymer;
    double ks = 0;
    // Bootstrap standard deviation of ks.
    double ks_noise = 0;
    std::vector<double> samples_prelimit, samples_polymer;
};

struct ScalingRun {
    double eps = 0;
    std::vector<ScalingEntry> entries;
    // Covariance of log R^1_1 (or log L^1_1) at times 1 and 2, when t >= 2.
    double two_time_cov_prelimit = 0, two_time_cov_polymer = 0;
};

struct ScalingReport {
    ScalingConfig config;
    std::vector<ScalingRun> runs;
    std::vector<std::string> warnings;
};

// Entries (j, k) defined at time t: k <= min(t, j) for rows, j - k + 1 <= t
// for columns.
std::vector<std::pair<long, long>> scaled_entries(DynKind kind, long n, long t);

// log R^ or log L^ read off an integer array after t steps.
double scaled_log_ratio(DynKind kind, const InterlacingArray& arr, long j, long k, long t, double eps);

ScalingReport scaling_limit_experiment(const ScalingConfig& cfg);

// R^j_k against 1/L^j_{j-k+1} in law: two-sample KS per entry.
struct ComplementEntry {
    long j, k;
    double ks;
};
std::vector<ComplementEntry> polymer_complement_ks(long n, long t, const std::vector<double>& thetas,
                                                   const std::vector<double>& theta_hats, long replicas,
                                                   std::uint64_t seed);

} // namespace qrsk
