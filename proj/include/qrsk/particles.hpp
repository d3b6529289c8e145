#pragma once

#include "qrsk/gt.hpp"
#include "qrsk/qnum.hpp"
#include "qrsk/rng.hpp"

#include <map>
#include <ostream>
#include <vector>

namespace qrsk {

// x_1 > x_2 > ... > x_N. The step configuration is x_i = -i.
struct ParticleConfig {
    std::vector<long> x;
    long t = 0;

    static ParticleConfig step(long n);
    bool ordered() const;
};

// Array coordinates. The rightmost particles x_i = -lam^(i)_1 - i follow the
// left-jumping PushTASEPs; the leftmost ones x_i = lam^(i)_i - i follow the
// right-jumping TASEPs.
std::vector<long> rightmost_particles(const InterlacingArray& arr);
std::vector<long> leftmost_particles(const InterlacingArray& arr);

// Parameters a_1..a_N are per particle; beta and alpha per step.
ParticleConfig bernoulli_qpush_step(const ParticleConfig& cfg, double beta, const std::vector<double>& a, double q,
                                    Rng& rng);
ParticleConfig bernoulli_qtasep_step(const ParticleConfig& cfg, double beta, const std::vector<double>& a, double q,
                                     Rng& rng);
ParticleConfig geometric_qpush_step(const ParticleConfig& cfg, double alpha, const std::vector<double>& a, double q,
                                    Rng& rng);
ParticleConfig geometric_qtasep_step(const ParticleConfig& cfg, double alpha, const std::vector<double>& a,
                                     double q, Rng& rng);

// One-step law of the geometric systems: probability of x -> y.
double geometric_qpush_prob(const std::vector<long>& x, const std::vector<long>& y, double alpha,
                            const std::vector<double>& a, double q);
double geometric_qtasep_prob(const std::vector<long>& x, const std::vector<long>& y, double alpha,
                             const std::vector<double>& a, double q);

enum class ParticleSystem { BernoulliPush, BernoulliTasep, TwoPart };

template <class S>
using ConfigLaw = std::map<std::vector<long>, S>;

// Exact one-step law of a Bernoulli system from x.
template <class S>
ConfigLaw<S> bernoulli_step_law(ParticleSystem system, const std::vector<long>& x, const S& beta,
                                const std::vector<S>& a, const S& q);

template <class S>
struct TrajectoryParams {
    S beta;
    std::vector<S> a;
    S q;
    // TwoPart only: TASEP steps then PushTASEP steps (a = 1), or the
    // reverse order when push_first is set.
    long tasep_steps = 0;
    long push_steps = 0;
    bool push_first = false;
};

// Law at time T from the step configuration; T is ignored for TwoPart.
template <class S>
ConfigLaw<S> exact_trajectory_distribution(ParticleSystem system, long n, long T, const TrajectoryParams<S>& par);

// Law of t + x(t) under PushTASEP(beta, a) against TASEP(1/beta, 1/a).
template <class S>
bool coupling_check(long n, long T, const S& beta, const std::vector<S>& a, const S& q);

// CSV with header t,i,x and one row per (t, i), t = 1..T.
void write_trajectory_csv(std::ostream& os, const std::vector<ParticleConfig>& path);

} // namespace qrsk
