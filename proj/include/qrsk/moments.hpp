#pragma once

#include "qrsk/scalar.hpp"

#include <vector>

namespace qrsk {

enum class MomentSystem { BernoulliPush, TwoPart, GeometricPush };

// E prod_i q^{x_{n_i}(t) + n_i} from the step configuration. a has one entry
// per particle; TwoPart needs a = (1, ..., 1). par is beta, or alpha for
// the geometric system.
struct MomentQuery {
    MomentSystem system = MomentSystem::BernoulliPush;
    std::vector<long> n;
    long t = 0;
    Rational par;
    std::vector<Rational> a;
    Rational q;
    long tasep_steps = 0;
    long push_steps = 0;
    // TwoPart: apply the PushTASEP steps first.
    bool push_first = false;

    void validate() const;
};

// Iterated residues of the nested contour integral, innermost variable
// first. Poles of any order are expanded exactly.
Rational nested_moment_residues(const MomentQuery& query);

// The same expectation from the exact law of the particle system. Not
// available for the geometric system.
Rational exact_qmoment(const MomentQuery& query);

// Geometric system in floating point: the law is truncated at jumps of
// size cap per particle and step. *converged is false when doubling the
// cap still moves the value by more than 1e-9 relative, which signals an
// infinite moment. Sizes are limited to N <= 2, t <= 2.
double geometric_qmoment_bruteforce(const MomentQuery& query, long cap, bool* converged);

} // namespace qrsk
