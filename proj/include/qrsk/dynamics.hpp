#pragma once

#include "qrsk/gt.hpp"
#include "qrsk/qnum.hpp"
#include "qrsk/rng.hpp"

#include <map>
#include <string>
#include <vector>

namespace qrsk {

enum class DynKind { RowAlpha, ColAlpha, RowBeta, ColBeta, PushBlockAlpha, PushBlockBeta };

bool is_alpha(DynKind kind);
bool is_rsk(DynKind kind);
std::string kind_name(DynKind kind);
DynKind parse_kind(const std::string& name);

// Two consecutive levels: lam_bar -> nu_bar at level j-1 and lam at level j.
struct LevelUpdateContext {
    Signature lam_bar;
    Signature nu_bar;
    Signature lam;
    long j = 1;

    bool admissible(bool alpha) const;
};

// Order of the two pushing stages in the column alpha dynamics. YZ is the
// canonical order; ZY moves the stabilization fund first.
enum class ColAlphaOrder { YZ, ZY };

template <class S>
S row_beta_prob(const LevelUpdateContext& ctx, const Signature& nu, const S& beta, const S& a_j, const S& q);
template <class S>
S col_beta_prob(const LevelUpdateContext& ctx, const Signature& nu, const S& beta, const S& a_j, const S& q);

// Normalized weights V = U (alpha a)^{|lam|-|nu|-|lam_bar|+|nu_bar|} / (alpha a; q)_inf,
// free of infinite products and exact in rational mode.
template <class S>
S row_alpha_weight(const LevelUpdateContext& ctx, const Signature& nu, const S& alpha, const S& a_j, const S& q);
template <class S>
S col_alpha_weight(const LevelUpdateContext& ctx, const Signature& nu, const S& alpha, const S& a_j, const S& q,
                   ColAlphaOrder order = ColAlphaOrder::YZ);

// Conditional probabilities U. The alpha ones need floating scalars.
template <class S>
S row_alpha_prob(const LevelUpdateContext& ctx, const Signature& nu, const S& alpha, const S& a_j, const S& q);
template <class S>
S col_alpha_prob(const LevelUpdateContext& ctx, const Signature& nu, const S& alpha, const S& a_j, const S& q,
                 ColAlphaOrder order = ColAlphaOrder::YZ);

// Push-block probabilities depend on (lam, nu_bar) only.
template <class S>
S push_block_beta_prob(const Signature& lam, const Signature& nu_bar, const Signature& nu, const S& beta,
                       const S& a_j, const S& q);
// Floating only; the infinite kappa_1 sum is cut once the geometric tail
// bound drops below 2^-60 of the partial sum.
double push_block_alpha_prob(const Signature& lam, const Signature& nu_bar, const Signature& nu, double alpha,
                             double a_j, double q);

template <class S>
S transition_prob(DynKind kind, const LevelUpdateContext& ctx, const Signature& nu, const S& par, const S& a_j,
                  const S& q);

// LHS - RHS of the main equation at level j = lam.size(). Alpha RSK kinds
// use the normalized weights; push-block alpha is floating only.
template <class S>
S main_equation_residual(DynKind kind, const Signature& lam, const Signature& nu, const Signature& nu_bar,
                         const S& par, const S& a_j, const S& q);

// Complement transform of the row beta probabilities, which should equal
// col_beta_prob. S must be at least max(lam_1, lam_bar_1).
template <class S>
S complemented_row_beta_prob(const LevelUpdateContext& ctx, const Signature& nu, const S& beta, const S& a_j,
                             const S& q, long S_box);

// Candidate nu at level j reachable from lam (strip above lam), parts bounded
// by cap (ignored for beta kinds).
std::vector<Signature> candidate_nus(DynKind kind, const Signature& lam, long cap);

// One level update; *input receives V_j.
Signature sample_level(DynKind kind, const LevelUpdateContext& ctx, double par, double a_j, double q, Rng& rng,
                       long* input = nullptr);

struct StepResult {
    InterlacingArray array;
    std::vector<long> inputs;
};

// Sequential update of all levels with one time-step parameter.
StepResult sample_step(DynKind kind, const InterlacingArray& arr, double par, const std::vector<double>& a,
                       double q, Rng& rng);

// Exact one-step law of a beta dynamics on whole arrays.
template <class S>
std::map<InterlacingArray, S> exact_step_law(DynKind kind, const InterlacingArray& arr, const S& beta,
                                             const std::vector<S>& a, const S& q);

// Law after len(betas) steps from the zero array.
template <class S>
std::map<InterlacingArray, S> exact_array_law(DynKind kind, long n, const std::vector<S>& betas,
                                              const std::vector<S>& a, const S& q);

// Deterministic q = 0 RSK step driven by the inputs V_1..V_N.
InterlacingArray classical_rsk_step(DynKind kind, const InterlacingArray& arr, const std::vector<long>& input);

// Single-box moves used by classical_rsk_step. Index i is 1-based.
Signature pull(const Signature& lam, const Signature& lam_bar, long i);
Signature push(const Signature& lam, const Signature& lam_bar_updated, long i);

// Deliberate defects for negative-control runs of the verifiers.
enum class Fault { None, RowBetaF };
void set_fault(Fault f);
Fault current_fault();

} // namespace qrsk
