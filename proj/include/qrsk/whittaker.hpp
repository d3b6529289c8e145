#pragma once

#include "qrsk/gt.hpp"
#include "qrsk/qnum.hpp"

#include <map>
#include <utility>
#include <vector>

namespace qrsk {

template <class S>
S psi(const Signature& lam, const Signature& mu, const S& q);
template <class S>
S phi_coef(const Signature& lam, const Signature& mu, const S& q);
template <class S>
S psi_prime(const Signature& lam, const Signature& mu, const S& q);

template <class S>
struct SpecParams {
    std::vector<S> usual;
    std::vector<S> dual;
};

// P_lambda(a_1..a_N) as a sum over GT patterns with top row lambda.
template <class S>
S p_poly(const Signature& lam, const std::vector<S>& a, const S& q);

// Q_lambda(alpha_1..alpha_T) as a sum over horizontal-strip chains.
template <class S>
S q_poly_alpha(const Signature& lam, const std::vector<S>& alphas, const S& q);

// Skew Q_{lam/mu} for a specialization: phi weights for each usual
// parameter, psi' weights for each dual parameter.
template <class S>
S q_skew(const Signature& lam, const Signature& mu, const SpecParams<S>& spec, const S& q);

// Pi(a; spec) = prod (1 + beta_t a_j) / prod (alpha_t a_j; q)_inf.
template <class S>
S pi_norm(const std::vector<S>& a, const SpecParams<S>& spec, const S& q);

// q-Whittaker process weight of an array.
template <class S>
S process_weight(const InterlacingArray& arr, const std::vector<S>& a, const SpecParams<S>& spec, const S& q);

// psi_{lam/mu} a^{|lam|-|mu|}, the one-variable skew P.
template <class S>
S p_skew_single(const Signature& lam, const Signature& mu, const S& a, const S& q);

template <class S>
bool check_gibbs(const std::map<InterlacingArray, S>& weights, const std::vector<S>& a, const S& q);

enum class UnivariateKind { Alpha, Beta };

// Matrix element of the univariate operator in N = a.size() variables.
template <class S>
S univariate_step_prob(UnivariateKind kind, const Signature& lam, const Signature& nu, const std::vector<S>& a,
                       const S& par, const S& q);

// Link Lambda^j_{j-1}(lam, lam_bar) with lam of length j = a.size().
template <class S>
S link(const Signature& lam, const Signature& lam_bar, const std::vector<S>& a, const S& q);

// Both sides of the one-variable skew Cauchy identity at (lam, nu_bar):
// the lam_bar-sum of P_{lam/lam_bar}(a) Q_{nu_bar/lam_bar}(B), and
// Pi(a;B)^{-1} times the nu-sum of P_{nu/nu_bar}(a) Q_{nu/lam}(B). B is a
// single alpha or beta; for alpha the nu-sum stops at |nu| - |lam| = cap.
template <class S>
std::pair<S, S> skew_cauchy_sides(const Signature& lam, const Signature& nu_bar, const S& a, const SpecParams<S>& spec,
                                  const S& q, long cap = 0);

// Entries (lam, mu_bar) of P^(j) Lambda and Lambda P^(j-1) for the beta
// operator, with j = a.size() = lam.size().
template <class S>
std::pair<S, S> intertwining_sides(const Signature& lam, const Signature& mu_bar, const std::vector<S>& a,
                                   const S& beta, const S& q);

} // namespace qrsk
