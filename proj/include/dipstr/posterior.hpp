#pragma once

#include <optional>

#include "dipstr/database.hpp"
#include "dipstr/numeric.hpp"
#include "dipstr/prior.hpp"

namespace dipstr {

// Posterior over the number of allele types on one side, supported on
// [k_min, m] with k_min = k_b (fewer types than observed have probability
// zero). Weights are kept unnormalized in log space:
//   log w(k) = log C(k, k_b) + log p(k) + lgamma(k*a) - lgamma(n + k*a)
struct KPosterior {
  long k_min = 1;
  long m = 1;
  double alpha = 1.0;
  long n_side = 0;
  ArrayXd log_w;  // index i holds log w(k_min + i)
  double log_norm = 0.0;

  double log_weight(long k) const;
  double prob(long k) const;

  // posterior averages of g(k) = 1/((ka+n)(ka+n+1)) and h(k) = 1/(ka+n),
  // accumulated with log-sum-exp
  double mean_g() const;
  double mean_h() const;
};

KPosterior k_posterior(const SideStats& stats, const PriorConfig& prior);

// Moments of the L-class total mass, Beta(1+n_L, 1+n_S) given the counts.
struct PsiMoments {
  double e_psi = 0.0;
  double e_one_minus_psi = 0.0;
  double e_psi_sq = 0.0;
  double e_one_minus_psi_sq = 0.0;
  double e_psi_one_minus_psi = 0.0;
};

PsiMoments psi_moments(long n_l, long n_s);

struct PhiMoments {
  double e_phi_i = 0.0;
  double e_phi_i_sq = 0.0;
  double e_phi_i_phi_j = 0.0;  // NaN unless a second allele was given
};

// Mixture-of-Dirichlet posterior moments of the within-class frequencies of
// observed alleles i (and optionally j != i). Unobserved alleles are
// rejected: their moments are not defined by this model.
PhiMoments phi_moments(const SideStats& stats, const KPosterior& kpost,
                       double alpha, const DipStrAllele& i,
                       const std::optional<DipStrAllele>& j = std::nullopt);

struct ThetaMoments {
  double e_theta_i_theta_j = 0.0;          // NaN unless j given
  double e_theta_i_sq = 0.0;
  double e_theta_i_times_othermass = 0.0;  // E[theta_i * opposite-class mass]
};

// Population-frequency moments for observed alleles of class `side`:
// phi moments times the matching class-mass moments (independent factors).
ThetaMoments theta_moments(DipClass side, const AugmentedDatabase& adb,
                           const PriorConfig& prior, const DipStrAllele& i,
                           const std::optional<DipStrAllele>& j = std::nullopt);

}  // namespace dipstr
