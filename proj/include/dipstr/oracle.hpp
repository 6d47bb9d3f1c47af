#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "dipstr/cases.hpp"
#include "dipstr/database.hpp"
#include "dipstr/numeric.hpp"
#include "dipstr/prior.hpp"
#include "dipstr/rng.hpp"

namespace dipstr {

// Importance sampling ran out of support: no sampled frequency vector was
// compatible with the conditioning database. CLI validate exit code 4.
struct OracleStarved : Error {
  using Error::Error;
};

// One draw from the generative model over allele frequencies.
struct GenerativeSample {
  long k_l = 0, k_s = 0;
  std::vector<long> t_l, t_s;  // 0-based support indices, each in [0, m)
  ArrayXd phi_l, phi_s;        // length m, zero off support, sum to 1
  double psi = 0.0;
  ArrayXd theta_l, theta_s;    // psi*phi_l and (1-psi)*phi_s

  ArrayXd theta() const;  // concatenated 2m vector, sums to 1
};

GenerativeSample sample_prior(const PriorConfig& prior, std::uint64_t seed,
                              std::uint64_t stream);

struct OracleEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long n_samples = 0;
  double ess = 0.0;
};

// Self-normalized importance-sampling estimate of the defence-hypothesis
// trace probability: prior draws weighted by the likelihood of the
// augmented database, with the trace probability evaluated exactly at each
// draw. Weights are handled in log space; the standard error is the delta
// method one for a ratio estimator. Practical for small databases only.
OracleEstimate is_denominator(const CaseInput& c, const AugmentedDatabase& adb,
                              const PriorConfig& prior, long n_samples,
                              std::uint64_t seed);

// Posterior over the number of types by explicit enumeration of every
// size-k support subset with the exact marginal likelihood of the counts
// for each subset; deliberately avoids the closed-form simplification the
// production path uses. Refuses m > 12.
std::map<long, double> exact_k_posterior_bruteforce(const SideStats& stats,
                                                    const PriorConfig& prior);

}  // namespace dipstr
