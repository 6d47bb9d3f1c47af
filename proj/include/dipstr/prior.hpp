#pragma once

#include <string>

#include "dipstr/numeric.hpp"
#include "dipstr/types.hpp"

namespace dipstr {

// Prior over the number of allele types of one DIP class, supported on
// {1..m} (families with wider support are truncated and renormalized there).
struct KPrior {
  enum class Family { Uniform, TruncatedPoisson, TruncatedNegBinomial, Degenerate };

  Family family = Family::Uniform;
  double lambda = 0.0;  // TruncatedPoisson rate
  double r = 0.0;       // TruncatedNegBinomial successes (may be non-integer)
  double p = 0.0;       // TruncatedNegBinomial success probability
  long k0 = 0;          // Degenerate atom

  static KPrior uniform();
  static KPrior poisson(double lambda);
  static KPrior neg_binomial(double r, double p);
  static KPrior degenerate(long k0);

  // log pmf over k = 1..m, normalized; index k-1 holds log p(k)
  ArrayXd log_pmf(long m) const;

  bool operator==(const KPrior&) const = default;
};

// "uniform", "poisson:2", "negbin:2,0.5", "fixed:8"
std::string k_prior_label(const KPrior& prior);

struct PriorConfig {
  long m = 100;        // theoretically possible alleles per DIP class
  double alpha = 1.0;  // shared Dirichlet hyperparameter
  KPrior k_prior = KPrior::uniform();

  void validate() const;  // throws ModelError on out-of-range parameters
};

}  // namespace dipstr
