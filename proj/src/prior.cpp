#include "dipstr/prior.hpp"

#include <cmath>
#include <cstdio>

namespace dipstr {

KPrior KPrior::uniform() { return KPrior{}; }

KPrior KPrior::poisson(double lambda) {
  KPrior k;
  k.family = Family::TruncatedPoisson;
  k.lambda = lambda;
  return k;
}

KPrior KPrior::neg_binomial(double r, double p) {
  KPrior k;
  k.family = Family::TruncatedNegBinomial;
  k.r = r;
  k.p = p;
  return k;
}

KPrior KPrior::degenerate(long k0) {
  KPrior k;
  k.family = Family::Degenerate;
  k.k0 = k0;
  return k;
}

ArrayXd KPrior::log_pmf(long m) const {
  ArrayXd lp(m);
  switch (family) {
    case Family::Uniform:
      lp.setConstant(-std::log(double(m)));
      return lp;
    case Family::Degenerate:
      lp.setConstant(neg_inf());
      lp[k0 - 1] = 0.0;
      return lp;
    case Family::TruncatedPoisson:
      for (long k = 1; k <= m; ++k)
        lp[k - 1] = double(k) * std::log(lambda) - std::lgamma(double(k + 1));
      break;
    case Family::TruncatedNegBinomial:
      // k failures before the r-th success, success probability p
      for (long k = 1; k <= m; ++k)
        lp[k - 1] = std::lgamma(double(k) + r) - std::lgamma(double(k + 1)) -
                    std::lgamma(r) + r * std::log(p) +
                    double(k) * std::log1p(-p);
      break;
  }
  lp -= log_sum_exp(lp);
  return lp;
}

namespace {

std::string num_label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

}  // namespace

std::string k_prior_label(const KPrior& prior) {
  switch (prior.family) {
    case KPrior::Family::Uniform:
      return "uniform";
    case KPrior::Family::TruncatedPoisson:
      return "poisson:" + num_label(prior.lambda);
    case KPrior::Family::TruncatedNegBinomial:
      return "negbin:" + num_label(prior.r) + "," + num_label(prior.p);
    case KPrior::Family::Degenerate:
      return "fixed:" + std::to_string(prior.k0);
  }
  return "?";
}

void PriorConfig::validate() const {
  if (m < 1) throw ModelError("m must be at least 1");
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw ModelError("alpha must be positive and finite");
  switch (k_prior.family) {
    case KPrior::Family::Uniform:
      break;
    case KPrior::Family::TruncatedPoisson:
      if (!(k_prior.lambda > 0.0) || !std::isfinite(k_prior.lambda))
        throw ModelError("poisson k prior needs lambda > 0");
      break;
    case KPrior::Family::TruncatedNegBinomial:
      if (!(k_prior.r > 0.0) || !std::isfinite(k_prior.r))
        throw ModelError("negative binomial k prior needs r > 0");
      if (!(k_prior.p > 0.0 && k_prior.p < 1.0))
        throw ModelError("negative binomial k prior needs p in (0,1)");
      break;
    case KPrior::Family::Degenerate:
      if (k_prior.k0 < 1 || k_prior.k0 > m)
        throw ModelError("fixed k prior needs k0 in [1, m], got k0=" +
                         std::to_string(k_prior.k0) + " with m=" +
                         std::to_string(m));
      break;
  }
}

}  // namespace dipstr
