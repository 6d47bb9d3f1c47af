#include "dipstr/posterior.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace dipstr {

double KPosterior::log_weight(long k) const {
  if (k < k_min || k > m) return neg_inf();
  return log_w[k - k_min];
}

double KPosterior::prob(long k) const {
  if (k < k_min || k > m) return 0.0;
  return std::exp(log_w[k - k_min] - log_norm);
}

double KPosterior::mean_g() const {
  const long count = m - k_min + 1;
  const ArrayXd ka =
      alpha * ArrayXd::LinSpaced(count, double(k_min), double(m)) +
      double(n_side);
  const ArrayXd log_g = -(ka * (ka + 1.0)).log();
  return std::exp(log_sum_exp((log_w + log_g).eval()) - log_norm);
}

double KPosterior::mean_h() const {
  const long count = m - k_min + 1;
  const ArrayXd ka =
      alpha * ArrayXd::LinSpaced(count, double(k_min), double(m)) +
      double(n_side);
  const ArrayXd log_h = -ka.log();
  return std::exp(log_sum_exp((log_w + log_h).eval()) - log_norm);
}

KPosterior k_posterior(const SideStats& stats, const PriorConfig& prior) {
  prior.validate();
  if (stats.k_b < 1)
    throw ModelError("no alleles of this class observed; the posterior over "
                     "the number of types is undefined");
  if (prior.m < stats.k_b)
    throw ModelError("more distinct alleles observed than model allows "
                     "(k_b=" + std::to_string(stats.k_b) +
                     " > m=" + std::to_string(prior.m) + ")");
  if (prior.k_prior.family == KPrior::Family::Degenerate &&
      prior.k_prior.k0 < stats.k_b)
    throw ModelError("more distinct alleles observed than model allows "
                     "(k_b=" + std::to_string(stats.k_b) +
                     " > fixed k=" + std::to_string(prior.k_prior.k0) + ")");

  KPosterior post;
  post.k_min = stats.k_b;
  post.m = prior.m;
  post.alpha = prior.alpha;
  post.n_side = stats.n_side;
  const long count = prior.m - stats.k_b + 1;
  const ArrayXd lp = prior.k_prior.log_pmf(prior.m);
  post.log_w.resize(count);
  for (long i = 0; i < count; ++i) {
    const long k = stats.k_b + i;
    post.log_w[i] = log_choose(k, stats.k_b) + lp[k - 1] +
                    std::lgamma(double(k) * prior.alpha) -
                    std::lgamma(double(stats.n_side) + double(k) * prior.alpha);
  }
  post.log_norm = log_sum_exp(post.log_w);
  return post;
}

PsiMoments psi_moments(long n_l, long n_s) {
  const double a = double(n_l) + 1.0;
  const double b = double(n_s) + 1.0;
  const double s = a + b;  // = n + 6
  PsiMoments out;
  out.e_psi = a / s;
  out.e_one_minus_psi = b / s;
  out.e_psi_sq = a * (a + 1.0) / (s * (s + 1.0));
  out.e_one_minus_psi_sq = b * (b + 1.0) / (s * (s + 1.0));
  out.e_psi_one_minus_psi = a * b / (s * (s + 1.0));
  return out;
}

PhiMoments phi_moments(const SideStats& stats, const KPosterior& kpost,
                       double alpha, const DipStrAllele& i,
                       const std::optional<DipStrAllele>& j) {
  const long n_i = stats.count_of(i);
  if (n_i == 0)
    throw ModelError("no posterior moments for allele " + to_label(i) +
                     ": it does not occur in the augmented database");
  long n_j = 0;
  if (j) {
    if (*j == i)
      throw ModelError("joint phi moment needs two distinct alleles, got " +
                       to_label(i) + " twice");
    n_j = stats.count_of(*j);
    if (n_j == 0)
      throw ModelError("no posterior moments for allele " + to_label(*j) +
                       ": it does not occur in the augmented database");
  }
  const double rg = kpost.mean_g();
  const double rh = kpost.mean_h();
  PhiMoments out;
  out.e_phi_i = (alpha + double(n_i)) * rh;
  out.e_phi_i_sq = (alpha + double(n_i)) * (alpha + double(n_i) + 1.0) * rg;
  out.e_phi_i_phi_j = j ? (alpha + double(n_i)) * (alpha + double(n_j)) * rg
                        : std::numeric_limits<double>::quiet_NaN();
  return out;
}

ThetaMoments theta_moments(DipClass side, const AugmentedDatabase& adb,
                           const PriorConfig& prior, const DipStrAllele& i,
                           const std::optional<DipStrAllele>& j) {
  const SideStats& stats = adb.side(side);
  const KPosterior kpost = k_posterior(stats, prior);
  const PhiMoments phi = phi_moments(stats, kpost, prior.alpha, i, j);
  const PsiMoments psi = psi_moments(adb.l.n_side, adb.s.n_side);
  const double m2 =
      side == DipClass::L ? psi.e_psi_sq : psi.e_one_minus_psi_sq;
  ThetaMoments out;
  out.e_theta_i_theta_j = phi.e_phi_i_phi_j * m2;
  out.e_theta_i_sq = phi.e_phi_i_sq * m2;
  out.e_theta_i_times_othermass = phi.e_phi_i * psi.e_psi_one_minus_psi;
  return out;
}

}  // namespace dipstr
