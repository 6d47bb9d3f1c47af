#include "dipstr/oracle.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "dipstr/cases.hpp"

namespace dipstr {

ArrayXd GenerativeSample::theta() const {
  ArrayXd out(theta_l.size() + theta_s.size());
  out.head(theta_l.size()) = theta_l;
  out.tail(theta_s.size()) = theta_s;
  return out;
}

namespace {

// Precomputed inverse-CDF sampler for one PriorConfig; one draw consumes a
// (seed, stream) counter stream in a fixed order.
class PriorSampler {
 public:
  explicit PriorSampler(const PriorConfig& prior)
      : m_(prior.m), alpha_(prior.alpha) {
    const ArrayXd lp = prior.k_prior.log_pmf(prior.m);
    cdf_.resize(m_);
    double acc = 0.0;
    for (long k = 1; k <= m_; ++k) {
      acc += std::exp(lp[k - 1]);
      cdf_[k - 1] = acc;
    }
    cdf_[m_ - 1] = 1.0;  // absorb rounding in the tail
  }

  long sample_k(CounterRng& rng) const {
    const double u = rng.next_unit();
    for (long k = 1; k <= m_; ++k)
      if (u < cdf_[k - 1]) return k;
    return m_;
  }

  // uniform k-subset of {0..m-1} by selection sampling
  std::vector<long> sample_support(CounterRng& rng, long k) const {
    std::vector<long> idx;
    idx.reserve(k);
    long need = k;
    for (long i = 0; i < m_ && need > 0; ++i) {
      if (rng.next_unit() * double(m_ - i) < double(need)) {
        idx.push_back(i);
        --need;
      }
    }
    return idx;
  }

  void sample_side(CounterRng& rng, long& k, std::vector<long>& t,
                   ArrayXd& phi) const {
    k = sample_k(rng);
    t = sample_support(rng, k);
    phi = ArrayXd::Zero(m_);
    double total = 0.0;
    for (const long i : t) {
      phi[i] = rng.next_gamma(alpha_);
      total += phi[i];
    }
    if (total > 0.0) {
      phi /= total;
    } else {
      for (const long i : t) phi[i] = 1.0 / double(k);
    }
  }

  GenerativeSample sample(CounterRng& rng) const {
    GenerativeSample s;
    sample_side(rng, s.k_l, s.t_l, s.phi_l);
    sample_side(rng, s.k_s, s.t_s, s.phi_s);
    s.psi = rng.next_unit();  // Beta(1,1)
    s.theta_l = s.psi * s.phi_l;
    s.theta_s = (1.0 - s.psi) * s.phi_s;
    return s;
  }

 private:
  long m_;
  double alpha_;
  std::vector<double> cdf_;
};

}  // namespace

GenerativeSample sample_prior(const PriorConfig& prior, std::uint64_t seed,
                              std::uint64_t stream) {
  prior.validate();
  const PriorSampler sampler(prior);
  CounterRng rng(seed, stream);
  return sampler.sample(rng);
}

OracleEstimate is_denominator(const CaseInput& c, const AugmentedDatabase& adb,
                              const PriorConfig& prior, long n_samples,
                              std::uint64_t seed) {
  prior.validate();
  if (n_samples < 1) throw ModelError("oracle needs at least one sample");
  const CaseKind kind = classify_case(c);
  if (kind.tag != CaseTag::TwoAlleles && kind.tag != CaseTag::OneAllele &&
      kind.tag != CaseTag::NoAllele)
    throw ModelError("oracle estimates two-allele, one-allele, or no-allele "
                     "cases only");
  if (adb.l.k_b > prior.m || adb.s.k_b > prior.m)
    throw ModelError("more distinct alleles observed than model allows "
                     "(m < k_b)");

  // pin every distinct database allele to an index, per class
  std::map<DipStrAllele, long> index_l, index_s;
  std::vector<std::pair<long, long>> counts_l, counts_s;  // (index, count)
  for (const auto& [allele, count] : adb.l.counts) {
    index_l.emplace(allele, long(index_l.size()));
    counts_l.emplace_back(index_l[allele], count);
  }
  for (const auto& [allele, count] : adb.s.counts) {
    index_s.emplace(allele, long(index_s.size()));
    counts_s.emplace_back(index_s[allele], count);
  }
  const auto& side_index = kind.side == DipClass::L ? index_l : index_s;
  auto observed_index = [&](const DipStrAllele& a) {
    const auto it = side_index.find(a);
    if (it == side_index.end())
      throw ModelError("observed allele " + to_label(a) +
                       " does not occur in the augmented database");
    return it->second;
  };
  long i_idx = -1, j_idx = -1;
  if (kind.first) i_idx = observed_index(*kind.first);
  if (kind.second) j_idx = observed_index(*kind.second);
  const DipClass victim_class = c.victim.a1.dip;

  const PriorSampler sampler(prior);
  // streaming self-normalized sums, rescaled to the running peak log weight
  double peak = neg_inf();
  double sw = 0.0, swf = 0.0, sw2 = 0.0, sw2f = 0.0, sw2f2 = 0.0;
  for (long s = 0; s < n_samples; ++s) {
    CounterRng rng(seed, std::uint64_t(s));
    const GenerativeSample draw = sampler.sample(rng);
    double logw = 0.0;
    for (const auto& [idx, count] : counts_l) {
      const double th = draw.theta_l[idx];
      if (!(th > 0.0)) {
        logw = neg_inf();
        break;
      }
      logw += double(count) * std::log(th);
    }
    if (logw != neg_inf()) {
      for (const auto& [idx, count] : counts_s) {
        const double th = draw.theta_s[idx];
        if (!(th > 0.0)) {
          logw = neg_inf();
          break;
        }
        logw += double(count) * std::log(th);
      }
    }
    if (logw == neg_inf()) continue;  // zero weight

    const ArrayXd& side_theta =
        kind.side == DipClass::L ? draw.theta_l : draw.theta_s;
    const double victim_mass =
        victim_class == DipClass::L ? draw.psi : 1.0 - draw.psi;
    double f = 0.0;
    switch (kind.tag) {
      case CaseTag::TwoAlleles:
        f = 2.0 * side_theta[i_idx] * side_theta[j_idx];
        break;
      case CaseTag::OneAllele: {
        const double t = side_theta[i_idx];
        f = t * t + 2.0 * t * victim_mass;
        break;
      }
      default:
        f = victim_mass * victim_mass;
    }
    if (logw > peak) {
      const double scale = std::exp(peak - logw);  // 0 while peak is -inf
      const double scale2 = scale * scale;
      sw *= scale;
      swf *= scale;
      sw2 *= scale2;
      sw2f *= scale2;
      sw2f2 *= scale2;
      peak = logw;
    }
    const double w = std::exp(logw - peak);
    sw += w;
    swf += w * f;
    sw2 += w * w;
    sw2f += w * w * f;
    sw2f2 += w * w * f * f;
  }
  if (!(sw > 0.0))
    throw OracleStarved("oracle starved: no sampled support contained every "
                        "database allele; use more samples or a smaller "
                        "instance");
  const double mu = swf / sw;
  const double var = (sw2f2 - 2.0 * mu * sw2f + mu * mu * sw2) / (sw * sw);
  OracleEstimate est;
  est.value = mu;
  est.std_error = var > 0.0 ? std::sqrt(var) : 0.0;
  est.n_samples = n_samples;
  est.ess = sw * sw / sw2;
  return est;
}

namespace {

// prior pmf over 1..m by direct series evaluation (no log space)
std::vector<long double> direct_prior_pmf(const KPrior& prior, long m) {
  std::vector<long double> pk(m + 1, 0.0L);
  switch (prior.family) {
    case KPrior::Family::Uniform:
      for (long k = 1; k <= m; ++k) pk[k] = 1.0L / (long double)m;
      return pk;
    case KPrior::Family::Degenerate:
      pk[prior.k0] = 1.0L;
      return pk;
    case KPrior::Family::TruncatedPoisson: {
      long double term = prior.lambda;  // lambda^1 / 1!
      for (long k = 1; k <= m; ++k) {
        pk[k] = term;
        term *= (long double)prior.lambda / (long double)(k + 1);
      }
      break;
    }
    case KPrior::Family::TruncatedNegBinomial: {
      // C(k+r-1, k) (1-p)^k, the p^r factor cancels in normalization
      long double term = (long double)prior.r * (1.0L - (long double)prior.p);
      for (long k = 1; k <= m; ++k) {
        pk[k] = term;
        term *= ((long double)(k) + (long double)prior.r) /
                (long double)(k + 1) * (1.0L - (long double)prior.p);
      }
      break;
    }
  }
  long double total = 0.0L;
  for (long k = 1; k <= m; ++k) total += pk[k];
  for (long k = 1; k <= m; ++k) pk[k] /= total;
  return pk;
}

long double rising(long double x, long count) {
  long double out = 1.0L;
  for (long j = 0; j < count; ++j) out *= x + (long double)j;
  return out;
}

}  // namespace

std::map<long, double> exact_k_posterior_bruteforce(const SideStats& stats,
                                                    const PriorConfig& prior) {
  prior.validate();
  if (prior.m > 12)
    throw ModelError("exhaustive subset enumeration is limited to m <= 12");
  if (stats.k_b < 1) throw ModelError("no alleles of this class observed");
  if (prior.m < stats.k_b)
    throw ModelError("more distinct alleles observed than model allows "
                     "(m < k_b)");

  const long m = prior.m;
  const long double a = prior.alpha;
  // observed alleles pinned to indices 0..k_b-1; any injective placement
  // gives the same sum because supports are exchangeable
  std::vector<long> obs_counts;
  obs_counts.reserve(stats.k_b);
  for (const auto& [allele, count] : stats.counts) obs_counts.push_back(count);
  const unsigned long obs_mask = (1ul << stats.k_b) - 1ul;

  const std::vector<long double> pk = direct_prior_pmf(prior.k_prior, m);
  std::vector<long double> total(m + 1, 0.0L);
  for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
    const long k = __builtin_popcountl(mask);
    if (k < stats.k_b) continue;
    if ((mask & obs_mask) != obs_mask) continue;  // misses an observed allele
    // marginal likelihood of the counts for this support
    long double val = 1.0L;
    for (long i = 0; i < m; ++i) {
      if (!(mask & (1ul << i))) continue;
      const long count = i < stats.k_b ? obs_counts[i] : 0;
      val *= rising(a, count);
    }
    val /= rising((long double)k * a, stats.n_side);
    total[k] += val;
  }
  // each subset was equally likely given k
  long double grand = 0.0L;
  for (long k = stats.k_b; k <= m; ++k) {
    long double n_subsets = 1.0L;  // C(m, k)
    for (long j = 0; j < k; ++j)
      n_subsets = n_subsets * (long double)(m - j) / (long double)(j + 1);
    total[k] *= pk[k] / n_subsets;
    grand += total[k];
  }
  if (!(grand > 0.0L))
    throw ModelError("posterior over the number of types has no support "
                     "under this prior");
  std::map<long, double> out;
  for (long k = stats.k_b; k <= m; ++k)
    out[k] = double(total[k] / grand);
  return out;
}

}  // namespace dipstr
