#include "dipstr/lr.hpp"

#include <algorithm>
#include <cmath>

namespace dipstr {

std::string method_label(Method m) {
  switch (m) {
    case Method::FullBayes:
      return "full";
    case Method::ClassicalPlugin:
      return "plugin";
    case Method::GoodTuringEmpirical:
      return "gt";
  }
  return "?";
}

std::string status_label(LrStatus s) {
  switch (s) {
    case LrStatus::Ok:
      return "ok";
    case LrStatus::Exclusion:
      return "exclusion";
    case LrStatus::Uninformative:
      return "uninformative";
  }
  return "?";
}

namespace {

DipClass require_hom_victim(const CaseInput& c) {
  if (!c.victim.dip_homozygous())
    throw ModelError("no defence denominator for a DIP-heterozygous victim");
  return c.victim.a1.dip;
}

}  // namespace

double denominator_full_bayes(const CaseInput& c, const AugmentedDatabase& adb,
                              const PriorConfig& prior) {
  const DipClass victim_class = require_hom_victim(c);
  const DipClass side = opposite(victim_class);
  const Observation& obs = c.observation;
  switch (obs.count()) {
    case 2: {
      const ThetaMoments th =
          theta_moments(side, adb, prior, *obs.o1(), *obs.o2());
      return 2.0 * th.e_theta_i_theta_j;
    }
    case 1: {
      const ThetaMoments th = theta_moments(side, adb, prior, *obs.o1());
      return th.e_theta_i_sq + 2.0 * th.e_theta_i_times_othermass;
    }
    default: {
      const PsiMoments psi = psi_moments(adb.l.n_side, adb.s.n_side);
      return victim_class == DipClass::L ? psi.e_psi_sq
                                         : psi.e_one_minus_psi_sq;
    }
  }
}

double denominator_plugin(const CaseInput& c, const AugmentedDatabase& adb,
                          const PriorConfig& prior) {
  prior.validate();
  const DipClass victim_class = require_hom_victim(c);
  const DipClass side = opposite(victim_class);
  const SideStats& stats = adb.side(side);
  const PsiMoments psi = psi_moments(adb.l.n_side, adb.s.n_side);
  const double victim_mass =
      victim_class == DipClass::L ? psi.e_psi : psi.e_one_minus_psi;
  const double side_mass =
      victim_class == DipClass::L ? psi.e_one_minus_psi : psi.e_psi;
  auto theta_hat = [&](const DipStrAllele& a) {
    const long n_i = stats.count_of(a);
    if (n_i == 0)
      throw ModelError("no plug-in estimate for allele " + to_label(a) +
                       ": it does not occur in the augmented database");
    return (prior.alpha + double(n_i)) /
           (double(stats.k_b) * prior.alpha + double(stats.n_side)) *
           side_mass;
  };
  switch (c.observation.count()) {
    case 2:
      return 2.0 * theta_hat(*c.observation.o1()) *
             theta_hat(*c.observation.o2());
    case 1: {
      const double th = theta_hat(*c.observation.o1());
      return th * th + 2.0 * th * victim_mass;
    }
    default:
      return victim_mass * victim_mass;
  }
}

long empirical_k_hat(const SideStats& stats, double alpha, long m) {
  if (m < stats.k_b)
    throw ModelError("more distinct alleles observed than model allows "
                     "(k_b=" + std::to_string(stats.k_b) +
                     " > m=" + std::to_string(m) + ")");
  if (stats.n_side < 1 || stats.k_b < 1) return std::max(stats.k_b, 1L);
  // expected unseen mass (k - k_b) a / (k a + n) equated with the
  // singleton fraction n1 / n
  const double denom = alpha * double(stats.n_side - stats.n1);
  if (denom <= 0.0) return m;  // every allele a singleton: richness unbounded
  const double raw = (double(stats.n1) + double(stats.k_b) * alpha) *
                     double(stats.n_side) / denom;
  const long rounded = std::llround(raw);
  return std::clamp(rounded, stats.k_b, m);
}

LrResult compute_lr(const CaseInput& c, const AlleleDatabase& db,
                    const PriorConfig& prior, Method method) {
  prior.validate();
  const AugmentedDatabase adb = augment(db, c.suspect, c.victim);
  const CaseKind kind = classify_case(c);
  LrResult r;
  r.method = method;
  r.diagnostics["n"] = double(adb.n);
  r.diagnostics["n_L"] = double(adb.l.n_side);
  r.diagnostics["n_S"] = double(adb.s.n_side);
  if (kind.tag == CaseTag::VictimHeterozygous) {
    r.status = LrStatus::Uninformative;
    return r;
  }
  if (kind.tag == CaseTag::Exclusion) {
    r.status = LrStatus::Exclusion;
    r.lr = 0.0;
    r.log10_lr = neg_inf();
    return r;
  }
  const SideStats& stats = adb.side(kind.side);
  r.diagnostics["k_b"] = double(stats.k_b);
  r.diagnostics["n_1"] = double(stats.n1);
  const PsiMoments psi = psi_moments(adb.l.n_side, adb.s.n_side);
  r.diagnostics["e_psi_sq"] = psi.e_psi_sq;
  PriorConfig effective = prior;
  if (method == Method::GoodTuringEmpirical) {
    const long k_hat = empirical_k_hat(stats, prior.alpha, prior.m);
    effective.k_prior = KPrior::degenerate(k_hat);
    r.diagnostics["k_hat"] = double(k_hat);
  }
  const double den = method == Method::ClassicalPlugin
                         ? denominator_plugin(c, adb, prior)
                         : denominator_full_bayes(c, adb, effective);
  r.denominator = den;
  r.lr = 1.0 / den;
  r.log10_lr = -std::log10(den);
  r.status = LrStatus::Ok;
  return r;
}

LrResult combine_loci(const std::vector<LrResult>& results) {
  if (results.empty())
    throw ModelError("no per-locus results to combine");
  LrResult out;
  out.method = results.front().method;
  for (const auto& r : results)
    if (r.method != out.method)
      throw ModelError("cannot combine results across methods");
  for (const auto& r : results) {
    if (r.status == LrStatus::Exclusion) {
      out.status = LrStatus::Exclusion;
      out.lr = 0.0;
      out.log10_lr = neg_inf();
      return out;
    }
  }
  bool any_ok = false;
  double den_prod = 1.0;
  for (const auto& r : results) {
    if (r.status == LrStatus::Ok) {
      any_ok = true;
      den_prod *= r.denominator;
    }
  }
  if (!any_ok) {
    out.status = LrStatus::Uninformative;
    return out;
  }
  out.status = LrStatus::Ok;
  out.denominator = den_prod;
  out.lr = 1.0 / den_prod;
  out.log10_lr = -std::log10(den_prod);
  return out;
}

std::vector<SweepRow> sensitivity_sweep(const CaseInput& c,
                                        const AlleleDatabase& db,
                                        std::span<const double> alphas,
                                        std::span<const long> m_values,
                                        std::span<const KPrior> priors,
                                        std::span<const Method> methods) {
  if (alphas.empty() || m_values.empty() || priors.empty() || methods.empty())
    throw ParseError("sweep grids must be non-empty");
  std::vector<SweepRow> rows;
  rows.reserve(alphas.size() * m_values.size() * priors.size() *
               methods.size());
  for (const Method method : methods) {
    for (const double alpha : alphas) {
      for (const long m : m_values) {
        for (const KPrior& kp : priors) {
          SweepRow row;
          row.method = method;
          row.alpha = alpha;
          row.m = m;
          row.k_prior = k_prior_label(kp);
          row.log10_lr = std::numeric_limits<double>::quiet_NaN();
          try {
            const PriorConfig prior{m, alpha, kp};
            const LrResult r = compute_lr(c, db, prior, method);
            row.log10_lr = r.log10_lr;
            row.status = status_label(r.status);
          } catch (const Error& e) {
            row.status = std::string("error:") + e.what();
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

}  // namespace dipstr
